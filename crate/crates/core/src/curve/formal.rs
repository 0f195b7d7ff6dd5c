//! The formal group of a short Weierstrass curve in the chart t = -x/y, w = -1/y.

use super::point::{Curve, Point};
use super::scalar::{LocalValuation, Scalar};
use crate::error::{Error, Result};

/// A point reducing to O, with its parameter t = -x/y and filtration level v(t).
#[derive(Debug, Clone, PartialEq)]
pub struct FormalPoint<F> {
    pub point: Point<F>,
    pub t: F,
    pub level: i64,
}

pub fn parameter_of<F: Scalar>(x: &F, y: &F) -> Result<F> {
    x.neg_ref().div_ref(y)
}

fn truncation_bound<F: Scalar>(t: &F, terms: usize) -> Option<i64> {
    let v = t.valuation()?.bound();
    (v > 0).then(|| v.saturating_mul(terms as i64))
}

/// w(t) from the cached series, with the truncation error folded into the precision.
pub fn eval_w<F: Scalar>(curve: &Curve<F>, t: &F) -> F {
    let c = curve.w_series();
    let mut acc = t.zero_like();
    for coeff in c[3..].iter().rev() {
        acc = acc.mul_ref(t).add_ref(coeff);
    }
    let w = acc.mul_ref(t).mul_ref(t).mul_ref(t);
    match truncation_bound(t, c.len()) {
        Some(bound) => w.cap_precision(bound),
        None => w,
    }
}

/// Formal group law F(t1, t2), summed through the line w = λ t + ν.
pub fn add_parameters<F: Scalar>(curve: &Curve<F>, t1: &F, t2: &F) -> F {
    let c = curve.w_series();
    let m = c.len() - 1;
    // h_k = Σ_{i+j=k} t1^i t2^j, and λ = Σ_n c_n h_{n-1}
    let mut h = t1.one_like();
    let mut t1_pow = t1.one_like();
    let mut lambda = t1.zero_like();
    for n in 1..=m {
        t1_pow = t1_pow.mul_ref(t1);
        h = t1_pow.add_ref(&t2.mul_ref(&h));
        if n + 1 >= 3 && n < m && !c[n + 1].is_zero() {
            lambda = lambda.add_ref(&c[n + 1].mul_ref(&h));
        }
    }
    let nu = eval_w(curve, t1).sub_ref(&lambda.mul_ref(t1));
    let (a, b) = (curve.a(), curve.b());
    let l2 = lambda.mul_ref(&lambda);
    let num = a
        .mul_ref(&lambda)
        .mul_int(2)
        .add_ref(&b.mul_ref(&l2).mul_int(3))
        .mul_ref(&nu);
    let den = t1
        .one_like()
        .add_ref(&a.mul_ref(&l2))
        .add_ref(&b.mul_ref(&l2).mul_ref(&lambda));
    let corr = num.div_ref(&den).expect("1 + Aλ² + Bλ³ is a unit");
    let sum = t1.add_ref(t2).add_ref(&corr);
    let bound = [t1, t2]
        .iter()
        .filter_map(|t| t.valuation().map(|v| v.bound()))
        .filter(|&v| v > 0)
        .min()
        .map(|v| v.saturating_mul(m as i64));
    match bound {
        Some(bound) => sum.cap_precision(bound),
        None => sum,
    }
}

/// Point with parameter t: x = t / w(t), y = -1 / w(t). Zero t gives O.
pub fn point_from_parameter<F: Scalar>(curve: &Curve<F>, t: &F) -> Result<Point<F>> {
    if t.is_zero() {
        return Ok(Point::Infinity);
    }
    let w = eval_w(curve, t);
    let x = t.div_ref(&w)?;
    let y = t.one_like().neg_ref().div_ref(&w)?;
    Ok(Point::Affine { x, y })
}

/// t = -x/y and its level for a point in the kernel of reduction.
pub fn formal_parameter<F: Scalar>(p: &Point<F>) -> Result<FormalPoint<F>> {
    let (x, y) = p.coords().ok_or(Error::NotInFormalGroup)?;
    let vx = match x.valuation() {
        Some(LocalValuation::Exact(v)) if v < 0 => v,
        Some(_) => return Err(Error::NotInFormalGroup),
        None => return Err(Error::PreconditionViolated("ring has no valuation".into())),
    };
    let t = parameter_of(x, y)?;
    let level = t
        .valuation()
        .and_then(LocalValuation::exact)
        .ok_or_else(|| Error::PrecisionExhausted("formal parameter is zero at precision".into()))?;
    let vy = y.valuation().and_then(LocalValuation::exact);
    if vx != -2 * level || vy != Some(-3 * level) {
        return Err(Error::ConsistencyFailure(format!(
            "valuation triple ({vx}, {vy:?}, {level}) is not (-2l, -3l, l)"
        )));
    }
    Ok(FormalPoint {
        point: p.clone(),
        t,
        level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::OddPrime;
    use crate::padic::Padic;
    use num_bigint::BigInt;

    fn p7() -> OddPrime {
        OddPrime::new(7).unwrap()
    }

    fn curve(n: i64) -> Curve<Padic> {
        Curve::new(Padic::zero(p7(), 30), Padic::from_i64(-2 + 7 * n, p7(), 30))
    }

    /// A level-l point on y^2 = x^3 + a, built from its parameter.
    fn formal_point(c: &Curve<Padic>, t: i64) -> Point<Padic> {
        point_from_parameter(c, &Padic::from_i64(t, p7(), 30)).unwrap()
    }

    #[test]
    fn chart_point_satisfies_curve() {
        let c = curve(0);
        let p = formal_point(&c, 7 * 3);
        assert!(c.contains(&p));
        let fp = formal_parameter(&p).unwrap();
        assert_eq!(fp.level, 1);
        assert_eq!(fp.t, Padic::from_i64(21, p7(), fp.t.precision()));
    }

    #[test]
    fn formal_law_matches_chord() {
        let c = curve(1);
        let p = formal_point(&c, 7 * 2);
        let q = formal_point(&c, 7 * 5 + 49);
        let (x1, y1) = p.coords().unwrap();
        let (x2, y2) = q.coords().unwrap();
        let chord = c.chord_tangent(x1, y1, x2, y2).unwrap();
        let chart = c.add(&p, &q).unwrap();
        let (cx, cy) = chord.coords().unwrap();
        let (fx, fy) = chart.coords().unwrap();
        assert!((cx - fx).is_zero() && (cy - fy).is_zero());
        // doubling too
        let d_chord = c.chord_tangent(x1, y1, x1, y1).unwrap();
        let d_chart = c.double(&p).unwrap();
        let (a, b) = (d_chord.coords().unwrap(), d_chart.coords().unwrap());
        assert!((a.0 - b.0).is_zero() && (a.1 - b.1).is_zero());
    }

    #[test]
    fn multiplication_by_p_raises_level() {
        let c = curve(0);
        let p = formal_point(&c, 7 * 4);
        let q = c.mul(&BigInt::from(7), &p).unwrap();
        assert_eq!(formal_parameter(&q).unwrap().level, 2);
        let inv = c.add(&p, &c.neg(&p)).unwrap();
        assert!(inv.is_infinity());
    }
}
