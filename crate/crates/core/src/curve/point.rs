use num_bigint::BigInt;
use num_traits::Signed;
use std::sync::OnceLock;

use super::formal;
use super::scalar::{LocalValuation, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, y } => Some((x, y)),
        }
    }
}

impl<F: Scalar> Point<F> {
    pub fn affine(x: F, y: F) -> Self {
        Point::Affine { x, y }
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> Point<G> {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: f(x), y: f(y) },
        }
    }
}

/// Short Weierstrass curve y^2 = x^3 + A x + B over a [`Scalar`] ring.
#[derive(Debug)]
pub struct Curve<F: Scalar> {
    a: F,
    b: F,
    series: OnceLock<Vec<F>>,
}

impl<F: Scalar> Clone for Curve<F> {
    fn clone(&self) -> Self {
        Curve::new(self.a.clone(), self.b.clone())
    }
}

impl<F: Scalar> Curve<F> {
    pub fn new(a: F, b: F) -> Self {
        Curve {
            a,
            b,
            series: OnceLock::new(),
        }
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    /// 4A^3 + 27B^2 (the discriminant up to the factor -16).
    pub fn discriminant_core(&self) -> F {
        let a3 = self.a.mul_ref(&self.a).mul_ref(&self.a);
        a3.mul_int(4).add_ref(&self.b.mul_ref(&self.b).mul_int(27))
    }

    pub fn rhs(&self, x: &F) -> F {
        x.mul_ref(x)
            .mul_ref(x)
            .add_ref(&self.a.mul_ref(x))
            .add_ref(&self.b)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.mul_ref(y).sub_ref(&self.rhs(x)).is_zero(),
        }
    }

    /// Cached coefficients of w(t); index n holds the coefficient of t^n.
    pub fn w_series(&self) -> &[F] {
        self.series.get_or_init(|| {
            let deg = self
                .a
                .precision_hint()
                .or(self.b.precision_hint())
                .unwrap_or(0)
                .max(0) as usize
                + 4;
            F::weierstrass_series(&self.a, &self.b, deg.max(3))
        })
    }

    pub fn neg(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: y.neg_ref(),
            },
        }
    }

    fn in_formal_chart(x: &F) -> bool {
        matches!(x.valuation(), Some(LocalValuation::Exact(v)) if v < 0)
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        let ((x1, y1), (x2, y2)) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                ((x1, y1), (x2, y2))
            }
        };
        if Self::in_formal_chart(x1) && Self::in_formal_chart(x2) {
            let t1 = formal::parameter_of(x1, y1)?;
            let t2 = formal::parameter_of(x2, y2)?;
            let t3 = formal::add_parameters(self, &t1, &t2);
            return formal::point_from_parameter(self, &t3);
        }
        self.chord_tangent(x1, y1, x2, y2)
    }

    /// Affine chord-tangent step without the formal-chart switch.
    pub fn chord_tangent(&self, x1: &F, y1: &F, x2: &F, y2: &F) -> Result<Point<F>> {
        let dx = x2.sub_ref(x1);
        let slope = if dx.is_zero() {
            if y1.add_ref(y2).is_zero() {
                return Ok(Point::Infinity);
            }
            if !y1.sub_ref(y2).is_zero() {
                return Err(Error::PrecisionExhausted(
                    "x-coordinates agree but y-coordinates do not".into(),
                ));
            }
            self.a
                .add_ref(&x1.mul_ref(x1).mul_int(3))
                .div_ref(&y1.mul_int(2))?
        } else {
            y2.sub_ref(y1).div_ref(&dx)?
        };
        let x3 = slope.mul_ref(&slope).sub_ref(x1).sub_ref(x2);
        let y3 = slope.mul_ref(&x1.sub_ref(&x3)).sub_ref(y1);
        Ok(Point::Affine { x: x3, y: y3 })
    }

    pub fn sub(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>> {
        self.add(p, p)
    }

    pub fn mul(&self, k: &BigInt, p: &Point<F>) -> Result<Point<F>> {
        let base = if k.is_negative() {
            self.neg(p)
        } else {
            p.clone()
        };
        let k = k.abs();
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc)?;
            if k.bit(i) {
                acc = self.add(&acc, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_i64(&self, k: i64, p: &Point<F>) -> Result<Point<F>> {
        self.mul(&BigInt::from(k), p)
    }

    /// Smallest k in 1..=bound with kP = O, if any.
    pub fn order_up_to(&self, p: &Point<F>, bound: u64) -> Result<Option<u64>> {
        let mut acc = p.clone();
        for k in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(k));
            }
            acc = self.add(&acc, p)?;
        }
        Ok(None)
    }
}

/// Exact order check used for torsion postconditions: kP = O and (k/l)P ≠ O for primes l | k.
pub fn has_exact_order<F: Scalar>(curve: &Curve<F>, p: &Point<F>, k: u64) -> Result<bool> {
    if !curve.mul(&BigInt::from(k), p)?.is_infinity() {
        return Ok(false);
    }
    let mut n = k;
    let mut l = 2;
    while n > 1 {
        if n % l == 0 {
            if curve.mul(&BigInt::from(k / l), p)?.is_infinity() {
                return Ok(false);
            }
            while n % l == 0 {
                n /= l;
            }
        }
        l += 1;
    }
    Ok(true)
}
