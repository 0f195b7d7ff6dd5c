//! Good-point certification on y² = x³ − 2 + 7n at p = 7, level restriction to
//! Q_7(ζ_7), the pairing-nonvanishing predicate, and the connected-étale decomposition.

mod decompose;

pub use decompose::{Decomposer, Decomposition, FormalClass};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, render_rational, OddPrime};
use crate::curve::torsion::{
    family_curve_qp, reduce_padic_point, reduce_rational_point, torsion7_qp,
};
use crate::curve::{formal_parameter, Curve, Point};
use crate::error::{Error, Result};
use crate::finite::{count_points, dlog_p_primary, p_primary_generator, FiniteField, Fq};
use crate::local::{make_cyclotomic, FieldHandle};
use crate::padic::{Padic, DEFAULT_PRECISION};

/// The prime of the family y² = x³ − 2 + 7n.
pub const FAMILY_PRIME: u64 = 7;
/// Precision doublings tried before giving up.
pub const MAX_DOUBLINGS: u32 = 4;
/// Mazur's bound: a rational point of finite order has order at most 12.
pub const MAZUR_BOUND: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Good,
    NotGood,
}

/// Outcome of certifying one rational point of E_n at p = 7.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodPointCertificate {
    pub n: i64,
    pub p: u64,
    /// (x, y) as "num/den" strings.
    pub point: [String; 2],
    pub lambda: u64,
    /// v_7(x(P − λP₀)); always even and at most −2.
    pub x_valuation: i64,
    pub verdict: Verdict,
    pub precision_used: i64,
    /// The computation at twice `precision_used` agrees.
    pub stability: bool,
}

impl GoodPointCertificate {
    pub fn formal_level(&self) -> i64 {
        -self.x_valuation / 2
    }

    pub fn point(&self) -> Result<(BigRational, BigRational)> {
        Ok((
            parse_rational(&self.point[0])?,
            parse_rational(&self.point[1])?,
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

pub fn family_coefficient(n: i64) -> BigInt {
    BigInt::from(-2) + BigInt::from(7) * BigInt::from(n)
}

fn seven() -> OddPrime {
    OddPrime::new(FAMILY_PRIME).unwrap()
}

/// Checks P ∈ E_n(Q) and that P is not torsion.
pub fn screen_rational_point(a: &BigInt, x: &BigRational, y: &BigRational) -> Result<()> {
    let curve = Curve::new(BigRational::zero(), BigRational::from_integer(a.clone()));
    let p = Point::affine(x.clone(), y.clone());
    if !curve.contains(&p) {
        return Err(Error::NotOnCurve);
    }
    if curve.order_up_to(&p, MAZUR_BOUND)?.is_some() {
        return Err(Error::TorsionPoint);
    }
    Ok(())
}

/// Everything about the reduction at 7 that does not depend on precision.
struct ResidueData {
    a: BigInt,
    generator: Point<Fq>,
    lambda: u64,
}

fn residue_data(
    n: i64,
    x: &BigRational,
    y: &BigRational,
    generator: Option<&Point<Fq>>,
) -> Result<ResidueData> {
    let a = family_coefficient(n);
    if count_points(&BigInt::zero(), &a, FAMILY_PRIME)? != FAMILY_PRIME {
        return Err(Error::WrongResidueClass(format!("#E(F_7) ≠ 7 for a = {a}")));
    }
    screen_rational_point(&a, x, y)?;
    let structure = p_primary_generator(&BigInt::zero(), &a, FAMILY_PRIME, FAMILY_PRIME)?;
    let generator = generator.cloned().unwrap_or(structure.generator.clone());
    if generator.is_infinity() || !structure.curve.contains(&generator) {
        return Err(Error::PreconditionViolated(
            "generator is not a nonzero point of Ē(F_7)".into(),
        ));
    }
    let f7 = FiniteField::new(FAMILY_PRIME)?;
    let reduced = reduce_rational_point(&Point::affine(x.clone(), y.clone()), &f7);
    let lambda = dlog_p_primary(&structure.curve, &reduced, &generator, FAMILY_PRIME)?;
    Ok(ResidueData {
        a,
        generator,
        lambda,
    })
}

/// The 7-torsion point of E(Q_7) reducing to `generator`.
fn lift_generator(a: &BigInt, generator: &Point<Fq>, prec: i64) -> Result<Point<Padic>> {
    let f7 = FiniteField::new(FAMILY_PRIME)?;
    torsion7_qp(a, prec)?
        .into_iter()
        .find(|t| reduce_padic_point(t, &f7) == *generator)
        .ok_or_else(|| Error::ConsistencyFailure("no 7-torsion point lifts the generator".into()))
}

/// v_7(x(P − λP₀)) at one precision; `None` when the precision does not resolve it.
fn x_valuation_at(
    data: &ResidueData,
    x: &BigRational,
    y: &BigRational,
    prec: i64,
) -> Result<Option<i64>> {
    let p = seven();
    let curve = family_curve_qp(&data.a, prec);
    let p0 = lift_generator(&data.a, &data.generator, prec)?;
    let pt = Point::affine(
        Padic::from_rational(x, p, prec),
        Padic::from_rational(y, p, prec),
    );
    let shifted = match curve
        .mul(&BigInt::from(data.lambda), &p0)
        .and_then(|lp0| curve.sub(&pt, &lp0))
    {
        Ok(r) => r,
        Err(Error::PrecisionExhausted(_)) | Err(Error::DivisionByZeroAtPrecision) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let Some((rx, _)) = shifted.coords() else {
        return Ok(None);
    };
    let Some(v) = Padic::valuation(rx) else {
        return Ok(None);
    };
    if v > -2 || v % 2 != 0 {
        return Err(Error::ConsistencyFailure(format!(
            "x(P − λP₀) has valuation {v}"
        )));
    }
    match formal_parameter(&shifted) {
        Ok(fp) if fp.level == -v / 2 => Ok(Some(v)),
        Ok(fp) => Err(Error::ConsistencyFailure(format!(
            "level {} against x-valuation {v}",
            fp.level
        ))),
        Err(Error::PrecisionExhausted(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Certifies whether P ∈ E_n(Q) is good at 7, i.e. v_7(x(P − λP₀)) = −2.
pub fn certify_good(
    n: i64,
    x: &BigRational,
    y: &BigRational,
    precision: i64,
) -> Result<GoodPointCertificate> {
    certify_with_generator(n, x, y, precision, None)
}

/// As [`certify_good`], with P̄₀ replaced by a chosen generator of Ē(F_7).
pub fn certify_with_generator(
    n: i64,
    x: &BigRational,
    y: &BigRational,
    precision: i64,
    generator: Option<&Point<Fq>>,
) -> Result<GoodPointCertificate> {
    if precision < 2 {
        return Err(Error::InvalidInput(format!(
            "precision {precision} is too small"
        )));
    }
    let data = residue_data(n, x, y, generator)?;
    let mut prec = precision;
    for attempt in 0..=MAX_DOUBLINGS {
        if let Some(v) = x_valuation_at(&data, x, y, prec)? {
            let stability = matches!(x_valuation_at(&data, x, y, 2 * prec), Ok(Some(w)) if w == v);
            return Ok(GoodPointCertificate {
                n,
                p: FAMILY_PRIME,
                point: [render_rational(x), render_rational(y)],
                lambda: data.lambda,
                x_valuation: v,
                verdict: if v == -2 {
                    Verdict::Good
                } else {
                    Verdict::NotGood
                },
                precision_used: prec,
                stability,
            });
        }
        if attempt < MAX_DOUBLINGS {
            prec *= 2;
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "x(P − λP₀) unresolved at precision {prec}"
    )))
}

pub fn certify_good_default(
    n: i64,
    x: &BigRational,
    y: &BigRational,
) -> Result<GoodPointCertificate> {
    certify_good(n, x, y, DEFAULT_PRECISION)
}

/// Recomputes the formal level of P − λP₀ over Q_7(ζ_7); a Good point must land at level 6.
pub fn restrict_level_to_l(cert: &GoodPointCertificate) -> Result<i64> {
    if cert.verdict != Verdict::Good {
        return Err(Error::PreconditionViolated(
            "level restriction needs a Good certificate".into(),
        ));
    }
    let (x, y) = cert.point()?;
    let data = residue_data(cert.n, &x, &y, None)?;
    let prec = cert.precision_used;
    let field = make_cyclotomic(seven(), prec)?;
    let p0 = lift_generator(&data.a, &data.generator, prec)?.map(|c| field.from_padic(c));
    let p = seven();
    let pt = Point::affine(
        field.from_padic(&Padic::from_rational(&x, p, prec)),
        field.from_padic(&Padic::from_rational(&y, p, prec)),
    );
    let curve = Curve::new(field.zero(), field.from_int(&data.a));
    let lp0 = curve.mul(&BigInt::from(data.lambda), &p0)?;
    let shifted = curve.sub(&pt, &lp0)?;
    let level = formal_parameter(&shifted)?.level;
    let expected = (FAMILY_PRIME - 1) as i64 * cert.formal_level();
    if level != expected {
        return Err(Error::ConsistencyFailure(format!(
            "level {level} over Q_7(ζ_7), expected {expected}"
        )));
    }
    Ok(level)
}

/// Whether the pairing of filtration classes at levels `level_a` and `level_b` is nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingVerdict {
    pub nonvanishing: bool,
    /// Set when the answer depends on norm-group data that is not computed (f ≥ 2).
    pub indeterminate: bool,
}

/// Levels l, m pair nontrivially iff l + m = p over a residue field F_p; past p they always vanish.
pub fn pairing_nonvanishing(
    level_a: i64,
    level_b: i64,
    p: u64,
    residue_degree: u32,
) -> Result<PairingVerdict> {
    let p = p as i64;
    for l in [level_a, level_b] {
        if !(1..=p).contains(&l) {
            return Err(Error::PreconditionViolated(format!(
                "level {l} outside 1..={p}"
            )));
        }
    }
    if residue_degree == 0 {
        return Err(Error::InvalidInput(
            "residue degree must be positive".into(),
        ));
    }
    let sum = level_a + level_b;
    Ok(match residue_degree {
        1 => PairingVerdict {
            nonvanishing: sum == p,
            indeterminate: false,
        },
        _ => PairingVerdict {
            nonvanishing: false,
            indeterminate: sum <= p,
        },
    })
}

/// All affine points of Ē(F_7) for E_n, for generator-choice experiments.
pub fn residue_multiples_of_generator(n: i64) -> Result<Vec<Point<Fq>>> {
    let a = family_coefficient(n);
    let s = p_primary_generator(&BigInt::zero(), &a, FAMILY_PRIME, FAMILY_PRIME)?;
    (1..FAMILY_PRIME as i64)
        .map(|u| s.curve.mul_i64(u, &s.generator))
        .collect()
}

/// [k]P computed exactly over Q.
pub fn rational_multiple(
    a: &BigInt,
    x: &BigRational,
    y: &BigRational,
    k: i64,
) -> Result<Point<BigRational>> {
    let curve = Curve::new(BigRational::zero(), BigRational::from_integer(a.clone()));
    curve.mul_i64(k, &Point::affine(x.clone(), y.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rational_int, valuation_of_rational};

    fn q(n: i64) -> BigRational {
        rational_int(n)
    }

    /// Independent oracle: 7(P − λP₀) = 7P, and [7] raises the level by one.
    fn oracle_x_valuation(n: i64, x: &BigRational, y: &BigRational) -> i64 {
        let seven_p = rational_multiple(&family_coefficient(n), x, y, 7).unwrap();
        let (x7, _) = seven_p.coords().unwrap();
        valuation_of_rational(x7, 7).unwrap() + 2
    }

    #[test]
    fn certify_matches_oracle() {
        for (n, x, y) in [(0, 3, 5), (1, -1, 2)] {
            let cert = certify_good(n, &q(x), &q(y), 24).unwrap();
            assert_eq!(cert.x_valuation, oracle_x_valuation(n, &q(x), &q(y)));
            assert!(cert.stability);
            assert_eq!(cert.verdict == Verdict::Good, cert.x_valuation == -2);
        }
    }

    #[test]
    fn lambda_is_unique() {
        let (x, y) = (q(3), q(5));
        let cert = certify_good(0, &x, &y, 24).unwrap();
        let s = p_primary_generator(&BigInt::zero(), &family_coefficient(0), 7, 7).unwrap();
        let f7 = FiniteField::new(7).unwrap();
        let r = reduce_rational_point(&Point::affine(x, y), &f7);
        let hits: Vec<u64> = (0..7)
            .filter(|&l| {
                let lp = s.curve.mul_i64(l as i64, &s.generator).unwrap();
                s.curve.sub(&r, &lp).unwrap().is_infinity()
            })
            .collect();
        assert_eq!(hits, vec![cert.lambda]);
    }

    #[test]
    fn generator_choice_does_not_change_verdict() {
        let (x, y) = (q(3), q(5));
        let base = certify_good(0, &x, &y, 24).unwrap();
        for g in residue_multiples_of_generator(0).unwrap() {
            let c = certify_with_generator(0, &x, &y, 24, Some(&g)).unwrap();
            assert_eq!(c.verdict, base.verdict);
            assert_eq!(c.x_valuation, base.x_valuation);
        }
    }

    #[test]
    fn screening_errors() {
        assert!(matches!(
            certify_good(0, &q(3), &q(4), 24),
            Err(Error::NotOnCurve)
        ));
        // (2, 3) has order 6 on y^2 = x^3 + 1
        assert!(matches!(
            screen_rational_point(&BigInt::from(1), &q(2), &q(3)),
            Err(Error::TorsionPoint)
        ));
    }

    #[test]
    fn certificate_json_roundtrip() {
        let cert = certify_good(0, &q(3), &q(5), 24).unwrap();
        let json = cert.to_json();
        assert!(json.contains("\"point\":[\"3\",\"5\"]"));
        let back: GoodPointCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }

    #[test]
    fn restriction_scales_level() {
        let cert = certify_good(0, &q(3), &q(5), 24).unwrap();
        if cert.verdict == Verdict::Good {
            assert_eq!(restrict_level_to_l(&cert).unwrap(), 6);
        } else {
            assert!(matches!(
                restrict_level_to_l(&cert),
                Err(Error::PreconditionViolated(_))
            ));
        }
    }

    #[test]
    fn pairing_table() {
        let v = |a, b, f| pairing_nonvanishing(a, b, 7, f).unwrap();
        assert!(v(1, 6, 1).nonvanishing);
        assert!(!v(1, 1, 1).nonvanishing);
        assert!(v(3, 4, 1).nonvanishing);
        assert!(!v(1, 1, 1).indeterminate);
        assert!(v(1, 6, 2).indeterminate && !v(1, 6, 2).nonvanishing);
        assert!(!v(4, 6, 2).indeterminate);
        assert!(pairing_nonvanishing(0, 3, 7, 1).is_err());
    }
}
