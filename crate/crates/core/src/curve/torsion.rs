//! Explicit torsion on y^2 = x^3 + a over Q_7 and its extensions.

use num_bigint::BigInt;
use num_integer::Integer;

use super::divpoly::{derivative_int_poly, division_polynomial_numeric};
use super::formal::{formal_parameter, FormalPoint};
use super::point::{Curve, Point};
use crate::arith::{reduce_mod_u64, OddPrime};
use crate::error::{Error, Result};
use crate::finite::{FieldExt, PPrimaryStructure};
use crate::local::{eval_poly, hensel_root_ext, FieldHandle, FieldRef, LocalElement};
use crate::padic::{nth_root, sqrt, teichmuller, Padic};

/// Residue branch of √−3 fixing the embedding of Q(√−3) in Q_7.
pub const SQRT_MINUS_THREE_SEED: u64 = 2;
/// Residue of the Q_7-rational cube θ; its cube roots are 3, 5, 6 mod 7.
pub const THETA_RESIDUE: u64 = 6;
/// Residue of ζ₃ used to rotate cube roots.
pub const ZETA3_RESIDUE: u64 = 4;
pub const CUBE_ROOT_SEED: u64 = 3;
pub const Y_SEED: u64 = 2;

fn seven() -> OddPrime {
    OddPrime::new(7).unwrap()
}

fn check_family(a: &BigInt) -> Result<()> {
    if reduce_mod_u64(a, 7) != 5 {
        return Err(Error::WrongResidueClass(format!("a = {a} is not 5 mod 7")));
    }
    Ok(())
}

/// The two values θ, θ₂ = 2a(1 ± 3√−3)/7 of x^3 on nonzero 7-torsion, at precision `prec`.
///
/// θ is integral with residue 6; θ₂ has valuation −1.
pub fn theta_pair(a: &BigInt, prec: i64) -> Result<(Padic, Padic)> {
    check_family(a)?;
    let p = seven();
    let w = prec + 2;
    let s = sqrt(&Padic::from_i64(-3, p, w), SQRT_MINUS_THREE_SEED)?;
    let one = Padic::one(p, w);
    let s3 = s.mul_int(&BigInt::from(3));
    let two_a = BigInt::from(2) * a;
    let theta = (&one + &s3).mul_int(&two_a).shift(-1);
    let theta2 = (&one - &s3).mul_int(&two_a).shift(-1);
    if theta.residue() != Some(THETA_RESIDUE) {
        return Err(Error::WrongResidueClass(format!("θ ≢ 6 mod 7 for a = {a}")));
    }
    Ok((theta, theta2))
}

/// E[7](Q_7) for y^2 = x^3 + a: O followed by (∛θ ζ₃^i, ±√(θ + a)), i = 0, 1, 2.
pub fn torsion7_qp(a: &BigInt, prec: i64) -> Result<Vec<Point<Padic>>> {
    let p = seven();
    let w = prec + 2;
    let (theta, _) = theta_pair(a, w)?;
    let zeta3 = teichmuller(ZETA3_RESIDUE, p, w + 2)?;
    let x0 = nth_root(&theta, 3, CUBE_ROOT_SEED)?;
    let y0 = sqrt(&(&theta + &Padic::from_int(a, p, w + 2)), Y_SEED)?;
    let mut out = vec![Point::Infinity];
    let mut x = x0;
    for _ in 0..3 {
        for y in [y0.clone(), -&y0] {
            out.push(Point::affine(x.truncate(prec), y.truncate(prec)));
        }
        x = &x * &zeta3;
    }
    Ok(out)
}

/// The curve y^2 = x^3 + a over Q_7 at precision `prec`.
pub fn family_curve_qp(a: &BigInt, prec: i64) -> Curve<Padic> {
    let p = seven();
    Curve::new(Padic::zero(p, prec), Padic::from_int(a, p, prec))
}

/// The lift to an unramified field of the generator P̄₀ of the p-primary part.
///
/// x(P̄₀) is a multiple root of ψ_{p^N₀} mod p (it collides with the connected
/// torsion), so the seed is refined over lifts x̄ + p δ until the Newton condition
/// v(ψ) > 2 v(ψ') holds, then lifted; y is lifted from ȳ as a simple root.
pub fn etale_torsion_lift(
    a: &BigInt,
    b: &BigInt,
    field: &FieldRef,
    structure: &PPrimaryStructure,
) -> Result<Point<LocalElement>> {
    let (xb, yb) = match structure.generator.coords() {
        None => return Ok(Point::Infinity),
        Some((x, y)) => (x.clone(), y.clone()),
    };
    let p = field.prime().get();
    let order = p.pow(structure.n0);
    let curve = Curve::new(field.from_int(a), field.from_int(b));
    let (_, psi) = division_polynomial_numeric(order as u32, a, b);
    let dpsi = derivative_int_poly(&psi);
    let psi_l: Vec<LocalElement> = psi.iter().map(|c| field.from_int(c)).collect();
    let dpsi_l: Vec<LocalElement> = dpsi.iter().map(|c| field.from_int(c)).collect();
    let base = field.lift_residue(&xb);
    let res = field.residue_field();
    let pp = field.from_i64(p as i64);
    let pp2 = pp.mul(&pp);

    let one_digit = res.elements().into_iter().map(|d| (d, None));
    let two_digit = res.elements().into_iter().flat_map(|d1| {
        res.elements()
            .into_iter()
            .map(move |d2| (d1.clone(), Some(d2)))
    });
    for (d1, d2) in one_digit.chain(two_digit) {
        let mut seed = base.add(&pp.mul(&field.lift_residue(&d1)));
        if let Some(d2) = d2 {
            seed = seed.add(&pp2.mul(&field.lift_residue(&d2)));
        }
        let vf = eval_poly(&psi_l, &seed).valuation().bound();
        let Some(vd) = eval_poly(&dpsi_l, &seed).valuation().exact() else {
            continue;
        };
        if vf <= 2 * vd {
            continue;
        }
        let Ok(x) = hensel_root_ext(&psi_l, &seed) else {
            continue;
        };
        if x.residue().as_ref() != Some(&xb) {
            continue;
        }
        let rhs = curve.rhs(&x);
        let y = hensel_root_ext(
            &[rhs.neg(), field.zero(), field.one()],
            &field.lift_residue(&yb),
        )?;
        let pt = Point::affine(x, y);
        if curve.mul(&BigInt::from(order), &pt)?.is_infinity() {
            return Ok(pt);
        }
    }
    Err(Error::NotSimpleRoot)
}

/// The π-torsion point A_v of y^2 = x^3 + a over Q_7(ζ_7), from x^3 = θ₂.
///
/// With v_L(θ₂) = −6, x = π^−2 z where z^3 = π^6 θ₂ is a unit equation with residue 1.
pub fn formal_torsion_cyclotomic(
    a: &BigInt,
    field: &FieldRef,
) -> Result<(Curve<LocalElement>, FormalPoint<LocalElement>)> {
    if field.prime().get() != 7 || field.ramification() != 6 {
        return Err(Error::PreconditionViolated(
            "expects the field Q_7(ζ_7)".into(),
        ));
    }
    let prec = field.precision();
    let (_, theta2) = theta_pair(a, prec + 2)?;
    let th2 = field.from_padic(&theta2);
    let av = th2.add(&field.from_int(a));
    let pi6 = field.uniformizer().pow(6);
    let c = pi6.mul(&th2);
    let z = hensel_root_ext(
        &[c.neg(), field.zero(), field.zero(), field.one()],
        &field.one(),
    )?;
    let x = z.mul_pi_power(-2)?;
    let cy = pi6.mul(&av);
    let sy = hensel_root_ext(&[cy.neg(), field.zero(), field.one()], &field.one())?;
    let y = sy.mul_pi_power(-3)?;
    let curve = Curve::new(field.zero(), field.from_int(a));
    let point = Point::affine(x, y);
    if !curve.contains(&point) {
        return Err(Error::ConsistencyFailure("A_v is not on the curve".into()));
    }
    let fp = formal_parameter(&point)?;
    if fp.level != 1 {
        return Err(Error::ConsistencyFailure(format!(
            "formal torsion level {} ≠ 1",
            fp.level
        )));
    }
    Ok((curve, fp))
}

/// Reduction of a rational point on y^2 = x^3 + a to F_p (O when v_p(x) < 0).
pub fn reduce_rational_point(
    p: &Point<num_rational::BigRational>,
    field: &std::sync::Arc<crate::finite::FiniteField>,
) -> Point<crate::finite::Fq> {
    let pr = field.prime().get();
    match p.coords() {
        None => Point::Infinity,
        Some((x, y)) => {
            if x.denom().mod_floor(&BigInt::from(pr)) == BigInt::from(0) {
                return Point::Infinity;
            }
            let red = |q: &num_rational::BigRational| {
                let inv = crate::arith::mod_inverse(q.denom(), &BigInt::from(pr)).unwrap();
                field.from_int(&(q.numer() * inv))
            };
            Point::affine(red(x), red(y))
        }
    }
}

/// Reduction of a point over Q_p or a local field with integral coordinates.
pub fn reduce_padic_point(
    p: &Point<Padic>,
    field: &std::sync::Arc<crate::finite::FiniteField>,
) -> Point<crate::finite::Fq> {
    match p.coords() {
        None => Point::Infinity,
        Some((x, y)) => match (x.residue(), y.residue()) {
            (Some(rx), Some(ry)) => {
                Point::affine(field.from_int(&rx.into()), field.from_int(&ry.into()))
            }
            _ => Point::Infinity,
        },
    }
}

pub fn reduce_local_point(p: &Point<LocalElement>) -> Point<crate::finite::Fq> {
    match p.coords() {
        None => Point::Infinity,
        Some((x, y)) => match (x.residue(), y.residue()) {
            (Some(rx), Some(ry)) => Point::affine(rx, ry),
            _ => Point::Infinity,
        },
    }
}
