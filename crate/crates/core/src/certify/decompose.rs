use num_bigint::BigInt;

use crate::arith::mod_inverse;
use crate::curve::torsion::{etale_torsion_lift, reduce_local_point};
use crate::curve::{formal_parameter, Curve, Point};
use crate::error::{Error, Result};
use crate::finite::{dlog_p_primary, Fq, PPrimaryStructure};
use crate::local::{hensel_root_ext, FieldHandle, FieldKind, FieldRef, LocalElement};

/// Class of the formal part modulo [p]Ê.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormalClass {
    Trivial,
    Nontrivial,
}

/// P = c·P₀ + (formal part) + p·S.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// Coefficient of P₀, in [0, p^N₀).
    pub c: u64,
    /// Filtration level of the computed formal part; `None` when it is O.
    pub level: Option<i64>,
    pub class: FormalClass,
    pub formal_part: Point<LocalElement>,
}

/// Splits points of E(k), k unramified over Q_p, into étale and formal parts.
pub struct Decomposer {
    field: FieldRef,
    curve: Curve<LocalElement>,
    structure: PPrimaryStructure,
    p0: Point<LocalElement>,
}

impl Decomposer {
    pub fn new(
        a: &BigInt,
        b: &BigInt,
        field: &FieldRef,
        structure: PPrimaryStructure,
    ) -> Result<Self> {
        if field.kind() != FieldKind::Unramified {
            return Err(Error::PreconditionViolated(
                "decomposition needs an unramified field".into(),
            ));
        }
        if structure.n0 == 0 {
            return Err(Error::PreconditionViolated(
                "Ē(F_q) has no p-torsion".into(),
            ));
        }
        let p0 = etale_torsion_lift(a, b, field, &structure)?;
        let curve = Curve::new(field.from_int(a), field.from_int(b));
        Ok(Decomposer {
            field: field.clone(),
            curve,
            structure,
            p0,
        })
    }

    pub fn curve(&self) -> &Curve<LocalElement> {
        &self.curve
    }

    pub fn torsion_generator(&self) -> &Point<LocalElement> {
        &self.p0
    }

    fn p(&self) -> u64 {
        self.field.prime().get()
    }

    /// Any point of E(k) reducing to `target`.
    pub fn lift_residue_point(&self, target: &Point<Fq>) -> Result<Point<LocalElement>> {
        let Some((xb, yb)) = target.coords() else {
            return Ok(Point::Infinity);
        };
        let f = &self.field;
        if yb.is_zero() {
            let cubic = [
                self.curve.b().clone(),
                self.curve.a().clone(),
                f.zero(),
                f.one(),
            ];
            let x = hensel_root_ext(&cubic, &f.lift_residue(xb))?;
            return Ok(Point::affine(x, f.zero()));
        }
        let x = f.lift_residue(xb);
        let rhs = self.curve.rhs(&x);
        let y = hensel_root_ext(&[rhs.neg(), f.zero(), f.one()], &f.lift_residue(yb))?;
        Ok(Point::affine(x, y))
    }

    pub fn decompose(&self, point: &Point<LocalElement>) -> Result<Decomposition> {
        let p = self.p();
        let s = &self.structure;
        let ec = &s.curve;
        let order = s.p_power();
        let m = BigInt::from(s.cofactor);
        let pn = BigInt::from(order);
        // e_p ≡ 1 mod p^N₀ and ≡ 0 mod m projects onto the p-primary part
        let e_p = &m * mod_inverse(&m, &pn).expect("cofactor is prime to p");
        let reduced = reduce_local_point(point);
        let primary = ec.mul(&e_p, &reduced)?;
        let c = dlog_p_primary(ec, &primary, &s.generator, order)?;
        let r = self
            .curve
            .sub(point, &self.curve.mul(&BigInt::from(c), &self.p0)?)?;
        // r(R) has order prime to p, so it is p·S̄ for S̄ = (p⁻¹ mod m)·r(R)
        let rr = reduce_local_point(&r);
        let formal_part = if rr.is_infinity() {
            r
        } else {
            let p_inv = mod_inverse(&BigInt::from(p), &m).ok_or(Error::SplitAssumptionViolated)?;
            let sbar = ec.mul(&p_inv, &rr)?;
            let lift = self.lift_residue_point(&sbar)?;
            let ps = self.curve.mul(&BigInt::from(p), &lift)?;
            self.curve.sub(&r, &ps)?
        };
        let level = match &formal_part {
            Point::Infinity => None,
            pt => match formal_parameter(pt) {
                Ok(fp) => Some(fp.level),
                Err(Error::NotInFormalGroup) => return Err(Error::SplitAssumptionViolated),
                Err(e) => return Err(e),
            },
        };
        // over an unramified field [p]Ê¹ = Ê², so only level 1 survives modulo [p]Ê
        let class = if level == Some(1) {
            FormalClass::Nontrivial
        } else {
            FormalClass::Trivial
        };
        Ok(Decomposition {
            c,
            level,
            class,
            formal_part,
        })
    }
}
