//! Finite extensions of Q_p: the unramified Q_{p^f} and the cyclotomic Q_p(ζ_p).
//!
//! Elements are coefficient vectors over [`Padic`] in the field generator: the
//! root of the lifted defining polynomial (unramified) or π = ζ_p - 1
//! (cyclotomic). Valuations are normalized so the uniformizer has valuation 1.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith::OddPrime;
use crate::curve::{LocalValuation, Scalar};
use crate::error::{Error, Result};
use crate::finite::{FieldExt, FiniteField, Fq};
use crate::padic::Padic;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Unramified,
    Cyclotomic,
}

#[derive(Debug)]
pub struct LocalField {
    p: OddPrime,
    kind: FieldKind,
    e: u32,
    f: u32,
    /// Monic defining polynomial, low degree first.
    modulus: Vec<BigInt>,
    prec: i64,
    residue: Arc<FiniteField>,
    /// p / π^e, a unit (equal to 1 when unramified).
    rho_inv: OnceLock<LocalElement>,
}

pub type FieldRef = Arc<LocalField>;

/// Q_p(ζ_p) with modulus ((1+x)^p - 1)/x in x = ζ_p - 1, coefficients to O(p^prec).
pub fn make_cyclotomic(p: OddPrime, prec: i64) -> Result<FieldRef> {
    if p.get() < 5 {
        return Err(Error::PreconditionViolated(
            "cyclotomic fields need p ≥ 5".into(),
        ));
    }
    let n = p.get() as usize;
    // binomial(p, k+1) for k = 0..p-1
    let mut modulus = Vec::with_capacity(n);
    let mut binom = BigInt::one();
    for k in 1..=n {
        binom = binom * BigInt::from(n - k + 1) / BigInt::from(k);
        modulus.push(binom.clone());
    }
    let residue = FiniteField::with_degree(p, 1)?;
    Ok(Arc::new(LocalField {
        p,
        kind: FieldKind::Cyclotomic,
        e: p.get() as u32 - 1,
        f: 1,
        modulus,
        prec,
        residue,
        rho_inv: OnceLock::new(),
    }))
}

/// Q_{p^f}, defined by the lift of the least irreducible of degree f over F_p.
pub fn make_unramified(p: OddPrime, f: u32, prec: i64) -> Result<FieldRef> {
    let residue = FiniteField::with_degree(p, f)?;
    let modulus = residue.modulus().iter().map(|&c| BigInt::from(c)).collect();
    Ok(Arc::new(LocalField {
        p,
        kind: FieldKind::Unramified,
        e: 1,
        f,
        modulus,
        prec,
        residue,
        rho_inv: OnceLock::new(),
    }))
}

impl LocalField {
    pub fn prime(&self) -> OddPrime {
        self.p
    }
    pub fn kind(&self) -> FieldKind {
        self.kind
    }
    pub fn ramification(&self) -> u32 {
        self.e
    }
    pub fn residue_degree(&self) -> u32 {
        self.f
    }
    pub fn degree(&self) -> usize {
        (self.e * self.f) as usize
    }
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
    pub fn precision(&self) -> i64 {
        self.prec
    }
    pub fn residue_field(&self) -> &Arc<FiniteField> {
        &self.residue
    }
}

/// Constructors that need the shared handle.
pub trait FieldHandle {
    fn element(&self, coeffs: Vec<Padic>) -> LocalElement;
    fn zero(&self) -> LocalElement;
    fn one(&self) -> LocalElement;
    fn from_int(&self, n: &BigInt) -> LocalElement;
    fn from_i64(&self, n: i64) -> LocalElement;
    fn from_padic(&self, x: &Padic) -> LocalElement;
    /// The field generator (π for the cyclotomic field).
    fn generator(&self) -> LocalElement;
    fn uniformizer(&self) -> LocalElement;
    fn zeta(&self) -> Result<LocalElement>;
    fn lift_residue(&self, r: &Fq) -> LocalElement;
}

impl FieldHandle for FieldRef {
    fn element(&self, mut coeffs: Vec<Padic>) -> LocalElement {
        let d = self.degree();
        assert!(coeffs.len() <= d, "too many coefficients");
        coeffs.resize(d, Padic::zero(self.p, self.prec));
        LocalElement {
            field: self.clone(),
            c: coeffs,
        }
    }
    fn zero(&self) -> LocalElement {
        self.element(Vec::new())
    }
    fn one(&self) -> LocalElement {
        self.from_i64(1)
    }
    fn from_int(&self, n: &BigInt) -> LocalElement {
        self.from_padic(&Padic::from_int(n, self.p, self.prec))
    }
    fn from_i64(&self, n: i64) -> LocalElement {
        self.from_int(&BigInt::from(n))
    }
    fn from_padic(&self, x: &Padic) -> LocalElement {
        assert_eq!(x.prime(), self.p, "prime mismatch");
        self.element(vec![x.clone()])
    }
    fn generator(&self) -> LocalElement {
        if self.degree() == 1 {
            // degree-1 unramified: the root of x + c0 is -c0
            return self.from_int(&-self.modulus[0].clone());
        }
        let mut c = vec![Padic::zero(self.p, self.prec); 2];
        c[1] = Padic::one(self.p, self.prec);
        self.element(c)
    }
    fn uniformizer(&self) -> LocalElement {
        match self.kind {
            FieldKind::Cyclotomic => self.generator(),
            FieldKind::Unramified => self.from_i64(self.p.get() as i64),
        }
    }
    fn zeta(&self) -> Result<LocalElement> {
        match self.kind {
            FieldKind::Cyclotomic => Ok(self.one().add(&self.generator())),
            FieldKind::Unramified => {
                Err(Error::PreconditionViolated("no p-th root of unity".into()))
            }
        }
    }
    fn lift_residue(&self, r: &Fq) -> LocalElement {
        let coeffs = r
            .coeffs()
            .iter()
            .map(|&c| Padic::from_i64(c as i64, self.p, self.prec))
            .collect();
        match self.kind {
            FieldKind::Unramified => self.element(coeffs),
            FieldKind::Cyclotomic => self.element(coeffs.into_iter().take(1).collect()),
        }
    }
}

#[derive(Clone)]
pub struct LocalElement {
    field: FieldRef,
    c: Vec<Padic>,
}

impl PartialEq for LocalElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.c == other.c
    }
}

impl fmt::Debug for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders Σ (c_i) g^i with g = π (cyclotomic) or t (unramified), skipping zeros.
impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.field.kind {
            FieldKind::Cyclotomic => "pi",
            FieldKind::Unramified => "t",
        };
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*{g}"),
                _ => format!("({c})*{g}^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "O({g}^{})", self.precision_bound())
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl LocalElement {
    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn coeffs(&self) -> &[Padic] {
        &self.c
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field),
            "elements of different fields"
        );
    }

    fn weight(&self, i: usize, v: i64) -> i64 {
        match self.field.kind {
            FieldKind::Cyclotomic => self.field.e as i64 * v + i as i64,
            FieldKind::Unramified => v,
        }
    }

    /// The element is known modulo π^bound.
    pub fn precision_bound(&self) -> i64 {
        self.c
            .iter()
            .enumerate()
            .map(|(i, c)| self.weight(i, c.precision()))
            .min()
            .unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Padic::is_zero)
    }

    pub fn valuation(&self) -> LocalValuation {
        let bound = self.precision_bound();
        let v = self
            .c
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.valuation().map(|v| self.weight(i, v)))
            .min();
        match v {
            Some(v) if v < bound => LocalValuation::Exact(v),
            _ => LocalValuation::AtLeast(bound),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        LocalElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        LocalElement {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return self.field.zero();
        }
        let k = BigInt::from(k);
        LocalElement {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a.mul_int(&k)).collect(),
        }
    }

    /// Multiplies every coefficient by p^k.
    fn shift(&self, k: i64) -> Self {
        LocalElement {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a.shift(k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = self.c.len();
        let mut prod: Vec<Option<Padic>> = vec![None; 2 * d - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                let t = a * b;
                prod[i + j] = Some(match prod[i + j].take() {
                    None => t,
                    Some(s) => &s + &t,
                });
            }
        }
        let m = &self.field.modulus;
        for k in (d..2 * d - 1).rev() {
            let top = prod[k].take().unwrap();
            for (j, mj) in m.iter().take(d).enumerate() {
                if mj.is_zero() {
                    continue;
                }
                let t = -&top.mul_int(mj);
                let idx = k - d + j;
                prod[idx] = Some(match prod[idx].take() {
                    None => t,
                    Some(s) => &s + &t,
                });
            }
        }
        let c = prod
            .into_iter()
            .take(d)
            .map(|x| x.unwrap_or_else(|| Padic::zero(self.field.p, self.field.prec)))
            .collect();
        LocalElement {
            field: self.field.clone(),
            c,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.field.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduction to the residue field, defined when v_L ≥ 0.
    pub fn residue(&self) -> Option<Fq> {
        if self.valuation().bound() < 0 {
            return None;
        }
        let field = &self.field.residue;
        let digits: Option<Vec<u64>> = match self.field.kind {
            FieldKind::Cyclotomic => self.c[0].residue().map(|r| vec![r]),
            FieldKind::Unramified => self.c.iter().map(Padic::residue).collect(),
        };
        digits.map(|d| field.element(&d))
    }

    /// Inverse of a unit by Newton iteration from the residue inverse.
    fn unit_inverse(&self) -> Result<Self> {
        let r = self.residue().ok_or(Error::DivisionByZeroAtPrecision)?;
        let mut z = self.field.lift_residue(&r.inv()?);
        let two = self.field.from_i64(2);
        let steps = 64 - (self.precision_bound().max(1) as u64).leading_zeros() + 2;
        for _ in 0..steps {
            z = z.mul(&two.sub(&self.mul(&z)));
        }
        Ok(z)
    }

    fn rho_inv(&self) -> Result<LocalElement> {
        let field = &self.field;
        if let Some(r) = field.rho_inv.get() {
            return Ok(r.clone());
        }
        let r = match field.kind {
            FieldKind::Unramified => field.one(),
            FieldKind::Cyclotomic => {
                // ρ = π^e / p = -(1 + Σ_{i≥1} (m_i / p) π^i)
                let p = BigInt::from(field.p.get());
                let coeffs = field.modulus[..field.degree()]
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let v = if i == 0 { BigInt::one() } else { m / &p };
                        Padic::from_int(&-v, field.p, field.prec * 2)
                    })
                    .collect();
                field.element(coeffs).unit_inverse()?
            }
        };
        Ok(field.rho_inv.get_or_init(|| r).clone())
    }

    /// Multiplies by π^k for any integer k.
    pub fn mul_pi_power(&self, k: i64) -> Result<Self> {
        let e = self.field.e as i64;
        if self.field.kind == FieldKind::Unramified {
            return Ok(self.shift(k));
        }
        if k >= 0 {
            return Ok(self.mul(&self.field.generator().pow(k as u32)));
        }
        // π^k = π^(e j + k) · ρ^(-j) · p^(-j) with j = ceil(-k / e)
        let j = (-k + e - 1) / e;
        let r = e * j + k;
        let mut out = self.mul(&self.field.generator().pow(r as u32));
        let rho_inv = self.rho_inv()?;
        for _ in 0..j {
            out = out.mul(&rho_inv);
        }
        Ok(out.shift(-j))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        self.check(o);
        let k = o
            .valuation()
            .exact()
            .ok_or(Error::DivisionByZeroAtPrecision)?;
        let unit = o.mul_pi_power(-k)?;
        self.mul(&unit.unit_inverse()?).mul_pi_power(-k)
    }

    pub fn inverse(&self) -> Result<Self> {
        self.field.one().div(self)
    }

    /// Lowers the precision so the element is known modulo π^bound.
    pub fn truncate(&self, bound: i64) -> Self {
        let e = self.field.e as i64;
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| match self.field.kind {
                FieldKind::Cyclotomic => a.truncate((bound - i as i64 + e - 1).div_euclid(e)),
                FieldKind::Unramified => a.truncate(bound),
            })
            .collect();
        LocalElement {
            field: self.field.clone(),
            c,
        }
    }

    /// The Q_p-coordinate when the element lies in Q_p.
    pub fn as_padic(&self) -> Option<Padic> {
        self.c[1..]
            .iter()
            .all(Padic::is_zero)
            .then(|| self.c[0].clone())
    }
}

/// Level i of a 1-unit u ∈ U^i \ U^(i+1), i.e. v_L(u - 1).
pub fn unit_filtration_level(u: &LocalElement) -> Result<i64> {
    if u.valuation().exact() != Some(0) || u.residue() != Some(u.field.residue.one()) {
        return Err(Error::NotAOneUnit);
    }
    u.sub(&u.field.one())
        .valuation()
        .exact()
        .ok_or_else(|| Error::PrecisionExhausted("u - 1 is zero at precision".into()))
}

/// Evaluates a polynomial (low degree first) by Horner's rule.
pub fn eval_poly(f: &[LocalElement], x: &LocalElement) -> LocalElement {
    f.iter()
        .rev()
        .fold(x.field.zero(), |acc, c| acc.mul(x).add(c))
}

fn derivative(f: &[LocalElement]) -> Vec<LocalElement> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.mul_int(i as i64))
        .collect()
}

/// Newton iteration from a seed with v(f(seed)) > 2 v(f'(seed)).
///
/// The result carries v(f'(seed)) fewer digits than the working precision.
pub fn hensel_root_ext(f: &[LocalElement], seed: &LocalElement) -> Result<LocalElement> {
    let df = derivative(f);
    let fx = eval_poly(f, seed);
    if fx.is_zero() {
        return Ok(seed.clone());
    }
    let vf = fx.valuation().bound();
    let vd = eval_poly(&df, seed)
        .valuation()
        .exact()
        .ok_or(Error::HenselConditionFailed)?;
    if vf <= 2 * vd {
        return Err(Error::HenselConditionFailed);
    }
    let mut x = seed.clone();
    let steps = 64 - (seed.precision_bound().max(1) as u64).leading_zeros() + 3;
    for _ in 0..steps {
        let fx = eval_poly(f, &x);
        if fx.is_zero() {
            break;
        }
        x = x.sub(&fx.div(&eval_poly(&df, &x))?);
    }
    // an error of π^N in f(x) moves the root by π^(N - v(f'))
    Ok(x.truncate(x.precision_bound() - vd))
}

impl Scalar for LocalElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        self.field.from_int(n)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        self.div(rhs)
    }
    fn mul_int(&self, k: i64) -> Self {
        LocalElement::mul_int(self, k)
    }
    fn is_zero(&self) -> bool {
        LocalElement::is_zero(self)
    }
    fn valuation(&self) -> Option<LocalValuation> {
        Some(LocalElement::valuation(self))
    }
    fn precision_hint(&self) -> Option<i64> {
        Some(self.precision_bound())
    }
    fn cap_precision(&self, bound: i64) -> Self {
        self.truncate(bound)
    }
    /// Q_p-rational coefficients are expanded over Q_p and embedded.
    fn weierstrass_series(a: &Self, b: &Self, max_deg: usize) -> Vec<Self> {
        match (a.as_padic(), b.as_padic()) {
            (Some(pa), Some(pb)) => {
                crate::curve::scalar::generic_weierstrass_series(&pa, &pb, max_deg)
                    .iter()
                    .map(|c| a.field.from_padic(c))
                    .collect()
            }
            _ => crate::curve::scalar::generic_weierstrass_series(a, b, max_deg),
        }
    }
}
