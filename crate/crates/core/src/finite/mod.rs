//! F_q arithmetic, exhaustive point counts, and the p-primary part of E(F_q).

pub mod poly;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;

use crate::arith::{mod_inv_u64, prime_power, reduce_mod_u64, OddPrime};
use crate::curve::{Curve, Point, Scalar};
use crate::error::{Error, Result};

pub use crate::arith::legendre;

/// Seed of the generator search; recorded so P̄₀ is reproducible.
pub const GENERATOR_SEED: u64 = 0x5eed_0007;

/// F_{p^f} = F_p[t] / (modulus), modulus the least irreducible of degree f.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: OddPrime,
    degree: u32,
    modulus: Vec<u64>,
    q: u64,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_degree(OddPrime::new(p)?, f)
    }

    pub fn with_degree(p: OddPrime, f: u32) -> Result<Arc<Self>> {
        if f == 0 {
            return Err(Error::InvalidInput(
                "residue degree must be positive".into(),
            ));
        }
        let modulus = poly::smallest_irreducible(p.get(), f);
        Ok(Arc::new(FiniteField {
            p,
            degree: f,
            modulus,
            q: p.get().pow(f),
        }))
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Monic defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

pub trait FieldExt {
    fn element(&self, coeffs: &[u64]) -> Fq;
    fn from_int(&self, n: &BigInt) -> Fq;
    fn from_index(&self, i: u64) -> Fq;
    fn zero(&self) -> Fq;
    fn one(&self) -> Fq;
    fn elements(&self) -> Vec<Fq>;
}

impl FieldExt for Arc<FiniteField> {
    fn element(&self, coeffs: &[u64]) -> Fq {
        let p = self.p.get();
        let mut c = vec![0u64; self.degree as usize];
        for (i, &v) in coeffs.iter().enumerate() {
            if i < c.len() {
                c[i] = v % p;
            }
        }
        Fq {
            field: self.clone(),
            c,
        }
    }

    fn from_int(&self, n: &BigInt) -> Fq {
        self.element(&[reduce_mod_u64(n, self.p.get())])
    }

    fn from_index(&self, mut i: u64) -> Fq {
        let p = self.p.get();
        let c: Vec<u64> = (0..self.degree)
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect();
        Fq {
            field: self.clone(),
            c,
        }
    }

    fn zero(&self) -> Fq {
        self.element(&[])
    }

    fn one(&self) -> Fq {
        self.element(&[1])
    }

    fn elements(&self) -> Vec<Fq> {
        (0..self.q).map(|i| self.from_index(i)).collect()
    }
}

#[derive(Clone)]
pub struct Fq {
    field: Arc<FiniteField>,
    c: Vec<u64>,
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field.q == other.field.q
    }
}
impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prime-field elements print as integers, others as c0 + c1*t + ...
impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.c[0]);
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, v)| match i {
                0 => v.to_string(),
                1 => format!("{v}*t"),
                _ => format!("{v}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Fq {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn index(&self) -> u64 {
        let p = self.field.p.get();
        self.c.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    fn p(&self) -> u64 {
        self.field.p.get()
    }

    pub fn add(&self, o: &Fq) -> Fq {
        let p = self.p();
        let c = self.c.iter().zip(&o.c).map(|(a, b)| (a + b) % p).collect();
        Fq {
            field: self.field.clone(),
            c,
        }
    }

    pub fn sub(&self, o: &Fq) -> Fq {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Fq {
        let p = self.p();
        let c = self.c.iter().map(|a| (p - a) % p).collect();
        Fq {
            field: self.field.clone(),
            c,
        }
    }

    pub fn mul(&self, o: &Fq) -> Fq {
        let p = self.p();
        if self.field.degree == 1 {
            let v = (self.c[0] as u128 * o.c[0] as u128 % p as u128) as u64;
            return Fq {
                field: self.field.clone(),
                c: vec![v],
            };
        }
        let prod = poly::mul(&self.c, &o.c, p);
        let r = poly::rem(&prod, &self.field.modulus, p);
        self.field.element(&r)
    }

    pub fn scale(&self, k: i64) -> Fq {
        let kk = k.rem_euclid(self.p() as i64) as u64;
        self.mul(&self.field.element(&[kk]))
    }

    pub fn pow(&self, mut e: u64) -> Fq {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn inv(&self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        if self.field.degree == 1 {
            return Ok(self
                .field
                .element(&[mod_inv_u64(self.c[0], self.p()).unwrap()]));
        }
        Ok(self.pow(self.field.q - 2))
    }

    pub fn frobenius(&self) -> Fq {
        self.pow(self.p())
    }

    pub fn is_square(&self) -> bool {
        self.is_zero() || self.pow((self.field.q - 1) / 2) == self.field.one()
    }

    /// Least-index square root, by search.
    pub fn sqrt(&self) -> Option<Fq> {
        (0..self.field.q)
            .map(|i| self.field.from_index(i))
            .find(|r| r.mul(r) == *self)
    }
}

impl Scalar for Fq {
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
        Ok(self.mul(&rhs.inv()?))
    }
    fn mul_int(&self, k: i64) -> Self {
        self.scale(k)
    }
    fn is_zero(&self) -> bool {
        Fq::is_zero(self)
    }
}

/// The curve y^2 = x^3 + A x + B over F_q, with integer A, B reduced mod p.
pub fn curve_over(field: &Arc<FiniteField>, a: &BigInt, b: &BigInt) -> Result<Curve<Fq>> {
    let c = Curve::new(field.from_int(a), field.from_int(b));
    if c.discriminant_core().is_zero() {
        return Err(Error::SingularCurve);
    }
    Ok(c)
}

/// #E(F_q) including O, by enumerating every x.
pub fn count_points(a: &BigInt, b: &BigInt, q: u64) -> Result<u64> {
    let field = FiniteField::new(q)?;
    let curve = curve_over(&field, a, b)?;
    let elems = field.elements();
    let mut square_count = vec![0u32; q as usize];
    for y in &elems {
        square_count[y.mul(y).index() as usize] += 1;
    }
    let fx = |x: &Fq| square_count[curve.rhs(x).index() as usize] as u64;
    let affine: u64 = if q > 4096 {
        elems.par_iter().map(fx).sum()
    } else {
        elems.iter().map(fx).sum()
    };
    Ok(affine + 1)
}

/// a_q = q + 1 - #E(F_q), checked against the Hasse bound.
pub fn trace_of_frobenius(a: &BigInt, b: &BigInt, q: u64) -> Result<i64> {
    let n = count_points(a, b, q)?;
    let t = q as i64 + 1 - n as i64;
    if (t as i128) * (t as i128) > 4 * q as i128 {
        return Err(Error::HasseViolation { trace: t, q });
    }
    Ok(t)
}

/// All affine points, in (x, y) index order.
pub fn affine_points(curve: &Curve<Fq>, field: &Arc<FiniteField>) -> Vec<Point<Fq>> {
    let elems = field.elements();
    let mut roots: Vec<Vec<Fq>> = vec![Vec::new(); field.order() as usize];
    for y in &elems {
        roots[y.mul(y).index() as usize].push(y.clone());
    }
    elems
        .iter()
        .flat_map(|x| {
            roots[curve.rhs(x).index() as usize]
                .iter()
                .map(move |y| Point::affine(x.clone(), y.clone()))
        })
        .collect()
}

/// The p-primary subgroup of E(F_q), assumed cyclic of order p^N₀.
#[derive(Debug, Clone)]
pub struct PPrimaryStructure {
    pub n0: u32,
    pub generator: Point<Fq>,
    /// Prime-to-p part of the group order.
    pub cofactor: u64,
    pub group_order: u64,
    pub seed: u64,
    pub curve: Curve<Fq>,
}

impl PPrimaryStructure {
    pub fn p_power(&self) -> u64 {
        self.curve_prime().pow(self.n0)
    }

    fn curve_prime(&self) -> u64 {
        self.curve.a().field().prime().get()
    }
}

pub fn p_primary_generator(a: &BigInt, b: &BigInt, q: u64, p: u64) -> Result<PPrimaryStructure> {
    let field = FiniteField::new(q)?;
    if field.prime().get() != p {
        return Err(Error::PrimeMismatch(field.prime().get(), p));
    }
    let curve = curve_over(&field, a, b)?;
    let order = count_points(a, b, q)?;
    let trace = q as i64 + 1 - order as i64;
    if trace.rem_euclid(p as i64) == 0 {
        return Err(Error::NotOrdinary);
    }
    let (mut n0, mut m) = (0u32, order);
    while m % p == 0 {
        m /= p;
        n0 += 1;
    }
    let mut structure = PPrimaryStructure {
        n0,
        generator: Point::Infinity,
        cofactor: m,
        group_order: order,
        seed: GENERATOR_SEED,
        curve,
    };
    if n0 == 0 {
        return Ok(structure);
    }
    let points = affine_points(&structure.curve, &field);
    let mut rng = ChaCha8Rng::seed_from_u64(GENERATOR_SEED);
    let top = BigInt::from(p.pow(n0 - 1));
    for _ in 0..10_000 {
        let r = &points[rng.gen_range(0..points.len())];
        let g = structure.curve.mul(&BigInt::from(m), r)?;
        if !structure.curve.mul(&top, &g)?.is_infinity() {
            structure.generator = g;
            return Ok(structure);
        }
    }
    Err(Error::ConsistencyFailure(
        "p-primary part is not cyclic".into(),
    ))
}

/// The c in [0, order) with Q = cG, by brute force.
pub fn dlog_p_primary(curve: &Curve<Fq>, q: &Point<Fq>, g: &Point<Fq>, order: u64) -> Result<u64> {
    let mut acc = Point::Infinity;
    for c in 0..order {
        if acc == *q {
            return Ok(c);
        }
        acc = curve.add(&acc, g)?;
    }
    Err(Error::NotInSubgroup)
}
