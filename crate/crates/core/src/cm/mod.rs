//! The nine class-number-one rings Z[ω_D], Frobenius elements of split primes,
//! and point-count formulas for CM reductions.

mod formulas;

pub use formulas::{
    cm_model, conjugate_system_unsolvable, count_formula_class_one, count_formula_eisenstein,
    oriented_u, CLASS_ONE_MODELS,
};

use std::fmt;

use crate::arith::{legendre_i64, mod_inv_u64, mod_pow_u64, sqrt_mod_small, OddPrime};
use crate::error::{Error, Result};

/// Discriminants of the imaginary quadratic fields of class number one.
pub const CLASS_ONE_DISCRIMINANTS: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

/// a + b ω_D, with ω_D = √D for D ∈ {−1, −2} and (−1 + √D)/2 otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadInt {
    d: i64,
    a: i128,
    b: i128,
}

impl QuadInt {
    pub fn new(d: i64, a: i128, b: i128) -> Result<Self> {
        if !CLASS_ONE_DISCRIMINANTS.contains(&d) {
            return Err(Error::UnsupportedDiscriminant(d));
        }
        Ok(QuadInt { d, a, b })
    }

    pub fn from_int(d: i64, n: i128) -> Result<Self> {
        Self::new(d, n, 0)
    }

    /// (u + v√D)/2, if it lies in Z[ω_D].
    pub fn from_half_sqrt(d: i64, u: i128, v: i128) -> Result<Option<Self>> {
        let q = Self::new(d, 0, 0)?;
        Ok(if q.is_gaussian_type() {
            (u % 2 == 0 && v % 2 == 0).then(|| QuadInt {
                d,
                a: u / 2,
                b: v / 2,
            })
        } else {
            ((u - v) % 2 == 0).then(|| QuadInt {
                d,
                a: (u + v) / 2,
                b: v,
            })
        })
    }

    fn is_gaussian_type(&self) -> bool {
        self.d == -1 || self.d == -2
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> i128 {
        self.a
    }

    pub fn b(&self) -> i128 {
        self.b
    }

    /// (u, v) with self = (u + v√D)/2.
    pub fn half_sqrt_form(&self) -> (i128, i128) {
        if self.is_gaussian_type() {
            (2 * self.a, 2 * self.b)
        } else {
            (2 * self.a - self.b, self.b)
        }
    }

    fn omega_norm_term(&self) -> i128 {
        (1 - self.d as i128) / 4
    }

    pub fn norm(&self) -> i128 {
        let (a, b) = (self.a, self.b);
        if self.is_gaussian_type() {
            a * a - self.d as i128 * b * b
        } else {
            a * a - a * b + b * b * self.omega_norm_term()
        }
    }

    pub fn trace(&self) -> i128 {
        if self.is_gaussian_type() {
            2 * self.a
        } else {
            2 * self.a - self.b
        }
    }

    pub fn conj(&self) -> Self {
        if self.is_gaussian_type() {
            QuadInt {
                b: -self.b,
                ..*self
            }
        } else {
            QuadInt {
                a: self.a - self.b,
                b: -self.b,
                ..*self
            }
        }
    }

    fn same_ring(&self, o: &Self) {
        assert_eq!(self.d, o.d, "elements of different rings");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_ring(o);
        QuadInt {
            a: self.a + o.a,
            b: self.b + o.b,
            ..*self
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QuadInt {
            a: -self.a,
            b: -self.b,
            ..*self
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_ring(o);
        let (a, b, c, d) = (self.a, self.b, o.a, o.b);
        if self.is_gaussian_type() {
            QuadInt {
                a: a * c + self.d as i128 * b * d,
                b: a * d + b * c,
                ..*self
            }
        } else {
            // ω^2 = −ω − (1 − D)/4
            QuadInt {
                a: a * c - b * d * self.omega_norm_term(),
                b: a * d + b * c - b * d,
                ..*self
            }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// The unit group: {±1}, {±1, ±i} or {±1, ±ω, ±ω²}.
    pub fn units(d: i64) -> Result<Vec<QuadInt>> {
        let one = Self::from_int(d, 1)?;
        let gens = match d {
            -1 => vec![one, QuadInt { d, a: 0, b: 1 }],
            -3 => vec![one, QuadInt { d, a: 0, b: 1 }, QuadInt { d, a: -1, b: -1 }],
            _ => vec![one],
        };
        Ok(gens.iter().flat_map(|u| [*u, u.neg()]).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Image in F_p under ω ↦ `omega_mod_p`.
    pub fn reduce(&self, omega_mod_p: u64, p: u64) -> u64 {
        let pm = p as i128;
        (self.a + self.b * omega_mod_p as i128).rem_euclid(pm) as u64
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.d {
            -1 => "i".to_string(),
            -2 => "√-2".to_string(),
            _ => "ω".to_string(),
        };
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{g}"),
            (0, -1) => write!(f, "-{g}"),
            (0, b) => write!(f, "{b}{g}"),
            (a, 1) => write!(f, "{a} + {g}"),
            (a, -1) => write!(f, "{a} - {g}"),
            (a, b) if b < 0 => write!(f, "{a} - {}{g}", -b),
            (a, b) => write!(f, "{a} + {b}{g}"),
        }
    }
}

/// (u, v) with u, v ≥ 0 and 4p = u² − D v², v minimal.
pub fn norm_form_solution(d: i64, p: u64) -> Option<(i128, i128)> {
    let four_p = 4 * p as i128;
    let dd = -(d as i128);
    let mut v: i128 = 0;
    while dd * v * v <= four_p {
        let rest = four_p - dd * v * v;
        let u = rest.isqrt();
        if u * u == rest && QuadInt::from_half_sqrt(d, u, v).ok().flatten().is_some() {
            return Some((u, v));
        }
        v += 1;
    }
    None
}

/// An element of norm p, or None if p does not split.
pub fn prime_above(d: i64, p: u64) -> Result<Option<QuadInt>> {
    QuadInt::new(d, 0, 0)?;
    Ok(norm_form_solution(d, p).and_then(|(u, v)| QuadInt::from_half_sqrt(d, u, v).ok().flatten()))
}

/// The Frobenius π = (a_p + v√D)/2 at a split prime.
///
/// √D is embedded in Q_p as the lift of its least non-negative square root mod p;
/// π is the root of x² − a_p x + p with positive valuation under that embedding.
pub fn split_frobenius(d: i64, p: u64, a_p: i64) -> Result<QuadInt> {
    QuadInt::new(d, 0, 0)?;
    let op = OddPrime::new(p)?;
    if legendre_i64(d, op) != 1 {
        return Err(Error::NotSplit { d, p });
    }
    let mismatch = Error::TraceMismatch { d, p, trace: a_p };
    let disc = a_p as i128 * a_p as i128 - 4 * p as i128;
    if disc % d as i128 != 0 {
        return Err(mismatch);
    }
    let v2 = disc / d as i128;
    let v = if v2 >= 0 {
        v2.isqrt()
    } else {
        return Err(mismatch);
    };
    if v * v != v2 {
        return Err(mismatch);
    }
    let s0 = sqrt_mod_small(d, p).expect("split prime") as i128;
    let pm = p as i128;
    let sign = [1i128, -1]
        .into_iter()
        .find(|s| (a_p as i128 + s * v * s0).rem_euclid(pm) == 0)
        .ok_or(mismatch.clone())?;
    QuadInt::from_half_sqrt(d, a_p as i128, sign * v)?.ok_or(mismatch)
}

/// The associate of π congruent to 1 mod 3 in Z[ω], ω a primitive cube root of unity.
pub fn primary_normalize(pi: &QuadInt) -> Result<QuadInt> {
    if pi.d != -3 {
        return Err(Error::UnsupportedDiscriminant(pi.d));
    }
    QuadInt::units(-3)?
        .into_iter()
        .map(|u| u.mul(pi))
        .find(|q| q.a.rem_euclid(3) == 1 && q.b.rem_euclid(3) == 0)
        .ok_or(Error::NoPrimaryRepresentative)
}

/// ω mod π for a prime π of Z[ω_D] of norm p, i.e. the root of ω's minimal polynomial that π kills.
pub fn omega_mod_prime(pi: &QuadInt) -> Result<u64> {
    let p = u64::try_from(pi.norm()).map_err(|_| Error::InvalidInput("norm too large".into()))?;
    let pm = p as i128;
    let b = pi.b.rem_euclid(pm) as u64;
    let binv = mod_inv_u64(b, p).ok_or(Error::NotCoprime)?;
    let a = pi.a.rem_euclid(pm) as u64;
    Ok(((p - a) as u128 * binv as u128 % p as u128) as u64)
}

/// (a/π₀)₆: the unit congruent to a^((p−1)/6) modulo π₀.
pub fn sixth_power_residue(a: i64, pi0: &QuadInt) -> Result<QuadInt> {
    if pi0.d != -3 {
        return Err(Error::UnsupportedDiscriminant(pi0.d));
    }
    let p = u64::try_from(pi0.norm()).map_err(|_| Error::InvalidInput("norm too large".into()))?;
    if p < 5 || (p - 1) % 6 != 0 {
        return Err(Error::BadPrime(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Err(Error::NotCoprime);
    }
    let w = omega_mod_prime(pi0)?;
    let t = mod_pow_u64(r, (p - 1) / 6, p);
    QuadInt::units(-3)?
        .into_iter()
        .find(|u| u.reduce(w, p) == t)
        .ok_or_else(|| {
            Error::ConsistencyFailure("power residue is not a sixth root of unity".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(d: i64, a: i128, b: i128) -> QuadInt {
        QuadInt::new(d, a, b).unwrap()
    }

    #[test]
    fn frobenius_at_seven() {
        let pi = split_frobenius(-3, 7, 1).unwrap();
        assert_eq!(pi.half_sqrt_form(), (1, 3));
        assert_eq!(pi.norm(), 7);
        assert_eq!(pi.trace(), 1);
    }

    #[test]
    fn frobenius_gaussian() {
        let pi = split_frobenius(-1, 5, -4).unwrap();
        assert!(pi == qi(-1, -2, 1) || pi == qi(-1, -2, -1));
        // √−1 ↦ 2 mod 5 kills π
        assert_eq!(pi.reduce(2, 5), 0);
        assert_eq!(pi.norm(), 5);
    }

    #[test]
    fn frobenius_errors() {
        assert!(matches!(
            split_frobenius(-3, 5, 1),
            Err(Error::NotSplit { .. })
        ));
        assert!(matches!(
            split_frobenius(-3, 7, 2),
            Err(Error::TraceMismatch { .. })
        ));
        assert!(matches!(
            QuadInt::new(-5, 1, 1),
            Err(Error::UnsupportedDiscriminant(-5))
        ));
    }

    #[test]
    fn ring_arithmetic() {
        let w = qi(-3, 0, 1);
        assert_eq!(w.mul(&w).mul(&w), qi(-3, 1, 0));
        let i = qi(-1, 0, 1);
        assert_eq!(i.mul(&i), qi(-1, -1, 0));
        let x = qi(-163, 3, 5);
        assert_eq!(x.mul(&x.conj()), qi(-163, x.norm(), 0));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(QuadInt::units(-3).unwrap().len(), 6);
        assert!(QuadInt::units(-3).unwrap().iter().all(QuadInt::is_unit));
    }

    #[test]
    fn primary_associates() {
        assert_eq!(primary_normalize(&qi(-3, 2, 3)).unwrap(), qi(-3, -2, -3));
        assert_eq!(primary_normalize(&qi(-3, 1, 3)).unwrap(), qi(-3, 1, 3));
        // conjugates of primary elements stay primary
        for p in [7u64, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97] {
            let pi = primary_normalize(&prime_above(-3, p).unwrap().unwrap()).unwrap();
            assert_eq!(primary_normalize(&pi.conj()).unwrap(), pi.conj());
        }
    }

    #[test]
    fn residue_symbol_basics() {
        let pi0 = primary_normalize(&prime_above(-3, 13).unwrap().unwrap()).unwrap();
        let one = qi(-3, 1, 0);
        assert_eq!(sixth_power_residue(1, &pi0).unwrap(), one);
        assert_eq!(sixth_power_residue(64, &pi0).unwrap(), one);
        assert!(matches!(
            sixth_power_residue(13, &pi0),
            Err(Error::NotCoprime)
        ));
    }

    #[test]
    fn display() {
        assert_eq!(qi(-3, -2, -3).to_string(), "-2 - 3ω");
        assert_eq!(qi(-1, 0, 1).to_string(), "i");
    }
}
