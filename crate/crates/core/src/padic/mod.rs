//! Truncated p-adic numbers with tracked valuation and absolute precision.
//!
//! A nonzero [`Padic`] is `p^val * unit + O(p^prec)` with `p ∤ unit` and
//! `0 < unit < p^(prec - val)`. Zero always carries its precision: an element
//! whose value is `0 mod p^prec` is *zero at O(p^prec)*, never exact zero, so
//! valuation queries can answer "≥ prec" instead of inventing exactness.

mod hensel;

pub use hensel::{hensel_root, nth_root, sqrt, teichmuller};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{mod_inverse, pow_big, split_valuation, OddPrime};
use crate::error::{Error, Result};

/// Default absolute precision (in p-adic digits).
pub const DEFAULT_PRECISION: i64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Padic {
    p: OddPrime,
    /// Valuation; equals `prec` for zero.
    val: i64,
    /// Zero for zero-at-precision.
    unit: BigInt,
    prec: i64,
}

impl Padic {
    pub fn zero(p: OddPrime, prec: i64) -> Self {
        Padic {
            p,
            val: prec,
            unit: BigInt::zero(),
            prec,
        }
    }

    pub fn one(p: OddPrime, prec: i64) -> Self {
        Self::from_int(&BigInt::one(), p, prec)
    }

    /// Builds `p^val * raw + O(p^prec)` for an arbitrary integer `raw`, normalizing.
    pub fn from_parts(p: OddPrime, val: i64, raw: &BigInt, prec: i64) -> Self {
        if raw.is_zero() {
            return Self::zero(p, prec);
        }
        let (k, u) = split_valuation(raw, p.get());
        let v = val + k;
        if v >= prec {
            return Self::zero(p, prec);
        }
        let modulus = pow_big(p.get(), (prec - v) as u32);
        Padic {
            p,
            val: v,
            unit: u.mod_floor(&modulus),
            prec,
        }
    }

    pub fn from_int(n: &BigInt, p: OddPrime, prec: i64) -> Self {
        Self::from_parts(p, 0, n, prec)
    }

    pub fn from_i64(n: i64, p: OddPrime, prec: i64) -> Self {
        Self::from_int(&BigInt::from(n), p, prec)
    }

    /// Embeds a rational number to absolute precision `prec`.
    pub fn from_rational(q: &BigRational, p: OddPrime, prec: i64) -> Self {
        if q.is_zero() {
            return Self::zero(p, prec);
        }
        let (vn, un) = split_valuation(q.numer(), p.get());
        let (vd, ud) = split_valuation(q.denom(), p.get());
        let v = vn - vd;
        if v >= prec {
            return Self::zero(p, prec);
        }
        let modulus = pow_big(p.get(), (prec - v) as u32);
        let inv = mod_inverse(&ud, &modulus).expect("p-free denominator is invertible");
        Padic {
            p,
            val: v,
            unit: (un * inv).mod_floor(&modulus),
            prec,
        }
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    /// Absolute precision: the value is known modulo p^precision.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Number of known digits after the leading one; zero for zero.
    pub fn relative_precision(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.prec - self.val
        }
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Exact valuation, or `None` when indistinguishable from zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation for nonzero elements, absolute precision for zero.
    pub fn valuation_bound(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Digits a_val, a_(val+1), ... up to the precision; empty for zero.
    pub fn digits(&self) -> Vec<u64> {
        let p = BigInt::from(self.p.get());
        let mut out = Vec::new();
        let mut u = self.unit.clone();
        for _ in 0..self.relative_precision() {
            let (q, r) = u.div_rem(&p);
            out.push(r.to_u64().unwrap());
            u = q;
        }
        out
    }

    /// Residue class modulo p, defined for integral elements.
    pub fn residue(&self) -> Option<u64> {
        if self.is_zero() {
            return (self.prec >= 1).then_some(0);
        }
        match self.val {
            v if v < 0 => None,
            0 => Some((&self.unit % self.p.get()).to_u64().unwrap()),
            _ => Some(0),
        }
    }

    /// The integral value as an integer in [0, p^prec), if the element is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_zero() {
            return (self.prec >= 0).then(BigInt::zero);
        }
        (self.val >= 0).then(|| &self.unit * pow_big(self.p.get(), self.val as u32))
    }

    /// Lowers the absolute precision (never raises it).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.p, prec);
        }
        Self::from_parts(self.p, self.val, &self.unit, prec)
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-adic operands over different primes");
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_prime(rhs);
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.p, self.prec - rhs.val));
        }
        let rel = self.relative_precision().min(rhs.relative_precision());
        let modulus = pow_big(self.p.get(), rel as u32);
        let inv = mod_inverse(&rhs.unit, &modulus).expect("unit is invertible");
        let val = self.val - rhs.val;
        Ok(Padic {
            p: self.p,
            val,
            unit: (&self.unit * inv).mod_floor(&modulus),
            prec: val + rel,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::one(self.p, self.relative_precision().max(1)).checked_div(self)
    }

    /// Multiplication by an exact integer; relative precision is preserved.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.p, self.prec.max(self.val));
        }
        let (vk, uk) = split_valuation(k, self.p.get());
        if self.is_zero() {
            return Self::zero(self.p, self.prec + vk);
        }
        Self::from_parts(self.p, self.val + vk, &(&self.unit * uk), self.prec + vk)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p, self.prec.max(1) + self.val.abs() * e as i64 + 1);
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            return acc;
        }
        let mut first = true;
        while e > 0 {
            if e & 1 == 1 {
                acc = if first { base.clone() } else { &acc * &base };
                first = false;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by p^k (k may be negative); relative precision is preserved.
    pub fn shift(&self, k: i64) -> Self {
        Padic {
            p: self.p,
            val: self.val + k,
            unit: self.unit.clone(),
            prec: self.prec + k,
        }
    }
}

impl<'a> Add<&'a Padic> for &'a Padic {
    type Output = Padic;
    fn add(self, rhs: &'a Padic) -> Padic {
        self.check_prime(rhs);
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return rhs.truncate(prec);
        }
        if rhs.is_zero() {
            return self.truncate(prec);
        }
        let v = self.val.min(rhs.val);
        let p = self.p.get();
        let a = &self.unit * pow_big(p, (self.val - v) as u32)
            + &rhs.unit * pow_big(p, (rhs.val - v) as u32);
        Padic::from_parts(self.p, v, &a, prec)
    }
}

impl<'a> Sub<&'a Padic> for &'a Padic {
    type Output = Padic;
    fn sub(self, rhs: &'a Padic) -> Padic {
        self + &(-rhs)
    }
}

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = pow_big(self.p.get(), self.relative_precision() as u32);
        Padic {
            p: self.p,
            val: self.val,
            unit: &modulus - &self.unit,
            prec: self.prec,
        }
    }
}

impl<'a> Mul<&'a Padic> for &'a Padic {
    type Output = Padic;
    fn mul(self, rhs: &'a Padic) -> Padic {
        self.check_prime(rhs);
        match (self.is_zero(), rhs.is_zero()) {
            (true, true) => Padic::zero(self.p, self.prec + rhs.prec),
            (true, false) => Padic::zero(self.p, self.prec + rhs.val),
            (false, true) => Padic::zero(self.p, rhs.prec + self.val),
            (false, false) => {
                let rel = self.relative_precision().min(rhs.relative_precision());
                let modulus = pow_big(self.p.get(), rel as u32);
                let val = self.val + rhs.val;
                Padic {
                    p: self.p,
                    val,
                    unit: (&self.unit * &rhs.unit).mod_floor(&modulus),
                    prec: val + rel,
                }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Padic> for Padic {
            type Output = Padic;
            fn $m(self, rhs: Padic) -> Padic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        -&self
    }
}

/// Renders `a0 + a1*p + ... + O(p^N)`, skipping zero digits.
impl fmt::Display for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p.get();
        let mut terms = Vec::new();
        for (i, d) in self.digits().into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            let k = self.val + i as i64;
            terms.push(match k {
                0 => format!("{d}"),
                1 => format!("{d}*{p}"),
                _ => format!("{d}*{p}^{k}"),
            });
        }
        terms.push(format!("O({p}^{})", self.prec));
        write!(f, "{}", terms.join(" + "))
    }
}

/// Embeds num/den into Q_p at absolute precision `prec`.
pub fn embed_rational(num: &BigInt, den: &BigInt, p: OddPrime, prec: i64) -> Result<Padic> {
    if den.is_zero() {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    if prec < 1 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    Ok(Padic::from_rational(
        &BigRational::new(num.clone(), den.clone()),
        p,
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7() -> OddPrime {
        OddPrime::new(7).unwrap()
    }

    fn emb(n: i64, d: i64) -> Padic {
        embed_rational(&BigInt::from(n), &BigInt::from(d), p7(), 4).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let x = emb(7, 2);
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.residue(), Some(0));
        assert_eq!(x.digits()[0], 4);

        let z = emb(0, 1);
        assert!(z.is_zero());
        assert_eq!(z.precision(), 4);

        let y = emb(-2, 7);
        assert_eq!(y.valuation(), Some(-1));
        assert_eq!(y.digits()[0], 5);
        assert!(embed_rational(&BigInt::from(1), &BigInt::zero(), p7(), 4).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let s = &emb(1, 1) + &emb(-1, 1);
        assert!(s.is_zero());
        assert_eq!(s.precision(), 4);

        let seven = Padic::from_i64(7, p7(), 5);
        let sq = &seven * &seven;
        assert_eq!(sq.valuation(), Some(2));
        assert_eq!(sq.to_integer(), Some(BigInt::from(49)));

        let zero = Padic::zero(p7(), 4);
        assert_eq!(
            emb(1, 1).checked_div(&zero),
            Err(Error::DivisionByZeroAtPrecision)
        );
    }

    #[test]
    fn precision_rules() {
        // add: min absolute precision
        let a = Padic::from_i64(3, p7(), 10);
        let b = Padic::from_i64(5, p7(), 4);
        assert_eq!((&a + &b).precision(), 4);
        // mul: min relative precision
        let c = Padic::from_i64(14, p7(), 6); // val 1, rel 5
        let d = Padic::from_i64(2, p7(), 3); // val 0, rel 3
        let cd = &c * &d;
        assert_eq!(cd.valuation(), Some(1));
        assert_eq!(cd.relative_precision(), 3);
        // zero times unit keeps its precision shifted by the valuation
        let z = Padic::zero(p7(), 4);
        assert_eq!((&z * &c).precision(), 5);
    }

    #[test]
    fn display_skips_zero_digits() {
        let x = Padic::from_i64(2 + 5 * 7 + 6 * 343, p7(), 4);
        assert_eq!(x.to_string(), "2 + 5*7 + 6*7^3 + O(7^4)");
        assert_eq!(
            emb(-2, 7).to_string(),
            "5*7^-1 + 6 + 6*7 + 6*7^2 + 6*7^3 + O(7^4)"
        );
        assert_eq!(Padic::zero(p7(), 3).to_string(), "O(7^3)");
    }

    #[test]
    fn negation_and_truncation() {
        let x = emb(3, 5);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(
            x.truncate(2),
            Padic::from_rational(&BigRational::new(3.into(), 5.into()), p7(), 2)
        );
        assert_eq!(x.truncate(9), x);
    }

    #[test]
    fn mul_int_is_exact() {
        let x = emb(3, 5);
        let y = x.mul_int(&BigInt::from(49));
        assert_eq!(y.valuation(), Some(2));
        assert_eq!(y.relative_precision(), x.relative_precision());
    }
}
