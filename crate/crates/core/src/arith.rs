//! Small integer utilities shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An odd rational prime. Every p-adic and finite-field routine takes one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p > 2 && is_prime(p) {
            Ok(OddPrime(p))
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// p^k as a big integer.
    pub fn pow(self, k: u32) -> BigInt {
        num_traits::pow(BigInt::from(self.0), k as usize)
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits q = p^f, returning (p, f).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut f = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

pub fn pow_big(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Strips every factor of p: returns (v_p(n), n / p^v). `n` must be nonzero.
pub fn split_valuation(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0i64;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    (v, m)
}

pub fn valuation_of_int(n: &BigInt, p: u64) -> Option<i64> {
    (!n.is_zero()).then(|| split_valuation(n, p).0)
}

pub fn valuation_of_rational(q: &BigRational, p: u64) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    Some(split_valuation(q.numer(), p).0 - split_valuation(q.denom(), p).0)
}

/// Inverse of `a` modulo `m`, if it exists. Result in [0, m).
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub fn mod_pow_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_inv_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| mod_pow_u64(a, p - 2, p))
}

pub fn reduce_mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Legendre symbol (a/p) by Euler's criterion.
pub fn legendre(a: &BigInt, p: OddPrime) -> i8 {
    let r = reduce_mod_u64(a, p.get());
    if r == 0 {
        return 0;
    }
    if mod_pow_u64(r, (p.get() - 1) / 2, p.get()) == 1 {
        1
    } else {
        -1
    }
}

pub fn legendre_i64(a: i64, p: OddPrime) -> i8 {
    legendre(&BigInt::from(a), p)
}

/// Least non-negative square root of `a` mod p, by search (p is small here).
pub fn sqrt_mod_small(a: i64, p: u64) -> Option<u64> {
    let a = a.rem_euclid(p as i64) as u64;
    (0..p).find(|&r| (r as u128 * r as u128 % p as u128) as u64 == a)
}

/// Exact integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = num_integer::Roots::sqrt(n);
    (&r * &r == *n).then_some(r)
}

/// Parses "num/den" or "num" into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let q =
        BigRational::from_str(t).map_err(|_| Error::InvalidInput(format!("bad rational {t:?}")))?;
    Ok(q)
}

/// Renders a rational as "num/den", or "num" for integers.
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
