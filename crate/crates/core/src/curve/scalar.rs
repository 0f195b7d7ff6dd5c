use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::padic::Padic;

/// Valuation of an element of a local ring, normalized so the uniformizer has valuation 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalValuation {
    Exact(i64),
    /// Indistinguishable from zero at the working precision.
    AtLeast(i64),
}

impl LocalValuation {
    pub fn exact(self) -> Option<i64> {
        match self {
            LocalValuation::Exact(v) => Some(v),
            LocalValuation::AtLeast(_) => None,
        }
    }

    /// A lower bound valid in either case.
    pub fn bound(self) -> i64 {
        match self {
            LocalValuation::Exact(v) | LocalValuation::AtLeast(v) => v,
        }
    }
}

/// Coefficient ring for curve arithmetic: exact (Q, F_q) or truncated (Q_p, local fields).
///
/// "Zero" means zero at the working precision for truncated rings.
pub trait Scalar: Clone + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_int_like(&self, n: &BigInt) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Result<Self>;
    /// Exact multiplication by an integer (no precision loss).
    fn mul_int(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Normalized valuation; `None` for rings without one.
    fn valuation(&self) -> Option<LocalValuation> {
        None
    }
    /// Absolute precision in normalized valuation units; `None` for exact rings.
    fn precision_hint(&self) -> Option<i64> {
        None
    }
    /// Caps the absolute precision (normalized units). Identity on exact rings.
    fn cap_precision(&self, _bound: i64) -> Self {
        self.clone()
    }
    /// Coefficients c_3, c_4, ... of w(t) = t^3 + A t w^2 + B w^3, from c_3 up to c_max_deg.
    fn weierstrass_series(a: &Self, b: &Self, max_deg: usize) -> Vec<Self> {
        generic_weierstrass_series(a, b, max_deg)
    }
}

/// Solves w = t^3 + A t w^2 + B w^3 degree by degree; index i holds c_{i}.
pub fn generic_weierstrass_series<F: Scalar>(a: &F, b: &F, max_deg: usize) -> Vec<F> {
    let zero = a.zero_like();
    let mut c = vec![zero.clone(); max_deg + 1];
    let mut sq = vec![zero.clone(); max_deg + 1];
    let mut cube = vec![zero.clone(); max_deg + 1];
    // sq[k] = Σ c_i c_{k-i}, cube[k] = Σ c_i sq[k-i]; both are final once c up to k-3 is known
    let fill_sq = |k: usize, c: &[F]| -> F {
        let mut acc = zero.clone();
        for i in 3..=k.saturating_sub(3) {
            if !c[i].is_zero() && !c[k - i].is_zero() {
                acc = acc.add_ref(&c[i].mul_ref(&c[k - i]));
            }
        }
        acc
    };
    let fill_cube = |k: usize, c: &[F], sq: &[F]| -> F {
        let mut acc = zero.clone();
        for i in 3..=k.saturating_sub(6) {
            if !c[i].is_zero() && !sq[k - i].is_zero() {
                acc = acc.add_ref(&c[i].mul_ref(&sq[k - i]));
            }
        }
        acc
    };
    for n in 3..=max_deg {
        c[n] = if n == 3 {
            a.one_like()
        } else {
            a.mul_ref(&sq[n - 1]).add_ref(&b.mul_ref(&cube[n]))
        };
        // c_n is now known: sq up to n+3 and cube up to n+6 may be completed
        if n + 3 <= max_deg {
            sq[n + 3] = fill_sq(n + 3, &c);
        }
        if n + 6 <= max_deg {
            cube[n + 6] = fill_cube(n + 6, &c, &sq);
        }
    }
    c
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        Ok(self / rhs)
    }
    fn mul_int(&self, k: i64) -> Self {
        self * BigRational::from_integer(k.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Scalar for Padic {
    fn zero_like(&self) -> Self {
        Padic::zero(
            self.prime(),
            self.precision().max(self.relative_precision()),
        )
    }
    fn one_like(&self) -> Self {
        Padic::one(
            self.prime(),
            self.precision().max(self.relative_precision()).max(1),
        )
    }
    fn from_int_like(&self, n: &BigInt) -> Self {
        Padic::from_int(
            n,
            self.prime(),
            self.precision().max(self.relative_precision()).max(1),
        )
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }
    fn mul_int(&self, k: i64) -> Self {
        Padic::mul_int(self, &BigInt::from(k))
    }
    fn is_zero(&self) -> bool {
        Padic::is_zero(self)
    }
    fn valuation(&self) -> Option<LocalValuation> {
        Some(match Padic::valuation(self) {
            Some(v) => LocalValuation::Exact(v),
            None => LocalValuation::AtLeast(self.precision()),
        })
    }
    fn precision_hint(&self) -> Option<i64> {
        Some(self.precision())
    }
    fn cap_precision(&self, bound: i64) -> Self {
        self.truncate(bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weierstrass_series_low_terms() {
        // w = t^3 + A t^7 + B t^9 + 2A^2 t^11 + ...
        let a = BigRational::from_integer(2.into());
        let b = BigRational::from_integer(3.into());
        let c = BigRational::weierstrass_series(&a, &b, 13);
        let ints: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
        assert_eq!(ints[3], 1.into());
        assert_eq!(ints[4], 0.into());
        assert_eq!(ints[7], 2.into());
        assert_eq!(ints[9], 3.into());
        assert_eq!(ints[11], 8.into());
        assert_eq!(ints[13], (5 * 2 * 3).into());
    }
}
