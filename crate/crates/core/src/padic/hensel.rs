use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Padic;
use crate::arith::{legendre, mod_inverse, pow_big, OddPrime};
use crate::error::{Error, Result};

/// Horner evaluation of an integer polynomial (low degree first) modulo `m`.
fn eval_mod(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    f.iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Lifts a simple root of `f` modulo p to a root modulo p^prec.
pub fn hensel_root(f: &[BigInt], seed: &BigInt, p: OddPrime, prec: i64) -> Result<Padic> {
    if prec < 1 {
        return Err(Error::InvalidInput("precision must be positive".into()));
    }
    let pb = p.big();
    let df = derivative(f);
    let x0 = seed.mod_floor(&pb);
    if !eval_mod(f, &x0, &pb).is_zero() || eval_mod(&df, &x0, &pb).is_zero() {
        return Err(Error::NoSimpleRoot);
    }
    let mut x = x0;
    let mut k: i64 = 1;
    while k < prec {
        k = (2 * k).min(prec);
        let m = pow_big(p.get(), k as u32);
        let fx = eval_mod(f, &x, &m);
        let dinv = mod_inverse(&eval_mod(&df, &x, &m), &m).expect("derivative is a unit");
        x = (&x - fx * dinv).mod_floor(&m);
    }
    Ok(Padic::from_int(&x, p, prec))
}

/// Square root with the branch fixed by `seed` (a residue of the unit part's root).
pub fn sqrt(x: &Padic, seed: u64) -> Result<Padic> {
    nth_root_inner(x, 2, seed, true)
}

/// n-th root for p ∤ n, branch fixed by `seed`. The valuation must be divisible by n.
pub fn nth_root(x: &Padic, n: u32, seed: u64) -> Result<Padic> {
    nth_root_inner(x, n, seed, false)
}

fn nth_root_inner(x: &Padic, n: u32, seed: u64, square: bool) -> Result<Padic> {
    let p = x.prime();
    if n == 0 || (n as u64) % p.get() == 0 {
        return Err(Error::NoSimpleRoot);
    }
    let n64 = n as i64;
    if x.is_zero() {
        return Ok(Padic::zero(p, Integer::div_ceil(&x.precision(), &n64)));
    }
    let v = x.valuation_bound();
    if v % n64 != 0 {
        return Err(if square {
            Error::OddValuation
        } else {
            Error::BadSeed(format!("valuation {v} is not divisible by {n}"))
        });
    }
    if square && legendre(x.unit(), p) != 1 {
        return Err(Error::NotASquare);
    }
    let rel = x.relative_precision();
    let mut f = vec![BigInt::zero(); n as usize + 1];
    f[0] = -x.unit().clone();
    f[n as usize] = BigInt::one();
    let root = hensel_root(&f, &BigInt::from(seed), p, rel)
        .map_err(|_| Error::BadSeed(format!("{seed}^{n} is not the unit part modulo {p}")))?;
    Ok(root.shift(v / n64))
}

/// The (p-1)-st root of unity congruent to `a` mod p.
pub fn teichmuller(a: u64, p: OddPrime, prec: i64) -> Result<Padic> {
    if a % p.get() == 0 {
        return Err(Error::InvalidInput(
            "Teichmüller lift of 0 is 0 only".into(),
        ));
    }
    let mut f = vec![BigInt::zero(); p.get() as usize];
    f[0] = BigInt::from(-1);
    f[p.get() as usize - 1] = BigInt::one();
    hensel_root(&f, &BigInt::from(a), p, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p7() -> OddPrime {
        OddPrime::new(7).unwrap()
    }

    #[test]
    fn sqrt_minus_three_digits() {
        let f = [BigInt::from(3), BigInt::zero(), BigInt::one()];
        let r = hensel_root(&f, &BigInt::from(2), p7(), 4).unwrap();
        assert_eq!(r.digits(), vec![2, 5, 0, 6]);
        let s = sqrt(&Padic::from_i64(-3, p7(), 4), 2).unwrap();
        assert_eq!(s, r);
        let three = Padic::from_i64(3, p7(), 4);
        assert!((&(&s * &s) + &three).is_zero());
        let other = sqrt(&Padic::from_i64(-3, p7(), 4), 5).unwrap();
        assert_eq!(other, -&s);
    }

    #[test]
    fn simple_root_required() {
        let f = [BigInt::from(-1), BigInt::zero(), BigInt::one()];
        assert_eq!(
            hensel_root(&f, &BigInt::from(2), p7(), 4),
            Err(Error::NoSimpleRoot)
        );
        // x^7 - x has derivative 7x^6 - 1 ≡ -1, fine; x^2 has a double root at 0
        let g = [BigInt::zero(), BigInt::zero(), BigInt::one()];
        assert_eq!(
            hensel_root(&g, &BigInt::zero(), p7(), 4),
            Err(Error::NoSimpleRoot)
        );
    }

    #[test]
    fn cube_root_of_six() {
        let f = [
            BigInt::from(-6),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
        ];
        let r = hensel_root(&f, &BigInt::from(3), p7(), 10).unwrap();
        assert_eq!(r.residue(), Some(3));
        assert!((&r.pow(3) - &Padic::from_i64(6, p7(), 10)).is_zero());
    }

    #[test]
    fn sqrt_errors() {
        assert_eq!(
            sqrt(&Padic::from_i64(7, p7(), 4), 1),
            Err(Error::OddValuation)
        );
        assert_eq!(
            sqrt(&Padic::from_i64(3, p7(), 4), 1),
            Err(Error::NotASquare)
        );
        assert!(matches!(
            sqrt(&Padic::from_i64(4, p7(), 4), 3),
            Err(Error::BadSeed(_))
        ));
        assert_eq!(
            sqrt(&Padic::from_i64(4, p7(), 4), 2).unwrap().to_integer(),
            Some(BigInt::from(2))
        );
        let s = sqrt(&Padic::from_i64(4 * 49, p7(), 6), 2).unwrap();
        assert_eq!(s.valuation(), Some(1));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(1, p7(), 8).unwrap(), Padic::one(p7(), 8));
        let w = teichmuller(2, p7(), 4).unwrap();
        assert!((&w.pow(3) - &Padic::one(p7(), 4)).is_zero());
        // the cube root of unity ≡ 4 is (-1 + √-3)/2 for the root ≡ 2
        let z3 = teichmuller(4, p7(), 4).unwrap();
        let s = sqrt(&Padic::from_i64(-3, p7(), 4), 2).unwrap();
        let two = Padic::from_i64(2, p7(), 4);
        let rhs = (&s - &Padic::one(p7(), 4)).checked_div(&two).unwrap();
        assert_eq!(z3, rhs);
    }
}
