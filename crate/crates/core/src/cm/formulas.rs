use num_bigint::BigInt;

use super::{norm_form_solution, primary_normalize, prime_above, sixth_power_residue, QuadInt};
use crate::arith::{legendre_i64, OddPrime};
use crate::error::{Error, Result};

/// Base CM models y² = x³ + A x + B for D = −43, −67, −163; twists use (A c², B c³).
pub const CLASS_ONE_MODELS: [(i64, i64, i64); 3] = [
    (-43, -3440, -77658),
    (-67, -29480, -1948226),
    (-163, -8697680, -9873093538),
];

/// j-invariants used for the remaining discriminants (D = −1, −3 have dedicated models).
const J_INVARIANTS: [(i64, i64); 7] = [
    (-2, 8000),
    (-7, -3375),
    (-11, -32768),
    (-19, -884736),
    (-43, -884736000),
    (-67, -147197952000),
    (-163, -262537412640768000),
];

/// A Weierstrass model (A, B) with CM by Z[ω_D], twisted by c.
///
/// D = −3 gives y² = x³ + c, D = −1 gives y² = x³ + c x, D = −43, −67, −163 use the
/// frozen models above, and the rest A = 3j(1728 − j)c², B = 2j(1728 − j)²c³.
pub fn cm_model(d: i64, c: i64) -> Result<(BigInt, BigInt)> {
    QuadInt::new(d, 0, 0)?;
    let c = BigInt::from(c);
    let (c2, c3) = (&c * &c, &c * &c * &c);
    if d == -3 {
        return Ok((BigInt::from(0), c));
    }
    if d == -1 {
        return Ok((c, BigInt::from(0)));
    }
    if let Some(&(_, a, b)) = CLASS_ONE_MODELS.iter().find(|m| m.0 == d) {
        return Ok((BigInt::from(a) * c2, BigInt::from(b) * c3));
    }
    let j = BigInt::from(
        J_INVARIANTS
            .iter()
            .find(|m| m.0 == d)
            .expect("listed discriminant")
            .1,
    );
    let k = BigInt::from(1728) - &j;
    Ok((
        BigInt::from(3) * &j * &k * c2,
        BigInt::from(2) * &j * &k * &k * c3,
    ))
}

/// p + 1 − (4c/π₀)₆ π̄₀ − (4c/π̄₀)₆ π₀ with π₀, π̄₀ ≡ 1 mod 3, for y² = x³ + c.
pub fn count_formula_eisenstein(c: i64, p: u64) -> Result<i64> {
    if p < 5 || p % 3 != 1 || (c as i128).rem_euclid(p as i128) == 0 {
        return Err(Error::BadPrime(p));
    }
    OddPrime::new(p)?;
    let pi = prime_above(-3, p)?.ok_or(Error::BadPrime(p))?;
    let pi0 = primary_normalize(&pi)?;
    let pi0_bar = primary_normalize(&pi0.conj())?;
    let four_c = (4 * c as i128).rem_euclid(p as i128) as i64;
    let s = sixth_power_residue(four_c, &pi0)?.mul(&pi0_bar);
    let t = sixth_power_residue(four_c, &pi0_bar)?.mul(&pi0);
    let total = QuadInt::from_int(-3, p as i128 + 1)?.sub(&s).sub(&t);
    if !total.is_rational() {
        return Err(Error::ConsistencyFailure(format!(
            "count {total} is not rational"
        )));
    }
    Ok(total.a() as i64)
}

/// Sign of u in 4p = u² − D v², matched against enumeration on the frozen models.
///
/// With u = 2^k u₀ (u₀ odd): k = 0 takes u ≡ 3 mod 4, k = 1 takes (2/p) u₀ ≡ 1 mod 4,
/// and k ≥ 2 takes u > 0 (then p ≡ 3 mod 4 and the sign does not affect the count).
pub fn oriented_u(u: i128, p: u64) -> Result<i128> {
    let u = u.abs();
    let k = u.trailing_zeros();
    let u0 = u >> k;
    let two_p = legendre_i64(2, OddPrime::new(p)?) as i128;
    Ok(match k {
        0 if u.rem_euclid(4) == 3 => u,
        0 => -u,
        1 if (two_p * u0).rem_euclid(4) == 1 => u,
        1 => -u,
        _ => u,
    })
}

/// p + 1 − (2/p)(u/p)(c/p) u for the CM model of D ∈ {−43, −67, −163} twisted by c.
pub fn count_formula_class_one(c: i64, p: u64, d: i64) -> Result<i64> {
    if !CLASS_ONE_MODELS.iter().any(|m| m.0 == d) {
        return Err(Error::UnsupportedDiscriminant(d));
    }
    let op = OddPrime::new(p)?;
    if (2 * c as i128 * d as i128).rem_euclid(p as i128) == 0 {
        return Err(Error::BadPrime(p));
    }
    let (u, _) = norm_form_solution(d, p).ok_or(Error::NotRepresentable { d, p })?;
    let u = oriented_u(u, p)?;
    let sign = legendre_i64(2, op) as i128
        * legendre_i64((u % p as i128) as i64, op) as i128
        * legendre_i64(c, op) as i128;
    Ok((p as i128 + 1 - sign * u) as i64)
}

/// Whether x² = (1 + D)/4 and 2x = −1 have no common solution mod p.
///
/// The second equation forces x = −1/2, so the system is solvable exactly when p | D.
pub fn conjugate_system_unsolvable(d: i64, p: u64) -> bool {
    let pm = p as i128;
    let inv =
        |a: i128| crate::arith::mod_inv_u64(a.rem_euclid(pm) as u64, p).expect("p odd") as i128;
    let x = (-inv(2)).rem_euclid(pm);
    let target = ((1 + d as i128) * inv(4)).rem_euclid(pm);
    (x * x).rem_euclid(pm) != target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime;
    use crate::cm::split_frobenius;
    use crate::finite::{count_points, trace_of_frobenius};

    fn enumerate(d: i64, c: i64, p: u64) -> Option<i64> {
        let (a, b) = cm_model(d, c).unwrap();
        count_points(&a, &b, p).ok().map(|n| n as i64)
    }

    #[test]
    fn eisenstein_at_seven() {
        assert_eq!(count_formula_eisenstein(5, 7).unwrap(), 7);
        assert_eq!(count_formula_eisenstein(1, 7).unwrap(), 12);
        let anomalous = (1..7)
            .filter(|&c| count_formula_eisenstein(c, 7).unwrap() == 7)
            .count();
        assert_eq!(anomalous, 1);
    }

    #[test]
    fn eisenstein_matches_enumeration() {
        for p in [7u64, 13, 19, 31, 37, 43] {
            for c in 1..p as i64 {
                assert_eq!(
                    count_formula_eisenstein(c, p).unwrap(),
                    count_points(&0.into(), &c.into(), p).unwrap() as i64
                );
            }
        }
    }

    #[test]
    fn eisenstein_anomalous_count() {
        for p in [7u64, 37, 61] {
            let n = (1..p as i64)
                .filter(|&c| count_formula_eisenstein(c, p).unwrap() == p as i64)
                .count();
            assert_eq!(n as u64, (p - 1) / 6);
        }
    }

    #[test]
    fn class_one_matches_enumeration() {
        for &(d, _, _) in &CLASS_ONE_MODELS {
            for p in (5u64..400).filter(|&p| is_prime(p)) {
                if norm_form_solution(d, p).is_none() || (d as i128).rem_euclid(p as i128) == 0 {
                    continue;
                }
                for c in 1..p as i64 {
                    if let Some(n) = enumerate(d, c, p) {
                        assert_eq!(
                            count_formula_class_one(c, p, d).unwrap(),
                            n,
                            "D={d} p={p} c={c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn class_one_at_eleven() {
        for c in 1..11 {
            let n = count_formula_class_one(c, 11, -43).unwrap();
            assert!(n == 11 || n == 13);
            let two_c = legendre_i64(2 * c, OddPrime::new(11).unwrap());
            assert_eq!(n == 11, two_c == 1);
        }
        assert!(matches!(
            count_formula_class_one(1, 5, -43),
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn frobenius_recovers_counts() {
        for &d in &super::super::CLASS_ONE_DISCRIMINANTS {
            for p in (3u64..50).filter(|&p| is_prime(p)) {
                if legendre_i64(d, OddPrime::new(p).unwrap()) != 1 {
                    continue;
                }
                for c in 1..p as i64 {
                    let (a, b) = cm_model(d, c).unwrap();
                    let Ok(t) = trace_of_frobenius(&a, &b, p) else {
                        continue;
                    };
                    if t.rem_euclid(p as i64) == 0 {
                        continue;
                    }
                    let pi = split_frobenius(d, p, t).unwrap();
                    assert_eq!(pi.norm(), p as i128);
                    assert_eq!(pi.trace(), t as i128);
                }
            }
        }
    }

    #[test]
    fn conjugate_system() {
        assert!(conjugate_system_unsolvable(-3, 7));
        assert!(conjugate_system_unsolvable(-43, 11));
        assert!(!conjugate_system_unsolvable(-7, 7));
    }
}
