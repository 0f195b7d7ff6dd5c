use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use goodpoint::arith::{is_prime, rational_int, OddPrime};
use goodpoint::certify::{
    certify_good, family_coefficient, restrict_level_to_l, Decomposer, Verdict,
};
use goodpoint::cm::{count_formula_eisenstein, QuadInt, CLASS_ONE_DISCRIMINANTS};
use goodpoint::curve::torsion::reduce_rational_point;
use goodpoint::curve::{Curve, Point};
use goodpoint::finite::{
    affine_points, count_points, curve_over, p_primary_generator, FiniteField,
};
use goodpoint::local::{make_unramified, FieldHandle};
use goodpoint::padic::{sqrt, Padic};
use goodpoint::survey::{naive_point_search, sweep, SweepConfig};

fn seven() -> OddPrime {
    OddPrime::new(7).unwrap()
}

fn padic(n: i64, prec: i64) -> Padic {
    Padic::from_i64(n, seven(), prec)
}

fn same(a: &Padic, b: &Padic) -> bool {
    (a - b).is_zero()
}

fn e0() -> (Curve<BigRational>, Point<BigRational>) {
    let c = Curve::new(BigRational::zero(), rational_int(-2));
    (c, Point::affine(rational_int(3), rational_int(5)))
}

fn small_odd_prime() -> impl Strategy<Value = u64> {
    (3u64..60).prop_filter("prime", |&p| is_prime(p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadint_norm_is_multiplicative(i in 0usize..9, a in -50i128..50, b in -50i128..50, c in -50i128..50, e in -50i128..50) {
        let d = CLASS_ONE_DISCRIMINANTS[i];
        let x = QuadInt::new(d, a, b).unwrap();
        let y = QuadInt::new(d, c, e).unwrap();
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x);
        prop_assert_eq!(x.add(&x.conj()), QuadInt::from_int(d, x.trace()).unwrap());
        prop_assert_eq!(x.mul(&x.conj()), QuadInt::from_int(d, x.norm()).unwrap());
        prop_assert!(x.norm() >= 0);
    }

    #[test]
    fn padic_ring_axioms(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000, prec in 4i64..30) {
        let (x, y, z) = (padic(a, prec), padic(b, prec), padic(c, prec));
        prop_assert!(same(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z))));
        prop_assert!(same(&(&(&x + &y) + &z), &(&x + &(&y + &z))));
        prop_assert!(same(&(&(&x * &y) * &z), &(&x * &(&y * &z))));
        prop_assert!(same(&(&x - &x), &padic(0, prec)));
        prop_assert!(same(&(&x * &y), &padic(a * b, prec)));
    }

    #[test]
    fn padic_sqrt_squares_back(a in 1i64..100_000, prec in 2i64..30) {
        prop_assume!(a % 7 != 0);
        let x = padic(a, prec);
        let sq = &x * &x;
        let r = sqrt(&sq, (a % 7) as u64).unwrap();
        prop_assert!(same(&r, &x));
    }

    #[test]
    fn hasse_bound(p in small_odd_prime(), a in -30i64..30, b in -30i64..30) {
        if let Ok(n) = count_points(&BigInt::from(a), &BigInt::from(b), p) {
            let t = p as f64 + 1.0 - n as f64;
            prop_assert!(t * t <= 4.0 * p as f64);
        }
    }

    #[test]
    fn eisenstein_formula_matches_enumeration(p in small_odd_prime(), c in 1i64..60) {
        prop_assume!(p % 3 == 1 && c % p as i64 != 0);
        let n = count_points(&BigInt::zero(), &BigInt::from(c), p).unwrap() as i64;
        prop_assert_eq!(count_formula_eisenstein(c, p).unwrap(), n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_law_is_associative_over_q(i in -3i64..=3, j in -3i64..=3, k in -3i64..=3) {
        let (c, g) = e0();
        let (p, q, r) = (c.mul_i64(i, &g).unwrap(), c.mul_i64(j, &g).unwrap(), c.mul_i64(k, &g).unwrap());
        let left = c.add(&c.add(&p, &q).unwrap(), &r).unwrap();
        let right = c.add(&p, &c.add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, c.mul_i64(i + j + k, &g).unwrap());
    }

    #[test]
    fn group_law_is_associative_over_fq(q in prop::sample::select(vec![5u64, 7, 11, 25, 49]), a in 0i64..5, b in 1i64..5, s in 0usize..1000) {
        let field = FiniteField::new(q).unwrap();
        let Ok(curve) = curve_over(&field, &BigInt::from(a), &BigInt::from(b)) else { return Ok(()) };
        let pts = affine_points(&curve, &field);
        prop_assume!(!pts.is_empty());
        let pick = |k: usize| pts[(s * (k + 1) * 7919) % pts.len()].clone();
        let (p, r, t) = (pick(0), pick(1), pick(2));
        let left = curve.add(&curve.add(&p, &r).unwrap(), &t).unwrap();
        let right = curve.add(&p, &curve.add(&r, &t).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let n = count_points(&BigInt::from(a), &BigInt::from(b), q).unwrap();
        prop_assert!(curve.mul(&BigInt::from(n), &p).unwrap().is_infinity());
    }

    #[test]
    fn group_law_is_associative_over_qp(i in 1i64..=4, j in 1i64..=4, k in 1i64..=4) {
        let (c, g) = e0();
        let to_qp = |pt: &Point<BigRational>| pt.map(|v| Padic::from_rational(v, seven(), 30));
        let cq = Curve::new(padic(0, 30), padic(-2, 30));
        let (p, q, r) = (to_qp(&c.mul_i64(i, &g).unwrap()), to_qp(&c.mul_i64(j, &g).unwrap()), to_qp(&c.mul_i64(k, &g).unwrap()));
        prop_assume!(p != q && q != r);
        let left = cq.add(&cq.add(&p, &q).unwrap(), &r).unwrap();
        let right = cq.add(&p, &cq.add(&q, &r).unwrap()).unwrap();
        let exact = to_qp(&c.mul_i64(i + j + k, &g).unwrap());
        for pt in [&left, &right] {
            let (x, y) = pt.coords().unwrap();
            let (ex, ey) = exact.coords().unwrap();
            prop_assert!(same(x, ex) && same(y, ey));
        }
    }

    #[test]
    fn reduction_is_a_homomorphism(p in prop::sample::select(vec![5u64, 7, 11, 13]), i in -4i64..=4, j in -4i64..=4) {
        let (c, g) = e0();
        let field = FiniteField::new(p).unwrap();
        let cbar = curve_over(&field, &BigInt::zero(), &BigInt::from(-2)).unwrap();
        let (a, b) = (c.mul_i64(i, &g).unwrap(), c.mul_i64(j, &g).unwrap());
        let sum = reduce_rational_point(&c.add(&a, &b).unwrap(), &field);
        let parts = cbar.add(&reduce_rational_point(&a, &field), &reduce_rational_point(&b, &field)).unwrap();
        prop_assert_eq!(sum, parts);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn formal_class_is_well_defined(k in 1i64..=3, j in 1i64..=3) {
        let (a, b) = (BigInt::zero(), BigInt::from(-2));
        let s = p_primary_generator(&a, &b, 7, 7).unwrap();
        let field = make_unramified(seven(), 1, 30).unwrap();
        let d = Decomposer::new(&a, &b, &field, s).unwrap();
        let (c, g) = e0();
        let embed = |pt: &Point<BigRational>| pt.map(|v| {
            let q = Padic::from_rational(v, seven(), 30);
            field.from_padic(&q)
        });
        let pt = embed(&c.mul_i64(k, &g).unwrap());
        let shift = embed(&c.mul_i64(7 * j, &g).unwrap());
        let moved = d.curve().add(&pt, &shift).unwrap();
        prop_assert_eq!(d.decompose(&moved).unwrap().class, d.decompose(&pt).unwrap().class);
    }

    #[test]
    fn certificate_ignores_sign_of_generator(n in -12i64..12) {
        let Some(r) = naive_point_search(n, 60) else { return Ok(()) };
        let plus = certify_good(n, &r.x, &r.y, 24).unwrap();
        let minus = certify_good(n, &r.x, &(-r.y.clone()), 24).unwrap();
        prop_assert_eq!(plus.verdict, minus.verdict);
        prop_assert_eq!(plus.x_valuation, minus.x_valuation);
        prop_assert_eq!((plus.lambda + minus.lambda) % 7, 0);
    }

    #[test]
    fn x_valuation_is_even_and_negative(n in -25i64..25) {
        let Some(r) = naive_point_search(n, 60) else { return Ok(()) };
        let cert = certify_good(n, &r.x, &r.y, 24).unwrap();
        prop_assert!(cert.x_valuation <= -2 && cert.x_valuation % 2 == 0);
        prop_assert_eq!(cert.verdict == Verdict::Good, cert.x_valuation == -2);
        prop_assert!(cert.stability);
        prop_assert_eq!(family_coefficient(n), BigInt::from(-2 + 7 * n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn good_points_restrict_to_level_six(n in -8i64..8) {
        let Some(r) = naive_point_search(n, 40) else { return Ok(()) };
        let cert = certify_good(n, &r.x, &r.y, 24).unwrap();
        if cert.verdict == Verdict::Good {
            prop_assert_eq!(restrict_level_to_l(&cert).unwrap(), 6);
        }
    }
}

#[test]
fn good_fraction_sanity_band() {
    let mut cfg = SweepConfig::new(-30, 30);
    cfg.height = 100;
    let report = sweep(&cfg).unwrap();
    let g = report.good_fraction.unwrap();
    assert!((0.6..=1.0).contains(&g), "good fraction {g}");
    assert_eq!(report.entries.len(), 61);
}
