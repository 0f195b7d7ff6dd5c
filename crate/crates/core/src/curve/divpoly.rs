//! Division polynomials of y^2 = x^3 + A x + B with A, B polynomials in a parameter `a`.
//!
//! ψ_m = g_m for odd m and ψ_m = y g_m for even m, with g_m ∈ Z[a][x].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::scalar::Scalar;

/// Sparse polynomial in Z[x, a], keyed by (deg_x, deg_a).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ZaxPoly(BTreeMap<(u32, u32), BigInt>);

impl ZaxPoly {
    pub fn zero() -> Self {
        ZaxPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, da: u32) -> Self {
        let c = c.into();
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((dx, da), c);
        }
        ZaxPoly(m)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn a() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds Σ c_(i,j) x^i a^j from (i, j, c) triples.
    pub fn from_terms(terms: &[(u32, u32, i64)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(i, j, c)| {
            acc.add(&Self::monomial(c, i, j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, dx: u32, da: u32) -> BigInt {
        self.0.get(&(dx, da)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.0.iter()
    }

    pub fn degree_x(&self) -> u32 {
        self.0.keys().map(|k| k.0).max().unwrap_or(0)
    }

    fn insert_add(m: &mut BTreeMap<(u32, u32), BigInt>, k: (u32, u32), c: BigInt) {
        let e = m.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            m.remove(&k);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &o.0 {
            Self::insert_add(&mut m, *k, c.clone());
        }
        ZaxPoly(m)
    }

    pub fn neg(&self) -> Self {
        ZaxPoly(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = BTreeMap::new();
        for ((i1, j1), c1) in &self.0 {
            for ((i2, j2), c2) in &o.0 {
                Self::insert_add(&mut m, (i1 + i2, j1 + j2), c1 * c2);
            }
        }
        ZaxPoly(m)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        ZaxPoly(self.0.iter().map(|(key, c)| (*key, c * k)).collect())
    }

    /// Division by an integer known to divide every coefficient.
    pub fn div_exact(&self, k: &BigInt) -> Self {
        ZaxPoly(
            self.0
                .iter()
                .map(|(key, c)| {
                    let (q, r) = c.div_rem(k);
                    assert!(r.is_zero(), "inexact division by {k}");
                    (*key, q)
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    /// Substitutes a = value, giving a polynomial in x (low degree first).
    pub fn specialize(&self, value: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree_x() as usize + 1];
        for ((i, j), c) in &self.0 {
            out[*i as usize] += c * num_traits::pow(value.clone(), *j as usize);
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }
}

impl fmt::Display for ZaxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.0.iter().rev() {
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let xs = match i {
                        0 => String::new(),
                        1 => "x".into(),
                        _ => format!("x^{i}"),
                    };
                    let as_ = match j {
                        0 => String::new(),
                        1 => "a".into(),
                        _ => format!("a^{j}"),
                    };
                    [as_, xs]
                        .into_iter()
                        .filter(|s| !s.is_empty())
                        .collect::<Vec<_>>()
                        .join("*")
                }
            };
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            let sign = match (first, neg) {
                (true, true) => "-".to_string(),
                (true, false) => String::new(),
                (false, true) => " - ".into(),
                (false, false) => " + ".into(),
            };
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// ψ_m, split as (y-factor present, g_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionPolynomial {
    pub m: u32,
    pub has_y_factor: bool,
    pub g: ZaxPoly,
}

/// ψ_m for y^2 = x^3 + A x + B, with A and B given as polynomials in `a` only.
pub fn division_polynomial(m: u32, a_coef: &ZaxPoly, b_coef: &ZaxPoly) -> DivisionPolynomial {
    let mut memo = HashMap::new();
    let g = g_m(m, a_coef, b_coef, &mut memo);
    DivisionPolynomial {
        m,
        has_y_factor: m % 2 == 0,
        g,
    }
}

/// ψ_m for numeric A, B, returned as (y-factor, g_m ∈ Z[x]).
pub fn division_polynomial_numeric(m: u32, a: &BigInt, b: &BigInt) -> (bool, Vec<BigInt>) {
    let d = division_polynomial(
        m,
        &ZaxPoly::constant(a.clone()),
        &ZaxPoly::constant(b.clone()),
    );
    (d.has_y_factor, d.g.specialize(&BigInt::zero()))
}

fn g_m(m: u32, a: &ZaxPoly, b: &ZaxPoly, memo: &mut HashMap<u32, ZaxPoly>) -> ZaxPoly {
    if let Some(g) = memo.get(&m) {
        return g.clone();
    }
    let x = ZaxPoly::x();
    let c = |k: i64| ZaxPoly::constant(k);
    let g = match m {
        0 => ZaxPoly::zero(),
        1 => c(1),
        2 => c(2),
        3 => {
            // 3x^4 + 6Ax^2 + 12Bx - A^2
            c(3).mul(&x.pow(4))
                .add(&c(6).mul(a).mul(&x.pow(2)))
                .add(&c(12).mul(b).mul(&x))
                .sub(&a.mul(a))
        }
        4 => {
            // 4(x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
            let inner = x
                .pow(6)
                .add(&c(5).mul(a).mul(&x.pow(4)))
                .add(&c(20).mul(b).mul(&x.pow(3)))
                .sub(&c(5).mul(&a.mul(a)).mul(&x.pow(2)))
                .sub(&c(4).mul(&a.mul(b)).mul(&x))
                .sub(&c(8).mul(&b.mul(b)))
                .sub(&a.pow(3));
            c(4).mul(&inner)
        }
        _ if m % 2 == 1 => {
            let k = (m - 1) / 2;
            let f2 = x.pow(3).add(&a.mul(&x)).add(b).pow(2);
            let (g2, g1) = (g_m(k + 2, a, b, memo), g_m(k, a, b, memo));
            let (gm1, gp1) = (g_m(k - 1, a, b, memo), g_m(k + 1, a, b, memo));
            let left = g2.mul(&g1.pow(3));
            let right = gm1.mul(&gp1.pow(3));
            if k % 2 == 0 {
                f2.mul(&left).sub(&right)
            } else {
                left.sub(&f2.mul(&right))
            }
        }
        _ => {
            let k = m / 2;
            let gk = g_m(k, a, b, memo);
            let (g2, gm1) = (g_m(k + 2, a, b, memo), g_m(k - 1, a, b, memo));
            let (gm2, gp1) = (g_m(k - 2, a, b, memo), g_m(k + 1, a, b, memo));
            gk.mul(&g2.mul(&gm1.pow(2)).sub(&gm2.mul(&gp1.pow(2))))
                .div_exact(&BigInt::from(2))
        }
    };
    memo.insert(m, g.clone());
    g
}

/// Evaluates an integer polynomial (low degree first) at a ring element.
pub fn eval_int_poly<F: Scalar>(coeffs: &[BigInt], x: &F) -> F {
    coeffs.iter().rev().fold(x.zero_like(), |acc, c| {
        acc.mul_ref(x).add_ref(&x.from_int_like(c))
    })
}

pub fn derivative_int_poly(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}
