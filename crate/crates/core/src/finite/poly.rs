//! Dense polynomials over F_p, low degree first, used to pick defining polynomials.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    crate::arith::mod_inv_u64(a, p).expect("nonzero leading coefficient")
}

pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = mulmod(r[k], lead_inv, p);
        for (j, &mj) in m.iter().enumerate() {
            let idx = k - dm + j;
            r[idx] = (r[idx] + p - mulmod(c, mj, p)) % p;
        }
        r = trim(r);
    }
    r
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^(p^k) mod m.
fn frobenius_power(m: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut x = rem(&[0, 1], m, p);
    for _ in 0..k {
        // raise to the p-th power by square-and-multiply
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic polynomial of degree n ≥ 1.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = (m.len() - 1) as u32;
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if !sub(&frobenius_power(m, p, n), &rem(&x, m, p), p).is_empty() {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = sub(&frobenius_power(m, p, n / r), &x, p);
        gcd(m, &h, p).len() == 1
    })
}

/// The monic irreducible of degree f whose coefficient code Σ c_i p^i is least.
pub fn smallest_irreducible(p: u64, f: u32) -> Vec<u64> {
    let mut code: u64 = 0;
    loop {
        let mut c = Vec::with_capacity(f as usize + 1);
        let mut r = code;
        for _ in 0..f {
            c.push(r % p);
            r /= p;
        }
        c.push(1);
        if is_irreducible(&c, p) {
            return c;
        }
        code += 1;
    }
}
