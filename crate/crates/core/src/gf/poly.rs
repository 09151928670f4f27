//! Dense polynomials over a prime field F_p, used to select and check moduli.
//!
//! Coefficient vectors are stored constant term first and kept trimmed (no
//! trailing zeros); the zero polynomial is the empty vector.

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

fn pow_mod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    pow_mod_p(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn degree(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

/// Remainder of `a` modulo `f`; `f` must be nonzero.
fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    let df = degree(f).expect("nonzero divisor");
    let lead_inv = inv_mod_p(f[df], p);
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - df;
        for (i, &fc) in f.iter().enumerate() {
            let sub = factor * fc % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, f, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test: `f` (monic, degree n) is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for every 1 <= i <= n/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let p = p as u64;
    let mut f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    trim(&mut f);
    let n = match degree(&f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = pow_poly_mod(&h, p, &f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&diff, &f, p);
        if degree(&g).unwrap_or(0) >= 1 {
            return false;
        }
    }
    true
}

/// The monic degree-`m` polynomial whose lower coefficients are the base-`p`
/// digits of `n` (constant term least significant).
pub(crate) fn monic_from_index(n: u64, p: u32, m: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut n = n;
    for _ in 0..m {
        coeffs.push((n % p as u64) as u32);
        n /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Smallest monic irreducible of degree `m` with a nonzero constant term, in
/// the order of [`monic_from_index`].
pub(crate) fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|n| monic_from_index(n, p, m))
        .find(|f| f[0] != 0 && is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
