//! Root-counting criteria for quadratics, characteristic-2 quartics and
//! x^{p^k+1} + ax + b, plus the c-uniformity of the inverse function.
//!
//! Each criterion has an exhaustive counterpart here so the two can be
//! checked against each other.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{gcd, FieldCtx, SquareClass};

/// Number of roots of x^2 + ax + b in F_q, from the trace or discriminant.
pub fn quadratic_root_count(f: &FieldCtx, a: u32, b: u32) -> u32 {
    if f.is_even() {
        match (a, b) {
            // x^2 = b: squaring is bijective
            (0, _) => 1,
            // x(x + a)
            (_, 0) => 2,
            _ => {
                let w = f.div(b, f.mul(a, a)).expect("a is nonzero");
                if f.trace(w) == 0 {
                    2
                } else {
                    0
                }
            }
        }
    } else {
        let disc = f.sub(f.mul(a, a), f.mul(f.from_int(4), b));
        match f.is_square(disc) {
            SquareClass::Zero => 1,
            SquareClass::Square => 2,
            SquareClass::NonSquare => 0,
        }
    }
}

pub fn quadratic_root_count_scan(f: &FieldCtx, a: u32, b: u32) -> u32 {
    f.elements()
        .filter(|&x| f.add(f.add(f.mul(x, x), f.mul(a, x)), b) == 0)
        .count() as u32
}

/// Degrees of the irreducible factors of a quartic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuarticType {
    /// (1,1,1,1)
    Linear,
    /// (2,2)
    TwoQuadratics,
    /// (1,3)
    LinearCubic,
    /// (1,1,2)
    TwoLinearQuadratic,
    /// (4)
    Irreducible,
}

impl fmt::Display for QuarticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuarticType::Linear => "(1,1,1,1)",
            QuarticType::TwoQuadratics => "(2,2)",
            QuarticType::LinearCubic => "(1,3)",
            QuarticType::TwoLinearQuadratic => "(1,1,2)",
            QuarticType::Irreducible => "(4)",
        })
    }
}

fn quartic_at(f: &FieldCtx, a2: u32, a1: u32, a0: u32, x: u32) -> u32 {
    let x2 = f.mul(x, x);
    f.add(
        f.add(f.mul(x2, x2), f.mul(a2, x2)),
        f.add(f.mul(a1, x), a0),
    )
}

/// Factorization type of x^4 + a2 x^2 + a1 x + a0 over F_{2^m} from the roots
/// r_i of y^3 + a2 y + a1 and the traces of w_i = a0 r_i^2 / a1^2.
pub fn quartic_factor_type(f: &FieldCtx, a2: u32, a1: u32, a0: u32) -> Result<QuarticType> {
    if !f.is_even() {
        return Err(Error::InvalidParams("quartic criterion needs characteristic 2".into()));
    }
    if a0 == 0 || a1 == 0 {
        return Err(Error::DegenerateQuartic);
    }
    let roots: Vec<u32> = f
        .elements()
        .filter(|&y| f.add(f.add(f.pow(y, 3), f.mul(a2, y)), a1) == 0)
        .collect();
    let a1_sq = f.mul(a1, a1);
    let tr_w = |r: u32| f.trace(f.div(f.mul(a0, f.mul(r, r)), a1_sq).expect("a1 is nonzero"));
    match roots.len() {
        0 => Ok(QuarticType::LinearCubic),
        1 => Ok(if tr_w(roots[0]) == 0 {
            QuarticType::TwoLinearQuadratic
        } else {
            QuarticType::Irreducible
        }),
        3 => {
            let zeros = roots.iter().filter(|&&r| tr_w(r) == 0).count();
            match zeros {
                3 => Ok(QuarticType::Linear),
                1 => Ok(QuarticType::TwoQuadratics),
                _ => Err(Error::NotCovered(format!("{zeros} of the w_i have trace 0"))),
            }
        }
        // the resolvent is separable since its discriminant is a1^2
        n => unreachable!("separable cubic with {n} roots"),
    }
}

/// Factorization type by counting roots and searching monic quadratic
/// divisors. Assumes the quartic is separable, which holds when a1 != 0 in
/// characteristic 2 since the derivative is the constant a1.
pub fn quartic_factor_type_scan(f: &FieldCtx, a2: u32, a1: u32, a0: u32) -> QuarticType {
    let roots = f
        .elements()
        .filter(|&x| quartic_at(f, a2, a1, a0, x) == 0)
        .count();
    match roots {
        4 => QuarticType::Linear,
        2 => QuarticType::TwoLinearQuadratic,
        1 => QuarticType::LinearCubic,
        0 => {
            let coeffs = [a0, a1, a2, 0, 1];
            let has_quadratic = f.elements().any(|u| {
                f.elements()
                    .any(|v| poly_rem_monic_quadratic(f, &coeffs, u, v) == (0, 0))
            });
            if has_quadratic {
                QuarticType::TwoQuadratics
            } else {
                QuarticType::Irreducible
            }
        }
        n => unreachable!("separable quartic with {n} roots"),
    }
}

/// Remainder of the polynomial `c` (constant term first) modulo x^2 + ux + v.
fn poly_rem_monic_quadratic(f: &FieldCtx, c: &[u32], u: u32, v: u32) -> (u32, u32) {
    let mut r = c.to_vec();
    for d in (2..r.len()).rev() {
        let lead = r[d];
        if lead == 0 {
            continue;
        }
        r[d] = 0;
        r[d - 1] = f.sub(r[d - 1], f.mul(lead, u));
        r[d - 2] = f.sub(r[d - 2], f.mul(lead, v));
    }
    (r[0], r[1])
}

/// Root counts of x^{p^k+1} + ax + b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BluherCount {
    pub root_count: u32,
    /// gcd(m, k)
    pub d: u32,
}

impl BluherCount {
    /// The four values the count can take.
    pub fn allowed(p: u32, d: u32) -> [u32; 4] {
        [0, 1, 2, p.pow(d) + 1]
    }

    pub fn is_allowed(&self, p: u32) -> bool {
        Self::allowed(p, self.d).contains(&self.root_count)
    }
}

pub fn bluher_root_count(f: &FieldCtx, k: u32, a: u32, b: u32) -> BluherCount {
    let e = (f.characteristic() as u64).pow(k) + 1;
    let root_count = f
        .elements()
        .filter(|&x| f.add(f.add(f.pow(x, e), f.mul(a, x)), b) == 0)
        .count() as u32;
    BluherCount {
        root_count,
        d: gcd(f.degree(), k),
    }
}

/// Number of b in F_q* for which x^{p^k+1} + x + b has p^d + 1 roots, both
/// by exhaustive count and by the closed formula, as (scanned, formula).
pub fn bluher_special_b_count(f: &FieldCtx, k: u32) -> (u64, u64) {
    let p = f.characteristic() as u64;
    let d = gcd(f.degree(), k);
    let target = p.pow(d) as u32 + 1;
    let scanned = f
        .nonzero()
        .filter(|&b| bluher_root_count(f, k, 1, b).root_count == target)
        .count() as u64;
    (scanned, bluher_formula(p, f.degree(), k))
}

/// (p^{(r-1)d} - p^{eps d}) / (p^{2d} - 1) with r = m/d and eps = 0 for odd r.
pub fn bluher_formula(p: u64, m: u32, k: u32) -> u64 {
    let d = gcd(m, k);
    let r = m / d;
    let eps = if r % 2 == 1 { 0 } else { 1 };
    (p.pow((r - 1) * d) - p.pow(eps * d)) / (p.pow(2 * d) - 1)
}

/// Predicted c-differential uniformity of x^{q-2} on F_q for c != 1.
/// Returns 1 (PcN), 2 or 3.
pub fn inverse_c_uniformity_predict(f: &FieldCtx, c: u32) -> Result<u32> {
    if c == 1 {
        return Err(Error::IdentityC);
    }
    if c == 0 {
        return Ok(1);
    }
    // over F_2 and F_3 the inverse is the identity map
    if f.order() <= 3 {
        return Ok(1);
    }
    let inv_c = f.inv(c).expect("c is nonzero");
    if f.is_even() {
        return Ok(if f.trace(c) == 1 && f.trace(inv_c) == 1 {
            2
        } else {
            3
        });
    }
    let four = f.from_int(4);
    let nsq = |x: u32| f.is_square(x) == SquareClass::NonSquare;
    let special = c == four || f.inv(four) == Some(c);
    let both_nsq = nsq(f.sub(f.mul(c, c), f.mul(four, c))) && nsq(f.sub(1, f.mul(four, c)));
    Ok(if special || both_nsq { 2 } else { 3 })
}
