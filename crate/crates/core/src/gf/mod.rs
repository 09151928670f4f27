//! Prime-power finite fields F_{p^m} with q <= 2^16, backed by discrete-log tables.
//!
//! An element is addressed by its index: the base-`p` integer whose digits are
//! the coefficients of its polynomial representative, constant term least
//! significant. Index 0 is zero and index 1 is one. Addition is digitwise, so
//! any two fields of the same order `p^n` share the same additive structure on
//! indices; the analysis engine relies on this to add pairs of F_q elements.

mod poly;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub(crate) use poly::{is_prime, prime_factors};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Odd-characteristic addition splits indices into chunks of at most this many
/// elements and adds each chunk through a lookup table.
const ADD_CHUNK_LIMIT: u32 = 1024;

static NEXT_CTX_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) enum AddKind<'a> {
    Xor,
    Table { chunk: u32, table: &'a [u16] },
    General,
}

#[derive(Debug, Clone)]
enum Adder {
    Xor,
    Chunked {
        chunk: u32,
        table: Vec<u16>,
        /// true when a single chunk covers the whole field
        single: bool,
    },
}

/// An immutable description of F_{p^m}.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    id: u64,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    log: Vec<u32>,
    /// w^i for 0 <= i < 2(q-1), doubled so products of logs need no reduction
    exp: Vec<u32>,
    neg: Vec<u32>,
    adder: Adder,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.primitive == other.primitive
    }
}

impl Eq for FieldCtx {}

/// One element of a field, tagged with the context that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    index: u32,
    ctx_id: u64,
}

impl FieldElem {
    pub fn index(self) -> u32 {
        self.index
    }

    pub fn ctx_id(self) -> u64 {
        self.ctx_id
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Zero,
    Square,
    NonSquare,
}

/// Builds F_{p^m}. Without an explicit modulus the smallest monic irreducible
/// of degree `m` with nonzero constant term is used (coefficients read as a
/// base-`p` integer, constant term least significant).
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldCtx> {
    FieldCtx::new(p, m, modulus)
}

impl FieldCtx {
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match order {
            Some(q) => q as u32,
            None => return Err(Error::FieldTooLarge { p, m }),
        };
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {m}, got {}",
                        m + 1,
                        f.len()
                    )));
                }
                if f[m as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
                }
                if !poly::is_irreducible(f, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                f.to_vec()
            }
            None => poly::smallest_irreducible(p, m),
        };

        let mut ctx = FieldCtx {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            p,
            m,
            q,
            modulus,
            primitive: 0,
            log: Vec::new(),
            exp: Vec::new(),
            neg: Vec::new(),
            adder: build_adder(p, q),
        };
        ctx.neg = (0..q).map(|x| ctx.digitwise(x, 0, |a, _| (p - a) % p)).collect();
        ctx.primitive = ctx.find_primitive();
        ctx.build_log_tables();
        Ok(ctx)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Comma-separated modulus coefficients, constant term first.
    pub fn modulus_string(&self) -> String {
        join_coeffs(&self.modulus)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q
    }

    pub fn nonzero(&self) -> std::ops::Range<u32> {
        1..self.q
    }

    // ----- raw index arithmetic -----

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.adder {
            Adder::Xor => a ^ b,
            Adder::Chunked {
                chunk,
                table,
                single,
            } => {
                if *single {
                    table[(a * chunk + b) as usize] as u32
                } else {
                    chunked_add(a, b, *chunk, table)
                }
            }
        }
    }

    /// How the DDT inner loop should add indices.
    pub(crate) fn add_kind(&self) -> AddKind<'_> {
        match &self.adder {
            Adder::Xor => AddKind::Xor,
            Adder::Chunked {
                chunk,
                table,
                single: true,
            } => AddKind::Table {
                chunk: *chunk,
                table,
            },
            Adder::Chunked { .. } => AddKind::General,
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let l = self.log[a as usize];
            Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
        }
    }

    /// a^{q-2}: the inverse with 0 mapped to 0.
    #[inline]
    pub fn inv_or_zero(&self, a: u32) -> u32 {
        self.inv(a).unwrap_or(0)
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// x^e, with 0^0 = 1.
    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if x == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[x as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// w^k for the fixed primitive element w.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete log base the primitive element; `None` for zero.
    pub fn log(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    /// The embedding F_p -> F_q of an integer residue.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// x^{p^e}; `e` is taken modulo m.
    pub fn frobenius(&self, x: u32, e: i64) -> u32 {
        let e = e.rem_euclid(self.m as i64) as u32;
        if x == 0 || e == 0 {
            return x;
        }
        let order = (self.q - 1) as u64;
        let mut k = self.log[x as usize] as u64;
        for _ in 0..e {
            k = k * self.p as u64 % order;
        }
        self.exp[k as usize]
    }

    /// Relative trace Tr^m_l(x) = sum_{i < m/l} x^{p^{l i}}.
    pub fn trace_rel(&self, l: u32, x: u32) -> Result<u32> {
        if l == 0 || !self.m.is_multiple_of(l) {
            return Err(Error::NonDivisorSubfield { l, m: self.m });
        }
        Ok(self.trace_unchecked(l, x))
    }

    fn trace_unchecked(&self, l: u32, x: u32) -> u32 {
        let mut acc = 0;
        let mut term = x;
        for _ in 0..self.m / l {
            acc = self.add(acc, term);
            term = self.frobenius(term, l as i64);
        }
        acc
    }

    /// Absolute trace onto F_p, returned as an integer in [0, p).
    pub fn trace(&self, x: u32) -> u32 {
        self.trace_unchecked(1, x)
    }

    pub fn is_square(&self, x: u32) -> SquareClass {
        if x == 0 {
            SquareClass::Zero
        } else if self.p == 2 || self.log[x as usize].is_multiple_of(2) {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        }
    }

    /// Whether x lies in the subfield F_{p^d}.
    pub fn in_subfield(&self, x: u32, d: u32) -> Result<bool> {
        if d == 0 || !self.m.is_multiple_of(d) {
            return Err(Error::NonDivisorSubfield { l: d, m: self.m });
        }
        Ok(self.frobenius(x, d as i64) == x)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: u32) -> Option<u32> {
        let l = self.log(x)?;
        let n = self.q - 1;
        Some(n / gcd(n, l))
    }

    // ----- checked element API -----

    pub fn elem(&self, index: u32) -> Result<FieldElem> {
        if index >= self.q {
            return Err(Error::ElementOutOfRange {
                index: index as u64,
                q: self.q,
            });
        }
        Ok(FieldElem {
            index,
            ctx_id: self.id,
        })
    }

    fn own(&self, e: FieldElem) -> Result<u32> {
        if e.ctx_id != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(e.index)
    }

    /// Context-checked arithmetic on tagged elements.
    pub fn arith(&self, op: ArithOp, operands: &[FieldElem]) -> Result<FieldElem> {
        let idx: Vec<u32> = operands
            .iter()
            .map(|&e| self.own(e))
            .collect::<Result<_>>()?;
        let arity = match op {
            ArithOp::Add | ArithOp::Sub | ArithOp::Mul => 2,
            ArithOp::Neg | ArithOp::Inv | ArithOp::Pow(_) => 1,
        };
        if idx.len() != arity {
            return Err(Error::InvalidParams(format!(
                "{op:?} takes {arity} operand(s), got {}",
                idx.len()
            )));
        }
        let r = match op {
            ArithOp::Add => self.add(idx[0], idx[1]),
            ArithOp::Sub => self.sub(idx[0], idx[1]),
            ArithOp::Mul => self.mul(idx[0], idx[1]),
            ArithOp::Neg => self.neg(idx[0]),
            ArithOp::Inv => self.inv(idx[0]).ok_or(Error::DivisionByZero)?,
            ArithOp::Pow(e) => self.pow(idx[0], e),
        };
        self.elem(r)
    }

    // ----- printing and parsing -----

    /// "0" or "w^k" in log form; `symbol` names the primitive element.
    pub fn fmt_elem(&self, x: u32, symbol: char) -> String {
        match self.log(x) {
            None => "0".to_string(),
            Some(k) => format!("{symbol}^{k}"),
        }
    }

    /// Parses "0", an integer residue such as "2" or "-1", or a power of the
    /// primitive element written `w`, `w^k` (any of `symbols`).
    pub fn parse_elem(&self, s: &str, symbols: &[char]) -> Result<u32> {
        let s = s.trim();
        if let Some(first) = s.chars().next() {
            if symbols.contains(&first) {
                let rest = &s[first.len_utf8()..];
                if rest.is_empty() {
                    return Ok(self.primitive);
                }
                let k = rest
                    .strip_prefix('^')
                    .and_then(|k| k.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("bad element `{s}`")))?;
                return Ok(self.exp(k));
            }
        }
        s.parse::<i64>()
            .map(|n| self.from_int(n))
            .map_err(|_| Error::parse(0, format!("bad element `{s}`")))
    }

    // ----- construction helpers -----

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn digits(&self, mut x: u32) -> Vec<u64> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d as u64
            })
            .collect()
    }

    /// Schoolbook product reduced modulo the modulus; only used before the
    /// log tables exist.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * m];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // x^m = -sum_{i<m} f_i x^i
            for i in 0..m {
                let sub = c * self.modulus[i] as u64 % p;
                let pos = deg - m + i;
                prod[pos] = (prod[pos] + p - sub) % p;
            }
        }
        prod[..m].iter().rev().fold(0u32, |acc, &d| acc * self.p + d as u32)
    }

    fn slow_pow(&self, x: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut b = x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(r, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        r
    }

    fn find_primitive(&self) -> u32 {
        let n = (self.q - 1) as u64;
        let factors = prime_factors(n);
        (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp[..n].iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, self.primitive);
        }
        exp.copy_within(..n, n);
        self.exp = exp;
        self.log = log;
    }
}

fn build_adder(p: u32, q: u32) -> Adder {
    if p == 2 {
        return Adder::Xor;
    }
    let mut chunk = 1u32;
    while chunk * p <= ADD_CHUNK_LIMIT && chunk < q {
        chunk *= p;
    }
    let digits_per_chunk = chunk.ilog(p);
    let mut table = vec![0u16; (chunk * chunk) as usize];
    for a in 0..chunk {
        for b in 0..chunk {
            let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
            for _ in 0..digits_per_chunk {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            table[(a * chunk + b) as usize] = out as u16;
        }
    }
    Adder::Chunked {
        chunk,
        table,
        single: chunk >= q,
    }
}

fn chunked_add(mut a: u32, mut b: u32, chunk: u32, table: &[u16]) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        let s = table[((a % chunk) * chunk + b % chunk) as usize] as u32;
        out += s * place;
        a /= chunk;
        b /= chunk;
        place *= chunk;
    }
    out
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn join_coeffs(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses a modulus written as comma-separated coefficients, constant term first.
pub fn parse_modulus(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .enumerate()
        .map(|(i, c)| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(i, format!("bad coefficient `{}`", c.trim())))
        })
        .collect()
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod [{}]", self.p, self.m, self.modulus_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_is_trivial() {
        let f = make_field(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.modulus(), &[1, 1]);
        assert_eq!(f.primitive(), 1);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn f16_default_modulus_and_reduction() {
        let f = make_field(2, 4, None).unwrap();
        assert_eq!(f.modulus_string(), "1,1,0,0,1");
        // w = x is primitive for x^4+x+1; index 2 encodes x
        assert_eq!(f.primitive(), 2);
        // w^4 = w + 1
        assert_eq!(f.pow(2, 4), 0b0011);
        assert_eq!(f.exp(4), 3);
    }

    #[test]
    fn f27_primitive_order() {
        let f = make_field(3, 3, None).unwrap();
        assert_eq!(f.order(), 27);
        let w = f.primitive();
        let mut x = w;
        let mut order = 1;
        while x != 1 {
            x = f.mul(x, w);
            order += 1;
        }
        assert_eq!(order, 26);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, None), Err(Error::CompositeCharacteristic(4)));
        assert_eq!(make_field(2, 17, None), Err(Error::FieldTooLarge { p: 2, m: 17 }));
        assert_eq!(make_field(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(2)));
        assert!(matches!(make_field(2, 2, Some(&[1, 1, 0])), Err(Error::InvalidModulus(_))));
        assert!(make_field(2, 16, None).is_ok());
    }

    #[test]
    fn deterministic_default() {
        let a = make_field(3, 4, None).unwrap();
        let b = make_field(3, 4, None).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.id(), b.id());
    }

    #[test]
    fn trace_examples() {
        let f4 = make_field(2, 2, None).unwrap();
        let w = f4.primitive();
        assert_eq!(f4.trace_rel(1, w).unwrap(), 1);
        assert_eq!(f4.trace_rel(2, w).unwrap(), w);
        assert_eq!(f4.trace_rel(1, 0).unwrap(), 0);
        assert!(matches!(
            f4.trace_rel(3, w),
            Err(Error::NonDivisorSubfield { .. })
        ));
        assert_eq!(f4.frobenius(w, 1), f4.mul(w, w));
        assert_eq!(f4.frobenius(w, 2), w);
    }

    #[test]
    fn square_classes() {
        let f3 = make_field(3, 1, None).unwrap();
        assert_eq!(f3.is_square(0), SquareClass::Zero);
        assert_eq!(f3.is_square(2), SquareClass::NonSquare);
        assert_eq!(f3.is_square(1), SquareClass::Square);
        let f27 = make_field(3, 3, None).unwrap();
        assert_eq!(f27.is_square(f27.primitive()), SquareClass::NonSquare);
        let squares = f27.nonzero().filter(|&x| f27.is_square(x) == SquareClass::Square).count();
        assert_eq!(squares, 13);
    }

    #[test]
    fn subfield_membership() {
        let f = make_field(2, 4, None).unwrap();
        let w5 = f.exp(5);
        assert!(f.in_subfield(w5, 2).unwrap());
        assert!(!f.in_subfield(f.primitive(), 2).unwrap());
        assert!(f.in_subfield(0, 2).unwrap() && f.in_subfield(1, 1).unwrap());
        assert!(f.in_subfield(3, 3).is_err());
    }

    #[test]
    fn checked_api_rejects_foreign_elements() {
        let a = make_field(2, 3, None).unwrap();
        let b = make_field(2, 3, None).unwrap();
        let x = a.elem(3).unwrap();
        let y = b.elem(3).unwrap();
        assert_eq!(a.arith(ArithOp::Add, &[x, y]), Err(Error::ContextMismatch));
        assert_eq!(a.arith(ArithOp::Add, &[x, x]).unwrap().index(), 0);
        let zero = a.elem(0).unwrap();
        assert_eq!(a.arith(ArithOp::Inv, &[zero]), Err(Error::DivisionByZero));
        assert_eq!(a.arith(ArithOp::Pow(0), &[zero]).unwrap().index(), 1);
        assert!(a.elem(8).is_err());
    }

    #[test]
    fn print_and_parse() {
        let f = make_field(3, 3, None).unwrap();
        assert_eq!(f.fmt_elem(0, 'w'), "0");
        assert_eq!(f.fmt_elem(f.exp(5), 'w'), "w^5");
        assert_eq!(f.parse_elem("w^5", &['w']).unwrap(), f.exp(5));
        assert_eq!(f.parse_elem("w", &['w']).unwrap(), f.primitive());
        assert_eq!(f.parse_elem("-1", &['w']).unwrap(), 2);
        assert_eq!(f.parse_elem("-1", &['w']).unwrap(), f.exp(13));
        assert!(f.parse_elem("v^2", &['w']).is_err());
        assert_eq!(parse_modulus("1,1,0,0,1").unwrap(), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn odd_addition_multi_chunk() {
        // 3^10 needs two addition chunks
        let f = make_field(3, 10, None).unwrap();
        for &(a, b) in &[(59048u32, 1u32), (12345, 54321), (729, 728)] {
            let expect = f.digitwise(a, b, |x, y| (x + y) % 3);
            assert_eq!(f.add(a, b), expect);
            assert_eq!(f.sub(f.add(a, b), b), a);
        }
    }
}
