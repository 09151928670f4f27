//! F_{q^2} modelled as pairs over F_q through the basis {1, beta}, where beta
//! is a root of x^2 + x + t.
//!
//! Pairs (x, y) are addressed by the index `x + q*y`. Its base-p digits are the
//! digits of x followed by those of y, so adding pair indices digitwise (for
//! instance through the extension field's `add`) adds pairs componentwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElem, SquareClass};

/// Which of the two conjugate roots of x^2 + x + t to use as beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaChoice {
    #[default]
    Smaller,
    Larger,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BivElem {
    pub x: FieldElem,
    pub y: FieldElem,
}

#[derive(Debug, Clone)]
pub struct QuadExtCtx {
    base: Arc<FieldCtx>,
    ext: Arc<FieldCtx>,
    t: u32,
    beta: u32,
    beta_bar: u32,
    /// base index -> ext index
    embed: Vec<u32>,
    /// ext index -> base index, or `u32::MAX` outside the subfield
    project: Vec<u32>,
    /// pair index -> ext index of x + beta*y
    phi: Vec<u32>,
    phi_inv: Vec<u32>,
}

const OUTSIDE: u32 = u32::MAX;

/// Whether `t` makes x^2+x+t irreducible over the base field.
pub fn t_is_valid(base: &FieldCtx, t: u32) -> bool {
    if base.is_even() {
        base.trace(t) == 1
    } else {
        let four_t = base.mul(base.from_int(4), t);
        base.is_square(base.sub(1, four_t)) == SquareClass::NonSquare
    }
}

/// Returns `override_t` if valid, otherwise the first power w^j (j >= 1) of the
/// primitive element that is valid.
pub fn select_t(base: &FieldCtx, override_t: Option<u32>) -> Result<u32> {
    match override_t {
        Some(t) if t < base.order() && t_is_valid(base, t) => Ok(t),
        Some(t) => Err(Error::InvalidT(base.fmt_elem(t, 'w'))),
        None => valid_t_candidates(base)
            .next()
            .ok_or_else(|| Error::InvalidT("no valid t".into())),
    }
}

/// Valid t values in the order w^1, w^2, ... (each listed once).
pub fn valid_t_candidates(base: &FieldCtx) -> impl Iterator<Item = u32> + '_ {
    let n = base.order() as u64 - 1;
    (1..=n.max(1))
        .map(move |j| base.exp(j))
        .filter(move |&t| t_is_valid(base, t))
}

pub fn make_quadext(base: Arc<FieldCtx>, t: u32) -> Result<QuadExtCtx> {
    QuadExtCtx::new(base, t, BetaChoice::Smaller)
}

impl QuadExtCtx {
    pub fn new(base: Arc<FieldCtx>, t: u32, choice: BetaChoice) -> Result<Self> {
        if t >= base.order() || !t_is_valid(&base, t) {
            return Err(Error::InvalidT(base.fmt_elem(t.min(base.order() - 1), 'w')));
        }
        let ext = Arc::new(FieldCtx::new(base.characteristic(), 2 * base.degree(), None)?);
        let q = base.order();
        let qq = ext.order();

        // Embedding: x -> r for the smallest root r of the base modulus in the
        // extension, applied to each element's polynomial representative.
        let root = ext
            .elements()
            .find(|&e| eval_prime_poly(&ext, base.modulus(), e) == 0)
            .ok_or(Error::NoRootFound)?;
        let powers: Vec<u32> = (0..base.degree() as u64).map(|i| ext.pow(root, i)).collect();
        let p = base.characteristic();
        let mut embed = vec![0u32; q as usize];
        let mut project = vec![OUTSIDE; qq as usize];
        for b in 0..q {
            let mut digits = b;
            let mut e = 0;
            for &rp in &powers {
                e = ext.add(e, ext.mul(ext.from_int((digits % p) as i64), rp));
                digits /= p;
            }
            embed[b as usize] = e;
            project[e as usize] = b;
        }

        let et = embed[t as usize];
        let mut roots = ext.elements().filter(|&z| {
            let v = ext.add(ext.add(ext.mul(z, z), z), et);
            v == 0
        });
        let r1 = roots.next().ok_or(Error::NoRootFound)?;
        let r2 = roots.next().ok_or(Error::NoRootFound)?;
        let beta = match choice {
            BetaChoice::Smaller => r1,
            BetaChoice::Larger => r2,
        };
        if project[beta as usize] != OUTSIDE {
            return Err(Error::InvalidT(base.fmt_elem(t, 'w')));
        }
        let beta_bar = ext.pow(beta, q as u64);

        let mut ctx = QuadExtCtx {
            base,
            ext,
            t,
            beta,
            beta_bar,
            embed,
            project,
            phi: Vec::new(),
            phi_inv: Vec::new(),
        };
        ctx.phi = (0..qq)
            .map(|pair| {
                let (x, y) = ctx.unpair(pair);
                ctx.phi_formula(x, y)
            })
            .collect();
        let mut phi_inv = vec![OUTSIDE; qq as usize];
        for z in 0..qq {
            let pair = ctx.phi_inv_formula(z);
            phi_inv[z as usize] = pair;
        }
        ctx.phi_inv = phi_inv;
        Ok(ctx)
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn beta(&self) -> u32 {
        self.beta
    }

    pub fn beta_bar(&self) -> u32 {
        self.beta_bar
    }

    /// q, the order of the base field.
    pub fn q(&self) -> u32 {
        self.base.order()
    }

    #[inline]
    pub fn pair(&self, x: u32, y: u32) -> u32 {
        x + self.base.order() * y
    }

    #[inline]
    pub fn unpair(&self, pair: u32) -> (u32, u32) {
        let q = self.base.order();
        (pair % q, pair / q)
    }

    #[inline]
    pub fn embed(&self, x: u32) -> u32 {
        self.embed[x as usize]
    }

    /// The base-field element equal to `z`, if `z` lies in the embedded subfield.
    pub fn project(&self, z: u32) -> Option<u32> {
        let b = self.project[z as usize];
        (b != OUTSIDE).then_some(b)
    }

    /// Relative trace Tr^{2m}_m, i.e. z + z^q, as a base-field element.
    #[inline]
    pub fn trace_to_base(&self, z: u32) -> u32 {
        let s = self.ext.add(z, self.conj(z));
        self.project[s as usize]
    }

    /// Norm z^{q+1} as a base-field element.
    #[inline]
    pub fn norm_to_base(&self, z: u32) -> u32 {
        let n = self.ext.mul(z, self.conj(z));
        self.project[n as usize]
    }

    /// Galois conjugate z^q.
    #[inline]
    pub fn conj(&self, z: u32) -> u32 {
        self.ext.frobenius(z, self.base.degree() as i64)
    }

    /// phi(x, y) = x + beta*y, read from the precomputed table.
    #[inline]
    pub fn phi(&self, pair: u32) -> u32 {
        self.phi[pair as usize]
    }

    #[inline]
    pub fn phi_inv(&self, z: u32) -> u32 {
        self.phi_inv[z as usize]
    }

    fn phi_formula(&self, x: u32, y: u32) -> u32 {
        let e = &self.ext;
        e.add(self.embed(x), e.mul(self.beta, self.embed(y)))
    }

    /// x = (beta_bar z - beta z_bar)/(beta_bar - beta), y = (z - z_bar)/(beta - beta_bar).
    fn phi_inv_formula(&self, z: u32) -> u32 {
        let e = &self.ext;
        let zb = self.conj(z);
        let d = e.sub(self.beta_bar, self.beta);
        let x = e
            .div(e.sub(e.mul(self.beta_bar, z), e.mul(self.beta, zb)), d)
            .expect("beta is not in the base field");
        let y = e
            .div(e.sub(z, zb), e.neg(d))
            .expect("beta is not in the base field");
        let x = self.project(x).expect("x coordinate lies in F_q");
        let y = self.project(y).expect("y coordinate lies in F_q");
        self.pair(x, y)
    }

    /// (x1x2 - t y1y2, x1y2 + x2y1 - y1y2).
    #[inline]
    pub fn biv_mul(&self, u: u32, v: u32) -> u32 {
        let b = &self.base;
        let (x1, y1) = self.unpair(u);
        let (x2, y2) = self.unpair(v);
        let yy = b.mul(y1, y2);
        let x = b.sub(b.mul(x1, x2), b.mul(self.t, yy));
        let y = b.sub(b.add(b.mul(x1, y2), b.mul(x2, y1)), yy);
        self.pair(x, y)
    }

    #[inline]
    pub fn biv_add(&self, u: u32, v: u32) -> u32 {
        // digitwise addition in the extension is componentwise addition of pairs
        self.ext.add(u, v)
    }

    #[inline]
    pub fn biv_sub(&self, u: u32, v: u32) -> u32 {
        self.ext.sub(u, v)
    }

    /// t c2^2 + (1-c1) c2 + (1-c1)^2.
    pub fn nonvanishing_value(&self, c1: u32, c2: u32) -> u32 {
        let b = &self.base;
        let u = b.sub(1, c1);
        b.add(b.add(b.mul(self.t, b.mul(c2, c2)), b.mul(u, c2)), b.mul(u, u))
    }

    /// Whether t c2^2 + (1-c1) c2 + (1-c1)^2 is nonzero.
    pub fn check_nonvanishing(&self, c1: u32, c2: u32) -> bool {
        self.nonvanishing_value(c1, c2) != 0
    }

    // ----- checked wrappers over tagged elements -----

    pub fn biv(&self, x: FieldElem, y: FieldElem) -> Result<BivElem> {
        if x.ctx_id() != self.base.id() || y.ctx_id() != self.base.id() {
            return Err(Error::ContextMismatch);
        }
        Ok(BivElem { x, y })
    }

    fn biv_index(&self, v: BivElem) -> Result<u32> {
        let v = self.biv(v.x, v.y)?;
        Ok(self.pair(v.x.index(), v.y.index()))
    }

    fn biv_from_index(&self, pair: u32) -> BivElem {
        let (x, y) = self.unpair(pair);
        BivElem {
            x: self.base.elem(x).expect("coordinate in range"),
            y: self.base.elem(y).expect("coordinate in range"),
        }
    }

    pub fn phi_elem(&self, v: BivElem) -> Result<FieldElem> {
        let pair = self.biv_index(v)?;
        self.ext.elem(self.phi(pair))
    }

    pub fn phi_inv_elem(&self, z: FieldElem) -> Result<BivElem> {
        if z.ctx_id() != self.ext.id() {
            return Err(Error::ContextMismatch);
        }
        Ok(self.biv_from_index(self.phi_inv(z.index())))
    }

    pub fn biv_mul_elem(&self, u: BivElem, v: BivElem) -> Result<BivElem> {
        let r = self.biv_mul(self.biv_index(u)?, self.biv_index(v)?);
        Ok(self.biv_from_index(r))
    }

    /// "(x,y)" with coordinates in base-field log notation.
    pub fn fmt_pair(&self, pair: u32) -> String {
        let (x, y) = self.unpair(pair);
        format!("({},{})", self.base.fmt_elem(x, 'w'), self.base.fmt_elem(y, 'w'))
    }

    pub fn fmt_ext(&self, z: u32) -> String {
        self.ext.fmt_elem(z, 'W')
    }
}

impl fmt::Display for QuadExtCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} over {}, t={}, beta={}",
            self.ext,
            self.base,
            self.base.fmt_elem(self.t, 'w'),
            self.fmt_ext(self.beta)
        )
    }
}

/// Evaluates a polynomial with F_p coefficients (constant first) at `x`.
fn eval_prime_poly(field: &FieldCtx, coeffs: &[u32], x: u32) -> u32 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}
