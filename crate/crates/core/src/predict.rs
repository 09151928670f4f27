//! Closed-form predictions of c-differential uniformity per construction
//! family, and their comparison with brute force.

use std::fmt;

use rayon::prelude::*;

use crate::ddt::{univariate_uniformity, CDdtReport, CParam, CSet, Class, Ddt};
use crate::error::{Error, Result};
use crate::funcs::{linpoly_props, Domain, ExtToBase, FuncSpec, InnerFunc, LinearizedPoly};
use crate::gf::{gcd, FieldCtx};
use crate::oracles::inverse_c_uniformity_predict;
use crate::quadext::QuadExtCtx;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredKind {
    Exact(u32),
    UpperBound(u32),
    /// PcN or APcN
    Class(Class),
}

impl fmt::Display for PredKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredKind::Exact(d) => write!(f, "={d}"),
            PredKind::UpperBound(d) => write!(f, "<={d}"),
            PredKind::Class(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub kind: PredKind,
    /// the statement applied, e.g. "inverse-even: trace product zero"
    pub rule: String,
    /// intermediate quantities in evaluation order
    pub trace: Vec<(String, String)>,
}

impl Prediction {
    fn new(kind: PredKind, rule: impl Into<String>, trace: Vec<(String, String)>) -> Self {
        Prediction {
            kind,
            rule: rule.into(),
            trace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbVariant {
    Generic,
    /// same as generic with signs read in characteristic 2
    EvenInverse,
    /// A = (c2-c1)(1-c1+tc2) - tc2(1-c1), B = 1-c1+tc2. Kept for reference;
    /// A/B may equal 1 here.
    OddInverse,
}

/// (A, B) with A = (c1-c2)(1-c1+tc2) + tc2(1-c1) and B = 1-c1+tc2, or the
/// odd-inverse variant of A.
pub fn compute_ab(qe: &QuadExtCtx, c1: u32, c2: u32, variant: AbVariant) -> Result<(u32, u32)> {
    if (c1, c2) == (1, 0) {
        return Err(Error::IdentityC);
    }
    let b = qe.base();
    let one_c1 = b.sub(1, c1);
    let tc2 = b.mul(qe.t(), c2);
    let bb = b.add(one_c1, tc2);
    let generic = b.add(b.mul(b.sub(c1, c2), bb), b.mul(tc2, one_c1));
    let a = match variant {
        AbVariant::Generic | AbVariant::EvenInverse => generic,
        AbVariant::OddInverse => b.sub(
            b.mul(b.sub(c2, c1), bb),
            b.mul(tc2, one_c1),
        ),
    };
    Ok((a, bb))
}

struct Tr<'a> {
    f: &'a FieldCtx,
    items: Vec<(String, String)>,
}

impl<'a> Tr<'a> {
    fn new(f: &'a FieldCtx) -> Self {
        Tr { f, items: Vec::new() }
    }

    fn el(&mut self, k: &str, v: u32) {
        self.items.push((k.into(), self.f.fmt_elem(v, 'w')));
    }

    fn val(&mut self, k: &str, v: impl ToString) {
        self.items.push((k.into(), v.to_string()));
    }

    fn done(self, kind: PredKind, rule: &str) -> Result<Prediction> {
        Ok(Prediction::new(kind, rule, self.items))
    }
}

fn not_covered(msg: impl Into<String>) -> Error {
    Error::NotCovered(msg.into())
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn kernel_size(l: &LinearizedPoly, f: &FieldCtx) -> u32 {
    linpoly_props(l, f).kernel_size
}

fn expect_biv(c: CParam) -> Result<(u32, u32)> {
    match c {
        CParam::Biv { c1, c2 } => Ok((c1, c2)),
        CParam::Uni(_) => Err(Error::DomainMismatch),
    }
}

/// Univariate c-uniformity of an inner function over F_q.
fn inner_uniformity(f: &FieldCtx, h: &InnerFunc, c: u32) -> Result<u32> {
    Ok(univariate_uniformity(f, &h.table(f), c)?.uniformity)
}

/// The prediction the catalog's statements make for `spec` at `c`.
pub fn predict(spec: &FuncSpec, qe: &QuadExtCtx, c: CParam) -> Result<Prediction> {
    spec.validate(qe)?;
    let (c1, c2) = expect_biv(c)?;
    if (c1, c2) == (1, 0) {
        return Err(Error::IdentityC);
    }
    let q = qe.q();
    if c1 >= q || c2 >= q {
        return Err(Error::ElementOutOfRange {
            index: c1.max(c2) as u64,
            q,
        });
    }
    match spec {
        FuncSpec::GenLinearH { l, h } => predict_genlin_h(qe, l, h, c1, c2),
        FuncSpec::GenLinearGold { l, k, alpha } => predict_genlin_gold(qe, l, *k, *alpha, c1, c2),
        FuncSpec::SumProd { i, j, alpha } => predict_sumprod(qe, *i, *j, *alpha, c1, c2),
        FuncSpec::GoldPair { k, gamma, l } => predict_goldpair(qe, *k, *gamma, l, c1, c2),
        FuncSpec::ProdLin { gammas, l } => predict_prodlin(qe, gammas, l, c1, c2),
        FuncSpec::SplitGH { g, l1, l2, .. } => predict_splitgh(qe, g, l1, l2, c1, c2),
        FuncSpec::TraceInverse { .. } => predict_traceinv(qe, c1, c2),
        FuncSpec::TraceFromExt { h } => predict_tracext(qe, h, c1, c2),
        FuncSpec::NormFirst { h } => predict_normfirst(qe, h, c1, c2),
        other => Err(not_covered(format!("no statement for {}", other.family_name()))),
    }
}

fn predict_genlin_h(qe: &QuadExtCtx, l: &LinearizedPoly, h: &InnerFunc, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    let mut tr = Tr::new(b);
    let s = kernel_size(l, b);
    tr.val("s", s);
    if !h.is_permutation(b) {
        return predict_lemma_p1(qe, &InnerFunc::Linearized(l.clone()), h, c1, c2, tr);
    }
    let inverse = *h == InnerFunc::Inverse && s == 1;
    // The odd-inverse A disagrees with brute force and can give A/B = 1, so
    // every branch evaluates h at the generic ratio.
    let (a, bb) = compute_ab(qe, c1, c2, AbVariant::Generic)?;
    tr.el("A", a);
    tr.el("B", bb);
    if a == 0 || bb == 0 {
        return if s == 1 {
            tr.done(PredKind::Class(Class::PcN), "linear-h: AB=0")
        } else {
            tr.done(PredKind::Exact(s), "linear-h s-to-1: AB=0")
        };
    }
    let ratio = b.div(a, bb).expect("B is nonzero");
    tr.el("A/B", ratio);
    if inverse && b.is_even() {
        let t1 = b.trace(ratio);
        let t2 = b.trace(b.inv_or_zero(ratio));
        tr.val("Tr(A/B)", t1);
        tr.val("Tr(B/A)", t2);
        return if t1 * t2 == 0 {
            tr.done(PredKind::Exact(3), "inverse-even: trace product zero")
        } else {
            tr.done(PredKind::Class(Class::APcN), "inverse-even: both traces one")
        };
    }
    if inverse {
        let delta = inverse_c_uniformity_predict(b, ratio)?;
        tr.val("delta_h(A/B)", delta);
        return if delta == 1 {
            tr.done(PredKind::Class(Class::PcN), "inverse-odd: inverse is linear")
        } else if delta == 2 {
            tr.done(PredKind::Class(Class::APcN), "inverse-odd: special or NSQ conditions")
        } else {
            tr.done(PredKind::Exact(delta), "inverse-odd")
        };
    }
    let delta = inner_uniformity(b, h, ratio)?;
    tr.val("delta_h(A/B)", delta);
    if s == 1 {
        tr.done(PredKind::Exact(delta), "linear-h: uniformity of h at A/B")
    } else {
        tr.done(PredKind::UpperBound(delta * s), "linear-h s-to-1: bound delta*s")
    }
}

/// F = (g(x), h(y) + g(x)): bounded by the product of the uniformities of g
/// at c1 - t c2 and of h at c1 - (1-t) c2, with equality when c2 = 0.
fn predict_lemma_p1(
    qe: &QuadExtCtx,
    g: &InnerFunc,
    h: &InnerFunc,
    c1: u32,
    c2: u32,
    mut tr: Tr,
) -> Result<Prediction> {
    let b = qe.base();
    let t = qe.t();
    let cg = b.sub(c1, b.mul(t, c2));
    let ch = b.sub(c1, b.mul(b.sub(1, t), c2));
    let d1 = inner_uniformity(b, g, cg)?;
    let d2 = inner_uniformity(b, h, ch)?;
    tr.el("c_g", cg);
    tr.el("c_h", ch);
    tr.val("delta1", d1);
    tr.val("delta2", d2);
    if c2 == 0 {
        tr.done(PredKind::Exact(d1 * d2), "product: equality at c2=0")
    } else {
        tr.done(PredKind::UpperBound(d1 * d2), "product: bound delta1*delta2")
    }
}

fn predict_genlin_gold(qe: &QuadExtCtx, l: &LinearizedPoly, k: u32, alpha: u32, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    let mut tr = Tr::new(b);
    if kernel_size(l, b) != 1 {
        return Err(not_covered("L is not a permutation"));
    }
    let (p, m) = (b.characteristic() as u64, b.degree());
    let ratio = b
        .div(b.add(b.sub(1, c1), b.mul(qe.t(), c2)), qe.nonvanishing_value(c1, c2))
        .expect("nonvanishing for c != (1,0)");
    tr.el("ratio", ratio);
    if m != 2 * k {
        let g = gcd(m, k);
        let inside = b.in_subfield(ratio, g)?;
        tr.val("gcd(m,k)", g);
        tr.val("ratio in subfield", inside);
        if alpha == 0 && inside {
            let d = gcd_u64(p.pow(k) + 1, p.pow(m) - 1) as u32;
            tr.val("gcd(p^k+1,p^m-1)", d);
            tr.done(exact_or_class(d), "linear-gold m!=2k: alpha=0, ratio in subfield")
        } else {
            tr.done(exact_or_class(p.pow(g) as u32 + 1), "linear-gold m!=2k: otherwise")
        }
    } else {
        let inside = b.in_subfield(ratio, k)?;
        tr.val("ratio in subfield", inside);
        if alpha != 0 && inside {
            tr.done(PredKind::Class(Class::APcN), "linear-gold m=2k: alpha!=0, ratio in subfield")
        } else {
            tr.done(exact_or_class(p.pow(k) as u32 + 1), "linear-gold m=2k: otherwise")
        }
    }
}

fn exact_or_class(d: u32) -> PredKind {
    match d {
        1 => PredKind::Class(Class::PcN),
        2 => PredKind::Class(Class::APcN),
        d => PredKind::Exact(d),
    }
}

/// c2 != 0 and Tr((1-c1)/(t c2)) = Tr((1-c1+c2)(c1-1)/(t c2) - c2) = 0.
pub fn sumprod_set_a(qe: &QuadExtCtx, c1: u32, c2: u32) -> bool {
    if c2 == 0 {
        return false;
    }
    let b = qe.base();
    let tc2 = b.mul(qe.t(), c2);
    let one_c1 = b.sub(1, c1);
    let u = b.div(one_c1, tc2).expect("t c2 is nonzero");
    let v = b.sub(
        b.div(b.mul(b.add(one_c1, c2), b.sub(c1, 1)), tc2).expect("t c2 is nonzero"),
        c2,
    );
    b.trace(u) == 0 && b.trace(v) == 0
}

fn predict_sumprod(qe: &QuadExtCtx, i: u32, j: u32, alpha: u32, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    let mut tr = Tr::new(b);
    let (p, m) = (b.characteristic(), b.degree());
    let q = b.order();
    let (i, j) = (i % m, j % m);
    let minus_one = b.neg(1);
    let in_a = sumprod_set_a(qe, c1, c2);
    tr.val("c in A", in_a);
    if alpha == minus_one && (i, j) == (0, 1 % m) {
        if c2 == 0 {
            tr.done(PredKind::UpperBound(p + 1), "sum-product (0,1): c2=0")
        } else if in_a {
            tr.done(PredKind::UpperBound(q + p - 1), "sum-product (0,1): c in A")
        } else {
            tr.done(PredKind::UpperBound(2 * p), "sum-product (0,1): otherwise")
        }
    } else if alpha == minus_one && (i, j) == (0, m - 1) {
        if in_a {
            tr.done(PredKind::Exact(q + p - 1), "sum-product (0,m-1): c in A")
        } else {
            tr.done(PredKind::UpperBound(2 * p), "sum-product (0,m-1): otherwise")
        }
    } else if alpha != minus_one && (i == j) && (i == 1 % m || i == m - 1) {
        if c2 == 0 {
            tr.done(PredKind::UpperBound(p + 1), "sum-product (i,i): c2=0")
        } else {
            tr.done(PredKind::UpperBound(p * p + p), "sum-product (i,i): otherwise")
        }
    } else {
        Err(not_covered("sum-product parameters outside the stated cases"))
    }
}

fn require_cq0(c1: u32, c2: u32) -> Result<()> {
    if c2 != 0 {
        return Err(not_covered("statement covers c = (c1, 0) only"));
    }
    debug_assert_ne!(c1, 1);
    Ok(())
}

fn predict_goldpair(qe: &QuadExtCtx, k: u32, gamma: u32, l: &LinearizedPoly, c1: u32, c2: u32) -> Result<Prediction> {
    require_cq0(c1, c2)?;
    let b = qe.base();
    if kernel_size(l, b) != 1 {
        return Err(not_covered("L is not a permutation"));
    }
    let mut tr = Tr::new(b);
    let (p, m) = (b.characteristic() as u64, b.degree());
    let g = gcd(m, k);
    let d = gcd_u64(p.pow(k) + 1, p.pow(m) - 1) as u32;
    let inside = b.in_subfield(c1, g)? && b.in_subfield(gamma, g)?;
    tr.val("gcd(m,k)", g);
    tr.val("d", d);
    tr.val("c1, gamma in subfield", inside);
    if inside {
        tr.done(exact_or_class(d), "gold-pair: c1, gamma in subfield")
    } else {
        tr.done(exact_or_class(p.pow(g) as u32 + 1), "gold-pair: otherwise")
    }
}

fn predict_prodlin(qe: &QuadExtCtx, gammas: &[(u32, u32)], l: &LinearizedPoly, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    if kernel_size(l, b) != 1 {
        return Err(not_covered("L is not a permutation"));
    }
    let mut tr = Tr::new(b);
    if (c1, c2) == (0, 0) {
        return tr.done(PredKind::Class(Class::APcN), "product-linear: c=0");
    }
    require_cq0(c1, c2)?;
    let m = b.degree();
    let d = gammas
        .iter()
        .filter(|&&(_, g)| g != 0)
        .fold(m, |acc, &(i, _)| gcd(acc, i % m));
    tr.val("d", d);
    if b.in_subfield(c1, d)? {
        tr.done(PredKind::Class(Class::APcN), "product-linear: c1 in subfield")
    } else {
        Err(not_covered("c1 outside F_{p^d}"))
    }
}

fn predict_splitgh(qe: &QuadExtCtx, g: &InnerFunc, l1: &LinearizedPoly, l2: &LinearizedPoly, c1: u32, c2: u32) -> Result<Prediction> {
    require_cq0(c1, c2)?;
    let b = qe.base();
    let mut tr = Tr::new(b);
    let dg = inner_uniformity(b, g, c1)?;
    tr.val("delta_g(c1)", dg);
    if dg != 1 {
        return Err(not_covered("g is not PcN at c1"));
    }
    let worst = b
        .elements()
        .map(|gm| kernel_size(&l2.plus_scaled(b, l1, gm), b))
        .max()
        .unwrap_or(1);
    tr.val("max kernel of L2+gamma*L1", worst);
    if worst > 2 {
        return Err(not_covered("L2 + gamma L1 is not 2-to-1 or bijective for some gamma"));
    }
    tr.done(PredKind::UpperBound(2), "split: g PcN, L2+gamma*L1 at most 2-to-1")
}

fn predict_traceinv(qe: &QuadExtCtx, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    let mut tr = Tr::new(b);
    if (c1, c2) == (0, 0) {
        return tr.done(PredKind::Class(Class::APcN), "trace-inverse: c=0");
    }
    let lhs = b.mul(b.sub(1, c1), b.sub(c1, c2));
    let rhs = b.mul(qe.t(), b.mul(c2, c2));
    let restricted = c1 == 1 || c2 == 0 || lhs == rhs;
    tr.val("restricted set", restricted);
    if restricted {
        tr.done(PredKind::UpperBound(4), "trace-inverse: restricted set")
    } else {
        tr.done(PredKind::UpperBound(6), "trace-inverse: otherwise")
    }
}

/// The k with exp = p^k + 1, k >= 1.
fn gold_k(p: u32, exp: u64) -> Option<u32> {
    (1..64).find(|&k| (p as u64).checked_pow(k).map(|pk| pk + 1) == Some(exp))
}

fn predict_tracext(qe: &QuadExtCtx, h: &ExtToBase, c1: u32, c2: u32) -> Result<Prediction> {
    let b = qe.base();
    let mut tr = Tr::new(b);
    match *h {
        ExtToBase::Norm => {
            require_cq0(c1, c2)?;
            tr.done(PredKind::Class(Class::APcN), "trace-norm: c=(c1,0)")
        }
        ExtToBase::TracePower { gamma, exp } => {
            let p = b.characteristic();
            let k = gold_k(p, exp).ok_or_else(|| not_covered("H exponent is not p^k+1"))?;
            if qe.trace_to_base(gamma) == 0 {
                return Err(not_covered("gamma^q + gamma = 0"));
            }
            let g = gcd(k, b.degree());
            tr.val("k", k);
            tr.val("gcd(k,m)", g);
            if c2 == 0 {
                tr.done(exact_or_class(p.pow(g) + 1), "trace-gold: c=(c1,0)")
            } else if g == 1 {
                tr.done(PredKind::UpperBound(6), "trace-gold: gcd(k,m)=1")
            } else {
                Err(not_covered("c2 != 0 with gcd(k,m) > 1"))
            }
        }
    }
}

/// Exact uniformity of (z^{q+1}, H(z)) at c = (c1, 0): the first equation
/// confines solutions to a norm-level set shifted by a/(c1-1), so the count
/// is the largest fibre of z -> H(z+a) - c1 H(z) over such a set.
fn predict_normfirst(qe: &QuadExtCtx, h: &ExtToBase, c1: u32, c2: u32) -> Result<Prediction> {
    require_cq0(c1, c2)?;
    let b = qe.base();
    let e = qe.ext();
    let q = qe.q() as usize;
    let mut levels: Vec<Vec<u32>> = vec![Vec::new(); q];
    for z in e.elements() {
        levels[qe.norm_to_base(z) as usize].push(z);
    }
    let hv: Vec<u32> = e.elements().map(|z| h.eval(qe, z)).collect();
    let inv = b.inv(b.sub(c1, 1)).expect("c1 != 1");
    let shift_scale = qe.embed(inv);
    let delta = e
        .elements()
        .into_par_iter()
        .map(|a| {
            let s = e.mul(a, shift_scale);
            let mut bucket = vec![0u32; q];
            let mut best = 0;
            for level in &levels {
                bucket.fill(0);
                for &y in level {
                    let x = e.add(y, s);
                    let v = b.sub(hv[e.add(x, a) as usize], b.mul(c1, hv[x as usize]));
                    bucket[v as usize] += 1;
                    best = best.max(bucket[v as usize]);
                }
            }
            best
        })
        .max()
        .unwrap_or(0);
    let mut tr = Tr::new(b);
    tr.val("max solutions on norm cosets", delta);
    tr.done(exact_or_class(delta), "norm-first: coset scan")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    BoundOk,
    Violation,
    NotCovered,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "MATCH",
            Verdict::BoundOk => "BOUND-OK",
            Verdict::Violation => "VIOLATION",
            Verdict::NotCovered => "NOT-COVERED",
        })
    }
}

pub fn judge(kind: PredKind, observed: u32) -> Verdict {
    let ok = match kind {
        PredKind::Exact(d) => observed == d,
        PredKind::Class(Class::PcN) => observed == 1,
        PredKind::Class(Class::APcN) => observed == 2,
        PredKind::Class(Class::Uniform(d)) => observed == d,
        PredKind::UpperBound(d) => return if observed <= d { Verdict::BoundOk } else { Verdict::Violation },
    };
    if ok {
        Verdict::Match
    } else {
        Verdict::Violation
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyRow {
    pub c: CParam,
    /// Err holds the reason a prediction was not available
    pub prediction: std::result::Result<Prediction, String>,
    pub observed: CDdtReport,
    pub verdict: Verdict,
}

/// Predicts and brute-forces every c of the set; the identity c is skipped.
pub fn verify(spec: &FuncSpec, qe: &QuadExtCtx, cs: &CSet) -> Result<Vec<VerifyRow>> {
    verify_with(spec, qe, cs, predict)
}

/// As [`verify`] with a caller-supplied predictor.
pub fn verify_with<P>(spec: &FuncSpec, qe: &QuadExtCtx, cs: &CSet, predictor: P) -> Result<Vec<VerifyRow>>
where
    P: Fn(&FuncSpec, &QuadExtCtx, CParam) -> Result<Prediction> + Sync,
{
    let ddt = Ddt::new(spec, qe)?;
    if ddt.shape().codomain() != Domain::Biv {
        return Err(Error::DomainMismatch);
    }
    let cs: Vec<CParam> = cs
        .resolve(qe, Domain::Biv)?
        .into_iter()
        .filter(|c| !c.is_identity())
        .collect();
    cs.par_iter()
        .map(|&c| {
            let observed = ddt.uniformity(c)?;
            let prediction = match predictor(spec, qe, c) {
                Ok(p) => Ok(p),
                Err(Error::NotCovered(msg)) => Err(msg),
                Err(e) => return Err(e),
            };
            let verdict = match &prediction {
                Ok(p) => judge(p.kind, observed.uniformity),
                Err(_) => Verdict::NotCovered,
            };
            Ok(VerifyRow {
                c,
                prediction,
                observed,
                verdict,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::quadext::{make_quadext, select_t};
    use std::sync::Arc;

    fn ctx(p: u32, m: u32) -> QuadExtCtx {
        let base = Arc::new(make_field(p, m, None).unwrap());
        let t = select_t(&base, None).unwrap();
        make_quadext(base, t).unwrap()
    }

    #[test]
    fn ab_substitutions() {
        let qe = ctx(2, 4);
        assert_eq!(compute_ab(&qe, 0, 0, AbVariant::Generic).unwrap(), (0, 1));
        let b = qe.base();
        for c1 in b.elements().filter(|&c| c != 1) {
            let (a, bb) = compute_ab(&qe, c1, 0, AbVariant::Generic).unwrap();
            assert_eq!(b.div(a, bb), Some(c1));
        }
        assert_eq!(compute_ab(&qe, 1, 0, AbVariant::Generic), Err(Error::IdentityC));
    }

    #[test]
    fn b_vanishes_on_a_line() {
        for (p, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let qe = ctx(p, m);
            let b = qe.base();
            for c1 in b.elements().filter(|&c| c != 1) {
                let c2 = b.div(b.sub(c1, 1), qe.t()).unwrap();
                assert_eq!(compute_ab(&qe, c1, c2, AbVariant::Generic).unwrap().1, 0);
            }
        }
    }

    #[test]
    fn ratio_never_one() {
        for (p, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let qe = ctx(p, m);
            let b = qe.base();
            for c1 in b.elements() {
                for c2 in b.elements() {
                    if (c1, c2) == (1, 0) {
                        continue;
                    }
                    let (a, bb) = compute_ab(&qe, c1, c2, AbVariant::Generic).unwrap();
                    if a != 0 && bb != 0 {
                        assert_ne!(a, bb, "A/B = 1 at ({c1},{c2}) over {p}^{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn judge_rules() {
        assert_eq!(judge(PredKind::Exact(3), 3), Verdict::Match);
        assert_eq!(judge(PredKind::Exact(3), 2), Verdict::Violation);
        assert_eq!(judge(PredKind::UpperBound(6), 4), Verdict::BoundOk);
        assert_eq!(judge(PredKind::UpperBound(6), 7), Verdict::Violation);
        assert_eq!(judge(PredKind::Class(Class::APcN), 2), Verdict::Match);
    }

    #[test]
    fn out_of_scope() {
        let qe = ctx(2, 3);
        let gp = FuncSpec::GoldPair {
            k: 1,
            gamma: 0,
            l: LinearizedPoly::identity(),
        };
        assert!(matches!(
            predict(&gp, &qe, CParam::Biv { c1: 0, c2: 1 }),
            Err(Error::NotCovered(_))
        ));
        assert_eq!(
            predict(&gp, &qe, CParam::Biv { c1: 1, c2: 0 }),
            Err(Error::IdentityC)
        );
    }
}
