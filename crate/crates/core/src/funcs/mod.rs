//! The construction catalog: parametrized bivariate families, their building
//! blocks, and the univariate lift through phi.

mod parse;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::quadext::QuadExtCtx;

pub use parse::parse_spec;

/// L(x) = sum of coef * x^{p^power}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    terms: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinPolyProps {
    pub kernel_size: u32,
    pub is_permutation: bool,
}

impl LinearizedPoly {
    /// Terms as (coefficient, Frobenius power) pairs.
    pub fn new(terms: Vec<(u32, u32)>) -> Self {
        LinearizedPoly { terms }
    }

    pub fn identity() -> Self {
        LinearizedPoly { terms: vec![(1, 0)] }
    }

    pub fn terms(&self) -> &[(u32, u32)] {
        &self.terms
    }

    #[inline]
    pub fn eval(&self, f: &FieldCtx, x: u32) -> u32 {
        self.terms.iter().fold(0, |acc, &(c, i)| {
            f.add(acc, f.mul(c, f.frobenius(x, i as i64)))
        })
    }

    /// Adds `scale * other` term by term.
    pub fn plus_scaled(&self, f: &FieldCtx, other: &LinearizedPoly, scale: u32) -> LinearizedPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|&(c, i)| (f.mul(scale, c), i)));
        LinearizedPoly { terms }
    }

    pub fn table(&self, f: &FieldCtx) -> Vec<u32> {
        f.elements().map(|x| self.eval(f, x)).collect()
    }

    pub fn describe(&self, f: &FieldCtx) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|&(c, i)| {
                let mono = match i {
                    0 => "x".to_string(),
                    _ => format!("x^{}", (f.characteristic() as u64).pow(i)),
                };
                if c == 1 {
                    mono
                } else {
                    format!("{}*{mono}", f.fmt_elem(c, 'w'))
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Kernel size and bijectivity of a linearized polynomial, by exhaustive scan.
pub fn linpoly_props(l: &LinearizedPoly, f: &FieldCtx) -> LinPolyProps {
    let kernel_size = f.elements().filter(|&x| l.eval(f, x) == 0).count() as u32;
    LinPolyProps {
        kernel_size,
        is_permutation: kernel_size == 1,
    }
}

/// Univariate building blocks over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InnerFunc {
    /// x^{q-2}, so 0 maps to 0
    Inverse,
    /// x^{p^k+1}
    Gold(u32),
    Power(u64),
    Linearized(LinearizedPoly),
    Generic(Arc<Vec<u32>>),
}

impl InnerFunc {
    #[inline]
    pub fn eval(&self, f: &FieldCtx, x: u32) -> u32 {
        match self {
            InnerFunc::Inverse => f.inv_or_zero(x),
            InnerFunc::Gold(k) => f.pow(x, gold_exponent(f.characteristic(), *k)),
            InnerFunc::Power(e) => f.pow(x, *e),
            InnerFunc::Linearized(l) => l.eval(f, x),
            InnerFunc::Generic(t) => t[x as usize],
        }
    }

    pub fn table(&self, f: &FieldCtx) -> Vec<u32> {
        f.elements().map(|x| self.eval(f, x)).collect()
    }

    pub fn is_permutation(&self, f: &FieldCtx) -> bool {
        let mut seen = vec![false; f.order() as usize];
        f.elements().all(|x| {
            let y = self.eval(f, x) as usize;
            !std::mem::replace(&mut seen[y], true)
        })
    }

    pub fn describe(&self, f: &FieldCtx) -> String {
        match self {
            InnerFunc::Inverse => "inv".into(),
            InnerFunc::Gold(k) => format!("gold({k})"),
            InnerFunc::Power(e) => format!("x^{e}"),
            InnerFunc::Linearized(l) => l.describe(f),
            InnerFunc::Generic(_) => "table".into(),
        }
    }
}

pub(crate) fn gold_exponent(p: u32, k: u32) -> u64 {
    (p as u64).pow(k) + 1
}

/// Maps F_{q^2} -> F_q used as a coordinate of the extension-domain families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtToBase {
    /// z^{q+1}
    Norm,
    /// Tr^{2m}_m(gamma * z^exp); exp = q^2-2 gives gamma/z with 0 -> 0
    TracePower { gamma: u32, exp: u64 },
}

impl ExtToBase {
    #[inline]
    pub fn eval(&self, qe: &QuadExtCtx, z: u32) -> u32 {
        match self {
            ExtToBase::Norm => qe.norm_to_base(z),
            ExtToBase::TracePower { gamma, exp } => {
                let e = qe.ext();
                qe.trace_to_base(e.mul(*gamma, e.pow(z, *exp)))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// pairs (x, y) in F_q^2
    Biv,
    /// elements of F_{q^2}
    Ext,
}

/// Domain and codomain of a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    BivToBiv,
    ExtToBiv,
    ExtToExt,
}

impl Shape {
    pub fn domain(self) -> Domain {
        match self {
            Shape::BivToBiv => Domain::Biv,
            Shape::ExtToBiv | Shape::ExtToExt => Domain::Ext,
        }
    }

    pub fn codomain(self) -> Domain {
        match self {
            Shape::BivToBiv | Shape::ExtToBiv => Domain::Biv,
            Shape::ExtToExt => Domain::Ext,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Point {
    Biv(u32),
    Ext(u32),
}

/// Coordinate order used when lifting (G, H) to a single F_{q^2} value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftOrdering {
    /// G + beta*H, i.e. phi(G, H)
    GPlusBetaH,
    /// H + beta*G
    HPlusBetaG,
}

/// A construction-family descriptor. Elements are stored as indices into the
/// base field, except where noted as extension elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FuncSpec {
    /// (x, y) -> (x, y)
    Identity,
    /// (L(x), h(y) + L(x))
    GenLinearH { l: LinearizedPoly, h: InnerFunc },
    /// (L(x), y^{p^k+1} + alpha*y + L(x))
    GenLinearGold { l: LinearizedPoly, k: u32, alpha: u32 },
    /// (x + y, x^{p^i} y + alpha x y^{p^j})
    SumProd { i: u32, j: u32, alpha: u32 },
    /// (x^{p^k+1} + gamma y^{p^k+1}, L(x + y))
    GoldPair { k: u32, gamma: u32, l: LinearizedPoly },
    /// (xy, sum gamma_i (xy)^{p^i} + L(x + y)); `gammas` holds (i, gamma_i)
    ProdLin { gammas: Vec<(u32, u32)>, l: LinearizedPoly },
    /// (g(x), h1(x) L1(y) + gamma1 h2(x) + gamma2 L2(y))
    SplitGH {
        g: InnerFunc,
        h1: InnerFunc,
        h2: InnerFunc,
        l1: LinearizedPoly,
        l2: LinearizedPoly,
        gamma1: u32,
        gamma2: u32,
    },
    /// z -> (Tr(z), Tr(gamma/z)); gamma is an extension element
    TraceInverse { gamma: u32 },
    /// z -> (Tr(z), H(z))
    TraceFromExt { h: ExtToBase },
    /// z -> (z^{q+1}, H(z))
    NormFirst { h: ExtToBase },
    /// value table over pair indices, values are pair indices
    GenericBivariate { table: Arc<Vec<u32>> },
    /// value table over F_{q^2}
    GenericUnivariate { table: Arc<Vec<u32>> },
}

/// A function materialized as a value table over its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuncTable {
    pub shape: Shape,
    pub values: Vec<u32>,
}

impl FuncSpec {
    pub fn shape(&self) -> Shape {
        match self {
            FuncSpec::TraceInverse { .. } | FuncSpec::TraceFromExt { .. } | FuncSpec::NormFirst { .. } => {
                Shape::ExtToBiv
            }
            FuncSpec::GenericUnivariate { .. } => Shape::ExtToExt,
            _ => Shape::BivToBiv,
        }
    }

    pub fn domain(&self) -> Domain {
        self.shape().domain()
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            FuncSpec::Identity => "identity",
            FuncSpec::GenLinearH { .. } => "genlinh",
            FuncSpec::GenLinearGold { .. } => "genlingold",
            FuncSpec::SumProd { .. } => "sumprod",
            FuncSpec::GoldPair { .. } => "goldpair",
            FuncSpec::ProdLin { .. } => "prodlin",
            FuncSpec::SplitGH { .. } => "splitgh",
            FuncSpec::TraceInverse { .. } => "traceinv",
            FuncSpec::TraceFromExt { .. } => "tracext",
            FuncSpec::NormFirst { .. } => "normfirst",
            FuncSpec::GenericBivariate { .. } => "genericbiv",
            FuncSpec::GenericUnivariate { .. } => "genericuni",
        }
    }

    /// Checks the family's parameter preconditions.
    pub fn validate(&self, qe: &QuadExtCtx) -> Result<()> {
        let b = qe.base();
        let m = b.degree();
        let q = qe.q();
        let in_base = |x: u32| x < q;
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        match self {
            FuncSpec::GenLinearGold { k, alpha, .. } => {
                if *k == 0 || *k >= m {
                    return bad(format!("genlingold needs 0 < k < m, got k={k}, m={m}"));
                }
                if !in_base(*alpha) {
                    return bad("alpha outside F_q".into());
                }
            }
            FuncSpec::SumProd { alpha, .. } => {
                if *alpha == 0 || !in_base(*alpha) {
                    return bad("sumprod needs alpha in F_q*".into());
                }
            }
            FuncSpec::GoldPair { gamma, .. } => {
                if !in_base(*gamma) || *gamma == b.neg(1) {
                    return bad("goldpair needs gamma in F_q with gamma != -1".into());
                }
            }
            FuncSpec::SplitGH { gamma1, gamma2, .. } => {
                if !in_base(*gamma1) || !in_base(*gamma2) || *gamma2 == 0 {
                    return bad("splitgh needs gamma1, gamma2 in F_q with gamma2 != 0".into());
                }
            }
            FuncSpec::TraceInverse { gamma } => {
                if *gamma >= qe.ext().order() || qe.project(*gamma).is_some() {
                    return bad("traceinv needs gamma outside F_q".into());
                }
            }
            FuncSpec::TraceFromExt { h } | FuncSpec::NormFirst { h } => {
                if let ExtToBase::TracePower { gamma, .. } = h {
                    if *gamma >= qe.ext().order() {
                        return bad("gamma outside F_{q^2}".into());
                    }
                }
            }
            FuncSpec::GenericBivariate { table } | FuncSpec::GenericUnivariate { table } => {
                let n = qe.ext().order();
                if table.len() != n as usize || table.iter().any(|&v| v >= n) {
                    return bad(format!("value table must have {n} entries below {n}"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// F(point) for a point of the function's domain.
    pub fn eval(&self, qe: &QuadExtCtx, point: Point) -> Result<Point> {
        self.validate(qe)?;
        let n = qe.ext().order();
        let idx = match (self.domain(), point) {
            (Domain::Biv, Point::Biv(i)) | (Domain::Ext, Point::Ext(i)) if i < n => i,
            _ => return Err(Error::DomainMismatch),
        };
        let v = self.eval_index(qe, idx);
        Ok(match self.shape().codomain() {
            Domain::Biv => Point::Biv(v),
            Domain::Ext => Point::Ext(v),
        })
    }

    /// Unchecked evaluation on a domain index; `validate` first.
    pub(crate) fn eval_index(&self, qe: &QuadExtCtx, idx: u32) -> u32 {
        let b = qe.base();
        match self {
            FuncSpec::Identity => idx,
            FuncSpec::GenericBivariate { table } | FuncSpec::GenericUnivariate { table } => {
                table[idx as usize]
            }
            FuncSpec::TraceInverse { gamma } => {
                let e = qe.ext();
                let g = qe.trace_to_base(idx);
                let h = qe.trace_to_base(e.mul(*gamma, e.inv_or_zero(idx)));
                qe.pair(g, h)
            }
            FuncSpec::TraceFromExt { h } => qe.pair(qe.trace_to_base(idx), h.eval(qe, idx)),
            FuncSpec::NormFirst { h } => qe.pair(qe.norm_to_base(idx), h.eval(qe, idx)),
            _ => {
                let (x, y) = qe.unpair(idx);
                let (g, h) = self.eval_biv(b, x, y);
                qe.pair(g, h)
            }
        }
    }

    fn eval_biv(&self, b: &FieldCtx, x: u32, y: u32) -> (u32, u32) {
        let p = b.characteristic();
        match self {
            FuncSpec::GenLinearH { l, h } => {
                let lx = l.eval(b, x);
                (lx, b.add(h.eval(b, y), lx))
            }
            FuncSpec::GenLinearGold { l, k, alpha } => {
                let lx = l.eval(b, x);
                let gold = b.pow(y, gold_exponent(p, *k));
                (lx, b.add(b.add(gold, b.mul(*alpha, y)), lx))
            }
            FuncSpec::SumProd { i, j, alpha } => {
                let g = b.add(x, y);
                let h = b.add(
                    b.mul(b.frobenius(x, *i as i64), y),
                    b.mul(*alpha, b.mul(x, b.frobenius(y, *j as i64))),
                );
                (g, h)
            }
            FuncSpec::GoldPair { k, gamma, l } => {
                let e = gold_exponent(p, *k);
                let g = b.add(b.pow(x, e), b.mul(*gamma, b.pow(y, e)));
                (g, l.eval(b, b.add(x, y)))
            }
            FuncSpec::ProdLin { gammas, l } => {
                let xy = b.mul(x, y);
                let h = gammas.iter().fold(l.eval(b, b.add(x, y)), |acc, &(i, c)| {
                    b.add(acc, b.mul(c, b.frobenius(xy, i as i64)))
                });
                (xy, h)
            }
            FuncSpec::SplitGH {
                g,
                h1,
                h2,
                l1,
                l2,
                gamma1,
                gamma2,
            } => {
                let h = b.add(
                    b.add(
                        b.mul(h1.eval(b, x), l1.eval(b, y)),
                        b.mul(*gamma1, h2.eval(b, x)),
                    ),
                    b.mul(*gamma2, l2.eval(b, y)),
                );
                (g.eval(b, x), h)
            }
            _ => unreachable!("not a bivariate-domain family"),
        }
    }

    /// The value table over the whole domain.
    pub fn table(&self, qe: &QuadExtCtx) -> Result<FuncTable> {
        self.validate(qe)?;
        let values = match self {
            FuncSpec::GenericBivariate { table } | FuncSpec::GenericUnivariate { table } => {
                table.as_ref().clone()
            }
            _ => (0..qe.ext().order()).map(|i| self.eval_index(qe, i)).collect(),
        };
        Ok(FuncTable {
            shape: self.shape(),
            values,
        })
    }

    /// Canonical mini-language rendering.
    pub fn describe(&self, qe: &QuadExtCtx) -> String {
        let b = qe.base();
        let el = |x: u32| b.fmt_elem(x, 'w');
        let ext_el = |x: u32| qe.fmt_ext(x);
        let h_desc = |h: &ExtToBase| match h {
            ExtToBase::Norm => "H=norm".to_string(),
            ExtToBase::TracePower { gamma, exp } => format!("H=tr{exp};gamma={}", ext_el(*gamma)),
        };
        match self {
            FuncSpec::Identity => "identity".into(),
            FuncSpec::GenLinearH { l, h } => {
                format!("genlinh{{L={};h={}}}", l.describe(b), h.describe(b))
            }
            FuncSpec::GenLinearGold { l, k, alpha } => format!(
                "genlingold{{L={};k={k};alpha={}}}",
                l.describe(b),
                el(*alpha)
            ),
            FuncSpec::SumProd { i, j, alpha } => {
                format!("sumprod{{i={i};j={j};alpha={}}}", el(*alpha))
            }
            FuncSpec::GoldPair { k, gamma, l } => format!(
                "goldpair{{k={k};gamma={};L={}}}",
                el(*gamma),
                l.describe(b)
            ),
            FuncSpec::ProdLin { gammas, l } => {
                let g = gammas
                    .iter()
                    .map(|&(i, c)| format!("{i}:{}", el(c)))
                    .collect::<Vec<_>>()
                    .join(",");
                format!("prodlin{{gammas={g};L={}}}", l.describe(b))
            }
            FuncSpec::SplitGH {
                g,
                h1,
                h2,
                l1,
                l2,
                gamma1,
                gamma2,
            } => format!(
                "splitgh{{g={};h1={};h2={};L1={};L2={};gamma1={};gamma2={}}}",
                g.describe(b),
                h1.describe(b),
                h2.describe(b),
                l1.describe(b),
                l2.describe(b),
                el(*gamma1),
                el(*gamma2)
            ),
            FuncSpec::TraceInverse { gamma } => format!("traceinv{{gamma={}}}", ext_el(*gamma)),
            FuncSpec::TraceFromExt { h } => format!("tracext{{{}}}", h_desc(h)),
            FuncSpec::NormFirst { h } => format!("normfirst{{{}}}", h_desc(h)),
            FuncSpec::GenericBivariate { .. } => "genericbiv".into(),
            FuncSpec::GenericUnivariate { .. } => "genericuni".into(),
        }
    }
}

/// z -> phi(F(phi^{-1}(z))) (or with the coordinates swapped), as a value table.
pub fn univariate_lift(spec: &FuncSpec, qe: &QuadExtCtx, ordering: LiftOrdering) -> Result<FuncSpec> {
    if spec.shape() != Shape::BivToBiv {
        return Err(Error::DomainMismatch);
    }
    let t = spec.table(qe)?;
    let table = (0..qe.ext().order())
        .map(|z| {
            let v = t.values[qe.phi_inv(z) as usize];
            let v = match ordering {
                LiftOrdering::GPlusBetaH => v,
                LiftOrdering::HPlusBetaG => {
                    let (g, h) = qe.unpair(v);
                    qe.pair(h, g)
                }
            };
            qe.phi(v)
        })
        .collect();
    Ok(FuncSpec::GenericUnivariate {
        table: Arc::new(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::quadext::{make_quadext, select_t};

    fn ctx(p: u32, m: u32) -> QuadExtCtx {
        let base = Arc::new(make_field(p, m, None).unwrap());
        let t = select_t(&base, None).unwrap();
        make_quadext(base, t).unwrap()
    }

    #[test]
    fn genlinh_inverse_at_origin() {
        let qe = ctx(2, 4);
        let f = FuncSpec::GenLinearH {
            l: LinearizedPoly::identity(),
            h: InnerFunc::Inverse,
        };
        assert_eq!(f.eval(&qe, Point::Biv(0)).unwrap(), Point::Biv(0));
        assert_eq!(f.eval(&qe, Point::Ext(0)), Err(Error::DomainMismatch));
    }

    #[test]
    fn sumprod_direct_substitution() {
        let qe = ctx(2, 3);
        let f = FuncSpec::SumProd { i: 0, j: 1, alpha: 1 };
        let one_one = qe.pair(1, 1);
        assert_eq!(f.eval(&qe, Point::Biv(one_one)).unwrap(), Point::Biv(0));
    }

    #[test]
    fn traceinverse_over_f4() {
        let qe = ctx(2, 1);
        let f = FuncSpec::TraceInverse { gamma: qe.beta() };
        // Tr(1) = 0 and Tr(beta) = beta + beta_bar = 1
        assert_eq!(f.eval(&qe, Point::Ext(1)).unwrap(), Point::Biv(qe.pair(0, 1)));
    }

    #[test]
    fn linpoly_examples() {
        let f8 = make_field(2, 3, None).unwrap();
        let l = LinearizedPoly::new(vec![(1, 1), (1, 0)]);
        assert_eq!(
            linpoly_props(&l, &f8),
            LinPolyProps {
                kernel_size: 2,
                is_permutation: false
            }
        );
        let f27 = make_field(3, 3, None).unwrap();
        let l = LinearizedPoly::new(vec![(1, 1), (1, 0)]);
        assert!(linpoly_props(&l, &f27).is_permutation);
        assert!(linpoly_props(&LinearizedPoly::identity(), &f27).is_permutation);
    }

    #[test]
    fn preconditions() {
        let qe = ctx(2, 4);
        let gold = FuncSpec::GenLinearGold {
            l: LinearizedPoly::identity(),
            k: 4,
            alpha: 0,
        };
        assert!(matches!(gold.validate(&qe), Err(Error::InvalidParams(_))));
        let pair = FuncSpec::GoldPair {
            k: 1,
            gamma: 1,
            l: LinearizedPoly::identity(),
        };
        assert!(pair.validate(&qe).is_err());
        let inv = FuncSpec::TraceInverse { gamma: qe.embed(3) };
        assert!(inv.validate(&qe).is_err());
        let sp = FuncSpec::SumProd { i: 0, j: 1, alpha: 0 };
        assert!(sp.validate(&qe).is_err());
    }

    #[test]
    fn identity_lift_is_identity() {
        let qe = ctx(2, 3);
        let lifted = univariate_lift(&FuncSpec::Identity, &qe, LiftOrdering::GPlusBetaH).unwrap();
        let t = lifted.table(&qe).unwrap();
        assert!(t.values.iter().enumerate().all(|(i, &v)| i as u32 == v));
        let inv = FuncSpec::TraceInverse { gamma: qe.beta() };
        assert_eq!(
            univariate_lift(&inv, &qe, LiftOrdering::GPlusBetaH),
            Err(Error::DomainMismatch)
        );
    }

    #[test]
    fn prodlin_first_coordinate_symmetric() {
        let qe = ctx(2, 4);
        let f = FuncSpec::ProdLin {
            gammas: vec![(4, 1), (2, 1)],
            l: LinearizedPoly::identity(),
        };
        for x in 0..16 {
            for y in 0..16 {
                let (a, _) = qe.unpair(f.eval_index(&qe, qe.pair(x, y)));
                let (b, _) = qe.unpair(f.eval_index(&qe, qe.pair(y, x)));
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn genlinh_with_permutations_is_bijective() {
        for (p, m) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
            let qe = ctx(p, m);
            let f = FuncSpec::GenLinearH {
                l: LinearizedPoly::new(vec![(qe.base().primitive(), 0)]),
                h: InnerFunc::Inverse,
            };
            let t = f.table(&qe).unwrap();
            let mut v = t.values.clone();
            v.sort_unstable();
            v.dedup();
            assert_eq!(v.len(), t.values.len());
        }
    }
}
