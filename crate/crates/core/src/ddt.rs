//! c-differential distribution tables, uniformity and classification.
//!
//! Every function is first materialized as a value table. For a fixed c the
//! table `-(c*F(P))` is computed once; each row a is then one pass over the
//! domain bucketing F(P+a) - c*F(P). Domain points and codomain values are
//! both indices whose addition is digitwise, so a single adder serves both.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::funcs::{univariate_lift, Domain, FuncSpec, FuncTable, LiftOrdering, Point, Shape};
use crate::gf::{AddKind, FieldCtx};
use crate::quadext::QuadExtCtx;

/// The multiplier c: a pair for functions into F_q^2, or an element of the
/// field for univariate functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CParam {
    Biv { c1: u32, c2: u32 },
    Uni(u32),
}

impl CParam {
    /// (1, 0) or 1: the only c for which a = 0 is excluded.
    pub fn is_identity(&self) -> bool {
        matches!(self, CParam::Biv { c1: 1, c2: 0 } | CParam::Uni(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    PcN,
    APcN,
    Uniform(u32),
}

impl Class {
    pub fn from_uniformity(delta: u32) -> Class {
        match delta {
            1 => Class::PcN,
            2 => Class::APcN,
            d => Class::Uniform(d),
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::PcN => f.write_str("PcN"),
            Class::APcN => f.write_str("APcN"),
            Class::Uniform(d) => write!(f, "(c,{d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CDdtReport {
    pub c: CParam,
    pub uniformity: u32,
    /// entry value -> number of (a, b) with that entry, over admissible a
    pub spectrum: BTreeMap<u32, u64>,
    /// lexicographically smallest (a, b) attaining the uniformity
    pub witness: (u32, u32),
    pub class: Class,
}

impl CDdtReport {
    /// Number of admissible rows, recovered from the spectrum.
    pub fn rows(&self, domain_size: u32) -> u64 {
        self.spectrum.values().sum::<u64>() / domain_size as u64
    }

    /// Each admissible row sums to the domain size.
    pub fn row_mass_ok(&self, domain_size: u32) -> bool {
        let n = domain_size as u64;
        let cells: u64 = self.spectrum.values().sum();
        let mass: u64 = self.spectrum.iter().map(|(&v, &k)| v as u64 * k).sum();
        cells.is_multiple_of(n) && mass == (cells / n) * n
    }
}

/// Which multipliers a sweep visits, in pair coordinates (c1, c2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CSet {
    /// every c except the identity
    All,
    /// c = (c1, 0) with c1 != 1
    Cq0,
    List(Vec<(u32, u32)>),
    /// n distinct non-identity c drawn with a seeded generator
    Sample { n: usize, seed: u64 },
}

impl CSet {
    /// The multipliers ordered by (c1, c2), except that a list keeps its own
    /// order. For functions into F_{q^2} the pair (c1, c2) stands for
    /// c = phi(c1, c2).
    pub fn resolve(&self, qe: &QuadExtCtx, codomain: Domain) -> Result<Vec<CParam>> {
        let q = qe.q();
        let n = q * q;
        let identity = qe.pair(1, 0);
        let by_c1 = |v: &mut Vec<u32>| v.sort_unstable_by_key(|&c| (c % q, c / q));
        let pairs: Vec<u32> = match self {
            CSet::All => {
                let mut v: Vec<u32> = (0..n).filter(|&c| c != identity).collect();
                by_c1(&mut v);
                v
            }
            CSet::Cq0 => (0..q).filter(|&c| c != 1).collect(),
            CSet::List(list) => list
                .iter()
                .map(|&(c1, c2)| {
                    if c1 >= q || c2 >= q {
                        Err(Error::ElementOutOfRange {
                            index: c1.max(c2) as u64,
                            q,
                        })
                    } else {
                        Ok(qe.pair(c1, c2))
                    }
                })
                .collect::<Result<_>>()?,
            CSet::Sample { n: want, seed } => {
                let pool: Vec<u32> = (0..n).filter(|&c| c != identity).collect();
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut picked: Vec<u32> = sample(&mut rng, pool.len(), (*want).min(pool.len()))
                    .into_iter()
                    .map(|i| pool[i])
                    .collect();
                by_c1(&mut picked);
                picked
            }
        };
        Ok(pairs
            .into_iter()
            .map(|c| match codomain {
                Domain::Biv => {
                    let (c1, c2) = qe.unpair(c);
                    CParam::Biv { c1, c2 }
                }
                Domain::Ext => CParam::Uni(qe.phi(c)),
            })
            .collect())
    }
}

/// A function prepared for repeated DDT queries.
pub struct Ddt<'a> {
    qe: &'a QuadExtCtx,
    shape: Shape,
    values: Vec<u32>,
}

impl<'a> Ddt<'a> {
    pub fn new(spec: &FuncSpec, qe: &'a QuadExtCtx) -> Result<Self> {
        Ok(Self::from_table(qe, spec.table(qe)?))
    }

    pub fn from_table(qe: &'a QuadExtCtx, table: FuncTable) -> Self {
        Ddt {
            qe,
            shape: table.shape,
            values: table.values,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn domain_size(&self) -> u32 {
        self.values.len() as u32
    }

    fn neg_scaled(&self, c: CParam) -> Result<Vec<u32>> {
        let e = self.qe.ext();
        match (c, self.shape.codomain()) {
            (CParam::Biv { c1, c2 }, Domain::Biv) => {
                let q = self.qe.q();
                if c1 >= q || c2 >= q {
                    return Err(Error::ElementOutOfRange {
                        index: c1.max(c2) as u64,
                        q,
                    });
                }
                let c = self.qe.pair(c1, c2);
                Ok(self
                    .values
                    .iter()
                    .map(|&v| e.neg(self.qe.biv_mul(c, v)))
                    .collect())
            }
            (CParam::Uni(c), Domain::Ext) => {
                if c >= e.order() {
                    return Err(Error::ElementOutOfRange {
                        index: c as u64,
                        q: e.order(),
                    });
                }
                Ok(self.values.iter().map(|&v| e.neg(e.mul(c, v))).collect())
            }
            _ => Err(Error::DomainMismatch),
        }
    }

    fn check_point(&self, p: Point) -> Result<u32> {
        match (self.shape.domain(), p) {
            (Domain::Biv, Point::Biv(i)) | (Domain::Ext, Point::Ext(i)) if i < self.domain_size() => {
                Ok(i)
            }
            _ => Err(Error::DomainMismatch),
        }
    }

    /// F(point + a) - c F(point), with the product law for pair-valued F.
    pub fn derivative(&self, c: CParam, a: Point, point: Point) -> Result<u32> {
        let a = self.check_point(a)?;
        let x = self.check_point(point)?;
        let e = self.qe.ext();
        let shifted = self.values[e.add(x, a) as usize];
        let fx = self.values[x as usize];
        let scaled = match (c, self.shape.codomain()) {
            (CParam::Biv { c1, c2 }, Domain::Biv) => self.qe.biv_mul(self.qe.pair(c1, c2), fx),
            (CParam::Uni(c), Domain::Ext) => e.mul(c, fx),
            _ => return Err(Error::DomainMismatch),
        };
        Ok(e.sub(shifted, scaled))
    }

    /// The row a of the table: entry b counts points with derivative b.
    pub fn row_spectrum(&self, c: CParam, a: Point) -> Result<Vec<u32>> {
        let a = self.check_point(a)?;
        let neg_scaled = self.neg_scaled(c)?;
        let mut bucket = vec![0u32; self.values.len()];
        let e = self.qe.ext();
        for (x, &ns) in neg_scaled.iter().enumerate() {
            let v = e.add(self.values[e.add(x as u32, a) as usize], ns);
            bucket[v as usize] += 1;
        }
        Ok(bucket)
    }

    pub fn uniformity(&self, c: CParam) -> Result<CDdtReport> {
        let neg_scaled = self.neg_scaled(c)?;
        Ok(analyse(self.qe.ext(), &self.values, &neg_scaled, c))
    }

    /// Reports for each c in order; parallel over c and over rows.
    pub fn sweep(&self, cs: &[CParam]) -> Result<Vec<CDdtReport>> {
        cs.par_iter().map(|&c| self.uniformity(c)).collect()
    }
}

/// Uniformity of a univariate function F_q -> F_q given as a value table.
pub fn univariate_uniformity(f: &FieldCtx, values: &[u32], c: u32) -> Result<CDdtReport> {
    if values.len() != f.order() as usize || c >= f.order() {
        return Err(Error::DomainMismatch);
    }
    let neg_scaled: Vec<u32> = values.iter().map(|&v| f.neg(f.mul(c, v))).collect();
    Ok(analyse(f, values, &neg_scaled, CParam::Uni(c)))
}

fn analyse(adder: &FieldCtx, values: &[u32], neg_scaled: &[u32], c: CParam) -> CDdtReport {
    match adder.add_kind() {
        AddKind::Xor => run(|a, b| a ^ b, values, neg_scaled, c),
        AddKind::Table { chunk, table } => run(
            |a, b| table[(a * chunk + b) as usize] as u32,
            values,
            neg_scaled,
            c,
        ),
        AddKind::General => run(|a, b| adder.add(a, b), values, neg_scaled, c),
    }
}

struct Acc {
    bucket: Vec<u32>,
    spectrum: Vec<u64>,
    /// (entry, a, b)
    best: (u32, u32, u32),
}

impl Acc {
    fn new(n: usize) -> Self {
        Acc {
            bucket: vec![0; n],
            spectrum: vec![0; n + 1],
            best: (0, u32::MAX, u32::MAX),
        }
    }

    fn offer(&mut self, cand: (u32, u32, u32)) {
        let (v, a, b) = cand;
        let (bv, ba, bb) = self.best;
        if v > bv || (v == bv && (a, b) < (ba, bb)) {
            self.best = cand;
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        for (s, o) in self.spectrum.iter_mut().zip(&other.spectrum) {
            *s += o;
        }
        self.offer(other.best);
        self
    }
}

fn run<A>(add: A, values: &[u32], neg_scaled: &[u32], c: CParam) -> CDdtReport
where
    A: Fn(u32, u32) -> u32 + Sync,
{
    let n = values.len();
    let start = u32::from(c.is_identity());
    let acc = (start..n as u32)
        .into_par_iter()
        .with_min_len(8)
        .fold(
            || Acc::new(n),
            |mut acc, a| {
                acc.bucket.fill(0);
                for (x, &ns) in neg_scaled.iter().enumerate() {
                    let v = add(values[add(x as u32, a) as usize], ns);
                    acc.bucket[v as usize] += 1;
                }
                let mut row_best = (0, a, 0);
                for (b, &v) in acc.bucket.iter().enumerate() {
                    acc.spectrum[v as usize] += 1;
                    if v > row_best.0 {
                        row_best = (v, a, b as u32);
                    }
                }
                acc.offer(row_best);
                acc
            },
        )
        .reduce_with(Acc::merge)
        .unwrap_or_else(|| Acc::new(n));
    let spectrum = acc
        .spectrum
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| (v as u32, k))
        .collect();
    let (uniformity, a, b) = acc.best;
    CDdtReport {
        c,
        uniformity,
        spectrum,
        witness: (a, b),
        class: Class::from_uniformity(uniformity),
    }
}

pub fn c_derivative(spec: &FuncSpec, qe: &QuadExtCtx, c: CParam, a: Point, point: Point) -> Result<u32> {
    Ddt::new(spec, qe)?.derivative(c, a, point)
}

pub fn c_row_spectrum(spec: &FuncSpec, qe: &QuadExtCtx, c: CParam, a: Point) -> Result<Vec<u32>> {
    Ddt::new(spec, qe)?.row_spectrum(c, a)
}

pub fn c_uniformity(spec: &FuncSpec, qe: &QuadExtCtx, c: CParam) -> Result<CDdtReport> {
    Ddt::new(spec, qe)?.uniformity(c)
}

pub fn sweep(spec: &FuncSpec, qe: &QuadExtCtx, cs: &CSet) -> Result<Vec<CDdtReport>> {
    let ddt = Ddt::new(spec, qe)?;
    let cs = cs.resolve(qe, ddt.shape().codomain())?;
    ddt.sweep(&cs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivMismatch {
    pub c1: u32,
    pub c2: u32,
    pub bivariate: u32,
    pub univariate: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub ordering: LiftOrdering,
    pub checked: usize,
    /// c where the uniformity or the spectrum differ
    pub mismatches: Vec<EquivMismatch>,
}

impl EquivalenceReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the bivariate table at (c1, c2) with the lifted univariate table at
/// phi(c1, c2), for every c including the identity.
pub fn equivalence_check(spec: &FuncSpec, qe: &QuadExtCtx, ordering: LiftOrdering) -> Result<EquivalenceReport> {
    let biv = Ddt::new(spec, qe)?;
    let uni = Ddt::new(&univariate_lift(spec, qe, ordering)?, qe)?;
    let n = qe.q() * qe.q();
    let mismatches = (0..n)
        .into_par_iter()
        .map(|c| {
            let (c1, c2) = qe.unpair(c);
            let l = biv.uniformity(CParam::Biv { c1, c2 })?;
            let r = uni.uniformity(CParam::Uni(qe.phi(c)))?;
            Ok((l.uniformity != r.uniformity || l.spectrum != r.spectrum).then_some(EquivMismatch {
                c1,
                c2,
                bivariate: l.uniformity,
                univariate: r.uniformity,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(EquivalenceReport {
        ordering,
        checked: n as usize,
        mismatches,
    })
}
