//! The function mini-language: `family{key=value;key=value}`.
//!
//! Base-field elements are written `0`, an integer residue, `w` or `w^k`.
//! Extension elements additionally accept `W^k` for powers of the extension
//! primitive; `w^k` there denotes the embedded base element.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{gold_exponent, ExtToBase, FuncSpec, InnerFunc, LinearizedPoly};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::quadext::QuadExtCtx;

struct Args<'a> {
    family: &'a str,
    values: BTreeMap<&'a str, (usize, &'a str)>,
}

impl<'a> Args<'a> {
    fn take(&mut self, key: &str) -> Option<(usize, &'a str)> {
        self.values.remove(key)
    }

    fn required(&mut self, key: &str, end: usize) -> Result<(usize, &'a str)> {
        self.take(key)
            .ok_or_else(|| Error::parse(end, format!("{} needs `{key}`", self.family)))
    }

    fn finish(self) -> Result<()> {
        match self.values.into_iter().next() {
            None => Ok(()),
            Some((k, (pos, _))) => Err(Error::parse(pos, format!("unknown key `{k}`"))),
        }
    }
}

fn split_args(s: &str) -> Result<Args<'_>> {
    let (family, body, body_start) = match s.find('{') {
        None => (s.trim(), "", s.len()),
        Some(open) => {
            let close = s
                .rfind('}')
                .filter(|&c| c > open)
                .ok_or_else(|| Error::parse(s.len(), "missing `}`"))?;
            if !s[close + 1..].trim().is_empty() {
                return Err(Error::parse(close + 1, "trailing input after `}`"));
            }
            (s[..open].trim(), &s[open + 1..close], open + 1)
        }
    };
    if family.is_empty() {
        return Err(Error::parse(0, "missing family name"));
    }
    let mut values = BTreeMap::new();
    let mut offset = body_start;
    for part in body.split(';') {
        let pos = offset;
        offset += part.len() + 1;
        if part.trim().is_empty() {
            continue;
        }
        let eq = part
            .find('=')
            .ok_or_else(|| Error::parse(pos, format!("expected key=value, got `{}`", part.trim())))?;
        let key = part[..eq].trim();
        let value_pos = pos + eq + 1;
        if values.insert(key, (value_pos, part[eq + 1..].trim())).is_some() {
            return Err(Error::parse(pos, format!("duplicate key `{key}`")));
        }
    }
    Ok(Args { family, values })
}

fn at(pos: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { pos: inner, msg } => Error::Parse { pos: pos + inner, msg },
        other => other,
    }
}

fn uint(pos: usize, s: &str) -> Result<u32> {
    s.parse()
        .map_err(|_| Error::parse(pos, format!("expected a non-negative integer, got `{s}`")))
}

fn base_elem(f: &FieldCtx, pos: usize, s: &str) -> Result<u32> {
    f.parse_elem(s, &['w']).map_err(at(pos))
}

fn ext_elem(qe: &QuadExtCtx, pos: usize, s: &str) -> Result<u32> {
    if s.starts_with('w') {
        return Ok(qe.embed(base_elem(qe.base(), pos, s)?));
    }
    qe.ext().parse_elem(s, &['W']).map_err(at(pos))
}

/// Terms (coefficient, exponent) of a univariate polynomial such as
/// `w^3*x^2+x+1`; exponent 0 marks a constant.
fn poly_terms(f: &FieldCtx, pos: usize, s: &str) -> Result<Vec<(u32, u64)>> {
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    let mut bounds = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        // a sign starts a new term unless it follows `^`
        if (b == b'+' || b == b'-') && i > 0 && bytes[i - 1] != b'^' {
            bounds.push((start, i));
            start = if b == b'+' { i + 1 } else { i };
        }
    }
    bounds.push((start, s.len()));
    for (a, b) in bounds {
        let raw = &s[a..b];
        let term = raw.trim();
        let tpos = pos + a;
        if term.is_empty() {
            return Err(Error::parse(tpos, "empty term"));
        }
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, term),
        };
        let (coef, mono) = match body.rfind('*') {
            Some(star) => (base_elem(f, tpos, &body[..star])?, body[star + 1..].trim()),
            None if body.contains('x') => (1, body),
            None => (base_elem(f, tpos, body)?, ""),
        };
        let exp = if mono.is_empty() {
            0
        } else if mono == "x" {
            1
        } else if let Some(e) = mono.strip_prefix("x^") {
            e.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(tpos, format!("bad exponent in `{term}`")))?
        } else {
            return Err(Error::parse(tpos, format!("bad term `{term}`")));
        };
        let coef = if neg { f.neg(coef) } else { coef };
        terms.push((coef, exp));
    }
    Ok(terms)
}

fn frobenius_power(p: u32, e: u64) -> Option<u32> {
    let mut pk = 1u64;
    for i in 0..64 {
        if pk == e {
            return Some(i);
        }
        pk = pk.checked_mul(p as u64)?;
    }
    None
}

fn linearized(f: &FieldCtx, pos: usize, s: &str) -> Result<LinearizedPoly> {
    let terms = poly_terms(f, pos, s)?
        .into_iter()
        .map(|(c, e)| {
            frobenius_power(f.characteristic(), e)
                .map(|i| (c, i))
                .ok_or_else(|| Error::parse(pos, format!("`{s}` is not a linearized polynomial")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearizedPoly::new(terms))
}

fn inner(f: &FieldCtx, pos: usize, s: &str) -> Result<InnerFunc> {
    let s = s.trim();
    if s == "inv" || s == "x^-1" {
        return Ok(InnerFunc::Inverse);
    }
    if let Some(k) = s.strip_prefix("gold(").and_then(|r| r.strip_suffix(')')) {
        return Ok(InnerFunc::Gold(uint(pos, k.trim())?));
    }
    if let Ok(l) = linearized(f, pos, s) {
        return Ok(InnerFunc::Linearized(l));
    }
    let terms = poly_terms(f, pos, s)?;
    if let [(1, e)] = terms[..] {
        if e > 0 {
            return Ok(InnerFunc::Power(e));
        }
    }
    let table = f
        .elements()
        .map(|x| {
            terms
                .iter()
                .fold(0, |acc, &(c, e)| f.add(acc, f.mul(c, f.pow(x, e))))
        })
        .collect();
    Ok(InnerFunc::Generic(Arc::new(table)))
}

fn ext_h(qe: &QuadExtCtx, args: &mut Args, end: usize) -> Result<ExtToBase> {
    let (hpos, h) = args.required("H", end)?;
    let p = qe.base().characteristic();
    let q2 = qe.ext().order() as u64;
    let exp = match h {
        "norm" => {
            return Ok(ExtToBase::Norm);
        }
        "gold" => {
            let (kpos, k) = args.required("k", end)?;
            gold_exponent(p, uint(kpos, k)?)
        }
        "inv" => q2 - 2,
        _ => match h.strip_prefix("tr") {
            Some(e) => e
                .parse::<u64>()
                .map_err(|_| Error::parse(hpos, format!("bad H `{h}`")))?,
            None => return Err(Error::parse(hpos, format!("unknown H `{h}`"))),
        },
    };
    let gamma = match args.take("gamma") {
        Some((gpos, g)) => ext_elem(qe, gpos, g)?,
        None => 1,
    };
    Ok(ExtToBase::TracePower { gamma, exp })
}

/// Parses a spec string and checks the family's parameter preconditions.
pub fn parse_spec(s: &str, qe: &QuadExtCtx) -> Result<FuncSpec> {
    let mut args = split_args(s)?;
    let end = s.len();
    let b = qe.base();
    let lin_or_x = |args: &mut Args, key: &str| match args.take(key) {
        Some((pos, v)) => linearized(b, pos, v),
        None => Ok(LinearizedPoly::identity()),
    };
    let elem_or_zero = |args: &mut Args, key: &str| match args.take(key) {
        Some((pos, v)) => base_elem(b, pos, v),
        None => Ok(0),
    };
    let spec = match args.family {
        "identity" => FuncSpec::Identity,
        "genlinh" => {
            let l = lin_or_x(&mut args, "L")?;
            let (pos, h) = args.required("h", end)?;
            FuncSpec::GenLinearH {
                l,
                h: inner(b, pos, h)?,
            }
        }
        "genlingold" => {
            let l = lin_or_x(&mut args, "L")?;
            let (pos, k) = args.required("k", end)?;
            FuncSpec::GenLinearGold {
                l,
                k: uint(pos, k)?,
                alpha: elem_or_zero(&mut args, "alpha")?,
            }
        }
        "sumprod" => {
            let (ipos, i) = args.required("i", end)?;
            let (jpos, j) = args.required("j", end)?;
            let (apos, alpha) = args.required("alpha", end)?;
            FuncSpec::SumProd {
                i: uint(ipos, i)?,
                j: uint(jpos, j)?,
                alpha: base_elem(b, apos, alpha)?,
            }
        }
        "goldpair" => {
            let (kpos, k) = args.required("k", end)?;
            FuncSpec::GoldPair {
                k: uint(kpos, k)?,
                gamma: elem_or_zero(&mut args, "gamma")?,
                l: lin_or_x(&mut args, "L")?,
            }
        }
        "prodlin" => {
            let gammas = match args.take("gammas") {
                None => Vec::new(),
                Some((pos, v)) => v
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| {
                        let (i, c) = t
                            .split_once(':')
                            .ok_or_else(|| Error::parse(pos, format!("expected i:gamma, got `{t}`")))?;
                        Ok((uint(pos, i.trim())?, base_elem(b, pos, c)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            FuncSpec::ProdLin {
                gammas,
                l: lin_or_x(&mut args, "L")?,
            }
        }
        "splitgh" => {
            let (gpos, g) = args.required("g", end)?;
            let (h1pos, h1) = args.required("h1", end)?;
            let h2 = match args.take("h2") {
                Some((pos, v)) => inner(b, pos, v)?,
                None => InnerFunc::Generic(Arc::new(vec![0; b.order() as usize])),
            };
            let (g2pos, gamma2) = args.required("gamma2", end)?;
            FuncSpec::SplitGH {
                g: inner(b, gpos, g)?,
                h1: inner(b, h1pos, h1)?,
                h2,
                l1: lin_or_x(&mut args, "L1")?,
                l2: lin_or_x(&mut args, "L2")?,
                gamma1: elem_or_zero(&mut args, "gamma1")?,
                gamma2: base_elem(b, g2pos, gamma2)?,
            }
        }
        "traceinv" => {
            let (pos, g) = args.required("gamma", end)?;
            FuncSpec::TraceInverse {
                gamma: ext_elem(qe, pos, g)?,
            }
        }
        "tracext" => FuncSpec::TraceFromExt {
            h: ext_h(qe, &mut args, end)?,
        },
        "normfirst" => FuncSpec::NormFirst {
            h: ext_h(qe, &mut args, end)?,
        },
        other => return Err(Error::parse(0, format!("unknown family `{other}`"))),
    };
    args.finish()?;
    spec.validate(qe)?;
    Ok(spec)
}
