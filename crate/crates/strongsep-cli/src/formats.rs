//! Line-oriented input files and the certificate reader.
//!
//! Every file is a list of `key = value` lines; `#` starts a comment.

use std::cmp::Ordering;

use num_traits::ToPrimitive;

use strongsep::exp::{QExp, Val};
use strongsep::mpoly::MPoly;
use strongsep::scalar::Q;
use strongsep::separation::{BoxDomain, Certificate, Check, CmpOp, Instance, Point, Verdict, CERT_HEADER};
use strongsep::series::Series;
use strongsep::valuation::{Curvette, Sign};
use strongsep::zpoly::ZPoly;

use crate::eval::{check_names, mpoly, rational, series, zpoly, ExpSyntax, Scope};
use crate::expr::{parse, PResult, ParseError, Pos};

/// One non-blank line split at its first `=`.
#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub key: Vec<&'a str>,
    pub value: &'a str,
    /// Position of the first character of `value`.
    pub vpos: Pos,
    pub pos: Pos,
    pub raw: &'a str,
}

impl Line<'_> {
    fn expr(&self) -> PResult<crate::expr::Expr> {
        parse(self.value, self.vpos)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(self.pos, msg))
    }
}

fn strip_comment(s: &str) -> &str {
    match s.find('#') {
        Some(k) => &s[..k],
        None => s,
    }
}

/// Byte offset to 1-based column.
fn col(s: &str, byte: usize) -> usize {
    s[..byte].chars().count() + 1
}

/// Splits a line at its first `=`; lines without one are returned with an
/// empty key.
pub fn split_line(raw: &str, line: usize) -> Option<Line<'_>> {
    let body = strip_comment(raw);
    let start = body.len() - body.trim_start().len();
    if body.trim().is_empty() {
        return None;
    }
    let pos = Pos { line, col: col(raw, start) };
    Some(match body.find('=') {
        Some(k) => {
            let rest = &body[k + 1..];
            let lead = rest.len() - rest.trim_start().len();
            Line {
                key: body[..k].split_whitespace().collect(),
                value: rest.trim(),
                vpos: Pos { line, col: col(raw, k + 1 + lead) },
                pos,
                raw: body.trim(),
            }
        }
        None => Line { key: Vec::new(), value: body.trim(), vpos: pos, pos, raw: body.trim() },
    })
}

pub fn lines(src: &str) -> Vec<Line<'_>> {
    src.lines().enumerate().filter_map(|(k, l)| split_line(l, k + 1)).collect()
}

fn parse_names(l: &Line) -> PResult<Vec<String>> {
    let names: Vec<String> = l.value.split_whitespace().map(str::to_string).collect();
    check_names(&names, l.vpos)?;
    Ok(names)
}

fn sign(l: &Line) -> PResult<Sign> {
    match l.value {
        "+" => Ok(Sign::Pos),
        "-" => Ok(Sign::Neg),
        _ => Err(ParseError::new(l.vpos, "expected `+` or `-`")),
    }
}

/// Accumulates `label name = series` and `label sign t = ±` lines.
struct CurvetteBuilder<E: ExpSyntax> {
    coords: Vec<Option<Series<E>>>,
    signs: Vec<(String, Sign)>,
}

impl<E: ExpSyntax> CurvetteBuilder<E> {
    fn new(n: usize) -> Self {
        CurvetteBuilder { coords: vec![None; n], signs: Vec::new() }
    }

    /// `rest` is the key after the label.
    fn add(&mut self, l: &Line, rest: &[&str], names: &[String], scope: &mut Scope) -> PResult<()> {
        match rest {
            ["sign", g] => {
                self.signs.push((g.to_string(), sign(l)?));
                Ok(())
            }
            [v] => {
                let Some(k) = names.iter().position(|n| n == v) else {
                    return l.err(format!("unknown variable `{}`", v));
                };
                if self.coords[k].is_some() {
                    return l.err(format!("`{}` given twice", v));
                }
                self.coords[k] = Some(series(&l.expr()?, scope)?);
                Ok(())
            }
            _ => l.err(format!("unrecognized key `{}`", l.key.join(" "))),
        }
    }

    fn finish(self, label: &str, names: &[String], pos: Pos) -> PResult<Curvette<E>> {
        let mut pt = Vec::new();
        for (c, n) in self.coords.into_iter().zip(names) {
            match c {
                Some(s) => pt.push(s),
                None => return Err(ParseError::new(pos, format!("missing `{}{}`", label, n))),
            }
        }
        let z = pt.pop().expect("at least two names");
        Ok(Curvette { xs: pt, z, signs: self.signs })
    }
}

fn default_names() -> Vec<String> {
    MPoly::default_names(2)
}

fn end_pos(src: &str) -> Pos {
    Pos { line: src.lines().count().max(1), col: 1 }
}

/// `[lo, hi]`.
fn interval(l: &Line) -> PResult<(Q, Q)> {
    let v = l.value;
    let inner = v.strip_prefix('[').and_then(|s| s.strip_suffix(']'));
    let Some(inner) = inner else {
        return Err(ParseError::new(l.vpos, "expected `[lo, hi]`"));
    };
    let Some(k) = inner.find(',') else {
        return Err(ParseError::new(l.vpos, "expected `[lo, hi]`"));
    };
    let at = |off: usize| Pos { line: l.vpos.line, col: l.vpos.col + v[..off].chars().count() };
    let lo = rational(&parse(&inner[..k], at(1))?)?;
    let hi = rational(&parse(&inner[k + 1..], at(k + 2))?)?;
    Ok((lo, hi))
}

fn count(l: &Line) -> PResult<u64> {
    let n = rational(&l.expr()?)?;
    match n.is_integer().then(|| n.to_integer().to_u64()).flatten() {
        Some(k) => Ok(k),
        None => Err(ParseError::new(l.vpos, "expected a nonnegative integer")),
    }
}

/// An instance file for `separate`.
pub fn parse_instance(src: &str) -> PResult<(Instance, Option<i64>)> {
    let ls = lines(src);
    let mut names = default_names();
    for l in &ls {
        if l.key == ["vars"] {
            names = parse_names(l)?;
        }
    }
    let n = names.len();
    let mut scope = Scope::default();
    let mut f = None;
    let mut alpha = CurvetteBuilder::<QExp>::new(n);
    let mut beta = CurvetteBuilder::<QExp>::new(n);
    let mut boxes: Vec<Option<(Q, Q)>> = vec![None; n - 1];
    let (mut grid, mut degree, mut denom) = (None, None, None);
    let mut reductions = Vec::new();
    for l in &ls {
        match l.key.as_slice() {
            ["vars"] => {}
            ["f"] => f = Some(mpoly(&l.expr()?, &names, &mut scope)?),
            ["alpha", rest @ ..] => alpha.add(l, rest, &names, &mut scope)?,
            ["beta", rest @ ..] => beta.add(l, rest, &names, &mut scope)?,
            ["box", v] => match names[..n - 1].iter().position(|x| x == v) {
                Some(k) => boxes[k] = Some(interval(l)?),
                None => return l.err(format!("`{}` is not a base variable", v)),
            },
            ["grid"] => grid = Some(count(l)? as usize),
            ["degree-bound"] => degree = Some(count(l)? as u32),
            ["denom-bound"] => denom = Some(count(l)? as i64),
            ["reduction"] => reductions.push(mpoly(&l.expr()?, &names, &mut scope)?),
            _ => return l.err(format!("unrecognized line `{}`", l.raw)),
        }
    }
    let end = end_pos(src);
    let f = f.ok_or_else(|| ParseError::new(end, "missing `f = …`"))?;
    let alpha = alpha.finish("alpha ", &names, end)?;
    let beta = beta.finish("beta ", &names, end)?;
    let (mut lo, mut hi) = (Vec::new(), Vec::new());
    for (b, v) in boxes.into_iter().zip(&names) {
        let (a, c) = b.ok_or_else(|| ParseError::new(end, format!("missing `box {} = [lo, hi]`", v)))?;
        lo.push(a);
        hi.push(c);
    }
    let domain = BoxDomain::new(lo, hi).map_err(|e| ParseError::new(end, e.to_string()))?;
    let mut inst = Instance::new(f, alpha, beta, domain);
    if let Some(g) = grid {
        inst.grid = g;
    }
    if let Some(d) = degree {
        inst.degree_bound = d;
    }
    inst.reductions = reductions;
    Ok((inst, denom))
}

/// `g = …` lines (polynomials in `z` over series in `t`), plus an optional
/// `z = …` curvette line.
pub struct ZInput {
    pub gs: Vec<ZPoly<QExp>>,
    pub z: Option<Series<QExp>>,
}

pub fn parse_zinput(src: &str) -> PResult<ZInput> {
    let mut scope = Scope::default();
    let mut out = ZInput { gs: Vec::new(), z: None };
    for l in lines(src) {
        match l.key.as_slice() {
            ["g"] => out.gs.push(zpoly(&l.expr()?, true, &mut scope)?),
            ["z"] if out.z.is_none() => out.z = Some(series(&l.expr()?, &mut scope)?),
            [] => out.gs.push(zpoly(&l.expr()?, true, &mut scope)?),
            _ => return l.err(format!("unrecognized line `{}`", l.raw)),
        }
    }
    if out.gs.is_empty() {
        return Err(ParseError::new(end_pos(src), "no polynomial given"));
    }
    Ok(out)
}

/// `f = …` lines and a curvette given by `name = series` lines.
pub struct ValInput<E: ExpSyntax> {
    pub names: Vec<String>,
    pub fs: Vec<MPoly>,
    pub gamma: Curvette<E>,
}

pub fn parse_valinput<E: ExpSyntax>(src: &str) -> PResult<ValInput<E>> {
    let ls = lines(src);
    let mut names = default_names();
    for l in &ls {
        if l.key == ["vars"] {
            names = parse_names(l)?;
        }
    }
    let mut scope = Scope::default();
    let mut fs = Vec::new();
    let mut gamma = CurvetteBuilder::<E>::new(names.len());
    for l in &ls {
        match l.key.as_slice() {
            ["vars"] => {}
            ["f"] => fs.push(mpoly(&l.expr()?, &names, &mut scope)?),
            rest @ ([_] | ["sign", _]) => gamma.add(l, rest, &names, &mut scope)?,
            _ => return l.err(format!("unrecognized line `{}`", l.raw)),
        }
    }
    let end = end_pos(src);
    if fs.is_empty() {
        return Err(ParseError::new(end, "no `f = …` line"));
    }
    let gamma = gamma.finish("", &names, end)?;
    Ok(ValInput { names, fs, gamma })
}

fn val(s: &str, pos: Pos) -> PResult<Val<QExp>> {
    if s == "inf" {
        return Ok(Val::Inf);
    }
    Ok(Val::Fin(QExp::from_expr(&parse(s, pos)?)?))
}

fn sign_of(s: &str, pos: Pos) -> PResult<Ordering> {
    match s {
        "+" => Ok(Ordering::Greater),
        "-" => Ok(Ordering::Less),
        "0" => Ok(Ordering::Equal),
        _ => Err(ParseError::new(pos, "expected `+`, `-` or `0`")),
    }
}

/// `check …` lines.
fn parse_check(raw: &str, line: usize, lead: usize, names: &[String], scope: &mut Scope) -> PResult<Check> {
    let at = |byte: usize| Pos { line, col: lead + raw[..byte].chars().count() + 1 };
    let body = raw.strip_prefix("check ").ok_or_else(|| ParseError::new(at(0), "expected `check`"))?;
    let off = raw.len() - body.len();
    let mut words = body.splitn(3, ' ');
    let kind = words.next().unwrap_or("");
    if kind == "cmp" {
        let rest: Vec<&str> = body[4..].split_whitespace().collect();
        let [a, op, b] = rest.as_slice() else {
            return Err(ParseError::new(at(off), "expected `check cmp a op b`"));
        };
        let op = CmpOp::parse(op).ok_or_else(|| ParseError::new(at(off), format!("unknown comparison `{}`", op)))?;
        return Ok(Check::Cmp { a: val(a, at(off + 4))?, op, b: val(b, at(off + 4))? });
    }
    let point = words.next().unwrap_or("");
    let pt = Point::parse(point).ok_or_else(|| ParseError::new(at(off), format!("unknown point `{}`", point)))?;
    let rest = words.next().unwrap_or("");
    let roff = raw.len() - rest.len();
    let (Some(inner), Some(close)) = (rest.strip_prefix('['), rest.rfind("] = ")) else {
        return Err(ParseError::new(at(roff), "expected `[…] = value`"));
    };
    let text = &inner[..close - 1];
    let value = &rest[close + 4..];
    let tpos = at(roff + 1);
    let vpos = at(roff + close + 4);
    Ok(match kind {
        "nu" => Check::Nu { point: pt, poly: mpoly(&parse(text, tpos)?, names, scope)?, value: val(value, vpos)? },
        "sign" => Check::Sign { point: pt, poly: mpoly(&parse(text, tpos)?, names, scope)?, sign: sign_of(value, vpos)? },
        "branch" => Check::BranchNu { point: pt, phi: series(&parse(text, tpos)?, scope)?, value: val(value, vpos)? },
        _ => return Err(ParseError::new(at(off), format!("unknown check `{}`", kind))),
    })
}

pub fn parse_certificate(src: &str) -> PResult<Certificate> {
    let mut it = src.lines().enumerate().map(|(k, l)| (k + 1, l)).filter(|(_, l)| !strip_comment(l).trim().is_empty());
    match it.next() {
        Some((_, l)) if l.trim() == CERT_HEADER => {}
        Some((k, _)) => return Err(ParseError::new(Pos { line: k, col: 1 }, format!("expected `{}`", CERT_HEADER))),
        None => return Err(ParseError::new(Pos { line: 1, col: 1 }, "empty certificate")),
    }
    let mut cert = Certificate::empty(2);
    let mut scope = Scope::default();
    let mut verdict = None;
    let mut f = None;
    let mut alpha: Option<CurvetteBuilder<QExp>> = None;
    let mut beta: Option<CurvetteBuilder<QExp>> = None;
    for (k, raw) in it {
        let lead = raw.len() - raw.trim_start().len();
        if raw.trim_start().starts_with("check ") {
            let c = parse_check(raw.trim(), k, lead, &cert.names, &mut scope)?;
            cert.checks.push(c);
            continue;
        }
        if let Some(rest) = raw.trim_start().strip_prefix("note ") {
            let Some((key, value)) = rest.split_once(" = ") else {
                return Err(ParseError::new(Pos { line: k, col: lead + 1 }, "expected `note key = value`"));
            };
            cert.entries.push((key.to_string(), value.to_string()));
            continue;
        }
        let Some(l) = split_line(raw, k) else { continue };
        let n = cert.names.len();
        match l.key.as_slice() {
            ["verdict"] => {
                verdict = Some(Verdict::parse(l.value).ok_or_else(|| ParseError::new(l.vpos, format!("unknown verdict `{}`", l.value)))?)
            }
            ["vars"] => {
                if f.is_some() || alpha.is_some() || beta.is_some() {
                    return l.err("`vars` must precede f and the curvettes");
                }
                cert.names = parse_names(&l)?;
            }
            ["f"] => f = Some(mpoly(&l.expr()?, &cert.names, &mut scope)?),
            ["alpha", rest @ ..] => alpha.get_or_insert_with(|| CurvetteBuilder::new(n)).add(&l, rest, &cert.names, &mut scope)?,
            ["beta", rest @ ..] => beta.get_or_insert_with(|| CurvetteBuilder::new(n)).add(&l, rest, &cert.names, &mut scope)?,
            _ => return l.err(format!("unrecognized line `{}`", l.raw)),
        }
    }
    let end = end_pos(src);
    cert.verdict = verdict.ok_or_else(|| ParseError::new(end, "missing `verdict = …`"))?;
    cert.f = f.ok_or_else(|| ParseError::new(end, "missing `f = …`"))?;
    let n = cert.names.len();
    cert.alpha = alpha.unwrap_or_else(|| CurvetteBuilder::new(n)).finish("alpha ", &cert.names, end)?;
    cert.beta = beta.unwrap_or_else(|| CurvetteBuilder::new(n)).finish("beta ", &cert.names, end)?;
    Ok(cert)
}

/// Certificate note with the given key.
pub fn note<'a>(cert: &'a Certificate, key: &str) -> Option<&'a str> {
    cert.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}
