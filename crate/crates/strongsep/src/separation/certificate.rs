//! Certificates: a verdict with the data behind it, and a list of checks
//! that can be recomputed from the recorded curvettes alone.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{Decision, HypothesisStatus, Instance, OverD, PipelineOutcome, Verdict};
use crate::branches::Branch;
use crate::error::Result;
use crate::exp::{QExp, Val};
use crate::mpoly::MPoly;
use crate::series::Series;
use crate::valuation::{Curvette, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Alpha,
    Beta,
}

impl Point {
    pub fn name(self) -> &'static str {
        match self {
            Point::Alpha => "alpha",
            Point::Beta => "beta",
        }
    }

    pub fn parse(s: &str) -> Option<Point> {
        match s {
            "alpha" => Some(Point::Alpha),
            "beta" => Some(Point::Beta),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
        }
    }

    pub fn parse(s: &str) -> Option<CmpOp> {
        match s {
            "<" => Some(CmpOp::Lt),
            "<=" => Some(CmpOp::Le),
            "=" => Some(CmpOp::Eq),
            _ => None,
        }
    }

    fn holds<T: Ord>(self, a: &T, b: &T) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Eq => a == b,
        }
    }
}

/// One recomputable fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    /// `ν(poly) = value` at the point.
    Nu { point: Point, poly: MPoly, value: Val<QExp> },
    /// `ν(z − φ) = value` at the point.
    BranchNu { point: Point, phi: Series<QExp>, value: Val<QExp> },
    /// Sign of `poly` at the point.
    Sign { point: Point, poly: MPoly, sign: Ordering },
    Cmp { a: Val<QExp>, op: CmpOp, b: Val<QExp> },
}

fn sign_char(s: Ordering) -> char {
    match s {
        Ordering::Greater => '+',
        Ordering::Less => '-',
        Ordering::Equal => '0',
    }
}

impl Check {
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Check::Nu { point, poly, value } => {
                format!("check nu {} [{}] = {}", point.name(), poly.display_with(names), value)
            }
            Check::BranchNu { point, phi, value } => format!("check branch {} [{}] = {}", point.name(), phi, value),
            Check::Sign { point, poly, sign } => {
                format!("check sign {} [{}] = {}", point.name(), poly.display_with(names), sign_char(*sign))
            }
            Check::Cmp { a, op, b } => format!("check cmp {} {} {}", a, op.symbol(), b),
        }
    }

    /// Recomputes the check.
    pub fn verify(&self, alpha: &Curvette<QExp>, beta: &Curvette<QExp>) -> Result<bool> {
        let pt = |p: &Point| -> Result<Curvette<QExp>> {
            match p {
                Point::Alpha => alpha.normalized(),
                Point::Beta => beta.normalized(),
            }
        };
        Ok(match self {
            Check::Nu { point, poly, value } => poly.eval_series(&pt(point)?.point()).order()? == *value,
            Check::BranchNu { point, phi, value } => pt(point)?.z.sub(phi).order()? == *value,
            Check::Sign { point, poly, sign } => poly.eval_series(&pt(point)?.point()).sign()? == *sign,
            Check::Cmp { a, op, b } => op.holds(a, b),
        })
    }
}

/// Verdict, instance data, informational entries and checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub names: Vec<String>,
    pub f: MPoly,
    pub alpha: Curvette<QExp>,
    pub beta: Curvette<QExp>,
    pub entries: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl Certificate {
    pub fn empty(nvars: usize) -> Certificate {
        Certificate {
            verdict: Verdict::Undecided,
            names: MPoly::default_names(nvars),
            f: MPoly::zero(nvars),
            alpha: Curvette::new(Vec::new(), Series::zero()),
            beta: Curvette::new(Vec::new(), Series::zero()),
            entries: Vec::new(),
            checks: Vec::new(),
        }
    }
}

pub const HEADER: &str = "strongsep certificate 1";

fn write_curvette(f: &mut fmt::Formatter<'_>, label: &str, names: &[String], g: &Curvette<QExp>) -> fmt::Result {
    for (n, s) in names.iter().zip(g.point()) {
        writeln!(f, "{} {} = {}", label, n, s)?;
    }
    for (gen, s) in &g.signs {
        writeln!(f, "{} sign {} = {}", label, gen, if *s == Sign::Pos { '+' } else { '-' })?;
    }
    Ok(())
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", HEADER)?;
        writeln!(f, "verdict = {}", self.verdict.name())?;
        writeln!(f, "vars = {}", self.names.join(" "))?;
        writeln!(f, "f = {}", self.f.display_with(&self.names))?;
        write_curvette(f, "alpha", &self.names, &self.alpha)?;
        write_curvette(f, "beta", &self.names, &self.beta)?;
        for (k, v) in &self.entries {
            writeln!(f, "note {} = {}", k, v)?;
        }
        for c in &self.checks {
            writeln!(f, "{}", c.render(&self.names))?;
        }
        Ok(())
    }
}

/// Recomputes every check: `(rendered check, holds)`.
pub fn replay(cert: &Certificate) -> Result<Vec<(String, bool)>> {
    cert.checks
        .iter()
        .map(|c| Ok((c.render(&cert.names), c.verify(&cert.alpha, &cert.beta)?)))
        .collect()
}

fn sign_checks(out: &mut Vec<Check>, g: &MPoly, a: &Curvette<QExp>, b: &Curvette<QExp>) -> Result<()> {
    for (p, c) in [(Point::Alpha, a), (Point::Beta, b)] {
        let s = g.eval_series(&c.point());
        out.push(Check::Sign { point: p, poly: g.clone(), sign: s.sign()? });
        out.push(Check::Nu { point: p, poly: g.clone(), value: s.order()? });
    }
    Ok(())
}

/// A branch check when `ν(z − φ)` is visible in the known part of `φ`.
fn branch_check(out: &mut Vec<Check>, p: Point, br: &Branch, g: &Curvette<QExp>) {
    let phi = match &br.tail {
        Some(t) => br.phi.truncate(&Val::Fin(t.exp)),
        None => br.phi.clone(),
    };
    if let (Ok(v), Ok(w)) = (g.z.sub(&phi).order(), br.contact_with(&g.z)) {
        if v == w {
            out.push(Check::BranchNu { point: p, phi, value: v });
        }
    }
}

fn over_d_checks(out: &mut Vec<Check>, h: &OverD, a: &Curvette<QExp>, b: &Curvette<QExp>) {
    branch_check(out, Point::Alpha, &h.alpha, a);
    branch_check(out, Point::Beta, &h.beta, b);
}

pub(super) fn build(inst: &Instance, d: &Decision) -> Result<Certificate> {
    let names = inst.names();
    let (a, b) = inst.validate()?;
    let mut entries: Vec<(String, String)> = Vec::new();
    let mut checks = Vec::new();
    let mut e = |k: &str, v: String| entries.push((k.to_string(), v));

    let gp = &d.good_position;
    e("good.samples", gp.samples.len().to_string());
    for c in &gp.counts {
        e(
            &format!("good.{}", c.label.replace(' ', "_")),
            format!("distinct {:?} with-multiplicity {:?} constant {}", c.distinct, c.with_multiplicity, c.constant),
        );
    }
    e("good.discriminant-constant", gp.disc_constant.to_string());
    e("good.alpha-inside", gp.alpha_inside.to_string());
    e("good.beta-inside", gp.beta_inside.to_string());
    e("good.verified", gp.verified.to_string());

    if let Some(bands) = &d.bands {
        e("band.alpha", format!("{} of {}", bands.alpha, bands.real_alpha));
        e("band.beta", format!("{} of {}", bands.beta, bands.real_beta));
        e("band.same", bands.same.to_string());
    }

    if let Some(h) = &d.hypothesis {
        e("hypothesis.degree-bound", h.degree_bound.to_string());
        e(
            "hypothesis.status",
            match &h.status {
                HypothesisStatus::Violated(v) => format!("violated ({:?})", v),
                HypothesisStatus::PlausibleUpToDegree(k) => format!("plausible up to degree {}", k),
            },
        );
        sign_checks(&mut checks, &inst.f, &a, &b)?;
        for (label, s, pt) in [("alpha", &h.mu_alpha, Point::Alpha), ("beta", &h.mu_beta, Point::Beta)] {
            if let Some(sc) = s {
                e(&format!("hypothesis.mu-{}", label), format!("{} via {}", sc.value, sc.poly.display_with(&names)));
                sign_checks(&mut checks, &sc.poly, &a, &b)?;
                let nu_f = if pt == Point::Alpha { &h.nu_alpha } else { &h.nu_beta };
                let v = Val::Fin(sc.value);
                if v < *nu_f {
                    checks.push(Check::Cmp { a: v, op: CmpOp::Lt, b: nu_f.clone() });
                } else {
                    checks.push(Check::Cmp { a: nu_f.clone(), op: CmpOp::Le, b: v });
                }
            }
        }
    }

    if let Some(p) = &d.pipeline {
        for (i, lv) in p.levels.iter().enumerate() {
            e(&format!("pipeline.{}.f", i), lv.f.display_with(&names));
            e(&format!("pipeline.{}.note", i), lv.note.clone());
            if let (Some(ta), Some(tb)) = (lv.theta_alpha, lv.theta_beta) {
                e(&format!("pipeline.{}.theta", i), format!("{} at alpha, {} at beta", ta, tb));
            }
            if let Some(d2) = &lv.deg2 {
                e(
                    &format!("pipeline.{}.degree-two", i),
                    format!("nu(f') = {} nu(f) = {} roots {:?} holds {}", d2.nu_f_prime, d2.nu_f, d2.nu_roots.iter().map(|v| v.to_string()).collect::<Vec<_>>(), d2.holds),
                );
            }
            if let Some(c) = &lv.chain {
                for ch in &c.checks {
                    e(&format!("pipeline.{}.claim.{}.{}", i, ch.step, ch.item), format!("{} [{}]", ch.text, if ch.holds { "ok" } else { "FAILS" }));
                }
                for st in &c.steps {
                    over_d_checks(&mut checks, &st.g1, &a, &b);
                    over_d_checks(&mut checks, &st.g2, &a, &b);
                    if let Some(h) = &st.h_tilde {
                        over_d_checks(&mut checks, h, &a, &b);
                    }
                }
            }
            if let Some(h) = &lv.separating {
                e(&format!("pipeline.{}.separating", i), format!("f^({}) root {}: {} | {}", h.k, h.index, h.alpha, h.beta));
                over_d_checks(&mut checks, h, &a, &b);
            }
        }
        match &p.outcome {
            PipelineOutcome::Same { reason } => e("pipeline.outcome", format!("same: {}", reason)),
            PipelineOutcome::Witness { poly, depth, nu_alpha, nu_beta, below_f } => {
                e(
                    "pipeline.outcome",
                    format!("witness at depth {}: {} (values {}, {}; below f: {})", depth, poly.display_with(&names), nu_alpha, nu_beta, below_f),
                );
                sign_checks(&mut checks, poly, &a, &b)?;
            }
            PipelineOutcome::Broken { reason } => e("pipeline.outcome", format!("broken: {}", reason)),
        }
    }
    for n in &d.notes {
        e("decision", n.clone());
    }
    Ok(Certificate {
        verdict: d.verdict,
        names,
        f: inst.f.clone(),
        alpha: inst.alpha.clone(),
        beta: inst.beta.clone(),
        entries,
        checks,
    })
}

