//! The chain of real branches `g_{2i,1}, g_{2i,2}, h̃_{2i+1}` of successive
//! derivatives, each separating the two curvettes, ending at a real branch of
//! `f^{(θ)}` between them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{rolle_select, Ctx, OverD, RolleReport, Side};
use crate::branches::Branch;
use crate::error::{Error, Result};
use crate::exp::{QExp, Val};
use crate::mpoly::MPoly;
use crate::valuation::Curvette;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub step: usize,
    /// Claim item, 1 to 4.
    pub item: u8,
    pub text: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ClaimStep {
    pub i: usize,
    /// Real branches of `f^{(2i)}`.
    pub g1: OverD,
    pub g2: OverD,
    /// Real branch of `f^{(2i+1)}` between `g1` and `g2`, when `2i + 1 ≤ θ`.
    pub h_tilde: Option<OverD>,
    /// Privileged branches of `f^{(2i+1)}` at each point, with their value.
    pub h_alpha: Option<(Branch, Val<QExp>)>,
    pub h_beta: Option<(Branch, Val<QExp>)>,
    /// Rolle steps producing `g1` (at α) and `g2` (at β) for `i > 0`.
    pub rolle: Vec<RolleReport>,
}

#[derive(Clone, Debug)]
pub struct ClaimChain {
    pub theta: usize,
    pub steps: Vec<ClaimStep>,
    pub checks: Vec<ChainCheck>,
    /// Real branch of `f^{(θ)}` between the points.
    pub separating: OverD,
}

fn nu(b: &Branch, g: &Curvette<QExp>) -> Result<Val<QExp>> {
    b.contact_with(&g.z)
}

struct Checks {
    list: Vec<ChainCheck>,
}

impl Checks {
    fn push(&mut self, step: usize, item: u8, holds: bool, text: String) -> Result<()> {
        self.list.push(ChainCheck { step, item, text: text.clone(), holds });
        if holds {
            Ok(())
        } else {
            Err(Error::ChainBroken { step, reason: format!("({}) fails: {}", item, text) })
        }
    }
}

/// `z` lies strictly on one side of all `bs`, which are weakly ordered
/// away from it.
fn ordered_from(z: &crate::series::Series<QExp>, bs: &[&Branch]) -> Result<bool> {
    let s = bs[0].compare_series(z)?;
    if s == Ordering::Equal {
        return Ok(false);
    }
    for w in bs.windows(2) {
        if w[0].compare(w[1])? == s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Claim item (1): at α the branches `g1, h̃, g2` sit in this order moving
/// away from `z_α`, at β in the reverse order moving away from `z_β`.
fn item1(ctx: &Ctx, g1: &OverD, h: Option<&OverD>, g2: &OverD) -> Result<bool> {
    let at_a = vec_of(&g1.alpha, h.map(|x| &x.alpha), &g2.alpha);
    let at_b = vec_of(&g2.beta, h.map(|x| &x.beta), &g1.beta);
    let a = ordered_from(&ctx.pt(Side::Alpha).z, &at_a)?;
    let b = ordered_from(&ctx.pt(Side::Beta).z, &at_b)?;
    let sa = at_a[0].compare_series(&ctx.pt(Side::Alpha).z)?;
    let sb = at_b[0].compare_series(&ctx.pt(Side::Beta).z)?;
    Ok(a && b && sa == sb.reverse())
}

fn vec_of<'a>(x: &'a Branch, m: Option<&'a Branch>, y: &'a Branch) -> Vec<&'a Branch> {
    let mut v = Vec::with_capacity(3);
    v.push(x);
    if let Some(m) = m {
        v.push(m);
    }
    v.push(y);
    v
}

fn between_pair(g1: &OverD, h: &OverD, g2: &OverD) -> Result<bool> {
    let inside = |a: &Branch, m: &Branch, b: &Branch| -> Result<bool> {
        let x = a.compare(m)?;
        let y = m.compare(b)?;
        Ok(x != Ordering::Greater && y != Ordering::Greater || x != Ordering::Less && y != Ordering::Less)
    };
    Ok(inside(&g1.alpha, &h.alpha, &g2.alpha)? && inside(&g1.beta, &h.beta, &g2.beta)?)
}

/// Claim item (4) for a candidate `h̃`, as two strings and truth values.
fn item4(ctx: &Ctx, g1: &OverD, h: &OverD, g2: &OverD) -> Result<[(bool, String); 2]> {
    let a = ctx.pt(Side::Alpha);
    let b = ctx.pt(Side::Beta);
    let (x1, xh, x2) = (nu(&g1.alpha, a)?, nu(&h.alpha, a)?, nu(&g2.alpha, a)?);
    let (y1, yh, y2) = (nu(&g1.beta, b)?, nu(&h.beta, b)?, nu(&g2.beta, b)?);
    Ok([
        (x1 >= xh && xh == x2, format!("nu_alpha(g1) = {} >= nu_alpha(h) = {} = nu_alpha(g2) = {}", x1, xh, x2)),
        (y2 >= yh && yh == y1, format!("nu_beta(g2) = {} >= nu_beta(h) = {} = nu_beta(g1) = {}", y2, yh, y1)),
    ])
}

fn privileged(ctx: &mut Ctx, k: usize, s: Side) -> Result<(Branch, Val<QExp>)> {
    let e = ctx.exp(k, s)?;
    let m = e.values.iter().max().cloned().ok_or(Error::NoRealRoot)?;
    let i = e.values.iter().position(|v| *v == m).unwrap();
    Ok((e.branches[i].clone(), m))
}

/// Rolle step on `f^{(k−1)}` at one point, returning the index of the
/// produced branch among the sorted real branches of `f^{(k)}`.
fn rolle_in(ctx: &mut Ctx, k: usize, s: Side, h1: &Branch, h2: &Branch) -> Result<RolleReport> {
    let mut e = ctx.exp(k, s)?;
    let mut need = QExp::from_integer(1);
    for _ in 0..4 {
        let cands: Vec<Branch> = e.real.iter().map(|&i| e.branches[i].clone()).collect();
        match rolle_select(&cands, h1, h2, ctx.pt(s)) {
            Err(Error::Indeterminate) => {
                need = need * QExp::from_integer(2) + h1.certified_order().finite().copied().unwrap_or(need);
                e = ctx.refine(k, s, need)?;
            }
            r => return r,
        }
    }
    Err(Error::Indeterminate)
}

/// Builds the chain for `i = 0, …, ⌊θ/2⌋`, checking every claim item;
/// a failed item is reported as [`Error::ChainBroken`].
pub fn build_claim_chain(
    f: &MPoly,
    a: &Curvette<QExp>,
    b: &Curvette<QExp>,
    theta: usize,
    denom_bound: i64,
) -> Result<ClaimChain> {
    let a = a.normalized()?;
    let b = b.normalized()?;
    let d = f.z_degree();
    if theta == 0 || theta > d {
        return Err(Error::InvalidInput(format!("theta must lie in 1..={}", d)));
    }
    let mut ctx = Ctx::new(f, &a, &b, denom_bound);
    let mut checks = Checks { list: Vec::new() };
    ctx.real_count(0).map_err(|e| Error::ChainBroken { step: 0, reason: format!("{}", e) })?;
    let pa = ctx.exp(0, Side::Alpha)?.band(&a.z)?;
    let pb = ctx.exp(0, Side::Beta)?.band(&b.z)?;
    if pa == pb {
        return Err(Error::ChainBroken { step: 0, reason: "no real branch of f separates the points".into() });
    }
    let (i1, i2) = if pa < pb { (pa, pb - 1) } else { (pa - 1, pb) };
    let mut g1 = ctx.over_d(0, i1)?;
    let mut g2 = ctx.over_d(0, i2)?;
    let mut steps: Vec<ClaimStep> = Vec::new();
    for i in 0..=theta / 2 {
        let mut rolle = Vec::new();
        if i > 0 {
            let k = 2 * i;
            let prev = steps.last().unwrap();
            let ht = prev.h_tilde.clone().unwrap();
            let (ha, va) = prev.h_alpha.clone().unwrap();
            let (hb, vb) = prev.h_beta.clone().unwrap();
            let nha = nu(&ht.alpha, &a)?;
            let nhb = nu(&ht.beta, &b)?;
            checks.push(i, 2, nha < va, format!("nu_alpha(h~) = {} < nu_alpha(h_alpha) = {}", nha, va))?;
            checks.push(i, 2, nhb < vb, format!("nu_beta(h~) = {} < nu_beta(h_beta) = {}", nhb, vb))?;
            ctx.real_count(k).map_err(|e| Error::ChainBroken { step: i, reason: format!("{}", e) })?;
            let ra = rolle_in(&mut ctx, k, Side::Alpha, &ht.alpha, &ha)
                .map_err(|e| Error::ChainBroken { step: i, reason: format!("Rolle at alpha: {}", e) })?;
            let rb = rolle_in(&mut ctx, k, Side::Beta, &ht.beta, &hb)
                .map_err(|e| Error::ChainBroken { step: i, reason: format!("Rolle at beta: {}", e) })?;
            g1 = ctx.over_d(k, ra.index)?;
            g2 = ctx.over_d(k, rb.index)?;
            let (x1, x2) = (nu(&g1.alpha, &a)?, nu(&g2.alpha, &a)?);
            let (y1, y2) = (nu(&g1.beta, &b)?, nu(&g2.beta, &b)?);
            checks.push(
                i,
                2,
                x2 <= x1 && x1 == nha,
                format!("nu_alpha(g2) = {} <= nu_alpha(g1) = {} = nu_alpha(h~) = {}", x2, x1, nha),
            )?;
            checks.push(
                i,
                2,
                y1 <= y2 && y2 == nhb,
                format!("nu_beta(g1) = {} <= nu_beta(g2) = {} = nu_beta(h~) = {}", y1, y2, nhb),
            )?;
            rolle.push(ra);
            rolle.push(rb);
        }
        let mut step = ClaimStep { i, g1: g1.clone(), g2: g2.clone(), h_tilde: None, h_alpha: None, h_beta: None, rolle };
        let k = 2 * i + 1;
        if k <= theta {
            let n = ctx.real_count(k).map_err(|e| Error::ChainBroken { step: i, reason: format!("{}", e) })?;
            let mut chosen: Option<(OverD, [(bool, String); 2])> = None;
            for r in 0..n {
                let h = ctx.over_d(k, r)?;
                if !between_pair(&g1, &h, &g2)? {
                    continue;
                }
                let c4 = item4(&ctx, &g1, &h, &g2)?;
                let good = c4[0].0 && c4[1].0;
                if chosen.is_none() || good {
                    chosen = Some((h, c4));
                }
                if good {
                    break;
                }
            }
            let Some((h, c4)) = chosen else {
                return Err(Error::ChainBroken {
                    step: i,
                    reason: format!("no real branch of f^({}) between g1 and g2", k),
                });
            };
            let ok1 = item1(&ctx, &g1, Some(&h), &g2)?;
            checks.push(i, 1, ok1, "g1, h~, g2 ordered between the points".into())?;
            let pa = privileged(&mut ctx, k, Side::Alpha)?;
            let pb = privileged(&mut ctx, k, Side::Beta)?;
            checks.push(i, 3, true, format!("privileged values of f^({}): {} at alpha, {} at beta", k, pa.1, pb.1))?;
            let [c4a, c4b] = c4;
            checks.push(i, 4, c4a.0, c4a.1)?;
            checks.push(i, 4, c4b.0, c4b.1)?;
            step.h_tilde = Some(h);
            step.h_alpha = Some(pa);
            step.h_beta = Some(pb);
        } else {
            let ok1 = item1(&ctx, &g1, None, &g2)?;
            checks.push(i, 1, ok1, "g1, g2 ordered between the points".into())?;
        }
        steps.push(step);
    }
    let last = steps.last().unwrap();
    let separating = if theta % 2 == 1 { last.h_tilde.clone().unwrap() } else { last.g1.clone() };
    let sep = crate::branches::between_at(&separating.alpha, &a.z, &separating.beta, &b.z)?;
    checks.push(theta / 2, 1, sep, format!("real branch of f^({}) separates the points", theta))?;
    Ok(ClaimChain { theta, steps, checks: checks.list, separating })
}
