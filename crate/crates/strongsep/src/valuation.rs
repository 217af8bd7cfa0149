//! Curvettes and the valuations they induce: `ν_γ` on polynomials and
//! branches, the complex extension, privileged factors, the `ν_s` calculus
//! and recentering `z ↦ z − φ`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::branches::{default_target, newton_puiseux_with, Branch, NpConfig, DEFAULT_DENOM_BOUND};
use crate::error::{Error, Result};
use crate::exp::{Exponent, QExp, Val};
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::Series;
use crate::zpoly::{binomial, require_monic, ZPoly};

/// Sign of a generator of the value group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

/// A point `(x₁(t), …, xₙ(t), z(t))` given by series in `t → 0⁺`, with
/// optional sign data for the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curvette<E: Exponent> {
    pub xs: Vec<Series<E>>,
    pub z: Series<E>,
    pub signs: Vec<(String, Sign)>,
}

impl<E: Exponent> Curvette<E> {
    pub fn new(xs: Vec<Series<E>>, z: Series<E>) -> Curvette<E> {
        Curvette { xs, z, signs: Vec::new() }
    }

    /// All coordinates, `z` last.
    pub fn point(&self) -> Vec<Series<E>> {
        let mut v = self.xs.clone();
        v.push(self.z.clone());
        v
    }

    /// Same base point, different `z`.
    pub fn with_z(&self, z: Series<E>) -> Curvette<E> {
        Curvette { xs: self.xs.clone(), z, signs: self.signs.clone() }
    }
}

impl Curvette<QExp> {
    /// Applies the sign data: `sign t = −` substitutes `t ↦ −t`, which needs
    /// integer exponents.
    pub fn normalized(&self) -> Result<Curvette<QExp>> {
        let mut neg = false;
        for (g, s) in &self.signs {
            if g != "t" {
                return Err(Error::InvalidInput(alloc::format!("unknown generator `{}`", g)));
            }
            neg = *s == Sign::Neg;
        }
        if !neg {
            return Ok(Curvette::new(self.xs.clone(), self.z.clone()));
        }
        let flip = |s: &Series<QExp>| -> Result<Series<QExp>> {
            let mut terms = Vec::new();
            for (e, c) in s.terms() {
                if !e.is_integer() {
                    return Err(Error::InvalidInput("sign t = - needs integer exponents".into()));
                }
                let c = if e.to_integer() % 2 == 0 { c.clone() } else { -c };
                terms.push((*e, c));
            }
            if let Val::Fin(p) = s.prec() {
                if !p.is_integer() {
                    return Err(Error::InvalidInput("sign t = - needs integer exponents".into()));
                }
            }
            Ok(Series::new(terms, s.prec().clone()))
        };
        let xs = self.xs.iter().map(flip).collect::<Result<Vec<_>>>()?;
        Ok(Curvette::new(xs, flip(&self.z)?))
    }

    /// `t ↦ t^a`.
    pub fn reparam(&self, a: i64) -> Curvette<QExp> {
        Curvette {
            xs: self.xs.iter().map(|s| s.reparam(a)).collect(),
            z: self.z.reparam(a),
            signs: self.signs.clone(),
        }
    }

    /// Common denominator of all exponents.
    pub fn denominator(&self) -> i64 {
        self.xs.iter().chain(core::iter::once(&self.z)).fold(1, |acc, s| num_integer::lcm(acc, s.denominator()))
    }

    /// Largest exponent mentioned by the `z`-series (terms or precision).
    fn z_extent(&self) -> QExp {
        let last = self.z.terms().last().map(|(e, _)| *e).unwrap_or_else(QExp::zero);
        match self.z.prec() {
            Val::Fin(p) => core::cmp::max(last, *p),
            Val::Inf => last,
        }
    }
}

impl<E: Exponent> fmt::Display for Curvette<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = MPoly::default_names(self.xs.len() + 1);
        for (n, s) in names.iter().zip(self.point()) {
            writeln!(f, "{} = {}", n, s)?;
        }
        for (g, s) in &self.signs {
            writeln!(f, "sign {} = {}", g, if *s == Sign::Pos { '+' } else { '-' })?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// ν_γ

/// Objects valued at a curvette.
pub trait NuGamma<E: Exponent> {
    fn nu_gamma(&self, g: &Curvette<E>) -> Result<Val<E>>;
}

impl<E: Exponent> NuGamma<E> for Series<E> {
    fn nu_gamma(&self, _: &Curvette<E>) -> Result<Val<E>> {
        self.order()
    }
}

impl<E: Exponent> NuGamma<E> for ZPoly<E> {
    fn nu_gamma(&self, g: &Curvette<E>) -> Result<Val<E>> {
        self.eval(&g.z).order()
    }
}

impl<E: Exponent> NuGamma<E> for MPoly {
    fn nu_gamma(&self, g: &Curvette<E>) -> Result<Val<E>> {
        self.eval_series(&g.point()).order()
    }
}

/// `ν_γ(z − φ)`; for a complex branch this is the extended value.
impl NuGamma<QExp> for Branch {
    fn nu_gamma(&self, g: &Curvette<QExp>) -> Result<Val<QExp>> {
        self.contact_with(&g.z)
    }
}

pub fn nu_gamma<E: Exponent, T: NuGamma<E>>(x: &T, g: &Curvette<E>) -> Result<Val<E>> {
    x.nu_gamma(g)
}

/// Sign of `f` at the curvette, for `t → 0⁺` after applying sign data.
pub fn sign_at(f: &MPoly, g: &Curvette<QExp>) -> Result<Ordering> {
    f.eval_series(&g.normalized()?.point()).sign()
}

// ---------------------------------------------------------------------------
// complex factors

/// A complex polynomial written as `Re h + i·Im h` with real parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReImPoly {
    pub re: ZPoly<QExp>,
    pub im: ZPoly<QExp>,
}

impl ReImPoly {
    /// `z − φ = (z − Re φ) + i·(−Im φ)`.
    pub fn of_branch(b: &Branch) -> Result<ReImPoly> {
        let p = b.re_im()?;
        Ok(ReImPoly { re: ZPoly::linear(&p.re), im: ZPoly::constant(p.im.neg()) })
    }

    /// Values of both parts along the curvette.
    pub fn along(&self, g: &Curvette<QExp>) -> (Series<QExp>, Series<QExp>) {
        (self.re.eval(&g.z), self.im.eval(&g.z))
    }
}

/// `min{ν_γ(Re h), ν_γ(Im h)}`.
pub fn nu_complex(h: &ReImPoly, g: &Curvette<QExp>) -> Result<Val<QExp>> {
    let (re, im) = h.along(g);
    let a = re.order_lb();
    let b = im.order_lb();
    // the minimum is known once the smaller side is
    if a <= b {
        let a = re.order()?;
        if a <= b || im.order().is_ok() {
            return Ok(Val::min(a, im.order().unwrap_or(b)));
        }
        Ok(a)
    } else {
        let b = im.order()?;
        Ok(Val::min(b, re.order().unwrap_or(a)))
    }
}

/// `½·ν_γ(Re h² + Im h²)`.
pub fn nu_complex_norm(h: &ReImPoly, g: &Curvette<QExp>) -> Result<Val<QExp>> {
    let (re, im) = h.along(g);
    let n = re.mul(&re).add(&im.mul(&im));
    Ok(match n.order()? {
        Val::Fin(e) => Val::Fin(e / Ratio::from_integer(2)),
        Val::Inf => Val::Inf,
    })
}

// ---------------------------------------------------------------------------
// branch values

/// Expands `g` and values every branch at `γ`, raising the expansion target
/// until all values are determined.
pub fn expand_along(g: &ZPoly<QExp>, gamma: &Curvette<QExp>, cfg: &NpConfig) -> Result<(Vec<Branch>, Vec<Val<QExp>>)> {
    let base = match cfg.target {
        Some(t) => t,
        None => default_target(g)?,
    };
    let mut target = core::cmp::max(base, gamma.z_extent() + QExp::one());
    let mut last = Error::UnknownOrder;
    for _ in 0..6 {
        let c = NpConfig { target: Some(target), denom_bound: cfg.denom_bound };
        let bs = newton_puiseux_with(g, &c)?;
        match bs.iter().map(|b| b.nu_gamma(gamma)).collect::<Result<Vec<_>>>() {
            Ok(vals) => return Ok((bs, vals)),
            Err(e) => last = e,
        }
        target *= Ratio::from_integer(2);
    }
    Err(last)
}

/// Factors of maximal value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivilegedSelection {
    pub indices: Vec<usize>,
    pub value: Val<QExp>,
    pub values: Vec<Val<QExp>>,
}

pub fn privileged(factors: &[Branch], g: &Curvette<QExp>) -> Result<PrivilegedSelection> {
    let values = factors.iter().map(|b| b.nu_gamma(g)).collect::<Result<Vec<_>>>()?;
    select_privileged(values)
}

/// Privileged indices from precomputed values.
pub fn select_privileged(values: Vec<Val<QExp>>) -> Result<PrivilegedSelection> {
    if values.is_empty() {
        return Err(Error::InvalidInput("no factors".into()));
    }
    if values.iter().filter(|v| v.is_inf()).count() > 1 {
        return Err(Error::InvalidInput("more than one factor of infinite value".into()));
    }
    let value = values.iter().max().unwrap().clone();
    let indices = (0..values.len()).filter(|&i| values[i] == value).collect();
    Ok(PrivilegedSelection { indices, value, values })
}

// ---------------------------------------------------------------------------
// ν_s

/// `ν_s(h) = min{(s+1)i + ν(e_i)}` and `in_s h`.
pub fn nu_s(h: &ZPoly<QExp>, s: u32) -> Result<(Val<QExp>, ZPoly<QExp>)> {
    let w = Val::Fin(Ratio::from_integer(s as i64 + 1));
    let inz = h.nu_z(&w)?;
    let mut c = vec![Series::zero(); h.coeffs().len()];
    for &i in &inz.support {
        c[i] = h.coeff(i);
    }
    Ok((inz.value, ZPoly::new(c)))
}

// ---------------------------------------------------------------------------
// recentering

/// `(ν_z(g), ν(g), δ(g, z))` for one coordinate `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub nu_z: Val<QExp>,
    pub nu: Val<QExp>,
    pub delta: usize,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu_z={} nu={} delta={}", self.nu_z, self.nu, self.delta)
    }
}

/// One change `z_{s+1} = z_s − φ_s`, with `ν_{z_s}` of every family member
/// before the change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecenterStep {
    pub member: usize,
    pub phi_s: Series<QExp>,
    pub binomial: bool,
    pub nu_zs: Vec<Val<QExp>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage2 {
    pub phi_star: Series<QExp>,
    pub deltas: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecenterReport {
    pub before: Vec<Triple>,
    pub after: Vec<Triple>,
    pub steps: Vec<RecenterStep>,
    /// `ν_{z_s}(g)` never decreased along the steps.
    pub monotone: bool,
    /// `None` when `z̃(t) = 0`, so that `in(z̃)` is not a graded element.
    pub stage2: Option<Stage2>,
}

struct Rc<'a> {
    gs: &'a [ZPoly<QExp>],
    gamma: &'a Curvette<QExp>,
    nus: Vec<Val<QExp>>,
}

impl Rc<'_> {
    fn z_value(&self, phi: &Series<QExp>) -> Result<Val<QExp>> {
        self.gamma.z.sub(phi).order()
    }

    fn triple(&self, i: usize, phi: &Series<QExp>) -> Result<Triple> {
        let v = self.z_value(phi)?;
        let inz = self.gs[i].shift(phi).nu_z(&v)?;
        Ok(Triple { nu_z: inz.value.clone(), nu: self.nus[i].clone(), delta: inz.delta() })
    }

    fn nu_zs(&self, phi: &Series<QExp>) -> Result<Vec<Val<QExp>>> {
        (0..self.gs.len()).map(|i| Ok(self.triple(i, phi)?.nu_z)).collect()
    }

    /// Order through which `φ_s` is computed in the binomial case.
    fn cap(&self, v: &QExp) -> QExp {
        let mut c = core::cmp::max(self.gamma.z_extent(), *v);
        for n in &self.nus {
            if let Val::Fin(e) = n {
                c = core::cmp::max(c, *e);
            }
        }
        c + QExp::one()
    }

    /// The next `φ_s` for member `i` at the current `φ`.
    fn step(&self, i: usize, phi: &Series<QExp>) -> Result<(Series<QExp>, bool)> {
        let zs = self.gamma.z.sub(phi);
        let (v, c) = zs.leading()?.ok_or(Error::InvalidInput("z already recentred to zero".into()))?;
        let gs = self.gs[i].shift(phi);
        let inz = gs.nu_z(&Val::Fin(v))?;
        let delta = inz.delta();
        // ḡ(u) = Σ_{i∈S} lc(a_{i,s}) u^i
        let mut pc = vec![Scalar::zero(); delta + 1];
        for (k, _, lc) in &inz.terms {
            pc[*k] = lc.clone();
        }
        let pbar = Poly::new(pc);
        let lc_d = pbar.coeff(delta);
        let psi = -(&pbar.coeff(delta.saturating_sub(1)) / &lc_d.scale_int(delta as i64));
        let mut binom_form = Poly::constant(lc_d);
        let lin = Poly::linear(&psi);
        for _ in 0..delta {
            binom_form = &binom_form * &lin;
        }
        if delta >= 1 && binom_form == pbar && psi == c {
            let cap = self.cap(&v);
            let num = gs.coeff(delta - 1);
            let den = gs.coeff(delta).scale(&Scalar::int(delta as i64));
            let q = num.mul(&den.inv_to(&cap)?).neg().truncate(&Val::Fin(cap));
            let phi_s = Series::exact(q.terms().iter().cloned());
            if phi_s.leading()? != Some((v, c.clone())) {
                return Err(Error::InvalidInput("binomial step lost the initial term".into()));
            }
            Ok((phi_s, true))
        } else {
            Ok((Series::monomial(c, v), false))
        }
    }
}

/// Finds `φ` with `ν_{z−φ}(g) = ν_γ(g)` for every `g` of the family, then
/// tries the second stage `δ(g, z̃ − φ*) = 0`.
pub fn recenter(gs: &[ZPoly<QExp>], gamma: &Curvette<QExp>) -> Result<(Series<QExp>, RecenterReport)> {
    recenter_with(gs, gamma, DEFAULT_DENOM_BOUND)
}

pub fn recenter_with(
    gs: &[ZPoly<QExp>],
    gamma: &Curvette<QExp>,
    denom_bound: i64,
) -> Result<(Series<QExp>, RecenterReport)> {
    if gamma.z.order_lb() < Val::Fin(QExp::zero()) {
        return Err(Error::InvalidInput("recentering needs nu(z) >= 0".into()));
    }
    let nus = gs.iter().map(|g| g.nu_gamma(gamma)).collect::<Result<Vec<_>>>()?;
    let rc = Rc { gs, gamma, nus };
    let dmax = gs.iter().filter_map(|g| g.degree()).max().unwrap_or(0).max(1) as i64;
    let bound = (4 * dmax * denom_bound) as usize;
    let mut phi = Series::zero();
    let before = (0..gs.len()).map(|i| rc.triple(i, &phi)).collect::<Result<Vec<_>>>()?;
    let mut steps: Vec<RecenterStep> = Vec::new();
    let mut monotone = true;
    let mut prev = rc.nu_zs(&phi)?;
    loop {
        let Some(i) = (0..gs.len()).find(|&i| prev[i] < rc.nus[i]) else {
            break;
        };
        if steps.len() >= bound {
            return Err(Error::NonConvergence { steps: steps.len() });
        }
        let (phi_s, binomial) = rc.step(i, &phi)?;
        steps.push(RecenterStep { member: i, phi_s: phi_s.clone(), binomial, nu_zs: prev.clone() });
        phi = phi.add(&phi_s);
        let cur = rc.nu_zs(&phi)?;
        if cur.iter().zip(&prev).any(|(a, b)| a < b) {
            monotone = false;
        }
        prev = cur;
    }
    let after = (0..gs.len()).map(|i| rc.triple(i, &phi)).collect::<Result<Vec<_>>>()?;
    let zt = gamma.z.sub(&phi);
    let stage2 = match zt.leading()? {
        None => None,
        Some((e, c)) => {
            let phi_star = Series::monomial(c, e);
            let full = phi.add(&phi_star);
            let deltas = (0..gs.len()).map(|i| Ok(rc.triple(i, &full)?.delta)).collect::<Result<Vec<_>>>()?;
            Some(Stage2 { phi_star, deltas })
        }
    };
    Ok((phi, RecenterReport { before, after, steps, monotone, stage2 }))
}

// ---------------------------------------------------------------------------
// derivative values

/// Values recorded by [`check_privbranch`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivBranchTable {
    pub nu_g: Val<QExp>,
    /// `ν(g^{(i)})` for `i = 1, …, k`.
    pub nu_derivs: Vec<Val<QExp>>,
    pub branch_values: Vec<Val<QExp>>,
    pub deriv_branch_values: Vec<Val<QExp>>,
    pub privileged: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrivBranchVerdict {
    NotApplicable { reason: String, table: PrivBranchTable },
    Holds(PrivBranchTable),
    Fails(PrivBranchTable),
}

impl PrivBranchVerdict {
    pub fn table(&self) -> &PrivBranchTable {
        match self {
            PrivBranchVerdict::NotApplicable { table, .. } => table,
            PrivBranchVerdict::Holds(t) | PrivBranchVerdict::Fails(t) => t,
        }
    }
}

/// `g / lc(g)` for a constant leading coefficient.
pub fn make_monic(g: &ZPoly<QExp>) -> Result<ZPoly<QExp>> {
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    let lc = g.coeff(d);
    if !lc.is_exact() || lc.terms().len() != 1 || lc.terms()[0].0 != QExp::zero() {
        return Err(Error::NotMonic);
    }
    Ok(g.scale_scalar(&lc.terms()[0].1.inv()))
}

/// If `ν(g^{(i)}) ≥ ν(g)` for all `i ≤ k`, every privileged factor `h` of
/// `g^{(k)}` has `ν(h) > ν(g_j)` for every factor `g_j` of `g`. Requires a
/// point on `g = 0` (`ν(g) > 0`).
pub fn check_privbranch(g: &ZPoly<QExp>, k: usize, gamma: &Curvette<QExp>, cfg: &NpConfig) -> Result<PrivBranchVerdict> {
    require_monic(g)?;
    let d = g.degree().unwrap();
    if k == 0 || k >= d {
        return Err(Error::InvalidInput(alloc::format!("k must lie in 1..{}", d)));
    }
    let nu_g = g.nu_gamma(gamma)?;
    let nu_derivs = (1..=k).map(|i| g.divided_derivative(i).nu_gamma(gamma)).collect::<Result<Vec<_>>>()?;
    let mut table = PrivBranchTable {
        nu_g: nu_g.clone(),
        nu_derivs: nu_derivs.clone(),
        branch_values: Vec::new(),
        deriv_branch_values: Vec::new(),
        privileged: Vec::new(),
    };
    let na = |reason: &str, table| Ok(PrivBranchVerdict::NotApplicable { reason: reason.into(), table });
    if nu_g <= Val::Fin(QExp::zero()) {
        return na("nu(g) = 0: the point is not on g = 0", table);
    }
    if nu_g.is_inf() {
        return na("nu(g) is infinite", table);
    }
    if nu_derivs.iter().any(|v| *v < nu_g) {
        return na("premise fails", table);
    }
    let (_, bvals) = expand_along(g, gamma, cfg)?;
    let gk = make_monic(&g.divided_derivative(k))?;
    let (_, hvals) = expand_along(&gk, gamma, cfg)?;
    let sel = select_privileged(hvals.clone())?;
    table.branch_values = bvals;
    table.deriv_branch_values = hvals;
    table.privileged = sel.indices.clone();
    let ok = sel.indices.iter().all(|&h| table.branch_values.iter().all(|v| table.deriv_branch_values[h] > *v));
    Ok(if ok { PrivBranchVerdict::Holds(table) } else { PrivBranchVerdict::Fails(table) })
}

/// `binom(d, k)` as a scalar, the leading coefficient of `g^{(k)}`.
pub fn derivative_lead(d: usize, k: usize) -> Scalar {
    Scalar::int(binomial(d, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qe, qi, Lex};
    use crate::zpoly::zpoly_q;

    fn s(terms: &[(i64, i64, i64)]) -> Series<QExp> {
        Series::exact(terms.iter().map(|&(c, n, d)| (qe(n, d), Scalar::int(c))))
    }

    fn gz(z: Series<QExp>) -> Curvette<QExp> {
        Curvette::new(vec![s(&[(1, 1, 1)])], z)
    }

    #[test]
    fn basic_values() {
        let x = MPoly::var(2, 0);
        let z = MPoly::z(2);
        let g = gz(s(&[(1, 2, 1)]));
        assert_eq!(nu_gamma(&z.sub(&x), &g).unwrap(), Val::Fin(qi(1)));
        assert_eq!(nu_gamma(&MPoly::constant(2, Scalar::one()), &g).unwrap(), Val::Fin(qi(0)));
        assert_eq!(sign_at(&z.sub(&x), &g).unwrap(), Ordering::Less);
    }

    #[test]
    fn intro_initial_terms() {
        // x = t^(0,3), y = t^(0,4) + b t^(1,0), z = t^(0,5) + c t^(1,1)
        let (b, c) = (1, 3);
        let m = |e: [i64; 2], k: i64| (Lex(e), Scalar::int(k));
        let xs = vec![Series::exact([m([0, 3], 1)]), Series::exact([m([0, 4], 1), m([1, 0], b)])];
        let gamma = Curvette::new(xs, Series::exact([m([0, 5], 1), m([1, 1], c)]));
        let x = MPoly::var(3, 0);
        let y = MPoly::var(3, 1);
        let z = MPoly::var(3, 2);
        let f1 = x.mul(&z).sub(&y.pow(2));
        let v = f1.eval_series(&gamma.point());
        assert_eq!(v.leading().unwrap(), Some((Lex([1, 4]), Scalar::int(c - 2 * b))));
    }

    #[test]
    fn complex_values() {
        let gamma = gz(s(&[(1, 1, 1)]));
        let h = ReImPoly { re: ZPoly::constant(s(&[(1, 1, 1)])), im: ZPoly::constant(s(&[(1, 2, 1)])) };
        assert_eq!(nu_complex(&h, &gamma).unwrap(), Val::Fin(qi(1)));
        let h = ReImPoly { re: ZPoly::constant(s(&[(1, 3, 1)])), im: ZPoly::constant(s(&[(1, 2, 1)])) };
        assert_eq!(nu_complex(&h, &gamma).unwrap(), Val::Fin(qi(2)));
        assert_eq!(nu_complex_norm(&h, &gamma).unwrap(), Val::Fin(qi(2)));
    }

    #[test]
    fn privileged_selection() {
        let gamma = gz(s(&[(1, 2, 1), (1, 3, 1)]));
        let f = [Branch::from_series(s(&[(1, 1, 1)])), Branch::from_series(s(&[(1, 2, 1)]))];
        let sel = privileged(&f, &gamma).unwrap();
        assert_eq!(sel.values, vec![Val::Fin(qi(1)), Val::Fin(qi(3))]);
        assert_eq!(sel.indices, vec![1]);
        let gamma = gz(s(&[(1, 2, 1)]));
        let f = [Branch::from_series(s(&[(1, 1, 1)])), Branch::from_series(s(&[(-1, 1, 1)]))];
        assert_eq!(privileged(&f, &gamma).unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn nu_s_examples() {
        let h = zpoly_q(&[&[(-1, 2, 1)], &[], &[(1, 0, 1)]]);
        let (v, ins) = nu_s(&h, 0).unwrap();
        assert_eq!(v, Val::Fin(qi(2)));
        assert_eq!(ins, h);
        let (v, ins) = nu_s(&ZPoly::z(), 4).unwrap();
        assert_eq!((v, ins), (Val::Fin(qi(5)), ZPoly::z()));
        let h = zpoly_q(&[&[(-1, 3, 1)], &[(1, 0, 1)]]);
        let (v, ins) = nu_s(&h, 1).unwrap();
        assert_eq!((v, ins), (Val::Fin(qi(2)), ZPoly::z()));
    }

    #[test]
    fn recenter_examples() {
        // (z − t)² − t³ at z = t + t^10
        let g = zpoly_q(&[&[(1, 2, 1), (-1, 3, 1)], &[(-2, 1, 1)], &[(1, 0, 1)]]);
        let gamma = gz(s(&[(1, 1, 1), (1, 10, 1)]));
        let (phi, rep) = recenter(&[g.clone()], &gamma).unwrap();
        assert_eq!(phi, s(&[(1, 1, 1)]));
        assert_eq!(rep.before[0].nu_z, Val::Fin(qi(2)));
        assert_eq!(rep.before[0].nu, Val::Fin(qi(3)));
        assert_eq!(rep.after[0].nu_z, Val::Fin(qi(3)));
        assert!(rep.monotone);
        assert_eq!(rep.stage2.unwrap().deltas, vec![0]);
        // already equal
        let g = zpoly_q(&[&[(-1, 1, 1)], &[(1, 0, 1)]]);
        let (phi, rep) = recenter(&[g], &gz(s(&[(1, 2, 1)]))).unwrap();
        assert!(phi.is_zero());
        assert!(rep.steps.is_empty());
        // family {z, z²}
        let fam = [ZPoly::z(), ZPoly::z().mul(&ZPoly::z())];
        let (phi, _) = recenter(&fam, &gz(s(&[(1, 1, 1)]))).unwrap();
        assert!(phi.is_zero());
    }

    #[test]
    fn privbranch_examples() {
        let cfg = NpConfig::default();
        let g = zpoly_q(&[&[(-1, 2, 1)], &[], &[(1, 0, 1)]]);
        let v = check_privbranch(&g, 1, &gz(s(&[(1, 1, 1), (1, 5, 1)])), &cfg).unwrap();
        assert!(matches!(v, PrivBranchVerdict::NotApplicable { .. }));
        assert_eq!(v.table().nu_g, Val::Fin(qi(6)));
        assert_eq!(v.table().nu_derivs, vec![Val::Fin(qi(1))]);
        let g = zpoly_q(&[&[(-1, 6, 1)], &[], &[(1, 0, 1)]]);
        let v = check_privbranch(&g, 1, &gz(s(&[(1, 4, 1)])), &cfg).unwrap();
        assert!(matches!(v, PrivBranchVerdict::NotApplicable { .. }));
        // z³ − t³ z at z = 2t: ν(g) = 3, ν(g′) = ν(3z² − t³) = 2 < 3
        // z² at z = t: ν = 2, ν(g′) = 1
        // (z − t)³ at z = t + t²: ν(g) = 6, ν(g′)=ν(3(z−t)²)=4 < 6
        // z³ − t^6 at z = t^2 + t^3: ν(g) = 7? premise uses derivatives
        let g = zpoly_q(&[&[(-1, 6, 1)], &[], &[], &[(1, 0, 1)]]);
        let v = check_privbranch(&g, 2, &gz(s(&[(1, 2, 1), (1, 3, 1)])), &cfg).unwrap();
        assert!(!matches!(v, PrivBranchVerdict::Fails(_)));
    }
}
