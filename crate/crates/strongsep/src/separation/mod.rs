//! Deciding whether two curvettes lie in the same connected component of
//! `{f ≠ 0}` over a box, by counting real branches, and replaying the
//! derivative argument that forces a sign-changer of small value whenever
//! they do not.

mod certificate;
mod chain;
mod hypothesis;

pub use certificate::{replay, Certificate, Check, CmpOp, Point, HEADER as CERT_HEADER};
pub use chain::{build_claim_chain, ChainCheck, ClaimChain, ClaimStep};
pub use hypothesis::{
    hypothesis_check, min_sign_changer, HypothesisReport, HypothesisStatus, SignChanger, Violation,
};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::branches::{coef_real, contact, default_target, Branch, Coef, NpConfig, View, DEFAULT_DENOM_BOUND};
use crate::error::{Error, Result};
use crate::exp::{QExp, Val};
use crate::linalg::discriminant;
use crate::mpoly::MPoly;
use crate::scalar::{Scalar, Q};
use crate::series::Series;
use crate::sturm::{sturm_count, Bound, CountMode};
use crate::valuation::{expand_along, make_monic, sign_at, Curvette, NuGamma};
use crate::zpoly::{binomial, ZPoly};

// ---------------------------------------------------------------------------
// instances

/// An open box `∏ (lo_k, hi_k)` in x-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxDomain {
    pub lo: Vec<Q>,
    pub hi: Vec<Q>,
}

impl BoxDomain {
    pub fn new(lo: Vec<Q>, hi: Vec<Q>) -> Result<BoxDomain> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidInput("box corners of different dimension".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::EmptyDomain);
        }
        Ok(BoxDomain { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// The origin lies in the closed box.
    pub fn center_in_closure(&self) -> bool {
        self.lo.iter().zip(&self.hi).all(|(a, b)| !a.is_positive() && !b.is_negative())
    }

    /// Interior grid `lo + j(hi − lo)/(r + 1)`, `j = 1..r`, in every coordinate.
    pub fn grid(&self, r: usize) -> Result<Vec<Vec<Q>>> {
        if r == 0 {
            return Err(Error::EmptyDomain);
        }
        let axes: Vec<Vec<Q>> = self
            .lo
            .iter()
            .zip(&self.hi)
            .map(|(a, b)| {
                let step = (b - a) / Q::from_integer((r as i64 + 1).into());
                (1..=r).map(|j| a + &step * Q::from_integer((j as i64).into())).collect()
            })
            .collect();
        let mut pts: Vec<Vec<Q>> = vec![Vec::new()];
        for axis in &axes {
            pts = pts
                .iter()
                .flat_map(|p| {
                    axis.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        Ok(pts)
    }

    /// `x(t)` lies in the box for all small `t > 0`.
    pub fn contains(&self, g: &Curvette<QExp>) -> Result<bool> {
        for (k, x) in g.xs.iter().enumerate() {
            let above = x.sub(&Series::constant(Scalar::rat(self.lo[k].clone()))).sign()?;
            let below = Series::constant(Scalar::rat(self.hi[k].clone())).sub(x).sign()?;
            if above != Ordering::Greater || below != Ordering::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A separation problem: `f` monic in `z` with rational coefficients, two
/// curvettes centered at the origin, and a box whose closure contains it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub f: MPoly,
    pub alpha: Curvette<QExp>,
    pub beta: Curvette<QExp>,
    pub domain: BoxDomain,
    /// Grid points per axis for the good-position check.
    pub grid: usize,
    /// Total degree bound of the sign-changer search.
    pub degree_bound: u32,
    /// Extra polynomials whose real root counts must also be constant.
    pub reductions: Vec<MPoly>,
    pub denom_bound: i64,
}

impl Instance {
    pub fn new(f: MPoly, alpha: Curvette<QExp>, beta: Curvette<QExp>, domain: BoxDomain) -> Instance {
        Instance {
            f,
            alpha,
            beta,
            domain,
            grid: 4,
            degree_bound: 2,
            reductions: Vec::new(),
            denom_bound: DEFAULT_DENOM_BOUND,
        }
    }

    pub fn names(&self) -> Vec<String> {
        MPoly::default_names(self.f.nvars())
    }

    /// Checks the input and returns both curvettes with sign data applied.
    pub fn validate(&self) -> Result<(Curvette<QExp>, Curvette<QExp>)> {
        let n = self.domain.dim();
        if self.f.nvars() != n + 1 || self.alpha.xs.len() != n || self.beta.xs.len() != n {
            return Err(Error::InvalidInput("dimensions of f, curvettes and box disagree".into()));
        }
        if self.f.z_degree() == 0 {
            return Err(Error::InvalidInput("f has degree 0 in z".into()));
        }
        if !self.f.is_monic_in_z() {
            return Err(Error::NotMonic);
        }
        if self.f.terms().any(|(_, c)| !c.is_rational()) {
            return Err(Error::InvalidInput("f must have rational coefficients".into()));
        }
        if !self.domain.center_in_closure() {
            return Err(Error::InvalidInput("the origin must lie in the closed box".into()));
        }
        let a = self.alpha.normalized()?;
        let b = self.beta.normalized()?;
        for g in [&a, &b] {
            for s in g.point() {
                if s.order()? <= Val::zero() {
                    return Err(Error::InvalidInput("curvettes must be centered at the origin".into()));
                }
            }
        }
        Ok((a, b))
    }
}

// ---------------------------------------------------------------------------
// good position

/// Real root counts of one polynomial at every grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCounts {
    pub label: String,
    pub distinct: Vec<usize>,
    pub with_multiplicity: Vec<usize>,
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPositionReport {
    pub samples: Vec<Vec<Q>>,
    /// `f^{(k)}` for `k = 0, …, d − 1`, then the reductions.
    pub counts: Vec<RootCounts>,
    pub disc_signs: Vec<Ordering>,
    pub disc_constant: bool,
    pub alpha_inside: bool,
    pub beta_inside: bool,
    pub verified: bool,
}

fn constant<T: PartialEq>(v: &[T]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

fn root_counts(label: String, g: &MPoly, samples: &[Vec<Q>]) -> Result<RootCounts> {
    let mut distinct = Vec::new();
    let mut with_multiplicity = Vec::new();
    for b in samples {
        let p = g.at_point(b).ok_or_else(|| Error::InvalidInput("non-rational coefficients".into()))?;
        distinct.push(sturm_count(&p, &Bound::NegInf, &Bound::PosInf, CountMode::Distinct)?);
        with_multiplicity.push(sturm_count(&p, &Bound::NegInf, &Bound::PosInf, CountMode::WithMultiplicity)?);
    }
    let c = constant(&distinct) && constant(&with_multiplicity);
    Ok(RootCounts { label, distinct, with_multiplicity, constant: c })
}

/// Samples the box on the interior grid: real root counts of every
/// `f^{(k)}(b, z)` in both counting modes, discriminant signs of
/// `f(b, z)`, and membership of both curvettes.
pub fn good_position_check(inst: &Instance) -> Result<GoodPositionReport> {
    let (a, b) = inst.validate()?;
    let samples = inst.domain.grid(inst.grid)?;
    let d = inst.f.z_degree();
    let mut counts = Vec::new();
    for k in 0..d {
        counts.push(root_counts(format!("f^({})", k), &inst.f.divided_derivative_z(k), &samples)?);
    }
    for (j, r) in inst.reductions.iter().enumerate() {
        if r.nvars() != inst.f.nvars() {
            return Err(Error::InvalidInput("reduction in the wrong number of variables".into()));
        }
        if r.z_degree() > 0 {
            counts.push(root_counts(format!("reduction {}", j), r, &samples)?);
        }
    }
    let disc_signs = samples
        .iter()
        .map(|s| discriminant(&inst.f.at_point(s).unwrap()).cmp(&Q::zero()))
        .collect::<Vec<_>>();
    let disc_constant = constant(&disc_signs);
    let alpha_inside = inst.domain.contains(&a)?;
    let beta_inside = inst.domain.contains(&b)?;
    let verified = counts.iter().all(|c| c.constant) && disc_constant && alpha_inside && beta_inside;
    Ok(GoodPositionReport { samples, counts, disc_signs, disc_constant, alpha_inside, beta_inside, verified })
}

// ---------------------------------------------------------------------------
// expansions along a curvette

/// Branches of a monic polynomial along a curvette, with values and the
/// real ones sorted increasingly.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub branches: Vec<Branch>,
    pub values: Vec<Val<QExp>>,
    /// Indices of the real branches, increasing.
    pub real: Vec<usize>,
}

impl Expansion {
    pub fn real_branch(&self, r: usize) -> &Branch {
        &self.branches[self.real[r]]
    }

    pub fn real_value(&self, r: usize) -> &Val<QExp> {
        &self.values[self.real[r]]
    }

    /// Number of real branches strictly below `z`.
    pub fn band(&self, z: &Series<QExp>) -> Result<usize> {
        let mut n = 0;
        for &i in &self.real {
            match self.branches[i].compare_series(z)? {
                Ordering::Less => n += 1,
                Ordering::Equal => return Err(Error::InvalidInput("the point lies on a branch".into())),
                Ordering::Greater => {}
            }
        }
        Ok(n)
    }
}

fn sort_real(bs: &[Branch]) -> Result<Vec<usize>> {
    let mut v: Vec<usize> = (0..bs.len()).filter(|&i| bs[i].is_real()).collect();
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 {
            match bs[v[j - 1]].compare(&bs[v[j]])? {
                Ordering::Greater => v.swap(j - 1, j),
                Ordering::Equal => return Err(Error::Indeterminate),
                Ordering::Less => break,
            }
            j -= 1;
        }
    }
    Ok(v)
}

/// Expands `g` (constant leading coefficient) along `gamma`, raising the
/// target until values and the real order are determined.
pub fn expansion(g: &ZPoly<QExp>, gamma: &Curvette<QExp>, denom_bound: i64, min_target: Option<QExp>) -> Result<Expansion> {
    let g = make_monic(g)?;
    let mut target = default_target(&g)?;
    if let Some(m) = min_target {
        target = target.max(m);
    }
    let mut last = Error::Indeterminate;
    for _ in 0..5 {
        let cfg = NpConfig { target: Some(target), denom_bound };
        let r = expand_along(&g, gamma, &cfg).and_then(|(bs, vals)| {
            let real = sort_real(&bs)?;
            Ok(Expansion { branches: bs, values: vals, real })
        });
        match r {
            Ok(e) => return Ok(e),
            Err(e @ (Error::Indeterminate | Error::UnknownOrder)) => last = e,
            Err(e) => return Err(e),
        }
        target *= Ratio::from_integer(2);
    }
    Err(last)
}

/// Which curvette.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        }
    }
}

/// A real branch over the box: the `index`-th real root of `f^{(k)}`,
/// expanded along both curvettes.
#[derive(Clone, Debug)]
pub struct OverD {
    pub k: usize,
    pub index: usize,
    pub alpha: Branch,
    pub beta: Branch,
}

impl OverD {
    pub fn at(&self, s: Side) -> &Branch {
        match s {
            Side::Alpha => &self.alpha,
            Side::Beta => &self.beta,
        }
    }
}

/// Cached expansions of the derivatives of `f` along both curvettes.
pub(crate) struct Ctx {
    pub f: MPoly,
    pub pts: [Curvette<QExp>; 2],
    pub denom_bound: i64,
    cache: BTreeMap<(usize, Side), (Expansion, QExp)>,
}

impl Ctx {
    pub fn new(f: &MPoly, a: &Curvette<QExp>, b: &Curvette<QExp>, denom_bound: i64) -> Ctx {
        Ctx { f: f.clone(), pts: [a.clone(), b.clone()], denom_bound, cache: BTreeMap::new() }
    }

    pub fn pt(&self, s: Side) -> &Curvette<QExp> {
        &self.pts[s.idx()]
    }

    pub fn deriv(&self, k: usize) -> MPoly {
        self.f.divided_derivative_z(k)
    }

    pub fn zpoly(&self, k: usize, s: Side) -> ZPoly<QExp> {
        self.deriv(k).to_zpoly(&self.pt(s).xs)
    }

    pub fn exp(&mut self, k: usize, s: Side) -> Result<Expansion> {
        if let Some((e, _)) = self.cache.get(&(k, s)) {
            return Ok(e.clone());
        }
        self.expand(k, s, None)
    }

    fn expand(&mut self, k: usize, s: Side, min: Option<QExp>) -> Result<Expansion> {
        let g = self.zpoly(k, s);
        let e = expansion(&g, self.pt(s), self.denom_bound, min)?;
        let t = min.unwrap_or_else(QExp::zero);
        self.cache.insert((k, s), (e.clone(), t));
        Ok(e)
    }

    /// Re-expands with a target beyond `need`.
    pub fn refine(&mut self, k: usize, s: Side, need: QExp) -> Result<Expansion> {
        let old = self.cache.get(&(k, s)).map(|(_, t)| *t).unwrap_or_else(QExp::zero);
        let t = (need + QExp::one()).max(old * Ratio::from_integer(2)).max(QExp::one());
        self.expand(k, s, Some(t))
    }

    /// Real root counts of `f^{(k)}` agree at both points.
    pub fn real_count(&mut self, k: usize) -> Result<usize> {
        let a = self.exp(k, Side::Alpha)?.real.len();
        let b = self.exp(k, Side::Beta)?.real.len();
        if a != b {
            return Err(Error::InvalidInput(format!(
                "f^({}) has {} real branches at alpha and {} at beta",
                k, a, b
            )));
        }
        Ok(a)
    }

    pub fn over_d(&mut self, k: usize, index: usize) -> Result<OverD> {
        let a = self.exp(k, Side::Alpha)?.real_branch(index).clone();
        let b = self.exp(k, Side::Beta)?.real_branch(index).clone();
        Ok(OverD { k, index, alpha: a, beta: b })
    }
}

// ---------------------------------------------------------------------------
// component oracle

/// Positions of both curvettes among the real branches of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandReport {
    /// Number of real branches below `α`.
    pub alpha: usize,
    pub beta: usize,
    pub real_alpha: usize,
    pub real_beta: usize,
    pub same: bool,
}

/// Under good position the components of the cylinder minus `f = 0` are
/// the bands between consecutive real branches; compares the band of `α`
/// with that of `β`.
pub fn band_oracle(f: &MPoly, a: &Curvette<QExp>, b: &Curvette<QExp>, denom_bound: i64) -> Result<BandReport> {
    let a = a.normalized()?;
    let b = b.normalized()?;
    let ea = expansion(&f.to_zpoly(&a.xs), &a, denom_bound, None)?;
    let eb = expansion(&f.to_zpoly(&b.xs), &b, denom_bound, None)?;
    let pa = ea.band(&a.z)?;
    let pb = eb.band(&b.z)?;
    Ok(BandReport {
        alpha: pa,
        beta: pb,
        real_alpha: ea.real.len(),
        real_beta: eb.real.len(),
        same: pa == pb && ea.real.len() == eb.real.len(),
    })
}

/// `min{k > 0 : ν_γ(f^{(k)}) < ν_γ(f)}`; `None` when `ν_γ(f) = 0`.
pub fn theta(f: &MPoly, g: &Curvette<QExp>) -> Result<Option<usize>> {
    let nu = f.nu_gamma(g)?;
    if nu.is_inf() {
        return Err(Error::InvalidInput("the curvette lies on f = 0".into()));
    }
    for k in 1..=f.z_degree() {
        if f.divided_derivative_z(k).nu_gamma(g)? < nu {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Rolle

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RolleCase {
    /// `ν(h₁) = ν(h₂)`, both real.
    Equidistance,
    /// `ν(h₁) ≠ ν(h₂)`; the smaller one real.
    GeneralizedRolle,
}

#[derive(Clone, Debug)]
pub struct RolleReport {
    pub case: RolleCase,
    /// Exponent at which `h₁` and `h₂` first differ.
    pub contact: QExp,
    pub v: Branch,
    /// Position of `v` among the candidates.
    pub index: usize,
    pub nu_h1: Val<QExp>,
    pub nu_h2: Val<QExp>,
    pub nu_v: Val<QExp>,
    /// No unique minimum among the three values.
    pub holds: bool,
}

fn strictly_inside(x: &crate::algebraic::RealNumber, a: &crate::algebraic::RealNumber, b: &crate::algebraic::RealNumber) -> bool {
    let (lo, hi) = if a.compare(b) == Ordering::Greater { (b, a) } else { (a, b) };
    x.compare(lo) == Ordering::Greater && x.compare(hi) == Ordering::Less
}

/// Among the real `cands` (branches of the derivative), one that agrees
/// with `h₁` below the exponent `e` where `h₁, h₂` differ and whose
/// coefficient at `e` lies strictly between theirs. For a complex `h₂` the
/// bound at `e` is the coefficient of `z(t)`, which `h₂` shares when
/// `ν(h₁) < ν(h₂)`.
pub fn rolle_select(cands: &[Branch], h1: &Branch, h2: &Branch, g: &Curvette<QExp>) -> Result<RolleReport> {
    if !h1.is_real() {
        return Err(Error::InvalidInput("the first branch must be real".into()));
    }
    let nu_h1 = h1.contact_with(&g.z)?;
    let nu_h2 = h2.contact_with(&g.z)?;
    let case = if nu_h1 == nu_h2 { RolleCase::Equidistance } else { RolleCase::GeneralizedRolle };
    if !h2.is_real() && nu_h2 <= nu_h1 {
        return Err(Error::InvalidInput("a complex second branch needs the larger value".into()));
    }
    let Val::Fin(e) = contact(&h1.view(), &h2.view())? else {
        return Err(Error::InvalidInput("the two branches coincide".into()));
    };
    let real_of = |c: Option<Coef<'_>>| -> Result<crate::algebraic::RealNumber> {
        let c = c.ok_or(Error::Indeterminate)?;
        coef_real(&c).ok_or(Error::DegreeTooHigh)
    };
    let c1 = real_of(h1.view().coef(&e))?;
    let c2 = if h2.is_real() {
        real_of(h2.view().coef(&e))?
    } else {
        real_of(View::of_series(&g.z).coef(&e))?
    };
    let mut unknown = false;
    for (i, v) in cands.iter().enumerate() {
        if !v.is_real() {
            continue;
        }
        match contact(&v.view(), &h1.view()) {
            Ok(Val::Fin(c)) if c == e => {}
            Ok(Val::Fin(c)) if c > e => continue,
            Ok(_) => continue,
            Err(_) => {
                unknown = true;
                continue;
            }
        }
        let Some(cv) = v.view().coef(&e) else {
            unknown = true;
            continue;
        };
        let cv = coef_real(&cv).ok_or(Error::DegreeTooHigh)?;
        if !strictly_inside(&cv, &c1, &c2) {
            continue;
        }
        let nu_v = v.contact_with(&g.z)?;
        let m = nu_h1.clone().min(nu_h2.clone()).min(nu_v.clone());
        let at_min = [&nu_h1, &nu_h2, &nu_v].iter().filter(|x| ***x == m).count();
        return Ok(RolleReport {
            case,
            contact: e,
            v: v.clone(),
            index: i,
            nu_h1,
            nu_h2,
            nu_v,
            holds: at_min >= 2,
        });
    }
    Err(if unknown { Error::Indeterminate } else { Error::NoRealRoot })
}

/// A real branch of `g′` between the roots `h₁, h₂` of `g`, with the
/// values of all three at `gamma`.
pub fn rolle_between(
    g: &ZPoly<QExp>,
    h1: &Branch,
    h2: &Branch,
    gamma: &Curvette<QExp>,
    denom_bound: i64,
) -> Result<RolleReport> {
    let d = g.divided_derivative(1);
    let e = contact(&h1.view(), &h2.view())?.finite().copied().unwrap_or_else(QExp::zero);
    let mut need = e + QExp::one();
    let mut last = Error::Indeterminate;
    for _ in 0..4 {
        let ex = expansion(&d, gamma, denom_bound, Some(need))?;
        let cands: Vec<Branch> = ex.real.iter().map(|&i| ex.branches[i].clone()).collect();
        match rolle_select(&cands, h1, h2, gamma) {
            Err(Error::Indeterminate) => last = Error::Indeterminate,
            r => return r,
        }
        need *= Ratio::from_integer(2);
    }
    Err(last)
}

// ---------------------------------------------------------------------------
// pipeline

/// At degree two, two real roots between the points force
/// `ν_α(f′) ≤ ν_α(f_j) < ν_α(f)` for a root `f_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Check {
    pub nu_f: Val<QExp>,
    pub nu_f_prime: Val<QExp>,
    pub nu_roots: Vec<Val<QExp>>,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub enum PipelineOutcome {
    Same { reason: String },
    /// A polynomial changing sign between the points, reached by the
    /// derivative argument. `below_f` records whether its value is smaller
    /// than that of `f` at `α` or at `β`.
    Witness { poly: MPoly, depth: usize, nu_alpha: Val<QExp>, nu_beta: Val<QExp>, below_f: bool },
    Broken { reason: String },
}

#[derive(Clone, Debug)]
pub struct PipelineLevel {
    pub f: MPoly,
    pub nu_alpha: Val<QExp>,
    pub nu_beta: Val<QExp>,
    pub theta_alpha: Option<usize>,
    pub theta_beta: Option<usize>,
    pub deg2: Option<Deg2Check>,
    pub chain: Option<ClaimChain>,
    /// Real branch of `f^{(θ)}` separating the points.
    pub separating: Option<OverD>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub levels: Vec<PipelineLevel>,
    pub outcome: PipelineOutcome,
}

fn weak_sign_change(a: Ordering, b: Ordering) -> bool {
    a != b && (a == Ordering::Equal || b == Ordering::Equal || a == b.reverse())
}

fn monic_derivative(f: &MPoly, k: usize) -> MPoly {
    let d = f.z_degree();
    f.divided_derivative_z(k).scale(&Scalar::frac(1, binomial(d, k)))
}

enum Step {
    Done(PipelineOutcome),
    Recurse(MPoly),
}

fn pipeline_level(
    f: &MPoly,
    a: &Curvette<QExp>,
    b: &Curvette<QExp>,
    top: (&Val<QExp>, &Val<QExp>),
    depth: usize,
    denom_bound: i64,
    levels: &mut Vec<PipelineLevel>,
) -> Result<Step> {
    let nu_alpha = f.nu_gamma(a)?;
    let nu_beta = f.nu_gamma(b)?;
    let mut level = PipelineLevel {
        f: f.clone(),
        nu_alpha: nu_alpha.clone(),
        nu_beta: nu_beta.clone(),
        theta_alpha: None,
        theta_beta: None,
        deg2: None,
        chain: None,
        separating: None,
        note: String::new(),
    };
    let witness = |g: &MPoly, depth: usize| -> Result<PipelineOutcome> {
        let na = g.nu_gamma(a)?;
        let nb = g.nu_gamma(b)?;
        let below_f = na < *top.0 || nb < *top.1;
        Ok(PipelineOutcome::Witness { poly: g.clone(), depth, nu_alpha: na, nu_beta: nb, below_f })
    };
    let (sa, sb) = (sign_at(f, a)?, sign_at(f, b)?);
    if weak_sign_change(sa, sb) {
        level.note = "f changes sign between the points".into();
        levels.push(level);
        return Ok(Step::Done(witness(f, depth)?));
    }
    let done = |level: PipelineLevel, levels: &mut Vec<PipelineLevel>, reason: &str| {
        levels.push(level);
        Ok(Step::Done(PipelineOutcome::Same { reason: reason.into() }))
    };
    if nu_alpha == Val::zero() || nu_beta == Val::zero() {
        return done(level, levels, "f does not vanish at the center");
    }
    let d = f.z_degree();
    if d == 1 {
        return done(level, levels, "f has degree one in z and does not change sign");
    }
    let bands = band_oracle(f, a, b, denom_bound)?;
    if bands.same {
        return done(level, levels, "no real branch of f lies between the points");
    }
    let ta = theta(f, a)?;
    let tb = theta(f, b)?;
    level.theta_alpha = ta;
    level.theta_beta = tb;
    let mut ctx = Ctx::new(f, a, b, denom_bound);
    if d == 2 {
        let e = ctx.exp(0, Side::Alpha)?;
        let nu_f_prime = f.divided_derivative_z(1).nu_gamma(a)?;
        let holds = e.values.iter().any(|v| nu_f_prime <= *v && *v < nu_alpha);
        level.deg2 = Some(Deg2Check { nu_f: nu_alpha.clone(), nu_f_prime, nu_roots: e.values.clone(), holds });
    }
    let (Some(ta), Some(tb)) = (ta, tb) else {
        level.note = "nu(f) = 0 at a point".into();
        levels.push(level);
        return Ok(Step::Done(PipelineOutcome::Broken { reason: "f does not vanish at the center".into() }));
    };
    let th;
    if ta == 1 || tb == 1 {
        th = 1;
        level.note = "theta = 1: Rolle gives a real branch of f' between the points".into();
        let n = ctx.real_count(1)?;
        let mut found = None;
        for r in 0..n {
            let h = ctx.over_d(1, r)?;
            if crate::branches::between_at(&h.alpha, &a.z, &h.beta, &b.z)? {
                found = Some(h);
                break;
            }
        }
        match found {
            Some(h) => level.separating = Some(h),
            None => {
                levels.push(level);
                return Ok(Step::Done(PipelineOutcome::Broken {
                    reason: "no real branch of f' separates the points".into(),
                }));
            }
        }
    } else {
        th = ta;
        level.note = format!("claim chain up to theta = {}", ta);
        match build_claim_chain(f, a, b, ta, denom_bound) {
            Ok(c) => {
                level.separating = Some(c.separating.clone());
                level.chain = Some(c);
            }
            Err(e @ Error::ChainBroken { .. }) => {
                levels.push(level);
                return Ok(Step::Done(PipelineOutcome::Broken { reason: format!("{}", e) }));
            }
            Err(e) => return Err(e),
        }
    }
    let g = monic_derivative(f, th);
    levels.push(level);
    let (ga, gb) = (sign_at(&g, a)?, sign_at(&g, b)?);
    if weak_sign_change(ga, gb) {
        return Ok(Step::Done(witness(&g, depth + 1)?));
    }
    Ok(Step::Recurse(g))
}

/// Follows the derivative argument: while a real branch of `f` separates
/// the points, passes to the derivative `f^{(θ)}` that has a real branch
/// between them, until some derivative changes sign.
pub fn run_pipeline(f: &MPoly, a: &Curvette<QExp>, b: &Curvette<QExp>, denom_bound: i64) -> Result<Pipeline> {
    let a = a.normalized()?;
    let b = b.normalized()?;
    let top = (f.nu_gamma(&a)?, f.nu_gamma(&b)?);
    let mut levels = Vec::new();
    let mut cur = f.clone();
    let mut depth = 0;
    loop {
        match pipeline_level(&cur, &a, &b, (&top.0, &top.1), depth, denom_bound, &mut levels)? {
            Step::Done(PipelineOutcome::Same { reason }) if depth > 0 => {
                let outcome = PipelineOutcome::Broken {
                    reason: format!("a separating derivative reports the same side: {}", reason),
                };
                return Ok(Pipeline { levels, outcome });
            }
            Step::Done(outcome) => return Ok(Pipeline { levels, outcome }),
            Step::Recurse(g) => {
                cur = g;
                depth += 1;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// decision

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    SameComponent,
    HypothesisViolated,
    NotGoodPosition,
    Undecided,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::SameComponent => "same-component",
            Verdict::HypothesisViolated => "hypothesis-violated",
            Verdict::NotGoodPosition => "not-good-position",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        [Verdict::SameComponent, Verdict::HypothesisViolated, Verdict::NotGoodPosition, Verdict::Undecided]
            .into_iter()
            .find(|v| v.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub good_position: GoodPositionReport,
    pub bands: Option<BandReport>,
    pub hypothesis: Option<HypothesisReport<QExp>>,
    pub pipeline: Option<Pipeline>,
    pub notes: Vec<String>,
    pub certificate: Certificate,
}

/// Good position, component oracle, hypothesis search and the derivative
/// pipeline, cross-checked against each other.
pub fn decide_separation(inst: &Instance) -> Result<Decision> {
    let (a, b) = inst.validate()?;
    let gp = good_position_check(inst)?;
    let mut notes = Vec::new();
    if !gp.verified {
        let mut d = Decision {
            verdict: Verdict::NotGoodPosition,
            good_position: gp,
            bands: None,
            hypothesis: None,
            pipeline: None,
            notes,
            certificate: Certificate::empty(inst.f.nvars()),
        };
        d.certificate = certificate::build(inst, &d)?;
        return Ok(d);
    }
    let bands = band_oracle(&inst.f, &a, &b, inst.denom_bound)?;
    let hyp = hypothesis_check(&inst.f, &a.point(), &b.point(), inst.degree_bound)?;
    let pipe = run_pipeline(&inst.f, &a, &b, inst.denom_bound)?;
    let verdict = if bands.same {
        if !matches!(pipe.outcome, PipelineOutcome::Same { .. }) {
            notes.push("pipeline disagrees with the component oracle".into());
            Verdict::Undecided
        } else {
            Verdict::SameComponent
        }
    } else if hyp.is_violated() {
        Verdict::HypothesisViolated
    } else {
        match &pipe.outcome {
            PipelineOutcome::Witness { depth, below_f, .. } if *below_f || *depth == 0 => {
                notes.push("the derivative argument found a sign-changer beyond the degree bound".into());
                Verdict::HypothesisViolated
            }
            PipelineOutcome::Witness { .. } => {
                notes.push("sign-changing derivative without smaller value".into());
                Verdict::Undecided
            }
            PipelineOutcome::Broken { reason } => {
                notes.push(format!("pipeline broken: {}", reason));
                Verdict::Undecided
            }
            PipelineOutcome::Same { .. } => {
                notes.push("pipeline disagrees with the component oracle".into());
                Verdict::Undecided
            }
        }
    };
    let mut d = Decision {
        verdict,
        good_position: gp,
        bands: Some(bands),
        hypothesis: Some(hyp),
        pipeline: Some(pipe),
        notes,
        certificate: Certificate::empty(inst.f.nvars()),
    };
    d.certificate = certificate::build(inst, &d)?;
    Ok(d)
}

#[cfg(test)]
mod tests;
