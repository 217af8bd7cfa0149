//! Newton–Puiseux expansion of monic polynomials in `z` into branches, and
//! the order and betweenness predicates on real branches (`t → 0⁺`).

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::algebraic::RealNumber;
use crate::error::{Error, Result};
use crate::exp::{QExp, Val};
use crate::poly::Poly;
use crate::polygon::{initial_form_edge, Polygon};
use crate::roots::{find_roots, OpaqueRoot};
use crate::scalar::Scalar;
use crate::series::{fmt_power, Series};
use crate::zpoly::{require_monic, ZPoly};

/// Default bound on exponent denominators.
pub const DEFAULT_DENOM_BOUND: i64 = 64;

/// Next term `c·t^exp` of a branch whose coefficient `c` lies outside the
/// scalar fields; `c` is a root of `factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub exp: QExp,
    pub factor: Poly<Scalar>,
    pub root: OpaqueRoot,
}

/// A root `z = φ(t)` of a monic polynomial. The stored series holds the
/// exactly known terms; its precision is the certified order. A tail, when
/// present, sits exactly at that precision.
#[derive(Clone, Debug)]
pub struct Branch {
    pub phi: Series<QExp>,
    pub tail: Option<Tail>,
    pub multiplicity: usize,
    pub parent: Arc<ZPoly<QExp>>,
}

impl PartialEq for Branch {
    fn eq(&self, o: &Branch) -> bool {
        self.phi == o.phi && self.tail == o.tail && self.multiplicity == o.multiplicity
    }
}

/// Real and imaginary parts of a complex series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReImPair {
    pub re: Series<QExp>,
    pub im: Series<QExp>,
}

impl ReImPair {
    pub fn of(s: &Series<QExp>) -> ReImPair {
        ReImPair { re: s.re(), im: s.im() }
    }

    pub fn join(&self) -> Series<QExp> {
        self.re.add(&self.im.scale(&Scalar::i()))
    }
}

/// Expansion parameters.
#[derive(Clone, Debug)]
pub struct NpConfig {
    /// Single branches are refined until their next exponent reaches this
    /// order; `None` picks `2·(max slope numerator) + 4`.
    pub target: Option<QExp>,
    pub denom_bound: i64,
}

impl Default for NpConfig {
    fn default() -> Self {
        NpConfig { target: None, denom_bound: DEFAULT_DENOM_BOUND }
    }
}

// ---------------------------------------------------------------------------
// square-free decomposition in K[s][z]

type SPoly = Poly<Scalar>;

#[derive(Clone, Debug, PartialEq)]
struct BPoly(Vec<SPoly>);

impl BPoly {
    fn new(mut c: Vec<SPoly>) -> BPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        BPoly(c)
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn deg(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    fn lc(&self) -> &SPoly {
        self.0.last().unwrap()
    }
    fn deriv(&self) -> BPoly {
        BPoly::new(
            self.0.iter().enumerate().skip(1).map(|(i, c)| c.scale(&Scalar::int(i as i64))).collect(),
        )
    }
    fn sub(&self, o: &BPoly) -> BPoly {
        let n = self.0.len().max(o.0.len());
        let z = SPoly::zero();
        BPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) - o.0.get(i).unwrap_or(&z)).collect())
    }
    fn mul_s(&self, s: &SPoly) -> BPoly {
        BPoly::new(self.0.iter().map(|c| c * s).collect())
    }
    fn shift_z(&self, k: usize) -> BPoly {
        let mut c = vec![SPoly::zero(); k];
        c.extend(self.0.iter().cloned());
        BPoly::new(c)
    }
    fn prem(&self, b: &BPoly) -> BPoly {
        let mut r = self.clone();
        let lb = b.lc().clone();
        while !r.is_zero() && r.deg() >= b.deg() {
            let k = r.deg() - b.deg();
            let lr = r.lc().clone();
            r = r.mul_s(&lb).sub(&b.shift_z(k).mul_s(&lr));
        }
        r
    }
    fn content(&self) -> SPoly {
        let mut g = SPoly::zero();
        for c in &self.0 {
            if !c.is_zero() {
                g = if g.is_zero() { c.monic() } else { g.gcd(c) };
            }
        }
        g
    }
    fn prim(&self) -> BPoly {
        let c = self.content();
        BPoly::new(self.0.iter().map(|x| x.divrem(&c).0).collect())
    }
    /// Scales a polynomial with constant leading coefficient to be monic.
    fn monic(&self) -> BPoly {
        let lc = self.lc();
        debug_assert_eq!(lc.degree(), Some(0));
        let inv = lc.coeff(0).inv();
        BPoly::new(self.0.iter().map(|c| c.scale(&inv)).collect())
    }
    fn gcd(&self, o: &BPoly) -> BPoly {
        let (mut a, mut b) = (self.prim(), o.prim());
        if a.deg() < b.deg() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.prim() };
        }
        a.monic()
    }
    /// Exact quotient by a monic divisor.
    fn div_monic(&self, b: &BPoly) -> BPoly {
        let mut r = self.clone();
        let mut q = vec![SPoly::zero(); self.0.len().saturating_sub(b.deg()).max(1)];
        while !r.is_zero() && r.deg() >= b.deg() {
            let k = r.deg() - b.deg();
            let lr = r.lc().clone();
            q[k] = &q[k] + &lr;
            r = r.sub(&b.shift_z(k).mul_s(&lr));
        }
        debug_assert!(r.is_zero(), "inexact division");
        BPoly::new(q)
    }
    /// Yun's algorithm for a monic polynomial.
    fn squarefree(&self) -> Vec<(BPoly, usize)> {
        let mut out = Vec::new();
        let d1 = self.deriv();
        if d1.is_zero() {
            return vec![(self.clone(), 1)];
        }
        let a0 = self.gcd(&d1);
        let mut b = self.div_monic(&a0);
        let mut c = d1.div_monic(&a0);
        let mut d = c.sub(&b.deriv());
        let mut i = 1;
        while b.deg() > 0 {
            let a = if d.is_zero() { b.clone() } else { b.gcd(&d) };
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_monic(&a);
            c = d.div_monic(&a);
            d = c.sub(&b.deriv());
            i += 1;
        }
        out
    }
}

/// Square-free factors of `g` with multiplicities, or `None` when `g` has
/// truncated or negative-order coefficients.
fn squarefree_split(g: &ZPoly<QExp>) -> Option<Vec<(ZPoly<QExp>, usize)>> {
    let n = g.denominator();
    let mut rows = Vec::new();
    for a in g.coeffs() {
        if !a.is_exact() {
            return None;
        }
        let mut c: Vec<Scalar> = Vec::new();
        for (e, s) in a.terms() {
            let k = e * Ratio::from_integer(n);
            if !k.is_integer() || k.is_negative() {
                return None;
            }
            let k = k.to_integer() as usize;
            if c.len() <= k {
                c.resize(k + 1, Scalar::zero());
            }
            c[k] = s.clone();
        }
        rows.push(Poly::new(c));
    }
    let b = BPoly::new(rows);
    // a repeated factor survives every specialization of s, so one
    // square-free specialization proves g square-free
    for s0 in [Scalar::frac(2, 3), Scalar::frac(-5, 7), Scalar::int(3)] {
        let p = Poly::new(b.0.iter().map(|c| c.eval(&s0)).collect());
        if p.degree() == Some(b.deg()) && p.gcd(&p.derivative()).degree() == Some(0) {
            return Some(vec![(g.clone(), 1)]);
        }
    }
    let parts = b.squarefree();
    Some(
        parts
            .into_iter()
            .map(|(p, m)| {
                let z = ZPoly::new(
                    p.0.iter()
                        .map(|c| {
                            Series::exact(
                                c.coeffs()
                                    .iter()
                                    .enumerate()
                                    .map(|(k, s)| (Ratio::new(k as i64, n), s.clone())),
                            )
                        })
                        .collect(),
                );
                (z, m)
            })
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// expansion

struct Partial {
    phi: Series<QExp>,
    tail: Option<Tail>,
}

struct Ctx {
    target: QExp,
    denom_bound: i64,
    exp_cap: QExp,
}

fn check_denominator(prefix: &Series<QExp>, w: &QExp, bound: i64) -> Result<()> {
    let l = num_integer::lcm(prefix.denominator(), *w.denom());
    if l > bound {
        return Err(Error::DenominatorBound { denom: l, bound });
    }
    Ok(())
}

/// Removes a factor `z` from a polynomial with zero constant term.
fn deflate_z(p: &ZPoly<QExp>) -> ZPoly<QExp> {
    ZPoly::new(p.coeffs()[1..].to_vec())
}

/// Refines the single root of order `> lower` of `p` (roots of the original
/// polynomial are `prefix + roots of p`).
fn single(mut p: ZPoly<QExp>, mut prefix: Series<QExp>, ctx: &Ctx, out: &mut Vec<Partial>) -> Result<()> {
    loop {
        let a0 = p.coeff(0);
        if a0.is_zero() {
            out.push(Partial { phi: prefix, tail: None });
            return Ok(());
        }
        let (e0, c0) = a0.leading()?.ok_or(Error::UnknownOrder)?;
        let (e1, c1) = p.coeff(1).leading()?.ok_or(Error::UnknownOrder)?;
        let w = e0 - e1;
        if w >= ctx.target {
            out.push(Partial { phi: prefix.truncate(&Val::Fin(w)), tail: None });
            return Ok(());
        }
        check_denominator(&prefix, &w, ctx.denom_bound)?;
        let term = Series::monomial(-(&c0 / &c1), w);
        p = p.shift(&term);
        prefix = prefix.add(&term);
    }
}

/// Expands the `m` roots of `p` of order `> lower`.
fn expand(
    p: ZPoly<QExp>,
    prefix: Series<QExp>,
    m: usize,
    ctx: &Ctx,
    out: &mut Vec<Partial>,
) -> Result<()> {
    if m == 0 {
        return Ok(());
    }
    let mut p = p;
    let mut m = m;
    if p.coeff(0).is_zero() {
        out.push(Partial { phi: prefix.clone(), tail: None });
        p = deflate_z(&p);
        m -= 1;
        if m == 0 {
            return Ok(());
        }
    }
    if m == 1 {
        return single(p, prefix, ctx, out);
    }
    let head = ZPoly::new(p.coeffs()[..=m].to_vec());
    let poly = Polygon::build(&head)?;
    for edge in &poly.edges {
        let w = -edge.slope;
        if w > ctx.exp_cap {
            return Err(Error::NonConvergence { steps: out.len() });
        }
        check_denominator(&prefix, &w, ctx.denom_bound)?;
        let (_, gt) = initial_form_edge(&head, edge)?;
        let h = Poly::new(gt.coeffs()[edge.i..].to_vec());
        let roots = find_roots(&h);
        for (c, mu) in roots.exact {
            let term = Series::monomial(c, w);
            let np = prefix.add(&term);
            let shifted = p.shift(&term);
            if mu == 1 {
                single(shifted, np, ctx, out)?;
            } else {
                expand(shifted, np, mu, ctx, out)?;
            }
        }
        for (factor, mu, rs) in roots.opaque {
            if mu > 1 {
                return Err(Error::DegreeTooHigh);
            }
            for r in rs {
                out.push(Partial {
                    phi: prefix.truncate(&Val::Fin(w)),
                    tail: Some(Tail { exp: w, factor: factor.clone(), root: r }),
                });
            }
        }
    }
    Ok(())
}

/// Default target order `2·(max |slope numerator|) + 4` of `g`'s polygon.
pub fn default_target(g: &ZPoly<QExp>) -> Result<QExp> {
    let p = Polygon::build(g)?;
    let m = p.edges.iter().map(|e| e.slope.numer().abs()).max().unwrap_or(0);
    Ok(Ratio::from_integer(2 * m + 4))
}

/// Newton–Puiseux expansion with default settings and the given target.
pub fn newton_puiseux(g: &ZPoly<QExp>, target: Option<QExp>) -> Result<Vec<Branch>> {
    newton_puiseux_with(g, &NpConfig { target, ..NpConfig::default() })
}

/// All branches of a monic `g`, with multiplicities summing to `deg g`.
pub fn newton_puiseux_with(g: &ZPoly<QExp>, cfg: &NpConfig) -> Result<Vec<Branch>> {
    require_monic(g)?;
    let d = g.degree().unwrap();
    let parent = Arc::new(g.clone());
    if d == 0 {
        return Ok(Vec::new());
    }
    let target = match &cfg.target {
        Some(t) => *t,
        None => default_target(g)?,
    };
    let ctx = Ctx {
        target,
        denom_bound: cfg.denom_bound,
        exp_cap: target * Ratio::from_integer(8) + Ratio::from_integer(256),
    };
    let parts = squarefree_split(g).unwrap_or_else(|| vec![(g.clone(), 1)]);
    let mut out = Vec::new();
    for (f, mult) in parts {
        let df = f.degree().unwrap();
        let mut partial = Vec::new();
        expand(f, Series::zero(), df, &ctx, &mut partial)?;
        if partial.len() != df {
            return Err(Error::InvalidInput(alloc::format!(
                "expansion produced {} of {} branches",
                partial.len(),
                df
            )));
        }
        for pa in partial {
            out.push(Branch { phi: pa.phi, tail: pa.tail, multiplicity: mult, parent: parent.clone() });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// coefficient views

/// Coefficient of a branch or series at one exponent.
#[derive(Clone, Debug)]
pub enum Coef<'a> {
    Exact(Scalar),
    Opaque(&'a OpaqueRoot),
}

/// A series with an optional tail, read coefficient by coefficient.
#[derive(Clone, Copy, Debug)]
pub struct View<'a> {
    pub phi: &'a Series<QExp>,
    pub tail: Option<&'a Tail>,
}

impl<'a> View<'a> {
    pub fn of_series(s: &'a Series<QExp>) -> View<'a> {
        View { phi: s, tail: None }
    }

    pub fn of_branch(b: &'a Branch) -> View<'a> {
        View { phi: &b.phi, tail: b.tail.as_ref() }
    }

    /// `None` when the coefficient is beyond what is known.
    pub fn coef(&self, e: &QExp) -> Option<Coef<'a>> {
        if let Some(c) = self.phi.coeff(e) {
            return Some(Coef::Exact(c));
        }
        match self.tail {
            Some(t) if t.exp == *e => Some(Coef::Opaque(&t.root)),
            _ => None,
        }
    }

    /// Every coefficient is known (exact series without tail).
    pub fn is_exact(&self) -> bool {
        self.tail.is_none() && self.phi.is_exact()
    }

    fn exps(&self) -> impl Iterator<Item = QExp> + '_ {
        self.phi.terms().iter().map(|(e, _)| *e).chain(self.tail.map(|t| t.exp))
    }

    pub fn is_real(&self) -> bool {
        self.phi.is_real() && self.tail.is_none_or(|t| matches!(t.root, OpaqueRoot::Real(_)))
    }

    /// Leading exponent (value of the series).
    pub fn order(&self) -> Result<Val<QExp>> {
        match (self.phi.terms().first(), self.tail) {
            (Some((e, _)), _) => Ok(Val::Fin(*e)),
            (None, Some(t)) => Ok(Val::Fin(t.exp)),
            (None, None) => self.phi.order(),
        }
    }
}

fn merged_exps(a: &View<'_>, b: &View<'_>) -> Vec<QExp> {
    let mut v: Vec<QExp> = a.exps().chain(b.exps()).collect();
    v.sort();
    v.dedup();
    v
}

/// Exact equality of scalars from possibly different quadratic fields.
pub fn scalar_eq(a: &Scalar, b: &Scalar) -> bool {
    if a.compatible(b) {
        return a == b;
    }
    let re = RealNumber::Exact(a.re().clone()).compare(&RealNumber::Exact(b.re().clone()));
    let im = RealNumber::Exact(a.im().clone()).compare(&RealNumber::Exact(b.im().clone()));
    re == Ordering::Equal && im == Ordering::Equal
}

/// `Some(true)` if equal, `Some(false)` if different, `None` if undecidable.
fn coef_eq(a: &Coef<'_>, b: &Coef<'_>) -> Option<bool> {
    match (a, b) {
        (Coef::Exact(x), Coef::Exact(y)) => Some(scalar_eq(x, y)),
        (Coef::Exact(x), Coef::Opaque(r)) | (Coef::Opaque(r), Coef::Exact(x)) => match r {
            OpaqueRoot::Real(rr) => match x.to_real() {
                Some(q) => Some(RealNumber::Exact(q.clone()).compare(&RealNumber::Root(rr.clone())) == Ordering::Equal),
                None => Some(false),
            },
            OpaqueRoot::Complex => {
                if x.is_real() {
                    Some(false)
                } else {
                    None
                }
            }
        },
        (Coef::Opaque(OpaqueRoot::Real(r1)), Coef::Opaque(OpaqueRoot::Real(r2))) => {
            Some(r1.compare(r2) == Ordering::Equal)
        }
        (Coef::Opaque(OpaqueRoot::Real(_)), Coef::Opaque(OpaqueRoot::Complex))
        | (Coef::Opaque(OpaqueRoot::Complex), Coef::Opaque(OpaqueRoot::Real(_))) => Some(false),
        _ => None,
    }
}

pub fn coef_real(c: &Coef<'_>) -> Option<RealNumber> {
    match c {
        Coef::Exact(x) => x.to_real().map(|q| RealNumber::Exact(q.clone())),
        Coef::Opaque(OpaqueRoot::Real(r)) => Some(RealNumber::Root(r.clone())),
        Coef::Opaque(OpaqueRoot::Complex) => None,
    }
}

/// Order of `a − b` (complex coefficients allowed).
pub fn contact(a: &View<'_>, b: &View<'_>) -> Result<Val<QExp>> {
    for e in merged_exps(a, b) {
        let (Some(ca), Some(cb)) = (a.coef(&e), b.coef(&e)) else {
            return Err(Error::UnknownOrder);
        };
        match coef_eq(&ca, &cb) {
            Some(true) => continue,
            Some(false) => return Ok(Val::Fin(e)),
            None => return Err(Error::UnknownOrder),
        }
    }
    if a.is_exact() && b.is_exact() {
        return Ok(Val::Inf);
    }
    // both vanish past the listed exponents up to the smaller known bound
    Err(Error::UnknownOrder)
}

/// Sign of `a − b` as `t → 0⁺` for real views.
pub fn compare_views(a: &View<'_>, b: &View<'_>) -> Result<Ordering> {
    for e in merged_exps(a, b) {
        let (Some(ca), Some(cb)) = (a.coef(&e), b.coef(&e)) else {
            return Err(Error::Indeterminate);
        };
        let (Some(ra), Some(rb)) = (coef_real(&ca), coef_real(&cb)) else {
            return Err(Error::InvalidInput("comparison of non-real branches".into()));
        };
        match ra.compare(&rb) {
            Ordering::Equal => continue,
            o => return Ok(o),
        }
    }
    if a.is_exact() && b.is_exact() {
        Ok(Ordering::Equal)
    } else {
        Err(Error::Indeterminate)
    }
}

// ---------------------------------------------------------------------------
// branch API

impl Branch {
    /// A branch standing for a given series (no parent polynomial beyond
    /// `z − φ`).
    pub fn from_series(phi: Series<QExp>) -> Branch {
        let parent = Arc::new(ZPoly::linear(&phi));
        Branch { phi, tail: None, multiplicity: 1, parent }
    }

    pub fn view(&self) -> View<'_> {
        View::of_branch(self)
    }

    pub fn is_real(&self) -> bool {
        self.view().is_real()
    }

    /// `ν(φ)`, the `t`-adic order of the branch.
    pub fn order(&self) -> Result<Val<QExp>> {
        self.view().order()
    }

    /// The order through which the branch is known (tail exponent included).
    pub fn certified_order(&self) -> Val<QExp> {
        self.phi.prec().clone()
    }

    /// `ν(z − φ)` at `z = s`.
    pub fn contact_with(&self, s: &Series<QExp>) -> Result<Val<QExp>> {
        contact(&View::of_series(s), &self.view())
    }

    /// Sign of `φ − s`.
    pub fn compare_series(&self, s: &Series<QExp>) -> Result<Ordering> {
        compare_views(&self.view(), &View::of_series(s))
    }

    pub fn compare(&self, o: &Branch) -> Result<Ordering> {
        compare_views(&self.view(), &o.view())
    }

    /// `ord(g(φ))` lower bound, checking the branch against its parent.
    pub fn residual_order(&self) -> Val<QExp> {
        self.parent.eval(&self.phi).order_lb()
    }

    /// `Re φ + i·Im φ`; only for branches without an opaque tail.
    pub fn re_im(&self) -> Result<ReImPair> {
        if self.tail.is_some() {
            return Err(Error::DegreeTooHigh);
        }
        Ok(ReImPair::of(&self.phi))
    }

    /// Real part as a view: a complex tail is cut off.
    pub fn re_series(&self) -> Series<QExp> {
        self.phi.re()
    }

    pub fn conj(&self) -> Branch {
        Branch {
            phi: self.phi.conj(),
            tail: self.tail.clone(),
            multiplicity: self.multiplicity,
            parent: self.parent.clone(),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(t) = &self.tail else {
            return write!(f, "{}", self.phi);
        };
        let body = Series::new(self.phi.terms().iter().cloned(), Val::Inf);
        if !body.terms().is_empty() {
            write!(f, "{} + ", body)?;
        }
        match &t.root {
            OpaqueRoot::Real(r) => write!(f, "{}*{}", r, fmt_power(&t.exp))?,
            OpaqueRoot::Complex => write!(f, "croot[{}]*{}", t.factor, fmt_power(&t.exp))?,
        }
        write!(f, " + o({})", fmt_power(&t.exp))
    }
}

/// Sorts real branches increasingly.
pub fn order_real_branches(bs: &[Branch]) -> Result<Vec<Branch>> {
    let mut v: Vec<Branch> = bs.to_vec();
    for b in &v {
        if !b.is_real() {
            return Err(Error::InvalidInput("order_real_branches needs real branches".into()));
        }
    }
    // insertion sort with fallible comparisons
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1].compare(&v[j])? == Ordering::Greater {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
    Ok(v)
}

/// Whether the real branch `h` separates the points `z = a` and `z = b`:
/// `a − h` and `b − h` have opposite strict signs.
pub fn between(h: &Branch, a: &Series<QExp>, b: &Series<QExp>) -> Result<bool> {
    between_at(h, a, h, b)
}

/// As [`between`], with the branch expanded separately along each point.
pub fn between_at(ha: &Branch, a: &Series<QExp>, hb: &Branch, b: &Series<QExp>) -> Result<bool> {
    let sa = ha.compare_series(a)?.reverse();
    let sb = hb.compare_series(b)?.reverse();
    Ok(sa != Ordering::Equal && sb != Ordering::Equal && sa != sb)
}

/// `φ₁ ≤ ψ ≤ Re φ₂` or `Re φ₂ ≤ ψ ≤ φ₁` for a real `ψ` and real `φ₁`.
pub fn lies_between(psi: &Branch, phi1: &Branch, phi2: &Branch) -> Result<bool> {
    let re2 = phi2.re_series();
    let v2 = match &phi2.tail {
        Some(t) if matches!(t.root, OpaqueRoot::Real(_)) => View { phi: &phi2.phi, tail: Some(t) },
        _ => View::of_series(&re2),
    };
    let a = compare_views(&phi1.view(), &psi.view())?;
    let b = compare_views(&psi.view(), &v2)?;
    Ok(a != Ordering::Greater && b != Ordering::Greater || a != Ordering::Less && b != Ordering::Less)
}

/// `∏ (z − φ_j)^{m_j}` over the branches, tails cut at their exponent.
pub fn reconstruct(bs: &[Branch]) -> ZPoly<QExp> {
    let mut acc = ZPoly::constant(Series::one());
    for b in bs {
        let lin = ZPoly::linear(&b.phi);
        for _ in 0..b.multiplicity {
            acc = acc.mul(&lin);
        }
    }
    acc
}

/// Coefficientwise agreement of `p` with the exact `g` up to the precision
/// of each coefficient of `p`.
pub fn agrees_with(p: &ZPoly<QExp>, g: &ZPoly<QExp>) -> bool {
    let n = p.coeffs().len().max(g.coeffs().len());
    (0..n).all(|i| {
        let a = p.coeff(i);
        let b = g.coeff(i).truncate(a.prec());
        a.sub(&b).terms().is_empty()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qe, qi};
    use crate::zpoly::zpoly_q;

    fn t(c: i64, n: i64, d: i64) -> Series<QExp> {
        Series::monomial(Scalar::int(c), qe(n, d))
    }

    #[test]
    fn sqrt_t() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        let bs = newton_puiseux(&g, None).unwrap();
        assert_eq!(bs.len(), 2);
        assert!(bs.iter().all(|b| b.is_real()));
        let sorted = order_real_branches(&bs).unwrap();
        assert_eq!(sorted[0].phi, t(-1, 1, 2));
        assert_eq!(sorted[1].phi, t(1, 1, 2));
    }

    #[test]
    fn complex_pair() {
        let g = zpoly_q(&[&[(1, 1, 1)], &[], &[(1, 0, 1)]]);
        let bs = newton_puiseux(&g, None).unwrap();
        assert_eq!(bs.len(), 2);
        for b in &bs {
            assert!(!b.is_real());
            let ri = b.re_im().unwrap();
            assert!(ri.re.is_zero());
            assert_eq!(ri.im.order().unwrap(), Val::Fin(qe(1, 2)));
        }
        assert_eq!(bs[0].conj(), bs[1]);
    }

    #[test]
    fn two_edges() {
        let g = zpoly_q(&[&[(1, 3, 1)], &[(-1, 1, 1), (-1, 2, 1)], &[(1, 0, 1)]]);
        let bs = newton_puiseux(&g, None).unwrap();
        let mut phis: Vec<_> = bs.iter().map(|b| b.phi.clone()).collect();
        phis.sort_by(|a, b| a.compare(b).unwrap());
        assert_eq!(phis, vec![t(1, 2, 1), t(1, 1, 1)]);
        assert!(agrees_with(&reconstruct(&bs), &g));
    }

    #[test]
    fn multiplicity_and_truncation() {
        // (z − t)² (z² − t − t²)
        let lin = ZPoly::linear(&t(1, 1, 1));
        let q = zpoly_q(&[&[(-1, 1, 1), (-1, 2, 1)], &[], &[(1, 0, 1)]]);
        let g = lin.mul(&lin).mul(&q);
        let bs = newton_puiseux(&g, Some(qi(4))).unwrap();
        let total: usize = bs.iter().map(|b| b.multiplicity).sum();
        assert_eq!(total, 4);
        assert!(bs.iter().any(|b| b.multiplicity == 2 && b.phi == t(1, 1, 1)));
        assert!(agrees_with(&reconstruct(&bs), &g));
        for b in &bs {
            assert!(b.residual_order() >= Val::Fin(qi(4)) || b.multiplicity > 1);
        }
    }

    #[test]
    fn ordering_and_betweenness() {
        let bs: Vec<Branch> = [t(3, 1, 1), t(1, 1, 1), t(2, 1, 1)].into_iter().map(Branch::from_series).collect();
        let s = order_real_branches(&bs).unwrap();
        assert_eq!(s.iter().map(|b| b.phi.clone()).collect::<Vec<_>>(), vec![t(1, 1, 1), t(2, 1, 1), t(3, 1, 1)]);
        let a = Branch::from_series(t(1, 1, 1));
        let b = Branch::from_series(t(1, 1, 1).add(&t(-1, 2, 1)));
        let s = order_real_branches(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(s[0], b);
        let h = Branch::from_series(t(2, 1, 1));
        assert!(between(&h, &t(3, 1, 1), &t(1, 1, 1)).unwrap());
        assert!(!between(&h, &t(3, 1, 1), &t(4, 1, 1)).unwrap());
        let psi = Branch::from_series(t(1, 1, 1));
        let phi1 = Branch::from_series(Series::monomial(Scalar::frac(1, 2), qi(1)));
        let phi2 = Branch::from_series(Series::monomial(Scalar::frac(3, 2), qi(1)).add(&Series::monomial(Scalar::i(), qi(2))));
        assert!(lies_between(&psi, &phi1, &phi2).unwrap());
    }

    #[test]
    fn opaque_tail() {
        // z³ − 2t³: branches t·2^(1/3) (real) and two complex ones
        let g = zpoly_q(&[&[(-2, 3, 1)], &[], &[], &[(1, 0, 1)]]);
        let bs = newton_puiseux(&g, None).unwrap();
        assert_eq!(bs.len(), 3);
        let real: Vec<_> = bs.iter().filter(|b| b.is_real()).collect();
        assert_eq!(real.len(), 1);
        assert_eq!(real[0].order().unwrap(), Val::Fin(qi(1)));
        // contact with the curvette z = t: first coefficients differ
        assert_eq!(real[0].contact_with(&t(1, 1, 1)).unwrap(), Val::Fin(qi(1)));
        assert_eq!(real[0].compare_series(&t(1, 1, 1)).unwrap(), Ordering::Greater);
        assert_eq!(real[0].compare_series(&t(2, 1, 1)).unwrap(), Ordering::Less);
    }
}
