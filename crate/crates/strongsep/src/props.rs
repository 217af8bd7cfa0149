//! Randomized property suite. Every property draws its instances from a
//! seeded generator and checks the library against an independent oracle:
//! instances are built from known factors, so values and root counts are
//! known by construction.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebraic::RealNumber;
use crate::branches::{coef_real, newton_puiseux, Branch, NpConfig, View};
use crate::exp::{qe, qi, QExp, Val};
use crate::mpoly::MPoly;
use crate::perturb::{perturbation_bound_check, roots_in_disk};
use crate::poly::Poly;
use crate::polygon::Polygon;
use crate::scalar::{q, qf, Quad, Scalar, Q};
use crate::separation::{band_oracle, hypothesis_check, rolle_between, HypothesisStatus};
use crate::series::Series;
use crate::sturm::{isolate_real_roots, sturm_count, Bound, CountMode};
use crate::valuation::{check_privbranch, nu_complex, nu_complex_norm, recenter, Curvette, PrivBranchVerdict, ReImPoly};
use crate::zpoly::ZPoly;

/// Outcome of one property over many random instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropReport {
    pub name: &'static str,
    pub trials: usize,
    /// Instances on which the property's premise held.
    pub applicable: usize,
    pub failed: usize,
    /// The first few failures.
    pub examples: Vec<String>,
}

impl PropReport {
    fn new(name: &'static str) -> PropReport {
        PropReport { name, trials: 0, applicable: 0, failed: 0, examples: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.examples.len() < 5 {
            self.examples.push(msg);
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Names of the properties run by [`run_all`].
pub const NAMES: [&str; 8] = [
    "perturbation",
    "privbranch",
    "recenter",
    "re-im",
    "rolle",
    "separation",
    "polygon",
    "sturm",
];

/// Runs every property with `scale` instances per unit of work.
pub fn run_all(seed: u64, scale: usize) -> Vec<PropReport> {
    vec![
        perturbation(seed, scale),
        privbranch(seed, scale),
        recenter_prop(seed, scale),
        re_im(seed, scale),
        rolle(seed, scale),
        separation(seed, scale.div_ceil(4)),
        polygon(seed, scale, scale),
        sturm(seed, scale),
    ]
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn nonzero(rng: &mut ChaCha8Rng, m: i64) -> i64 {
    let k = rng.gen_range(1..=m);
    if rng.gen_bool(0.5) {
        -k
    } else {
        k
    }
}

fn t() -> Series<QExp> {
    Series::monomial(Scalar::one(), qi(1))
}

fn mono(c: Scalar, e: QExp) -> Series<QExp> {
    Series::monomial(c, e)
}

fn gamma_z(z: Series<QExp>) -> Curvette<QExp> {
    Curvette::new(vec![t()], z)
}

fn from_roots(roots: &[Series<QExp>]) -> ZPoly<QExp> {
    roots.iter().fold(ZPoly::constant(Series::one()), |acc, r| acc.mul(&ZPoly::linear(r)))
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

// ---------------------------------------------------------------------------
// perturbation

/// Fujiwara: every root has modulus `≤ 2·max |a_k|^{1/(d−k)}`, so
/// `|a_k| < (ε/2)^{d−k}` for all `k` certifies the open `ε`-disk.
fn fujiwara_inside(p: &Poly<Q>, eps: &Q) -> bool {
    let d = p.degree().unwrap();
    let half = eps / q(2);
    (0..d).all(|k| p.coeff(k).abs() < num_traits::pow(half.clone(), d - k))
}

/// Exact root moduli for monic degree one and two.
fn exact_inside(p: &Poly<Q>, eps: &Q) -> bool {
    match p.degree().unwrap() {
        1 => p.coeff(0).abs() < *eps,
        2 => {
            let (a0, a1) = (p.coeff(0), p.coeff(1));
            let disc = &a1 * &a1 - q(4) * &a0;
            if disc.is_negative() {
                // |w|² = a₀ for a conjugate pair
                a0 < eps * eps
            } else {
                // max |w| = (|a₁| + √disc)/2
                let room = q(2) * eps - a1.abs();
                room.is_positive() && disc < &room * &room
            }
        }
        _ => unreachable!(),
    }
}

/// Monic polynomials with coefficients in the `δ`-box have all roots in the
/// open `ε`-disk.
pub fn perturbation(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("perturbation");
    for d in 1..=4u32 {
        for (k, eps) in [qf(1, 2), qf(1, 10)].iter().enumerate() {
            let rep = perturbation_bound_check(d, eps, trials, seed ^ ((d as u64) << 8 | k as u64));
            for p in &rep.samples {
                r.trials += 1;
                r.applicable += 1;
                let oracle = if d <= 2 { exact_inside(p, eps) } else { fujiwara_inside(p, eps) };
                if !roots_in_disk(p, eps) || !oracle {
                    r.fail(format!("d={} eps={} p={}", d, eps, p));
                }
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// privileged branches

/// Roots `center + ζ·r·t^a` for one of several root-of-unity patterns.
fn cluster(rng: &mut ChaCha8Rng, center: &Series<QExp>) -> Vec<Series<QExp>> {
    let a = qi(rng.gen_range(1..=3));
    let r = Scalar::int(rng.gen_range(1..=3));
    let i = Scalar::i();
    let zetas: Vec<Scalar> = match rng.gen_range(0..5) {
        0 => vec![Scalar::one()],
        1 => vec![Scalar::one(), Scalar::int(-1)],
        2 => vec![i.clone(), -&i],
        3 => vec![Scalar::one(), Scalar::int(-1), i.clone(), -&i],
        _ => {
            // cube roots of unity
            let re = Quad::rat(qf(-1, 2));
            let im = Quad::new(q(0), qf(1, 2), 3);
            vec![Scalar::one(), Scalar::new(re.clone(), im.clone()), Scalar::new(re, -im)]
        }
    };
    zetas.iter().map(|z| center.add(&mono(z * &r, a))).collect()
}

fn random_t_poly(rng: &mut ChaCha8Rng, max_terms: usize, emax: i64, cmax: i64) -> Series<QExp> {
    let n = rng.gen_range(0..=max_terms);
    Series::exact((0..n).map(|_| (qi(rng.gen_range(1..=emax)), Scalar::int(nonzero(rng, cmax)))))
}

/// If `ν(g^{(i)}) ≥ ν(g)` for `i ≤ k`, every privileged branch of `g^{(k)}`
/// has a larger value than every branch of `g`.
pub fn privbranch(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("privbranch");
    let mut rng = rng_for(seed, 1);
    while r.trials < trials {
        let c = random_t_poly(&mut rng, 2, 2, 3);
        let mut roots: Vec<Series<QExp>> = Vec::new();
        // a lone balanced cluster makes the premise hold for far-out points
        let want = if rng.gen_bool(0.5) { 2 } else { rng.gen_range(2..=5) };
        let mut tries = 0;
        while roots.len() < want && tries < 20 {
            tries += 1;
            let off = if want > 2 && rng.gen_bool(0.3) { mono(Scalar::int(nonzero(&mut rng, 2)), qi(rng.gen_range(1..=4))) } else { Series::zero() };
            let cl = cluster(&mut rng, &c.add(&off));
            if roots.len() + cl.len() > 5 || cl.iter().any(|x| roots.contains(x)) {
                continue;
            }
            roots.extend(cl);
        }
        if roots.len() < 2 {
            continue;
        }
        let d = roots.len();
        let k = rng.gen_range(1..d);
        let w = rng.gen_range(-2..=2);
        let z = c.add(&mono(Scalar::int(w), qi(rng.gen_range(1..=8))));
        let g = from_roots(&roots);
        let gamma = gamma_z(z.clone());
        r.trials += 1;
        let brute: Vec<Val<QExp>> = roots.iter().map(|p| z.sub(p).order().unwrap()).collect();
        if brute.iter().any(|v| v.is_inf()) {
            continue;
        }
        match check_privbranch(&g, k, &gamma, &NpConfig::default()) {
            Err(e) => r.fail(format!("g={} k={} z={}: {}", g, k, z, e)),
            Ok(PrivBranchVerdict::NotApplicable { .. }) => {}
            Ok(PrivBranchVerdict::Fails(tb)) => {
                r.applicable += 1;
                r.fail(format!("g={} k={} z={}: fails {:?}", g, k, z, tb));
            }
            Ok(PrivBranchVerdict::Holds(tb)) => {
                r.applicable += 1;
                let top = brute.iter().max().unwrap();
                // the roots are distinct, so every branch is simple
                let ok_values = sorted(tb.branch_values.clone()) == sorted(brute.clone());
                let ok_priv = tb.privileged.iter().all(|&h| tb.deriv_branch_values[h] > *top);
                let ok_slope = slope_chain(&g, k, &gamma);
                if !(ok_values && ok_priv && ok_slope == Ok(true)) {
                    r.fail(format!("g={} k={} z={}: values {} priv {} slopes {:?}", g, k, z, ok_values, ok_priv, ok_slope));
                }
            }
        }
    }
    r
}

/// In a coordinate recentred for `g, g′, …, g^{(k)}`, with `L` the side of
/// minimal slope of `Δ(g)` from `(0, ν(a₀))` to `(ε, ν(a_ε))`:
/// `(ν(a₀) − ν(a_ε))/ε < (ν(a_k) − ν(a_ε))/(ε − k)`.
fn slope_chain(g: &ZPoly<QExp>, k: usize, gamma: &Curvette<QExp>) -> crate::Result<bool> {
    let fam: Vec<ZPoly<QExp>> = (0..=k).map(|i| g.divided_derivative(i)).collect();
    let (phi, _) = recenter(&fam, gamma)?;
    let a = g.shift(&phi);
    let p = Polygon::build(&a)?;
    let l = p.min_slope_side()?;
    if l.i != 0 || l.j <= k {
        return Ok(false);
    }
    let Val::Fin(ak) = a.coeff(k).order()? else {
        return Ok(true);
    };
    let lhs = (l.eps - l.theta) / qi(l.j as i64);
    let rhs = (ak - l.theta) / qi((l.j - k) as i64);
    Ok(lhs < rhs)
}

// ---------------------------------------------------------------------------
// recentering

/// `min_i ν(b_i) + i·v` over the coefficients of `g(z̃ + φ)`, with the
/// largest index attaining it.
fn nu_and_delta(g: &ZPoly<QExp>, phi: &Series<QExp>, z: &Series<QExp>) -> (Val<QExp>, usize) {
    let v = z.sub(phi).order().unwrap();
    let b = g.shift(phi);
    let vals: Vec<Val<QExp>> =
        b.coeffs().iter().enumerate().map(|(i, a)| a.order().unwrap().plus(&v.times(i as i64))).collect();
    let m = vals.iter().min().cloned().unwrap_or(Val::Inf);
    let delta = vals.iter().rposition(|x| *x == m).unwrap_or(0);
    (m, delta)
}

/// After recentering `ν_{z̃}(g) = ν_γ(g)` for the whole family, the values
/// never decrease along the steps, and the second stage reaches `δ = 0`.
pub fn recenter_prop(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("recenter");
    let mut rng = rng_for(seed, 2);
    while r.trials < trials {
        let nz = rng.gen_range(1..=3);
        let mut zt: Vec<(QExp, Scalar)> = Vec::new();
        let mut e = 0;
        for _ in 0..nz {
            e += rng.gen_range(1..=2);
            zt.push((qi(e), Scalar::frac(nonzero(&mut rng, 3), rng.gen_range(1..=2))));
        }
        let z = Series::exact(zt.clone());
        let members = rng.gen_range(1..=3);
        let mut gs = Vec::new();
        for _ in 0..members {
            if rng.gen_bool(0.25) {
                let a0 = random_t_poly(&mut rng, 2, 4, 3);
                let a1 = random_t_poly(&mut rng, 2, 3, 3);
                gs.push(ZPoly::new(vec![a0, a1, Series::one()]));
                continue;
            }
            let nf = rng.gen_range(1..=3);
            let mut roots = Vec::new();
            for _ in 0..nf {
                let m = rng.gen_range(0..=zt.len());
                let mut p = Series::exact(zt[..m].iter().cloned());
                let last = if m == 0 { 0 } else { zt[m - 1].0.to_integer() };
                let pe = qi(last + rng.gen_range(1..=3));
                let mut pc = Scalar::int(nonzero(&mut rng, 3));
                if zt.get(m).is_some_and(|(e, c)| *e == pe && *c == pc) {
                    pc = &pc + &Scalar::one();
                }
                p = p.add(&mono(pc, pe));
                roots.push(p);
            }
            gs.push(from_roots(&roots));
        }
        r.trials += 1;
        let nus: Vec<Val<QExp>> = gs.iter().map(|g| g.eval(&z).order().unwrap()).collect();
        if nus.iter().any(|v| v.is_inf()) {
            continue;
        }
        r.applicable += 1;
        let (phi, rep) = match recenter(&gs, &gamma_z(z.clone())) {
            Ok(x) => x,
            Err(err) => {
                r.fail(format!("z={} gs={:?}: {}", z, gs, err));
                continue;
            }
        };
        let mut bad = Vec::new();
        for (i, g) in gs.iter().enumerate() {
            if nu_and_delta(g, &phi, &z).0 != nus[i] {
                bad.push(format!("member {} not recentred", i));
            }
        }
        let mut prev: Option<&Vec<Val<QExp>>> = None;
        for s in &rep.steps {
            if let Some(p) = prev {
                if s.nu_zs.iter().zip(p).any(|(a, b)| a < b) {
                    bad.push("values decreased".into());
                }
            }
            prev = Some(&s.nu_zs);
        }
        if !rep.monotone {
            bad.push("reported non-monotone".into());
        }
        if let Some(st) = &rep.stage2 {
            let full = phi.add(&st.phi_star);
            for (i, g) in gs.iter().enumerate() {
                if nu_and_delta(g, &full, &z).1 != 0 || st.deltas[i] != 0 {
                    bad.push(format!("stage 2 delta nonzero for member {}", i));
                }
            }
        }
        if !bad.is_empty() {
            r.fail(format!("z={} gs={:?}: {}", z, gs, bad.join("; ")));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// real and imaginary parts

fn random_half_series(rng: &mut ChaCha8Rng, n: usize, complex: bool) -> Vec<(QExp, Scalar)> {
    let mut out = Vec::new();
    let mut k = 0;
    for _ in 0..n {
        k += rng.gen_range(1..=2);
        let re = Quad::rat(qf(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
        let im = if complex && rng.gen_bool(0.6) { Quad::rat(qf(nonzero(rng, 3), rng.gen_range(1..=2))) } else { Quad::zero() };
        let c = Scalar::new(re, im);
        if !c.is_zero() {
            out.push((qe(k, 2), c));
        }
    }
    out
}

/// `ν(h) = min(ν Re h, ν Im h) = ½ν(Re² + Im²) ≤ ν(Im h)` for complex
/// branches `h = z − φ`.
pub fn re_im(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("re-im");
    let mut rng = rng_for(seed, 3);
    while r.trials < trials {
        let n = rng.gen_range(1..=4);
        let terms = random_half_series(&mut rng, n, true);
        let phi = Series::exact(terms.clone());
        if phi.is_real() {
            continue;
        }
        r.trials += 1;
        r.applicable += 1;
        let re_phi = phi.re();
        let m = rng.gen_range(0..=re_phi.terms().len());
        let mut z = Series::exact(re_phi.terms()[..m].iter().cloned());
        let n = rng.gen_range(0..=2);
        z = z.add(&Series::exact(random_half_series(&mut rng, n, false)).shift(&qi(3)));
        let gamma = gamma_z(z.clone());
        let re_v = z.sub(&re_phi);
        let im_v = phi.im().neg();
        let a = re_v.order().unwrap();
        let b = im_v.order().unwrap();
        let expect = Val::min(a, b.clone());
        let norm = match re_v.mul(&re_v).add(&im_v.mul(&im_v)).order().unwrap() {
            Val::Fin(e) => Val::Fin(e / qi(2)),
            Val::Inf => Val::Inf,
        };
        let h = match ReImPoly::of_branch(&Branch::from_series(phi.clone())) {
            Ok(h) => h,
            Err(e) => {
                r.fail(format!("phi={}: {}", phi, e));
                continue;
            }
        };
        let got = nu_complex(&h, &gamma);
        let got_norm = nu_complex_norm(&h, &gamma);
        let contact = z.sub(&phi).order().unwrap();
        let ok = got.as_ref() == Ok(&expect)
            && got_norm.as_ref() == Ok(&expect)
            && norm == expect
            && contact == expect
            && b >= expect;
        if !ok {
            r.fail(format!("phi={} z={}: {:?} {:?} expect {}", phi, z, got, got_norm, expect));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Rolle

/// For real roots `h₁ = P + …`, `h₂ = P + b·t^e + …` of `g`, the derivative
/// has a real branch `v = P + c·t^e + …` with `c` strictly between `0` and
/// `b`, and no unique minimum among `ν(h₁), ν(h₂), ν(v)`.
pub fn rolle(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("rolle");
    let mut rng = rng_for(seed, 4);
    while r.trials < trials {
        let s = rng.gen_range(0..=3);
        let mut prefix = Vec::new();
        let mut k = 0;
        for _ in 0..s {
            k += rng.gen_range(1..=2);
            prefix.push((qe(k, 2), Scalar::frac(nonzero(&mut rng, 3), rng.gen_range(1..=2))));
        }
        k += rng.gen_range(1..=2);
        let e = qe(k, 2);
        let b = qf(nonzero(&mut rng, 4), rng.gen_range(1..=3));
        let p = Series::exact(prefix.clone());
        let tail = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..=2);
            Series::exact((0..n).map(|j| (e + qi(j + 1), Scalar::int(nonzero(rng, 3)))))
        };
        let h1 = p.add(&tail(&mut rng));
        let h2 = p.add(&mono(Scalar::rat(b.clone()), e)).add(&tail(&mut rng));
        let mut roots = vec![h1.clone(), h2.clone()];
        for _ in 0..rng.gen_range(0..=2) {
            if rng.gen_bool(0.5) && !prefix.is_empty() {
                // a real root leaving the prefix early
                let j = rng.gen_range(0..prefix.len());
                let mut q = Series::exact(prefix[..j].iter().cloned());
                let c = &prefix[j].1 + &Scalar::int(nonzero(&mut rng, 2));
                q = q.add(&mono(c, prefix[j].0));
                roots.push(q);
            } else if roots.len() <= 3 {
                let c = Scalar::new(Quad::int(rng.gen_range(-2..=2)), Quad::int(nonzero(&mut rng, 2)));
                let x = mono(c, qi(rng.gen_range(1..=3)));
                roots.push(p.add(&x));
                roots.push(p.add(&x.conj()));
            }
        }
        let z = match rng.gen_range(0..4) {
            0 => p.add(&mono(Scalar::frac(nonzero(&mut rng, 4), rng.gen_range(1..=3)), e)),
            1 => h1.add(&mono(Scalar::int(nonzero(&mut rng, 2)), e + qi(rng.gen_range(1..=3)))),
            2 => h2.add(&mono(Scalar::int(nonzero(&mut rng, 2)), e + qi(rng.gen_range(1..=3)))),
            _ => Series::exact(random_half_series(&mut rng, 2, false)),
        };
        if roots.iter().any(|x| *x == z) {
            continue;
        }
        r.trials += 1;
        r.applicable += 1;
        let g = from_roots(&roots);
        let gamma = gamma_z(z.clone());
        let rep = match rolle_between(&g, &Branch::from_series(h1.clone()), &Branch::from_series(h2.clone()), &gamma, 64) {
            Ok(x) => x,
            Err(err) => {
                r.fail(format!("g={} z={}: {}", g, z, err));
                continue;
            }
        };
        let zero = RealNumber::Exact(Quad::zero());
        let bb = RealNumber::Exact(Quad::rat(b.clone()));
        let (lo, hi) = if b.is_positive() { (&zero, &bb) } else { (&bb, &zero) };
        let inside = View::of_branch(&rep.v)
            .coef(&e)
            .and_then(|c| coef_real(&c))
            .is_some_and(|c| c.compare(lo) == Ordering::Greater && c.compare(hi) == Ordering::Less);
        let n1 = z.sub(&h1).order().unwrap();
        let n2 = z.sub(&h2).order().unwrap();
        let nv = rep.v.contact_with(&z);
        let ok_vals = n1 == rep.nu_h1 && n2 == rep.nu_h2 && nv.as_ref() == Ok(&rep.nu_v);
        let m = [&n1, &n2, &rep.nu_v].into_iter().min().unwrap().clone();
        let at_min = [&n1, &n2, &rep.nu_v].iter().filter(|x| ***x == m).count();
        if !(inside && ok_vals && at_min >= 2 && rep.holds && rep.contact == e) {
            r.fail(format!("g={} z={}: inside {} values {} at_min {}", g, z, inside, ok_vals, at_min));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// separation

/// Rational slopes of the line arrangements `∏(z − c·x)`.
pub const LINE_SLOPES: [(i64, i64); 7] = [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)];

/// Every arrangement of one to four distinct lines through the origin with
/// slopes from [`LINE_SLOPES`].
pub fn line_configurations() -> Vec<Vec<Q>> {
    let n = LINE_SLOPES.len();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() <= 4 {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| qf(LINE_SLOPES[i].0, LINE_SLOPES[i].1)).collect());
        }
    }
    out
}

pub fn lines(cs: &[Q]) -> MPoly {
    let x = MPoly::var(2, 0);
    let z = MPoly::z(2);
    cs.iter().fold(MPoly::constant(2, Scalar::one()), |acc, c| acc.mul(&z.sub(&x.scale(&Scalar::rat(c.clone())))))
}

fn random_line_point(rng: &mut ChaCha8Rng, cs: &[Q]) -> Curvette<QExp> {
    let p = qi(rng.gen_range(1..=2));
    let a = qf(rng.gen_range(1..=2), rng.gen_range(1..=2));
    let x = mono(Scalar::rat(a.clone()), p);
    let z = match rng.gen_range(0..3) {
        0 => {
            // near a line, with contact above ν(x)
            let c = &cs[rng.gen_range(0..cs.len())];
            let w = qf(nonzero(rng, 3), rng.gen_range(1..=2));
            x.scale(&Scalar::rat(c.clone())).add(&mono(Scalar::rat(w), p + qe(rng.gen_range(1..=4), 2)))
        }
        1 => mono(Scalar::rat(qf(nonzero(rng, 5), rng.gen_range(1..=3))), p),
        _ => mono(Scalar::rat(qf(nonzero(rng, 5), rng.gen_range(1..=3))), qe(rng.gen_range(1..=6), 2)),
    };
    Curvette::new(vec![x], z)
}

/// Coordinates of the curvette at `t = s^D`, `D` its exponent denominator.
fn eval_at(g: &Curvette<QExp>, s: &Q) -> (Q, Q) {
    let ev = |ser: &Series<QExp>| -> Q {
        let d = ser.denominator();
        ser.terms().iter().fold(Q::zero(), |acc, (e, c)| {
            let k = (e * qi(d)).to_integer();
            acc + c.to_rational().unwrap() * num_traits::pow(s.clone(), k as usize)
        })
    };
    (ev(&g.xs[0].reparam(g.denominator())), ev(&g.z.reparam(g.denominator())))
}

/// Segment test: the straight segment between the two points at a fixed
/// small parameter crosses no line.
fn segment_same(f: &MPoly, a: &Curvette<QExp>, b: &Curvette<QExp>) -> bool {
    let s = Q::new(1.into(), num_bigint::BigInt::from(1u64 << 20));
    // t = s^(lcm of denominators) for both points
    let d = num_integer::lcm(a.denominator(), b.denominator());
    let sa = num_traits::pow(s.clone(), (d / a.denominator()) as usize);
    let sb = num_traits::pow(s, (d / b.denominator()) as usize);
    let (xa, za) = eval_at(a, &sa);
    let (xb, zb) = eval_at(b, &sb);
    // f((1−u)A + uB) as a polynomial in u
    let xu = Poly::new(vec![xa.clone(), &xb - &xa]);
    let zu = Poly::new(vec![za.clone(), &zb - &za]);
    let mut acc = Poly::constant(q(0));
    for (e, c) in f.terms() {
        let mut term = Poly::constant(c.to_rational().unwrap().clone());
        for _ in 0..e[0] {
            term = &term * &xu;
        }
        for _ in 0..e[1] {
            term = &term * &zu;
        }
        acc = &acc + &term;
    }
    let at = |u: &Q| acc.eval(u);
    !at(&q(0)).is_zero()
        && !at(&q(1)).is_zero()
        && sturm_count(&acc, &Bound::Finite(q(0)), &Bound::Finite(q(1)), CountMode::Distinct).unwrap() == 0
}

/// For line arrangements: points in different components where `f` has the
/// same sign force a violated hypothesis at degree bound two, and the
/// component oracle agrees with a segment test at a small parameter.
pub fn separation(seed: u64, pairs: usize) -> PropReport {
    let mut r = PropReport::new("separation");
    let mut rng = rng_for(seed, 5);
    for cs in line_configurations() {
        let f = lines(&cs);
        let mut done = 0;
        while done < pairs {
            let a = random_line_point(&mut rng, &cs);
            let b = random_line_point(&mut rng, &cs);
            let on_f = |g: &Curvette<QExp>| f.eval_series(&g.point()).is_zero();
            if on_f(&a) || on_f(&b) {
                continue;
            }
            done += 1;
            r.trials += 1;
            let oracle = match band_oracle(&f, &a, &b, 64) {
                Ok(o) => o,
                Err(e) => {
                    r.fail(format!("f={} a={:?} b={:?}: oracle {}", f, a, b, e));
                    continue;
                }
            };
            let h = match hypothesis_check(&f, &a.point(), &b.point(), 2) {
                Ok(h) => h,
                Err(e) => {
                    r.fail(format!("f={} a={:?} b={:?}: hypothesis {}", f, a, b, e));
                    continue;
                }
            };
            if !oracle.same && h.sign_alpha == h.sign_beta {
                r.applicable += 1;
            }
            let plausible = matches!(h.status, HypothesisStatus::PlausibleUpToDegree(_));
            if plausible && !oracle.same {
                r.fail(format!("f={} a={:?} b={:?}: plausible but separated", f, a, b));
            }
            if segment_same(&f, &a, &b) != oracle.same {
                r.fail(format!("f={} a={:?} b={:?}: segment test disagrees", f, a, b));
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Newton polygons

fn random_coeff(rng: &mut ChaCha8Rng) -> Series<QExp> {
    let n = rng.gen_range(1..=2);
    let den = rng.gen_range(1..=2);
    Series::exact((0..n).map(|_| (qe(rng.gen_range(0..=6), den), Scalar::int(nonzero(rng, 3)))))
}

fn random_zpoly(rng: &mut ChaCha8Rng) -> ZPoly<QExp> {
    let d = rng.gen_range(1..=3);
    let mut c: Vec<Series<QExp>> =
        (0..d).map(|_| if rng.gen_bool(0.2) { Series::zero() } else { random_coeff(rng) }).collect();
    let mut lead = random_coeff(rng);
    while lead.is_zero() {
        lead = random_coeff(rng);
    }
    c.push(lead);
    ZPoly::new(c)
}

/// Lower hull of the Minkowski sum of two lower hulls: merge the edges by
/// slope and keep only slope changes.
pub fn minkowski(a: &[(usize, QExp)], b: &[(usize, QExp)]) -> Vec<(usize, QExp)> {
    let edges = |h: &[(usize, QExp)]| -> Vec<(usize, QExp)> { h.windows(2).map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1)).collect() };
    let mut es = edges(a);
    es.extend(edges(b));
    es.sort_by_key(|(dx, dy)| dy / qi(*dx as i64));
    let mut out = vec![(a[0].0 + b[0].0, a[0].1 + b[0].1)];
    let mut last_slope: Option<QExp> = None;
    for (dx, dy) in es {
        let s = dy / qi(dx as i64);
        let (px, py) = *out.last().unwrap();
        let next = (px + dx, py + dy);
        if last_slope == Some(s) {
            *out.last_mut().unwrap() = next;
        } else {
            out.push(next);
        }
        last_slope = Some(s);
    }
    out
}

/// Minkowski additivity of Newton polygons under products, strictly
/// increasing slopes, and slopes equal to minus the branch values.
pub fn polygon(seed: u64, products: usize, expansions: usize) -> PropReport {
    let mut r = PropReport::new("polygon");
    let mut rng = rng_for(seed, 6);
    for _ in 0..products {
        let g = random_zpoly(&mut rng);
        let h = random_zpoly(&mut rng);
        r.trials += 1;
        r.applicable += 1;
        let (pg, ph, pgh) = (Polygon::build(&g).unwrap(), Polygon::build(&h).unwrap(), Polygon::build(&g.mul(&h)).unwrap());
        let want = minkowski(&pg.hull, &ph.hull);
        let slopes = pgh.slopes();
        if pgh.hull != want || slopes.windows(2).any(|w| w[0] >= w[1]) {
            r.fail(format!("g={} h={}: {:?} vs {:?}", g, h, pgh.hull, want));
        }
    }
    let mut done = 0;
    while done < expansions {
        let n = rng.gen_range(1..=4);
        let mut roots = Vec::new();
        for _ in 0..n {
            let den = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=6);
            let mut terms = vec![(qe(k, den), Scalar::int(nonzero(&mut rng, 3)))];
            if rng.gen_bool(0.5) {
                terms.push((qe(k, den) + qi(1), Scalar::int(nonzero(&mut rng, 3))));
            }
            roots.push(Series::exact(terms));
        }
        done += 1;
        r.trials += 1;
        r.applicable += 1;
        let g = from_roots(&roots);
        let brute = sorted(roots.iter().map(|p| -*p.order().unwrap().finite().unwrap()).collect::<Vec<_>>());
        let p = Polygon::build(&g).unwrap();
        let mut from_hull = Vec::new();
        for e in &p.edges {
            from_hull.extend(core::iter::repeat(e.slope).take(e.length()));
        }
        let from_branches = newton_puiseux(&g, None).map(|bs| {
            let mut v = Vec::new();
            for b in &bs {
                let o = b.order().ok().and_then(|o| o.finite().copied()).map(|o| -o);
                v.extend(core::iter::repeat(o).take(b.multiplicity));
            }
            sorted(v)
        });
        let want: Vec<Option<QExp>> = brute.iter().map(|x| Some(*x)).collect();
        if from_hull != brute || from_branches.as_ref() != Ok(&want) {
            r.fail(format!("g={}: hull {:?} branches {:?} expected {:?}", g, from_hull, from_branches, brute));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Sturm

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KnownRoot {
    Rational(Q),
    /// `a + s·√m` with `s = ±1`.
    Surd(Q, i8, i64),
}

impl KnownRoot {
    /// Sign of `root − x`.
    fn cmp_q(&self, x: &Q) -> Ordering {
        match self {
            KnownRoot::Rational(r) => r.cmp(x),
            KnownRoot::Surd(a, s, m) => {
                let u = a - x;
                let m = q(*m);
                if *s > 0 {
                    if !u.is_negative() {
                        Ordering::Greater
                    } else {
                        m.cmp(&(&u * &u))
                    }
                } else if !u.is_positive() {
                    Ordering::Less
                } else {
                    (&u * &u).cmp(&m)
                }
            }
        }
    }

    fn inside(&self, lo: &Bound, hi: &Bound) -> bool {
        let above = match lo {
            Bound::NegInf => true,
            Bound::Finite(x) => self.cmp_q(x) == Ordering::Greater,
            Bound::PosInf => false,
        };
        let below = match hi {
            Bound::PosInf => true,
            Bound::Finite(x) => self.cmp_q(x) == Ordering::Less,
            Bound::NegInf => false,
        };
        above && below
    }
}

fn random_bound(rng: &mut ChaCha8Rng, roots: &[Q]) -> Q {
    if !roots.is_empty() && rng.gen_bool(0.3) {
        roots[rng.gen_range(0..roots.len())].clone()
    } else {
        qf(rng.gen_range(-12..=12), rng.gen_range(1..=4))
    }
}

/// Sturm counts of cubics and quartics with known roots, in both counting
/// modes, on random open intervals.
pub fn sturm(seed: u64, trials: usize) -> PropReport {
    let mut r = PropReport::new("sturm");
    let mut rng = rng_for(seed, 7);
    while r.trials < trials {
        let target = rng.gen_range(3..=4);
        let mut p = Poly::constant(qf(nonzero(&mut rng, 5), rng.gen_range(1..=3)));
        let mut known: BTreeMap<KnownRoot, usize> = BTreeMap::new();
        let mut deg = 0;
        while deg < target {
            let kind = rng.gen_range(0..3);
            if kind == 0 || target - deg < 2 {
                let x = qf(rng.gen_range(-6..=6), rng.gen_range(1..=2));
                p = &p * &Poly::new(vec![-x.clone(), q(1)]);
                *known.entry(KnownRoot::Rational(x)).or_default() += 1;
                deg += 1;
            } else {
                let a = qf(rng.gen_range(-4..=4), rng.gen_range(1..=2));
                let m = [2i64, 3, 5, 6, 7][rng.gen_range(0..5)];
                let real = kind == 1;
                // (x − a)² ∓ m
                let c0 = &a * &a + if real { q(-m) } else { q(m) };
                p = &p * &Poly::new(vec![c0, q(-2) * &a, q(1)]);
                if real {
                    *known.entry(KnownRoot::Surd(a.clone(), 1, m)).or_default() += 1;
                    *known.entry(KnownRoot::Surd(a, -1, m)).or_default() += 1;
                }
                deg += 2;
            }
        }
        r.trials += 1;
        r.applicable += 1;
        let rats: Vec<Q> = known
            .keys()
            .filter_map(|k| match k {
                KnownRoot::Rational(x) => Some(x.clone()),
                _ => None,
            })
            .collect();
        let mut bad = Vec::new();
        if isolate_real_roots(&p).len() != known.len() {
            bad.push("isolation count".into());
        }
        for _ in 0..6 {
            let lo = match rng.gen_range(0..5) {
                0 => Bound::NegInf,
                _ => Bound::Finite(random_bound(&mut rng, &rats)),
            };
            let hi = match rng.gen_range(0..5) {
                0 => Bound::PosInf,
                _ => Bound::Finite(random_bound(&mut rng, &rats)),
            };
            let distinct = known.keys().filter(|k| k.inside(&lo, &hi)).count();
            let mult: usize = known.iter().filter(|(k, _)| k.inside(&lo, &hi)).map(|(_, m)| m).sum();
            let d = sturm_count(&p, &lo, &hi, CountMode::Distinct);
            let w = sturm_count(&p, &lo, &hi, CountMode::WithMultiplicity);
            if d != Ok(distinct) || w != Ok(mult) {
                bad.push(format!("({:?}, {:?}): {:?}/{:?} expected {}/{}", lo, hi, d, w, distinct, mult));
            }
        }
        if !bad.is_empty() {
            r.fail(format!("p={}: {}", p, bad.join("; ")));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_of_segments() {
        let a = vec![(0, qi(2)), (2, qi(0))];
        let b = vec![(0, qi(1)), (1, qi(0))];
        assert_eq!(minkowski(&a, &b), vec![(0, qi(3)), (3, qi(0))]);
        let c = vec![(0, qi(3)), (1, qi(0))];
        assert_eq!(minkowski(&a, &c), vec![(0, qi(5)), (1, qi(2)), (3, qi(0))]);
    }

    #[test]
    fn known_root_comparisons() {
        let r = KnownRoot::Surd(q(1), 1, 2);
        assert_eq!(r.cmp_q(&qf(12, 5)), Ordering::Greater);
        assert_eq!(r.cmp_q(&qf(5, 2)), Ordering::Less);
        let s = KnownRoot::Surd(q(1), -1, 2);
        // 1 − √2 ≈ −0.414
        assert_eq!(s.cmp_q(&qf(-2, 5)), Ordering::Less);
        assert_eq!(s.cmp_q(&qf(-1, 2)), Ordering::Greater);
    }

    #[test]
    fn small_runs_pass() {
        for rep in run_all(11, 3) {
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.examples);
        }
    }
}
