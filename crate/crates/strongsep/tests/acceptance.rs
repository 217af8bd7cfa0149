//! The nine acceptance criteria, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use strongsep::exp::{Lex, Val};
use strongsep::mpoly::MPoly;
use strongsep::props::{self, PropReport};
use strongsep::scalar::Scalar;
use strongsep::separation::{hypothesis_check, min_sign_changer};
use strongsep::series::Series;

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_reports(reps: &[PropReport]) -> Outcome {
    let ok = reps.iter().all(|r| r.passed());
    let detail = reps
        .iter()
        .map(|r| format!("{}: {} trials, {} applicable, {} failed {:?}", r.name, r.trials, r.applicable, r.failed, r.examples))
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn intro_point(b: i64, c: i64) -> Vec<Series<Lex<2>>> {
    vec![
        Series::exact([(Lex([0, 3]), Scalar::int(1))]),
        Series::exact([(Lex([0, 4]), Scalar::int(1)), (Lex([1, 0]), Scalar::int(b))]),
        Series::exact([(Lex([0, 5]), Scalar::int(1)), (Lex([1, 1]), Scalar::int(c))]),
    ]
}

fn intro() -> Outcome {
    let x = MPoly::var(3, 0);
    let y = MPoly::var(3, 1);
    let z = MPoly::z(3);
    let fs = [x.mul(&z).sub(&y.pow(2)), x.pow(3).sub(&y.mul(&z)), x.pow(2).mul(&y).sub(&z.pow(2))];
    let mut bad = Vec::new();
    for (b, c) in [(1, 3), (2, 5)] {
        let pt = intro_point(b, c);
        let want = [(Lex([1, 4]), c - 2 * b), (Lex([1, 5]), -(c + b)), (Lex([1, 6]), b - 2 * c)];
        for (f, (e, k)) in fs.iter().zip(want) {
            let lead = f.eval_series(&pt).leading().unwrap();
            if lead != Some((e, Scalar::int(k))) {
                bad.push(format!("b={} c={}: {} has initial term {:?}", b, c, f, lead));
            }
        }
    }
    let (a, b) = (intro_point(1, 3), intro_point(2, 5));
    let mu = Lex([1, 8]);
    match min_sign_changer(4, &a, &b).unwrap() {
        Some(w) if w.value == mu => {}
        other => bad.push(format!("sign changer {:?}", other.map(|w| w.value))),
    }
    for f in &fs {
        let h = hypothesis_check(f, &a, &b, 4).unwrap();
        if !(h.nu_alpha < Val::Fin(mu)) || h.mu_alpha.as_ref().map(|w| w.value) != Some(mu) {
            bad.push(format!("{}: nu = {}, mu = {:?}", f, h.nu_alpha, h.mu_alpha.map(|w| w.value)));
        }
    }
    Outcome { ok: bad.is_empty(), detail: if bad.is_empty() { "initial terms and mu = (1,8) exact".into() } else { bad.join("; ") } }
}

fn run(n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let el = t.elapsed();
    let ok = o.ok && el < limit;
    println!(
        "criterion {} {}: {} ({:.2?} of {:?}) {}",
        n,
        name,
        if ok { "PASS" } else { "FAIL" },
        el,
        limit,
        o.detail
    );
    ok
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "intro example", s(5), intro),
        run(2, "perturbation bound", s(60), || from_reports(&[props::perturbation(SEED, 200)])),
        run(3, "privileged branches", s(120), || from_reports(&[props::privbranch(SEED, 500)])),
        run(4, "recentering", s(60), || from_reports(&[props::recenter_prop(SEED, 100)])),
        run(5, "real and imaginary parts", s(30), || from_reports(&[props::re_im(SEED, 300)])),
        run(6, "equidistance and Rolle", s(120), || from_reports(&[props::rolle(SEED, 200)])),
        run(7, "separation soundness", s(180), || from_reports(&[props::separation(SEED, 50)])),
        run(8, "Newton polygons", s(60), || from_reports(&[props::polygon(SEED, 200, 100)])),
        run(9, "Sturm counts", s(30), || from_reports(&[props::sturm(SEED, 200)])),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed);
        std::process::exit(1);
    }
}
