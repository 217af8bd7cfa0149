use super::*;
use crate::exp::{qi, Lex};
use crate::scalar::q;

fn mono(c: i64, e: i64) -> Series<QExp> {
    Series::monomial(Scalar::int(c), qi(e))
}

fn line(c: i64) -> MPoly {
    MPoly::z(2).sub(&MPoly::var(2, 0).scale(&Scalar::int(c)))
}

fn unit_box() -> BoxDomain {
    BoxDomain::new(vec![q(0)], vec![q(1)]).unwrap()
}

fn pt(zc: i64) -> Curvette<QExp> {
    Curvette::new(vec![mono(1, 1)], mono(zc, 1))
}

#[test]
fn single_line_same_side() {
    let inst = Instance::new(line(1), pt(2), pt(3), unit_box());
    let d = decide_separation(&inst).unwrap();
    assert!(d.good_position.verified);
    assert_eq!(d.verdict, Verdict::SameComponent);
    assert!(matches!(d.pipeline.unwrap().outcome, PipelineOutcome::Same { .. }));
}

#[test]
fn two_lines_violated() {
    // (z − x)(z + x) at z = 2t and z = −2t
    let f = line(1).mul(&line(-1));
    let inst = Instance::new(f, pt(2), pt(-2), unit_box());
    let d = decide_separation(&inst).unwrap();
    let b = d.bands.clone().unwrap();
    assert!(!b.same);
    assert_eq!(d.verdict, Verdict::HypothesisViolated);
    let h = d.hypothesis.as_ref().unwrap();
    assert_eq!(h.mu_alpha.as_ref().unwrap().value, qi(1));
    assert_eq!(h.nu_alpha, Val::Fin(qi(2)));
    // the derivative argument reaches z itself
    match &d.pipeline.as_ref().unwrap().outcome {
        PipelineOutcome::Witness { poly, below_f, .. } => {
            assert_eq!(*poly, MPoly::z(2));
            assert!(below_f);
        }
        o => panic!("{:?}", o),
    }
    for (line, ok) in replay(&d.certificate).unwrap() {
        assert!(ok, "{}", line);
    }
}

#[test]
fn not_good_position() {
    // z² − x changes its real root count across x = 0
    let x = MPoly::var(2, 0);
    let f = MPoly::z(2).pow(2).sub(&x);
    let dom = BoxDomain::new(vec![q(-1)], vec![q(1)]).unwrap();
    let a = Curvette::new(vec![mono(1, 2)], mono(2, 1));
    let inst = Instance::new(f, a.clone(), a, dom);
    let d = decide_separation(&inst).unwrap();
    assert_eq!(d.verdict, Verdict::NotGoodPosition);
    assert!(matches!(BoxDomain::new(vec![q(1)], vec![q(1)]), Err(Error::EmptyDomain)));
}

#[test]
fn theta_values() {
    // f = (z − x)(z − 2x) at z = 3t/2: ν(f) = 2, ν(f′) = ν(2z − 3x) = ∞
    let f = line(1).mul(&line(2));
    let g = Curvette::new(vec![Series::monomial(Scalar::int(2), qi(1))], mono(3, 1));
    assert_eq!(theta(&f, &g).unwrap(), Some(2));
    assert_eq!(theta(&f, &pt(5)).unwrap(), Some(1));
}

#[test]
fn rolle_examples() {
    // roots t and t + t² of g; derivative root t + t²/2 between them
    let g = Curvette::new(vec![mono(1, 1)], Series::zero());
    let h1 = Series::exact([(qi(1), Scalar::one())]);
    let h2 = Series::exact([(qi(1), Scalar::one()), (qi(2), Scalar::one())]);
    let p = ZPoly::linear(&h1).mul(&ZPoly::linear(&h2));
    let r = rolle_between(&p, &Branch::from_series(h1.clone()), &Branch::from_series(h2), &g, 64).unwrap();
    assert_eq!(r.case, RolleCase::Equidistance);
    assert_eq!(r.contact, qi(2));
    assert!(r.holds);
    assert_eq!(r.v.phi.coeff(&qi(2)), Some(Scalar::frac(1, 2)));
    // generalized Rolle: h₁ = 0 with value 1 at z = t, h₂ = t + t³ with value 3
    let g = Curvette::new(vec![mono(1, 1)], mono(1, 1));
    let h1 = Series::zero();
    let h2 = Series::exact([(qi(1), Scalar::one()), (qi(3), Scalar::one())]);
    let p = ZPoly::linear(&h1).mul(&ZPoly::linear(&h2));
    let r = rolle_between(&p, &Branch::from_series(h1), &Branch::from_series(h2), &g, 64).unwrap();
    assert_eq!(r.case, RolleCase::GeneralizedRolle);
    assert_eq!(r.nu_v, Val::Fin(qi(1)));
    assert!(r.holds);
}

#[test]
fn claim_chain_three_lines() {
    // f = z(z − x)(z − 2x) with α: z = −t, β: z = 3t separated by all three
    // roots; ν_α(f) = 3, derivatives of value 2, 1, 0
    let f = MPoly::z(2).mul(&line(1)).mul(&line(2));
    let (a, b) = (pt(-1), pt(3));
    let p = run_pipeline(&f, &a, &b, 64).unwrap();
    assert!(matches!(p.outcome, PipelineOutcome::Witness { .. }), "{:?}", p.outcome);
}

#[test]
fn intro_example() {
    // x = t^(0,3), y = t^(0,4) + b t^(1,0), z = t^(0,5) + c t^(1,1)
    let curv = |b: i64, c: i64| {
        alloc::vec![
            Series::exact([(Lex([0, 3]), Scalar::one())]),
            Series::exact([(Lex([0, 4]), Scalar::one()), (Lex([1, 0]), Scalar::int(b))]),
            Series::exact([(Lex([0, 5]), Scalar::one()), (Lex([1, 1]), Scalar::int(c))]),
        ]
    };
    let (alpha, beta) = (curv(1, 3), curv(2, 5));
    let x = MPoly::var(3, 0);
    let y = MPoly::var(3, 1);
    let z = MPoly::z(3);
    let fs = [
        x.mul(&z).sub(&y.pow(2)),
        x.pow(3).sub(&y.mul(&z)),
        x.pow(2).mul(&y).sub(&z.pow(2)),
    ];
    let w = min_sign_changer(4, &alpha, &beta).unwrap().unwrap();
    assert_eq!(w.value, Lex([1, 8]));
    for (f, v) in fs.iter().zip([Lex([1, 4]), Lex([1, 5]), Lex([1, 6])]) {
        let r = hypothesis_check(f, &alpha, &beta, 1).unwrap();
        assert_eq!(r.nu_alpha, Val::Fin(v));
        assert_eq!(r.sign_alpha, r.sign_beta);
        assert!(r.nu_alpha < Val::Fin(w.value));
    }
}

#[test]
fn claim_chain_at_critical_points() {
    // f = (z² − x²)(z² − 49x²); α: z = −5t and β: z = 5t sit at critical
    // points, so f′ vanishes there and θ = 2 at both
    let x = MPoly::var(2, 0);
    let z = MPoly::z(2);
    let f = z.pow(2).sub(&x.pow(2)).mul(&z.pow(2).sub(&x.pow(2).scale(&Scalar::int(49))));
    let (a, b) = (pt(-5), pt(5));
    assert_eq!(theta(&f, &a).unwrap(), Some(2));
    assert_eq!(theta(&f, &b).unwrap(), Some(2));
    let c = build_claim_chain(&f, &a, &b, 2, 64).unwrap();
    assert_eq!(c.steps.len(), 2);
    assert!(c.checks.iter().all(|k| k.holds));
    // h̃₁ = 0, and the privileged branch of f′ at α is z(t) itself
    assert_eq!(c.steps[0].h_tilde.as_ref().unwrap().alpha.phi, Series::zero());
    assert_eq!(c.steps[0].h_alpha.as_ref().unwrap().1, Val::Inf);
    assert_eq!(c.steps[1].rolle[0].case, RolleCase::GeneralizedRolle);
    assert_eq!(c.separating.k, 2);
    let inst = Instance::new(f, a, b, unit_box());
    let d = decide_separation(&inst).unwrap();
    assert_eq!(d.verdict, Verdict::HypothesisViolated);
    let p = d.pipeline.as_ref().unwrap();
    assert!(p.levels[0].chain.is_some());
    match &p.outcome {
        PipelineOutcome::Witness { poly, below_f, .. } => {
            assert_eq!(*poly, z);
            assert!(below_f);
        }
        o => panic!("{:?}", o),
    }
    for (line, ok) in replay(&d.certificate).unwrap() {
        assert!(ok, "{}", line);
    }
}
