use std::cmp::Ordering;

use proptest::prelude::*;
use strongsep::branches::{agrees_with, between, newton_puiseux, order_real_branches, reconstruct};
use strongsep::exp::{qe, qi, QExp, Val};
use strongsep::mpoly::MPoly;
use strongsep::poly::Poly;
use strongsep::props;
use strongsep::scalar::{q, qf, Quad, Scalar, Q};
use strongsep::separation::{
    band_oracle, decide_separation, run_pipeline, BoxDomain, Instance, PipelineOutcome, Verdict,
};
use strongsep::series::Series;
use strongsep::sturm::{sturm_count, Bound, CountMode};
use strongsep::valuation::Curvette;
use strongsep::zpoly::{binomial, ZPoly};

fn term() -> impl Strategy<Value = (QExp, Scalar)> {
    (0i64..12, 1i64..=3, (-5i64..=5).prop_filter("nonzero", |c| *c != 0))
        .prop_map(|(n, d, c)| (qe(n, d), Scalar::int(c)))
}

fn series() -> impl Strategy<Value = Series<QExp>> {
    prop::collection::vec(term(), 0..4).prop_map(Series::exact)
}

fn nonzero_series() -> impl Strategy<Value = Series<QExp>> {
    prop::collection::vec(term(), 1..4).prop_map(Series::exact).prop_filter("nonzero", |s| !s.is_zero())
}

fn zpoly() -> impl Strategy<Value = ZPoly<QExp>> {
    prop::collection::vec(series(), 1..4).prop_map(ZPoly::new)
}

/// Roots with integer exponents, real or in conjugate pairs.
fn real_root_set() -> impl Strategy<Value = Vec<Series<QExp>>> {
    let root = (1i64..=3, -3i64..=3, 1i64..=3, -3i64..=3, 0i64..=2, any::<bool>());
    prop::collection::vec(root, 1..=3).prop_map(|rs| {
        let mut out: Vec<Series<QExp>> = Vec::new();
        for (e1, c1, e2, c2, im, pair) in rs {
            let base = Series::exact([(qi(e1), Scalar::int(c1)), (qi(e1 + e2), Scalar::int(c2))]);
            if pair && im != 0 {
                let w = Series::monomial(Scalar::imag(Quad::int(im)), qi(e1 + e2 + 1));
                out.push(base.add(&w));
                out.push(base.sub(&w));
            } else {
                out.push(base);
            }
        }
        out.sort_by_key(|s| s.to_string());
        out.dedup();
        out
    })
}

fn from_roots(rs: &[Series<QExp>]) -> ZPoly<QExp> {
    rs.iter().fold(ZPoly::constant(Series::one()), |acc, r| acc.mul(&ZPoly::linear(r)))
}

/// Value of an exact real series with integer exponents at a rational `t`.
fn at(s: &Series<QExp>, t: &Q) -> Q {
    s.terms().iter().fold(q(0), |acc, (e, c)| {
        acc + c.to_rational().unwrap() * num_traits::pow(t.clone(), e.to_integer() as usize)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_is_multiplicative(a in nonzero_series(), b in nonzero_series()) {
        prop_assert_eq!(a.mul(&b).order().unwrap(), a.order().unwrap().plus(&b.order().unwrap()));
    }

    #[test]
    fn order_of_sum(a in nonzero_series(), b in nonzero_series()) {
        let (oa, ob) = (a.order().unwrap(), b.order().unwrap());
        let os = a.add(&b).order().unwrap();
        prop_assert!(os >= Val::min(oa.clone(), ob.clone()));
        if oa != ob {
            prop_assert_eq!(os, Val::min(oa, ob));
        }
    }

    #[test]
    fn compare_is_total_and_translation_invariant(a in series(), b in series(), c in series()) {
        let ab = a.compare(&b).unwrap();
        prop_assert_eq!(ab, b.compare(&a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(a.add(&c).compare(&b.add(&c)).unwrap(), ab);
        let bc = b.compare(&c).unwrap();
        if ab == Ordering::Less && bc == Ordering::Less {
            prop_assert_eq!(a.compare(&c).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn reparam_scales_order(s in nonzero_series(), k in 1i64..=6) {
        prop_assert_eq!(s.reparam(k).order().unwrap(), s.order().unwrap().times(k));
    }

    #[test]
    fn nu_z_bounds_value(g in zpoly(), z in nonzero_series()) {
        let v = z.order().unwrap();
        let inz = g.nu_z(&v).unwrap();
        prop_assert!(inz.value <= g.eval(&z).order().unwrap());
    }

    #[test]
    fn divided_derivatives_compose(g in zpoly(), j in 0usize..3, k in 0usize..3) {
        let lhs = g.divided_derivative(j).divided_derivative(k);
        let rhs = g.divided_derivative(j + k).scale_scalar(&Scalar::int(binomial(j + k, j)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_multiplicative(g in zpoly(), h in zpoly(), s in series()) {
        prop_assert_eq!(g.mul(&h).eval(&s), g.eval(&s).mul(&h.eval(&s)));
    }

    #[test]
    fn branches_reconstruct_and_close_under_conjugation(rs in real_root_set()) {
        let g = from_roots(&rs);
        let bs = newton_puiseux(&g, None).unwrap();
        prop_assert!(agrees_with(&reconstruct(&bs), &g));
        let total: usize = bs.iter().map(|b| b.multiplicity).sum();
        prop_assert_eq!(total, g.degree().unwrap());
        for b in &bs {
            let c = b.conj();
            prop_assert!(bs.iter().any(|x| x.phi == c.phi && x.multiplicity == b.multiplicity));
        }
    }

    #[test]
    fn real_branch_count_matches_sturm(rs in real_root_set()) {
        let g = from_roots(&rs);
        let bs = newton_puiseux(&g, None).unwrap();
        let real = bs.iter().filter(|b| b.is_real()).count();
        let t0 = qf(1, 1 << 16);
        let p = Poly::new(g.coeffs().iter().map(|c| at(c, &t0)).collect());
        prop_assert_eq!(sturm_count(&p, &Bound::NegInf, &Bound::PosInf, CountMode::Distinct).unwrap(), real);
    }

    #[test]
    fn betweenness_matches_sorted_positions(rs in real_root_set(), a in series(), b in series()) {
        let g = from_roots(&rs);
        let bs = newton_puiseux(&g, None).unwrap();
        let real: Vec<_> = bs.into_iter().filter(|b| b.is_real()).collect();
        let sorted = order_real_branches(&real).unwrap();
        let pos = |z: &Series<QExp>| sorted.iter().filter(|h| h.compare_series(z).unwrap() == Ordering::Less).count();
        let on = |z: &Series<QExp>| sorted.iter().any(|h| h.compare_series(z).unwrap() == Ordering::Equal);
        prop_assume!(!on(&a) && !on(&b));
        let (pa, pb) = (pos(&a), pos(&b));
        for (i, h) in sorted.iter().enumerate() {
            let sep = pa.min(pb) <= i && i < pa.max(pb);
            prop_assert_eq!(between(h, &a, &b).unwrap(), sep);
        }
    }

    #[test]
    fn closer_branch_has_larger_value(a in nonzero_series(), b in nonzero_series()) {
        // 0 < h₁ < h₂ along the curvette forces ν(h₁) ≥ ν(h₂)
        let (h1, h2) = if a.compare(&b).unwrap() == Ordering::Less { (a, b) } else { (b, a) };
        prop_assume!(h1.sign().unwrap() == Ordering::Greater && h1 != h2);
        prop_assert!(h1.order().unwrap() >= h2.order().unwrap());
    }

    #[test]
    fn property_suite_small_runs(seed in any::<u64>()) {
        for rep in props::run_all(seed, 2) {
            prop_assert!(rep.passed(), "{}: {:?}", rep.name, rep.examples);
        }
    }
}

/// `(a, b, m)` with `m² = (a² + b²)/2`: the critical points `z = ±m·x` of
/// `(z² − a²x²)(z² − b²x²)` lie between the roots.
const CRITICAL: [(i64, i64, i64); 4] = [(1, 7, 5), (7, 17, 13), (7, 23, 17), (17, 31, 25)];

fn critical_instance(k: usize, scale: i64, wa: i64, wb: i64, p: i64) -> (MPoly, Curvette<QExp>, Curvette<QExp>) {
    let (a, b, m) = CRITICAL[k];
    let x = MPoly::var(2, 0);
    let z = MPoly::z(2);
    let sq = |c: i64| z.pow(2).sub(&x.pow(2).scale(&Scalar::int(c * c * scale * scale)));
    let f = sq(a).mul(&sq(b));
    let t = Series::monomial(Scalar::int(1), qi(1));
    let pt = |s: i64, w: i64| {
        let zs = Series::monomial(Scalar::int(s * m * scale), qi(1)).add(&Series::monomial(Scalar::int(w), qi(p)));
        Curvette::new(vec![t.clone()], zs)
    };
    (f, pt(-1, wa), pt(1, wb))
}

fn unit_box() -> BoxDomain {
    BoxDomain::new(vec![q(0)], vec![q(1)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn claim_chain_items_hold(k in 0usize..4, scale in 1i64..=2, wa in -2i64..=2, wb in -2i64..=2, p in 2i64..=3) {
        let (f, a, b) = critical_instance(k, scale, wa, wb, p);
        let pipe = run_pipeline(&f, &a, &b, 64).unwrap();
        let mut chains = 0;
        for level in &pipe.levels {
            if let Some(c) = &level.chain {
                chains += 1;
                for check in &c.checks {
                    prop_assert!(check.holds, "{:?}", check);
                }
            }
        }
        prop_assert!(chains > 0);
        prop_assert!(matches!(pipe.outcome, PipelineOutcome::Witness { .. }), "{:?}", pipe.outcome);
        let d = decide_separation(&Instance::new(f, a, b, unit_box())).unwrap();
        prop_assert_eq!(d.verdict, Verdict::HypothesisViolated);
    }

    #[test]
    fn reduced_polynomial_gives_same_components(mask in 1u32..128, extra in 0usize..7, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let cs: Vec<Q> = (0..7).filter(|i| mask >> i & 1 == 1).map(|i| {
            let (n, d) = props::LINE_SLOPES[i];
            qf(n, d)
        }).take(3).collect();
        let c0 = cs[extra % cs.len()].clone();
        let f = props::lines(&cs);
        let f2 = f.mul(&props::lines(&[c0.clone(), c0]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut pt = || {
            let zc = qf(rng.gen_range(-9..=9), 4);
            Curvette::new(vec![Series::monomial(Scalar::int(1), qi(1))], Series::monomial(Scalar::rat(zc), qi(1)))
        };
        let (a, b) = (pt(), pt());
        prop_assume!(!f.eval_series(&a.point()).is_zero() && !f.eval_series(&b.point()).is_zero());
        let o1 = band_oracle(&f, &a, &b, 64).unwrap();
        let o2 = band_oracle(&f2, &a, &b, 64).unwrap();
        prop_assert_eq!(o1.same, o2.same);
        let d1 = decide_separation(&Instance::new(f, a.clone(), b.clone(), unit_box())).unwrap();
        let d2 = decide_separation(&Instance::new(f2, a, b, unit_box())).unwrap();
        if d1.good_position.verified && d2.good_position.verified {
            prop_assert_eq!(d1.bands.unwrap().same, d2.bands.unwrap().same);
        }
    }
}

#[test]
fn property_suite_is_deterministic() {
    assert_eq!(props::run_all(7, 3), props::run_all(7, 3));
}
