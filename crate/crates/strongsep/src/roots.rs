//! Roots of univariate polynomials over the supported scalar fields.
//!
//! Roots inside `Q(√d)(i)` are returned exactly; the remaining ones are
//! reported through their defining factor (real ones with an isolating
//! interval).

use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebraic::RealRoot;
use crate::poly::{norm_to_q, rational_components, real_poly, Poly};
use crate::scalar::{Scalar, Q};
use crate::sturm::{count_distinct, isolate_real_roots, rational_roots, Bound};

/// A root that could not be expressed in the scalar fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpaqueRoot {
    /// A real root of a real factor.
    Real(RealRoot),
    /// A non-real root (or any root of a non-real factor).
    Complex,
}

/// Roots of a polynomial, with multiplicities.
#[derive(Clone, Debug, Default)]
pub struct RootSet {
    pub exact: Vec<(Scalar, usize)>,
    /// `(factor, multiplicity, roots)`: each opaque root of the square-free
    /// `factor` occurs with the given multiplicity.
    pub opaque: Vec<(Poly<Scalar>, usize, Vec<OpaqueRoot>)>,
}

impl RootSet {
    pub fn count(&self) -> usize {
        self.exact.iter().map(|(_, m)| m).sum::<usize>()
            + self.opaque.iter().map(|(_, m, r)| m * r.len()).sum::<usize>()
    }
}

fn field_of(p: &Poly<Scalar>) -> u64 {
    p.coeffs().iter().map(|c| c.radicand()).find(|&d| d != 0).unwrap_or(0)
}

/// Rational roots common to all rational components of `p`.
fn rational_roots_scalar(p: &Poly<Scalar>) -> Vec<Q> {
    let comps = rational_components(p);
    let mut g = Poly::<Q>::zero();
    for c in comps.iter() {
        if !c.is_zero() {
            g = if g.is_zero() { c.monic() } else { g.gcd(c) };
        }
    }
    if g.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    rational_roots(&g)
}

/// Roots of a square-free polynomial of degree ≤ 2, if representable.
fn small_roots(p: &Poly<Scalar>, ctx: u64) -> Option<Vec<Scalar>> {
    match p.degree() {
        Some(1) => {
            let c = p.coeffs();
            Some(alloc::vec![-(&c[0] / &c[1])])
        }
        Some(2) => {
            let c = p.coeffs();
            let (a, b, cc) = (&c[2], &c[1], &c[0]);
            let disc = &(b * b) - &(&(a * cc) * &Scalar::int(4));
            let s = disc.sqrt(ctx)?;
            let two_a = a * &Scalar::int(2);
            let r1 = &(&(-b.clone()) + &s) / &two_a;
            let r2 = &(&(-b.clone()) - &s) / &two_a;
            if !r1.compatible(&r2) {
                return None;
            }
            Some(alloc::vec![r1, r2])
        }
        _ => None,
    }
}

/// Opaque roots of a square-free `p` whose roots are not in the fields.
fn opaque_roots(p: &Poly<Scalar>) -> Vec<OpaqueRoot> {
    let d = p.degree().unwrap_or(0);
    let Some(rp) = real_poly(p) else {
        return (0..d).map(|_| OpaqueRoot::Complex).collect();
    };
    let norm = if rp.coeffs().iter().all(|c| c.is_rational()) {
        rp.map(|c| c.to_rational().unwrap().clone())
    } else {
        norm_to_q(&rp)
    }
    .squarefree_part();
    let mut out = Vec::new();
    for (lo, hi) in isolate_real_roots(&norm) {
        let n = count_distinct(&rp, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())).unwrap_or(0);
        if n > 0 {
            out.push(OpaqueRoot::Real(RealRoot::from_parts(norm.clone(), lo, hi)));
        }
    }
    while out.len() < d {
        out.push(OpaqueRoot::Complex);
    }
    out
}

/// All roots of a nonzero `p`, as exactly as the fields allow.
pub fn find_roots(p: &Poly<Scalar>) -> RootSet {
    let mut rs = RootSet::default();
    let ctx = field_of(p);
    for (f, m) in p.squarefree() {
        let mut rest = f;
        for r in rational_roots_scalar(&rest) {
            let lin = Poly::linear(&Scalar::rat(r.clone()));
            rest = rest.divrem(&lin).0;
            rs.exact.push((Scalar::rat(r), m));
        }
        if rest.degree().unwrap_or(0) == 0 {
            continue;
        }
        match small_roots(&rest, ctx) {
            Some(v) => {
                for r in v {
                    rs.exact.push((r, m));
                }
            }
            None => {
                let roots = opaque_roots(&rest);
                rs.opaque.push((rest, m, roots));
            }
        }
    }
    rs
}

/// Whether `x` is a root of `p`.
pub fn is_root(p: &Poly<Scalar>, x: &Scalar) -> bool {
    p.eval(x).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_traits::One;

    fn p(c: &[i64]) -> Poly<Scalar> {
        Poly::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    #[test]
    fn exact_and_opaque() {
        // (u − 1)²(u² + 1)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let rs = find_roots(&f);
        assert_eq!(rs.count(), 4);
        assert!(rs.exact.contains(&(Scalar::int(1), 2)));
        assert!(rs.exact.contains(&(Scalar::i(), 1)));
        // u³ − 2 has one real irrational root and two complex ones
        let g = p(&[-2, 0, 0, 1]);
        let rs = find_roots(&g);
        assert!(rs.exact.is_empty());
        let roots = &rs.opaque[0].2;
        assert_eq!(roots.iter().filter(|r| matches!(r, OpaqueRoot::Real(_))).count(), 1);
        assert_eq!(roots.len(), 3);
        // 3u² − 1 → ±1/√3
        let h = p(&[-1, 0, 3]);
        let rs = find_roots(&h);
        assert_eq!(rs.exact.len(), 2);
        let r = &rs.exact[0].0;
        assert_eq!(&(r * r) * &Scalar::int(3), Scalar::one());
        assert!(r.to_real().is_some());
        assert!(!is_root(&h, &Scalar::zero()));
    }
}
