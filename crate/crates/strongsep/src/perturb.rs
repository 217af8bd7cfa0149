//! Root perturbation at the origin: monic polynomials whose coefficients are
//! all below `δ = min{(ε/d!)^{d!}, 1/2}` in absolute value have every root
//! inside the disk of radius `ε`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Poly;
use crate::scalar::{q, Q};

/// `min{(ε/d!)^{d!}, 1/2}`.
pub fn delta(d: u32, eps: &Q) -> Q {
    let fact: i64 = (1..=d as i64).product();
    let base = eps / q(fact);
    let mut p = Q::one();
    for _ in 0..fact {
        p *= &base;
    }
    let half = Q::new(BigInt::from(1), BigInt::from(2));
    if p < half {
        p
    } else {
        half
    }
}

/// Exact Schur–Cohn test: every root of the real polynomial `p` lies in the
/// open unit disk.
pub fn roots_in_unit_disk(p: &Poly<Q>) -> bool {
    let mut c: Vec<Q> = p.coeffs().to_vec();
    while c.len() > 1 {
        let n = c.len() - 1;
        let a0 = c[0].clone();
        let an = c[n].clone();
        // |a0| < |an|, then recurse on (an·p − a0·p*)/w with p*(w) = wⁿ p(1/w)
        if !(&a0 * &a0 - &an * &an).is_negative() {
            return false;
        }
        let next: Vec<Q> = (1..=n).map(|k| &an * &c[k] - &a0 * &c[n - k]).collect();
        c = next;
        while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
    }
    true
}

/// Every root of `p` has modulus `< eps`.
pub fn roots_in_disk(p: &Poly<Q>, eps: &Q) -> bool {
    // q(w) = p(ε w)
    let mut scale = Q::one();
    let c: Vec<Q> = p
        .coeffs()
        .iter()
        .map(|a| {
            let r = a * &scale;
            scale *= eps;
            r
        })
        .collect();
    roots_in_unit_disk(&Poly::new(c))
}

/// Outcome of [`perturbation_bound_check`].
#[derive(Clone, Debug)]
pub struct PerturbReport {
    pub degree: u32,
    pub eps: Q,
    pub delta: Q,
    pub trials: usize,
    /// Sampled polynomials (coefficients `a_0, …, a_{d−1}` of the monic
    /// polynomial) with a root of modulus `≥ ε`.
    pub violations: Vec<Vec<Q>>,
    pub samples: Vec<Poly<Q>>,
}

/// Random monic polynomial of degree `d` with rational coefficients in
/// `(−δ, δ)`.
pub fn random_small_poly(rng: &mut ChaCha8Rng, d: u32, delta: &Q) -> Poly<Q> {
    const N: i64 = 1_000_000;
    let mut c: Vec<Q> = (0..d)
        .map(|_| {
            let k = rng.gen_range(-(N - 1)..N);
            delta * Q::new(BigInt::from(k), BigInt::from(N))
        })
        .collect();
    c.push(Q::one());
    Poly::new(c)
}

/// Samples `trials` polynomials from the `δ`-box and tests each exactly.
pub fn perturbation_bound_check(d: u32, eps: &Q, trials: usize, seed: u64) -> PerturbReport {
    let delta = delta(d, eps);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = random_small_poly(&mut rng, d, &delta);
        if !roots_in_disk(&p, eps) {
            violations.push(p.coeffs()[..d as usize].to_vec());
        }
        samples.push(p);
    }
    PerturbReport { degree: d, eps: eps.clone(), delta, trials, violations, samples }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn delta_values() {
        assert_eq!(delta(1, &qf(1, 10)), qf(1, 10));
        assert_eq!(delta(2, &qf(1, 2)), qf(1, 16));
        assert_eq!(delta(1, &q(3)), qf(1, 2));
    }

    #[test]
    fn schur_cohn_basics() {
        // (w − 1/2)(w + 1/3)
        let p = Poly::new(alloc::vec![qf(-1, 6), qf(-1, 6), q(1)]);
        assert!(roots_in_unit_disk(&p));
        // w² + 1: roots on the circle
        assert!(!roots_in_unit_disk(&Poly::new(alloc::vec![q(1), q(0), q(1)])));
        // w − 2
        assert!(!roots_in_unit_disk(&Poly::new(alloc::vec![q(-2), q(1)])));
        // w² + w/2 + 1/2: complex roots of modulus √(1/2)
        assert!(roots_in_unit_disk(&Poly::new(alloc::vec![qf(1, 2), qf(1, 2), q(1)])));
        assert!(roots_in_disk(&Poly::new(alloc::vec![qf(1, 2), qf(1, 2), q(1)]), &qf(3, 4)));
        assert!(!roots_in_disk(&Poly::new(alloc::vec![qf(1, 2), qf(1, 2), q(1)]), &qf(7, 10)));
    }

    #[test]
    fn small_trials() {
        let r = perturbation_bound_check(2, &qf(1, 2), 20, 7);
        assert!(r.violations.is_empty());
        assert_eq!(r.samples.len(), 20);
    }
}
