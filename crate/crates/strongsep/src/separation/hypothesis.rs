//! Bounded-degree search for sign-changers of minimal value.
//!
//! A sign-changer for `(P, Q)` is a polynomial `g` with `g(P) ≥ 0 ≥ g(Q)`.
//! Over the monomials of degree `≤ D`, `g = Σ λ_j m_j` and every
//! coefficient of `g(P)` or `g(Q)` is a linear form in `λ`. The value
//! `ν_P(g) = v` with `g(P) > 0` and `g(Q)` lexicographically `≤ 0` is then a
//! finite union of linear feasibility problems, solved exactly over `Q`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exp::{cmp_val, Exponent, Val};
use crate::linalg::{dot, solve};
use crate::mpoly::MPoly;
use crate::scalar::{Scalar, Q};
use crate::series::Series;

/// A sign-changer and its value at the first point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignChanger<E> {
    pub value: E,
    pub poly: MPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `f` itself changes sign between the points.
    SignChange,
    /// `ν_α(f) > μ̂_α`.
    Alpha,
    /// `ν_β(f) > μ̂_β`.
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisStatus {
    Violated(Violation),
    PlausibleUpToDegree(u32),
}

#[derive(Clone, Debug)]
pub struct HypothesisReport<E> {
    pub sign_alpha: Ordering,
    pub sign_beta: Ordering,
    pub nu_alpha: Val<E>,
    pub nu_beta: Val<E>,
    pub degree_bound: u32,
    /// Best sign-changer found for `μ̂_α` (value at α).
    pub mu_alpha: Option<SignChanger<E>>,
    /// Best sign-changer found for `μ̂_β` (value at β).
    pub mu_beta: Option<SignChanger<E>>,
    pub status: HypothesisStatus,
}

impl<E: Exponent> HypothesisReport<E> {
    pub fn is_violated(&self) -> bool {
        matches!(self.status, HypothesisStatus::Violated(_))
    }

    /// The polynomial witnessing a violation, if any.
    pub fn witness(&self) -> Option<&MPoly> {
        match self.status {
            HypothesisStatus::Violated(Violation::Alpha) => self.mu_alpha.as_ref().map(|s| &s.poly),
            HypothesisStatus::Violated(Violation::Beta) => self.mu_beta.as_ref().map(|s| &s.poly),
            _ => None,
        }
    }
}

fn rational(c: &Scalar) -> Result<Q> {
    c.to_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidInput("sign-changer search needs rational curvette coefficients".into()))
}

/// Coefficient rows of the monomial values at one point.
struct Rows<E> {
    exps: Vec<E>,
    rows: Vec<Vec<Q>>,
    /// Every monomial value is an exact series.
    exact: bool,
}

fn rows_at<E: Exponent>(mons: &[Vec<u32>], point: &[Series<E>]) -> Result<Rows<E>> {
    let n = point.len();
    let vals: Vec<Series<E>> = mons
        .iter()
        .map(|m| MPoly::monomial(n, m.clone(), Scalar::one()).eval_series(point))
        .collect();
    let limit = vals.iter().map(|s| s.prec().clone()).min().unwrap_or(Val::Inf);
    let mut set = BTreeSet::new();
    for s in &vals {
        for (e, _) in s.terms() {
            if cmp_val(&limit, e) == Ordering::Greater {
                set.insert(e.clone());
            }
        }
    }
    let exps: Vec<E> = set.into_iter().collect();
    let mut rows = Vec::with_capacity(exps.len());
    for e in &exps {
        let row = vals.iter().map(|s| rational(&s.coeff(e).unwrap())).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Rows { exps, rows, exact: limit.is_inf() })
}

/// Restricts the basis to the kernel of `row`.
fn restrict(basis: &mut Vec<Vec<Q>>, row: &[Q]) {
    let c: Vec<Q> = basis.iter().map(|b| dot(row, b)).collect();
    let Some(p) = c.iter().position(|x| !x.is_zero()) else {
        return;
    };
    let bp = basis[p].clone();
    let mut out = Vec::with_capacity(basis.len() - 1);
    for (k, b) in basis.iter().enumerate() {
        if k == p {
            continue;
        }
        if c[k].is_zero() {
            out.push(b.clone());
        } else {
            let r = &c[k] / &c[p];
            out.push(b.iter().zip(&bp).map(|(x, y)| x - &r * y).collect());
        }
    }
    *basis = out;
}

/// `b` is a positive multiple of `a`.
fn positive_multiple(a: &[Q], b: &[Q]) -> bool {
    let Some(p) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let r = &b[p] / &a[p];
    r.is_positive() && a.iter().zip(b).all(|(x, y)| &r * x == *y)
}

fn combine(basis: &[Vec<Q>], x: &[Q], n: usize) -> Vec<Q> {
    let mut lam = vec![Q::zero(); n];
    for (b, xk) in basis.iter().zip(x) {
        for (l, bj) in lam.iter_mut().zip(b) {
            *l += xk * bj;
        }
    }
    // primitive integer vector
    let den = lam.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = lam.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return lam;
    }
    ints.into_iter().map(|c| Q::from_integer(c / &g)).collect()
}

/// Minimal `ν_P(g)` over `g` of total degree `≤ bound` with `g(P) > 0` and
/// `g(Q) ≤ 0`, with a witness. Negating `g` covers the opposite orientation.
pub fn min_sign_changer<E: Exponent>(
    bound: u32,
    p: &[Series<E>],
    q: &[Series<E>],
) -> Result<Option<SignChanger<E>>> {
    let nvars = p.len();
    let mons = MPoly::monomials_up_to(nvars, bound);
    let n = mons.len();
    let rp = rows_at(&mons, p)?;
    let rq = rows_at(&mons, q)?;
    let mut basis: Vec<Vec<Q>> = (0..n)
        .map(|k| {
            let mut v = vec![Q::zero(); n];
            v[k] = Q::one();
            v
        })
        .collect();
    for (vi, v) in rp.exps.iter().enumerate() {
        let lead = &rp.rows[vi];
        if basis.iter().all(|b| dot(lead, b).is_zero()) {
            continue;
        }
        let sub = basis.clone();
        let mut found = None;
        let mut open = true;
        for row in &rq.rows {
            let a: Vec<Q> = sub.iter().map(|b| dot(lead, b)).collect();
            if a.iter().all(Zero::is_zero) {
                open = false;
                break;
            }
            let b: Vec<Q> = sub.iter().map(|c| dot(row, c)).collect();
            if b.iter().all(Zero::is_zero) {
                continue;
            }
            if positive_multiple(&a, &b) {
                open = false;
                break;
            }
            let x = solve(&[a.clone(), b.clone()], &[Q::one(), -Q::one()], sub.len())
                .or_else(|| solve(&[a.clone()], &[Q::one()], sub.len()))
                .expect("feasible system");
            found = Some(combine(&sub, &x, n));
            break;
        }
        if found.is_none() && open && rq.exact {
            // g(Q) = 0 on what is left
            let a: Vec<Q> = sub.iter().map(|b| dot(lead, b)).collect();
            if !a.iter().all(Zero::is_zero) {
                let x = solve(&[a], &[Q::one()], sub.len()).expect("nonzero functional");
                found = Some(combine(&sub, &x, n));
            }
        }
        if let Some(lam) = found {
            let mut g = MPoly::zero(nvars);
            for (m, c) in mons.iter().zip(&lam) {
                g = g.add(&MPoly::monomial(nvars, m.clone(), Scalar::rat(c.clone())));
            }
            let gp = g.eval_series(p);
            let gq = g.eval_series(q);
            debug_assert_eq!(gp.order(), Ok(Val::Fin(v.clone())));
            if gp.sign()? != Ordering::Greater || gq.sign()? == Ordering::Greater {
                return Err(Error::InvalidInput("sign-changer search produced an invalid witness".into()));
            }
            return Ok(Some(SignChanger { value: v.clone(), poly: g }));
        }
        restrict(&mut basis, lead);
    }
    Ok(None)
}

/// Checks `f` does not change sign between `α` and `β` and
/// `ν(f) ≤ μ̂` at both points, with `μ̂` found among polynomials of total
/// degree `≤ bound`.
pub fn hypothesis_check<E: Exponent>(
    f: &MPoly,
    alpha: &[Series<E>],
    beta: &[Series<E>],
    bound: u32,
) -> Result<HypothesisReport<E>> {
    let fa = f.eval_series(alpha);
    let fb = f.eval_series(beta);
    let sign_alpha = fa.sign()?;
    let sign_beta = fb.sign()?;
    let nu_alpha = fa.order()?;
    let nu_beta = fb.order()?;
    let mu_alpha = min_sign_changer(bound, alpha, beta)?;
    let mu_beta = min_sign_changer(bound, beta, alpha)?;
    let changes = sign_alpha != Ordering::Equal && sign_beta != Ordering::Equal && sign_alpha != sign_beta;
    let exceeds = |nu: &Val<E>, mu: &Option<SignChanger<E>>| match mu {
        Some(s) => cmp_val(nu, &s.value) == Ordering::Greater,
        None => false,
    };
    let status = if changes {
        HypothesisStatus::Violated(Violation::SignChange)
    } else if exceeds(&nu_alpha, &mu_alpha) {
        HypothesisStatus::Violated(Violation::Alpha)
    } else if exceeds(&nu_beta, &mu_beta) {
        HypothesisStatus::Violated(Violation::Beta)
    } else {
        HypothesisStatus::PlausibleUpToDegree(bound)
    };
    Ok(HypothesisReport { sign_alpha, sign_beta, nu_alpha, nu_beta, degree_bound: bound, mu_alpha, mu_beta, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qi, Lex, QExp};

    fn mono(c: i64, e: i64) -> Series<QExp> {
        Series::monomial(Scalar::int(c), qi(e))
    }

    #[test]
    fn two_lines() {
        // (z − x)(z + x), α: z = 2t, β: z = −2t
        let x = MPoly::var(2, 0);
        let z = MPoly::z(2);
        let f = z.sub(&x).mul(&z.add(&x));
        let a = [mono(1, 1), mono(2, 1)];
        let b = [mono(1, 1), mono(-2, 1)];
        let r = hypothesis_check(&f, &a, &b, 1).unwrap();
        assert_eq!(r.nu_alpha, Val::Fin(qi(2)));
        assert_eq!(r.status, HypothesisStatus::Violated(Violation::Alpha));
        let w = r.mu_alpha.unwrap();
        assert_eq!(w.value, qi(1));
        assert_eq!(w.poly.eval_series(&a).sign(), Ok(Ordering::Greater));
        assert_ne!(w.poly.eval_series(&b).sign(), Ok(Ordering::Greater));
    }

    #[test]
    fn same_side_points() {
        // z − x at z = 2t and z = 3t: no sign-changer of degree ≤ 2 among
        // nonzero values below that of z − x itself
        let x = MPoly::var(2, 0);
        let z = MPoly::z(2);
        let f = z.sub(&x);
        let a = [mono(1, 1), mono(2, 1)];
        let b = [mono(1, 1), mono(3, 1)];
        let r = hypothesis_check(&f, &a, &b, 2).unwrap();
        assert_eq!(r.status, HypothesisStatus::PlausibleUpToDegree(2));
        // z − 5x/2 changes sign with value 1 = ν(f)
        assert_eq!(r.mu_alpha.unwrap().value, qi(1));
    }

    #[test]
    fn lex_exponents() {
        // x = t^(0,1), z = t^(0,1) ± t^(1,0)
        let x = Series::exact([(Lex([0, 1]), Scalar::one())]);
        let za = Series::exact([(Lex([0, 1]), Scalar::one()), (Lex([1, 0]), Scalar::one())]);
        let zb = Series::exact([(Lex([0, 1]), Scalar::one()), (Lex([1, 0]), Scalar::int(-1))]);
        let w = min_sign_changer(1, &[x.clone(), za], &[x, zb]).unwrap().unwrap();
        assert_eq!(w.value, Lex([1, 0]));
    }
}
