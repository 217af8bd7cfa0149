//! Sturm sequences: exact real-root counting and isolation.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{OrderedField, Poly};
use crate::scalar::{q, Q};

/// Interval endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Q),
    PosInf,
}

/// Counting convention for [`sturm_count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    Distinct,
    WithMultiplicity,
}

fn sign_at<F: OrderedField>(p: &Poly<F>, x: &Bound) -> Ordering {
    let Some(d) = p.degree() else {
        return Ordering::Equal;
    };
    let lead = p.lead().unwrap().signum();
    match x {
        Bound::Finite(v) => p.eval(&F::from_q(v)).signum(),
        Bound::PosInf => lead,
        Bound::NegInf => {
            if d % 2 == 0 {
                lead
            } else {
                lead.reverse()
            }
        }
    }
}

/// Sturm sequence `p, p', −rem(p, p'), …`.
pub fn sturm_sequence<F: OrderedField>(p: &Poly<F>) -> Vec<Poly<F>> {
    let mut seq = vec![p.clone()];
    let mut b = p.derivative();
    let mut a = p.clone();
    while !b.is_zero() {
        seq.push(b.clone());
        let r = -&a.rem(&b);
        a = b;
        b = r;
    }
    seq
}

fn variations<F: OrderedField>(seq: &[Poly<F>], x: &Bound) -> usize {
    let mut last = Ordering::Equal;
    let mut v = 0;
    for s in seq {
        let sg = sign_at(s, x);
        if sg == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && sg != last {
            v += 1;
        }
        last = sg;
    }
    v
}

/// Distinct roots of a square-free `p` in the open interval `(lo, hi)`,
/// given its Sturm sequence.
fn count_open_sf<F: OrderedField>(seq: &[Poly<F>], lo: &Bound, hi: &Bound) -> usize {
    let va = variations(seq, lo);
    let vb = variations(seq, hi);
    let at_hi = matches!(hi, Bound::Finite(_)) && sign_at(&seq[0], hi) == Ordering::Equal;
    (va - vb).saturating_sub(at_hi as usize)
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_distinct<F: OrderedField>(p: &Poly<F>, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !interval_nonempty(lo, hi) {
        return Ok(0);
    }
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    Ok(count_open_sf(&sturm_sequence(&sf), lo, hi))
}

fn interval_nonempty(lo: &Bound, hi: &Bound) -> bool {
    match (lo, hi) {
        (Bound::Finite(a), Bound::Finite(b)) => a < b,
        (Bound::PosInf, _) | (_, Bound::NegInf) => false,
        _ => true,
    }
}

/// Real roots in `(lo, hi)` counted with multiplicity.
pub fn count_with_multiplicity<F: OrderedField>(
    p: &Poly<F>,
    lo: &Bound,
    hi: &Bound,
) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !interval_nonempty(lo, hi) {
        return Ok(0);
    }
    let mut total = 0;
    for (f, m) in p.squarefree() {
        total += m * count_open_sf(&sturm_sequence(&f), lo, hi);
    }
    Ok(total)
}

/// Real-root count of a rational polynomial on an open interval.
pub fn sturm_count(p: &Poly<Q>, lo: &Bound, hi: &Bound, mode: CountMode) -> Result<usize> {
    match mode {
        CountMode::Distinct => count_distinct(p, lo, hi),
        CountMode::WithMultiplicity => count_with_multiplicity(p, lo, hi),
    }
}

/// Cauchy bound: every root satisfies `|r| < bound`.
pub fn root_bound<F: OrderedField>(p: &Poly<F>) -> Q {
    let m = p.monic();
    let d = m.degree().unwrap_or(0);
    let mut b = Q::zero();
    for a in &m.coeffs()[..d] {
        let x = a.abs_bound();
        if x > b {
            b = x;
        }
    }
    b + Q::one()
}

/// Disjoint open intervals with rational non-root endpoints, each holding
/// exactly one real root of the square-free `p`, sorted increasingly.
pub fn isolate_real_roots<F: OrderedField>(p: &Poly<F>) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let seq = sturm_sequence(p);
    let b = root_bound(p);
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_open_sf(&seq, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = non_root_point(p, &lo, &hi);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A rational point strictly inside `(lo, hi)` that is not a root of `p`.
pub fn non_root_point<F: OrderedField>(p: &Poly<F>, lo: &Q, hi: &Q) -> Q {
    let w = hi - lo;
    let mut k: i64 = 2;
    loop {
        for j in 1..k {
            if Integer::gcd(&j, &k) != 1 {
                continue;
            }
            let m = lo + &w * Q::new(BigInt::from(j), BigInt::from(k));
            if !p.eval(&F::from_q(&m)).is_zero() {
                return m;
            }
        }
        k += 1;
    }
}

/// Halves an isolating interval of a simple root of `p`, returning the
/// half that keeps the root, or the exact root if the midpoint hits it.
pub fn bisect<F: OrderedField>(p: &Poly<F>, lo: &Q, hi: &Q) -> core::result::Result<(Q, Q), Q> {
    let mid = (lo + hi) / q(2);
    let sm = p.eval(&F::from_q(&mid)).signum();
    if sm == Ordering::Equal {
        return Err(mid);
    }
    let sl = p.eval(&F::from_q(lo)).signum();
    if sl == sm {
        Ok((mid, hi.clone()))
    } else {
        Ok((lo.clone(), mid))
    }
}

/// All rational roots of `p`, increasing.
pub fn rational_roots(p: &Poly<Q>) -> Vec<Q> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sf = p.squarefree_part();
    // primitive integer leading coefficient
    let mut den = BigInt::one();
    for a in sf.coeffs() {
        den = den.lcm(a.denom());
    }
    let mut num_gcd = BigInt::zero();
    for a in sf.coeffs() {
        num_gcd = num_gcd.gcd(&(a.numer() * (&den / a.denom())));
    }
    let lead = sf.lead().unwrap();
    let an = (lead.numer() * (&den / lead.denom()) / &num_gcd).abs();
    let anq = Q::from_integer(an.clone());
    for (mut lo, mut hi) in isolate_real_roots(&sf) {
        loop {
            if (&hi - &lo) * &anq < Q::one() {
                break;
            }
            match bisect(&sf, &lo, &hi) {
                Ok((a, b)) => {
                    lo = a;
                    hi = b;
                }
                Err(r) => {
                    lo = r.clone();
                    hi = r;
                    break;
                }
            }
        }
        if lo == hi {
            out.push(lo);
            continue;
        }
        let n = (&lo * &anq).floor() + Q::one();
        if n < &hi * &anq {
            let r = n / &anq;
            if sf.eval(&r).is_zero() {
                out.push(r);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn spec_counts() {
        let all = (Bound::NegInf, Bound::PosInf);
        assert_eq!(sturm_count(&p(&[0, -1, 0, 1]), &all.0, &all.1, CountMode::Distinct).unwrap(), 3);
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &all.0, &all.1, CountMode::Distinct).unwrap(), 0);
        // (z−1)²(z+2) = z³ − 3z + 2
        let f = p(&[2, -3, 0, 1]);
        let pos = (Bound::Finite(q(0)), Bound::PosInf);
        assert_eq!(sturm_count(&f, &pos.0, &pos.1, CountMode::Distinct).unwrap(), 1);
        assert_eq!(sturm_count(&f, &pos.0, &pos.1, CountMode::WithMultiplicity).unwrap(), 2);
        assert_eq!(sturm_count(&Poly::zero(), &pos.0, &pos.1, CountMode::Distinct), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn open_interval_excludes_endpoints() {
        let f = p(&[0, -1, 0, 1]);
        let c = count_distinct(&f, &Bound::Finite(q(-1)), &Bound::Finite(q(1))).unwrap();
        assert_eq!(c, 1);
        let c = count_distinct(&f, &Bound::Finite(q(0)), &Bound::Finite(q(1))).unwrap();
        assert_eq!(c, 0);
    }

    #[test]
    fn isolation_and_rational_roots() {
        // (2u − 1)(u + 3)(u² − 2)
        let f = &(&p(&[-1, 2]) * &p(&[3, 1])) * &p(&[-2, 0, 1]);
        let iv = isolate_real_roots(&f);
        assert_eq!(iv.len(), 4);
        assert_eq!(rational_roots(&f), alloc::vec![q(-3), qf(1, 2)]);
    }
}
