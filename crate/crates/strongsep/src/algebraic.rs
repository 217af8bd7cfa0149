//! Real algebraic numbers given by a square-free rational polynomial and an
//! isolating interval. Only comparisons are supported; they work across
//! different quadratic fields.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::poly::Poly;
use crate::scalar::{q, Quad, Q};
use crate::sturm::{bisect, count_distinct, isolate_real_roots, Bound};

/// The unique root of `poly` inside the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    poly: Poly<Q>,
    lo: Q,
    hi: Q,
}

impl RealRoot {
    pub fn from_rational(x: &Q) -> RealRoot {
        RealRoot {
            poly: Poly::linear(x),
            lo: x - q(1),
            hi: x + q(1),
        }
    }

    pub fn from_quad(x: &Quad) -> RealRoot {
        if let Some(r) = x.to_rational() {
            return RealRoot::from_rational(r);
        }
        // minimal polynomial (u − a)² − b²d; its other root is 2|b|√d away.
        let a = x.rational_part().clone();
        let b = x.irrational_part().abs();
        let d = Q::from_integer(x.radicand().into());
        let poly = Poly::new(alloc::vec![&a * &a - &b * &b * &d, -(&a * q(2)), q(1)]);
        // bracket x within width |b| by bisection on exact comparisons
        let bound = a.abs() + &b * &d + q(1);
        let (mut lo, mut hi) = (-bound.clone(), bound);
        while &hi - &lo >= b {
            let mid = (&lo + &hi) / q(2);
            if Quad::rat(mid.clone()) < *x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RealRoot { poly, lo, hi }
    }

    /// Root of `poly` in `(lo, hi)`; the caller guarantees uniqueness and
    /// that the endpoints are not roots.
    pub fn from_parts(poly: Poly<Q>, lo: Q, hi: Q) -> RealRoot {
        RealRoot { poly, lo, hi }
    }

    /// All real roots of a rational polynomial, increasing.
    pub fn roots_of(p: &Poly<Q>) -> Vec<RealRoot> {
        let sf = p.squarefree_part();
        isolate_real_roots(&sf)
            .into_iter()
            .map(|(lo, hi)| RealRoot { poly: sf.clone(), lo, hi })
            .collect()
    }

    pub fn poly(&self) -> &Poly<Q> {
        &self.poly
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.poly.degree() == Some(1) {
            let c = self.poly.coeffs();
            Some(-(&c[0] / &c[1]))
        } else {
            None
        }
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if self.as_rational().is_some() {
            let r = self.as_rational().unwrap();
            let w = (&self.hi - &self.lo) / q(4);
            self.lo = &r - &w;
            self.hi = &r + &w;
            return;
        }
        match bisect(&self.poly, &self.lo, &self.hi) {
            Ok((a, b)) => {
                self.lo = a;
                self.hi = b;
            }
            Err(r) => *self = RealRoot::from_rational(&r),
        }
    }

    /// Refines until the interval is narrower than `w`.
    pub fn refine_to(&mut self, w: &Q) {
        while &self.hi - &self.lo >= *w {
            self.refine();
        }
    }

    /// Exact sign of `self − x` for a rational `x`.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(x);
        }
        if self.poly.eval(x).is_zero() && self.lo < *x && *x < self.hi {
            return Ordering::Equal;
        }
        let mut me = self.clone();
        loop {
            if me.hi <= *x {
                return Ordering::Less;
            }
            if me.lo >= *x {
                return Ordering::Greater;
            }
            me.refine();
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn compare(&self, other: &RealRoot) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        let g = self.poly.gcd(&other.poly);
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if g.degree().unwrap_or(0) > 0 {
                let lo = if a.lo > b.lo { a.lo.clone() } else { b.lo.clone() };
                let hi = if a.hi < b.hi { a.hi.clone() } else { b.hi.clone() };
                if lo < hi && count_distinct(&g, &Bound::Finite(lo), &Bound::Finite(hi)).unwrap_or(0) > 0 {
                    return Ordering::Equal;
                }
            }
            a.refine();
            b.refine();
        }
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", crate::scalar::Scalar::rat(r));
        }
        write!(f, "root[{} in ({}, {})]", self.poly, fmt_q(&self.lo), fmt_q(&self.hi))
    }
}

fn fmt_q(x: &Q) -> alloc::string::String {
    use alloc::string::ToString;
    crate::scalar::Scalar::rat(x.clone()).to_string()
}

/// A real number that is either an exact quadratic-field element or an
/// isolated algebraic root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealNumber {
    Exact(Quad),
    Root(RealRoot),
}

impl RealNumber {
    pub fn to_root(&self) -> RealRoot {
        match self {
            RealNumber::Exact(x) => RealRoot::from_quad(x),
            RealNumber::Root(r) => r.clone(),
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            RealNumber::Exact(x) => x.signum(),
            RealNumber::Root(r) => r.cmp_rational(&Q::zero()),
        }
    }

    pub fn compare(&self, other: &RealNumber) -> Ordering {
        match (self, other) {
            (RealNumber::Exact(a), RealNumber::Exact(b)) if a.compatible(b) => a.cmp(b),
            (RealNumber::Root(r), RealNumber::Exact(b)) if b.is_rational() => {
                r.cmp_rational(b.to_rational().unwrap())
            }
            (RealNumber::Exact(a), RealNumber::Root(r)) if a.is_rational() => {
                r.cmp_rational(a.to_rational().unwrap()).reverse()
            }
            _ => self.to_root().compare(&other.to_root()),
        }
    }
}

impl fmt::Display for RealNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealNumber::Exact(x) => write!(f, "{}", x),
            RealNumber::Root(r) => write!(f, "{}", r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn compare_across_fields() {
        let s2 = RealNumber::Exact(Quad::new(q(0), q(1), 2));
        let s3 = RealNumber::Exact(Quad::new(q(0), q(1), 3));
        assert_eq!(s2.compare(&s3), Ordering::Less);
        let r2 = RealNumber::Root(RealRoot::roots_of(&Poly::new(alloc::vec![q(-2), q(0), q(1)]))[1].clone());
        assert_eq!(r2.compare(&s2), Ordering::Equal);
        assert_eq!(r2.compare(&RealNumber::Exact(Quad::rat(qf(7, 5)))), Ordering::Greater);
        let half = Quad::new(qf(1, 2), qf(-1, 3), 5);
        let rh = RealRoot::from_quad(&half);
        assert_eq!(RealNumber::Root(rh).compare(&RealNumber::Exact(half)), Ordering::Equal);
    }
}
