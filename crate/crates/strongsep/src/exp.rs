//! Exponent groups and values.

use core::cmp::Ordering;
use core::fmt::{self, Debug, Display};
use core::hash::Hash;

use num_rational::Ratio;
use num_traits::{One, Zero};

/// An ordered abelian group of exponents.
pub trait Exponent: Clone + Ord + Eq + Debug + Display + Hash {
    /// Divisible hull, where Newton-polygon slopes live.
    type Hull: Clone + Ord + Eq + Debug + Display;

    fn zero_exp() -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, k: i64) -> Self;
    fn to_hull(&self) -> Self::Hull;
    /// `(θ − ε)/(j − i)` for the segment from `(i, ε)` to `(j, θ)`.
    fn slope(i: usize, eps: &Self, j: usize, theta: &Self) -> Self::Hull;
    /// `h · k` for an integer abscissa offset `k`.
    fn hull_times(h: &Self::Hull, k: i64) -> Self::Hull;
    fn hull_plus(a: &Self::Hull, b: &Self::Hull) -> Self::Hull;
    fn hull_neg(h: &Self::Hull) -> Self::Hull;
    fn is_positive(&self) -> bool {
        *self > Self::zero_exp()
    }
}

/// Rational exponents (Puiseux case).
pub type QExp = Ratio<i64>;

pub fn qe(n: i64, d: i64) -> QExp {
    Ratio::new(n, d)
}

pub fn qi(n: i64) -> QExp {
    Ratio::from_integer(n)
}

impl Exponent for QExp {
    type Hull = QExp;

    fn zero_exp() -> QExp {
        Ratio::zero()
    }
    fn plus(&self, o: &QExp) -> QExp {
        self + o
    }
    fn minus(&self, o: &QExp) -> QExp {
        self - o
    }
    fn times(&self, k: i64) -> QExp {
        self * Ratio::from_integer(k)
    }
    fn to_hull(&self) -> QExp {
        *self
    }
    fn slope(i: usize, eps: &QExp, j: usize, theta: &QExp) -> QExp {
        (theta - eps) / Ratio::from_integer(j as i64 - i as i64)
    }
    fn hull_times(h: &QExp, k: i64) -> QExp {
        h * Ratio::from_integer(k)
    }
    fn hull_plus(a: &QExp, b: &QExp) -> QExp {
        a + b
    }
    fn hull_neg(h: &QExp) -> QExp {
        -h
    }
}

/// Integer tuples of fixed arity under the lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lex<const N: usize>(pub [i64; N]);

/// Rational tuples, the divisible hull of [`Lex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexHull<const N: usize>(pub [Ratio<i64>; N]);

impl<const N: usize> Display for Lex<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str(")")
    }
}

impl<const N: usize> Display for LexHull<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        f.write_str(")")
    }
}

impl<const N: usize> Exponent for Lex<N> {
    type Hull = LexHull<N>;

    fn zero_exp() -> Self {
        Lex([0; N])
    }
    fn plus(&self, o: &Self) -> Self {
        Lex(core::array::from_fn(|k| self.0[k] + o.0[k]))
    }
    fn minus(&self, o: &Self) -> Self {
        Lex(core::array::from_fn(|k| self.0[k] - o.0[k]))
    }
    fn times(&self, m: i64) -> Self {
        Lex(core::array::from_fn(|k| self.0[k] * m))
    }
    fn to_hull(&self) -> LexHull<N> {
        LexHull(core::array::from_fn(|k| Ratio::from_integer(self.0[k])))
    }
    fn slope(i: usize, eps: &Self, j: usize, theta: &Self) -> LexHull<N> {
        let dj = j as i64 - i as i64;
        LexHull(core::array::from_fn(|k| Ratio::new(theta.0[k] - eps.0[k], dj)))
    }
    fn hull_times(h: &LexHull<N>, m: i64) -> LexHull<N> {
        LexHull(core::array::from_fn(|k| h.0[k] * m))
    }
    fn hull_plus(a: &LexHull<N>, b: &LexHull<N>) -> LexHull<N> {
        LexHull(core::array::from_fn(|k| a.0[k] + b.0[k]))
    }
    fn hull_neg(h: &LexHull<N>) -> LexHull<N> {
        LexHull(core::array::from_fn(|k| -h.0[k]))
    }
}

/// A group element or `+∞`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val<E> {
    Fin(E),
    Inf,
}

impl<E: Exponent> Val<E> {
    pub fn zero() -> Val<E> {
        Val::Fin(E::zero_exp())
    }

    pub fn plus(&self, o: &Val<E>) -> Val<E> {
        match (self, o) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a.plus(b)),
            _ => Val::Inf,
        }
    }

    /// `self + k·e`; `+∞` is absorbing.
    pub fn plus_exp(&self, e: &E) -> Val<E> {
        match self {
            Val::Fin(a) => Val::Fin(a.plus(e)),
            Val::Inf => Val::Inf,
        }
    }

    pub fn times(&self, k: i64) -> Val<E> {
        match self {
            Val::Fin(a) if k != 0 => Val::Fin(a.times(k)),
            Val::Fin(_) => Val::zero(),
            Val::Inf if k == 0 => Val::zero(),
            Val::Inf => Val::Inf,
        }
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }

    pub fn finite(&self) -> Option<&E> {
        match self {
            Val::Fin(e) => Some(e),
            Val::Inf => None,
        }
    }

    pub fn min(a: Val<E>, b: Val<E>) -> Val<E> {
        if a <= b {
            a
        } else {
            b
        }
    }
}

impl<E: Display> Display for Val<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(e) => write!(f, "{}", e),
            Val::Inf => f.write_str("inf"),
        }
    }
}

/// Least common multiple of the denominators of some rational exponents.
pub fn common_denominator<'a>(es: impl IntoIterator<Item = &'a QExp>) -> i64 {
    let mut l = 1i64;
    for e in es {
        let d = *e.denom();
        l = num_integer::lcm(l, d);
    }
    l
}

/// Compares a value against a finite exponent.
pub fn cmp_val<E: Exponent>(v: &Val<E>, e: &E) -> Ordering {
    match v {
        Val::Fin(x) => x.cmp(e),
        Val::Inf => Ordering::Greater,
    }
}

pub fn is_integer(e: &QExp) -> bool {
    e.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn val_order_and_absorption() {
        let a: Val<QExp> = Val::Fin(qi(3));
        assert!(a < Val::Inf);
        assert_eq!(a.plus(&Val::Inf), Val::Inf);
        assert_eq!(Val::<QExp>::Inf.times(0), Val::zero());
    }

    #[test]
    fn lex_order_and_slope() {
        let a = Lex([0, 8]);
        let b = Lex([1, 0]);
        assert!(a < b);
        assert_eq!(a.plus(&b), Lex([1, 8]));
        let s = Lex::<2>::slope(0, &Lex([1, 4]), 2, &Lex([0, 8]));
        assert_eq!(s, LexHull([Ratio::new(-1, 2), Ratio::from_integer(2)]));
        assert_eq!(format!("{}", Lex([1, 8])), "(1,8)");
    }

    extern crate std;
    use std::format;
}
