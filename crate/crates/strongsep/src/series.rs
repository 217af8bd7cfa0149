//! Truncated generalized power series in a positive infinitesimal `t`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exp::{Exponent, QExp, Val};
use crate::scalar::Scalar;

/// `Σ c_e t^e + O(t^prec)`, with finitely many stored terms, all below
/// `prec`; `prec = Inf` means exact.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<E: Exponent> {
    terms: Vec<(E, Scalar)>,
    prec: Val<E>,
}

impl<E: Exponent> Series<E> {
    /// Builds a series from arbitrary terms: sorts, merges equal exponents,
    /// drops zeros and everything at or above `prec`.
    pub fn new(terms: impl IntoIterator<Item = (E, Scalar)>, prec: Val<E>) -> Series<E> {
        let mut m: BTreeMap<E, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            match m.remove(&e) {
                Some(old) => {
                    let s = &old + &c;
                    if !s.is_zero() {
                        m.insert(e, s);
                    }
                }
                None => {
                    m.insert(e, c);
                }
            }
        }
        let terms = m
            .into_iter()
            .filter(|(e, c)| !c.is_zero() && crate::exp::cmp_val(&prec, e) == Ordering::Greater)
            .collect();
        Series { terms, prec }
    }

    pub fn exact(terms: impl IntoIterator<Item = (E, Scalar)>) -> Series<E> {
        Series::new(terms, Val::Inf)
    }

    pub fn zero() -> Series<E> {
        Series { terms: Vec::new(), prec: Val::Inf }
    }

    pub fn one() -> Series<E> {
        Series::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Series<E> {
        Series::exact([(E::zero_exp(), c)])
    }

    pub fn monomial(c: Scalar, e: E) -> Series<E> {
        Series::exact([(e, c)])
    }

    /// `O(t^e)`.
    pub fn big_o(e: E) -> Series<E> {
        Series { terms: Vec::new(), prec: Val::Fin(e) }
    }

    pub fn terms(&self) -> &[(E, Scalar)] {
        &self.terms
    }

    pub fn prec(&self) -> &Val<E> {
        &self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_inf()
    }

    /// Exactly zero (no terms, infinite precision).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    /// Exactly one.
    pub fn is_one(&self) -> bool {
        self.is_exact()
            && self.terms.len() == 1
            && self.terms[0].0 == E::zero_exp()
            && self.terms[0].1.is_one()
    }

    /// Coefficient of `t^e`; `None` when `e` is at or beyond the precision.
    pub fn coeff(&self, e: &E) -> Option<Scalar> {
        if crate::exp::cmp_val(&self.prec, e) != Ordering::Greater {
            return None;
        }
        Some(
            self.terms
                .iter()
                .find(|(x, _)| x == e)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Scalar::zero),
        )
    }

    pub fn order(&self) -> Result<Val<E>> {
        match self.terms.first() {
            Some((e, _)) => Ok(Val::Fin(e.clone())),
            None if self.is_exact() => Ok(Val::Inf),
            None => Err(Error::UnknownOrder),
        }
    }

    /// Guaranteed lower bound for the order.
    pub fn order_lb(&self) -> Val<E> {
        match self.terms.first() {
            Some((e, _)) => Val::Fin(e.clone()),
            None => self.prec.clone(),
        }
    }

    /// Leading term, `None` for the exact zero series.
    pub fn leading(&self) -> Result<Option<(E, Scalar)>> {
        match self.terms.first() {
            Some(t) => Ok(Some(t.clone())),
            None if self.is_exact() => Ok(None),
            None => Err(Error::UnknownOrder),
        }
    }

    /// Drops every term at or above `p` and lowers the precision to `p`.
    pub fn truncate(&self, p: &Val<E>) -> Series<E> {
        let prec = Val::min(self.prec.clone(), p.clone());
        Series::new(self.terms.iter().cloned(), prec)
    }

    /// Terms with exponent strictly below `e`, as an exact series.
    pub fn prefix_below(&self, e: &E) -> Series<E> {
        Series::exact(self.terms.iter().filter(|(x, _)| x < e).cloned())
    }

    pub fn neg(&self) -> Series<E> {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn add(&self, o: &Series<E>) -> Series<E> {
        let prec = Val::min(self.prec.clone(), o.prec.clone());
        Series::new(self.terms.iter().chain(o.terms.iter()).cloned(), prec)
    }

    pub fn sub(&self, o: &Series<E>) -> Series<E> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Scalar) -> Series<E> {
        if k.is_zero() {
            return Series::zero();
        }
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
            prec: self.prec.clone(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &E) -> Series<E> {
        Series {
            terms: self.terms.iter().map(|(x, c)| (x.plus(e), c.clone())).collect(),
            prec: self.prec.plus_exp(e),
        }
    }

    pub fn mul(&self, o: &Series<E>) -> Series<E> {
        let prec = Val::min(
            Val::min(self.order_lb().plus(&o.prec), o.order_lb().plus(&self.prec)),
            self.prec.plus(&o.prec),
        );
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.plus(e2);
                if crate::exp::cmp_val(&prec, &e) == Ordering::Greater {
                    out.push((e, c1 * c2));
                }
            }
        }
        Series::new(out, prec)
    }

    /// `1/self` known below the absolute order `p`.
    pub fn inv_to(&self, p: &E) -> Result<Series<E>> {
        let (e, c) = self.leading()?.ok_or_else(|| Error::InvalidInput("division by zero series".into()))?;
        let ne = E::zero_exp().minus(&e);
        let ci = c.inv();
        let unit = self.shift(&ne).scale(&ci);
        let neg_u = Series::one().sub(&unit);
        let rel = Val::Fin(p.plus(&e));
        let mut acc = Series::one().truncate(&rel);
        let mut pw = Series::one();
        for _ in 0..10_000 {
            pw = pw.mul(&neg_u).truncate(&rel);
            if pw.terms.is_empty() && pw.prec >= rel {
                return Ok(acc.shift(&ne).scale(&ci));
            }
            if pw.terms.is_empty() {
                // the unit's own precision limits the inverse
                return Ok(acc.add(&pw).shift(&ne).scale(&ci));
            }
            acc = acc.add(&pw);
        }
        Err(Error::NonConvergence { steps: 10_000 })
    }

    pub fn pow(&self, k: u32) -> Series<E> {
        let mut r = Series::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Sign of `self − o` as `t → 0⁺`.
    pub fn compare(&self, o: &Series<E>) -> Result<Ordering> {
        let d = self.sub(o);
        match d.leading().map_err(|_| Error::Indeterminate)? {
            None => Ok(Ordering::Equal),
            Some((_, c)) => c.real_sign().ok_or(Error::InvalidInput("comparison of non-real series".into())),
        }
    }

    /// Sign of the series itself.
    pub fn sign(&self) -> Result<Ordering> {
        self.compare(&Series::zero())
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    pub fn conj(&self) -> Series<E> {
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.conj())).collect(),
            prec: self.prec.clone(),
        }
    }

    pub fn re(&self) -> Series<E> {
        Series::new(
            self.terms.iter().map(|(e, c)| (e.clone(), Scalar::real(c.re().clone()))),
            self.prec.clone(),
        )
    }

    pub fn im(&self) -> Series<E> {
        Series::new(
            self.terms.iter().map(|(e, c)| (e.clone(), Scalar::real(c.im().clone()))),
            self.prec.clone(),
        )
    }

    /// Whether all coefficients live in fields compatible with `o`'s.
    pub fn compatible(&self, o: &Series<E>) -> bool {
        let d1 = self.radicand();
        let d2 = o.radicand();
        d1 == 0 || d2 == 0 || d1 == d2
    }

    /// The radicand of the quadratic field used by the coefficients (0 if
    /// none).
    pub fn radicand(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.radicand()).find(|&d| d != 0).unwrap_or(0)
    }

    /// Order of `self − o` when both are known far enough; agreement up to
    /// the joint precision yields that precision as a lower bound.
    pub fn contact(&self, o: &Series<E>) -> Val<E> {
        self.sub(o).order_lb()
    }
}

impl Series<QExp> {
    /// Substitutes `t ↦ t^a`.
    pub fn reparam(&self, a: i64) -> Series<QExp> {
        assert!(a > 0, "reparam needs a positive integer");
        Series {
            terms: self.terms.iter().map(|(e, c)| (e.times(a), c.clone())).collect(),
            prec: self.prec.times(a),
        }
    }

    /// Least common denominator of the stored exponents.
    pub fn denominator(&self) -> i64 {
        crate::exp::common_denominator(self.terms.iter().map(|(e, _)| e))
    }
}

impl<E: Exponent> fmt::Debug for Series<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `t^e` in text form: `t`, `t^3`, `t^(1/2)`, `t^(-2)`, `t^(1,8)`.
pub fn fmt_power<E: Exponent>(e: &E) -> String {
    let s = e.to_string();
    if s == "1" {
        "t".into()
    } else if s.starts_with('(') || s.bytes().all(|b| b.is_ascii_digit()) {
        alloc::format!("t^{}", s)
    } else {
        alloc::format!("t^({})", s)
    }
}

impl<E: Exponent> fmt::Display for Series<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = E::zero_exp();
        let mut first = true;
        for (e, c) in &self.terms {
            let is_const = *e == zero;
            let neg = c.is_simple() && c.simple_is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if c.is_simple() {
                if is_const {
                    c.fmt_simple_abs(f)?;
                    continue;
                }
                let abs = if neg { -c } else { c.clone() };
                if !abs.is_one() {
                    abs.fmt_simple_abs(f)?;
                    f.write_str("*")?;
                }
            } else if is_const {
                write!(f, "({})", c)?;
                continue;
            } else {
                write!(f, "({})*", c)?;
            }
            f.write_str(&fmt_power(e))?;
        }
        if let Val::Fin(p) = &self.prec {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O({})", if *p == zero { "1".into() } else { fmt_power(p) })?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qe, qi, Lex};
    use alloc::string::ToString;

    fn s(terms: &[(i64, i64, i64)]) -> Series<QExp> {
        Series::exact(terms.iter().map(|&(c, n, d)| (qe(n, d), Scalar::int(c))))
    }

    #[test]
    fn order_examples() {
        assert_eq!(s(&[(1, 3, 1), (2, 5, 1)]).order(), Ok(Val::Fin(qi(3))));
        assert_eq!(Series::<QExp>::zero().order(), Ok(Val::Inf));
        assert_eq!(Series::<QExp>::big_o(qi(3)).order(), Err(Error::UnknownOrder));
        let x = Series::monomial(Scalar::one(), Lex([0, 3]));
        assert_eq!(x.order(), Ok(Val::Fin(Lex([0, 3]))));
    }

    #[test]
    fn arith_examples() {
        let h = s(&[(1, 1, 2)]);
        assert_eq!(h.mul(&h), s(&[(1, 1, 1)]));
        let a = s(&[(1, 1, 1), (1, 2, 1)]).truncate(&Val::Fin(qi(3)));
        let b = s(&[(-1, 1, 1)]);
        let r = a.add(&b);
        assert_eq!(r, s(&[(1, 2, 1)]).truncate(&Val::Fin(qi(3))));
        // (t^(0,4) + b t^(1,0))² with b = 3
        let y = Series::exact([(Lex([0, 4]), Scalar::one()), (Lex([1, 0]), Scalar::int(3))]);
        let expect = Series::exact([
            (Lex([0, 8]), Scalar::one()),
            (Lex([1, 4]), Scalar::int(6)),
            (Lex([2, 0]), Scalar::int(9)),
        ]);
        assert_eq!(y.mul(&y), expect);
    }

    #[test]
    fn mul_precision() {
        // (t + O(t^3)) · (t^2 + O(t^5)) = t^3 + O(t^5)
        let a = s(&[(1, 1, 1)]).truncate(&Val::Fin(qi(3)));
        let b = s(&[(1, 2, 1)]).truncate(&Val::Fin(qi(5)));
        let p = a.mul(&b);
        assert_eq!(p.prec(), &Val::Fin(qi(5)));
        assert_eq!(p.order(), Ok(Val::Fin(qi(3))));
    }

    #[test]
    fn reparam_examples() {
        assert_eq!(s(&[(1, 1, 2), (-1, 1, 1)]).reparam(2), s(&[(1, 1, 1), (-1, 2, 1)]));
        assert_eq!(s(&[(1, 3, 1)]).reparam(1), s(&[(1, 3, 1)]));
        assert_eq!(s(&[(1, 2, 3), (1, 5, 6)]).reparam(6), s(&[(1, 4, 1), (1, 5, 1)]));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(s(&[(1, 1, 1)]).compare(&s(&[(1, 2, 1)])), Ok(Ordering::Greater));
        assert_eq!(s(&[(2, 1, 1)]).compare(&s(&[(2, 1, 1)])), Ok(Ordering::Equal));
        let a = s(&[(1, 1, 1), (-1, 3, 1)]);
        let b = s(&[(1, 1, 1), (-1, 2, 1)]);
        assert_eq!(a.compare(&b), Ok(Ordering::Greater));
        let c = s(&[(1, 1, 1)]).truncate(&Val::Fin(qi(2)));
        assert_eq!(c.compare(&s(&[(1, 1, 1)])), Err(Error::Indeterminate));
    }

    #[test]
    fn display() {
        let a = Series::new(
            [(qi(0), Scalar::int(2)), (qe(1, 2), Scalar::int(-1)), (qi(3), Scalar::frac(3, 4))],
            Val::Fin(qi(5)),
        );
        assert_eq!(a.to_string(), "2 - t^(1/2) + 3/4*t^3 + O(t^5)");
        let b = Series::exact([(qi(1), Scalar::i()), (qi(2), Scalar::new(crate::scalar::Quad::int(1), crate::scalar::Quad::int(1)))]);
        assert_eq!(b.to_string(), "i*t + (1 + i)*t^2");
        assert_eq!(Series::<QExp>::zero().to_string(), "0");
        let l = Series::exact([(Lex([1, 4]), Scalar::int(-1))]);
        assert_eq!(l.to_string(), "-t^(1,4)");
    }
}
