//! Polynomials in `z` with series coefficients and the `ν_z` calculus.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::exp::{Exponent, QExp, Val};
use crate::scalar::Scalar;
use crate::series::{fmt_power, Series};

/// `a_0 + a_1 z + … + a_d z^d`, trailing exact zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct ZPoly<E: Exponent> {
    c: Vec<Series<E>>,
}

/// `(ν_z(g), S_z(g), in_z g)`; the initial form lists `(i, ν(a_i), in(a_i))`
/// for every `i` in the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialFormZ<E: Exponent> {
    pub value: Val<E>,
    pub support: Vec<usize>,
    pub terms: Vec<(usize, E, Scalar)>,
}

impl<E: Exponent> InitialFormZ<E> {
    /// `δ(g, z) = max S_z(g)`.
    pub fn delta(&self) -> usize {
        self.support.last().copied().unwrap_or(0)
    }
}

/// Binomial coefficient as an `i64`.
pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for j in 0..k {
        r = r * (n - j) as i64 / (j + 1) as i64;
    }
    r
}

impl<E: Exponent> ZPoly<E> {
    pub fn new(mut c: Vec<Series<E>>) -> ZPoly<E> {
        while c.last().is_some_and(|s| s.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn zero() -> ZPoly<E> {
        ZPoly { c: Vec::new() }
    }

    pub fn constant(a: Series<E>) -> ZPoly<E> {
        ZPoly::new(vec![a])
    }

    pub fn z() -> ZPoly<E> {
        ZPoly::new(vec![Series::zero(), Series::one()])
    }

    /// `z − φ`.
    pub fn linear(phi: &Series<E>) -> ZPoly<E> {
        ZPoly::new(vec![phi.neg(), Series::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Series<E>] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Series<E> {
        self.c.get(i).cloned().unwrap_or_else(Series::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(|s| s.is_one())
    }

    pub fn add(&self, o: &ZPoly<E>) -> ZPoly<E> {
        let n = self.c.len().max(o.c.len());
        ZPoly::new((0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &ZPoly<E>) -> ZPoly<E> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ZPoly<E> {
        ZPoly { c: self.c.iter().map(|s| s.neg()).collect() }
    }

    pub fn mul(&self, o: &ZPoly<E>) -> ZPoly<E> {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![Series::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        ZPoly::new(c)
    }

    pub fn scale(&self, s: &Series<E>) -> ZPoly<E> {
        ZPoly::new(self.c.iter().map(|a| a.mul(s)).collect())
    }

    pub fn scale_scalar(&self, k: &Scalar) -> ZPoly<E> {
        ZPoly::new(self.c.iter().map(|a| a.scale(k)).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Series<E>) -> Series<E>) -> ZPoly<E> {
        ZPoly::new(self.c.iter().map(f).collect())
    }

    /// `g^{(k)} = (1/k!) ∂^k g / ∂z^k`.
    pub fn divided_derivative(&self, k: usize) -> ZPoly<E> {
        if k >= self.c.len() {
            return ZPoly::zero();
        }
        ZPoly::new(
            (0..self.c.len() - k)
                .map(|i| self.c[i + k].scale(&Scalar::int(binomial(i + k, k))))
                .collect(),
        )
    }

    /// Horner evaluation at `z = s`.
    pub fn eval(&self, s: &Series<E>) -> Series<E> {
        let mut acc = Series::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(s).add(a);
        }
        acc
    }

    /// `g(z + φ)`, whose `i`-th coefficient is `g^{(i)}(φ)`.
    pub fn shift(&self, phi: &Series<E>) -> ZPoly<E> {
        ZPoly::new((0..self.c.len()).map(|i| self.divided_derivative(i).eval(phi)).collect())
    }

    /// `ν_z(g)` for `ν(z) = nu_of_z`, coefficient initials supplied by `nu`
    /// (`None` meaning value `+∞`).
    pub fn nu_z_with(
        &self,
        nu_of_z: &Val<E>,
        nu: impl Fn(&Series<E>) -> Result<Option<(E, Scalar)>>,
    ) -> Result<InitialFormZ<E>> {
        let mut vals: Vec<(usize, Val<E>, Option<(E, Scalar)>)> = Vec::new();
        for (i, a) in self.c.iter().enumerate() {
            let init = nu(a)?;
            let v = match &init {
                None => Val::Inf,
                Some((e, _)) => Val::Fin(e.clone()).plus(&nu_of_z.times(i as i64)),
            };
            vals.push((i, v, init));
        }
        let value = vals.iter().map(|(_, v, _)| v.clone()).min().unwrap_or(Val::Inf);
        let mut support = Vec::new();
        let mut terms = Vec::new();
        if !value.is_inf() {
            for (i, v, init) in vals {
                if v == value {
                    support.push(i);
                    let (e, c) = init.expect("finite value has an initial term");
                    terms.push((i, e, c));
                }
            }
        }
        Ok(InitialFormZ { value, support, terms })
    }

    /// `ν_z(g)` with the `t`-adic valuation on coefficients.
    pub fn nu_z(&self, nu_of_z: &Val<E>) -> Result<InitialFormZ<E>> {
        self.nu_z_with(nu_of_z, |a| a.leading())
    }

    pub fn compatible_with(&self, s: &Series<E>) -> bool {
        self.c.iter().all(|a| a.compatible(s))
    }
}

impl ZPoly<QExp> {
    pub fn reparam(&self, a: i64) -> ZPoly<QExp> {
        self.map_coeffs(|s| s.reparam(a))
    }

    /// Least common denominator of all coefficient exponents.
    pub fn denominator(&self) -> i64 {
        self.c.iter().fold(1, |l, s| num_integer::lcm(l, s.denominator()))
    }
}

/// Writes one term `c·z^i` without its sign; returns whether it is negative.
fn fmt_term<E: Exponent>(c: &Series<E>, i: usize) -> (bool, String) {
    let zpow = match i {
        0 => String::new(),
        1 => "z".into(),
        _ => alloc::format!("z^{}", i),
    };
    if c.is_one() && i > 0 {
        return (false, zpow);
    }
    if c.is_exact() && c.terms().len() == 1 {
        let (e, s) = &c.terms()[0];
        if s.is_simple() {
            let neg = s.simple_is_negative();
            let abs = if neg { -s } else { s.clone() };
            let mut parts: Vec<String> = Vec::new();
            let is_const = *e == E::zero_exp();
            if !abs.is_one() || (is_const && i == 0) {
                parts.push(alloc::format!("{}", Series::<E>::constant(abs)));
            }
            if !is_const {
                parts.push(fmt_power(e));
            }
            if i > 0 {
                parts.push(zpow);
            }
            return (neg, parts.join("*"));
        }
    }
    if i == 0 {
        (false, alloc::format!("({})", c))
    } else {
        (false, alloc::format!("({})*{}", c, zpow))
    }
}

impl<E: Exponent> fmt::Display for ZPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..self.c.len()).rev() {
            let c = &self.c[i];
            if c.is_zero() {
                continue;
            }
            let (neg, body) = fmt_term(c, i);
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            f.write_str(&body)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<E: Exponent> fmt::Debug for ZPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Builds a `ZPoly` over rational exponents from `(c, num, den)` term lists,
/// lowest degree first. Mostly for tests and examples.
pub fn zpoly_q(coeffs: &[&[(i64, i64, i64)]]) -> ZPoly<QExp> {
    ZPoly::new(
        coeffs
            .iter()
            .map(|ts| {
                Series::exact(ts.iter().map(|&(c, n, d)| (crate::exp::qe(n, d), Scalar::int(c))))
            })
            .collect(),
    )
}

/// Rejects non-monic input.
pub fn require_monic<E: Exponent>(g: &ZPoly<E>) -> Result<()> {
    if g.is_monic() {
        Ok(())
    } else if g.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Err(Error::NotMonic)
    }
}

impl<E: Exponent> Default for ZPoly<E> {
    fn default() -> Self {
        ZPoly::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qe, qi};
    use alloc::string::ToString;

    fn t(c: i64, n: i64, d: i64) -> Series<QExp> {
        Series::monomial(Scalar::int(c), qe(n, d))
    }

    #[test]
    fn divided_derivatives() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        assert_eq!(g.divided_derivative(1), zpoly_q(&[&[], &[(2, 0, 1)]]));
        assert_eq!(g.divided_derivative(2), zpoly_q(&[&[(1, 0, 1)]]));
        assert!(g.divided_derivative(3).is_zero());
        let h = zpoly_q(&[&[], &[(1, 1, 1)], &[], &[(1, 0, 1)]]);
        assert_eq!(h.divided_derivative(1), zpoly_q(&[&[(1, 1, 1)], &[], &[(3, 0, 1)]]));
        assert_eq!(h.divided_derivative(2), zpoly_q(&[&[], &[(3, 0, 1)]]));
    }

    #[test]
    fn evaluation() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        assert!(g.eval(&t(1, 1, 2)).is_zero());
        assert_eq!(g.eval(&Series::zero()), t(-1, 1, 1));
        let h = zpoly_q(&[&[(-1, 2, 1)], &[(1, 0, 1)]]);
        assert_eq!(h.eval(&t(1, 2, 1).add(&t(1, 3, 1))), t(1, 3, 1));
    }

    #[test]
    fn nu_z_examples() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        let a = g.nu_z(&Val::Fin(qe(1, 2))).unwrap();
        assert_eq!(a.value, Val::Fin(qi(1)));
        assert_eq!(a.support, vec![0, 2]);
        let b = g.nu_z(&Val::Fin(qi(2))).unwrap();
        assert_eq!(b.value, Val::Fin(qi(1)));
        assert_eq!(b.support, vec![0]);
        assert_eq!(b.delta(), 0);
        let z = ZPoly::<QExp>::z();
        let c = z.nu_z(&Val::Fin(qi(3))).unwrap();
        assert_eq!((c.value, c.support), (Val::Fin(qi(3)), vec![1]));
    }

    #[test]
    fn shift_is_taylor() {
        let g = zpoly_q(&[&[(1, 3, 1)], &[(-1, 1, 1), (-1, 2, 1)], &[(1, 0, 1)]]);
        let phi = t(1, 1, 1);
        let s = g.shift(&phi);
        let back = ZPoly::new(vec![phi.neg(), Series::one()]);
        // s(z − φ) = g(z)
        let mut acc = ZPoly::zero();
        for (i, a) in s.coeffs().iter().enumerate() {
            let mut p = ZPoly::constant(a.clone());
            for _ in 0..i {
                p = p.mul(&back);
            }
            acc = acc.add(&p);
        }
        assert_eq!(acc, g);
    }

    #[test]
    fn display() {
        let g = zpoly_q(&[&[(1, 3, 1)], &[(-1, 1, 1), (-1, 2, 1)], &[(1, 0, 1)]]);
        assert_eq!(g.to_string(), "z^2 + (-t - t^2)*z + t^3");
        let h = zpoly_q(&[&[(-1, 1, 2)], &[(2, 1, 1)], &[(1, 0, 1)]]);
        assert_eq!(h.to_string(), "z^2 + 2*t*z - t^(1/2)");
        assert_eq!(zpoly_q(&[&[(-3, 0, 1)]]).to_string(), "-3");
    }
}
