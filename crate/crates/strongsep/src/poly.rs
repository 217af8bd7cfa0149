//! Dense univariate polynomials over an exact field.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Debug};
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{Quad, Scalar, Q};

/// Exact field arithmetic by reference.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_int(n: i64) -> Self;
}

/// A field with a decidable total order compatible with the arithmetic.
pub trait OrderedField: Field {
    fn signum(&self) -> Ordering;
    fn from_q(x: &Q) -> Self;
    /// A rational upper bound for `|self|`.
    fn abs_bound(&self) -> Q;
}

impl Field for Q {
    fn from_int(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
}

impl OrderedField for Q {
    fn signum(&self) -> Ordering {
        self.cmp(&Q::zero())
    }
    fn from_q(x: &Q) -> Q {
        x.clone()
    }
    fn abs_bound(&self) -> Q {
        if *self < Q::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Field for Quad {
    fn from_int(n: i64) -> Quad {
        Quad::int(n)
    }
}

impl OrderedField for Quad {
    fn signum(&self) -> Ordering {
        Quad::signum(self)
    }
    fn from_q(x: &Q) -> Quad {
        Quad::rat(x.clone())
    }
    fn abs_bound(&self) -> Q {
        let a = self.rational_part().abs_bound();
        let b = self.irrational_part().abs_bound();
        // √d ≤ d for d ≥ 1
        a + b * Q::from_integer(BigInt::from(self.radicand()))
    }
}

impl Field for Scalar {
    fn from_int(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

/// Polynomial `c[0] + c[1]·u + … + c[n]·uⁿ` with `c[n] ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    c: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Poly<F> {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly<F> {
        Poly { c: Vec::new() }
    }

    pub fn constant(a: F) -> Poly<F> {
        Poly::new(vec![a])
    }

    pub fn x() -> Poly<F> {
        Poly::new(vec![F::zero(), F::one()])
    }

    pub fn monomial(a: F, k: usize) -> Poly<F> {
        let mut c = vec![F::zero(); k + 1];
        c[k] = a;
        Poly::new(c)
    }

    /// `u − r`.
    pub fn linear(r: &F) -> Poly<F> {
        Poly::new(vec![-r.clone(), F::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lead(&self) -> Option<&F> {
        self.c.last()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn scale(&self, k: &F) -> Poly<F> {
        Poly::new(self.c.iter().map(|a| a.clone() * k).collect())
    }

    pub fn monic(&self) -> Poly<F> {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => {
                let inv = F::one() / l;
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Poly<F> {
        Poly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * &F::from_int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = F::one() / d.lead().unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![F::zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let coef = r[k + dd].clone() * &lead_inv;
            if !coef.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - &(coef.clone() * dj);
                }
            }
            quo[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly<F>) -> Poly<F> {
        self.divrem(d).1
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition: `self = lead · ∏ fᵢ^i` with the
    /// `fᵢ` monic, square-free and pairwise coprime. Only factors of
    /// positive degree are returned.
    pub fn squarefree(&self) -> Vec<(Poly<F>, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.divrem(&a0).0;
        let mut c = df.divrem(&a0).0;
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the square-free factors.
    pub fn squarefree_part(&self) -> Poly<F> {
        let mut acc = Poly::constant(F::one());
        for (f, _) in self.squarefree() {
            acc = &acc * &f;
        }
        acc
    }

    /// `self(u + a)`.
    pub fn shift(&self, a: &F) -> Poly<F> {
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![a.clone(), F::one()]);
        for coef in self.c.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(coef.clone());
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.c.iter().map(f).collect())
    }
}

impl<'a, F: Field> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl<'a, F: Field> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl<'a, F: Field> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(c)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.c.iter().map(|a| -a.clone()).collect())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", a)?,
                1 => write!(f, "({})*u", a)?,
                _ => write!(f, "({})*u^{}", a, i)?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

/// Splits a polynomial over `Q(√d)(i)` into its rational components along
/// the basis `1, √d, i, i√d`.
pub fn rational_components(p: &Poly<Scalar>) -> [Poly<Q>; 4] {
    let pick = |k: usize| {
        Poly::new(
            p.coeffs()
                .iter()
                .map(|a| match k {
                    0 => a.re().rational_part().clone(),
                    1 => a.re().irrational_part().clone(),
                    2 => a.im().rational_part().clone(),
                    _ => a.im().irrational_part().clone(),
                })
                .collect(),
        )
    };
    [pick(0), pick(1), pick(2), pick(3)]
}

/// Real part view of a polynomial whose coefficients are all real.
pub fn real_poly(p: &Poly<Scalar>) -> Option<Poly<Quad>> {
    let mut c = Vec::with_capacity(p.coeffs().len());
    for a in p.coeffs() {
        c.push(a.to_real()?.clone());
    }
    Some(Poly::new(c))
}

/// Norm down to `Q[u]`: `p · p̄` under `√d ↦ −√d`.
pub fn norm_to_q(p: &Poly<Quad>) -> Poly<Q> {
    let conj = p.map(|a| a.galois_conj());
    let prod = p * &conj;
    prod.map(|a| a.to_rational().cloned().expect("norm is rational"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (qu, r) = b.divrem(&a);
        assert_eq!(&(&qu * &a) + &r, b);
    }

    #[test]
    fn yun_decomposition() {
        // (u−1)²(u+2)
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let sf = f.squarefree();
        assert_eq!(sf, alloc::vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn shift_matches_eval() {
        let f = p(&[3, -2, 0, 1]);
        let g = f.shift(&q(2));
        for x in -3..4 {
            assert_eq!(g.eval(&q(x)), f.eval(&q(x + 2)));
        }
    }
}
