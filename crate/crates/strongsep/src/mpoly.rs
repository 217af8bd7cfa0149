//! Multivariate polynomials over the scalars; the last variable is `z`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::exp::Exponent;
use crate::poly::Poly;
use crate::scalar::{Scalar, Q};
use crate::series::Series;
use crate::zpoly::{binomial, ZPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> MPoly {
        MPoly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, e: Vec<u32>, c: Scalar) -> MPoly {
        assert_eq!(e.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { nvars, terms }
    }

    /// The `k`-th variable.
    pub fn var(nvars: usize, k: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[k] = 1;
        MPoly::monomial(nvars, e, Scalar::one())
    }

    /// The last variable.
    pub fn z(nvars: usize) -> MPoly {
        MPoly::var(nvars, nvars - 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn z_degree(&self) -> usize {
        self.terms.keys().map(|e| e[self.nvars - 1] as usize).max().unwrap_or(0)
    }

    fn insert(&mut self, e: Vec<u32>, c: Scalar) {
        let s = match self.terms.remove(&e) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Scalar) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            r.insert(e.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.insert(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = MPoly::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Coefficient of `z^i` as a polynomial in the remaining variables
    /// (still in `nvars` variables, with zero `z`-degree).
    pub fn z_coeff(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[self.nvars - 1] as usize == i {
                let mut e2 = e.clone();
                e2[self.nvars - 1] = 0;
                r.insert(e2, c.clone());
            }
        }
        r
    }

    pub fn is_monic_in_z(&self) -> bool {
        let d = self.z_degree();
        self.z_coeff(d) == MPoly::constant(self.nvars, Scalar::one())
    }

    /// `(1/k!) ∂^k/∂z^k`.
    pub fn divided_derivative_z(&self, k: usize) -> MPoly {
        let zi = self.nvars - 1;
        let mut r = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let ez = e[zi] as usize;
            if ez >= k {
                let mut e2 = e.clone();
                e2[zi] = (ez - k) as u32;
                r.insert(e2, c.scale_int(binomial(ez, k)));
            }
        }
        r
    }

    /// Value at series for all variables.
    pub fn eval_series<E: Exponent>(&self, vals: &[Series<E>]) -> Series<E> {
        assert_eq!(vals.len(), self.nvars);
        let mut cache: Vec<Vec<Series<E>>> = vals.iter().map(|v| vec![Series::one(), v.clone()]).collect();
        let mut acc = Series::zero();
        for (e, c) in &self.terms {
            let mut m = Series::constant(c.clone());
            for (k, &p) in e.iter().enumerate() {
                while cache[k].len() <= p as usize {
                    let next = cache[k].last().unwrap().mul(&vals[k]);
                    cache[k].push(next);
                }
                if p > 0 {
                    m = m.mul(&cache[k][p as usize]);
                }
            }
            acc = acc.add(&m);
        }
        acc
    }

    /// `f(x(t), z)` as a polynomial in `z` over series.
    pub fn to_zpoly<E: Exponent>(&self, xs: &[Series<E>]) -> ZPoly<E> {
        assert_eq!(xs.len() + 1, self.nvars);
        let mut vals: Vec<Series<E>> = xs.to_vec();
        vals.push(Series::zero());
        let d = self.z_degree();
        ZPoly::new((0..=d).map(|i| self.z_coeff(i).eval_series(&vals)).collect())
    }

    /// `f(b, z)` for a rational point `b` of x-space; `None` if some
    /// coefficient is not rational.
    pub fn at_point(&self, b: &[Q]) -> Option<Poly<Q>> {
        assert_eq!(b.len() + 1, self.nvars);
        let d = self.z_degree();
        let mut c = vec![Q::zero(); d + 1];
        for (e, s) in &self.terms {
            let mut v = s.to_rational()?.clone();
            for (k, &p) in e[..self.nvars - 1].iter().enumerate() {
                for _ in 0..p {
                    v *= &b[k];
                }
            }
            c[e[self.nvars - 1] as usize] += v;
        }
        Some(Poly::new(c))
    }

    /// All monomials of total degree `≤ deg`, in graded order.
    pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for total in 0..=deg {
            let mut cur = vec![0u32; nvars];
            fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if k + 1 == cur.len() {
                    cur[k] = left;
                    out.push(cur.clone());
                    return;
                }
                for a in (0..=left).rev() {
                    cur[k] = a;
                    rec(k + 1, left - a, cur, out);
                }
                cur[k] = 0;
            }
            rec(0, total, &mut cur, &mut out);
        }
        out
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut s = String::new();
        let mut first = true;
        let zi = self.nvars - 1;
        let mut order: Vec<(&Vec<u32>, &Scalar)> = self.terms.iter().collect();
        order.sort_by(|a, b| {
            let ka = (a.0[zi], a.0.iter().sum::<u32>(), a.0);
            let kb = (b.0[zi], b.0.iter().sum::<u32>(), b.0);
            kb.cmp(&ka)
        });
        for (e, c) in order {
            let neg = c.is_simple() && c.simple_is_negative();
            if first {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if c.is_simple() {
                let abs = if neg { -c } else { c.clone() };
                if !abs.is_one() || is_const {
                    parts.push(alloc::format!("{}", Series::<crate::exp::QExp>::constant(abs)));
                }
            } else {
                parts.push(alloc::format!("({})", c));
            }
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(names[k].clone()),
                    _ => parts.push(alloc::format!("{}^{}", names[k], p)),
                }
            }
            s.push_str(&parts.join("*"));
        }
        if first {
            s.push('0');
        }
        s
    }

    /// Default variable names `x1, …, xn, z` (or `x, z` for one variable).
    pub fn default_names(nvars: usize) -> Vec<String> {
        let n = nvars - 1;
        let mut v: Vec<String> = if n == 1 {
            vec!["x".into()]
        } else {
            (1..=n).map(|k| alloc::format!("x{}", k)).collect()
        };
        v.push("z".into());
        v
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&MPoly::default_names(self.nvars)))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qi, Lex, QExp};
    use crate::scalar::q;
    use alloc::string::ToString;

    #[test]
    fn arithmetic_and_display() {
        let x = MPoly::var(2, 0);
        let z = MPoly::z(2);
        let f = z.sub(&x).mul(&z.add(&x));
        assert_eq!(f.to_string(), "z^2 - x^2");
        assert!(f.is_monic_in_z());
        assert_eq!(f.divided_derivative_z(1).to_string(), "2*z");
        assert_eq!(f.at_point(&[q(3)]).unwrap(), Poly::new(vec![q(-9), q(0), q(1)]));
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(2, 0);
        let z = MPoly::z(2);
        let f = z.sub(&x.scale(&Scalar::int(2)));
        let xs = [Series::<QExp>::monomial(Scalar::one(), qi(1))];
        let g = f.to_zpoly(&xs);
        assert_eq!(g.to_string(), "z - 2*t");
        let v = f.eval_series(&[xs[0].clone(), Series::monomial(Scalar::int(3), qi(1))]);
        assert_eq!(v, Series::monomial(Scalar::int(1), qi(1)));
        // lex exponents
        let y = Series::exact([(Lex([0, 4]), Scalar::one())]);
        let w = MPoly::var(2, 0).pow(2).eval_series(&[y, Series::zero()]);
        assert_eq!(w.order().unwrap(), crate::exp::Val::Fin(Lex([0, 8])));
    }

    #[test]
    fn monomial_enumeration() {
        let m = MPoly::monomials_up_to(3, 2);
        assert_eq!(m.len(), 10);
        assert_eq!(m[0], vec![0, 0, 0]);
    }
}
