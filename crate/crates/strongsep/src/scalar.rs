//! Exact scalars: rationals, one real quadratic extension `Q(√d)`, and their
//! Gaussian closure `Q(√d)(i)`.
//!
//! A [`Quad`] is `a + b√d` with `d` a square-free integer (`d = 0` marks a
//! plain rational, in which case `b = 0`). A [`Scalar`] is `re + i·im` with
//! both parts in the same quadratic field. Mixing two different radicands in
//! arithmetic panics; use [`Scalar::compatible`] at API boundaries.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn join(d1: u64, d2: u64) -> u64 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (a, b) if a == b => a,
        _ => panic!("incompatible quadratic extensions √{} and √{}", d1, d2),
    }
}

fn joinable(d1: u64, d2: u64) -> bool {
    d1 == 0 || d2 == 0 || d1 == d2
}

/// Writes `n > 0` as `s²·m` with `m` square-free. Returns `None` when `m`
/// cannot be certified square-free cheaply or does not fit in `u64`.
fn split_square(n: &BigInt) -> Option<(BigInt, u64)> {
    let mut rest = n.clone();
    let mut s = BigInt::one();
    let mut m = BigInt::one();
    let mut p = 2u64;
    while p <= 10_000 {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0u32;
        loop {
            let (qu, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = qu;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= &pb;
        }
        if e % 2 == 1 {
            m *= &pb;
        }
        p += 1;
    }
    if rest > BigInt::one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            s *= r;
        } else if p > 10_000 && rest >= BigInt::from(100_000_000u64) {
            return None;
        } else {
            m *= rest;
        }
    }
    Some((s, m.to_u64()?))
}

/// `√x = c·√m` with `m` square-free (`m = 1` for a rational root).
fn rat_sqrt(x: &Q) -> Option<(Q, u64)> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some((Q::zero(), 1));
    }
    let n = x.numer() * x.denom();
    let (s, m) = split_square(&n)?;
    Some((Q::new(s, x.denom().clone()), m))
}

/// Element `a + b√d` of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    a: Q,
    b: Q,
    d: u64,
}

impl Quad {
    pub fn new(a: Q, b: Q, d: u64) -> Quad {
        if d == 1 {
            return Quad::rat(a + b);
        }
        let mut x = Quad { a, b, d };
        x.normalize();
        x
    }

    pub fn rat(a: Q) -> Quad {
        Quad { a, b: Q::zero(), d: 0 }
    }

    pub fn int(n: i64) -> Quad {
        Quad::rat(q(n))
    }

    fn normalize(&mut self) {
        if self.b.is_zero() || self.d == 0 {
            self.b = Q::zero();
            self.d = 0;
        }
    }

    pub fn rational_part(&self) -> &Q {
        &self.a
    }

    pub fn irrational_part(&self) -> &Q {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn to_rational(&self) -> Option<&Q> {
        if self.d == 0 {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    /// Conjugate under `√d ↦ −√d`.
    pub fn galois_conj(&self) -> Quad {
        Quad { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Q::zero());
        let sb = self.b.cmp(&Q::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Q::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Quad {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn compatible(&self, other: &Quad) -> bool {
        joinable(self.d, other.d)
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Q {
        &self.a * &self.a - &self.b * &self.b * Q::from_integer(BigInt::from(self.d))
    }

    pub fn inv(&self) -> Quad {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        Quad { a: &self.a / &n, b: -(&self.b / &n), d: self.d }
    }

    /// A non-negative square root inside `Q(√ctx)` (`ctx = 0`: any single
    /// radicand may be adjoined). `None` when no such root exists.
    pub fn sqrt(&self, ctx: u64) -> Option<Quad> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some(Quad::int(0));
        }
        if self.d == 0 {
            let (c, m) = rat_sqrt(&self.a)?;
            if m == 1 {
                return Some(Quad::rat(c));
            }
            if ctx != 0 && ctx != m {
                return None;
            }
            return Some(Quad::new(Q::zero(), c, m));
        }
        if ctx != 0 && ctx != self.d {
            return None;
        }
        let (s, m) = rat_sqrt(&self.norm())?;
        if m != 1 {
            return None;
        }
        let two = q(2);
        for cand in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if !cand.is_positive() {
                continue;
            }
            if let Some((p, 1)) = rat_sqrt(&cand) {
                let r = &self.b / (&two * &p);
                let y = Quad::new(p, r, self.d);
                return Some(y.abs());
            }
        }
        None
    }
}

impl Zero for Quad {
    fn zero() -> Quad {
        Quad::rat(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quad {
    fn one() -> Quad {
        Quad::rat(Q::one())
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Quad) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    /// Panics on incompatible radicands.
    fn cmp(&self, other: &Quad) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        let d = join(self.d, o.d);
        let mut r = Quad { a: &self.a + &o.a, b: &self.b + &o.b, d };
        r.normalize();
        r
    }
}

impl<'a> Sub<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn sub(self, o: &Quad) -> Quad {
        let d = join(self.d, o.d);
        let mut r = Quad { a: &self.a - &o.a, b: &self.b - &o.b, d };
        r.normalize();
        r
    }
}

impl<'a> Mul<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        if o.d == 0 {
            let mut r = Quad { a: &self.a * &o.a, b: &self.b * &o.a, d: self.d };
            r.normalize();
            return r;
        }
        if self.d == 0 {
            let mut r = Quad { a: &self.a * &o.a, b: &self.a * &o.b, d: o.d };
            r.normalize();
            return r;
        }
        let d = join(self.d, o.d);
        let dq = Q::from_integer(BigInt::from(d));
        let mut r = Quad {
            a: &self.a * &o.a + &self.b * &o.b * dq,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        };
        r.normalize();
        r
    }
}

impl<'a> Div<&'a Quad> for &'a Quad {
    type Output = Quad;
    fn div(self, o: &Quad) -> Quad {
        if o.d == 0 {
            assert!(!o.a.is_zero(), "division by zero");
            let mut r = Quad { a: &self.a / &o.a, b: &self.b / &o.a, d: self.d };
            r.normalize();
            return r;
        }
        self * &o.inv()
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -self.clone()
    }
}

/// Element `re + i·im` with `re, im` in one real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Quad,
    im: Quad,
}

impl Scalar {
    pub fn new(re: Quad, im: Quad) -> Scalar {
        assert!(re.compatible(&im), "incompatible quadratic extensions");
        Scalar { re, im }
    }

    pub fn real(re: Quad) -> Scalar {
        Scalar { re, im: Quad::zero() }
    }

    pub fn imag(im: Quad) -> Scalar {
        Scalar { re: Quad::zero(), im }
    }

    pub fn rat(x: Q) -> Scalar {
        Scalar::real(Quad::rat(x))
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::rat(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::rat(qf(n, d))
    }

    pub fn i() -> Scalar {
        Scalar::imag(Quad::one())
    }

    /// `c·√m` for a rational `c` and positive integer `m`.
    pub fn sqrt_of(m: u64) -> Option<Scalar> {
        Quad::int(m as i64).sqrt(0).map(Scalar::real)
    }

    pub fn re(&self) -> &Quad {
        &self.re
    }

    pub fn im(&self) -> &Quad {
        &self.im
    }

    pub fn radicand(&self) -> u64 {
        join(self.re.d, self.im.d)
    }

    pub fn compatible(&self, other: &Scalar) -> bool {
        joinable(self.radicand(), other.radicand())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero() && self.re.is_rational()
    }

    pub fn to_rational(&self) -> Option<&Q> {
        if self.im.is_zero() {
            self.re.to_rational()
        } else {
            None
        }
    }

    pub fn to_real(&self) -> Option<&Quad> {
        if self.im.is_zero() {
            Some(&self.re)
        } else {
            None
        }
    }

    /// Sign of a real scalar; `None` for non-real values.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.is_real() {
            Some(self.re.signum())
        } else {
            None
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|x|² = re² + im²`.
    pub fn norm_sq(&self) -> Quad {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Scalar {
        if self.im.is_zero() {
            return Scalar::real(self.re.inv());
        }
        let n = self.norm_sq().inv();
        Scalar { re: &self.re * &n, im: -(&self.im * &n) }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        let kq = Quad::int(k);
        Scalar { re: &self.re * &kq, im: &self.im * &kq }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A square root inside `Q(√ctx)(i)`, adjoining one radicand when
    /// `ctx = 0`. `None` when the root leaves the supported fields.
    pub fn sqrt(&self, ctx: u64) -> Option<Scalar> {
        let ctx = join(ctx, self.radicand());
        if self.im.is_zero() {
            return if self.re.is_negative() {
                (-&self.re).sqrt(ctx).map(Scalar::imag)
            } else {
                self.re.sqrt(ctx).map(Scalar::real)
            };
        }
        let modulus = self.norm_sq().sqrt(ctx)?;
        let ctx2 = join(ctx, modulus.d);
        let half = Quad::rat(qf(1, 2));
        let p = (&(&self.re + &modulus) * &half).sqrt(ctx2)?;
        if p.is_zero() {
            return None;
        }
        let im = &self.im / &(&p * &Quad::int(2));
        Some(Scalar { re: p, im })
    }
}

impl Zero for Scalar {
    fn zero() -> Scalar {
        Scalar::real(Quad::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Scalar {
        Scalar::real(Quad::one())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(&self.re * &o.re);
        }
        Scalar {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if o.im.is_zero() {
            return Scalar { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add<$t> for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                &self + &o
            }
        }
        impl<'a> Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, o: &$t) -> $t {
                &self + o
            }
        }
        impl Sub<$t> for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                &self - &o
            }
        }
        impl<'a> Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, o: &$t) -> $t {
                &self - o
            }
        }
        impl Mul<$t> for $t {
            type Output = $t;
            fn mul(self, o: $t) -> $t {
                &self * &o
            }
        }
        impl<'a> Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, o: &$t) -> $t {
                &self * o
            }
        }
        impl Div<$t> for $t {
            type Output = $t;
            fn div(self, o: $t) -> $t {
                &self / &o
            }
        }
        impl<'a> Div<&'a $t> for $t {
            type Output = $t;
            fn div(self, o: &$t) -> $t {
                &self / o
            }
        }
    };
}

owned_ops!(Quad);
owned_ops!(Scalar);

impl From<Q> for Scalar {
    fn from(x: Q) -> Scalar {
        Scalar::rat(x)
    }
}

impl From<Quad> for Scalar {
    fn from(x: Quad) -> Scalar {
        Scalar::real(x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

fn fmt_rat(x: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_integer() {
        write!(f, "{}", x.numer())
    } else {
        write!(f, "{}/{}", x.numer(), x.denom())
    }
}

/// A single signed monomial `c`, `c*sqrt(d)`, `c*i` or `c*sqrt(d)*i`.
struct Atom<'a> {
    c: &'a Q,
    d: u64,
    imag: bool,
}

impl Atom<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, abs: bool) -> fmt::Result {
        let c = if abs { self.c.abs() } else { self.c.clone() };
        let unit = self.d != 0 || self.imag;
        if unit && c.is_one() {
        } else if unit && (-c.clone()).is_one() {
            f.write_str("-")?;
        } else {
            fmt_rat(&c, f)?;
            if unit {
                f.write_str("*")?;
            }
        }
        if self.d != 0 {
            write!(f, "sqrt({})", self.d)?;
            if self.imag {
                f.write_str("*")?;
            }
        }
        if self.imag {
            f.write_str("i")?;
        }
        Ok(())
    }
}

impl Scalar {
    fn atoms(&self) -> alloc::vec::Vec<Atom<'_>> {
        let mut v = alloc::vec::Vec::new();
        let parts = [
            (&self.re.a, 0, false),
            (&self.re.b, self.re.d, false),
            (&self.im.a, 0, true),
            (&self.im.b, self.im.d, true),
        ];
        for (c, d, imag) in parts {
            if !c.is_zero() {
                v.push(Atom { c, d, imag });
            }
        }
        v
    }

    /// True when the value prints as one signed monomial (no parentheses
    /// needed as a factor).
    pub fn is_simple(&self) -> bool {
        self.atoms().len() <= 1
    }

    /// Sign of the leading rational factor for simple scalars.
    pub fn simple_is_negative(&self) -> bool {
        let a = self.atoms();
        a.len() == 1 && a[0].c.is_negative()
    }

    /// Writes `|self|` for a simple scalar (used when the sign is printed
    /// separately).
    pub fn fmt_simple_abs(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.atoms().first() {
            None => f.write_str("0"),
            Some(a) => a.write(f, true),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms = self.atoms();
        if atoms.is_empty() {
            return f.write_str("0");
        }
        for (k, a) in atoms.iter().enumerate() {
            if k > 0 {
                f.write_str(if a.c.is_negative() { " - " } else { " + " })?;
                a.write(f, true)?;
            } else {
                a.write(f, false)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Scalar::real(self.clone()), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn quad_arith_and_sign() {
        let s2 = Scalar::sqrt_of(2).unwrap();
        assert_eq!((&s2 * &s2), Scalar::int(2));
        let x = Quad::new(q(1), q(-1), 2);
        assert_eq!(x.signum(), Ordering::Less);
        let y = Quad::new(q(2), q(-1), 2);
        assert_eq!(y.signum(), Ordering::Greater);
        assert_eq!(&x * &x.inv(), Quad::one());
    }

    #[test]
    fn sqrt_extraction() {
        assert_eq!(Scalar::sqrt_of(8).unwrap().to_string(), "2*sqrt(2)");
        assert_eq!(Scalar::int(-4).sqrt(0).unwrap(), Scalar::imag(Quad::int(2)));
        // 3 + 2√2 = (1 + √2)²
        let v = Quad::new(q(3), q(2), 2).sqrt(0).unwrap();
        assert_eq!(v, Quad::new(q(1), q(1), 2));
        // 2i = (1 + i)²
        let w = Scalar::imag(Quad::int(2)).sqrt(0).unwrap();
        assert_eq!(&w * &w, Scalar::imag(Quad::int(2)));
        assert!(Scalar::int(3).sqrt(2).is_none());
        assert!(Quad::new(q(1), q(1), 2).sqrt(0).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::frac(-3, 2).to_string(), "-3/2");
        let z = Scalar::new(Quad::new(q(1), qf(1, 2), 3), Quad::int(-1));
        assert_eq!(z.to_string(), "1 + 1/2*sqrt(3) - i");
        assert_eq!(Scalar::i().scale_int(-1).to_string(), "-i");
    }
}
