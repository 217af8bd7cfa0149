//! Evaluation of parsed expressions into scalars, exponents, series,
//! polynomials in `z` and multivariate polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use strongsep::exp::{Exponent, Lex, QExp};
use strongsep::mpoly::MPoly;
use strongsep::scalar::{Scalar, Q};
use strongsep::series::Series;
use strongsep::zpoly::ZPoly;

use crate::expr::{Expr, Kind, PResult, ParseError, Pos};

const MAX_POWER: u64 = 256;

/// Names with a fixed meaning inside expressions.
pub const RESERVED: [&str; 5] = ["t", "i", "sqrt", "O", "inf"];

/// Exponent groups with a textual form.
pub trait ExpSyntax: Exponent {
    /// `t` alone, when the group has a canonical generator.
    fn unit() -> Option<Self>;
    fn from_expr(e: &Expr) -> PResult<Self>;
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> PResult<T> {
    Err(ParseError::new(pos, msg))
}

/// A rational constant built from integers, `+ - * /` and integer powers.
pub fn rational(e: &Expr) -> PResult<Q> {
    match &e.kind {
        Kind::Num(n) => Ok(Q::from_integer(n.clone())),
        Kind::Neg(a) => Ok(-rational(a)?),
        Kind::Bin(op, a, b) => {
            let x = rational(a)?;
            if *op == '^' {
                let k = natural(b)?;
                return Ok(num_traits::pow(x, k as usize));
            }
            let y = rational(b)?;
            match op {
                '+' => Ok(x + y),
                '-' => Ok(x - y),
                '*' => Ok(x * y),
                _ if y.is_zero() => err(e.pos, "division by zero"),
                _ => Ok(x / y),
            }
        }
        _ => err(e.pos, "expected a rational number"),
    }
}

fn integer(e: &Expr) -> PResult<BigInt> {
    let x = rational(e)?;
    if !x.is_integer() {
        return err(e.pos, "expected an integer");
    }
    Ok(x.to_integer())
}

fn small(e: &Expr) -> PResult<i64> {
    integer(e)?.to_i64().ok_or_else(|| ParseError::new(e.pos, "integer out of range"))
}

/// A nonnegative integer power.
pub fn natural(e: &Expr) -> PResult<u64> {
    let n = integer(e)?;
    match n.to_u64() {
        Some(k) if k <= MAX_POWER => Ok(k),
        _ if n.is_negative() => err(e.pos, "expected a nonnegative exponent"),
        _ => err(e.pos, format!("exponent larger than {}", MAX_POWER)),
    }
}

impl ExpSyntax for QExp {
    fn unit() -> Option<QExp> {
        Some(QExp::from_integer(1))
    }

    fn from_expr(e: &Expr) -> PResult<QExp> {
        let x = rational(e)?;
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(n), Some(d)) => Ok(QExp::new(n, d)),
            _ => err(e.pos, "exponent out of range"),
        }
    }
}

impl<const N: usize> ExpSyntax for Lex<N> {
    fn unit() -> Option<Lex<N>> {
        None
    }

    fn from_expr(e: &Expr) -> PResult<Lex<N>> {
        match &e.kind {
            Kind::Tuple(xs) if xs.len() == N => {
                let mut v = [0i64; N];
                for (slot, x) in v.iter_mut().zip(xs) {
                    *slot = small(x)?;
                }
                Ok(Lex(v))
            }
            _ => err(e.pos, format!("expected an exponent tuple with {} entries", N)),
        }
    }
}

/// Tracks the one quadratic field all scalars of an input must share.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    radicand: Option<(u64, Pos)>,
}

impl Scope {
    fn sqrt(&mut self, e: &Expr, arg: &Expr) -> PResult<Scalar> {
        let n = integer(arg)?;
        if n.is_negative() {
            return Ok(self.sqrt(e, &Expr { kind: Kind::Num(-n), pos: arg.pos })? * Scalar::i());
        }
        let m = n.to_u64().ok_or_else(|| ParseError::new(arg.pos, "radicand out of range"))?;
        if m == 0 {
            return Ok(Scalar::zero());
        }
        let s = Scalar::sqrt_of(m).ok_or_else(|| ParseError::new(arg.pos, "radicand out of range"))?;
        let d = s.radicand();
        if d != 0 {
            match self.radicand {
                Some((d0, p)) if d0 != d => {
                    return err(e.pos, format!("sqrt({}) conflicts with sqrt({}) at {}; one quadratic field per input", d, d0, p))
                }
                Some(_) => {}
                None => self.radicand = Some((d, e.pos)),
            }
        }
        Ok(s)
    }

    fn call(&mut self, e: &Expr, f: &str, args: &[Expr]) -> PResult<Scalar> {
        match (f, args) {
            ("sqrt", [a]) => self.sqrt(e, a),
            ("sqrt", _) => err(e.pos, "sqrt takes one argument"),
            _ => err(e.pos, format!("unknown function `{}`", f)),
        }
    }
}

/// The exponent `e` when the expression is `t^e`, `t` or `1`.
fn power_of_t<E: ExpSyntax>(e: &Expr) -> PResult<E> {
    match &e.kind {
        Kind::Num(n) if n.is_one() => Ok(E::zero_exp()),
        Kind::Ident(s) if s == "t" => E::unit().ok_or_else(|| ParseError::new(e.pos, "`t` needs an explicit exponent here")),
        Kind::Bin('^', b, x) if matches!(&b.kind, Kind::Ident(s) if s == "t") => E::from_expr(x),
        _ => err(e.pos, "expected a power of t"),
    }
}

fn constant_of<E: Exponent>(p: &ZPoly<E>) -> Option<Scalar> {
    match p.coeffs() {
        [] => Some(Scalar::zero()),
        [c] if c.is_exact() && c.terms().iter().all(|(e, _)| *e == E::zero_exp()) => {
            Some(c.terms().first().map(|(_, s)| s.clone()).unwrap_or_else(Scalar::zero))
        }
        _ => None,
    }
}

/// A polynomial in `z` with series coefficients in `t`; `z` is rejected
/// unless `allow_z`.
pub fn zpoly<E: ExpSyntax>(e: &Expr, allow_z: bool, scope: &mut Scope) -> PResult<ZPoly<E>> {
    let cst = |s: Scalar| ZPoly::constant(Series::constant(s));
    match &e.kind {
        Kind::Num(n) => Ok(cst(Scalar::rat(Q::from_integer(n.clone())))),
        Kind::Ident(s) => match s.as_str() {
            "t" => Ok(ZPoly::constant(Series::monomial(Scalar::one(), power_of_t::<E>(e)?))),
            "z" if allow_z => Ok(ZPoly::z()),
            "i" => Ok(cst(Scalar::i())),
            _ => err(e.pos, format!("unknown name `{}`", s)),
        },
        Kind::Neg(a) => Ok(zpoly::<E>(a, allow_z, scope)?.neg()),
        Kind::Call(f, args) if f == "O" => match args.as_slice() {
            [a] => Ok(ZPoly::constant(Series::big_o(power_of_t::<E>(a)?))),
            _ => err(e.pos, "O takes one argument"),
        },
        Kind::Call(f, args) => Ok(cst(scope.call(e, f, args)?)),
        Kind::Bin('^', b, x) => {
            if matches!(&b.kind, Kind::Ident(s) if s == "t") {
                return Ok(ZPoly::constant(Series::monomial(Scalar::one(), E::from_expr(x)?)));
            }
            let base = zpoly::<E>(b, allow_z, scope)?;
            let k = natural(x)?;
            Ok((0..k).fold(cst(Scalar::one()), |acc, _| acc.mul(&base)))
        }
        Kind::Bin(op, a, b) => {
            let x = zpoly::<E>(a, allow_z, scope)?;
            let y = zpoly::<E>(b, allow_z, scope)?;
            match op {
                '+' => Ok(x.add(&y)),
                '-' => Ok(x.sub(&y)),
                '*' => Ok(x.mul(&y)),
                _ => match constant_of(&y) {
                    Some(c) if !c.is_zero() => Ok(x.scale_scalar(&c.inv())),
                    Some(_) => err(e.pos, "division by zero"),
                    None => err(e.pos, "only division by constants is supported"),
                },
            }
        }
        Kind::Tuple(_) => err(e.pos, "a tuple is only allowed as an exponent of t"),
    }
}

/// A series in `t`.
pub fn series<E: ExpSyntax>(e: &Expr, scope: &mut Scope) -> PResult<Series<E>> {
    Ok(zpoly::<E>(e, false, scope)?.coeff(0))
}

/// A polynomial in the named variables.
pub fn mpoly(e: &Expr, names: &[String], scope: &mut Scope) -> PResult<MPoly> {
    let n = names.len();
    let cst = |s: Scalar| MPoly::constant(n, s);
    match &e.kind {
        Kind::Num(k) => Ok(cst(Scalar::rat(Q::from_integer(k.clone())))),
        Kind::Ident(s) if s == "i" => Ok(cst(Scalar::i())),
        Kind::Ident(s) => match names.iter().position(|v| v == s) {
            Some(k) => Ok(MPoly::var(n, k)),
            None => err(e.pos, format!("unknown variable `{}`", s)),
        },
        Kind::Neg(a) => Ok(mpoly(a, names, scope)?.neg()),
        Kind::Call(f, args) => Ok(cst(scope.call(e, f, args)?)),
        Kind::Bin('^', b, x) => {
            let base = mpoly(b, names, scope)?;
            Ok(base.pow(natural(x)? as u32))
        }
        Kind::Bin(op, a, b) => {
            let x = mpoly(a, names, scope)?;
            let y = mpoly(b, names, scope)?;
            match op {
                '+' => Ok(x.add(&y)),
                '-' => Ok(x.sub(&y)),
                '*' => Ok(x.mul(&y)),
                _ if y.total_degree() > 0 => err(e.pos, "only division by constants is supported"),
                _ => match y.terms().next() {
                    Some((_, c)) => Ok(x.scale(&c.inv())),
                    None => err(e.pos, "division by zero"),
                },
            }
        }
        Kind::Tuple(_) => err(e.pos, "unexpected tuple"),
    }
}

/// Checks a list of variable names: distinct identifiers, none reserved.
pub fn check_names(names: &[String], pos: Pos) -> PResult<()> {
    if names.len() < 2 {
        return err(pos, "need at least one base variable and z");
    }
    for (k, v) in names.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok || RESERVED.contains(&v.as_str()) {
            return err(pos, format!("`{}` cannot be a variable name", v));
        }
        if names[..k].contains(v) {
            return err(pos, format!("variable `{}` listed twice", v));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use strongsep::exp::{qe, qi};

    fn at(s: &str) -> Expr {
        parse(s, Pos { line: 1, col: 1 }).unwrap()
    }

    #[test]
    fn series_round_trip() {
        for s in ["2 - t^(1/2) + 3/4*t^3 + O(t^5)", "i*t + (1 + i)*t^2", "-t^(-2) + O(1)", "0", "2*sqrt(2)*t - 1/2*sqrt(2)*i*t^(7/3)"] {
            let v: Series<QExp> = series(&at(s), &mut Scope::default()).unwrap();
            assert_eq!(v.to_string(), s);
        }
        let v: Series<Lex<2>> = series(&at("t^(0,4) + 2*t^(1,0)"), &mut Scope::default()).unwrap();
        assert_eq!(v.to_string(), "t^(0,4) + 2*t^(1,0)");
        assert!(series::<Lex<2>>(&at("t"), &mut Scope::default()).is_err());
    }

    #[test]
    fn zpoly_forms() {
        let g: ZPoly<QExp> = zpoly(&at("z^2 - (t + t^2)*z + t^3"), true, &mut Scope::default()).unwrap();
        assert_eq!(g.coeff(1), Series::exact([(qi(1), Scalar::int(-1)), (qi(2), Scalar::int(-1))]));
        let h: ZPoly<QExp> = zpoly(&at("(z - t^(1/2))^2/2"), true, &mut Scope::default()).unwrap();
        assert_eq!(h.coeff(0), Series::monomial(Scalar::frac(1, 2), qe(1, 1)));
        assert!(zpoly::<QExp>(&at("z"), false, &mut Scope::default()).is_err());
        assert!(zpoly::<QExp>(&at("1/z"), true, &mut Scope::default()).is_err());
    }

    #[test]
    fn one_quadratic_field() {
        let mut sc = Scope::default();
        assert!(series::<QExp>(&at("sqrt(2)*t + sqrt(8)*t^2 + sqrt(-2)"), &mut sc).is_ok());
        assert_eq!(series::<QExp>(&at("sqrt(4)"), &mut sc).unwrap(), Series::constant(Scalar::int(2)));
        let e = series::<QExp>(&at("t + sqrt(3)"), &mut sc).unwrap_err();
        assert_eq!(e.pos.col, 5);
    }

    #[test]
    fn multivariate() {
        let names: Vec<String> = ["x", "z"].iter().map(|s| s.to_string()).collect();
        let f = mpoly(&at("(z - x)*(z + x)"), &names, &mut Scope::default()).unwrap();
        assert_eq!(f.display_with(&names), "z^2 - x^2");
        assert!(mpoly(&at("z + y"), &names, &mut Scope::default()).is_err());
        assert!(check_names(&["t".into(), "z".into()], Pos { line: 1, col: 1 }).is_err());
    }
}
