//! Tokens and a Pratt parser for polynomial and series expressions.

use std::fmt;

use num_bigint::BigInt;

/// A 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError { pos, msg: msg.into() }
    }
}

pub type PResult<T> = Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(src: &str, start: Pos) -> PResult<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let pos = Pos { line: start.line, col: start.col + k };
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let s = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            if k < chars.len() && chars[k] == '.' {
                let p = Pos { line: start.line, col: start.col + k };
                return Err(ParseError::new(p, "decimal numbers are not accepted; write p/q"));
            }
            let digits: String = chars[s..k].iter().collect();
            out.push((Tok::Num(digits.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            let s = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[s..k].iter().collect()), pos));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Sym(c), pos));
            k += 1;
        } else {
            return Err(ParseError::new(pos, format!("unexpected character `{}`", c)));
        }
    }
    out.push((Tok::End, Pos { line: start.line, col: start.col + chars.len() }));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Num(BigInt),
    Ident(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
    Tuple(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: Kind,
    pub pos: Pos,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.k]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        match self.next() {
            (Tok::Sym(d), _) if d == c => Ok(()),
            (t, p) => Err(ParseError::new(p, format!("expected `{}`, found {}", c, describe(&t)))),
        }
    }

    fn expr(&mut self, min_bp: u8) -> PResult<Expr> {
        let (tok, pos) = self.next();
        let mut lhs = match tok {
            Tok::Num(n) => Expr { kind: Kind::Num(n), pos },
            Tok::Ident(name) => {
                if self.peek().0 == Tok::Sym('(') {
                    self.next();
                    let args = self.list()?;
                    Expr { kind: Kind::Call(name, args), pos }
                } else {
                    Expr { kind: Kind::Ident(name), pos }
                }
            }
            Tok::Sym('-') => {
                let e = self.expr(5)?;
                Expr { kind: Kind::Neg(Box::new(e)), pos }
            }
            Tok::Sym('+') => self.expr(5)?,
            Tok::Sym('(') => {
                let mut items = self.list()?;
                if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Expr { kind: Kind::Tuple(items), pos }
                }
            }
            t => return Err(ParseError::new(pos, format!("expected an operand, found {}", describe(&t)))),
        };
        loop {
            let (op, l_bp, r_bp) = match &self.peek().0 {
                Tok::Sym(c @ ('+' | '-')) => (*c, 1, 2),
                Tok::Sym(c @ ('*' | '/')) => (*c, 3, 4),
                Tok::Sym('^') => ('^', 8, 7),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            let pos = self.next().1;
            let rhs = self.expr(r_bp)?;
            lhs = Expr { kind: Kind::Bin(op, Box::new(lhs), Box::new(rhs)), pos };
        }
        Ok(lhs)
    }

    /// Comma-separated expressions up to the closing parenthesis.
    fn list(&mut self) -> PResult<Vec<Expr>> {
        let mut items = vec![self.expr(0)?];
        while self.peek().0 == Tok::Sym(',') {
            self.next();
            items.push(self.expr(0)?);
        }
        self.expect(')')?;
        Ok(items)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{}`", n),
        Tok::Ident(s) => format!("`{}`", s),
        Tok::Sym(c) => format!("`{}`", c),
        Tok::End => "end of input".into(),
    }
}

/// Parses a whole expression; `start` is the position of its first character.
pub fn parse(src: &str, start: Pos) -> PResult<Expr> {
    let mut p = Parser { toks: lex(src, start)?, k: 0 };
    let e = p.expr(0)?;
    match p.next() {
        (Tok::End, _) => Ok(e),
        (t, pos) => Err(ParseError::new(pos, format!("unexpected {}", describe(&t)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s, Pos { line: 1, col: 1 }).unwrap()
    }

    fn show(e: &Expr) -> String {
        match &e.kind {
            Kind::Num(n) => n.to_string(),
            Kind::Ident(s) => s.clone(),
            Kind::Neg(a) => format!("(-{})", show(a)),
            Kind::Bin(op, a, b) => format!("({} {} {})", show(a), op, show(b)),
            Kind::Call(f, args) => format!("{}[{}]", f, args.iter().map(show).collect::<Vec<_>>().join(", ")),
            Kind::Tuple(xs) => format!("<{}>", xs.iter().map(show).collect::<Vec<_>>().join(", ")),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(show(&p("-t^2")), "(-(t ^ 2))");
        assert_eq!(show(&p("3/4*t^3")), "((3 / 4) * (t ^ 3))");
        assert_eq!(show(&p("2^3^2")), "(2 ^ (3 ^ 2))");
        assert_eq!(show(&p("a - b - c")), "((a - b) - c)");
        assert_eq!(show(&p("t^(1,8) + O(t^(-1/2))")), "((t ^ <1, 8>) + O[(t ^ ((-1) / 2))])");
    }

    #[test]
    fn error_positions() {
        let e = parse("z^2 + * t", Pos { line: 4, col: 5 }).unwrap_err();
        assert_eq!(e.pos, Pos { line: 4, col: 11 });
        let e = parse("1.5*t", Pos { line: 1, col: 1 }).unwrap_err();
        assert_eq!(e.pos.col, 2);
        assert!(parse("(t", Pos { line: 1, col: 1 }).is_err());
        assert!(parse("t )", Pos { line: 1, col: 1 }).is_err());
    }
}
