//! Expression grammar for series, Riordan pairs and sequences.
//!
//! Series: rational literals, `x`, `+ - * / ^`, implicit products, and the
//! functions `c(..)`, `t(..)`, `sqrt1(..)`, `rev(..)` (bare `c` and `t`
//! mean `c(x)` and `t(x)`). A pair is `(g, f)` or a family name.

use num_bigint::BigInt;
use num_traits::Signed;
use riordan::families::{self, FamilySpec};
use riordan::transforms::{self, SumMode};
use riordan::{Poly, Rational, RiordanPair, Series};

use crate::oeis::OeisSource;

/// Extra working precision; divisions by series with positive valuation
/// consume part of it.
const PAD: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown name {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Math(#[from] riordan::Error),
    #[error(transparent)]
    Oeis(#[from] crate::oeis::OeisError),
}

pub type Result<T> = std::result::Result<T, ExprError>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ExprError::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Num(BigInt),
    X,
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
    Call(String, Box<Ast>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0, end: src.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(ExprError::Syntax { pos: self.offset(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('+' | '-'))) => *c,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op(c @ ('*' | '/'))) => {
                    let c = *c;
                    self.pos += 1;
                    c
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => '*',
                _ => return Ok(lhs),
            };
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('-') {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Num(n)) => {
                let n = i64::try_from(n).or_else(|_| self.err("exponent too large"))?;
                self.pos += 1;
                n
            }
            _ => return self.err("expected an integer exponent"),
        };
        if paren {
            self.expect(')')?;
        }
        Ok(Ast::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(Ast::X),
                    "c" | "t" | "sqrt1" | "rev" => {
                        if self.eat('(') {
                            let arg = self.expr()?;
                            self.expect(')')?;
                            Ok(Ast::Call(name, Box::new(arg)))
                        } else if name == "c" || name == "t" {
                            Ok(Ast::Call(name, Box::new(Ast::X)))
                        } else {
                            self.err(format!("{name} needs an argument"))
                        }
                    }
                    _ => Err(ExprError::Unknown(name)),
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

fn eval(ast: &Ast, order: usize) -> Result<Series<Rational>> {
    Ok(match ast {
        Ast::Num(n) => Series::constant(Rational::from_integer(n.clone()), order),
        Ast::X => Series::x(order),
        Ast::Neg(a) => -eval(a, order)?,
        Ast::Bin(op, a, b) => {
            let (a, b) = (eval(a, order)?, eval(b, order)?);
            match op {
                '+' => &a + &b,
                '-' => &a - &b,
                '*' => &a * &b,
                _ => divide(&a, &b)?,
            }
        }
        Ast::Pow(a, e) => eval(a, order)?.pow(*e)?,
        Ast::Call(name, a) => {
            let arg = eval(a, order)?;
            let n = arg.order();
            match name.as_str() {
                "c" => families::catalan::<Rational>(n)?.compose(&arg)?,
                "t" => families::ternary::<Rational>(n)?.compose(&arg)?,
                "sqrt1" => arg.sqrt1()?,
                _ => arg.revert()?,
            }
        }
    })
}

/// `a / b`, cancelling a common power of `x` first.
fn divide(a: &Series<Rational>, b: &Series<Rational>) -> Result<Series<Rational>> {
    let v = b.valuation().ok_or(riordan::Error::DivisionByZero)?;
    if v == 0 {
        return Ok(a.try_div(b)?);
    }
    Ok(a.shift_down(v)?.try_div(&b.shift_down(v)?)?)
}

/// Evaluates a series expression to the given order.
pub fn parse_series(src: &str, order: usize) -> Result<Series<Rational>> {
    let mut p = Parser::new(src)?;
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    let s = eval(&ast, order + PAD)?;
    if s.order() < order {
        return Err(riordan::Error::TruncationExceeded { index: order, order: s.order() }.into());
    }
    Ok(s.truncate(order))
}

/// Splits `(g, f)` at its top-level comma.
fn split_pair(src: &str) -> Option<(&str, &str)> {
    let s = src.trim();
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                if split.is_some() {
                    return None;
                }
                split = Some(i);
            }
            _ => {}
        }
    }
    let i = split?;
    Some((&inner[..i], &inner[i + 1..]))
}

/// A pair expression `(g, f)`, a family name, or `inv P`.
pub fn parse_pair(src: &str, order: usize) -> Result<RiordanPair<Rational>> {
    if let Some(rest) = src.trim().strip_prefix("inv ") {
        return Ok(parse_pair(rest, order)?.inverse()?);
    }
    if let Some((g, f)) = split_pair(src) {
        return Ok(RiordanPair::new(parse_series(g, order)?, parse_series(f, order)?)?);
    }
    let spec: FamilySpec = src.trim().parse().map_err(|_| ExprError::Unknown(src.trim().to_string()))?;
    Ok(spec.pair(order)?)
}

/// A finite sequence of exact values.
#[derive(Clone, Debug, PartialEq)]
pub enum SeqValue {
    Rational(Vec<Rational>),
    Poly(Vec<Poly>),
}

impl SeqValue {
    pub fn len(&self) -> usize {
        match self {
            SeqValue::Rational(v) => v.len(),
            SeqValue::Poly(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn truncate(&mut self, n: usize) {
        match self {
            SeqValue::Rational(v) => v.truncate(n),
            SeqValue::Poly(v) => v.truncate(n),
        }
    }

    pub fn strings(&self) -> Vec<String> {
        match self {
            SeqValue::Rational(v) => v.iter().map(ToString::to_string).collect(),
            SeqValue::Poly(v) => v.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn rationals(&self) -> Result<Vec<Rational>> {
        match self {
            SeqValue::Rational(v) => Ok(v.clone()),
            SeqValue::Poly(v) => {
                v.iter().map(|p| p.as_constant().ok_or(ExprError::Math(riordan::Error::ParameterDependent))).collect()
            }
        }
    }

    fn map_rational(self, f: impl FnOnce(Vec<Rational>) -> Result<Vec<Rational>>) -> Result<SeqValue> {
        Ok(SeqValue::Rational(f(self.rationals()?)?))
    }
}

fn split_word(src: &str) -> (&str, &str) {
    let s = src.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse::<Rational>().map_err(|_| ExprError::Syntax { pos: 0, msg: format!("bad number {s:?}") })
}

fn pair_matrix(src: &str, n: usize) -> Result<riordan::LowerTriMatrix<Rational>> {
    Ok(parse_pair(src, n.max(1))?.to_matrix(n)?)
}

/// Evaluates a sequence expression, producing at least `len` terms.
///
/// Forms: `series E`, `gcoeffs P`, `fcoeffs P`, `rowsums P`,
/// `absrowsums P`, `diagsums P`, `column K P`, `triangle P`,
/// `abstriangle P`, `invert S`, `binomial S`, `hankel S`, `shift S`,
/// `alt S`, `scale Q S`, `prepend Q S`, `list Q,Q,...`, `oeis ANNNNNN`,
/// `moments FAMILY [y=Q]`.
pub fn eval_seq(src: &str, len: usize, oeis: &OeisSource) -> Result<SeqValue> {
    let (head, rest) = split_word(src);
    let out = match head {
        "series" => SeqValue::Rational(parse_series(rest, len.max(1))?.into_coeffs()),
        "gcoeffs" => SeqValue::Rational(parse_pair(rest, len.max(1))?.g().coeffs().to_vec()),
        "fcoeffs" => SeqValue::Rational(parse_pair(rest, len.max(1))?.f().coeffs().to_vec()),
        "rowsums" => SeqValue::Rational(transforms::matrix_sums(&pair_matrix(rest, len)?, SumMode::Row)?),
        "absrowsums" => SeqValue::Rational(transforms::matrix_sums(&pair_matrix(rest, len)?, SumMode::AbsRow)?),
        "diagsums" => SeqValue::Rational(transforms::matrix_sums(&pair_matrix(rest, len)?, SumMode::Diagonal)?),
        "column" => {
            let (k, p) = split_word(rest);
            let k: usize = k.parse().map_err(|_| ExprError::Syntax { pos: 0, msg: format!("bad column {k:?}") })?;
            SeqValue::Rational(pair_matrix(p, len + k)?.column(k))
        }
        "triangle" | "abstriangle" => {
            let mut rows = 1;
            while rows * (rows + 1) / 2 < len {
                rows += 1;
            }
            let m = pair_matrix(rest, rows)?;
            let flat = m.rows().iter().flatten().map(|c| if head == "abstriangle" { c.abs() } else { c.clone() });
            SeqValue::Rational(flat.collect())
        }
        "invert" => eval_seq(rest, len, oeis)?.map_rational(|v| Ok(transforms::invert_transform(&v)?))?,
        "binomial" => match eval_seq(rest, len, oeis)? {
            SeqValue::Rational(v) => SeqValue::Rational(transforms::binomial_transform(&v)),
            SeqValue::Poly(v) => SeqValue::Poly(transforms::binomial_transform(&v)),
        },
        "hankel" => {
            let n = len.max(1) - 1;
            match eval_seq(rest, 2 * n + 1, oeis)? {
                SeqValue::Rational(v) => SeqValue::Rational(transforms::hankel(&v, n)?),
                SeqValue::Poly(v) => SeqValue::Poly(transforms::hankel(&v, n)?),
            }
        }
        "shift" => {
            let mut v = eval_seq(rest, len + 1, oeis)?;
            match &mut v {
                SeqValue::Rational(v) if !v.is_empty() => {
                    v.remove(0);
                }
                SeqValue::Poly(v) if !v.is_empty() => {
                    v.remove(0);
                }
                _ => {}
            }
            v
        }
        "alt" => eval_seq(rest, len, oeis)?.map_rational(|v| {
            Ok(v.into_iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c }).collect())
        })?,
        "scale" | "prepend" => {
            let (q, s) = split_word(rest);
            let q = parse_rational(q)?;
            if head == "scale" {
                eval_seq(s, len, oeis)?.map_rational(|v| Ok(v.into_iter().map(|c| c * &q).collect()))?
            } else {
                eval_seq(s, len.max(1) - 1, oeis)?.map_rational(|v| Ok(std::iter::once(q).chain(v).collect()))?
            }
        }
        "list" => SeqValue::Rational(rest.split(',').map(|s| parse_rational(s.trim())).collect::<Result<_>>()?),
        "oeis" => {
            let b = oeis.load(rest.trim())?;
            SeqValue::Rational(b.values().map(|v| Rational::from_integer(v.clone())).collect())
        }
        "moments" => {
            let (fam, y) = match rest.rsplit_once(" y=") {
                Some((f, y)) => (f, Some(parse_rational(y.trim())?)),
                None => (rest, None),
            };
            let spec: FamilySpec = fam.trim().parse()?;
            let pair = spec.parameterized(len.max(1))?.ok_or_else(|| ExprError::Unknown(fam.trim().to_string()))?;
            let mu = pair.moment_polys(len)?;
            match y {
                Some(y) => SeqValue::Rational(mu.iter().map(|p| p.eval(&y)).collect()),
                None => SeqValue::Poly(mu),
            }
        }
        _ => return Err(ExprError::Unknown(head.to_string())),
    };
    if out.len() < len {
        return Err(riordan::Error::NotEnoughTerms { needed: len, got: out.len() }.into());
    }
    let mut out = out;
    out.truncate(len);
    Ok(out)
}

/// True when every entry is an integer; used for terse integer output.
pub fn all_integers(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use riordan::rat;

    fn ints(s: &Series<Rational>) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn arithmetic_and_functions() {
        assert_eq!(ints(&parse_series("1/(1-x)", 5).unwrap()), [1; 6]);
        assert_eq!(ints(&parse_series("c", 5).unwrap()), [1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&parse_series("c(x)^2", 4).unwrap()), [1, 2, 5, 14, 42]);
        assert_eq!(ints(&parse_series("-x*c^3", 4).unwrap()), [0, -1, -3, -9, -28]);
        assert_eq!(ints(&parse_series("2x + 3x^2", 3).unwrap()), [0, 2, 3, 0]);
        assert_eq!(ints(&parse_series("(1-sqrt1(1-4x))/(2x)", 5).unwrap()), [1, 1, 2, 5, 14, 42]);
        assert_eq!(ints(&parse_series("rev(x/(1+x)^2)", 4).unwrap()), [0, 1, 2, 5, 14]);
        assert_eq!(ints(&parse_series("t", 4).unwrap()), [1, 1, 3, 12, 55]);
        assert_eq!(parse_series("1/2*x", 2).unwrap().coeffs()[1], riordan::ratio(1, 2));
        assert_eq!(ints(&parse_series("(1+x)^(-1)", 3).unwrap()), [1, -1, 1, -1]);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_series("1 +", 3), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_series("q(x)", 3), Err(ExprError::Unknown(_))));
        assert!(matches!(parse_series("(1", 3), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse_series("1 $ 2", 3), Err(ExprError::Syntax { .. })));
    }

    #[test]
    fn pairs() {
        let p = parse_pair("(1, x)", 4).unwrap();
        assert!(p.to_matrix(3).unwrap().is_identity());
        let q = parse_pair("(c, -x*c^3)", 10).unwrap();
        assert!(q.involution_check(8).unwrap().holds);
        assert_eq!(parse_pair("general:3,2", 10).unwrap().entry(3, 1).unwrap(), rat(-63));
        assert!(parse_pair("(1, 1 + x)", 4).is_err());
        assert!(parse_pair("nonsense", 4).is_err());
        let pascal = parse_pair("inv (1/(1+x), x/(1+x))", 4).unwrap();
        assert_eq!(pascal.entry(4, 2).unwrap(), rat(6));
    }

    #[test]
    fn sequences() {
        let src = OeisSource::fixtures_only(crate::oeis::default_fixture_dir());
        let v = eval_seq("diagsums (c, x*c^3)", 10, &src).unwrap().rationals().unwrap();
        assert_eq!(v, [1, 1, 3, 9, 29, 97, 333, 1165, 4135, 14845].map(rat));
        let h = eval_seq("hankel series c", 6, &src).unwrap().rationals().unwrap();
        assert_eq!(h, vec![rat(1); 6]);
        let m = eval_seq("moments k-theorem:3,3 y=1", 6, &src).unwrap().rationals().unwrap();
        assert_eq!(m, [1, 2, 5, 15, 53, 215].map(rat));
        let p = eval_seq("moments main-theorem:2", 3, &src).unwrap();
        assert_eq!(p.strings(), ["1", "2 - u", "5 - 5*u + u^2"]);
        let a = eval_seq("shift alt fcoeffs corollary:2,1", 5, &src).unwrap().rationals().unwrap();
        assert_eq!(a, [1, 4, 16, 68, 304].map(rat));
        let t = eval_seq("abstriangle (c^2, -x*c^3)", 6, &src).unwrap().rationals().unwrap();
        assert_eq!(t, [1, 2, 1, 5, 5, 1].map(rat));
        let l = eval_seq("prepend 1 list 2,3", 3, &src).unwrap().rationals().unwrap();
        assert_eq!(l, [1, 2, 3].map(rat));
        assert!(eval_seq("list 1,2", 3, &src).is_err());
        assert!(eval_seq("frobnicate x", 3, &src).is_err());
    }
}
