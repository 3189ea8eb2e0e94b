//! Element expressions: a recursive-descent parser with source spans and an
//! evaluator into the algebra named by a [`Context`].
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' '-'? INT)?
//! atom   := 't'INT | 'x'INT | 'p'INT | 'w[' INT ',' INT ']' | 's[' INT (',' INT)* ']'
//!         | 'q' | 's' | INT | '(' expr ')'
//! ```
//!
//! Negative exponents are accepted only on scalars; `/` divides by a scalar.

use std::fmt;

use ehall::hall::LatticePoint;
use ehall::symfunc::mul_powersum;
use ehall::{AffineElement, Coeff, HallElement, HeckeElement, Partition, Scalar, SymElement};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    T(usize),
    X(usize),
    P(usize),
    W(i64, i64),
    Schur(Vec<usize>),
    Q,
    S,
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub node: Node,
    pub span: Span,
}

/// The algebra an expression is evaluated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Hecke(usize),
    Affine(usize),
    Hall,
    Sym(usize),
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Hecke(n) => write!(f, "hecke{{{n}}}"),
            Context::Affine(n) => write!(f, "affine{{{n}}}"),
            Context::Hall => write!(f, "hall"),
            Context::Sym(n) => write!(f, "sym{{{n}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("negative exponent {0} on a non-invertible factor")]
    NegativeExponent(i64),
    #[error("{0} is not available in {1}")]
    NotInContext(String, Context),
    #[error("{0}")]
    Domain(String),
}

/// An error with the span it refers to and its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ExprError {
    pub kind: ErrorKind,
    pub span: Span,
    pub line: usize,
    pub column: usize,
}

impl ExprError {
    fn new(src: &str, kind: ErrorKind, span: Span) -> Self {
        let before = &src[..span.start.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Self { kind, span, line, column }
    }

    /// The offending line with a caret under the span.
    pub fn render(&self, src: &str) -> String {
        let text = src.lines().nth(self.line - 1).unwrap_or("");
        let width = (self.span.end.saturating_sub(self.span.start)).max(1);
        format!("{self}\n  {text}\n  {}{}", " ".repeat(self.column - 1), "^".repeat(width))
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, ExprError>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>, start: usize, end: usize) -> PResult<T> {
        Err(ExprError::new(self.src, ErrorKind::Syntax(msg.into()), Span { start, end: end.max(start + 1) }))
    }

    fn expect(&mut self, c: u8) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe_here();
            self.err(format!("expected '{}', found {found}", c as char), self.pos, self.pos + 1)
        }
    }

    fn describe_here(&self) -> String {
        match self.src[self.pos..].chars().next() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn digits(&mut self) -> Option<(String, usize)> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (self.src[start..self.pos].to_string(), start))
    }

    fn index(&mut self, what: &str) -> PResult<usize> {
        let at = self.pos;
        match self.digits() {
            Some((d, s)) => d.parse().or_else(|_| self.err("index too large", s, self.pos)),
            None => self.err(format!("expected an index after '{what}'"), at, at + 1),
        }
    }

    fn signed_int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.bytes.get(self.pos) == Some(&b'-');
        if neg {
            self.pos += 1;
        }
        match self.digits() {
            Some((d, _)) => {
                let v: i64 = d.parse().or_else(|_| self.err("integer too large", start, self.pos))?;
                Ok(if neg { -v } else { v })
            }
            None => self.err("expected an integer", start, start + 1),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let mut lhs = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                let t = self.term()?;
                let span = Span { start, end: t.span.end };
                Expr { node: Node::Neg(Box::new(t)), span }
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            let node = if op == b'+' {
                Node::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { node, span };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            let span = Span { start: lhs.span.start, end: rhs.span.end };
            let node = if op == b'*' {
                Node::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Node::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr { node, span };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.signed_int()?;
            let span = Span { start: base.span.start, end: self.pos };
            return Ok(Expr { node: Node::Pow(Box::new(base), e), span });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        let Some(c) = self.peek() else {
            return self.err("unexpected end of input", self.pos, self.pos + 1);
        };
        let start = self.pos;
        let node = match c {
            b't' | b'x' | b'p' => {
                self.pos += 1;
                let i = self.index(&(c as char).to_string())?;
                match c {
                    b't' => Node::T(i),
                    b'x' => Node::X(i),
                    _ => Node::P(i),
                }
            }
            b'w' => {
                self.pos += 1;
                self.expect(b'[')?;
                let a = self.signed_int()?;
                self.expect(b',')?;
                let b = self.signed_int()?;
                self.expect(b']')?;
                Node::W(a, b)
            }
            b's' => {
                self.pos += 1;
                if self.bytes.get(self.pos) == Some(&b'[') {
                    self.pos += 1;
                    let mut parts = Vec::new();
                    if self.peek() != Some(b']') {
                        loop {
                            self.skip_ws();
                            parts.push(self.index("[")?);
                            if self.peek() == Some(b',') {
                                self.pos += 1;
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(b']')?;
                    Node::Schur(parts)
                } else {
                    Node::S
                }
            }
            b'q' => {
                self.pos += 1;
                Node::Q
            }
            b'0'..=b'9' => {
                let (d, _) = self.digits().expect("peeked a digit");
                Node::Int(d.parse().expect("decimal digits"))
            }
            b'(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                return Ok(Expr { node: inner.node, span: Span { start, end: self.pos } });
            }
            _ => {
                let found = self.describe_here();
                let len = self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
                return self.err(format!("unexpected {found}"), start, start + len);
            }
        };
        Ok(Expr { node, span: Span { start, end: self.pos } })
    }
}

pub fn parse(src: &str) -> PResult<Expr> {
    let mut p = Parser { src, bytes: src.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        let found = p.describe_here();
        return p.err(format!("unexpected {found} after expression"), p.pos, p.pos + 1);
    }
    Ok(e)
}

/// A value: a bare scalar until it meets an algebra element.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Hecke(HeckeElement),
    Affine(AffineElement),
    Hall(HallElement),
    Sym(SymElement),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Hecke(e) => write!(f, "{e}"),
            Value::Affine(e) => write!(f, "{e}"),
            Value::Hall(e) => write!(f, "{e}"),
            Value::Sym(e) => write!(f, "{e}"),
        }
    }
}

impl Value {
    fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Value::Scalar(c) => Some(c),
            _ => None,
        }
    }
}

struct Evaluator<'a> {
    src: &'a str,
    ctx: Context,
}

impl Evaluator<'_> {
    fn fail<T>(&self, kind: ErrorKind, span: Span) -> PResult<T> {
        Err(ExprError::new(self.src, kind, span))
    }

    fn lift(&self, c: Scalar) -> Value {
        match self.ctx {
            Context::Hecke(n) => Value::Hecke(HeckeElement::scalar(n, c)),
            Context::Affine(n) => Value::Affine(AffineElement::scalar(n, c)),
            Context::Hall => Value::Hall(HallElement::scalar(c)),
            Context::Sym(n) => Value::Sym(SymElement::one(n).scale(&c)),
        }
    }

    /// Promotes a pair so both are scalars or both are elements.
    fn unify(&self, a: Value, b: Value) -> (Value, Value) {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => (Value::Scalar(x), Value::Scalar(y)),
            (Value::Scalar(x), y) => (self.lift(x), y),
            (x, Value::Scalar(y)) => (x, self.lift(y)),
            (x, y) => (x, y),
        }
    }

    fn scale(&self, v: Value, c: &Scalar) -> Value {
        match v {
            Value::Scalar(x) => Value::Scalar(x * c),
            Value::Hecke(e) => Value::Hecke(e.scale(c)),
            Value::Affine(e) => Value::Affine(e.scale(c)),
            Value::Hall(e) => Value::Hall(e.scale(c)),
            Value::Sym(e) => Value::Sym(e.scale(c)),
        }
    }

    fn add(&self, a: Value, b: Value) -> Value {
        match self.unify(a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x + y),
            (Value::Hecke(x), Value::Hecke(y)) => Value::Hecke(x + y),
            (Value::Affine(x), Value::Affine(y)) => Value::Affine(x + y),
            (Value::Hall(x), Value::Hall(y)) => Value::Hall(x + y),
            (Value::Sym(x), Value::Sym(y)) => Value::Sym(x + y),
            _ => unreachable!("one context per evaluation"),
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match self.unify(a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
            (Value::Hecke(x), Value::Hecke(y)) => Value::Hecke(&x * &y),
            (Value::Affine(x), Value::Affine(y)) => Value::Affine(&x * &y),
            (Value::Hall(x), Value::Hall(y)) => Value::Hall(x * y),
            (Value::Sym(x), Value::Sym(y)) => Value::Sym(x.checked_mul(&y).expect("one truncation")),
            _ => unreachable!("one context per evaluation"),
        }
    }

    fn index_check(&self, i: usize, bound: usize, rank: usize, span: Span) -> PResult<()> {
        if i == 0 || i > bound {
            return self.fail(ErrorKind::IndexOutOfRange { index: i, rank }, span);
        }
        Ok(())
    }

    fn eval(&self, e: &Expr) -> PResult<Value> {
        let span = e.span;
        let unavailable = |what: &str| self.fail(ErrorKind::NotInContext(what.into(), self.ctx), span);
        Ok(match &e.node {
            Node::Int(n) => Value::Scalar(Scalar::from_bigint(n)),
            Node::Q => Value::Scalar(Scalar::q()),
            Node::S => Value::Scalar(Scalar::s_pow(1)),
            Node::T(i) => match self.ctx {
                Context::Hecke(n) => {
                    self.index_check(*i, n.saturating_sub(1), n, span)?;
                    Value::Hecke(HeckeElement::gen(n, *i).expect("checked index"))
                }
                Context::Affine(n) => {
                    self.index_check(*i, n.saturating_sub(1), n, span)?;
                    Value::Affine(AffineElement::t(n, *i).expect("checked index"))
                }
                _ => return unavailable(&format!("t{i}")),
            },
            Node::X(i) => match self.ctx {
                Context::Affine(n) => {
                    self.index_check(*i, n, n, span)?;
                    Value::Affine(AffineElement::x(n, *i).expect("checked index"))
                }
                _ => return unavailable(&format!("x{i}")),
            },
            Node::W(a, b) => match self.ctx {
                Context::Hall => match LatticePoint::new(*a, *b) {
                    Ok(p) => Value::Hall(HallElement::gen_point(p)),
                    Err(err) => return self.fail(ErrorKind::Domain(err.to_string()), span),
                },
                _ => return unavailable(&format!("w[{a},{b}]")),
            },
            Node::P(k) => match self.ctx {
                Context::Sym(n) => {
                    if *k == 0 {
                        return self.fail(ErrorKind::Domain("power sums start at p1".into()), span);
                    }
                    Value::Sym(mul_powersum(*k, &SymElement::one(n)))
                }
                _ => return unavailable(&format!("p{k}")),
            },
            Node::Schur(parts) => match self.ctx {
                Context::Sym(n) => match Partition::new(parts.clone()) {
                    Ok(l) => Value::Sym(SymElement::schur(n, l)),
                    Err(err) => return self.fail(ErrorKind::Domain(err.to_string()), span),
                },
                _ => return unavailable("Schur functions"),
            },
            Node::Neg(x) => self.scale(self.eval(x)?, &-Scalar::one()),
            Node::Add(x, y) => self.add(self.eval(x)?, self.eval(y)?),
            Node::Sub(x, y) => {
                let rhs = self.scale(self.eval(y)?, &-Scalar::one());
                self.add(self.eval(x)?, rhs)
            }
            Node::Mul(x, y) => self.mul(self.eval(x)?, self.eval(y)?),
            Node::Div(x, y) => {
                let d = self.eval(y)?;
                let Some(c) = d.as_scalar() else {
                    return self.fail(ErrorKind::Domain("can only divide by a scalar".into()), y.span);
                };
                let Some(inv) = c.inv() else {
                    return self.fail(ErrorKind::Domain("division by zero".into()), y.span);
                };
                self.scale(self.eval(x)?, &inv)
            }
            Node::Pow(x, k) => {
                let base = self.eval(x)?;
                if *k < 0 {
                    let Some(c) = base.as_scalar() else {
                        return self.fail(ErrorKind::NegativeExponent(*k), span);
                    };
                    let Some(inv) = c.inv() else {
                        return self.fail(ErrorKind::Domain("zero to a negative power".into()), span);
                    };
                    return Ok(Value::Scalar(inv.pow(k.unsigned_abs() as i32)));
                }
                let mut acc = match &base {
                    Value::Scalar(_) => Value::Scalar(Scalar::one()),
                    _ => self.lift(Scalar::one()),
                };
                for _ in 0..*k {
                    acc = self.mul(acc, base.clone());
                }
                acc
            }
        })
    }
}

/// Parses and evaluates `src` in `ctx`. Scalars are lifted into the algebra.
pub fn evaluate(src: &str, ctx: Context) -> PResult<Value> {
    let expr = parse(src)?;
    let ev = Evaluator { src, ctx };
    let v = ev.eval(&expr)?;
    Ok(match v {
        Value::Scalar(c) => ev.lift(c),
        other => other,
    })
}

/// Whether the value is zero.
pub fn is_zero(v: &Value) -> bool {
    match v {
        Value::Scalar(c) => c.is_zero(),
        Value::Hecke(e) => e.is_zero(),
        Value::Affine(e) => e.is_zero(),
        Value::Hall(e) => e.is_zero(),
        Value::Sym(e) => e.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, ctx: Context) -> Value {
        evaluate(src, ctx).unwrap_or_else(|e| panic!("{}", e.render(src)))
    }

    #[test]
    fn cross_relation_in_rank_two() {
        let v = eval("t1*x2*t1", Context::Affine(2));
        assert_eq!(v.to_string(), "s^2*x1");
        assert_eq!(v, eval("q*x1", Context::Affine(2)));
    }

    #[test]
    fn grammar_exercise() {
        let e = parse("x1^2 + (q-1)*t1").unwrap();
        assert!(matches!(e.node, Node::Add(..)));
        assert_eq!(e.span, Span { start: 0, end: 15 });
        assert_eq!(eval("x1^2 + (q-1)*t1", Context::Affine(2)).to_string(), "(s^2 - 1)*t1 + x1^2");
    }

    #[test]
    fn negative_exponent_on_generator() {
        let err = evaluate("x1^-1", Context::Affine(2)).unwrap_err();
        assert_eq!(err.kind, ErrorKind::NegativeExponent(-1));
        assert_eq!((err.line, err.column), (1, 1));
        assert_eq!(eval("s^-2", Context::Affine(1)), eval("1/q", Context::Affine(1)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("t1 +\n  * t2").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = evaluate("t1*t3", Context::Hecke(3)).unwrap_err();
        assert_eq!(err.kind, ErrorKind::IndexOutOfRange { index: 3, rank: 3 });
        assert_eq!(err.span, Span { start: 3, end: 5 });
        assert!(matches!(evaluate("x1", Context::Hecke(2)).unwrap_err().kind, ErrorKind::NotInContext(..)));
        assert!(matches!(evaluate("w[0,0]", Context::Hall).unwrap_err().kind, ErrorKind::Domain(..)));
        assert!(matches!(evaluate("t1/t1", Context::Hecke(2)).unwrap_err().kind, ErrorKind::Domain(..)));
        assert!(parse("(t1").is_err());
        assert!(parse("t").is_err());
        assert!(parse("t1 t2").is_err());
    }

    #[test]
    fn contexts() {
        assert_eq!(eval("w[1,0]*w[-1,0]", Context::Hall).to_string(), "-1 + w[-1,0]*w[1,0]");
        assert_eq!(eval("p2", Context::Sym(4)).to_string(), "-s[1,1] + s[2]");
        assert_eq!(eval("p1^2 - s[2] - s[1,1]", Context::Sym(4)).to_string(), "0");
        assert_eq!(eval("t1^2", Context::Hecke(2)), eval("(q-1)*t1 + q", Context::Hecke(2)));
        assert_eq!(eval("3/6", Context::Hall).to_string(), "(1)/(2)");
    }

    #[test]
    fn print_parse_round_trip() {
        let cases = [
            ("(t1 + s)^3 - t2*t1/(q+1)", Context::Hecke(3)),
            ("x1^2*t1*x2 - 3/4*t1 + s^-1*x2", Context::Affine(2)),
            ("w[1,0]*w[0,1]*w[-1,2] - w[2,1]/(s - s^-1)", Context::Hall),
            ("p2*s[2,1] - 5*p1^3/(q^2+1) + 7", Context::Sym(6)),
            ("0", Context::Hall),
        ];
        for (src, ctx) in cases {
            let v = eval(src, ctx);
            let printed = v.to_string();
            assert_eq!(eval(&printed, ctx), v, "{printed}");
            assert_eq!(eval(&printed, ctx).to_string(), printed);
        }
    }
}
