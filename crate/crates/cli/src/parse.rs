//! Tokenizer and recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT | DECIMAL | '(' '-'? NUMBER ('/' NUMBER)? ')'
//! atom    := NUMBER | 't' | 'l1'..'l9' | NAME | NAME '(' args ')' | '(' expr ')'
//! ```
//!
//! Columns are 1-based character positions.

use num::{BigInt, One, Zero};
use thiserror::Error;

use hahnfield::{Rational, TOWER_DEPTH};

/// Half-open column range `[start, end)` of a subexpression.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Func {
    /// `v(e)`
    V,
    /// `st(e)`
    St,
    /// `inv(e)`
    Inv,
    /// `root(e, q)`
    Root(Rational),
    /// `sub(e; h=e2)`
    Sub,
    /// `expand(e; h=e2; terms=n)`
    Expand,
    /// `O(t^r)`: an unknown remainder of order `r`.
    BigO,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::V => "v",
            Func::St => "st",
            Func::Inv => "inv",
            Func::Root(_) => "root",
            Func::Sub => "sub",
            Func::Expand => "expand",
            Func::BigO => "O",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub func: Func,
    pub args: Vec<Expr>,
    /// `h=` option of `sub` and `expand`.
    pub h: Option<Box<Expr>>,
    /// `terms=` option of `expand`.
    pub terms: Option<usize>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    T,
    /// `l_n`, `1 <= n <= 9`.
    Log(usize),
    /// A `let`-bound name.
    Var(String, Span),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, Span),
    Pow(Box<Expr>, Rational, Span),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown function `{name}` at column {column}")]
    UnknownFunction { name: String, column: usize },
    #[error("`{name}` at column {column} expects {expected}")]
    Arity { name: String, expected: &'static str, column: usize },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. }
            | ParseError::UnknownFunction { column, .. }
            | ParseError::Arity { column, .. } => *column,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Decimal(Rational),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
    end: usize,
}

fn syntax(column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { column, message: message.into() }
}

fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().collect();
            let tok = if i < chars.len() && chars[i] == '.' {
                i += 1;
                let frac_start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let frac: String = chars[frac_start..i].iter().collect();
                if frac.is_empty() {
                    return Err(syntax(i + 1, "expected digits after the decimal point"));
                }
                Tok::Decimal(decimal(&int_part, &frac))
            } else {
                Tok::Int(int_part.parse().expect("digits"))
            };
            if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                return Err(syntax(i + 1, "scientific notation is not supported; write an exact rational"));
            }
            out.push(Token { tok, col, end: i + 1 });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col, end: i + 1 });
        } else if "+-*/^(),;=".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col, end: col + 1 });
            i += 1;
        } else {
            return Err(syntax(col, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::End, col: chars.len() + 1, end: chars.len() + 1 });
    Ok(out)
}

fn decimal(int_part: &str, frac: &str) -> Rational {
    let digits: BigInt = format!("{int_part}{frac}").parse().expect("digits");
    let den = num::pow(BigInt::from(10), frac.len());
    Rational::new(digits, den)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Decimal(d) => format!("`{d}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".into(),
    }
}

/// Rational literal: an integer, a decimal, or `p/q`, optionally negative.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let neg = p.eat_sym('-');
    let mut r = p.number()?;
    if p.eat_sym('/') {
        let den = p.number()?;
        if den.is_zero() {
            return Err(syntax(p.prev_col(), "zero denominator"));
        }
        r /= den;
    }
    p.expect_end()?;
    Ok(if neg { -r } else { r })
}

/// Parses a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    p.expect_end()?;
    Ok(e)
}

/// A REPL line: either `let name = expr` or an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Let(String, Expr),
    Expr(Expr),
}

pub fn parse_statement(src: &str) -> Result<Statement, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0 };
    if matches!(&p.peek().tok, Tok::Ident(s) if s == "let") {
        p.pos += 1;
        let tok = p.next();
        let name = match tok.tok {
            Tok::Ident(name) if !is_reserved(&name) => name,
            other => return Err(syntax(tok.col, format!("expected a name to bind, found {}", describe(&other)))),
        };
        p.expect_sym('=')?;
        let e = p.expr()?;
        p.expect_end()?;
        return Ok(Statement::Let(name, e));
    }
    let e = p.expr()?;
    p.expect_end()?;
    Ok(Statement::Expr(e))
}

fn log_level(name: &str) -> Option<usize> {
    let n: usize = name.strip_prefix('l')?.parse().ok()?;
    (1..=TOWER_DEPTH).contains(&n).then_some(n)
}

fn is_reserved(name: &str) -> bool {
    name == "t" || name == "let" || log_level(name).is_some() || function(name).is_some()
}

fn function(name: &str) -> Option<Func> {
    Some(match name {
        "v" => Func::V,
        "st" => Func::St,
        "inv" => Func::Inv,
        "root" => Func::Root(Rational::one()),
        "sub" => Func::Sub,
        "expand" => Func::Expand,
        "O" => Func::BigO,
        _ => return None,
    })
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn prev_col(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].col
    }

    fn prev_end(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].end
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            let t = self.peek();
            Err(syntax(t.col, format!("expected `{c}`, found {}", describe(&t.tok))))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        match t.tok {
            Tok::End => Ok(()),
            _ => Err(syntax(t.col, format!("unexpected {}", describe(&t.tok)))),
        }
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Rational::from_integer(n)),
            Tok::Decimal(d) => Ok(d),
            other => Err(syntax(t.col, format!("expected a number, found {}", describe(&other)))),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek().tok == Tok::Sym('/') {
                let col = self.next().col;
                let rhs = self.unary()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs), Span { start: col, end: self.prev_end() });
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let start = self.peek().col;
        let base = self.atom()?;
        if !self.eat_sym('^') {
            return Ok(base);
        }
        let exp = self.exponent()?;
        if self.peek().tok == Tok::Sym('^') {
            return Err(syntax(self.peek().col, "chained `^` is ambiguous; use parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), exp, Span { start, end: self.prev_end() }))
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Rational::from_integer(n)),
            Tok::Decimal(d) => Ok(d),
            Tok::Sym('(') => {
                let neg = self.eat_sym('-');
                let mut r = self.number()?;
                if self.eat_sym('/') {
                    let den = self.number()?;
                    if den.is_zero() {
                        return Err(syntax(self.prev_col(), "zero denominator in exponent"));
                    }
                    r /= den;
                }
                self.expect_sym(')')?;
                Ok(if neg { -r } else { r })
            }
            other => Err(syntax(
                t.col,
                format!("expected an exponent (integer, decimal or `(p/q)`), found {}", describe(&other)),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Decimal(d) => Ok(Expr::Num(d)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if self.peek().tok == Tok::Sym('(') {
                    return self.call(name, t.col);
                }
                if name == "t" {
                    Ok(Expr::T)
                } else if let Some(n) = log_level(&name) {
                    Ok(Expr::Log(n))
                } else if function(&name).is_some() {
                    Err(syntax(self.peek().col, format!("expected `(` after `{name}`")))
                } else {
                    Ok(Expr::Var(name, Span { start: t.col, end: t.end }))
                }
            }
            other => Err(syntax(t.col, format!("unexpected {}", describe(&other)))),
        }
    }

    fn call(&mut self, name: String, col: usize) -> Result<Expr, ParseError> {
        let func = function(&name).ok_or_else(|| ParseError::UnknownFunction { name: name.clone(), column: col })?;
        self.expect_sym('(')?;
        let mut call = Call { func, args: Vec::new(), h: None, terms: None, span: Span { start: col, end: col } };
        let arity = |expected| ParseError::Arity { name: name.clone(), expected, column: col };
        if self.peek().tok == Tok::Sym(')') {
            return Err(arity(expected_args(&call.func)));
        }
        call.args.push(self.expr()?);
        match call.func {
            Func::Root(_) => {
                if !self.eat_sym(',') {
                    return Err(arity(expected_args(&call.func)));
                }
                let neg = self.eat_sym('-');
                let mut q = self.number()?;
                if self.eat_sym('/') {
                    q /= self.number()?;
                }
                if q.is_zero() {
                    return Err(syntax(self.prev_col(), "root index must be nonzero"));
                }
                call.func = Func::Root(if neg { -q } else { q });
            }
            Func::Sub | Func::Expand => {
                while self.eat_sym(';') {
                    let key = self.next();
                    let key_name = match &key.tok {
                        Tok::Ident(k) => k.clone(),
                        other => return Err(syntax(key.col, format!("expected an option name, found {}", describe(other)))),
                    };
                    self.expect_sym('=')?;
                    match key_name.as_str() {
                        "h" if call.h.is_none() => call.h = Some(Box::new(self.expr()?)),
                        "terms" if call.func == Func::Expand && call.terms.is_none() => {
                            let n = self.next();
                            match n.tok {
                                Tok::Int(v) => {
                                    call.terms = Some(v.try_into().map_err(|_| syntax(n.col, "terms is too large"))?)
                                }
                                other => {
                                    return Err(syntax(n.col, format!("expected an integer, found {}", describe(&other))))
                                }
                            }
                        }
                        _ => return Err(syntax(key.col, format!("unexpected option `{key_name}` for `{name}`"))),
                    }
                }
                if call.h.is_none() {
                    return Err(arity(expected_args(&call.func)));
                }
            }
            _ => {}
        }
        if self.peek().tok == Tok::Sym(',') || self.peek().tok == Tok::Sym(';') {
            return Err(arity(expected_args(&call.func)));
        }
        self.expect_sym(')')?;
        call.span.end = self.prev_end();
        Ok(Expr::Call(call))
    }
}

fn expected_args(f: &Func) -> &'static str {
    match f {
        Func::Root(_) => "an expression and a rational index: root(e, q)",
        Func::Sub => "an expression and a scale: sub(e; h=e2)",
        Func::Expand => "an expression, a scale and an optional count: expand(e; h=e2; terms=n)",
        _ => "exactly one argument",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn num(n: i64) -> Box<Expr> {
        Box::new(Expr::Num(q(n, 1)))
    }

    fn pow_t(e: Rational) -> Box<Expr> {
        Box::new(Expr::Pow(Box::new(Expr::T), e, Span { start: 0, end: 0 }))
    }

    /// Structural equality ignoring spans.
    fn strip(e: &Expr) -> Expr {
        let b = |x: &Expr| Box::new(strip(x));
        let none = Span { start: 0, end: 0 };
        match e {
            Expr::Var(n, _) => Expr::Var(n.clone(), none),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Add(l, r) => Expr::Add(b(l), b(r)),
            Expr::Sub(l, r) => Expr::Sub(b(l), b(r)),
            Expr::Mul(l, r) => Expr::Mul(b(l), b(r)),
            Expr::Div(l, r, _) => Expr::Div(b(l), b(r), none),
            Expr::Pow(x, p, _) => Expr::Pow(b(x), p.clone(), none),
            Expr::Call(c) => Expr::Call(Call {
                func: c.func.clone(),
                args: c.args.iter().map(strip).collect(),
                h: c.h.as_deref().map(b),
                terms: c.terms,
                span: none,
            }),
            other => other.clone(),
        }
    }

    fn parsed(src: &str) -> Expr {
        strip(&parse(src).unwrap())
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(parsed("3*t^(1/2)+t^2"), Expr::Add(Box::new(Expr::Mul(num(3), pow_t(q(1, 2)))), pow_t(q(2, 1))));
        let inner = Expr::Sub(Box::new(Expr::Mul(Box::new(Expr::Log(1)), Box::new(Expr::T))), Box::new(Expr::T));
        let call = Call { func: Func::V, args: vec![inner], h: None, terms: None, span: Span { start: 0, end: 0 } };
        assert_eq!(parsed("v(l1*t - t)"), Expr::Call(call));
        // Unary minus binds looser than ^ and tighter than *.
        assert_eq!(parsed("-t^2"), Expr::Neg(pow_t(q(2, 1))));
        assert_eq!(parsed("-2*t"), Expr::Mul(Box::new(Expr::Neg(num(2))), Box::new(Expr::T)));
        assert_eq!(parsed("1-2-3"), Expr::Sub(Box::new(Expr::Sub(num(1), num(2))), num(3)));
    }

    #[test]
    fn syntax_error_columns() {
        assert_eq!(parse("t^^2").unwrap_err().column(), 3);
        assert_eq!(parse("t^-1").unwrap_err().column(), 3);
        assert_eq!(parse("1 +").unwrap_err().column(), 4);
        assert_eq!(parse("(t").unwrap_err().column(), 3);
        assert_eq!(parse("t $").unwrap_err().column(), 3);
        assert_eq!(parse("3t").unwrap_err().column(), 2);
        assert_eq!(parse("t^2^3").unwrap_err().column(), 4);
    }

    #[test]
    fn literals() {
        assert_eq!(parsed("2.25"), Expr::Num(q(9, 4)));
        assert_eq!(parsed("t^0.5"), *pow_t(q(1, 2)));
        assert_eq!(parsed("t^(-3/6)"), *pow_t(q(-1, 2)));
        assert_eq!(parse("1e3").unwrap_err().column(), 2);
        assert_eq!(parse("2.5E-1").unwrap_err().column(), 4);
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert!(parse_rational("bogus").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn calls() {
        let e = parse("expand(inv(1-t); h=t^2; terms=3)").unwrap();
        let Expr::Call(c) = e else { panic!() };
        assert_eq!(c.func, Func::Expand);
        assert_eq!(c.terms, Some(3));
        assert_eq!(strip(c.h.as_deref().unwrap()), *pow_t(q(2, 1)));
        assert_eq!(c.span, Span { start: 1, end: 33 });
        let Expr::Call(c) = parse("root(1+t, 3)").unwrap() else { panic!() };
        assert_eq!(c.func, Func::Root(q(3, 1)));
        assert!(matches!(parse("sub(t; h=t^2)").unwrap(), Expr::Call(Call { func: Func::Sub, .. })));
        assert!(matches!(parse("O(t^2)").unwrap(), Expr::Call(Call { func: Func::BigO, .. })));
    }

    #[test]
    fn call_errors() {
        assert_eq!(
            parse("foo(t)").unwrap_err(),
            ParseError::UnknownFunction { name: "foo".into(), column: 1 }
        );
        assert!(matches!(parse("v(t, t)").unwrap_err(), ParseError::Arity { .. }));
        assert!(matches!(parse("v()").unwrap_err(), ParseError::Arity { .. }));
        assert!(matches!(parse("root(t)").unwrap_err(), ParseError::Arity { .. }));
        assert!(matches!(parse("sub(t)").unwrap_err(), ParseError::Arity { .. }));
        assert!(matches!(parse("expand(t; terms=2)").unwrap_err(), ParseError::Arity { .. }));
        assert!(matches!(parse("sub(t; terms=2; h=t)").unwrap_err(), ParseError::Syntax { column: 8, .. }));
    }

    #[test]
    fn names_and_statements() {
        assert_eq!(parsed("x + l9"), Expr::Add(Box::new(Expr::Var("x".into(), Span { start: 0, end: 0 })), Box::new(Expr::Log(9))));
        assert!(matches!(parsed("l10"), Expr::Var(..)));
        assert!(matches!(parse_statement("let x = 1 + t").unwrap(), Statement::Let(n, _) if n == "x"));
        assert!(parse_statement("let t = 1").is_err());
        assert!(parse_statement("let inv = 1").is_err());
        assert!(matches!(parse_statement("t").unwrap(), Statement::Expr(Expr::T)));
    }
}
