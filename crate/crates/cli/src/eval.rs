//! Evaluation of parsed expressions against the kernel.

use std::collections::HashMap;

use thiserror::Error;

use hahnfield::{
    extract, quasi_st, substitute, ExpansionResult, HahnSeries, LogFieldElement, Rational, Scale, ValuationValue,
};

use crate::parse::{Call, Expr, Func, ParseError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Truncation order for every operation that produces an infinite
    /// series.
    pub cutoff: Rational,
    /// Default `terms=` of `expand`.
    pub max_terms: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { cutoff: Rational::from_integer(8.into()), max_terms: 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Series(HahnSeries),
    Valuation(ValuationValue),
    Coeff(LogFieldElement),
    Expansion(ExpansionResult),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Series(_) => "series",
            Value::Valuation(_) => "valuation",
            Value::Coeff(_) => "coefficient",
            Value::Expansion(_) => "expansion",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{op} (columns {}-{}): {source}", span.start, span.end.saturating_sub(1))]
    Kernel { op: &'static str, span: Span, source: hahnfield::Error },
    #[error("unbound name `{name}` at column {}", span.start)]
    Unbound { name: String, span: Span },
    #[error("{op} needs a series operand, got {got}")]
    Type { op: &'static str, got: &'static str },
    #[error("O(...) at column {} expects a power of t", span.start)]
    BigO { span: Span },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

pub type Env = HashMap<String, Value>;

/// Parses and evaluates one expression with no bindings.
pub fn eval_str(src: &str, cfg: &Config) -> Result<Value, Error> {
    let e = crate::parse::parse(src)?;
    Ok(evaluate(&e, cfg, &Env::new())?)
}

pub fn evaluate(e: &Expr, cfg: &Config, env: &Env) -> Result<Value, EvalError> {
    Evaluator { cfg, env }.value(e)
}

struct Evaluator<'a> {
    cfg: &'a Config,
    env: &'a Env,
}

fn kernel(op: &'static str, span: Span) -> impl Fn(hahnfield::Error) -> EvalError {
    move |source| EvalError::Kernel { op, span, source }
}

fn no_span() -> Span {
    Span { start: 0, end: 0 }
}

impl Evaluator<'_> {
    fn value(&self, e: &Expr) -> Result<Value, EvalError> {
        match e {
            Expr::Var(name, span) => {
                self.env.get(name).cloned().ok_or_else(|| EvalError::Unbound { name: name.clone(), span: *span })
            }
            Expr::Call(call) => self.call(call),
            _ => self.series(e).map(Value::Series),
        }
    }

    fn series(&self, e: &Expr) -> Result<HahnSeries, EvalError> {
        let cutoff = &self.cfg.cutoff;
        Ok(match e {
            Expr::Num(r) => HahnSeries::from_rational(r.clone()),
            Expr::T => HahnSeries::t(),
            Expr::Log(n) => {
                HahnSeries::from_scalar(LogFieldElement::log(*n).map_err(kernel("log variable", no_span()))?)
            }
            Expr::Neg(a) => -&self.series(a)?,
            Expr::Add(a, b) => &self.series(a)? + &self.series(b)?,
            Expr::Sub(a, b) => &self.series(a)? - &self.series(b)?,
            Expr::Mul(a, b) => &self.series(a)? * &self.series(b)?,
            Expr::Div(a, b, span) => {
                let den = self.series(b)?;
                if den.is_exact_zero() {
                    return Err(kernel("division", *span)(hahnfield::Error::DivisionByZero));
                }
                &self.series(a)? * &den.inv(cutoff).map_err(kernel("division", *span))?
            }
            Expr::Pow(a, r, span) => self.series(a)?.pow(r, cutoff).map_err(kernel("power", *span))?,
            Expr::Var(..) | Expr::Call(_) => match self.value(e)? {
                Value::Series(s) => s,
                Value::Coeff(c) => HahnSeries::from_scalar(c),
                Value::Valuation(ValuationValue::Finite(r)) => HahnSeries::from_rational(r),
                other => return Err(EvalError::Type { op: "arithmetic", got: other.kind() }),
            },
        })
    }

    fn scale(&self, call: &Call, op: &'static str) -> Result<Scale, EvalError> {
        let h = call.h.as_deref().expect("parser requires h=");
        Scale::new(self.series(h)?).map_err(kernel(op, call.span))
    }

    fn call(&self, call: &Call) -> Result<Value, EvalError> {
        let cutoff = &self.cfg.cutoff;
        let arg = self.series(&call.args[0])?;
        let span = call.span;
        Ok(match &call.func {
            Func::V => Value::Valuation(arg.valuation()),
            Func::St => Value::Coeff(quasi_st(&arg).map_err(kernel("st", span))?),
            Func::Inv => Value::Series(arg.inv(cutoff).map_err(kernel("inv", span))?),
            Func::Root(q) => Value::Series(arg.pow(&q.recip(), cutoff).map_err(kernel("root", span))?),
            Func::Sub => {
                let h = self.scale(call, "sub")?;
                Value::Series(substitute(&arg, &h, cutoff).map_err(kernel("sub", span))?)
            }
            Func::Expand => {
                let h = self.scale(call, "expand")?;
                let n = call.terms.unwrap_or(self.cfg.max_terms);
                Value::Expansion(extract(&arg, &h, n, cutoff).map_err(kernel("expand", span))?)
            }
            Func::BigO => {
                let [term] = arg.terms() else { return Err(EvalError::BigO { span }) };
                if !arg.is_exact() || !term.coeff.is_one() {
                    return Err(EvalError::BigO { span });
                }
                Value::Series(HahnSeries::unknown_beyond(term.exp.clone()))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hahnfield::Tau;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn eval(src: &str) -> Result<Value, Error> {
        eval_str(src, &Config::default())
    }

    fn series(src: &str) -> HahnSeries {
        match eval(src).unwrap() {
            Value::Series(s) => s,
            other => panic!("expected a series, got {other:?}"),
        }
    }

    fn lf(n: i64) -> LogFieldElement {
        LogFieldElement::from_integer(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(eval("v(3*t^(1/2)+t^2)").unwrap(), Value::Valuation(ValuationValue::Finite(q(1, 2))));
        assert_eq!(eval("v(t^2*t^3)").unwrap(), Value::Valuation(ValuationValue::Finite(q(5, 1))));
        assert_eq!(eval("v(t - t)").unwrap(), Value::Valuation(ValuationValue::Infinity));
        assert_eq!(eval("v(O(t^2))").unwrap(), Value::Valuation(ValuationValue::UnknownBeyond(q(2, 1))));
    }

    #[test]
    fn expand_example() {
        let Value::Expansion(res) = eval("expand(inv(1-t); h=t^2; terms=3)").unwrap() else { panic!() };
        assert_eq!(res.pairs, vec![(q(0, 1), lf(1)), (q(1, 2), lf(1)), (q(1, 1), lf(1))]);
        assert_eq!(res.achieved_tau, Tau::Finite(q(3, 1)));
        // Substituting back agrees with the input below the reached order.
        let h = Scale::new(series("t^2")).unwrap();
        let back = substitute(&res.to_series(), &h, &q(8, 1)).unwrap();
        assert_eq!(back.truncate(&res.achieved_tau), series("inv(1-t)").truncate(&res.achieved_tau));
    }

    #[test]
    fn st_examples() {
        let expected = &(-LogFieldElement::log(1).unwrap()) + &LogFieldElement::embed(q(5, 2));
        assert_eq!(eval("st(0-l1+5/2+t)").unwrap(), Value::Coeff(expected));
        match eval("st(t^(-1))").unwrap_err() {
            Error::Eval(EvalError::Kernel { op: "st", source: hahnfield::Error::NotInValuationRing(r), span }) => {
                assert_eq!(r, q(-1, 1));
                assert_eq!(span, Span { start: 1, end: 11 });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(series("1/(1-t)"), series("inv(1-t)"));
        assert_eq!(series("(1+t)^2"), series("1 + 2*t + t^2"));
        assert!(series("(1+t)^2").is_exact());
        assert_eq!(series("root((1+t)^2, 2)"), series("1 + t + O(t^8)"));
        assert_eq!(series("t^(1/2) * t^(1/2)"), series("t"));
        assert_eq!(series("2.5*t"), series("5/2*t"));
        assert_eq!(series("v(t^3) * t"), series("3*t"));
        assert_eq!(series("st(l1 + t) * t"), series("l1*t"));
        assert_eq!(series("sub(t + t^2; h=t^2)"), series("t^2 + t^4"));
        assert_eq!(series("1 + t + O(t^2) + t^3"), series("1 + t + O(t^2)"));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            eval("1/(t-t)").unwrap_err(),
            Error::Eval(EvalError::Kernel { source: hahnfield::Error::DivisionByZero, .. })
        ));
        assert!(matches!(eval("x + 1").unwrap_err(), Error::Eval(EvalError::Unbound { .. })));
        assert!(matches!(eval("1 + expand(t; h=t)").unwrap_err(), Error::Eval(EvalError::Type { .. })));
        assert!(matches!(eval("O(2*t)").unwrap_err(), Error::Eval(EvalError::BigO { .. })));
        assert!(matches!(
            eval("sub(t; h=1+t)").unwrap_err(),
            Error::Eval(EvalError::Kernel { op: "sub", source: hahnfield::Error::InvalidScale(_), .. })
        ));
        assert!(matches!(eval("root(0-1-t, 2)").unwrap_err(), Error::Eval(EvalError::Kernel { op: "root", .. })));
        assert!(matches!(eval("t^^2").unwrap_err(), Error::Parse(ParseError::Syntax { column: 3, .. })));
    }

    #[test]
    fn bindings() {
        let mut env = Env::new();
        env.insert("x".into(), Value::Series(series("1 + t")));
        let e = crate::parse::parse("x * x").unwrap();
        assert_eq!(evaluate(&e, &Config::default(), &env).unwrap(), Value::Series(series("1 + 2*t + t^2")));
    }
}
