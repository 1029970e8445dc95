//! Text and JSON output. Every number is printed as an exact rational
//! string; JSON never contains a floating-point token.

use num::{One, Signed, Zero};
use serde::Serialize;

use hahnfield::{
    ExpansionResult, HahnSeries, LogFieldElement, LogMonomial, LogPolynomial, Rational, Tau, ValuationValue,
};

use crate::eval::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Text => render_text(value),
        Format::Json => serde_json::to_string(&to_json(value)).expect("serializable"),
    }
}

pub fn render_text(value: &Value) -> String {
    match value {
        Value::Series(s) => series_text(s),
        Value::Valuation(v) => v.to_string(),
        Value::Coeff(c) => coeff_text(c),
        Value::Expansion(e) => expansion_text(e),
    }
}

// ---------------------------------------------------------------------------
// Text

/// `t^e` without the coefficient; `None` for `e = 0`.
fn t_power(e: &Rational) -> Option<String> {
    power_text("t", e)
}

fn power_text(base: &str, e: &Rational) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(base.to_string())
    } else if e.is_integer() && e.is_positive() {
        Some(format!("{base}^{e}"))
    } else {
        Some(format!("{base}^({e})"))
    }
}

fn monomial_text(m: &LogMonomial) -> String {
    let factors: Vec<String> = m
        .exps()
        .as_slice()
        .iter()
        .enumerate()
        .filter_map(|(i, e)| power_text(&format!("l{}", i + 1), e))
        .collect();
    let c = m.coeff();
    if factors.is_empty() {
        c.to_string()
    } else if c.is_one() {
        factors.join(" * ")
    } else if (-c).is_one() {
        format!("-{}", factors.join(" * "))
    } else {
        format!("{c} * {}", factors.join(" * "))
    }
}

fn polynomial_text(p: &LogPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.terms().iter().map(monomial_text).collect::<Vec<_>>().join(" + ")
}

/// Whether a polynomial prints as a single factor that can follow `/`.
fn is_atomic(p: &LogPolynomial) -> bool {
    match p.as_monomial() {
        Some(m) => {
            let s = monomial_text(m);
            !s.contains(' ') && !s.contains('/') && !s.starts_with('-')
        }
        None => false,
    }
}

pub fn coeff_text(c: &LogFieldElement) -> String {
    let num = polynomial_text(c.numerator());
    if c.denominator().is_one() {
        return num;
    }
    let num = if c.numerator().terms().len() > 1 { format!("({num})") } else { num };
    let den = polynomial_text(c.denominator());
    let den = if is_atomic(c.denominator()) { den } else { format!("({den})") };
    format!("{num} / {den}")
}

/// A coefficient that prints as one signed monomial.
fn is_simple(c: &LogFieldElement) -> bool {
    c.denominator().is_one() && c.numerator().terms().len() == 1
}

fn term_text(e: &Rational, c: &LogFieldElement) -> String {
    let coeff = coeff_text(c);
    match t_power(e) {
        None if is_simple(c) => coeff,
        None => format!("({coeff})"),
        Some(tp) if c.is_one() => tp,
        Some(tp) if (-c).is_one() => format!("-{tp}"),
        Some(tp) if is_simple(c) => format!("{coeff} * {tp}"),
        Some(tp) => format!("({coeff}) * {tp}"),
    }
}

fn big_o(tau: &Rational) -> String {
    format!("O({})", t_power(tau).unwrap_or_else(|| "1".into()))
}

pub fn series_text(s: &HahnSeries) -> String {
    let mut parts: Vec<String> = s.terms().iter().map(|t| term_text(&t.exp, &t.coeff)).collect();
    if let Tau::Finite(tau) = s.tau() {
        parts.push(big_o(tau));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

fn expansion_text(e: &ExpansionResult) -> String {
    let pairs: Vec<String> = e.pairs.iter().map(|(r, a)| format!("({r}, {})", coeff_text(a))).collect();
    let mut out = format!("[{}]", pairs.join(", "));
    if !e.terminated {
        if let Tau::Finite(tau) = &e.achieved_tau {
            out.push_str(&format!(" up to {}", big_o(tau)));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JsonMonomial {
    pub c: String,
    pub l: Vec<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JsonCoeff {
    pub num: Vec<JsonMonomial>,
    pub den: Vec<JsonMonomial>,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JsonTerm {
    pub exponent: String,
    pub coeff: JsonCoeff,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct JsonSeries {
    pub terms: Vec<JsonTerm>,
    pub truncation: String,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum JsonValue {
    Series(JsonSeries),
    Valuation {
        valuation: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        at_least: Option<String>,
    },
    Coeff {
        coeff: JsonCoeff,
    },
    Expansion {
        pairs: Vec<JsonTerm>,
        achieved: String,
        terminated: bool,
        scale_valuation: String,
    },
}

fn json_polynomial(p: &LogPolynomial) -> Vec<JsonMonomial> {
    p.terms()
        .iter()
        .map(|m| JsonMonomial {
            c: m.coeff().to_string(),
            l: m.exps().as_slice().iter().map(ToString::to_string).collect(),
        })
        .collect()
}

pub fn json_coeff(c: &LogFieldElement) -> JsonCoeff {
    JsonCoeff { num: json_polynomial(c.numerator()), den: json_polynomial(c.denominator()) }
}

fn tau_string(t: &Tau) -> String {
    match t {
        Tau::Finite(r) => r.to_string(),
        Tau::Infinite => "inf".into(),
    }
}

pub fn json_series(s: &HahnSeries) -> JsonSeries {
    JsonSeries {
        terms: s
            .terms()
            .iter()
            .map(|t| JsonTerm { exponent: t.exp.to_string(), coeff: json_coeff(&t.coeff) })
            .collect(),
        truncation: tau_string(s.tau()),
    }
}

pub fn to_json(value: &Value) -> JsonValue {
    match value {
        Value::Series(s) => JsonValue::Series(json_series(s)),
        Value::Valuation(v) => match v {
            ValuationValue::Finite(r) => JsonValue::Valuation { valuation: r.to_string(), at_least: None },
            ValuationValue::Infinity => JsonValue::Valuation { valuation: "inf".into(), at_least: None },
            ValuationValue::UnknownBeyond(r) => {
                JsonValue::Valuation { valuation: "unknown".into(), at_least: Some(r.to_string()) }
            }
        },
        Value::Coeff(c) => JsonValue::Coeff { coeff: json_coeff(c) },
        Value::Expansion(e) => JsonValue::Expansion {
            pairs: e
                .pairs
                .iter()
                .map(|(r, a)| JsonTerm { exponent: r.to_string(), coeff: json_coeff(a) })
                .collect(),
            achieved: tau_string(&e.achieved_tau),
            terminated: e.terminated,
            scale_valuation: e.scale_valuation.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{eval_str, Config};

    fn text(src: &str) -> String {
        render_text(&eval_str(src, &Config::default()).unwrap())
    }

    fn json(src: &str) -> String {
        render(&eval_str(src, &Config::default()).unwrap(), Format::Json)
    }

    #[test]
    fn text_examples() {
        assert_eq!(text("1 + t + O(t^2)"), "1 + t + O(t^2)");
        assert_eq!(text("t - t"), "0");
        assert_eq!(text("3*t^(1/2)"), "3 * t^(1/2)");
        assert_eq!(text("1/t"), "t^(-1)");
        assert_eq!(text("st(0-l1+5/2+t)"), "-l1 + 5/2");
        assert_eq!(text("1 - t"), "1 + -t");
        assert_eq!(text("(l1 + 1)/(l2 + 1) * t^2"), "((l1 + 1) / (l2 + 1)) * t^2");
        assert_eq!(text("(l1 + 1)/l2"), "(l1 * l2^(-1) + l2^(-1))");
        assert_eq!(text("st((l1 + 1)/(2*l2 - 1))"), "(1/2 * l1 + 1/2) / (l2 + -1/2)");
        assert_eq!(text("5/2*l1^(1/2)*l3^(-1)*t"), "5/2 * l1^(1/2) * l3^(-1) * t");
        assert_eq!(text("O(1)"), "O(1)");
        assert_eq!(text("t^(-1) - 1 + O(t)"), "t^(-1) + -1 + O(t)");
        assert_eq!(text("v(t^2*t^3)"), "5");
        assert_eq!(text("v(0)"), "inf");
        assert_eq!(text("expand(inv(1-t); h=t^2; terms=3)"), "[(0, 1), (1/2, 1), (1, 1)] up to O(t^3)");
        assert_eq!(text("expand(t + t^2; h=t^2)"), "[(1/2, 1), (1, 1)]");
    }

    #[test]
    fn json_examples() {
        let zeros = vec!["0"; 9].iter().map(|s| format!("\"{s}\"")).collect::<Vec<_>>().join(",");
        let one = format!("{{\"c\":\"1\",\"l\":[{zeros}]}}");
        assert_eq!(
            json("t^(1/2)"),
            format!(
                "{{\"terms\":[{{\"exponent\":\"1/2\",\"coeff\":{{\"num\":[{one}],\"den\":[{one}]}}}}],\"truncation\":\"inf\"}}"
            )
        );
        assert_eq!(json("t - t"), "{\"terms\":[],\"truncation\":\"inf\"}");
        assert_eq!(json("v(t^2)"), "{\"valuation\":\"2\"}");
        assert_eq!(json("v(O(t))"), "{\"valuation\":\"unknown\",\"at_least\":\"1\"}");
        assert!(json("1/(1-t)").ends_with("\"truncation\":\"8\"}"));
        assert!(json("expand(t; h=t)").contains("\"terminated\":true"));
    }
}
