//! Truncated Hahn series `sum a_k t^r_k` with rational exponents and
//! coefficients in [`LogFieldElement`].
//!
//! A series carries an explicit truncation order `tau`: every stored term has
//! exponent below `tau`, and nothing is known about exponents `>= tau`. With
//! `tau = +inf` the series is exact (and finite). The indeterminate `t` is a
//! positive infinitesimal, so the sign of a series is the sign of its leading
//! coefficient and its valuation is its least exponent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::logfield::LogFieldElement;
use crate::Rational;

/// A truncation order: a rational exponent or `+inf`.
///
/// `Finite` is declared first so the derived order puts every finite value
/// below `Infinite`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Tau {
    Finite(Rational),
    Infinite,
}

impl Tau {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Tau::Finite(r) => Some(r),
            Tau::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Tau::Infinite)
    }

    /// Shift by a finite amount.
    pub fn shift(&self, by: &Rational) -> Tau {
        match self {
            Tau::Finite(r) => Tau::Finite(r + by),
            Tau::Infinite => Tau::Infinite,
        }
    }

    pub fn plus(&self, other: &Tau) -> Tau {
        match (self, other) {
            (Tau::Finite(a), Tau::Finite(b)) => Tau::Finite(a + b),
            _ => Tau::Infinite,
        }
    }

    /// Multiply by a strictly positive rational.
    pub fn scale(&self, by: &Rational) -> Tau {
        debug_assert!(by.is_positive());
        match self {
            Tau::Finite(r) => Tau::Finite(r * by),
            Tau::Infinite => Tau::Infinite,
        }
    }

    /// Whether the exponent `e` lies strictly below this order.
    pub fn exceeds(&self, e: &Rational) -> bool {
        match self {
            Tau::Finite(r) => e < r,
            Tau::Infinite => true,
        }
    }
}

impl From<Rational> for Tau {
    fn from(r: Rational) -> Self {
        Tau::Finite(r)
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::Finite(r) => write!(f, "{r}"),
            Tau::Infinite => f.write_str("inf"),
        }
    }
}

/// The canonical valuation of a (possibly truncated) series.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ValuationValue {
    /// Least exponent of the support.
    Finite(Rational),
    /// The series is exactly zero.
    Infinity,
    /// No term is known below the truncation order; the valuation is at least
    /// this value but otherwise unknown.
    UnknownBeyond(Rational),
}

impl ValuationValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ValuationValue::Finite(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for ValuationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationValue::Finite(r) => write!(f, "{r}"),
            ValuationValue::Infinity => f.write_str("inf"),
            ValuationValue::UnknownBeyond(r) => write!(f, "unknown (>= {r})"),
        }
    }
}

/// Outcome of comparing two series whose difference may be unknown.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesOrdering {
    Less,
    Equal,
    Greater,
    Indeterminate,
}

impl SeriesOrdering {
    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            SeriesOrdering::Less => Some(Ordering::Less),
            SeriesOrdering::Equal => Some(Ordering::Equal),
            SeriesOrdering::Greater => Some(Ordering::Greater),
            SeriesOrdering::Indeterminate => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub exp: Rational,
    pub coeff: LogFieldElement,
}

/// A truncated Hahn series. See the module docs for the precision contract.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HahnSeries {
    terms: Vec<Term>,
    tau: Tau,
}

impl HahnSeries {
    /// Exact zero.
    pub fn zero() -> Self {
        HahnSeries { terms: Vec::new(), tau: Tau::Infinite }
    }

    /// `O(t^tau)`: nothing known below `tau`.
    pub fn unknown_beyond(tau: Rational) -> Self {
        HahnSeries { terms: Vec::new(), tau: Tau::Finite(tau) }
    }

    pub fn one() -> Self {
        Self::from_scalar(LogFieldElement::one())
    }

    /// The indeterminate `t` itself, the model of the canonical scale.
    pub fn t() -> Self {
        Self::term(LogFieldElement::one(), Rational::one())
    }

    pub fn from_scalar(c: LogFieldElement) -> Self {
        Self::term(c, Rational::zero())
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_scalar(LogFieldElement::embed(c))
    }

    /// The exact monomial `c * t^r`; exact zero when `c = 0`.
    pub fn term(c: LogFieldElement, r: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HahnSeries { terms: vec![Term { exp: r, coeff: c }], tau: Tau::Infinite }
    }

    /// Builds a series from arbitrary `(exponent, coefficient)` pairs: like
    /// exponents are summed, zero coefficients and terms at or beyond `tau`
    /// are dropped.
    pub fn from_terms<I>(terms: I, tau: Tau) -> Self
    where
        I: IntoIterator<Item = (Rational, LogFieldElement)>,
    {
        let mut acc: BTreeMap<Rational, LogFieldElement> = BTreeMap::new();
        for (e, c) in terms {
            if !tau.exceeds(&e) {
                continue;
            }
            match acc.get_mut(&e) {
                Some(slot) => *slot = &*slot + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { exp, coeff })
            .collect();
        HahnSeries { terms, tau }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn tau(&self) -> &Tau {
        &self.tau
    }

    pub fn is_exact(&self) -> bool {
        self.tau.is_infinite()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.is_exact()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Coefficient of `t^e`, or `None` when `e` is at or beyond `tau`.
    pub fn coeff_at(&self, e: &Rational) -> Option<LogFieldElement> {
        if !self.tau.exceeds(e) {
            return None;
        }
        Some(
            self.terms
                .iter()
                .find(|t| &t.exp == e)
                .map_or_else(LogFieldElement::zero, |t| t.coeff.clone()),
        )
    }

    pub fn valuation(&self) -> ValuationValue {
        match (self.terms.first(), &self.tau) {
            (Some(t), _) => ValuationValue::Finite(t.exp.clone()),
            (None, Tau::Infinite) => ValuationValue::Infinity,
            (None, Tau::Finite(r)) => ValuationValue::UnknownBeyond(r.clone()),
        }
    }

    /// Least exponent that may carry a nonzero coefficient: the leading
    /// exponent, or `tau` for a term-free series.
    fn known_low(&self) -> Tau {
        match self.terms.first() {
            Some(t) => Tau::Finite(t.exp.clone()),
            None => self.tau.clone(),
        }
    }

    /// Drops terms at or beyond `min(new_tau, tau)` and lowers `tau` to it.
    pub fn truncate(&self, new_tau: &Tau) -> Self {
        let tau = self.tau.clone().min(new_tau.clone());
        let terms = self.terms.iter().take_while(|t| tau.exceeds(&t.exp)).cloned().collect();
        HahnSeries { terms, tau }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        let terms =
            self.terms.iter().map(|t| Term { exp: &t.exp + e, coeff: t.coeff.clone() }).collect();
        HahnSeries { terms, tau: self.tau.shift(e) }
    }

    pub fn scale(&self, c: &LogFieldElement) -> Self {
        if c.is_zero() {
            return HahnSeries { terms: Vec::new(), tau: self.tau.clone() };
        }
        let terms = self.terms.iter().map(|t| Term { exp: t.exp.clone(), coeff: &t.coeff * c }).collect();
        HahnSeries { terms, tau: self.tau.clone() }
    }

    /// Sign of the leading coefficient; `None` when the series has no known
    /// term but is not exactly zero.
    pub fn signum(&self) -> Option<Sign> {
        match self.terms.first() {
            Some(t) => Some(t.coeff.signum()),
            None if self.is_exact() => Some(Sign::NoSign),
            None => None,
        }
    }

    pub fn compare(&self, other: &Self) -> SeriesOrdering {
        match (self - other).signum() {
            Some(Sign::Plus) => SeriesOrdering::Greater,
            Some(Sign::Minus) => SeriesOrdering::Less,
            Some(Sign::NoSign) => SeriesOrdering::Equal,
            None => SeriesOrdering::Indeterminate,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Some(Sign::Minus) {
            -self
        } else {
            self.clone()
        }
    }

    /// Splits `self = c * t^g * (1 + eps)` and returns `(c, g, eps)`. The
    /// relative correction `eps` has strictly positive valuation and
    /// truncation order `tau - g`.
    fn factor_leading(&self) -> Result<(LogFieldElement, Rational, HahnSeries)> {
        let lead = self.terms.first().ok_or(Error::ZeroOrUnknownLeadingTerm)?;
        let c = lead.coeff.clone();
        let g = lead.exp.clone();
        let c_inv = c.inv()?;
        let terms = self.terms[1..]
            .iter()
            .map(|t| Term { exp: &t.exp - &g, coeff: &t.coeff * &c_inv })
            .collect();
        let eps = HahnSeries { terms, tau: self.tau.shift(&-&g) };
        Ok((c, g, eps))
    }

    /// Multiplicative inverse.
    ///
    /// The input is first read only below `work_tau`; with leading exponent
    /// `g` the result has truncation order `min(work_tau, min(tau, work_tau) - 2g)`.
    /// An exact monomial inverts exactly.
    pub fn inv(&self, work_tau: &Rational) -> Result<Self> {
        let (c, g, eps) = self.factor_leading()?;
        let c_inv = c.inv()?;
        if eps.is_exact_zero() {
            return Ok(Self::term(c_inv, -g));
        }
        let work = Tau::Finite(work_tau.clone());
        let effective = self.tau.clone().min(work.clone());
        let result_tau = work.min(effective.shift(&(-&g - &g)));
        // Relative order for the geometric sum before shifting by t^-g.
        let relative = result_tau.shift(&g);
        let neg_eps = (-&eps).truncate(&relative);
        let mut acc = Self::one().truncate(&relative);
        let mut power = acc.clone();
        loop {
            power = (&power * &neg_eps).truncate(&relative);
            if power.terms.is_empty() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&c_inv).shift(&-g).truncate(&result_tau))
    }

    /// Rational power via the generalized binomial series.
    ///
    /// With leading term `c * t^g` the result has truncation order
    /// `min(work_tau, g*r + tau - g)`. Exact monomials, and exact series
    /// raised to non-negative integer powers, give exact results.
    pub fn pow(&self, r: &Rational, work_tau: &Rational) -> Result<Self> {
        if self.is_exact_zero() && r.is_positive() {
            return Ok(Self::zero());
        }
        let (c, g, eps) = self.factor_leading()?;
        if !r.is_integer() && c.signum() != Sign::Plus {
            return Err(Error::NonpositiveLeading);
        }
        let c_r = c.pow(r)?;
        let gr = &g * r;
        if eps.is_exact_zero() {
            return Ok(Self::term(c_r, gr));
        }
        if self.is_exact() && r.is_integer() && !r.is_negative() {
            return Ok(self.pow_exact_natural(r));
        }
        let result_tau = Tau::Finite(work_tau.clone()).min(self.tau.shift(&(&gr - &g)));
        let relative = result_tau.shift(&-&gr);
        let eps = eps.truncate(&relative);
        let mut acc = Self::one().truncate(&relative);
        let mut power = acc.clone();
        let mut binom = Rational::one();
        let mut k = Rational::zero();
        loop {
            binom = binom * (r - &k) / (&k + Rational::one());
            k += Rational::one();
            if binom.is_zero() {
                break;
            }
            power = (&power * &eps).truncate(&relative);
            if power.terms.is_empty() {
                break;
            }
            acc = &acc + &power.scale(&LogFieldElement::embed(binom.clone()));
        }
        Ok(acc.scale(&c_r).shift(&gr).truncate(&result_tau))
    }

    fn pow_exact_natural(&self, r: &Rational) -> Self {
        let mut k = r.to_integer();
        let two = num::BigInt::from(2);
        let mut base = self.clone();
        let mut acc = Self::one();
        while k.is_positive() {
            if (&k % &two).is_one() {
                acc = &acc * &base;
            }
            k /= &two;
            if k.is_positive() {
                base = &base * &base;
            }
        }
        acc
    }
}

impl<'a> Add<&'a HahnSeries> for &'a HahnSeries {
    type Output = HahnSeries;

    fn add(self, other: &HahnSeries) -> HahnSeries {
        let tau = self.tau.clone().min(other.tau.clone());
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let next = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.exp.cmp(&y.exp) {
                    Ordering::Less => a.next().cloned(),
                    Ordering::Greater => b.next().cloned(),
                    Ordering::Equal => {
                        let (x, y) = (a.next().unwrap(), b.next().unwrap());
                        let coeff = &x.coeff + &y.coeff;
                        if coeff.is_zero() {
                            continue;
                        }
                        Some(Term { exp: x.exp.clone(), coeff })
                    }
                },
                (Some(_), None) => a.next().cloned(),
                (None, Some(_)) => b.next().cloned(),
                (None, None) => None,
            };
            match next {
                Some(t) if tau.exceeds(&t.exp) => out.push(t),
                _ => break,
            }
        }
        HahnSeries { terms: out, tau }
    }
}

impl Neg for &HahnSeries {
    type Output = HahnSeries;

    fn neg(self) -> HahnSeries {
        let terms = self.terms.iter().map(|t| Term { exp: t.exp.clone(), coeff: -&t.coeff }).collect();
        HahnSeries { terms, tau: self.tau.clone() }
    }
}

impl Neg for HahnSeries {
    type Output = HahnSeries;

    fn neg(self) -> HahnSeries {
        -&self
    }
}

impl<'a> Sub<&'a HahnSeries> for &'a HahnSeries {
    type Output = HahnSeries;

    fn sub(self, other: &HahnSeries) -> HahnSeries {
        self + &(-other)
    }
}

impl<'a> Mul<&'a HahnSeries> for &'a HahnSeries {
    type Output = HahnSeries;

    fn mul(self, other: &HahnSeries) -> HahnSeries {
        // Unknown tails: a = A + O(t^tau_a), b = B + O(t^tau_b), so the product
        // is known below min(tau_a + low(b), tau_b + low(a), tau_a + tau_b).
        let tau = self
            .tau
            .plus(&other.known_low())
            .min(other.tau.plus(&self.known_low()))
            .min(self.tau.plus(&other.tau));
        let mut acc: BTreeMap<Rational, LogFieldElement> = BTreeMap::new();
        for x in &self.terms {
            for y in &other.terms {
                let e = &x.exp + &y.exp;
                // Exponents of `other` increase, so the rest are out of range too.
                if !tau.exceeds(&e) {
                    break;
                }
                let p = &x.coeff * &y.coeff;
                match acc.get_mut(&e) {
                    Some(slot) => *slot = &*slot + &p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { exp, coeff })
            .collect();
        HahnSeries { terms, tau }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<HahnSeries> for HahnSeries {
            type Output = HahnSeries;
            fn $m(self, other: HahnSeries) -> HahnSeries {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a HahnSeries> for HahnSeries {
            type Output = HahnSeries;
            fn $m(self, other: &'a HahnSeries) -> HahnSeries {
                (&self).$m(other)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);
