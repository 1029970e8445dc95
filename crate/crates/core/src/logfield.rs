//! Exact arithmetic in the coefficient field `Q(l1, ..., l9)`.
//!
//! The symbols `l1, l2, ...` are the iterated logarithms of an infinitely
//! large quantity: `l(n+1) = ln(l(n))`. Every `ln` is infinitely larger than
//! any power of the next one, so monomials `c * l1^p1 * ... * l9^p9` are
//! totally ordered by comparing exponent vectors lexicographically, with the
//! `l1` exponent most significant. A polynomial is positive exactly when its
//! dominant term has a positive coefficient.
//!
//! Elements are kept as unreduced fractions of canonical polynomials.
//! Equality and order are decided exactly by cross-multiplication; no
//! multivariate gcd is ever taken.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::Sign;
use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Number of iterated-logarithm symbols available.
pub const TOWER_DEPTH: usize = 9;

/// Exponents of `l1..l9`, position 0 holding the exponent of `l1`.
///
/// The derived `Ord` is lexicographic from position 0, which is exactly the
/// dominance order: `u > w` means the monomial with exponents `u` is
/// infinitely larger than the one with exponents `w`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogExponentVector([Rational; TOWER_DEPTH]);

impl LogExponentVector {
    pub fn zero() -> Self {
        LogExponentVector(std::array::from_fn(|_| Rational::zero()))
    }

    /// The exponent vector of `l_level^exp`. `level` is 1-based.
    pub fn unit(level: usize, exp: Rational) -> Result<Self> {
        if !(1..=TOWER_DEPTH).contains(&level) {
            return Err(Error::LogLevelOutOfRange(level));
        }
        let mut v = Self::zero();
        v.0[level - 1] = exp;
        Ok(v)
    }

    pub fn from_array(exps: [Rational; TOWER_DEPTH]) -> Self {
        LogExponentVector(exps)
    }

    /// Exponent of `l_level` (1-based).
    pub fn get(&self, level: usize) -> &Rational {
        &self.0[level - 1]
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn plus(&self, other: &Self) -> Self {
        LogExponentVector(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    fn minus(&self, other: &Self) -> Self {
        LogExponentVector(std::array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    fn scaled(&self, r: &Rational) -> Self {
        LogExponentVector(std::array::from_fn(|i| &self.0[i] * r))
    }
}

impl fmt::Debug for LogExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|e| !e.is_zero()).map_or(0, |i| i + 1);
        f.debug_list().entries(self.0[..last].iter().map(|e| e.to_string())).finish()
    }
}

/// Compare two exponent vectors by dominance.
///
/// `Greater` means the monomial with exponents `u` dominates the one with
/// exponents `w` (their ratio is infinitely large).
pub fn dominance_compare(u: &LogExponentVector, w: &LogExponentVector) -> Ordering {
    u.cmp(w)
}

/// A nonzero rational multiple of a product of powers of `l1..l9`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogMonomial {
    coeff: Rational,
    exps: LogExponentVector,
}

impl LogMonomial {
    /// Returns `None` when `coeff` is zero.
    pub fn new(coeff: Rational, exps: LogExponentVector) -> Option<Self> {
        if coeff.is_zero() {
            None
        } else {
            Some(LogMonomial { coeff, exps })
        }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn exps(&self) -> &LogExponentVector {
        &self.exps
    }

    fn mul(&self, other: &Self) -> Self {
        LogMonomial { coeff: &self.coeff * &other.coeff, exps: self.exps.plus(&other.exps) }
    }

    fn recip(&self) -> Self {
        LogMonomial { coeff: self.coeff.recip(), exps: LogExponentVector::zero().minus(&self.exps) }
    }
}

/// A finite sum of log-monomials in canonical form: terms sorted strictly
/// descending by dominance, no repeated exponent vector, no zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LogPolynomial {
    terms: Vec<LogMonomial>,
}

impl LogPolynomial {
    pub fn zero() -> Self {
        LogPolynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_monomial(LogMonomial::new(c, LogExponentVector::zero()))
    }

    fn from_monomial(m: Option<LogMonomial>) -> Self {
        LogPolynomial { terms: m.into_iter().collect() }
    }

    /// Collects arbitrary terms into canonical form.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, LogExponentVector)>,
    {
        let mut acc: BTreeMap<LogExponentVector, Rational> = BTreeMap::new();
        for (c, e) in terms {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter_map(|(exps, coeff)| LogMonomial::new(coeff, exps))
            .collect();
        LogPolynomial { terms }
    }

    pub fn terms(&self) -> &[LogMonomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The dominant term, if any.
    pub fn leading(&self) -> Option<&LogMonomial> {
        self.terms.first()
    }

    pub fn as_monomial(&self) -> Option<&LogMonomial> {
        match self.terms.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.as_monomial(), Some(m) if m.coeff.is_one() && m.exps.is_zero())
    }

    pub fn signum(&self) -> Sign {
        match self.leading() {
            None => Sign::NoSign,
            Some(m) if m.coeff.is_positive() => Sign::Plus,
            Some(_) => Sign::Minus,
        }
    }

    fn add(&self, other: &Self) -> Self {
        // Merge of two descending lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.exps.cmp(&b.exps) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    if let Some(m) = LogMonomial::new(&a.coeff + &b.coeff, a.exps.clone()) {
                        out.push(m);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        LogPolynomial { terms: out }
    }

    fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|m| LogMonomial { coeff: -&m.coeff, exps: m.exps.clone() })
            .collect();
        LogPolynomial { terms }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if let Some(m) = other.as_monomial() {
            return self.mul_monomial(m);
        }
        if let Some(m) = self.as_monomial() {
            return other.mul_monomial(m);
        }
        let products = self.terms.iter().flat_map(|a| {
            other.terms.iter().map(move |b| {
                let p = a.mul(b);
                (p.coeff, p.exps)
            })
        });
        Self::from_terms(products)
    }

    // Multiplying by a monomial preserves the dominance order of the terms.
    fn mul_monomial(&self, m: &LogMonomial) -> Self {
        LogPolynomial { terms: self.terms.iter().map(|a| a.mul(m)).collect() }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// or the division is abandoned.
    ///
    /// Long division by leading terms. Every quotient term lies at or above
    /// `last(self) / last(d)`, which bounds the search from below; since
    /// the order is not well-founded the step count is capped as well.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let lead = d.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.terms.len() == 1 {
            return Some(self.mul_monomial(&lead.recip()));
        }
        let floor = self.terms.last()?.exps.minus(&d.terms.last()?.exps);
        let cap = 4 * (self.terms.len() + 1) * (d.terms.len() + 1) + 64;
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(r) = rem.leading() {
            let exps = r.exps.minus(&lead.exps);
            if exps < floor || quotient.len() >= cap {
                return None;
            }
            let m = LogMonomial { coeff: &r.coeff / &lead.coeff, exps };
            rem = rem.add(&d.mul_monomial(&m).neg());
            quotient.push(m);
        }
        Some(LogPolynomial { terms: quotient })
    }

    fn pow_u(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = LogPolynomial::constant(Rational::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// An element of `Q(l1, ..., l9)`, stored as `num / den`.
///
/// Equality is value equality (decided by cross-multiplication), and the
/// total order is the one induced by dominance.
#[derive(Clone)]
pub struct LogFieldElement {
    num: LogPolynomial,
    den: LogPolynomial,
}

impl LogFieldElement {
    pub fn zero() -> Self {
        Self::embed(Rational::zero())
    }

    pub fn one() -> Self {
        Self::embed(Rational::one())
    }

    /// The constant `c`, with all-zero exponent vector.
    pub fn embed(c: Rational) -> Self {
        LogFieldElement { num: LogPolynomial::constant(c), den: LogPolynomial::constant(Rational::one()) }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::embed(Rational::from_integer(BigInt::from(n)))
    }

    /// The iterated logarithm `l_level` (1-based).
    pub fn log(level: usize) -> Result<Self> {
        Ok(Self::monomial(Rational::one(), LogExponentVector::unit(level, Rational::one())?))
    }

    pub fn monomial(coeff: Rational, exps: LogExponentVector) -> Self {
        Self::from_polynomial(LogPolynomial::from_monomial(LogMonomial::new(coeff, exps)))
    }

    pub fn from_polynomial(num: LogPolynomial) -> Self {
        LogFieldElement { num, den: LogPolynomial::constant(Rational::one()) }
    }

    /// Builds `num / den`.
    pub fn from_fraction(num: LogPolynomial, den: LogPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LogFieldElement { num, den }.normalized())
    }

    pub fn numerator(&self) -> &LogPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LogPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The value as a single monomial, when it is one.
    pub fn as_monomial(&self) -> Option<LogMonomial> {
        let (n, d) = (self.num.as_monomial()?, self.den.as_monomial()?);
        Some(LogMonomial { coeff: &n.coeff / &d.coeff, exps: n.exps.minus(&d.exps) })
    }

    /// The value as a rational constant, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_monomial().filter(|m| m.exps.is_zero()).map(|m| m.coeff)
    }

    // Zero gets denominator 1; a denominator dividing the numerator, in
    // particular a monomial one, is divided out; otherwise the denominator
    // is scaled to leading coefficient 1.
    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            self.den = LogPolynomial::constant(Rational::one());
            return self;
        }
        if self.den.is_one() {
            return self;
        }
        if let Some(d) = self.den.as_monomial() {
            self.num = self.num.mul_monomial(&d.recip());
            self.den = LogPolynomial::constant(Rational::one());
            return self;
        }
        let lead = self.den.terms[0].coeff.clone();
        if !lead.is_one() {
            let scale = LogMonomial { coeff: lead.recip(), exps: LogExponentVector::zero() };
            self.num = self.num.mul_monomial(&scale);
            self.den = self.den.mul_monomial(&scale);
        }
        self
    }

    /// Sign of the value: the product of the signs of the dominant
    /// coefficients of numerator and denominator.
    pub fn signum(&self) -> Sign {
        self.num.signum() * self.den.signum()
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Sign::Minus {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LogFieldElement { num: self.den.clone(), den: self.num.clone() }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Exact rational power.
    ///
    /// Integer powers are always available for nonzero elements. A
    /// non-integer power `p/q` is taken only of a single monomial
    /// `c * prod(l_n^e_n)` with `c > 0` a perfect `q`-th power.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if r.is_integer() {
            let k = r.to_integer();
            if self.is_zero() {
                return match k.sign() {
                    Sign::Plus => Ok(Self::zero()),
                    Sign::NoSign => Ok(Self::one()),
                    Sign::Minus => Err(Error::DivisionByZero),
                };
            }
            let base = if k.is_negative() { self.inv()? } else { self.clone() };
            let k = u64::try_from(k.abs()).map_err(|_| {
                Error::NotExactlyRepresentable(format!("exponent {r} is too large"))
            })?;
            let out = LogFieldElement { num: base.num.pow_u(k), den: base.den.pow_u(k) };
            return Ok(out.normalized());
        }
        let m = self.as_monomial().ok_or_else(|| {
            Error::NotExactlyRepresentable(format!("non-integer power {r} of a non-monomial"))
        })?;
        if !m.coeff.is_positive() {
            return Err(Error::NotExactlyRepresentable(format!(
                "non-integer power {r} of a non-positive coefficient"
            )));
        }
        let q = u32::try_from(r.denom()).map_err(|_| {
            Error::NotExactlyRepresentable(format!("root index of {r} is too large"))
        })?;
        let root = rational_root(&m.coeff, q).ok_or_else(|| {
            Error::NotExactlyRepresentable(format!("{} has no exact rational {q}-th root", m.coeff))
        })?;
        let p = Rational::from_integer(r.numer().clone());
        let coeff = Self::embed(root).pow(&p)?.as_rational().expect("power of a constant");
        Ok(Self::monomial(coeff, m.exps.scaled(r)))
    }
}

fn integer_root(n: &BigInt, q: u32) -> Option<BigInt> {
    let root = n.nth_root(q);
    (num::pow(root.clone(), q as usize) == *n).then_some(root)
}

/// The exact positive `q`-th root of a positive rational, if it exists.
fn rational_root(c: &Rational, q: u32) -> Option<Rational> {
    Some(Rational::new(integer_root(c.numer(), q)?, integer_root(c.denom(), q)?))
}

impl PartialEq for LogFieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for LogFieldElement {}

impl PartialOrd for LogFieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogFieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Debug for LogFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn poly(p: &LogPolynomial) -> String {
            if p.is_zero() {
                return "0".into();
            }
            let parts: Vec<String> =
                p.terms.iter().map(|m| format!("{}*{:?}", m.coeff, m.exps)).collect();
            parts.join(" + ")
        }
        if self.den.is_one() {
            write!(f, "({})", poly(&self.num))
        } else {
            write!(f, "({}) / ({})", poly(&self.num), poly(&self.den))
        }
    }
}

impl From<Rational> for LogFieldElement {
    fn from(c: Rational) -> Self {
        Self::embed(c)
    }
}

impl<'a> Add<&'a LogFieldElement> for &'a LogFieldElement {
    type Output = LogFieldElement;

    fn add(self, other: &LogFieldElement) -> LogFieldElement {
        if self.den == other.den {
            let out = LogFieldElement { num: self.num.add(&other.num), den: self.den.clone() };
            return out.normalized();
        }
        // Keep the larger denominator when one divides the other, so sums of
        // many fractions over powers of one polynomial stay small.
        if let Some(k) = self.den.div_exact(&other.den) {
            let num = self.num.add(&other.num.mul(&k));
            return LogFieldElement { num, den: self.den.clone() }.normalized();
        }
        if let Some(k) = other.den.div_exact(&self.den) {
            let num = other.num.add(&self.num.mul(&k));
            return LogFieldElement { num, den: other.den.clone() }.normalized();
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        LogFieldElement { num, den: self.den.mul(&other.den) }.normalized()
    }
}

impl<'a> Sub<&'a LogFieldElement> for &'a LogFieldElement {
    type Output = LogFieldElement;

    fn sub(self, other: &LogFieldElement) -> LogFieldElement {
        self + &(-other)
    }
}

impl<'a> Mul<&'a LogFieldElement> for &'a LogFieldElement {
    type Output = LogFieldElement;

    fn mul(self, other: &LogFieldElement) -> LogFieldElement {
        if self.is_zero() || other.is_zero() {
            return LogFieldElement::zero();
        }
        LogFieldElement { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }.normalized()
    }
}

/// Panics on division by zero, like integer division; use
/// [`LogFieldElement::checked_div`] for a fallible quotient.
impl<'a> Div<&'a LogFieldElement> for &'a LogFieldElement {
    type Output = LogFieldElement;

    fn div(self, other: &LogFieldElement) -> LogFieldElement {
        self.checked_div(other).expect("division by zero in LogFieldElement")
    }
}

impl Neg for &LogFieldElement {
    type Output = LogFieldElement;

    fn neg(self) -> LogFieldElement {
        LogFieldElement { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for LogFieldElement {
    type Output = LogFieldElement;

    fn neg(self) -> LogFieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<LogFieldElement> for LogFieldElement {
            type Output = LogFieldElement;
            fn $m(self, other: LogFieldElement) -> LogFieldElement {
                (&self).$m(&other)
            }
        }
        impl<'a> $tr<&'a LogFieldElement> for LogFieldElement {
            type Output = LogFieldElement;
            fn $m(self, other: &'a LogFieldElement) -> LogFieldElement {
                (&self).$m(other)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Zero for LogFieldElement {
    fn zero() -> Self {
        LogFieldElement::zero()
    }

    fn is_zero(&self) -> bool {
        LogFieldElement::is_zero(self)
    }
}

impl One for LogFieldElement {
    fn one() -> Self {
        LogFieldElement::one()
    }
}
