//! Random generators and independent oracles for the property suites.
//!
//! Nothing here is used by the kernel itself. The numeric oracle in
//! [`tower`] decides signs by evaluating log-monomials at a concrete tower
//! of huge reals, without consulting the dominance order.

pub mod suites;

use num::{BigInt, Zero};
use rand::Rng;

use crate::embedding::Scale;
use crate::hahn_series::{HahnSeries, Tau};
use crate::logfield::{LogExponentVector, LogFieldElement, LogPolynomial, TOWER_DEPTH};
use crate::Rational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational with numerator in `-max_num..=max_num` and denominator in
/// `1..=max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    rational(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=max_den))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = random_rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Exponent in `[lo, hi]` with denominator at most `max_den`.
pub fn random_exponent<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    rational(rng.gen_range(lo * d..=hi * d), d)
}

/// Shape of the random log-field elements.
#[derive(Clone, Copy, Debug)]
pub struct LogGen {
    /// Highest level `l_n` that may appear.
    pub levels: usize,
    /// Maximum number of monomials in numerator and denominator.
    pub max_terms: usize,
    /// Probability that an element is a fraction rather than a polynomial.
    pub fraction_prob: f64,
    /// Exponents of each `l_n` lie in `[-max_exp, max_exp]`.
    pub max_exp: i64,
    pub max_exp_den: i64,
    pub max_coeff: i64,
    pub max_coeff_den: i64,
}

impl Default for LogGen {
    fn default() -> Self {
        LogGen {
            levels: 3,
            max_terms: 2,
            fraction_prob: 0.3,
            max_exp: 2,
            max_exp_den: 2,
            max_coeff: 5,
            max_coeff_den: 3,
        }
    }
}

impl LogGen {
    pub fn exponent_vector<R: Rng>(&self, rng: &mut R) -> LogExponentVector {
        let mut exps: [Rational; TOWER_DEPTH] = std::array::from_fn(|_| Rational::zero());
        for e in exps.iter_mut().take(self.levels) {
            if rng.gen_bool(0.5) {
                *e = random_exponent(rng, -self.max_exp, self.max_exp, self.max_exp_den);
            }
        }
        LogExponentVector::from_array(exps)
    }

    pub fn polynomial<R: Rng>(&self, rng: &mut R) -> LogPolynomial {
        let n = rng.gen_range(1..=self.max_terms);
        LogPolynomial::from_terms(
            (0..n).map(|_| {
                (random_nonzero_rational(rng, self.max_coeff, self.max_coeff_den), self.exponent_vector(rng))
            }),
        )
    }

    pub fn nonzero_polynomial<R: Rng>(&self, rng: &mut R) -> LogPolynomial {
        loop {
            let p = self.polynomial(rng);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn element<R: Rng>(&self, rng: &mut R) -> LogFieldElement {
        let num = self.polynomial(rng);
        if rng.gen_bool(self.fraction_prob) {
            let den = self.nonzero_polynomial(rng);
            LogFieldElement::from_fraction(num, den).expect("nonzero denominator")
        } else {
            LogFieldElement::from_polynomial(num)
        }
    }

    pub fn nonzero_element<R: Rng>(&self, rng: &mut R) -> LogFieldElement {
        loop {
            let x = self.element(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Elements whose sign the numeric oracle with base `tower::BASE` is
    /// guaranteed to decide correctly: all levels may appear, but `l8` and
    /// `l9` only with integer exponents in `[-2, 2]`. Coefficients are
    /// multiples of 1/2 bounded by 3, so with at most three monomials the
    /// subordinate terms sum to at most 0.6 of the leading one.
    pub fn tower_safe() -> Self {
        LogGen {
            levels: TOWER_DEPTH,
            max_terms: 3,
            fraction_prob: 0.3,
            max_exp: 2,
            max_exp_den: 6,
            max_coeff: 3,
            max_coeff_den: 2,
        }
    }

    pub fn tower_safe_element<R: Rng>(&self, rng: &mut R) -> LogFieldElement {
        let poly = |rng: &mut R| loop {
            let n = rng.gen_range(1..=self.max_terms);
            let terms = (0..n).map(|_| {
                let mut v = self.exponent_vector(rng).as_slice().to_vec();
                for e in v.iter_mut().skip(7) {
                    *e = rational(rng.gen_range(-2..=2), 1);
                }
                let c = rational(rng.gen_range(1..=self.max_coeff), rng.gen_range(1..=self.max_coeff_den));
                let c = if rng.gen_bool(0.5) { -c } else { c };
                (c, LogExponentVector::from_array(v.try_into().expect("tower depth")))
            });
            let p = LogPolynomial::from_terms(terms.collect::<Vec<_>>());
            if !p.is_zero() {
                return p;
            }
        };
        let num = poly(rng);
        if rng.gen_bool(self.fraction_prob) {
            LogFieldElement::from_fraction(num, poly(rng)).expect("nonzero denominator")
        } else {
            LogFieldElement::from_polynomial(num)
        }
    }
}

/// Shape of random series.
#[derive(Clone, Copy, Debug)]
pub struct SeriesGen {
    pub max_terms: usize,
    pub min_exp: i64,
    pub max_exp: i64,
    pub max_exp_den: i64,
    /// Probability that a coefficient is a general log-field element rather
    /// than a rational.
    pub log_coeff_prob: f64,
    pub coeffs: LogGen,
}

impl Default for SeriesGen {
    fn default() -> Self {
        SeriesGen {
            max_terms: 6,
            min_exp: -3,
            max_exp: 3,
            max_exp_den: 6,
            log_coeff_prob: 0.25,
            coeffs: LogGen { levels: 2, max_terms: 2, fraction_prob: 0.15, ..LogGen::default() },
        }
    }
}

impl SeriesGen {
    pub fn coeff<R: Rng>(&self, rng: &mut R) -> LogFieldElement {
        if rng.gen_bool(self.log_coeff_prob) {
            self.coeffs.nonzero_element(rng)
        } else {
            LogFieldElement::embed(random_nonzero_rational(rng, self.coeffs.max_coeff, self.coeffs.max_coeff_den))
        }
    }

    /// Exact series with between 0 and `max_terms` terms.
    pub fn exact<R: Rng>(&self, rng: &mut R) -> HahnSeries {
        let n = rng.gen_range(0..=self.max_terms);
        self.with_terms(rng, n)
    }

    pub fn nonzero_exact<R: Rng>(&self, rng: &mut R) -> HahnSeries {
        loop {
            let n = rng.gen_range(1..=self.max_terms);
            let s = self.with_terms(rng, n);
            if !s.is_exact_zero() {
                return s;
            }
        }
    }

    fn with_terms<R: Rng>(&self, rng: &mut R, n: usize) -> HahnSeries {
        let terms: Vec<_> = (0..n)
            .map(|_| (random_exponent(rng, self.min_exp, self.max_exp, self.max_exp_den), self.coeff(rng)))
            .collect();
        HahnSeries::from_terms(terms, Tau::Infinite)
    }

    /// Possibly truncated series: exact with probability 1/2, otherwise cut
    /// at a random order inside the exponent range.
    pub fn maybe_truncated<R: Rng>(&self, rng: &mut R) -> HahnSeries {
        let s = self.exact(rng);
        if rng.gen_bool(0.5) {
            s
        } else {
            let tau = random_exponent(rng, self.min_exp, self.max_exp + 1, self.max_exp_den);
            s.truncate(&Tau::Finite(tau))
        }
    }

    /// Element of the valuation ring: nonnegative exponents, with a
    /// nonzero-probability constant term.
    pub fn valuation_ring<R: Rng>(&self, rng: &mut R) -> HahnSeries {
        let gen = SeriesGen { min_exp: 0, ..*self };
        let mut s = gen.exact(rng);
        if rng.gen_bool(0.6) {
            s = &s + &HahnSeries::from_scalar(self.coeff(rng));
        }
        s
    }

    /// A series in `[0, max_exp]` with a rational constant term and strictly
    /// positive other exponents.
    pub fn rational_head<R: Rng>(&self, rng: &mut R) -> (Rational, HahnSeries) {
        let head = random_rational(rng, self.coeffs.max_coeff, self.coeffs.max_coeff_den);
        let n = rng.gen_range(0..=self.max_terms);
        let tail: Vec<_> = (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=self.max_exp_den);
                (rational(rng.gen_range(1..=self.max_exp * d), d), self.coeff(rng))
            })
            .collect();
        (head, HahnSeries::from_terms(tail, Tau::Infinite))
    }
}

/// Random monic scale with at most `max_terms` terms and valuation drawn
/// from `valuations`.
pub fn random_monic_scale<R: Rng>(rng: &mut R, max_terms: usize, valuations: &[Rational]) -> Scale {
    let g = valuations[rng.gen_range(0..valuations.len())].clone();
    let n = rng.gen_range(0..max_terms);
    let mut terms = vec![(g.clone(), LogFieldElement::one())];
    for _ in 0..n {
        let gap = random_exponent(rng, 0, 2, 2);
        if gap.is_zero() {
            continue;
        }
        let coeff = LogFieldElement::embed(random_nonzero_rational(rng, 3, 2));
        terms.push((&g + gap, coeff));
    }
    // A repeated gap may add to the leading coefficient; the leading term is
    // unique because every gap is strictly positive.
    let h = HahnSeries::from_terms(terms, Tau::Infinite);
    Scale::new(h).expect("leading term t^g with g > 0 and coefficient 1")
}

/// Evaluate a log-field element with each `l_n` replaced by a finite real
/// `values[n-1]`. An independent check of rational-function identities.
pub fn eval_f64(x: &LogFieldElement, values: &[f64; TOWER_DEPTH]) -> f64 {
    let poly = |p: &LogPolynomial| -> f64 {
        p.terms()
            .iter()
            .map(|m| {
                let c = rational_to_f64(m.coeff());
                m.exps().as_slice().iter().zip(values).fold(c, |acc, (e, v)| acc * v.powf(rational_to_f64(e)))
            })
            .sum()
    };
    poly(x.numerator()) / poly(x.denominator())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Natural log of a positive big integer, valid far beyond f64 range.
fn ln_bigint(n: &BigInt) -> f64 {
    use num::ToPrimitive;
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit value");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub mod tower {
    //! Signed reals of the form `±exp(exp(...exp(v)))`, enough to evaluate
    //! monomials in `λ1 > λ2 > ... > λ9` with `λ9 = BASE` and
    //! `λ(n-1) = e^λn`, a tower far beyond floating-point range.

    use std::cmp::Ordering;

    use num::bigint::Sign;
    use num::Signed;

    use super::{ln_bigint, rational_to_f64};
    use crate::logfield::{LogFieldElement, LogMonomial, LogPolynomial, TOWER_DEPTH};

    /// Value of the deepest tower level.
    pub const BASE: f64 = 20.0;

    /// `sign * exp^level(v)` with `v >= 0`; level 0 is an ordinary float.
    #[derive(Clone, Copy, Debug, PartialEq)]
    pub struct TowerNum {
        pub neg: bool,
        pub level: u32,
        pub v: f64,
    }

    const EXP_LIMIT: f64 = 700.0;

    impl TowerNum {
        pub fn from_f64(x: f64) -> Self {
            TowerNum { neg: x < 0.0, level: 0, v: x.abs() }
        }

        pub fn zero() -> Self {
            Self::from_f64(0.0)
        }

        pub fn is_zero(&self) -> bool {
            self.level == 0 && self.v == 0.0
        }

        fn negate(self) -> Self {
            TowerNum { neg: !self.neg, ..self }
        }

        /// Natural log of `|self|`; `self` must be nonzero.
        pub fn ln_abs(self) -> Self {
            match self.level {
                0 => Self::from_f64(self.v.ln()),
                1 => TowerNum { neg: false, level: 0, v: self.v },
                k => TowerNum { neg: false, level: k - 1, v: self.v },
            }
        }

        /// `e^self`, always positive.
        pub fn exp(self) -> Self {
            if self.neg {
                // e^(-|x|) <= 1; beyond level 0 it underflows to zero.
                return if self.level == 0 { Self::from_f64((-self.v).exp()) } else { Self::zero() };
            }
            match self.level {
                0 if self.v <= EXP_LIMIT => Self::from_f64(self.v.exp()),
                0 => TowerNum { neg: false, level: 1, v: self.v },
                k => TowerNum { neg: false, level: k + 1, v: self.v },
            }
        }

        /// Compare `|self|` with `|other|`.
        pub fn cmp_abs(self, other: Self) -> Ordering {
            if self.is_zero() || other.is_zero() {
                return (!self.is_zero()).cmp(&!other.is_zero());
            }
            if self.level == 0 && other.level == 0 {
                return self.v.total_cmp(&other.v);
            }
            let (a, b) = (self.ln_abs(), other.ln_abs());
            signed_cmp(a, b)
        }

        /// Signed sum; `None` when the two magnitudes cancel beyond what the
        /// representation can resolve.
        pub fn add(self, other: Self) -> Option<Self> {
            if self.is_zero() {
                return Some(other);
            }
            if other.is_zero() {
                return Some(self);
            }
            if self.level == 0 && other.level == 0 {
                let sum = signed_f64(self) + signed_f64(other);
                return Some(Self::from_f64(sum));
            }
            let (big, small) = match self.cmp_abs(other) {
                Ordering::Less => (other, self),
                _ => (self, other),
            };
            let same_sign = big.neg == small.neg;
            // ratio = |small| / |big| = exp(ln|small| - ln|big|) <= 1
            let log_ratio = small.ln_abs().add(big.ln_abs().negate())?;
            let ratio = log_ratio.exp();
            debug_assert_eq!(ratio.level, 0);
            if ratio.v == 0.0 {
                return Some(big);
            }
            let factor = if same_sign { ratio.v.ln_1p() } else { (-ratio.v).ln_1p() };
            if !factor.is_finite() {
                return None;
            }
            let ln_mag = big.ln_abs().add(Self::from_f64(factor))?;
            let mag = ln_mag.exp();
            Some(TowerNum { neg: big.neg, ..mag })
        }

        /// Multiply by a float.
        pub fn scale(self, p: f64) -> Option<Self> {
            if p == 0.0 || self.is_zero() {
                return Some(Self::zero());
            }
            if self.level == 0 {
                return Some(Self::from_f64(signed_f64(self) * p));
            }
            let ln_mag = self.ln_abs().add(Self::from_f64(p.abs().ln()))?;
            let mag = ln_mag.exp();
            Some(TowerNum { neg: self.neg != (p < 0.0), ..mag })
        }
    }

    fn signed_f64(x: TowerNum) -> f64 {
        debug_assert_eq!(x.level, 0);
        if x.neg {
            -x.v
        } else {
            x.v
        }
    }

    fn signed_cmp(a: TowerNum, b: TowerNum) -> Ordering {
        match (a.neg, b.neg) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => a.cmp_abs(b),
            (true, true) => b.cmp_abs(a),
        }
    }

    /// `[λ1, ..., λ9]`.
    pub fn lambdas() -> [TowerNum; TOWER_DEPTH] {
        let mut out = [TowerNum::zero(); TOWER_DEPTH];
        out[TOWER_DEPTH - 1] = TowerNum::from_f64(BASE);
        for n in (0..TOWER_DEPTH - 1).rev() {
            out[n] = out[n + 1].exp();
        }
        out
    }

    /// `ln λn` for `n = 1..=9`: `λ(n+1)`, and `ln BASE` at the bottom.
    fn log_lambdas() -> [TowerNum; TOWER_DEPTH] {
        let l = lambdas();
        std::array::from_fn(|i| if i + 1 < TOWER_DEPTH { l[i + 1] } else { TowerNum::from_f64(BASE.ln()) })
    }

    fn ln_abs_rational(r: &crate::Rational) -> f64 {
        ln_bigint(&r.numer().abs()) - ln_bigint(&r.denom().abs())
    }

    /// `ln |m1 / m2|` evaluated on the tower. The exponent difference is
    /// formed exactly first; only the resulting monomial is evaluated.
    fn ln_ratio(m1: &LogMonomial, m2: &LogMonomial) -> Option<TowerNum> {
        let logs = log_lambdas();
        let mut acc = TowerNum::from_f64(ln_abs_rational(m1.coeff()) - ln_abs_rational(m2.coeff()));
        // Deepest levels first, so the large terms are added last.
        for i in (0..TOWER_DEPTH).rev() {
            let d = &m1.exps().as_slice()[i] - &m2.exps().as_slice()[i];
            acc = acc.add(logs[i].scale(rational_to_f64(&d))?)?;
        }
        Some(acc)
    }

    /// Sign of a polynomial on the tower: the term of largest magnitude is
    /// found numerically, then `sign(P) = sign(T_max) * sign(1 + sum T_j/T_max)`.
    pub fn polynomial_sign(p: &LogPolynomial) -> Option<Sign> {
        let terms = p.terms();
        if terms.is_empty() {
            return Some(Sign::NoSign);
        }
        let mut best = 0;
        for j in 1..terms.len() {
            let r = ln_ratio(&terms[j], &terms[best])?;
            if !r.neg && !r.is_zero() {
                best = j;
            } else if r.is_zero() {
                return None;
            }
        }
        let mut rest = 0.0;
        for (j, t) in terms.iter().enumerate() {
            if j == best {
                continue;
            }
            let r = ln_ratio(t, &terms[best])?;
            if !r.neg {
                return None;
            }
            let mag = r.exp();
            let same = t.coeff().is_positive() == terms[best].coeff().is_positive();
            rest += if same { mag.v } else { -mag.v };
        }
        // Subordinate terms must not come close to cancelling the leader.
        if 1.0 + rest <= 0.05 {
            return None;
        }
        Some(if terms[best].coeff().is_positive() { Sign::Plus } else { Sign::Minus })
    }

    /// Sign of a log-field element on the tower, or `None` if the tower is
    /// too shallow to decide it.
    pub fn sign(x: &LogFieldElement) -> Option<Sign> {
        Some(polynomial_sign(x.numerator())? * polynomial_sign(x.denominator())?)
    }
}
