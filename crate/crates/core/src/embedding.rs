//! Quasi-standard part, the substitution embedding `A ↦ A(h)` and its
//! explicit inverse.
//!
//! The field of representatives is the copy of `Q(l1, ..., l9)` sitting at
//! exponent zero. Every element `x` of the valuation ring (`v(x) >= 0`)
//! splits uniquely as `x = head + tail` with `head` a representative and
//! `v(tail) > 0`; the quasi-standard part is `head`.
//!
//! For a scale `h` (positive, `v(h) > 0`) the map `A ↦ A(h) = sum a_k h^r_k`
//! is an ordered field embedding with `v(A(h)) = r_0 * v(h)`. [`extract`]
//! recovers `A` from `y = A(h)` term by term:
//!
//! ```text
//! r_n = v(y - sum_{k<n} a_k h^r_k) / v(h)
//! a_n = st((y - sum_{k<n} a_k h^r_k) / h^r_n)
//! ```
//!
//! stopping when the remainder is exactly zero.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hahn_series::{HahnSeries, Tau, ValuationValue};
use crate::logfield::LogFieldElement;
use crate::Rational;

/// Coefficient of `t^0` of an element of the valuation ring.
pub fn quasi_st(x: &HahnSeries) -> Result<LogFieldElement> {
    if let Some(lead) = x.leading() {
        if lead.exp.is_negative() {
            return Err(Error::NotInValuationRing(lead.exp.clone()));
        }
    }
    x.coeff_at(&Rational::zero()).ok_or_else(|| {
        Error::InsufficientPrecision(format!(
            "truncation order {} does not determine the t^0 coefficient",
            x.tau()
        ))
    })
}

/// Splits `x = head + tail` with `head` a representative and `v(tail) > 0`.
pub fn decompose(x: &HahnSeries) -> Result<(LogFieldElement, HahnSeries)> {
    let head = quasi_st(x)?;
    let tail = x - &HahnSeries::from_scalar(head.clone());
    debug_assert!(tail.leading().map_or(true, |t| t.exp.is_positive()));
    Ok((head, tail))
}

/// A positive element of strictly positive valuation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scale {
    h: HahnSeries,
    valuation: Rational,
}

impl Scale {
    pub fn new(h: HahnSeries) -> Result<Self> {
        let lead = h
            .leading()
            .ok_or_else(|| Error::InvalidScale("scale has no known leading term".into()))?;
        if !lead.exp.is_positive() {
            return Err(Error::InvalidScale(format!(
                "scale must have positive valuation, got {}",
                lead.exp
            )));
        }
        if lead.coeff.signum() != num::bigint::Sign::Plus {
            return Err(Error::InvalidScale("scale must be positive".into()));
        }
        let valuation = lead.exp.clone();
        Ok(Scale { h, valuation })
    }

    /// The canonical scale `t`.
    pub fn canonical() -> Self {
        Scale { h: HahnSeries::t(), valuation: Rational::one() }
    }

    pub fn series(&self) -> &HahnSeries {
        &self.h
    }

    pub fn valuation(&self) -> &Rational {
        &self.valuation
    }

    /// Leading coefficient is the constant 1.
    pub fn is_monic(&self) -> bool {
        self.h.leading().is_some_and(|t| t.coeff.is_one())
    }
}

/// The pairs `(r_k, a_k)` recovered by [`extract`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExpansionResult {
    pub pairs: Vec<(Rational, LogFieldElement)>,
    /// Precision, on the scale of the input `y`, up to which substituting
    /// the pairs back reproduces `y`.
    pub achieved_tau: Tau,
    /// The remainder became exactly zero.
    pub terminated: bool,
    /// `v(h)` of the scale the expansion was taken in.
    pub scale_valuation: Rational,
}

impl ExpansionResult {
    /// The series `sum a_k t^r_k`, truncated where the expansion stopped
    /// being determined.
    pub fn to_series(&self) -> HahnSeries {
        let tau = if self.terminated {
            Tau::Infinite
        } else {
            self.achieved_tau.scale(&self.scale_valuation.recip())
        };
        HahnSeries::from_terms(self.pairs.iter().cloned(), tau)
    }
}

/// The embedding `A ↦ A(h)`, truncated at `work_tau`.
pub fn substitute(a: &HahnSeries, h: &Scale, work_tau: &Rational) -> Result<HahnSeries> {
    if a.is_exact_zero() {
        return Ok(HahnSeries::zero());
    }
    if !h.is_monic() && a.terms().iter().any(|t| !t.exp.is_integer()) {
        return Err(Error::NonMonicScale);
    }
    let g = h.valuation();
    // An unknown tail O(t^tau) of A becomes O(h^tau) = O(t^(g*tau)).
    let bound = Tau::Finite(work_tau.clone()).min(a.tau().scale(g));
    let mut acc = HahnSeries::zero();
    let mut dropped = false;
    for term in a.terms() {
        if !bound.exceeds(&(&term.exp * g)) {
            dropped = true;
            break;
        }
        let power = h.series().pow(&term.exp, work_tau)?;
        acc = &acc + &power.scale(&term.coeff);
    }
    // Exact inputs whose powers all came out exact stay exact.
    let out = if acc.is_exact() && a.is_exact() && !dropped { acc } else { acc.truncate(&bound) };
    if let (Some(lead_a), Some(lead_out)) = (a.leading(), out.leading()) {
        assert_eq!(lead_out.exp, &lead_a.exp * g, "v(A(h)) must equal r0 * v(h)");
    }
    Ok(out)
}

/// Inverse of [`substitute`]: re-expands `y` in powers of the monic scale
/// `h`, emitting at most `max_terms` pairs. Powers of `h` that are infinite
/// series are computed to `work_tau`.
pub fn extract(
    y: &HahnSeries,
    h: &Scale,
    max_terms: usize,
    work_tau: &Rational,
) -> Result<ExpansionResult> {
    if !h.is_monic() {
        return Err(Error::NonMonicScale);
    }
    let g = h.valuation();
    let work = match y.tau() {
        Tau::Finite(t) if t < work_tau => t.clone(),
        _ => work_tau.clone(),
    };
    let mut pairs = Vec::new();
    let mut remainder = y.clone();
    let (achieved_tau, terminated) = loop {
        let e = match remainder.valuation() {
            ValuationValue::Infinity => break (Tau::Infinite, true),
            ValuationValue::UnknownBeyond(tau) => break (Tau::Finite(tau), false),
            ValuationValue::Finite(e) => e,
        };
        if pairs.len() >= max_terms {
            break (Tau::Finite(e), false);
        }
        let r = &e / g;
        // Only the t^-e leading part of h^-r matters for the t^0
        // coefficient, so any precision above -e will do.
        let h_neg = h.series().pow(&-&r, &(-&e + g))?;
        let a = quasi_st(&(&remainder * &h_neg))?;
        let lead = &remainder.leading().expect("finite valuation implies a term").coeff;
        assert!(!a.is_zero() && &a == lead, "extracted coefficient must be the leading one");
        let step = h.series().pow(&r, &work)?.scale(&a);
        remainder = &remainder - &step;
        pairs.push((r, a));
    };
    Ok(ExpansionResult { pairs, achieved_tau, terminated, scale_valuation: g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hahn_series::SeriesOrdering;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn lf(n: i64) -> LogFieldElement {
        LogFieldElement::from_integer(n)
    }

    fn tp(e: Rational) -> HahnSeries {
        HahnSeries::term(lf(1), e)
    }

    fn l(n: usize) -> LogFieldElement {
        LogFieldElement::log(n).unwrap()
    }

    #[test]
    fn quasi_st_examples() {
        // ln s = -l1, so st(ln s + 5/2 + s) = ln s + 5/2.
        let head = &(-l(1)) + &LogFieldElement::embed(q(5, 2));
        let x = &HahnSeries::from_scalar(head.clone()) + &HahnSeries::t();
        assert_eq!(quasi_st(&x).unwrap(), head);
        assert!(quasi_st(&HahnSeries::t()).unwrap().is_zero());
        assert_eq!(quasi_st(&tp(q(-1, 1))), Err(Error::NotInValuationRing(q(-1, 1))));
        let coarse = HahnSeries::t().truncate(&Tau::Finite(q(0, 1)));
        assert!(matches!(quasi_st(&coarse), Err(Error::InsufficientPrecision(_))));
        // v >= 0 is still only a lower bound here; nothing is known at t^0.
        assert!(matches!(
            quasi_st(&HahnSeries::unknown_beyond(q(-1, 2))),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let head = &lf(3) + &l(1).inv().unwrap();
        let x = &HahnSeries::from_scalar(head.clone()) + &HahnSeries::t();
        let (h, tail) = decompose(&x).unwrap();
        assert_eq!(h, head);
        assert_eq!(tail, HahnSeries::t());
        assert_eq!(&HahnSeries::from_scalar(h) + &tail, x);

        let (h, tail) = decompose(&tp(q(2, 1))).unwrap();
        assert!(h.is_zero());
        assert_eq!(tail, tp(q(2, 1)));

        let (h, tail) = decompose(&HahnSeries::from_scalar(l(2))).unwrap();
        assert_eq!(h, l(2));
        assert!(tail.is_exact_zero());
    }

    #[test]
    fn scale_validation() {
        assert!(Scale::new(HahnSeries::t()).unwrap().is_monic());
        assert!(matches!(Scale::new(HahnSeries::one()), Err(Error::InvalidScale(_))));
        assert!(matches!(Scale::new(-HahnSeries::t()), Err(Error::InvalidScale(_))));
        assert!(matches!(Scale::new(HahnSeries::zero()), Err(Error::InvalidScale(_))));
        let two_t = HahnSeries::term(lf(2), q(1, 1));
        assert!(!Scale::new(two_t).unwrap().is_monic());
    }

    #[test]
    fn substitute_examples() {
        let s = Scale::canonical();
        assert_eq!(substitute(&HahnSeries::t(), &s, &q(8, 1)).unwrap(), HahnSeries::t());

        let a = &tp(q(1, 2)) + &HahnSeries::t();
        let h = Scale::new(tp(q(2, 1))).unwrap();
        assert_eq!(substitute(&a, &h, &q(8, 1)).unwrap(), &HahnSeries::t() + &tp(q(2, 1)));

        // A = 1/(1 - t) = 1 + t + t^2 + ..., h = t^3.
        let geometric = (&HahnSeries::one() - &HahnSeries::t()).inv(&q(3, 1)).unwrap();
        let h = Scale::new(tp(q(3, 1))).unwrap();
        let out = substitute(&geometric, &h, &q(7, 1)).unwrap();
        let expect = HahnSeries::from_terms(
            [(q(0, 1), lf(1)), (q(3, 1), lf(1)), (q(6, 1), lf(1))],
            Tau::Finite(q(7, 1)),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn substitute_non_monic() {
        let h = Scale::new(HahnSeries::term(lf(2), q(1, 1))).unwrap();
        assert_eq!(substitute(&tp(q(1, 2)), &h, &q(4, 1)), Err(Error::NonMonicScale));
        let out = substitute(&tp(q(2, 1)), &h, &q(4, 1)).unwrap();
        assert_eq!(out, HahnSeries::term(lf(4), q(2, 1)));
    }

    #[test]
    fn extract_examples() {
        let y = &HahnSeries::t() + &tp(q(2, 1));
        let h = Scale::new(tp(q(2, 1))).unwrap();
        let res = extract(&y, &h, 10, &q(8, 1)).unwrap();
        assert_eq!(res.pairs, vec![(q(1, 2), lf(1)), (q(1, 1), lf(1))]);
        assert!(res.terminated);
        assert_eq!(substitute(&res.to_series(), &h, &q(8, 1)).unwrap(), y);

        let res = extract(&HahnSeries::zero(), &Scale::canonical(), 10, &q(8, 1)).unwrap();
        assert!(res.pairs.is_empty() && res.terminated);

        let y = HahnSeries::from_terms((0..4).map(|k| (q(k, 1), lf(1))), Tau::Finite(q(4, 1)));
        let res = extract(&y, &Scale::canonical(), 10, &q(8, 1)).unwrap();
        assert_eq!(res.pairs, (0..4).map(|k| (q(k, 1), lf(1))).collect::<Vec<_>>());
        assert_eq!(res.achieved_tau, Tau::Finite(q(4, 1)));
        assert!(!res.terminated);
    }

    #[test]
    fn extract_stops_at_max_terms() {
        let y = HahnSeries::from_terms((0..6).map(|k| (q(k, 1), lf(k + 1))), Tau::Infinite);
        let res = extract(&y, &Scale::canonical(), 3, &q(8, 1)).unwrap();
        assert_eq!(res.pairs.len(), 3);
        assert_eq!(res.achieved_tau, Tau::Finite(q(3, 1)));
        assert!(!res.terminated);
    }

    #[test]
    fn extract_with_multi_term_scale() {
        // h = t + t^2 is monic; y = h^(1/2) + 3 h^2 re-expands to those pairs.
        let h = Scale::new(&HahnSeries::t() + &tp(q(2, 1))).unwrap();
        let a = HahnSeries::from_terms([(q(1, 2), lf(1)), (q(2, 1), lf(3))], Tau::Infinite);
        let y = substitute(&a, &h, &q(6, 1)).unwrap();
        let res = extract(&y, &h, 20, &q(6, 1)).unwrap();
        assert_eq!(&res.pairs[..2], &[(q(1, 2), lf(1)), (q(2, 1), lf(3))]);
        assert!(!res.terminated);
        // Everything beyond the recovered pairs sits at or past the precision.
        assert_eq!(res.pairs.len(), 2);
        assert_eq!(res.achieved_tau, Tau::Finite(q(6, 1)));
    }

    #[test]
    fn extract_requires_monic() {
        let h = Scale::new(HahnSeries::term(lf(2), q(1, 1))).unwrap();
        assert_eq!(extract(&HahnSeries::t(), &h, 3, &q(4, 1)), Err(Error::NonMonicScale));
    }

    #[test]
    fn embedding_preserves_order() {
        let h = Scale::new(&tp(q(1, 2)) + &tp(q(1, 1))).unwrap();
        let a = &HahnSeries::term(lf(-1), q(1, 1)) + &tp(q(3, 2));
        let b = tp(q(2, 1));
        let (ma, mb) = (substitute(&a, &h, &q(6, 1)).unwrap(), substitute(&b, &h, &q(6, 1)).unwrap());
        assert_eq!(a.compare(&b), SeriesOrdering::Less);
        assert_eq!(ma.compare(&mb), SeriesOrdering::Less);
    }
}
