//! Batch substitution and extraction over many series at once.

use crate::embedding::{extract, substitute, ExpansionResult, Scale};
use crate::error::Result;
use crate::exec;
use crate::hahn_series::HahnSeries;
use crate::Rational;

pub fn substitute_all(series: &[HahnSeries], h: &Scale, work_tau: &Rational) -> Vec<Result<HahnSeries>> {
    exec::map(series, |a| substitute(a, h, work_tau))
}

pub fn extract_all(
    ys: &[HahnSeries],
    h: &Scale,
    max_terms: usize,
    work_tau: &Rational,
) -> Vec<Result<ExpansionResult>> {
    exec::map(ys, |y| extract(y, h, max_terms, work_tau))
}

/// `extract(substitute(a, h), h)` for each `(a, h)` pair.
pub fn round_trip_all(
    cases: &[(HahnSeries, Scale)],
    max_terms: usize,
    work_tau: &Rational,
) -> Vec<Result<ExpansionResult>> {
    exec::map(cases, |(a, h)| round_trip(a, h, max_terms, work_tau))
}

pub fn round_trip_all_sequential(
    cases: &[(HahnSeries, Scale)],
    max_terms: usize,
    work_tau: &Rational,
) -> Vec<Result<ExpansionResult>> {
    exec::map_sequential(cases, |(a, h)| round_trip(a, h, max_terms, work_tau))
}

fn round_trip(a: &HahnSeries, h: &Scale, max_terms: usize, work_tau: &Rational) -> Result<ExpansionResult> {
    let y = substitute(a, h, work_tau)?;
    extract(&y, h, max_terms, work_tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logfield::LogFieldElement;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn batch_matches_single_calls() {
        let h = Scale::new(HahnSeries::term(LogFieldElement::one(), q(2, 1))).unwrap();
        let series: Vec<HahnSeries> = (1..6)
            .map(|k| HahnSeries::term(LogFieldElement::from_integer(k), q(k, 3)))
            .collect();
        let subs = substitute_all(&series, &h, &q(8, 1));
        for (a, out) in series.iter().zip(&subs) {
            assert_eq!(out.as_ref().unwrap(), &substitute(a, &h, &q(8, 1)).unwrap());
        }
        let cases: Vec<_> = series.iter().map(|a| (a.clone(), h.clone())).collect();
        let par = round_trip_all(&cases, 5, &q(8, 1));
        let seq = round_trip_all_sequential(&cases, 5, &q(8, 1));
        assert_eq!(par, seq);
        for ((a, _), res) in cases.iter().zip(&par) {
            assert_eq!(&res.as_ref().unwrap().to_series(), a);
        }
        let ys: Vec<_> = subs.into_iter().map(Result::unwrap).collect();
        assert_eq!(extract_all(&ys, &h, 5, &q(8, 1)), seq);
    }
}
