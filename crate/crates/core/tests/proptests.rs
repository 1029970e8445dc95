use hahnfield::{
    dist, quasi_st, substitute, HahnSeries, LogExponentVector, LogFieldElement, Rational, Scale, SeriesOrdering, Tau,
    ValuationValue,
};
use num::{BigInt, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn coeff() -> impl Strategy<Value = LogFieldElement> {
    (rational(), 0usize..=2, -2i64..=2).prop_map(|(c, level, e)| {
        let exps = if level == 0 {
            LogExponentVector::zero()
        } else {
            LogExponentVector::unit(level, q(e, 1)).unwrap()
        };
        LogFieldElement::monomial(c, exps)
    })
}

fn exact_series() -> impl Strategy<Value = HahnSeries> {
    prop::collection::vec((rational(), coeff()), 0..6).prop_map(|terms| HahnSeries::from_terms(terms, Tau::Infinite))
}

fn series() -> impl Strategy<Value = HahnSeries> {
    (exact_series(), prop::option::of(rational())).prop_map(|(s, tau)| match tau {
        Some(t) => s.truncate(&Tau::Finite(t)),
        None => s,
    })
}

proptest! {
    #[test]
    fn truncate_is_idempotent_and_commutes(s in series(), a in rational(), b in rational()) {
        let (ta, tb) = (Tau::Finite(a), Tau::Finite(b));
        prop_assert_eq!(s.truncate(&ta).truncate(&ta), s.truncate(&ta));
        prop_assert_eq!(s.truncate(&ta).truncate(&tb), s.truncate(&tb).truncate(&ta));
    }

    #[test]
    fn terms_are_sorted_and_below_tau(s in series()) {
        for w in s.terms().windows(2) {
            prop_assert!(w[0].exp < w[1].exp);
        }
        for t in s.terms() {
            prop_assert!(s.tau().exceeds(&t.exp));
            prop_assert!(!t.coeff.is_zero());
        }
    }

    #[test]
    fn product_tau_bounds_both_sides(a in series(), b in series()) {
        let p = &a * &b;
        if let ValuationValue::Finite(v) = p.valuation() {
            prop_assert!(p.tau().exceeds(&v));
        }
        prop_assert!(*p.tau() <= a.tau().plus(b.tau()));
    }

    #[test]
    fn subtraction_compares_consistently(a in exact_series(), b in exact_series()) {
        let d = &a - &b;
        let expected = match d.signum() {
            Some(num::bigint::Sign::Plus) => SeriesOrdering::Greater,
            Some(num::bigint::Sign::Minus) => SeriesOrdering::Less,
            _ => SeriesOrdering::Equal,
        };
        prop_assert_eq!(a.compare(&b), expected);
    }

    #[test]
    fn distance_is_symmetric(a in exact_series(), b in exact_series()) {
        prop_assert_eq!(dist(&a, &b).unwrap(), dist(&b, &a).unwrap());
        prop_assert_eq!(dist(&a, &a).unwrap(), hahnfield::UltraDistance::zero());
    }

    #[test]
    fn monomials_invert_exactly(c in coeff(), e in rational()) {
        prop_assume!(!c.is_zero());
        let m = HahnSeries::term(c, e);
        let inv = m.inv(&q(0, 1)).unwrap();
        prop_assert!(inv.is_exact());
        prop_assert_eq!(&m * &inv, HahnSeries::one());
    }

    #[test]
    fn quasi_st_reads_the_constant_term(s in exact_series(), c in coeff()) {
        let shifted = match s.leading() {
            Some(t) => s.shift(&(q(1, 3) - &t.exp)),
            None => s,
        };
        let x = &shifted + &HahnSeries::from_scalar(c.clone());
        prop_assert_eq!(quasi_st(&x).unwrap(), c);
    }

    #[test]
    fn canonical_scale_is_the_identity(s in exact_series()) {
        prop_assert_eq!(substitute(&s, &Scale::canonical(), &q(30, 1)).unwrap(), s);
    }

    #[test]
    fn integer_powers_match_repeated_products(s in exact_series(), k in 0u32..4) {
        prop_assume!(!s.is_exact_zero());
        let mut expected = HahnSeries::one();
        for _ in 0..k {
            expected = &expected * &s;
        }
        let got = s.pow(&Rational::from_integer(k.into()), &q(0, 1)).unwrap();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn zero_is_exact_and_has_infinite_valuation(s in exact_series()) {
        let z = &s - &s;
        prop_assert!(z.is_exact_zero());
        prop_assert_eq!(z.valuation(), ValuationValue::Infinity);
        prop_assert!(z.coeff_at(&Rational::zero()).unwrap().is_zero());
    }
}
