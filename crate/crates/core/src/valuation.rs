//! Ultrametric geometry of the valued field of exact Hahn series.
//!
//! Distances `d(a, b) = e^(-v(a - b))` are never exponentiated: an
//! [`UltraDistance`] stores the valuation itself and orders in reverse.
//! Ball radii likewise live on the valuation scale, so the closed ball of
//! valuation-radius `r` around `c` is `{x : v(x - c) >= r}`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hahn_series::{HahnSeries, SeriesOrdering, ValuationValue};
use crate::logfield::LogFieldElement;
use crate::Rational;

/// Distance between two exact series, held as the valuation of their
/// difference. `None` is distance zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UltraDistance(Option<Rational>);

impl UltraDistance {
    pub fn zero() -> Self {
        UltraDistance(None)
    }

    /// Valuation of the difference; `None` when the points coincide.
    pub fn valuation(&self) -> Option<&Rational> {
        self.0.as_ref()
    }
}

impl PartialOrd for UltraDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UltraDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            // Larger valuation means smaller distance.
            (Some(a), Some(b)) => b.cmp(a),
        }
    }
}

fn exact_valuation(x: &HahnSeries) -> Result<Option<Rational>> {
    match x.valuation() {
        ValuationValue::Finite(r) => Ok(Some(r)),
        ValuationValue::Infinity => Ok(None),
        ValuationValue::UnknownBeyond(_) => Err(Error::InexactInput),
    }
}

pub fn dist(a: &HahnSeries, b: &HahnSeries) -> Result<UltraDistance> {
    if !a.is_exact() || !b.is_exact() {
        return Err(Error::InexactInput);
    }
    Ok(UltraDistance(exact_valuation(&(a - b))?))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BallKind {
    Open,
    Closed,
}

/// Ball `{x : v(x - center) >= radius_v}` (closed) or `> radius_v` (open).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ball {
    center: HahnSeries,
    radius_v: Rational,
    kind: BallKind,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BallRelation {
    Disjoint,
    FirstContainsSecond,
    SecondContainsFirst,
    Equal,
}

impl Ball {
    pub fn new(center: HahnSeries, radius_v: Rational, kind: BallKind) -> Result<Self> {
        if !center.is_exact() {
            return Err(Error::InexactInput);
        }
        Ok(Ball { center, radius_v, kind })
    }

    pub fn closed(center: HahnSeries, radius_v: Rational) -> Result<Self> {
        Self::new(center, radius_v, BallKind::Closed)
    }

    pub fn open(center: HahnSeries, radius_v: Rational) -> Result<Self> {
        Self::new(center, radius_v, BallKind::Open)
    }

    pub fn center(&self) -> &HahnSeries {
        &self.center
    }

    pub fn radius_v(&self) -> &Rational {
        &self.radius_v
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    /// Membership. For a truncated `x` only the lower bound `v >= tau` on
    /// `v(x - center)` is known, and `x` counts as a member only when that
    /// bound already decides it.
    pub fn contains(&self, x: &HahnSeries) -> bool {
        match (x - &self.center).valuation() {
            ValuationValue::Infinity => true,
            ValuationValue::Finite(v) | ValuationValue::UnknownBeyond(v) => match self.kind {
                BallKind::Closed => v >= self.radius_v,
                BallKind::Open => v > self.radius_v,
            },
        }
    }

    /// Orders concentric balls by size: a smaller radius is larger, and at
    /// equal radius the closed ball strictly contains the open one.
    fn size_cmp(&self, other: &Ball) -> Ordering {
        other.radius_v.cmp(&self.radius_v).then_with(|| match (self.kind, other.kind) {
            (BallKind::Closed, BallKind::Open) => Ordering::Greater,
            (BallKind::Open, BallKind::Closed) => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Two balls of an ultrametric space are disjoint or nested. They meet
    /// exactly when one contains the other's center, and then every point
    /// of the smaller is a center of the larger.
    pub fn relation(&self, other: &Ball) -> BallRelation {
        if !self.contains(&other.center) && !other.contains(&self.center) {
            return BallRelation::Disjoint;
        }
        match self.size_cmp(other) {
            Ordering::Greater => BallRelation::FirstContainsSecond,
            Ordering::Less => BallRelation::SecondContainsFirst,
            Ordering::Equal => BallRelation::Equal,
        }
    }
}

pub fn ball_contains(ball: &Ball, x: &HahnSeries) -> bool {
    ball.contains(x)
}

pub fn ball_relation(b1: &Ball, b2: &Ball) -> BallRelation {
    b1.relation(b2)
}

/// A closed order interval `[lo, hi]` with exact endpoints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lo: HahnSeries,
    hi: HahnSeries,
}

impl Interval {
    pub fn new(lo: HahnSeries, hi: HahnSeries) -> Result<Self> {
        if !lo.is_exact() || !hi.is_exact() {
            return Err(Error::InexactInput);
        }
        if lo.compare(&hi) == SeriesOrdering::Greater {
            return Err(Error::InvalidInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &HahnSeries {
        &self.lo
    }

    pub fn hi(&self) -> &HahnSeries {
        &self.hi
    }

    pub fn contains(&self, x: &HahnSeries) -> bool {
        matches!(self.lo.compare(x), SeriesOrdering::Less | SeriesOrdering::Equal)
            && matches!(x.compare(&self.hi), SeriesOrdering::Less | SeriesOrdering::Equal)
    }
}

fn check_strict_nesting(outer: &Ball, inner: &Ball) -> Result<()> {
    if outer.kind != BallKind::Closed || inner.kind != BallKind::Closed {
        return Err(Error::OpenBall);
    }
    if outer.relation(inner) != BallRelation::FirstContainsSecond {
        return Err(Error::NotStrictlyNested);
    }
    Ok(())
}

/// A point of `outer` outside `inner`, for strictly nested closed balls:
/// `center(inner) + t^radius(outer)`.
pub fn separating_point(outer: &Ball, inner: &Ball) -> Result<HahnSeries> {
    check_strict_nesting(outer, inner)?;
    let step = HahnSeries::term(LogFieldElement::one(), outer.radius_v.clone());
    let c = &inner.center + &step;
    debug_assert!(outer.contains(&c) && !inner.contains(&c));
    Ok(c)
}

/// A closed interval `I` with `inner ⊆ I ⊆ outer`.
///
/// With `c` the separating point, `a` the inner center and `s = |a - c|`,
/// this is `[c, a + s]` when `c < a` and `[a - s, c]` otherwise.
pub fn interval_between(outer: &Ball, inner: &Ball) -> Result<Interval> {
    let c = separating_point(outer, inner)?;
    let a = inner.center.clone();
    let s = (&a - &c).abs();
    let interval = match c.compare(&a) {
        SeriesOrdering::Less => Interval::new(c, &a + &s)?,
        _ => Interval::new(&a - &s, c)?,
    };
    // outer is convex, so containing both endpoints gives I ⊆ outer. Points
    // of inner are within valuation-distance > v(s) of a, hence within
    // order-distance s, which gives inner ⊆ [a - s, a + s] = I.
    assert!(outer.contains(&interval.lo) && outer.contains(&interval.hi));
    let vs = exact_valuation(&s)?.expect("separating point differs from the inner center");
    assert!(vs < inner.radius_v);
    assert!(interval.contains(&a));
    Ok(interval)
}

/// Whether the smallest of `v(a-b)`, `v(b-c)`, `v(a-c)` is attained at least
/// twice, i.e. the triangle `a, b, c` has two equal longest sides.
pub fn isosceles_check(a: &HahnSeries, b: &HahnSeries, c: &HahnSeries) -> Result<bool> {
    let mut d = [dist(a, b)?, dist(b, c)?, dist(a, c)?];
    d.sort();
    Ok(d[1] == d[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn tp(e: Rational) -> HahnSeries {
        HahnSeries::term(LogFieldElement::one(), e)
    }

    fn t() -> HahnSeries {
        HahnSeries::t()
    }

    fn closed(c: HahnSeries, r: Rational) -> Ball {
        Ball::closed(c, r).unwrap()
    }

    /// Points `sum c_i t^e_i` with small coefficients and exponents, used as
    /// a membership oracle.
    fn sample_points() -> Vec<HahnSeries> {
        let exps = [q(0, 1), q(1, 2), q(1, 1), q(3, 2), q(2, 1), q(3, 1)];
        let mut pts = vec![HahnSeries::zero()];
        for (i, e) in exps.iter().enumerate() {
            for c in [-1i64, 1, 2] {
                let m = HahnSeries::term(LogFieldElement::from_integer(c), e.clone());
                pts.push(m.clone());
                for f in &exps[i + 1..] {
                    pts.push(&m + &tp(f.clone()));
                }
            }
        }
        pts
    }

    fn relation_by_membership(b1: &Ball, b2: &Ball) -> BallRelation {
        let pts = sample_points();
        let in1: Vec<bool> = pts.iter().map(|p| b1.contains(p)).collect();
        let in2: Vec<bool> = pts.iter().map(|p| b2.contains(p)).collect();
        let both = in1.iter().zip(&in2).any(|(x, y)| *x && *y);
        let only1 = in1.iter().zip(&in2).any(|(x, y)| *x && !*y);
        let only2 = in1.iter().zip(&in2).any(|(x, y)| !*x && *y);
        match (both, only1, only2) {
            (false, _, _) => BallRelation::Disjoint,
            (true, false, false) => BallRelation::Equal,
            (true, true, false) => BallRelation::FirstContainsSecond,
            (true, false, true) => BallRelation::SecondContainsFirst,
            (true, true, true) => panic!("balls overlap without nesting"),
        }
    }

    #[test]
    fn dist_examples() {
        let x = &t() + &tp(q(5, 2));
        assert_eq!(dist(&x, &x).unwrap(), UltraDistance::zero());
        assert_eq!(dist(&HahnSeries::zero(), &t()).unwrap().valuation(), Some(&q(1, 1)));
        let y = &t() + &tp(q(3, 1));
        assert_eq!(dist(&t(), &y).unwrap().valuation(), Some(&q(3, 1)));
        assert!(dist(&t(), &t()).unwrap() < dist(&t(), &y).unwrap());
        assert!(dist(&HahnSeries::zero(), &t()).unwrap() > dist(&t(), &y).unwrap());
        assert_eq!(dist(&HahnSeries::unknown_beyond(q(1, 1)), &t()), Err(Error::InexactInput));
    }

    #[test]
    fn contains_examples() {
        let b = closed(HahnSeries::zero(), q(1, 1));
        assert!(b.contains(&t()));
        assert!(!b.contains(&HahnSeries::one()));
        let open = Ball::open(HahnSeries::zero(), q(1, 1)).unwrap();
        assert!(!open.contains(&t()));
        assert!(open.contains(&tp(q(3, 2))));
    }

    #[test]
    fn relation_examples() {
        let b1 = closed(HahnSeries::zero(), q(1, 1));
        let b2 = closed(t(), q(2, 1));
        assert_eq!(b1.relation(&b2), BallRelation::FirstContainsSecond);
        assert_eq!(relation_by_membership(&b1, &b2), BallRelation::FirstContainsSecond);
        assert_eq!(b2.relation(&b1), BallRelation::SecondContainsFirst);

        let b3 = closed(HahnSeries::one(), q(1, 1));
        assert_eq!(b1.relation(&b3), BallRelation::Disjoint);
        assert_eq!(relation_by_membership(&b1, &b3), BallRelation::Disjoint);

        let b4 = closed(tp(q(2, 1)), q(1, 1));
        assert_eq!(b1.relation(&b4), BallRelation::Equal);
        assert_eq!(relation_by_membership(&b1, &b4), BallRelation::Equal);

        let open = Ball::open(HahnSeries::zero(), q(1, 1)).unwrap();
        assert_eq!(b1.relation(&open), BallRelation::FirstContainsSecond);
        assert_eq!(relation_by_membership(&b1, &open), BallRelation::FirstContainsSecond);
    }

    #[test]
    fn separating_point_examples() {
        let outer = closed(HahnSeries::zero(), q(1, 1));
        let inner = closed(t(), q(2, 1));
        let c = separating_point(&outer, &inner).unwrap();
        assert_eq!(c, HahnSeries::term(LogFieldElement::from_integer(2), q(1, 1)));
        assert!(outer.contains(&c) && !inner.contains(&c));

        let outer = closed(HahnSeries::zero(), q(0, 1));
        let inner = closed(HahnSeries::zero(), q(5, 1));
        assert_eq!(separating_point(&outer, &inner).unwrap(), HahnSeries::one());

        assert_eq!(separating_point(&outer, &outer), Err(Error::NotStrictlyNested));
        let open = Ball::open(HahnSeries::zero(), q(5, 1)).unwrap();
        assert_eq!(separating_point(&outer, &open), Err(Error::OpenBall));
    }

    fn assert_sandwich(outer: &Ball, inner: &Ball, i: &Interval) {
        for p in sample_points() {
            let shifted = &p + inner.center();
            for x in [p, shifted] {
                if inner.contains(&x) {
                    assert!(i.contains(&x), "inner point {x:?} outside interval");
                }
                if i.contains(&x) {
                    assert!(outer.contains(&x), "interval point {x:?} outside outer ball");
                }
            }
        }
    }

    #[test]
    fn interval_between_examples() {
        let outer = closed(HahnSeries::zero(), q(1, 1));
        let inner = closed(t(), q(2, 1));
        let i = interval_between(&outer, &inner).unwrap();
        assert_eq!(i.lo(), &HahnSeries::zero());
        assert_eq!(i.hi(), &HahnSeries::term(LogFieldElement::from_integer(2), q(1, 1)));
        assert_sandwich(&outer, &inner, &i);

        let outer = closed(HahnSeries::zero(), q(0, 1));
        let inner = closed(t(), q(2, 1));
        let i = interval_between(&outer, &inner).unwrap();
        // c = t + 1 > t, s = 1, so I = [t - 1, 1 + t].
        assert_eq!(i.lo(), &(&t() - &HahnSeries::one()));
        assert_eq!(i.hi(), &(&t() + &HahnSeries::one()));
        assert_sandwich(&outer, &inner, &i);

        let outer = closed(HahnSeries::zero(), q(1, 1));
        let inner = closed(HahnSeries::zero(), q(7, 6));
        let i = interval_between(&outer, &inner).unwrap();
        assert_eq!(i.lo(), &-t());
        assert_eq!(i.hi(), &t());
        assert_sandwich(&outer, &inner, &i);
    }

    #[test]
    fn isosceles_examples() {
        let z = HahnSeries::zero();
        assert!(isosceles_check(&z, &t(), &(&t() + &tp(q(2, 1)))).unwrap());
        assert!(isosceles_check(&z, &z, &t()).unwrap());
        let pts = sample_points();
        for a in pts.iter().step_by(5) {
            for b in pts.iter().step_by(3) {
                for c in pts.iter().step_by(7) {
                    assert!(isosceles_check(a, b, c).unwrap());
                }
            }
        }
    }
}
