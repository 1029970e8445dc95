//! Property suites shared by the integration tests and the acceptance run.
//!
//! Sample `i` of a suite is drawn from its own generator seeded by
//! `(seed, i)`, so samples are independent of scheduling and a failure can
//! be replayed alone. Samples are checked through [`crate::exec::map`].

use num::bigint::Sign;
use num::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{random_monic_scale, random_rational, rational, tower, LogGen, SeriesGen};
use crate::embedding::{decompose, extract, quasi_st, substitute};
use crate::exec;
use crate::hahn_series::{HahnSeries, SeriesOrdering, ValuationValue};
use crate::logfield::{dominance_compare, LogFieldElement, TOWER_DEPTH};
use crate::valuation::{dist, interval_between, isosceles_check, separating_point, Ball, BallRelation};
use crate::Rational;

/// Number of samples checked, or a description of the first failure.
pub type SuiteResult = Result<usize, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn rng_for(seed: u64, i: usize) -> StdRng {
    StdRng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs `check` on samples `0..n`.
pub fn run<F>(seed: u64, n: usize, check: F) -> SuiteResult
where
    F: Fn(usize, &mut StdRng) -> Result<(), String> + Sync + Send,
{
    let idx: Vec<usize> = (0..n).collect();
    let results = exec::map(&idx, |&i| check(i, &mut rng_for(seed, i)).map_err(|e| format!("sample {i}: {e}")));
    results.into_iter().collect::<Result<Vec<()>, String>>().map(|v| v.len())
}

fn val(x: &HahnSeries) -> Result<Rational, String> {
    match x.valuation() {
        ValuationValue::Finite(r) => Ok(r),
        other => Err(format!("expected a finite valuation, got {other} for {x:?}")),
    }
}

fn eq_up_to_common_tau(a: &HahnSeries, b: &HahnSeries) -> bool {
    let tau = a.tau().clone().min(b.tau().clone());
    a.truncate(&tau) == b.truncate(&tau)
}

fn has_no_known_terms(x: &HahnSeries) -> bool {
    x.terms().is_empty()
}

fn is_positive(x: &HahnSeries) -> bool {
    x.signum() == Some(Sign::Plus)
}

fn monomial(c: Rational, e: Rational) -> HahnSeries {
    HahnSeries::term(LogFieldElement::embed(c), e)
}

// ---------------------------------------------------------------------------
// Valuation

/// Valuation axioms on random pairs of nonzero exact series.
pub fn valuation_axioms(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen::default();
    run(seed, n, |_, rng| {
        let x = gen.nonzero_exact(rng);
        let y = gen.nonzero_exact(rng);
        let (vx, vy) = (val(&x)?, val(&y)?);

        ensure!(HahnSeries::zero().valuation() == ValuationValue::Infinity, "v(0) must be infinite");
        ensure!((&x - &x).valuation() == ValuationValue::Infinity, "v(x - x) must be infinite");

        let prod = &x * &y;
        ensure!(val(&prod)? == &vx + &vy, "v(xy) = {} but v(x) + v(y) = {}", val(&prod)?, &vx + &vy);

        let sum = &x + &y;
        let min = (&vx).min(&vy).clone();
        match sum.valuation() {
            ValuationValue::Infinity => ensure!(x == -&y, "x + y vanished but x != -y"),
            ValuationValue::Finite(v) => {
                ensure!(v >= min, "v(x + y) = {v} < min = {min}");
                if vx != vy {
                    ensure!(v == min, "v(x) != v(y) but v(x + y) = {v} != {min}");
                }
            }
            other => return Err(format!("exact sum has valuation {other}")),
        }

        match x.abs().compare(&y.abs()) {
            SeriesOrdering::Less => ensure!(vx >= vy, "|x| < |y| but v(x) = {vx} < v(y) = {vy}"),
            SeriesOrdering::Greater => ensure!(vy >= vx, "|y| < |x| but v(y) = {vy} < v(x) = {vx}"),
            SeriesOrdering::Equal => ensure!(vx == vy, "|x| = |y| with different valuations"),
            SeriesOrdering::Indeterminate => return Err("exact comparison was indeterminate".into()),
        }

        ensure!(val(&HahnSeries::one())?.is_zero(), "v(1) != 0");
        ensure!(val(&-&x)? == vx, "v(-x) != v(x)");
        let work = vx.abs() + rational(1, 2);
        let inv = x.inv(&work).map_err(|e| e.to_string())?;
        ensure!(val(&inv)? == -&vx, "v(1/x) = {} != -v(x) = {}", val(&inv)?, -&vx);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Field axioms

/// Field axioms for series on random triples; half the samples carry
/// truncated inputs and are compared up to the common truncation order.
/// Every tenth sample also checks the inverse contract, and every tenth
/// (offset by one) the power/root round trip.
pub fn series_field_axioms(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen::default();
    run(seed, n, |i, rng| {
        let truncated = rng.gen_bool(0.5);
        let draw = |rng: &mut StdRng| if truncated { gen.maybe_truncated(rng) } else { gen.exact(rng) };
        let (a, b, c) = (draw(rng), draw(rng), draw(rng));
        let same = |l: &HahnSeries, r: &HahnSeries, law: &str| -> Result<(), String> {
            if truncated {
                ensure!(eq_up_to_common_tau(l, r), "{law} fails up to common tau: {l:?} vs {r:?}");
            } else {
                ensure!(l == r, "{law} fails: {l:?} vs {r:?}");
            }
            Ok(())
        };
        same(&(&(&a + &b) + &c), &(&a + &(&b + &c)), "associativity of +")?;
        same(&(&a + &b), &(&b + &a), "commutativity of +")?;
        same(&(&(&a * &b) * &c), &(&a * &(&b * &c)), "associativity of *")?;
        same(&(&a * &b), &(&b * &a), "commutativity of *")?;
        same(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c)), "distributivity")?;
        same(&(&a * &HahnSeries::one()), &a, "multiplicative identity")?;
        same(&(&a + &HahnSeries::zero()), &a, "additive identity")?;
        ensure!(has_no_known_terms(&(&a - &a)), "a - a has known terms");

        if i % 10 == 0 {
            let a = gen.nonzero_exact(rng);
            let g = val(&a)?;
            let work = g.abs() + rational(rng.gen_range(1..=4), 2);
            let inv = a.inv(&work).map_err(|e| e.to_string())?;
            let err = &(&a * &inv) - &HahnSeries::one();
            ensure!(has_no_known_terms(&err), "a * inv(a) - 1 = {err:?}");
        }
        if i % 10 == 1 {
            let small = SeriesGen { max_terms: 4, min_exp: 0, max_exp: 2, max_exp_den: 3, log_coeff_prob: 0.0, ..gen };
            let raw = small.nonzero_exact(rng);
            let lead = raw.leading().expect("nonzero").coeff.inv().map_err(|e| e.to_string())?;
            let a = raw.scale(&lead);
            let g = val(&a)?;
            let p = [2, 3, 5][rng.gen_range(0..3)];
            let work = &g * rational(p, 1) + Rational::from_integer(1.into());
            let b = a.pow(&rational(p, 1), &work).map_err(|e| e.to_string())?;
            let back = b.pow(&rational(1, p), &(&g + rational(1, 1))).map_err(|e| e.to_string())?;
            ensure!(back.tau().exceeds(&g), "root lost all precision: {back:?}");
            ensure!(eq_up_to_common_tau(&back, &a), "(a^{p})^(1/{p}) = {back:?}, a = {a:?}");
        }
        Ok(())
    })
}

/// Total order on exact series, compatible with `+` and `*`.
pub fn series_order(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen::default();
    run(seed, n, |_, rng| {
        let (a, b) = (gen.exact(rng), gen.exact(rng));
        let ab = a.compare(&b);
        ensure!(ab != SeriesOrdering::Indeterminate, "exact comparison indeterminate");
        let ba = b.compare(&a).to_ordering().expect("exact");
        ensure!(ab.to_ordering() == Some(ba.reverse()), "compare is not antisymmetric");
        if is_positive(&a) && is_positive(&b) {
            ensure!(is_positive(&(&a + &b)), "a, b > 0 but a + b <= 0");
            ensure!(is_positive(&(&a * &b)), "a, b > 0 but ab <= 0");
        }
        Ok(())
    })
}

/// Field axioms, order and inverse laws in the coefficient field.
pub fn logfield_axioms(seed: u64, n: usize) -> SuiteResult {
    let gen = LogGen::default();
    run(seed, n, |_, rng| {
        let (a, b, c) = (gen.element(rng), gen.element(rng), gen.element(rng));
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "associativity of +");
        ensure!(&a + &b == &b + &a, "commutativity of +");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "associativity of *");
        ensure!(&a * &b == &b * &a, "commutativity of *");
        ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "distributivity");
        ensure!((&a - &a).is_zero(), "a - a != 0");
        ensure!(&a * &LogFieldElement::one() == a, "multiplicative identity");
        if !a.is_zero() {
            let inv = a.inv().map_err(|e| e.to_string())?;
            ensure!((&a * &inv).is_one(), "a * a^-1 != 1 for a = {a:?}");
        }
        ensure!(a.cmp(&b) == b.cmp(&a).reverse(), "order is not antisymmetric");
        ensure!((a < b) == ((&b - &a).signum() == Sign::Plus), "order disagrees with sign of b - a");
        if a.signum() == Sign::Plus && b.signum() == Sign::Plus {
            ensure!((&a + &b).signum() == Sign::Plus, "a, b > 0 but a + b <= 0");
            ensure!((&a * &b).signum() == Sign::Plus, "a, b > 0 but ab <= 0");
        }
        if a < b {
            ensure!(&a + &c < &b + &c, "a < b but a + c >= b + c");
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Ultrametric geometry

/// Exact series with valuation at least `r`, or exact zero.
fn perturbation(gen: &SeriesGen, rng: &mut StdRng, r: &Rational) -> HahnSeries {
    let s = gen.exact(rng);
    match s.leading() {
        None => s,
        Some(lead) => {
            let lift = r - &lead.exp + rational(rng.gen_range(0..=2), 2);
            s.shift(&lift)
        }
    }
}

fn sample_points(centers: &[&HahnSeries], radii: &[&Rational]) -> Vec<HahnSeries> {
    let mut out = Vec::new();
    for c in centers {
        out.push((*c).clone());
        for r in radii {
            for dr in [rational(-1, 2), rational(0, 1), rational(1, 2)] {
                for k in [1, -2] {
                    out.push(*c + &monomial(rational(k, 1), *r + &dr));
                }
            }
        }
    }
    out
}

fn random_radius(rng: &mut StdRng) -> Rational {
    random_rational(rng, 6, 2)
}

/// Ultrametric inequality, isosceles triangles, ball dichotomy with a
/// membership oracle on sampled points, and center invariance.
pub fn ultrametric(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen { coeffs: LogGen { levels: 1, ..LogGen::default() }, ..SeriesGen::default() };
    run(seed, n, |_, rng| {
        let (a, b, c) = (gen.exact(rng), gen.exact(rng), gen.exact(rng));
        let d = |x: &HahnSeries, y: &HahnSeries| dist(x, y).map_err(|e| e.to_string());
        let (dab, dbc, dac) = (d(&a, &b)?, d(&b, &c)?, d(&a, &c)?);
        ensure!(dac <= dab.clone().max(dbc.clone()), "d(a,c) > max(d(a,b), d(b,c))");
        ensure!(isosceles_check(&a, &b, &c).map_err(|e| e.to_string())?, "triangle is not isosceles");

        let r1 = random_radius(rng);
        let r2 = random_radius(rng);
        let c1 = a;
        let c2 = if rng.gen_bool(0.7) {
            let w = random_radius(rng);
            &c1 + &perturbation(&gen, rng, &w)
        } else {
            b
        };
        let b1 = Ball::closed(c1.clone(), r1.clone()).map_err(|e| e.to_string())?;
        let b2 = Ball::closed(c2.clone(), r2.clone()).map_err(|e| e.to_string())?;
        let rel = b1.relation(&b2);
        let points = sample_points(&[&c1, &c2], &[&r1, &r2]);
        for x in &points {
            let (in1, in2) = (b1.contains(x), b2.contains(x));
            let ok = match rel {
                BallRelation::Disjoint => !(in1 && in2),
                BallRelation::FirstContainsSecond => !in2 || in1,
                BallRelation::SecondContainsFirst => !in1 || in2,
                BallRelation::Equal => in1 == in2,
            };
            ensure!(ok, "relation {rel:?} contradicted by point {x:?}");
        }
        // Strict containment is witnessed by a point of the larger ball
        // outside the smaller one.
        let witness = |outer: &Ball, inner: &Ball| {
            let x = inner.center() + &monomial(rational(1, 1), outer.radius_v().clone());
            outer.contains(&x) && !inner.contains(&x)
        };
        match rel {
            BallRelation::FirstContainsSecond => ensure!(witness(&b1, &b2), "containment not strict"),
            BallRelation::SecondContainsFirst => ensure!(witness(&b2, &b1), "containment not strict"),
            BallRelation::Disjoint => ensure!(!b1.contains(&c2) && !b2.contains(&c1), "disjoint balls share a center"),
            BallRelation::Equal => ensure!(r1 == r2, "equal balls with different radii"),
        }

        let x = &c1 + &perturbation(&gen, rng, &r1);
        ensure!(b1.contains(&x), "perturbed center left the ball");
        let moved = Ball::closed(x, r1.clone()).map_err(|e| e.to_string())?;
        ensure!(b1.relation(&moved) == BallRelation::Equal, "center invariance fails");
        Ok(())
    })
}

/// Strictly nested closed balls: the separating point and the interval
/// between them, checked on endpoints and sampled members.
pub fn nested_intervals(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen { coeffs: LogGen { levels: 2, ..LogGen::default() }, ..SeriesGen::default() };
    run(seed, n, |_, rng| {
        let c = gen.exact(rng);
        let r_outer = random_radius(rng);
        let r_inner = &r_outer + rational(rng.gen_range(1..=6), rng.gen_range(1..=3));
        let a = &c + &perturbation(&gen, rng, &r_outer);
        let outer = Ball::closed(c, r_outer.clone()).map_err(|e| e.to_string())?;
        let inner = Ball::closed(a.clone(), r_inner.clone()).map_err(|e| e.to_string())?;

        let p = separating_point(&outer, &inner).map_err(|e| e.to_string())?;
        ensure!(outer.contains(&p) && !inner.contains(&p), "separating point misplaced");

        let interval = interval_between(&outer, &inner).map_err(|e| e.to_string())?;
        ensure!(outer.contains(interval.lo()) && outer.contains(interval.hi()), "interval leaves the outer ball");
        ensure!(interval.contains(&a), "interval misses the inner center");
        let mid = (interval.lo() + interval.hi()).scale(&LogFieldElement::embed(rational(1, 2)));
        ensure!(outer.contains(&mid), "interval midpoint leaves the outer ball");
        for _ in 0..4 {
            let x = &a + &perturbation(&gen, rng, &r_inner);
            ensure!(inner.contains(&x), "perturbation left the inner ball");
            ensure!(interval.contains(&x), "inner point {x:?} outside the interval");
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Quasi-standard part

/// The closing examples: `st(-l1 + r + t) = -l1 + r` and `st(t) = 0`.
pub fn quasi_st_examples() -> Result<(), String> {
    let l1 = LogFieldElement::log(1).map_err(|e| e.to_string())?;
    for r in [rational(5, 2), rational(0, 1), rational(-7, 3), rational(1, 1)] {
        let head = &(-&l1) + &LogFieldElement::embed(r.clone());
        let x = &HahnSeries::from_scalar(head.clone()) + &HahnSeries::t();
        let st = quasi_st(&x).map_err(|e| e.to_string())?;
        ensure!(st == head, "st(-l1 + {r} + t) = {st:?}");
    }
    let st = quasi_st(&HahnSeries::t()).map_err(|e| e.to_string())?;
    ensure!(st.is_zero(), "st(t) = {st:?}");
    Ok(())
}

/// Homomorphism, fixed points, idempotence, rational heads and uniqueness
/// of the decomposition on random valuation-ring elements.
pub fn quasi_st_properties(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen::default();
    run(seed, n, |_, rng| {
        let st = |x: &HahnSeries| quasi_st(x).map_err(|e| e.to_string());
        let (x, y) = (gen.valuation_ring(rng), gen.valuation_ring(rng));
        let (sx, sy) = (st(&x)?, st(&y)?);
        ensure!(st(&(&x + &y))? == &sx + &sy, "st(x + y) != st(x) + st(y)");
        ensure!(st(&(&x * &y))? == &sx * &sy, "st(xy) != st(x) st(y)");

        let c = gen.coeffs.element(rng);
        ensure!(st(&HahnSeries::from_scalar(c.clone()))? == c, "st(c) != c");
        ensure!(st(&HahnSeries::from_scalar(sx.clone()))? == sx, "st is not idempotent");

        let (r, tail) = gen.rational_head(rng);
        let z = &HahnSeries::from_rational(r.clone()) + &tail;
        ensure!(st(&z)? == LogFieldElement::embed(r), "st of a rational head plus infinitesimal");

        let (head, rest) = decompose(&x).map_err(|e| e.to_string())?;
        ensure!(head == sx, "decompose head differs from st");
        ensure!(rest.valuation().finite().map_or(rest.is_exact_zero(), |v| v.is_positive()), "tail not infinitesimal");
        ensure!(&HahnSeries::from_scalar(head.clone()) + &rest == x, "head + tail != x");
        // Any other representative leaves a tail of valuation exactly 0.
        let other = &head + &gen.coeffs.nonzero_element(rng);
        let other_tail = &x - &HahnSeries::from_scalar(other);
        ensure!(val(&other_tail)?.is_zero(), "a second decomposition exists");
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Embedding

/// Valuations available to random monic scales.
pub fn scale_valuations() -> Vec<Rational> {
    vec![rational(1, 1), rational(2, 1), rational(1, 2), rational(3, 2)]
}

/// `extract(substitute(A, h), h)` reproduces `A`, and `v(A(h)) = r0 v(h)`.
pub fn round_trip(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen { max_terms: 8, ..SeriesGen::default() };
    let valuations = scale_valuations();
    run(seed, n, |_, rng| {
        let a = gen.exact(rng);
        let h = random_monic_scale(rng, 3, &valuations);
        let g = h.valuation().clone();
        let top = a.terms().last().map_or(Rational::zero(), |t| t.exp.clone());
        let work = &g * (top + rational(1, 1));
        let y = substitute(&a, &h, &work).map_err(|e| e.to_string())?;
        if let Some(lead) = a.leading() {
            ensure!(val(&y)? == &lead.exp * &g, "v(A(h)) = {} != r0 v(h) = {}", val(&y)?, &lead.exp * &g);
        } else {
            ensure!(y.is_exact_zero(), "A = 0 but A(h) = {y:?}");
        }
        let res = extract(&y, &h, a.terms().len() + 1, &work).map_err(|e| e.to_string())?;
        let expected: Vec<_> = a.terms().iter().map(|t| (t.exp.clone(), t.coeff.clone())).collect();
        ensure!(res.pairs == expected, "pairs {:?} != A {:?}", res.pairs, expected);
        ensure!(res.to_series() == a.truncate(res.to_series().tau()), "to_series disagrees with A");
        if h.series().terms().len() == 1 {
            ensure!(res.terminated, "exact monomial scale must terminate");
        }
        Ok(())
    })
}

/// `A ↦ A(h)` respects `+`, `*` and the order.
pub fn substitution_homomorphism(seed: u64, n: usize) -> SuiteResult {
    let gen = SeriesGen { max_terms: 4, min_exp: -2, max_exp: 2, max_exp_den: 3, ..SeriesGen::default() };
    let valuations = scale_valuations();
    run(seed, n, |_, rng| {
        let (a, b) = (gen.exact(rng), gen.exact(rng));
        let h = random_monic_scale(rng, 3, &valuations);
        let work = rational(6, 1);
        let sub = |x: &HahnSeries| substitute(x, &h, &work).map_err(|e| e.to_string());
        let (sa, sb) = (sub(&a)?, sub(&b)?);
        let sum = sub(&(&a + &b))?;
        ensure!(eq_up_to_common_tau(&sum, &(&sa + &sb)), "M(a + b) != M(a) + M(b)");
        let prod = sub(&(&a * &b))?;
        ensure!(eq_up_to_common_tau(&prod, &(&sa * &sb)), "M(ab) != M(a) M(b)");
        if !a.is_exact_zero() {
            ensure!(sa.signum() == a.signum(), "substitution changed the sign");
        }
        let canon = substitute(&a, &crate::embedding::Scale::canonical(), &work).map_err(|e| e.to_string())?;
        ensure!(canon.valuation() == a.valuation(), "M_t is not valuation-preserving");
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// Dominance

fn log_power(k: usize, p: &Rational) -> Result<LogFieldElement, String> {
    LogFieldElement::log(k).and_then(|l| l.pow(p)).map_err(|e| e.to_string())
}

fn positive_rational(rng: &mut StdRng, max_num: i64, max_den: i64) -> Rational {
    rational(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// `l_k^q - l_m^p > 0` for every `1 <= k < m <= 9` and `per_pair` random
/// `p, q > 0`, plus dominance soundness on random monomials.
pub fn dominance(seed: u64, per_pair: usize) -> SuiteResult {
    let pairs: Vec<(usize, usize)> =
        (1..=TOWER_DEPTH).flat_map(|k| (k + 1..=TOWER_DEPTH).map(move |m| (k, m))).collect();
    let n = pairs.len() * per_pair;
    let gen = LogGen { levels: TOWER_DEPTH, max_exp: 5, max_exp_den: 7, ..LogGen::default() };
    run(seed, n, |i, rng| {
        let (k, m) = pairs[i / per_pair];
        let q = positive_rational(rng, 60, 12);
        let p = positive_rational(rng, 60, 12);
        let x = &log_power(k, &q)? - &log_power(m, &p)?;
        ensure!(x.signum() == Sign::Plus, "l{k}^({q}) - l{m}^({p}) is not positive");

        let (u, w) = (gen.exponent_vector(rng), gen.exponent_vector(rng));
        let (big, small) = match dominance_compare(&u, &w) {
            std::cmp::Ordering::Less => (w, u),
            std::cmp::Ordering::Greater => (u, w),
            std::cmp::Ordering::Equal => return Ok(()),
        };
        let cu = positive_rational(rng, 1000, 1);
        let cw = positive_rational(rng, 1000, 1);
        let y = &LogFieldElement::monomial(cu, big) - &LogFieldElement::monomial(cw, small);
        ensure!(y.signum() == Sign::Plus, "dominant monomial minus a smaller one is not positive: {y:?}");
        Ok(())
    })
}

/// Signs agree with the numeric tower oracle. Even samples are
/// `l_k^q - l_m^p` with `p, q` in `[1/2, 3]`; odd samples are random
/// tower-safe elements. An inconclusive oracle counts as a failure.
pub fn tower_agreement(seed: u64, n: usize) -> SuiteResult {
    let gen = LogGen::tower_safe();
    run(seed, n, |i, rng| {
        let x = if i % 2 == 0 {
            let k = rng.gen_range(1..TOWER_DEPTH);
            let m = rng.gen_range(k + 1..=TOWER_DEPTH);
            let draw = |rng: &mut StdRng| {
                let d = rng.gen_range(1..=4);
                rational(rng.gen_range((d + 1) / 2..=3 * d), d)
            };
            let (q, p) = (draw(rng), draw(rng));
            &log_power(k, &q)? - &log_power(m, &p)?
        } else {
            gen.tower_safe_element(rng)
        };
        let exact = x.signum();
        match tower::sign(&x) {
            Some(s) => ensure!(s == exact, "tower sign {s:?} != exact sign {exact:?} for {x:?}"),
            None => return Err(format!("tower oracle inconclusive for {x:?}")),
        }
        Ok(())
    })
}
