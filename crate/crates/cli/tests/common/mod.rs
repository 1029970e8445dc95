//! Random expressions that always evaluate without error.

#![allow(dead_code)]

use rand::Rng;

fn leaf<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..7) {
        0 => rng.gen_range(-5..=9).to_string(),
        1 => format!("{}/{}", rng.gen_range(1..=7), rng.gen_range(2..=5)),
        2 => "t".into(),
        3 => format!("t^({}/{})", rng.gen_range(-3..=5), rng.gen_range(1..=3)),
        4 => format!("l{}", rng.gen_range(1..=9)),
        5 => format!("0.{}", rng.gen_range(1..=99)),
        _ => format!("l{}^({}/{})", rng.gen_range(1..=9), rng.gen_range(-2..=2), rng.gen_range(1..=2)),
    }
}

/// Denominators with an exactly known, nonzero leading term.
fn unit<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..4) {
        0 => format!("(1 - t^({}/{}))", rng.gen_range(1..=3), rng.gen_range(1..=2)),
        1 => format!("l{}", rng.gen_range(1..=9)),
        2 => format!("(2 + l{} * t)", rng.gen_range(1..=9)),
        _ => format!("t^({}/{})", rng.gen_range(-2..=2), rng.gen_range(1..=3)),
    }
}

/// Series-valued expression of nesting depth at most `depth`.
pub fn series_expr<R: Rng>(rng: &mut R, depth: u32) -> String {
    if depth == 0 {
        return leaf(rng);
    }
    let mut sub = || series_expr(rng, depth - 1);
    let (a, b) = (sub(), sub());
    match rng.gen_range(0..8) {
        0 | 1 => format!("{a} + {b}"),
        2 => format!("{a} - {b}"),
        3 | 4 => format!("({a}) * ({b})"),
        5 => format!("({a}) / {}", unit(rng)),
        6 => format!("({a}) * ({})^({})", unit(rng), rng.gen_range(-2..=3)),
        _ => format!("inv({})", unit(rng)),
    }
}

/// Any value kind: series, valuation or expansion.
pub fn any_expr<R: Rng>(rng: &mut R) -> String {
    let e = series_expr(rng, 3);
    match rng.gen_range(0..6) {
        0 => format!("v({e})"),
        1 => format!("expand({e}; h=t^{}; terms=4)", rng.gen_range(1..=3)),
        2 => format!("sub({e}; h=t^2 + t^3)"),
        _ => e,
    }
}
