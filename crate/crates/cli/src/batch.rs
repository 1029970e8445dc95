//! Batch evaluation of expression files, one expression per line.

use hahnfield::exec;

use crate::eval::{eval_str, Config};
use crate::render::{render, Format};

/// A line that holds an expression, with its 1-based line number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub number: usize,
    pub text: String,
}

/// Drops blank lines and `#` comments, including trailing ones.
pub fn expression_lines(src: &str) -> Vec<Line> {
    src.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = raw.split('#').next().unwrap_or("").trim();
            (!text.is_empty()).then(|| Line { number: i + 1, text: text.to_string() })
        })
        .collect()
}

/// Evaluates every line independently, in parallel when enabled; output
/// order matches input order and one failing line does not affect others.
pub fn evaluate_lines(lines: &[Line], cfg: &Config, format: Format) -> Vec<Result<String, String>> {
    exec::map(lines, |line| {
        eval_str(&line.text, cfg).map(|v| render(&v, format)).map_err(|e| format!("line {}: {e}", line.number))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_isolation() {
        let src = "# header\nv(t^2)\n\n1/(t-t)  # fails\nst(1 + t)\n";
        let lines = expression_lines(src);
        assert_eq!(lines.iter().map(|l| l.number).collect::<Vec<_>>(), vec![2, 4, 5]);
        let out = evaluate_lines(&lines, &Config::default(), Format::Text);
        assert_eq!(out[0], Ok("2".to_string()));
        assert!(out[1].as_ref().unwrap_err().starts_with("line 4: division"));
        assert_eq!(out[2], Ok("1".to_string()));
    }
}
