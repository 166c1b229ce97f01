//! Instance files.
//!
//! Text form: one weight per line, `#` starts a comment, blank lines are
//! ignored. JSON form: an array of numbers or numeric strings. Weights may
//! be integers, decimals (`0.55`, `1e-3`) or fractions (`3/7`); they are
//! scaled to integers by the LCM of their denominators.

use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::instance::{parse_rational, Rational, WeightedInstance};

pub fn parse_instance(src: &str) -> Result<WeightedInstance> {
    let values = if src.trim_start().starts_with('[') { parse_json(src)? } else { parse_text(src)? };
    WeightedInstance::from_rationals(&values)
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<WeightedInstance> {
    parse_instance(&std::fs::read_to_string(path)?)
}

fn number(s: &str, key: usize, line: usize) -> Result<Rational> {
    let t = s.trim();
    if t.starts_with('-') && t.trim_start_matches(['-', '0', '.']).chars().any(|c| c.is_ascii_digit() && c != '0') {
        return Err(Error::NegativeWeight { key, value: t.to_string() });
    }
    parse_rational(t).map_err(|msg| Error::Parse { line, msg: format!("{t:?}: {msg}") })
}

fn parse_text(src: &str) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        out.push(number(body, out.len() + 1, lineno + 1)?);
    }
    Ok(out)
}

fn parse_json(src: &str) -> Result<Vec<Rational>> {
    let value: Value = serde_json::from_str(src)?;
    let Value::Array(items) = value else {
        return Err(Error::Parse { line: 1, msg: "expected a JSON array of weights".into() });
    };
    items
        .iter()
        .enumerate()
        .map(|(k, v)| match v {
            Value::Number(x) => number(&x.to_string(), k + 1, 1),
            Value::String(s) => number(s, k + 1, 1),
            other => Err(Error::Parse { line: 1, msg: format!("element {}: not a number: {other}", k + 1) }),
        })
        .collect()
}

/// Text form of an instance with integer weights, one per line.
pub fn format_instance(inst: &WeightedInstance) -> String {
    let mut out = String::new();
    if inst.scale() != crate::Weight::new(1) {
        out.push_str(&format!("# weights scaled by {}\n", inst.scale()));
    }
    for w in inst.weights() {
        out.push_str(&format!("{w}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Weight;

    #[test]
    fn text_with_comments_and_decimals() {
        let i = parse_instance("# two keys\n0.5\n\n1/4  # quarter\n").unwrap();
        assert_eq!(i.weights(), &[Weight::new(2), Weight::new(1)]);
        assert_eq!(i.scale(), Weight::new(4));
    }

    #[test]
    fn json_array() {
        let i = parse_instance("[1, \"3/2\", 2.5]").unwrap();
        assert_eq!(i.weights(), &[Weight::new(2), Weight::new(3), Weight::new(5)]);
    }

    #[test]
    fn text_and_json_agree() {
        let a = parse_instance("10\n1\n2\n3\n").unwrap();
        let b = parse_instance("[10,1,2,3]").unwrap();
        assert_eq!(a.weights(), b.weights());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_instance("1\n-2\n"), Err(Error::NegativeWeight { key: 2, .. })));
        assert!(matches!(parse_instance("[1, -0.5]"), Err(Error::NegativeWeight { key: 2, .. })));
        assert!(matches!(parse_instance("1\nabc\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_instance("# nothing\n"), Err(Error::EmptyInstance)));
        assert!(parse_instance("[1, true]").is_err());
        assert_eq!(parse_instance("-0\n1\n").unwrap().weights()[0], Weight::ZERO);
    }
}
