//! Argument grammar: `P2 d`, `F<e> a,b`, and inclusive ranges `lo..hi`.

use std::fmt;
use std::ops::RangeInclusive;

use carpets::{DivisorClass, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    /// Byte offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at position {} in `{}`", self.message, self.position, self.input)
    }
}

impl std::error::Error for ParseError {}

fn err(input: &str, position: usize, message: impl Into<String>) -> ParseError {
    ParseError { input: input.to_string(), position, message: message.into() }
}

pub fn surface(input: &str) -> Result<SurfaceModel, ParseError> {
    input.parse().map_err(|e: carpets::surfaces::ParseSurfaceError| err(input, 0, e.to_string()))
}

/// Comma-separated integers with their starting offsets.
fn integers(input: &str) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in input.split(',') {
        let trimmed = token.trim();
        let lead = token.len() - token.trim_start().len();
        let value = trimmed
            .parse::<i64>()
            .map_err(|_| err(input, offset + lead, format!("expected an integer, found `{trimmed}`")))?;
        out.push(value);
        offset += token.len() + 1;
    }
    Ok(out)
}

pub fn divisor(s: SurfaceModel, input: &str) -> Result<DivisorClass, ParseError> {
    let coeffs = integers(input)?;
    if coeffs.len() != s.picard_rank() {
        let shape = if s.picard_rank() == 1 { "`d`" } else { "`a,b`" };
        return Err(err(input, 0, format!("{s} divisors are written {shape}")));
    }
    Ok(s.divisor(&coeffs).expect("length checked"))
}

/// `lo..hi` (inclusive) or a single integer. `lo > hi` is an empty range.
pub fn range(input: &str) -> Result<RangeInclusive<i64>, ParseError> {
    let int = |text: &str, at: usize| {
        text.trim()
            .parse::<i64>()
            .map_err(|_| err(input, at, format!("expected an integer, found `{}`", text.trim())))
    };
    match input.find("..") {
        Some(at) => {
            let hi_text = input[at + 2..].strip_prefix('=').unwrap_or(&input[at + 2..]);
            let hi_at = input.len() - hi_text.len();
            Ok(int(&input[..at], 0)?..=int(hi_text, hi_at)?)
        }
        None => {
            let v = int(input, 0)?;
            Ok(v..=v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surfaces_and_divisors() {
        let f2 = surface("F2").unwrap();
        assert_eq!(divisor(f2, "-2,-4").unwrap(), f2.class(-2, -4));
        let p2 = surface("P2").unwrap();
        assert_eq!(divisor(p2, "-3").unwrap(), p2.degree(-3));
        assert!(surface("G2").is_err());
        assert!(divisor(p2, "1,2").is_err());
    }

    #[test]
    fn positions_point_at_the_bad_token() {
        let f1 = surface("F1").unwrap();
        let e = divisor(f1, "2,x").unwrap_err();
        assert_eq!(e.position, 2);
        let e = divisor(f1, "2, 7q").unwrap_err();
        assert_eq!(e.position, 3);
        let e = range("1..z").unwrap_err();
        assert_eq!(e.position, 3);
    }

    #[test]
    fn ranges() {
        assert_eq!(range("0..4").unwrap(), 0..=4);
        assert_eq!(range("2..=3").unwrap(), 2..=3);
        assert_eq!(range("-3..-1").unwrap(), -3..=-1);
        assert_eq!(range("5").unwrap(), 5..=5);
        assert!(range("3..1").unwrap().is_empty());
    }
}
