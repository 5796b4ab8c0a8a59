//! Pattern arguments: a named shape or a point-set document.

use std::path::Path;

use patternforge_core::constructions::shapes::{equilateral_triangle, isosceles_triangle, regular_polygon, square};
use patternforge_core::Pattern;

use crate::document::PointSetDocument;
use crate::error::{CliError, CliResult};

pub const NAMED_PATTERNS: &str = "triangle, square, polygon:K, isosceles:NUM/DEN, or a document path";

/// `triangle` (also `equilateral`, `△`), `square`, `polygon:K` for the
/// regular `K`-gon, `isosceles:NUM/DEN` for base angle `NUM/DEN·π`, or a path
/// to a point-set document whose points form the pattern.
pub fn parse_pattern(spec: &str) -> CliResult<Pattern> {
    let lower = spec.trim().to_ascii_lowercase();
    match lower.as_str() {
        "triangle" | "equilateral" | "△" => return Ok(equilateral_triangle()),
        "square" => return Ok(square()),
        _ => {}
    }
    if let Some(k) = lower.strip_prefix("polygon:") {
        let k: u32 = k.parse().map_err(|_| CliError::Usage(format!("bad polygon size in {spec:?}")))?;
        return Ok(regular_polygon(k)?);
    }
    if let Some(angle) = lower.strip_prefix("isosceles:") {
        let (num, den) = parse_fraction(angle)?;
        return Ok(isosceles_triangle(num, den)?);
    }
    let path = Path::new(spec);
    if path.exists() {
        return PointSetDocument::read(path)?.to_pattern();
    }
    Err(CliError::Usage(format!("unknown pattern {spec:?}; expected {NAMED_PATTERNS}")))
}

/// `NUM/DEN` with positive integers.
pub fn parse_fraction(text: &str) -> CliResult<(u32, u32)> {
    let bad = || CliError::Usage(format!("expected NUM/DEN, got {text:?}"));
    let (n, d) = text.split_once('/').ok_or_else(bad)?;
    let n: u32 = n.trim().parse().map_err(|_| bad())?;
    let d: u32 = d.trim().parse().map_err(|_| bad())?;
    Ok((n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_patterns() {
        assert_eq!(parse_pattern("triangle").unwrap().sym_order(), 3);
        assert_eq!(parse_pattern("polygon:5").unwrap().len(), 5);
        assert_eq!(parse_pattern("isosceles:1/5").unwrap().sym_order(), 1);
        assert!(parse_pattern("isosceles:1").is_err());
        assert!(parse_pattern("no-such-pattern").is_err());
    }
}
