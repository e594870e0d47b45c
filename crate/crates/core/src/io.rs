//! Facet file format.
//!
//! ```text
//! # comments run from '#' to end of line
//! 5 3
//! 1 2 3
//! 1 2 4
//! ```
//!
//! The first non-comment line is the header `n k`; every following
//! non-blank line is one facet written as strictly increasing vertex labels.
//! Repeated facet lines are rejected. Writing goes through
//! [`KFamily`]'s `Display` impl.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::family::{Facet, KFamily};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u32>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| parse_err(line, format!("not a non-negative integer: {tok:?}")))
        })
        .collect()
}

pub fn parse_facet_file(text: &str) -> Result<KFamily> {
    let mut header: Option<(u32, usize)> = None;
    let mut facets = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums = numbers(line, body)?;
        let Some((n, k)) = header else {
            let [n, k] = nums[..] else {
                return Err(parse_err(line, "header must be `n k`"));
            };
            header = Some((n, k as usize));
            continue;
        };
        if nums.len() != k {
            return Err(Error::Purity {
                expected: k,
                found: nums.len(),
            });
        }
        if nums.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(
                line,
                "facet vertices must be strictly increasing",
            ));
        }
        if let Some(&v) = nums.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::Range(format!(
                "line {line}: vertex {v} outside [1, {n}]"
            )));
        }
        if !seen.insert(nums.clone()) {
            return Err(parse_err(line, "duplicate facet"));
        }
        facets.push(Facet::new(nums)?);
    }
    let (n, k) = header.ok_or_else(|| parse_err(0, "missing `n k` header"))?;
    KFamily::with_facets(n, k, facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let text = "# star\n5 3 # header\n1 2 3\n\n1 2 4  # second\n1 2 5\n";
        let s = parse_facet_file(text).unwrap();
        assert_eq!(s.facet_count(), 3);
        assert_eq!(s.to_string(), "5 3\n1 2 3\n1 2 4\n1 2 5\n");
        assert_eq!(parse_facet_file(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn header_only_is_empty_family() {
        let s = parse_facet_file("4 2\n").unwrap();
        assert!(s.is_empty());
        assert_eq!(s.to_string(), "4 2\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_facet_file("4 2\n1 2\n1 2\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_facet_file("4 2\n2 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_facet_file("4 2\n1 2 3\n"),
            Err(Error::Purity { .. })
        ));
        assert!(matches!(
            parse_facet_file("4 2\n1 5\n"),
            Err(Error::Range(_))
        ));
        assert!(matches!(parse_facet_file("4\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_facet_file("# nothing\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_facet_file("4 2\n1 x\n"),
            Err(Error::Parse { .. })
        ));
    }
}
