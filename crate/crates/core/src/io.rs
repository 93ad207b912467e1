//! Text and JSON formats for sequences and facet lists.
//!
//! Sequence text: first data line holds the degrees, second the sizes, both
//! space separated; lines starting with `#` and blank lines are ignored. A
//! JSON object `{"degrees": [...], "sizes": [...]}` is accepted as well.
//!
//! Facet list: one facet per line, 0-based node indices in ascending order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DegreeSizeSequence, Realization};

#[derive(Debug, Serialize, Deserialize)]
struct SequenceJson {
    degrees: Vec<u32>,
    sizes: Vec<u32>,
}

fn parse_line(line: &str, lineno: usize) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u32>().map_err(|e| Error::Parse {
                line: lineno,
                message: format!("bad integer {tok:?}: {e}"),
            })
        })
        .collect()
}

/// Parses a sequence in either text or JSON form and normalizes it.
pub fn parse_sequence(text: &str) -> Result<DegreeSizeSequence> {
    if text.trim_start().starts_with('{') {
        let raw: SequenceJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        return DegreeSizeSequence::normalize(&raw.degrees, &raw.sizes);
    }
    let mut rows = Vec::with_capacity(2);
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if rows.len() == 2 {
            return Err(Error::Parse {
                line: i + 1,
                message: "unexpected third data line".into(),
            });
        }
        rows.push(parse_line(line, i + 1)?);
    }
    match rows.as_slice() {
        [d, s] => DegreeSizeSequence::normalize(d, s),
        _ => Err(Error::Parse {
            line: text.lines().count(),
            message: "expected a degree line and a size line".into(),
        }),
    }
}

/// Writes the sorted sequence in the two-line text form.
pub fn format_sequence(seq: &DegreeSizeSequence) -> String {
    let join = |xs: &[u32]| xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    format!("{}\n{}\n", join(seq.degrees()), join(seq.sizes()))
}

pub fn sequence_to_json(seq: &DegreeSizeSequence) -> serde_json::Value {
    serde_json::json!({ "degrees": seq.degrees(), "sizes": seq.sizes() })
}

/// Reads a facet list; the node count is one past the largest index.
pub fn parse_facets(text: &str) -> Result<Realization> {
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let facet = parse_line(line, i + 1)?;
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: i + 1,
                message: "repeated node within a facet".into(),
            });
        }
        facets.push(sorted);
    }
    let n = facets
        .iter()
        .flat_map(|f| f.iter())
        .max()
        .map_or(0, |&v| v as usize + 1);
    Ok(Realization::new(n, facets))
}

pub fn format_facets(real: &Realization) -> String {
    let mut out = String::new();
    for f in real.facets() {
        let line = f.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{line}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_sequence_with_comments() {
        let seq = parse_sequence("# degrees\n3 3 2 2 1 1 1 1\n\n# sizes\n4 3 2 2 2 1\n").unwrap();
        assert_eq!(seq.degrees(), &[3, 3, 2, 2, 1, 1, 1, 1]);
        assert_eq!(seq.sizes(), &[4, 3, 2, 2, 2, 1]);
        assert_eq!(parse_sequence(&format_sequence(&seq)).unwrap(), seq);
    }

    #[test]
    fn json_sequence() {
        let seq = parse_sequence(r#"{"degrees": [1, 3, 2], "sizes": [3, 3]}"#).unwrap();
        assert_eq!(seq.degrees(), &[3, 2, 1]);
        assert_eq!(sequence_to_json(&seq)["sizes"], serde_json::json!([3, 3]));
    }

    #[test]
    fn sequence_errors() {
        assert!(matches!(parse_sequence("1 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_sequence("1 x\n1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_sequence("1\n1\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_sequence("-1 2\n1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_sequence("0 1\n1\n"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn facets_round_trip() {
        let real = parse_facets("0 1 2\n\n2 3\n# c\n4\n").unwrap();
        assert_eq!(real.n(), 5);
        assert_eq!(real.facets(), &[vec![0, 1, 2], vec![2, 3], vec![4]]);
        assert_eq!(format_facets(&real), "0 1 2\n2 3\n4\n");
        assert!(parse_facets("1 1\n").is_err());
        assert_eq!(parse_facets("2 0 1\n").unwrap().facets(), &[vec![0, 1, 2]]);
    }
}
