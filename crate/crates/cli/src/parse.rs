//! Line-oriented relation text format.
//!
//! ```text
//! # comment to end of line; blank lines ignored
//! universe 4            # or: universe a b c ...
//! 1 1
//! 1 3
//! ```
//!
//! The first significant line declares the universe, either as a size
//! (elements labeled `"1".."n"`) or as a list of distinct labels. Every
//! following significant line is one pair `<x> <y>` by label. Parsing is
//! strict and errors carry the offending line number.

use std::fmt;

use regmat_core::sets::MAX_UNIVERSE;
use regmat_core::{ApproximationSpace, BinaryRelation, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed relation file: the declared universe plus a deduplicated,
/// row-major-sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDocument {
    universe: Universe,
    pairs: Vec<(usize, usize)>,
}

impl RelationDocument {
    pub fn parse(text: &str) -> Result<RelationDocument, ParseError> {
        let mut universe: Option<Universe> = None;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut line_count = 0;

        for (index, raw) in text.lines().enumerate() {
            let line = index + 1;
            line_count = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();

            if tokens[0] == "universe" {
                if universe.is_some() {
                    return fail(line, "duplicate universe declaration");
                }
                universe = Some(parse_universe(line, &tokens[1..])?);
                continue;
            }

            let Some(u) = &universe else {
                return fail(line, "edge appears before the universe declaration");
            };
            if tokens.len() != 2 {
                return fail(
                    line,
                    format!(
                        "malformed line: expected `<x> <y>`, got {} token(s)",
                        tokens.len()
                    ),
                );
            }
            let mut edge = [0usize; 2];
            for (slot, token) in edge.iter_mut().zip(&tokens) {
                match u.index_of(token) {
                    Some(i) => *slot = i,
                    None => return fail(line, format!("unknown element label `{token}`")),
                }
            }
            pairs.push((edge[0], edge[1]));
        }

        let Some(universe) = universe else {
            return fail(line_count.max(1), "missing universe declaration");
        };
        pairs.sort_unstable();
        pairs.dedup();
        Ok(RelationDocument { universe, pairs })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn relation(&self) -> BinaryRelation {
        BinaryRelation::from_pairs(&self.universe, self.pairs.iter().copied())
            .expect("pairs were validated during parsing")
    }

    pub fn space(&self) -> ApproximationSpace {
        ApproximationSpace::new(self.relation())
    }

    /// Canonical serialization; parsing it back yields an identical
    /// document.
    pub fn to_text(&self) -> String {
        let labels = self.universe.labels();
        let is_default = labels
            .iter()
            .enumerate()
            .all(|(i, label)| *label == (i + 1).to_string());
        let mut out = if is_default {
            format!("universe {}\n", labels.len())
        } else {
            format!("universe {}\n", labels.join(" "))
        };
        for &(x, y) in &self.pairs {
            out.push_str(&format!(
                "{} {}\n",
                self.universe.label(x),
                self.universe.label(y)
            ));
        }
        out
    }
}

fn parse_universe(line: usize, args: &[&str]) -> Result<Universe, ParseError> {
    if args.is_empty() {
        return fail(line, "universe declaration needs a size or labels");
    }
    if args.len() == 1 && args[0].chars().all(|c| c.is_ascii_digit()) {
        let n: usize = match args[0].parse() {
            Ok(n) => n,
            Err(_) => return fail(line, format!("invalid universe size `{}`", args[0])),
        };
        if n == 0 {
            return fail(line, "empty universe");
        }
        if n > MAX_UNIVERSE {
            return fail(
                line,
                format!("universe size {n} exceeds the maximum of {MAX_UNIVERSE}"),
            );
        }
        return Ok(Universe::new(n));
    }
    Universe::with_labels(args.iter().map(|s| s.to_string())).or_else(|e| fail(line, e.to_string()))
}
