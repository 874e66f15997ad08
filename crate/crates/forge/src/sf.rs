//! The S/F text format: one set per row as `n` space-separated binary
//! tokens (leftmost token is element 1) followed by an `S` or `F` marker.
//! Rows alternate family set, then its filter partner, in system order.
//!
//! Output is byte-stable: single spaces, `\n` line endings, no trailing
//! whitespace. Input is slightly lenient — repeated spaces, `\r\n` endings
//! and a missing final newline are accepted — and everything else is a
//! parse error carrying the 1-based line number.

use frankl_forge_core::{ElementSet, Error as CoreError, PairedSystem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SfError {
    #[error("line 1: document has no rows")]
    EmptyDocument,

    #[error("line {line}: row has a marker but no set tokens")]
    RowTooShort { line: usize },

    #[error("line {line}: expected {expected} set tokens, found {found}")]
    InconsistentTokenCount {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: invalid marker {token:?}, expected \"S\" or \"F\"")]
    InvalidMarker { line: usize, token: String },

    #[error("line {line}: invalid set token {token:?}, expected \"0\" or \"1\"")]
    InvalidBit { line: usize, token: String },

    #[error("line {line}: dangling family row; every S row needs an F row")]
    OddRowCount { line: usize },

    #[error("line {line}: expected a row marked {expected}")]
    BrokenAlternation { line: usize, expected: char },

    #[error("line {line}: family set repeats the one at line {original}")]
    DuplicateFamilyRow { line: usize, original: usize },

    #[error("line {line}: filter set repeats the one at line {original}")]
    DuplicateFilterRow { line: usize, original: usize },
}

/// Row marker: `S` for a family set, `F` for its filter partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marker {
    Family,
    Filter,
}

impl Marker {
    pub fn letter(&self) -> char {
        match self {
            Marker::Family => 'S',
            Marker::Filter => 'F',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfRow {
    pub bits: ElementSet,
    pub marker: Marker,
}

/// A parsed or to-be-emitted document: rows in file order, universe size
/// inferred from the per-row token count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SfDocument {
    pub universe_size: usize,
    pub rows: Vec<SfRow>,
}

impl SfDocument {
    pub fn from_system(system: &PairedSystem) -> Self {
        let mut rows = Vec::with_capacity(system.len() * 2);
        for (small, large) in system.pairs() {
            rows.push(SfRow {
                bits: small.clone(),
                marker: Marker::Family,
            });
            rows.push(SfRow {
                bits: large.clone(),
                marker: Marker::Filter,
            });
        }
        SfDocument {
            universe_size: system.universe_size(),
            rows,
        }
    }

    pub fn parse(text: &str) -> Result<Self, SfError> {
        let mut lines: Vec<&str> = text.split('\n').collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }

        let mut universe_size = 0usize;
        let mut rows: Vec<SfRow> = Vec::with_capacity(lines.len());
        for (i, raw) in lines.iter().enumerate() {
            let line = i + 1;
            let tokens: Vec<&str> = raw
                .strip_suffix('\r')
                .unwrap_or(raw)
                .split(' ')
                .filter(|t| !t.is_empty())
                .collect();
            let Some((marker_token, bit_tokens)) = tokens.split_last() else {
                return Err(SfError::RowTooShort { line });
            };
            let marker = match *marker_token {
                "S" => Marker::Family,
                "F" => Marker::Filter,
                other => {
                    return Err(SfError::InvalidMarker {
                        line,
                        token: other.to_string(),
                    })
                }
            };
            if bit_tokens.is_empty() {
                return Err(SfError::RowTooShort { line });
            }
            if rows.is_empty() {
                universe_size = bit_tokens.len();
            } else if bit_tokens.len() != universe_size {
                return Err(SfError::InconsistentTokenCount {
                    line,
                    expected: universe_size,
                    found: bit_tokens.len(),
                });
            }
            let mut bits = ElementSet::empty(universe_size);
            for (position, token) in bit_tokens.iter().enumerate() {
                match *token {
                    "0" => {}
                    "1" => bits.insert(position + 1),
                    other => {
                        return Err(SfError::InvalidBit {
                            line,
                            token: other.to_string(),
                        })
                    }
                }
            }
            let expected = if rows.len().is_multiple_of(2) {
                Marker::Family
            } else {
                Marker::Filter
            };
            if marker != expected {
                return Err(SfError::BrokenAlternation {
                    line,
                    expected: expected.letter(),
                });
            }
            rows.push(SfRow { bits, marker });
        }

        if rows.is_empty() {
            return Err(SfError::EmptyDocument);
        }
        if rows.len() % 2 == 1 {
            return Err(SfError::OddRowCount { line: rows.len() });
        }
        Ok(SfDocument {
            universe_size,
            rows,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&emit_bits(&row.bits));
            out.push(' ');
            out.push(row.marker.letter());
            out.push('\n');
        }
        out
    }

    pub fn to_system(&self) -> Result<PairedSystem, SfError> {
        let mut system = PairedSystem::new(self.universe_size);
        for (pair_index, pair) in self.rows.chunks_exact(2).enumerate() {
            let small = pair[0].bits.clone();
            let large = pair[1].bits.clone();
            system.push_pair(small, large).map_err(|err| match err {
                CoreError::DuplicateFamilySet { index } => SfError::DuplicateFamilyRow {
                    line: 2 * pair_index + 1,
                    original: 2 * index + 1,
                },
                CoreError::DuplicateFilterSet { index } => SfError::DuplicateFilterRow {
                    line: 2 * pair_index + 2,
                    original: 2 * index + 2,
                },
                other => unreachable!("unexpected system error: {other}"),
            })?;
        }
        Ok(system)
    }
}

/// One set as a bare binary row, e.g. `{1,3,4,7,8}` over `[8]` becomes
/// `1 0 1 1 0 0 1 1`.
pub fn emit_bits(set: &ElementSet) -> String {
    let mut out = String::with_capacity(set.universe_size() * 2);
    for element in 1..=set.universe_size() {
        if element > 1 {
            out.push(' ');
        }
        out.push(if set.contains(element) { '1' } else { '0' });
    }
    out
}

/// Serializes a system to S/F text.
pub fn emit_sf(system: &PairedSystem) -> String {
    SfDocument::from_system(system).emit()
}

/// Parses S/F text back into a system; inverse of [`emit_sf`] on its image.
pub fn parse_sf(text: &str) -> Result<PairedSystem, SfError> {
    SfDocument::parse(text)?.to_system()
}
