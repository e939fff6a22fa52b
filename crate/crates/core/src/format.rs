//! The canonical HVC text format and the mirroring JSON export.
//!
//! One instance per file, line oriented, ASCII:
//!
//! ```text
//! HVC 1
//! # provenance: {"generator":"tight_family","k":2,"l":2,"u":1}
//! 2 2
//! 2 2
//! 0 0
//! 1 0
//! ```
//!
//! Line 1 is the magic and version, line 2 holds `k m`, line 3 the k part
//! sizes, and the next m lines one edge each as k offsets (the i-th offset
//! indexing into part i, 0-based). `#` starts a comment, blank lines are
//! ignored. The serializer emits edges in lexicographic order, so
//! serialize -> parse is the identity on the canonical form. Parsing rejects
//! duplicate edges and out-of-range offsets.

use std::collections::BTreeSet;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::generators::InstanceProvenance;
use crate::hypergraph::{Edge, KPartiteHypergraph};

pub const MAGIC: &str = "HVC";
pub const VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected magic header `HVC 1`, got `{got}`")]
    BadMagic { line: usize, got: String },

    #[error("line {line}: unsupported format version {got} (supported: 1)")]
    BadVersion { line: usize, got: String },

    #[error("unexpected end of file: {expecting}")]
    UnexpectedEof { expecting: &'static str },

    #[error("line {line}: expected {expecting}, got `{got}`")]
    BadNumber {
        line: usize,
        expecting: &'static str,
        got: String,
    },

    #[error("line {line}: expected {expected} fields, got {got}")]
    FieldCount {
        line: usize,
        expected: usize,
        got: usize,
    },

    #[error("instance must have k >= 1 parts")]
    NoParts,

    #[error("line {line}: part {part} has size 0; all parts must be non-empty")]
    EmptyPart { line: usize, part: usize },

    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },

    #[error("line {line}: offset {offset} out of range for part {part} (size {size})")]
    OffsetOverflow {
        line: usize,
        part: usize,
        offset: usize,
        size: usize,
    },

    #[error("line {line}: content after the last edge")]
    TrailingContent { line: usize },

    #[error("line {line}: malformed provenance comment: {message}")]
    BadProvenance { line: usize, message: String },
}

/// Serializes to the canonical text form: provenance comment (when present),
/// header, sizes, and edges in lexicographic order.
pub fn to_hvc_string(h: &KPartiteHypergraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{MAGIC} {VERSION}\n"));
    if let Some(p) = h.provenance() {
        let json = serde_json::to_string(p).expect("provenance serializes");
        out.push_str(&format!("# provenance: {json}\n"));
    }
    out.push_str(&format!("{} {}\n", h.k(), h.m()));
    let sizes: Vec<String> = h.part_sizes().iter().map(|s| s.to_string()).collect();
    out.push_str(&sizes.join(" "));
    out.push('\n');
    for e in h.edges() {
        let offs: Vec<String> = e.iter().map(|o| o.to_string()).collect();
        out.push_str(&offs.join(" "));
        out.push('\n');
    }
    out
}

/// Hex SHA-256 of the canonical serialization; identifies an instance in
/// padding provenance and bench records.
pub fn instance_sha256(h: &KPartiteHypergraph) -> String {
    let digest = Sha256::digest(to_hvc_string(h).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses the canonical text form, enforcing the full format contract.
pub fn from_hvc_str(input: &str) -> Result<KPartiteHypergraph, ParseError> {
    let mut provenance: Option<InstanceProvenance> = None;
    let mut lines = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(json) = comment.strip_prefix("provenance:") {
                provenance = Some(serde_json::from_str(json.trim()).map_err(|e| {
                    ParseError::BadProvenance {
                        line: line_no,
                        message: e.to_string(),
                    }
                })?);
            }
            continue;
        }
        lines.push((line_no, trimmed));
    }
    let mut it = lines.into_iter();

    let (line, header) = it.next().ok_or(ParseError::UnexpectedEof {
        expecting: "magic header",
    })?;
    let mut fields = header.split_whitespace();
    match fields.next() {
        Some(MAGIC) => {}
        _ => {
            return Err(ParseError::BadMagic {
                line,
                got: header.to_string(),
            })
        }
    }
    match fields.next() {
        Some(v) if v == VERSION.to_string() => {}
        other => {
            return Err(ParseError::BadVersion {
                line,
                got: other.unwrap_or("").to_string(),
            })
        }
    }
    if fields.next().is_some() {
        return Err(ParseError::BadMagic {
            line,
            got: header.to_string(),
        });
    }

    let (line, counts) = it.next().ok_or(ParseError::UnexpectedEof {
        expecting: "`k m` line",
    })?;
    let nums = parse_numbers(line, counts, "arity and edge count")?;
    if nums.len() != 2 {
        return Err(ParseError::FieldCount {
            line,
            expected: 2,
            got: nums.len(),
        });
    }
    let (k, m) = (nums[0], nums[1]);
    if k == 0 {
        return Err(ParseError::NoParts);
    }

    let (line, sizes_line) = it.next().ok_or(ParseError::UnexpectedEof {
        expecting: "part sizes line",
    })?;
    let part_sizes = parse_numbers(line, sizes_line, "part size")?;
    if part_sizes.len() != k {
        return Err(ParseError::FieldCount {
            line,
            expected: k,
            got: part_sizes.len(),
        });
    }
    if let Some(part) = part_sizes.iter().position(|&s| s == 0) {
        return Err(ParseError::EmptyPart { line, part });
    }

    let mut edges: Vec<Edge> = Vec::with_capacity(m);
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    for _ in 0..m {
        let (line, edge_line) = it.next().ok_or(ParseError::UnexpectedEof {
            expecting: "edge line",
        })?;
        let offs = parse_numbers(line, edge_line, "vertex offset")?;
        if offs.len() != k {
            return Err(ParseError::FieldCount {
                line,
                expected: k,
                got: offs.len(),
            });
        }
        for (part, &offset) in offs.iter().enumerate() {
            if offset >= part_sizes[part] {
                return Err(ParseError::OffsetOverflow {
                    line,
                    part,
                    offset,
                    size: part_sizes[part],
                });
            }
        }
        if !seen.insert(offs.clone()) {
            return Err(ParseError::DuplicateEdge { line });
        }
        edges.push(offs);
    }
    if let Some((line, _)) = it.next() {
        return Err(ParseError::TrailingContent { line });
    }

    let h = KPartiteHypergraph::new(part_sizes, edges)
        .expect("validated during parse");
    Ok(match provenance {
        Some(p) => h.with_provenance(p),
        None => h,
    })
}

fn parse_numbers(
    line: usize,
    text: &str,
    expecting: &'static str,
) -> Result<Vec<usize>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| ParseError::BadNumber {
                line,
                expecting,
                got: tok.to_string(),
            })
        })
        .collect()
}

/// JSON mirror of the text format plus provenance.
#[derive(Debug, Serialize)]
pub struct InstanceJson<'a> {
    pub schema: &'static str,
    pub version: u32,
    pub k: usize,
    pub part_sizes: &'a [usize],
    pub edges: &'a [Edge],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<&'a InstanceProvenance>,
}

pub fn to_json(h: &KPartiteHypergraph) -> String {
    let doc = InstanceJson {
        schema: "hvc-instance",
        version: VERSION,
        k: h.k(),
        part_sizes: h.part_sizes(),
        edges: h.edges(),
        provenance: h.provenance(),
    };
    serde_json::to_string_pretty(&doc).expect("instance serializes")
}
