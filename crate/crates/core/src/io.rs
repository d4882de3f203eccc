//! Shape files and corpus manifests.
//!
//! JSON: `{"points": [[x, y], ...]}`. ASCII grid: `#` marks a point, `.` an
//! empty cell, the first line is the top row.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::gen::GenSpec;
use crate::point::LatticePoint;
use crate::shape::{Shape, ShapeError};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("duplicate point {0}")]
    Duplicate(LatticePoint),
    #[error("shape has no points")]
    Empty,
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ParseError {
    /// Stable per-kind code for tooling.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Duplicate(_) => "duplicate_point",
            ParseError::Empty => "empty_shape",
            ParseError::Malformed(_) => "malformed",
            ParseError::Io(_) => "io",
        }
    }
}

impl From<ShapeError> for ParseError {
    fn from(e: ShapeError) -> Self {
        match e {
            ShapeError::Empty => ParseError::Empty,
            ShapeError::Duplicate(p) => ParseError::Duplicate(p),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeFile {
    points: Vec<LatticePoint>,
}

pub fn parse_json(text: &str) -> Result<Shape, ParseError> {
    let file: ShapeFile = serde_json::from_str(text).map_err(|e| ParseError::Malformed(e.to_string()))?;
    Ok(Shape::new(file.points)?)
}

pub fn to_json(shape: &Shape) -> String {
    serde_json::to_string(&ShapeFile {
        points: shape.points().to_vec(),
    })
    .expect("points serialize")
}

pub fn parse_ascii(text: &str) -> Result<Shape, ParseError> {
    let lines: Vec<&str> = text.lines().map(str::trim_end).collect();
    let lines: Vec<&str> = {
        let end = lines.iter().rposition(|l| !l.is_empty()).map_or(0, |i| i + 1);
        lines[..end].to_vec()
    };
    let top = lines.len() as i64 - 1;
    let mut points = Vec::new();
    for (row, line) in lines.iter().enumerate() {
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '#' => points.push(LatticePoint::new(col as i64, top - row as i64)),
                '.' => {}
                other => {
                    return Err(ParseError::Malformed(format!(
                        "unexpected {:?} at line {}, column {}",
                        other,
                        row + 1,
                        col + 1
                    )))
                }
            }
        }
    }
    Ok(Shape::new(points)?)
}

/// Grid of the normalized shape.
pub fn to_ascii(shape: &Shape) -> String {
    let s = shape.normalize();
    let (ex, ey) = s.extents();
    let mut out = String::new();
    for y in (0..=ey).rev() {
        for x in 0..=ex {
            out.push(if s.contains(LatticePoint::new(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// JSON when the text starts with `{`, ASCII grid otherwise.
pub fn parse_shape(text: &str) -> Result<Shape, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_ascii(text)
    }
}

pub fn read_shape(path: &Path) -> Result<Shape, ParseError> {
    parse_shape(&std::fs::read_to_string(path)?)
}

/// SHA-256 of the canonical JSON of the normalized shape.
pub fn content_hash(shape: &Shape) -> String {
    let digest = Sha256::digest(to_json(&shape.normalize()).as_bytes());
    let mut hex = String::with_capacity(64);
    for b in digest {
        let _ = write!(hex, "{:02x}", b);
    }
    hex
}

pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub spec: GenSpec,
    pub n: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn new() -> Self {
        Manifest {
            version: MANIFEST_VERSION,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, spec: GenSpec, shape: &Shape) {
        self.entries.push(ManifestEntry {
            id: id.into(),
            spec,
            n: shape.len(),
            sha256: content_hash(shape),
        });
    }
}

impl Default for Manifest {
    fn default() -> Self {
        Self::new()
    }
}
