//! Text polytope files and the JSON lattice export.
//!
//! A polytope file starts with `polytope <d> <n>` followed by `n` lines of
//! `d` whitespace-separated rationals (`p/q` or `p`). Blank lines and lines
//! starting with `#` are ignored.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, QVector};
use crate::polytope::{FaceLattice, VPolytope};

pub fn parse_polytope(text: &str) -> Result<VPolytope> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `polytope <d> <n>` header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (d, n) = match fields.as_slice() {
        ["polytope", d, n] => (
            d.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dimension {d:?}")))?,
            n.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?,
        ),
        _ => return Err(Error::Parse(format!("bad header {header:?}"))),
    };
    let mut vertices = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let coords = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != d {
            return Err(Error::Parse(format!(
                "vertex {i} has {} coordinates, expected {d}",
                coords.len()
            )));
        }
        vertices.push(QVector::new(coords));
    }
    if vertices.len() != n {
        return Err(Error::Parse(format!(
            "header promises {n} vertices, found {}",
            vertices.len()
        )));
    }
    VPolytope::new(vertices)
}

pub fn write_polytope(p: &VPolytope) -> String {
    let mut out = format!("polytope {} {}\n", p.ambient_dim(), p.len());
    for v in p.vertices() {
        let row: Vec<String> = v.coords().iter().map(format_rational).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub id: String,
    pub dim: isize,
    pub vertices: Vec<usize>,
}

/// JSON view of a lattice. `inclusions` lists covering pairs as
/// `[child_id, parent_id]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeExport {
    pub dim: isize,
    pub f_vector: Vec<usize>,
    pub faces: Vec<FaceRecord>,
    pub inclusions: Vec<[String; 2]>,
}

impl LatticeExport {
    pub fn new(l: &FaceLattice) -> Self {
        Self {
            dim: l.dim(),
            f_vector: l.f_vector(),
            faces: l
                .faces()
                .iter()
                .map(|f| FaceRecord {
                    id: f.label(),
                    dim: f.dim,
                    vertices: f.vertices.clone(),
                })
                .collect(),
            inclusions: l
                .covering_pairs()
                .map(|(c, p)| [l.label(c), l.label(p)])
                .collect(),
        }
    }
}
