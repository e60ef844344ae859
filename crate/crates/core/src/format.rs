//! Text and JSON file formats.
//!
//! Rationals are written as `"p/q"`, or `"p"` when `q = 1`.

use serde::{Deserialize, Serialize};

use crate::exactnum::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::hull::Polytope;
use crate::perm::{Permutation, PermutationGroup};
use crate::{Error, Result};

/// Parses a group file: one generator per line in cycle notation. Blank
/// lines and lines starting with `#` are skipped. An optional `degree: N`
/// line fixes the degree; otherwise it is the largest point used plus one.
pub fn parse_group_file(text: &str) -> Result<PermutationGroup> {
    let mut degree = None;
    let mut lines = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree:") {
            let d = rest
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad degree line {line:?}: {e}")))?;
            degree = Some(d);
        } else {
            lines.push(line);
        }
    }
    if lines.is_empty() {
        return Err(Error::Parse("group file lists no generators".into()));
    }
    let degree = match degree {
        Some(d) => d,
        None => lines
            .iter()
            .map(|l| Permutation::parse_cycles(l, None).map(|p| p.degree()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(0)
            .max(1),
    };
    let gens = lines
        .iter()
        .map(|l| Permutation::parse_cycles(l, Some(degree)))
        .collect::<Result<Vec<_>>>()?;
    PermutationGroup::generate(degree, &gens)
}

/// Parses a vertex permutation of `B_n` given as `count` 0-based images, one
/// per line.
pub fn parse_alpha(text: &str, count: usize) -> Result<Permutation> {
    let images = text
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad image {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if images.len() != count {
        return Err(Error::Parse(format!("expected {count} images, found {}", images.len())));
    }
    Permutation::from_images(images)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixGroupDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Order of the abstract group the generators represent, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub dim: usize,
    pub generators: Vec<Vec<Vec<String>>>,
}

impl MatrixGroupDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_matrices(name: Option<String>, order: Option<usize>, generators: &[RationalMatrix]) -> Self {
        let dim = generators.first().map_or(0, RationalMatrix::rows);
        Self {
            name,
            order,
            dim,
            generators: generators.iter().map(matrix_strings).collect(),
        }
    }

    pub fn matrices(&self) -> Result<Vec<RationalMatrix>> {
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.dim || g.iter().any(|r| r.len() != self.dim) {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: g.len(),
                    });
                }
                let rows = g
                    .iter()
                    .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                RationalMatrix::from_rows(&rows)
            })
            .collect()
    }
}

fn matrix_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(format_rational).collect())
        .collect()
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Input to the hull command: `{"vertices": [["p/q", …], …]}`.
#[derive(Clone, Debug, Deserialize)]
pub struct PointsDocument {
    pub vertices: Vec<Vec<String>>,
}

pub fn parse_points(text: &str) -> Result<Vec<Vec<Rational>>> {
    let doc: PointsDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.vertices
        .iter()
        .map(|v| v.iter().map(|x| parse_rational(x)).collect())
        .collect()
}

pub const FACET_CONVENTION: &str = "normal·x <= offset";

#[derive(Clone, Debug, Serialize)]
pub struct FacetDocument {
    pub normal: Vec<String>,
    pub offset: String,
    /// Indices of the vertices on this facet.
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeDocument {
    pub convention: &'static str,
    pub ambient_dim: usize,
    pub affine_dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub facets: Vec<FacetDocument>,
}

impl From<&Polytope> for PolytopeDocument {
    fn from(p: &Polytope) -> Self {
        Self {
            convention: FACET_CONVENTION,
            ambient_dim: p.ambient_dim,
            affine_dim: p.affine_dim,
            vertices: p.vertices.iter().map(|v| vector_strings(v)).collect(),
            facets: p
                .facets
                .iter()
                .enumerate()
                .map(|(k, f)| FacetDocument {
                    normal: vector_strings(&f.normal),
                    offset: format_rational(&f.offset),
                    vertices: p.tight_set(k),
                })
                .collect(),
        }
    }
}
