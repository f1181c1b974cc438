//! JSON algebra files.
//!
//! ```json
//! {"brackets":[{"coeffs":{"2":"1"},"i":0,"j":1}],"dim":3,"split":{"vertical":[2]}}
//! ```
//!
//! Coefficients are rational strings (`"p/q"` or an integer). Each listed
//! bracket `[e_i, e_j]` implies its antisymmetric partner.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{StructureConstants, Vector};
use crate::foliation::Split;
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub coeffs: BTreeMap<usize, String>,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitEntry {
    pub vertical: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub brackets: Vec<BracketEntry>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitEntry>,
}

/// A loaded file: exact structure constants plus the optional extras.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedAlgebra {
    pub algebra: StructureConstants<Rational>,
    pub labels: Vec<String>,
    pub split: Option<Split>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

fn err(path: impl Into<String>, message: impl ToString) -> FileError {
    FileError {
        path: path.into(),
        message: message.to_string(),
    }
}

pub fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|k| format!("e{k}")).collect()
}

pub fn parse(text: &str) -> Result<AlgebraFile, FileError> {
    serde_json::from_str(text).map_err(|e| {
        err(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

pub fn load(text: &str) -> Result<LoadedAlgebra, FileError> {
    from_file(&parse(text)?)
}

pub fn from_file(file: &AlgebraFile) -> Result<LoadedAlgebra, FileError> {
    let dim = file.dim;
    if dim == 0 {
        return Err(err("dim", "must be at least 1"));
    }
    let mut brackets = Vec::with_capacity(file.brackets.len());
    for (n, b) in file.brackets.iter().enumerate() {
        let at = |field: &str| format!("brackets[{n}].{field}");
        for (field, index) in [("i", b.i), ("j", b.j)] {
            if index >= dim {
                return Err(err(
                    at(field),
                    format!("index {index} out of range for dim {dim}"),
                ));
            }
        }
        let mut coords = vec![Rational::zero(); dim];
        for (&k, text) in &b.coeffs {
            if k >= dim {
                return Err(err(
                    at("coeffs"),
                    format!("index {k} out of range for dim {dim}"),
                ));
            }
            coords[k] = parse_rational(text).map_err(|e| err(at(&format!("coeffs.{k}")), e))?;
        }
        brackets.push((b.i, b.j, Vector::new(coords)));
    }
    let algebra =
        StructureConstants::from_brackets(dim, brackets).map_err(|e| err("brackets", e))?;
    let labels = match &file.labels {
        Some(l) if l.len() != dim => {
            return Err(err(
                "labels",
                format!("expected {dim} labels, found {}", l.len()),
            ))
        }
        Some(l) => l.clone(),
        None => default_labels(dim),
    };
    let split = file
        .split
        .as_ref()
        .map(|s| Split::new(dim, s.vertical.iter().copied()))
        .transpose()
        .map_err(|e| err("split.vertical", e))?;
    Ok(LoadedAlgebra {
        algebra,
        labels,
        split,
    })
}

/// Canonical file: brackets `i < j` in lexicographic order, nonzero
/// coefficients only, reduced fractions.
pub fn to_file(
    a: &StructureConstants<Rational>,
    labels: Option<&[String]>,
    split: Option<&Split>,
) -> AlgebraFile {
    let n = a.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let coeffs: BTreeMap<usize, String> = (0..n)
                .filter(|&k| !a.get(i, j, k).is_zero())
                .map(|k| (k, format_rational(a.get(i, j, k))))
                .collect();
            if !coeffs.is_empty() {
                brackets.push(BracketEntry { coeffs, i, j });
            }
        }
    }
    AlgebraFile {
        brackets,
        dim: n,
        labels: labels.map(<[String]>::to_vec),
        split: split.map(|s| SplitEntry {
            vertical: s.vertical().to_vec(),
        }),
    }
}

pub fn save(file: &AlgebraFile, pretty: bool) -> String {
    let mut out = if pretty {
        serde_json::to_string_pretty(file)
    } else {
        serde_json::to_string(file)
    }
    .expect("plain data serializes");
    out.push('\n');
    out
}

/// Canonical re-serialization of any valid file.
pub fn canonicalize(text: &str, pretty: bool) -> Result<String, FileError> {
    let file = parse(text)?;
    let loaded = from_file(&file)?;
    Ok(save(
        &to_file(
            &loaded.algebra,
            file.labels.as_deref(),
            loaded.split.as_ref(),
        ),
        pretty,
    ))
}
