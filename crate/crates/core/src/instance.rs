//! JSON instance files.
//!
//! ```json
//! {
//!   "kind": "hilbert",
//!   "prime": 7,
//!   "dimension": 2,
//!   "tau":   [["1", "0"], ["0", "1"]],
//!   "omega": [["24/25", "-7/25"], ["7/25", "24/25"]],
//!   "M": [1],
//!   "N": [2],
//!   "vectors": [["1", "0"]]
//! }
//! ```
//!
//! Row `j` of `tau`/`omega` is the basis vector `τ_j`/`ω_j`. Banach
//! instances (`"kind": "banach"`) also carry `f` and `g`, whose row `j` is the
//! coordinate functional `f_j`/`g_j`. Indices in `M` and `N` are 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::banach::BiorthogonalSystem;
use crate::error::{Error, Violation};
use crate::linalg::{PMatrix, PVector};
use crate::onb::OrthonormalBasis;
use crate::rational::{format_rational, parse_rational, Prime, Rational};
use crate::uncertainty::IndexSubset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Hilbert,
    Banach,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Hilbert => "hilbert",
            InstanceKind::Banach => "banach",
        })
    }
}

type StringMatrix = Vec<Vec<String>>;

/// On-disk representation; every number is a fraction string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: InstanceKind,
    pub prime: u64,
    pub dimension: usize,
    pub tau: StringMatrix,
    pub omega: StringMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<StringMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<StringMatrix>,
    #[serde(rename = "M", default)]
    pub m: Vec<usize>,
    #[serde(rename = "N", default)]
    pub n: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: StringMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field_error(field: impl Into<String>, message: impl ToString) -> InstanceError {
    InstanceError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// A violation found in one named object of the file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledViolation {
    pub object: &'static str,
    pub violation: Violation,
}

impl fmt::Display for LabelledViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.object, self.violation)
    }
}

/// Parsed but not yet validated contents.
#[derive(Clone, Debug)]
pub struct ParsedInstance {
    pub kind: InstanceKind,
    pub prime: Prime,
    pub dimension: usize,
    pub tau: Vec<PVector>,
    pub omega: Vec<PVector>,
    pub f: Option<Vec<PVector>>,
    pub g: Option<Vec<PVector>>,
    pub m: IndexSubset,
    pub n: IndexSubset,
    pub vectors: Vec<PVector>,
}

#[derive(Clone, Debug)]
pub struct HilbertInstance {
    pub tau: OrthonormalBasis,
    pub omega: OrthonormalBasis,
    pub m: IndexSubset,
    pub n: IndexSubset,
    pub vectors: Vec<PVector>,
}

#[derive(Clone, Debug)]
pub struct BanachInstance {
    pub s1: BiorthogonalSystem,
    pub s2: BiorthogonalSystem,
    pub m: IndexSubset,
    pub n: IndexSubset,
    pub vectors: Vec<PVector>,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Hilbert(HilbertInstance),
    Banach(BanachInstance),
}

impl Instance {
    pub fn prime(&self) -> &Prime {
        match self {
            Instance::Hilbert(h) => h.tau.prime(),
            Instance::Banach(b) => b.s1.prime(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Instance::Hilbert(h) => h.tau.dim(),
            Instance::Banach(b) => b.s1.dim(),
        }
    }

    pub fn subsets(&self) -> (&IndexSubset, &IndexSubset) {
        match self {
            Instance::Hilbert(h) => (&h.m, &h.n),
            Instance::Banach(b) => (&b.m, &b.n),
        }
    }

    pub fn vectors(&self) -> &[PVector] {
        match self {
            Instance::Hilbert(h) => &h.vectors,
            Instance::Banach(b) => &b.vectors,
        }
    }
}

pub(crate) fn parse_vector(
    prime: &Prime,
    dimension: usize,
    field: &str,
    row: &[String],
) -> Result<PVector, InstanceError> {
    if row.len() != dimension {
        return Err(field_error(
            field,
            format!("expected {dimension} entries, found {}", row.len()),
        ));
    }
    let entries = row
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| field_error(format!("{field}[{i}]"), e)))
        .collect::<Result<Vec<Rational>, _>>()?;
    PVector::new(prime.clone(), entries).map_err(|e| field_error(field, e))
}

fn parse_rows(
    prime: &Prime,
    dimension: usize,
    field: &str,
    rows: &[Vec<String>],
) -> Result<Vec<PVector>, InstanceError> {
    if rows.len() != dimension {
        return Err(field_error(
            field,
            format!("expected {dimension} rows, found {}", rows.len()),
        ));
    }
    rows.iter()
        .enumerate()
        .map(|(j, row)| parse_vector(prime, dimension, &format!("{field}[{j}]"), row))
        .collect()
}

fn render_rows(rows: impl IntoIterator<Item = PVector>) -> StringMatrix {
    rows.into_iter()
        .map(|v| v.entries().iter().map(format_rational).collect())
        .collect()
}

/// Largest dimension accepted from files.
pub const MAX_DIMENSION: usize = 64;

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn parse(&self) -> Result<ParsedInstance, InstanceError> {
        let prime = Prime::new(self.prime).map_err(|e| field_error("prime", e))?;
        let d = self.dimension;
        if d == 0 || d > MAX_DIMENSION {
            return Err(field_error(
                "dimension",
                format!("must be between 1 and {MAX_DIMENSION}"),
            ));
        }
        let tau = parse_rows(&prime, d, "tau", &self.tau)?;
        let omega = parse_rows(&prime, d, "omega", &self.omega)?;
        let (f, g) = match self.kind {
            InstanceKind::Hilbert => {
                if self.f.is_some() || self.g.is_some() {
                    return Err(field_error("f/g", "only allowed for kind \"banach\""));
                }
                (None, None)
            }
            InstanceKind::Banach => {
                let f = self
                    .f
                    .as_ref()
                    .ok_or_else(|| field_error("f", "required for kind \"banach\""))?;
                let g = self
                    .g
                    .as_ref()
                    .ok_or_else(|| field_error("g", "required for kind \"banach\""))?;
                (
                    Some(parse_rows(&prime, d, "f", f)?),
                    Some(parse_rows(&prime, d, "g", g)?),
                )
            }
        };
        let m = IndexSubset::from_one_based(d, &self.m).map_err(|e| field_error("M", e))?;
        let n = IndexSubset::from_one_based(d, &self.n).map_err(|e| field_error("N", e))?;
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, row)| parse_vector(&prime, d, &format!("vectors[{i}]"), row))
            .collect::<Result<_, _>>()?;
        Ok(ParsedInstance {
            kind: self.kind,
            prime,
            dimension: d,
            tau,
            omega,
            f,
            g,
            m,
            n,
            vectors,
        })
    }

    pub fn from_hilbert(h: &HilbertInstance) -> Self {
        InstanceFile {
            kind: InstanceKind::Hilbert,
            prime: h.tau.prime().get(),
            dimension: h.tau.dim(),
            tau: render_rows(h.tau.vectors().iter().cloned()),
            omega: render_rows(h.omega.vectors().iter().cloned()),
            f: None,
            g: None,
            m: h.m.one_based(),
            n: h.n.one_based(),
            vectors: render_rows(h.vectors.iter().cloned()),
        }
    }

    pub fn from_banach(b: &BanachInstance) -> Self {
        let functionals =
            |s: &BiorthogonalSystem| render_rows((0..s.dim()).map(|j| s.functional(j)));
        InstanceFile {
            kind: InstanceKind::Banach,
            prime: b.s1.prime().get(),
            dimension: b.s1.dim(),
            tau: render_rows(b.s1.basis_matrix().columns()),
            omega: render_rows(b.s2.basis_matrix().columns()),
            f: Some(functionals(&b.s1)),
            g: Some(functionals(&b.s2)),
            m: b.m.one_based(),
            n: b.n.one_based(),
            vectors: render_rows(b.vectors.iter().cloned()),
        }
    }
}

/// Splits a validation result into the validated value or its violations.
/// Shapes and primes are checked while parsing, so any other error is a bug.
fn split<T>(
    object: &'static str,
    result: Result<T, Error>,
    out: &mut Vec<LabelledViolation>,
) -> Option<T> {
    match result {
        Ok(value) => Some(value),
        Err(Error::Validation(vs)) => {
            out.extend(
                vs.into_iter()
                    .map(|violation| LabelledViolation { object, violation }),
            );
            None
        }
        Err(other) => panic!("{object}: unexpected error after parsing: {other}"),
    }
}

impl ParsedInstance {
    /// Validates every object, reporting the violations of all of them.
    pub fn validate(self) -> Result<Instance, Vec<LabelledViolation>> {
        let mut violations = Vec::new();
        match self.kind {
            InstanceKind::Hilbert => {
                let tau = split(
                    "tau",
                    OrthonormalBasis::validate(self.prime.clone(), self.tau),
                    &mut violations,
                );
                let omega = split(
                    "omega",
                    OrthonormalBasis::validate(self.prime.clone(), self.omega),
                    &mut violations,
                );
                match (tau, omega) {
                    (Some(tau), Some(omega)) => Ok(Instance::Hilbert(HilbertInstance {
                        tau,
                        omega,
                        m: self.m,
                        n: self.n,
                        vectors: self.vectors,
                    })),
                    _ => Err(violations),
                }
            }
            InstanceKind::Banach => {
                let build = |basis: &[PVector], functionals: &[PVector]| {
                    let t = PMatrix::from_columns(basis)?;
                    let f = PMatrix::from_row_vectors(functionals)?;
                    BiorthogonalSystem::validate(t, f)
                };
                let s1 = split(
                    "(f, tau)",
                    build(&self.tau, self.f.as_deref().unwrap_or_default()),
                    &mut violations,
                );
                let s2 = split(
                    "(g, omega)",
                    build(&self.omega, self.g.as_deref().unwrap_or_default()),
                    &mut violations,
                );
                match (s1, s2) {
                    (Some(s1), Some(s2)) => Ok(Instance::Banach(BanachInstance {
                        s1,
                        s2,
                        m: self.m,
                        n: self.n,
                        vectors: self.vectors,
                    })),
                    _ => Err(violations),
                }
            }
        }
    }
}
