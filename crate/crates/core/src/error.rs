use std::fmt;

use thiserror::Error;

use crate::rational::{format_rational, ParseRationalError, Rational, UltraNorm};

/// One failed condition found while validating a basis or a biorthogonal
/// system. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongCount {
        expected: usize,
        found: usize,
    },
    WrongLength {
        index: usize,
        expected: usize,
        found: usize,
    },
    PrimeMismatch {
        index: usize,
        expected: u64,
        found: u64,
    },
    /// `‖τ_j‖ > 1`.
    VectorNorm {
        index: usize,
        prime: u64,
        norm: UltraNorm,
    },
    /// `⟨τ_j, τ_k⟩ ≠ δ_{j,k}`.
    NotOrthonormal {
        j: usize,
        k: usize,
        value: Rational,
    },
    /// `f_j(τ_k) ≠ δ_{j,k}`.
    NotBiorthogonal {
        j: usize,
        k: usize,
        value: Rational,
    },
    /// `‖f_j‖ > 1`.
    FunctionalNorm {
        index: usize,
        prime: u64,
        norm: UltraNorm,
    },
}

fn render(norm: &UltraNorm, prime: u64) -> String {
    match norm {
        UltraNorm::Zero => "0".into(),
        UltraNorm::Power(e) => format!("{prime}^{e}"),
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongCount { expected, found } => {
                write!(f, "expected {expected} vectors, found {found}")
            }
            Violation::WrongLength {
                index,
                expected,
                found,
            } => {
                write!(f, "vector {index} has length {found}, expected {expected}")
            }
            Violation::PrimeMismatch {
                index,
                expected,
                found,
            } => {
                write!(f, "vector {index} is over p={found}, expected p={expected}")
            }
            Violation::VectorNorm { index, prime, norm } => {
                write!(f, "vector {index}: norm {} exceeds 1", render(norm, *prime))
            }
            Violation::NotOrthonormal { j, k, value } => write!(
                f,
                "<tau_{j}, tau_{k}> = {}, expected {}",
                format_rational(value),
                u8::from(j == k)
            ),
            Violation::NotBiorthogonal { j, k, value } => write!(
                f,
                "f_{j}(tau_{k}) = {}, expected {}",
                format_rational(value),
                u8::from(j == k)
            ),
            Violation::FunctionalNorm { index, prime, norm } => {
                write!(
                    f,
                    "functional {index}: norm {} exceeds 1",
                    render(norm, *prime)
                )
            }
        }
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors must have at least one entry")]
    EmptyVector,
    #[error("matrix is singular")]
    Singular,
    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("validation failed: {}", join(.0))]
    Validation(Vec<Violation>),
    #[error("hypothesis violated: coherence {coherence:?} is not below 1")]
    HypothesisViolated { coherence: UltraNorm },
    #[error("operator is not unitary")]
    NotUnitary,
    #[error("operator is not an invertible isometry")]
    NotIsometry,
    #[error("vector is outside the entropy domain: {0}")]
    Membership(&'static str),
    #[error("instance generator gave up after {attempts} degenerate draws")]
    GeneratorExhausted { attempts: usize },
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
}
