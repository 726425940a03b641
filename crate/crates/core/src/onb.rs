//! Orthonormal bases of the standard p-adic Hilbert space `ℚ^n`.
//!
//! A family `{τ_j}` is orthonormal when `⟨τ_j, τ_k⟩ = δ_{j,k}` and every
//! `‖τ_j‖ ≤ 1`; the two conditions together force `‖τ_j‖ = 1`. The Gram
//! condition already implies linear independence, so `n` vectors in
//! dimension `n` that pass validation span the space.

use num_traits::{One, Zero};

use crate::error::{Error, Violation};
use crate::linalg::{PMatrix, PVector};
use crate::rational::{max_norm, padic_abs, Prime, Rational, UltraNorm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthonormalBasis {
    prime: Prime,
    vectors: Vec<PVector>,
    /// Columns are the basis vectors.
    matrix: PMatrix,
}

impl OrthonormalBasis {
    /// Checks every condition and reports all failures at once.
    pub fn validate(prime: Prime, vectors: Vec<PVector>) -> Result<Self, Error> {
        let n = vectors.len();
        let mut violations = Vec::new();
        if n == 0 {
            return Err(Error::Validation(vec![Violation::WrongCount {
                expected: 1,
                found: 0,
            }]));
        }
        for (j, v) in vectors.iter().enumerate() {
            if v.len() != n {
                violations.push(Violation::WrongLength {
                    index: j + 1,
                    expected: n,
                    found: v.len(),
                });
            }
            if v.prime() != &prime {
                violations.push(Violation::PrimeMismatch {
                    index: j + 1,
                    expected: prime.get(),
                    found: v.prime().get(),
                });
            }
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        for (j, v) in vectors.iter().enumerate() {
            let norm = v.sup_norm();
            if norm > UltraNorm::ONE {
                violations.push(Violation::VectorNorm {
                    index: j + 1,
                    prime: prime.get(),
                    norm,
                });
            }
        }
        for j in 0..n {
            for k in j..n {
                let value = vectors[j].inner_product(&vectors[k])?;
                let expected_one = j == k;
                if (expected_one && !value.is_one()) || (!expected_one && !value.is_zero()) {
                    violations.push(Violation::NotOrthonormal {
                        j: j + 1,
                        k: k + 1,
                        value,
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let matrix = PMatrix::from_columns(&vectors)?;
        Ok(OrthonormalBasis {
            prime,
            vectors,
            matrix,
        })
    }

    pub fn standard(prime: Prime, n: usize) -> Self {
        let vectors = (0..n).map(|j| PVector::unit(prime.clone(), n, j)).collect();
        OrthonormalBasis {
            matrix: PMatrix::identity(prime.clone(), n),
            prime,
            vectors,
        }
    }

    /// The columns of a unitary matrix.
    pub fn from_unitary(v: &PMatrix) -> Result<Self, Error> {
        Self::validate(v.prime().clone(), v.columns())
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[PVector] {
        &self.vectors
    }

    /// `τ_{j+1}`.
    pub fn vector(&self, j: usize) -> &PVector {
        &self.vectors[j]
    }

    /// Matrix with columns `τ_1, …, τ_n`.
    pub fn matrix(&self) -> &PMatrix {
        &self.matrix
    }

    pub(crate) fn check_vector(&self, x: &PVector) -> Result<(), Error> {
        self.vectors[0].check_compatible(x)
    }

    pub(crate) fn check_same_space(&self, other: &OrthonormalBasis) -> Result<(), Error> {
        self.vectors[0].check_compatible(&other.vectors[0])
    }

    /// `(⟨x, τ_j⟩)_j`.
    pub fn fourier_coefficients(&self, x: &PVector) -> Result<Vec<Rational>, Error> {
        self.check_vector(x)?;
        self.vectors.iter().map(|t| x.inner_product(t)).collect()
    }

    /// `Σ_j a_j τ_j`.
    pub fn synthesize(&self, coeffs: &[Rational]) -> Result<PVector, Error> {
        PVector::linear_combination(coeffs, &self.vectors)
    }

    /// `max_j |⟨x, τ_j⟩|`.
    pub fn parseval_norm(&self, x: &PVector) -> Result<UltraNorm, Error> {
        Ok(max_norm(
            self.fourier_coefficients(x)?
                .iter()
                .map(|c| padic_abs(c, &self.prime)),
        ))
    }

    /// `Σ_j ⟨x, τ_j⟩⟨τ_j, y⟩`.
    pub fn parseval_inner_product(&self, x: &PVector, y: &PVector) -> Result<Rational, Error> {
        let cx = self.fourier_coefficients(x)?;
        let cy = self.fourier_coefficients(y)?;
        Ok(cx
            .iter()
            .zip(&cy)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }
}

/// The unitary `V: x ↦ Σ_j ⟨x, τ_j⟩ ω_j`, so that `Vτ_j = ω_j`.
pub fn change_of_basis(from: &OrthonormalBasis, to: &OrthonormalBasis) -> Result<PMatrix, Error> {
    from.check_same_space(to)?;
    to.matrix().mul(&from.matrix().transpose())
}

/// `{Vτ_j}` for a unitary `V`, revalidated.
pub fn apply_unitary_to_onb(
    v: &PMatrix,
    basis: &OrthonormalBasis,
) -> Result<OrthonormalBasis, Error> {
    if v.prime() != basis.prime() || v.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: v.dim(),
        });
    }
    if !v.is_unitary() {
        return Err(Error::NotUnitary);
    }
    let image = basis
        .vectors()
        .iter()
        .map(|t| v.matvec(t))
        .collect::<Result<Vec<_>, _>>()?;
    OrthonormalBasis::validate(basis.prime().clone(), image)
}
