//! Orthonormal bases of a finite-dimensional non-Archimedean Banach space,
//! given as a basis `{τ_j}` together with its coordinate functionals `{f_j}`.
//!
//! Functionals are row vectors: `f_j(x)` is row `j` of the functional matrix
//! times the column `x`. A pair is orthonormal when `f_j(τ_k) = δ_{j,k}`,
//! `‖τ_j‖ ≤ 1` and `‖f_j‖ ≤ 1`, where the dual norm of a row is its largest
//! entry absolute value.

use num_traits::{One, Zero};

use crate::error::{Error, Violation};
use crate::linalg::{nullspace, PMatrix, PVector};
use crate::onb::OrthonormalBasis;
use crate::rational::{max_norm, padic_abs, Prime, Rational, UltraNorm};
use crate::uncertainty::{IndexSubset, UncertaintyReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiorthogonalSystem {
    /// Columns are `τ_j`.
    basis: PMatrix,
    /// Rows are `f_j`.
    functionals: PMatrix,
}

impl BiorthogonalSystem {
    pub fn validate(basis: PMatrix, functionals: PMatrix) -> Result<Self, Error> {
        if basis.prime() != functionals.prime() {
            return Err(Error::PrimeMismatch {
                left: basis.prime().get(),
                right: functionals.prime().get(),
            });
        }
        if basis.dim() != functionals.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: functionals.dim(),
            });
        }
        let prime = basis.prime().get();
        let n = basis.dim();
        let mut violations = Vec::new();
        for j in 0..n {
            let norm = basis.column(j).sup_norm();
            if norm > UltraNorm::ONE {
                violations.push(Violation::VectorNorm {
                    index: j + 1,
                    prime,
                    norm,
                });
            }
        }
        for j in 0..n {
            let norm = functionals.row(j).sup_norm();
            if norm > UltraNorm::ONE {
                violations.push(Violation::FunctionalNorm {
                    index: j + 1,
                    prime,
                    norm,
                });
            }
        }
        let product = functionals.mul(&basis)?;
        for j in 0..n {
            for k in 0..n {
                let value = product.get(j, k);
                let ok = if j == k {
                    value.is_one()
                } else {
                    value.is_zero()
                };
                if !ok {
                    violations.push(Violation::NotBiorthogonal {
                        j: j + 1,
                        k: k + 1,
                        value: value.clone(),
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        Ok(BiorthogonalSystem { basis, functionals })
    }

    /// `({ζ_j}, {e_j})`.
    pub fn canonical(prime: Prime, n: usize) -> Self {
        BiorthogonalSystem {
            basis: PMatrix::identity(prime.clone(), n),
            functionals: PMatrix::identity(prime, n),
        }
    }

    /// The system `({⟨·, τ_j⟩}, {τ_j})` induced by an inner-product basis.
    pub fn from_onb(onb: &OrthonormalBasis) -> Self {
        BiorthogonalSystem {
            basis: onb.matrix().clone(),
            functionals: onb.matrix().transpose(),
        }
    }

    pub fn prime(&self) -> &Prime {
        self.basis.prime()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis_matrix(&self) -> &PMatrix {
        &self.basis
    }

    pub fn functional_matrix(&self) -> &PMatrix {
        &self.functionals
    }

    /// `τ_{j+1}`.
    pub fn tau(&self, j: usize) -> PVector {
        self.basis.column(j)
    }

    /// `f_{j+1}` as a row vector.
    pub fn functional(&self, j: usize) -> PVector {
        self.functionals.row(j)
    }

    /// Whether `f_j = ⟨·, τ_j⟩` for all `j`, i.e. the functional matrix is
    /// the transpose of the basis matrix.
    pub fn is_inner_product_induced(&self) -> bool {
        self.functionals == self.basis.transpose()
    }

    fn check_vector(&self, x: &PVector) -> Result<(), Error> {
        self.tau(0).check_compatible(x)
    }

    fn check_same_space(&self, other: &BiorthogonalSystem) -> Result<(), Error> {
        self.tau(0).check_compatible(&other.tau(0))
    }

    /// `f_{j+1}(x)`.
    pub fn evaluate(&self, j: usize, x: &PVector) -> Result<Rational, Error> {
        self.functional(j).inner_product(x)
    }

    /// `(f_j(x))_j`.
    pub fn coefficients(&self, x: &PVector) -> Result<Vec<Rational>, Error> {
        Ok(self.functionals.matvec(x)?.into_entries())
    }

    /// `Σ_j a_j τ_j`.
    pub fn synthesize(&self, coeffs: &[Rational]) -> Result<PVector, Error> {
        let a = PVector::new(self.prime().clone(), coeffs.to_vec())?;
        self.basis.matvec(&a)
    }

    /// `Σ_j b_j f_j` as a row vector.
    pub fn synthesize_functional(&self, coeffs: &[Rational]) -> Result<PVector, Error> {
        let b = PVector::new(self.prime().clone(), coeffs.to_vec())?;
        self.functionals.vecmat(&b)
    }

    /// `(φ(τ_j))_j` for a row vector `φ`.
    pub fn functional_on_basis(&self, phi: &PVector) -> Result<Vec<Rational>, Error> {
        Ok(self.basis.vecmat(phi)?.into_entries())
    }

    /// `max_j |f_j(x)|`.
    pub fn parseval_norm(&self, x: &PVector) -> Result<UltraNorm, Error> {
        Ok(max_norm(
            self.coefficients(x)?
                .iter()
                .map(|c| padic_abs(c, self.prime())),
        ))
    }

    /// `‖φ‖ = max_j |φ(τ_j)|`.
    pub fn functional_norm(&self, phi: &PVector) -> Result<UltraNorm, Error> {
        Ok(max_norm(
            self.functional_on_basis(phi)?
                .iter()
                .map(|c| padic_abs(c, self.prime())),
        ))
    }

    /// `‖x‖_{S,f} = max_{j∈S} |f_j(x)|`.
    pub fn restricted_max(&self, s: &IndexSubset, x: &PVector) -> Result<UltraNorm, Error> {
        check_subset(s, self.dim())?;
        self.check_vector(x)?;
        let coeffs = self.coefficients(x)?;
        Ok(max_norm(
            s.iter().map(|j| padic_abs(&coeffs[j], self.prime())),
        ))
    }

    /// Matrix of `P_S x = Σ_{j∈S} f_j(x) τ_j`.
    pub fn projection_matrix(&self, s: &IndexSubset) -> Result<PMatrix, Error> {
        check_subset(s, self.dim())?;
        let n = self.dim();
        let mut p = PMatrix::zeros(self.prime().clone(), n);
        for j in s.iter() {
            for r in 0..n {
                let t = self.basis.get(r, j);
                if t.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let cur = p.get(r, c) + t * self.functionals.get(j, c);
                    p.set(r, c, cur);
                }
            }
        }
        Ok(p)
    }

    /// `({f_j V⁻¹}, {Vτ_j})` for an invertible isometry `V`.
    pub fn apply_isometry(&self, v: &PMatrix) -> Result<BiorthogonalSystem, Error> {
        if !v.is_isometry() {
            return Err(Error::NotIsometry);
        }
        let basis = v.mul(&self.basis)?;
        let functionals = self.functionals.mul(&v.inverse()?)?;
        BiorthogonalSystem::validate(basis, functionals)
    }
}

fn check_subset(s: &IndexSubset, n: usize) -> Result<(), Error> {
    if s.ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: s.ambient(),
        });
    }
    Ok(())
}

fn check_pair(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<(), Error> {
    s1.check_same_space(s2)?;
    check_subset(m, s1.dim())?;
    check_subset(n, s1.dim())
}

/// The isometry `V: x ↦ Σ_j f_j(x) ω_j` with `Vτ_j = ω_j` and `g_j = f_j V⁻¹`.
pub fn characterize_pair(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
) -> Result<PMatrix, Error> {
    s1.check_same_space(s2)?;
    s2.basis.mul(&s1.functionals)
}

/// `max_{j∈M, k∈N} |g_k(τ_j)|`.
pub fn nonarch_coherence(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<UltraNorm, Error> {
    check_pair(s1, s2, m, n)?;
    let cross = &s2.functionals.mul(&s1.basis)?;
    Ok(max_norm(m.iter().flat_map(|j| {
        n.iter()
            .map(move |k| padic_abs(cross.get(k, j), s1.prime()))
    })))
}

/// Matrix of `V: x ↦ Σ_k g_k(x) τ_k`.
pub fn nonarch_proof_operator(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
) -> Result<PMatrix, Error> {
    s1.check_same_space(s2)?;
    s1.basis.mul(&s2.functionals)
}

/// `‖P_N V P_M‖` with projections taken in `S₁`.
pub fn nonarch_pnvpm_norm(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<UltraNorm, Error> {
    check_pair(s1, s2, m, n)?;
    if m.is_empty() || n.is_empty() {
        return Ok(UltraNorm::Zero);
    }
    let v = nonarch_proof_operator(s1, s2)?;
    let pm = s1.projection_matrix(m)?;
    let pn = s1.projection_matrix(n)?;
    Ok(pn.mul(&v)?.mul(&pm)?.operator_norm())
}

/// `‖x‖ ≤ 1/(1 − max_{j∈M,k∈N} |g_k(τ_j)|) · max{max_{j∉M} |f_j(x)|, max_{k∉N} |g_k(x)|}`.
pub fn check_nonarch_uncertainty(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
    x: &PVector,
) -> Result<UncertaintyReport, Error> {
    let c = nonarch_coherence(s1, s2, m, n)?;
    if c >= UltraNorm::ONE {
        return Err(Error::HypothesisViolated { coherence: c });
    }
    s1.check_vector(x)?;
    let restricted = s1
        .restricted_max(&m.complement(), x)?
        .max(s2.restricted_max(&n.complement(), x)?);
    let pnvpm = nonarch_pnvpm_norm(s1, s2, m, n)?;
    Ok(UncertaintyReport::assemble(
        s1.prime(),
        c,
        pnvpm,
        x.sup_norm(),
        restricted,
    ))
}

/// `max_{j∈M, k∈N} |f_k(ω_j)|`: the hypothesis once the roles of the two
/// systems are interchanged.
pub fn swapped_coherence(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<UltraNorm, Error> {
    check_pair(s1, s2, m, n)?;
    let cross = &s1.functionals.mul(&s2.basis)?;
    Ok(max_norm(m.iter().flat_map(|j| {
        n.iter()
            .map(move |k| padic_abs(cross.get(k, j), s1.prime()))
    })))
}

/// The interchanged inequality
/// `‖x‖ ≤ 1/(1 − max_{j∈M,k∈N} |f_k(ω_j)|) · max{max_{k∉M} |g_k(x)|, max_{j∉N} |f_j(x)|}`.
///
/// `M` indexes `ω` and `N` indexes the functionals `f`; with the indices
/// attached the other way round the bound can fail.
pub fn check_nonarch_uncertainty_swapped(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
    x: &PVector,
) -> Result<UncertaintyReport, Error> {
    let c = swapped_coherence(s1, s2, m, n)?;
    if c >= UltraNorm::ONE {
        return Err(Error::HypothesisViolated { coherence: c });
    }
    s1.check_vector(x)?;
    let restricted = s2
        .restricted_max(&m.complement(), x)?
        .max(s1.restricted_max(&n.complement(), x)?);
    let pnvpm = if m.is_empty() || n.is_empty() {
        UltraNorm::Zero
    } else {
        // x ↦ Σ_j f_j(x) ω_j, projections taken in S₂.
        let v = s2.basis.mul(&s1.functionals)?;
        s2.projection_matrix(n)?
            .mul(&v)?
            .mul(&s2.projection_matrix(m)?)?
            .operator_norm()
    };
    Ok(UncertaintyReport::assemble(
        s1.prime(),
        c,
        pnvpm,
        x.sup_norm(),
        restricted,
    ))
}

/// Whether `f_j(x) = 0` for `j ∉ M` and `g_k(x) = 0` for `k ∉ N` force
/// `x = 0`, by exact elimination.
pub fn banach_support_annihilation(
    s1: &BiorthogonalSystem,
    s2: &BiorthogonalSystem,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<bool, Error> {
    let c = nonarch_coherence(s1, s2, m, n)?;
    if c >= UltraNorm::ONE {
        return Err(Error::HypothesisViolated { coherence: c });
    }
    let rows: Vec<Vec<Rational>> = m
        .complement()
        .iter()
        .map(|j| s1.functional(j).into_entries())
        .chain(
            n.complement()
                .iter()
                .map(|k| s2.functional(k).into_entries()),
        )
        .collect();
    Ok(nullspace(&rows, s1.dim()).is_empty())
}
