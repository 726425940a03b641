//! The uncertainty principle for a pair of p-adic orthonormal bases.
//!
//! For bases `{τ_j}`, `{ω_k}` and index sets `M`, `N` with coherence
//! `c = max_{j∈M,k∈N} |⟨τ_j, ω_k⟩| < 1`, every `x` satisfies
//!
//! ```text
//! ‖x‖ ≤ 1/(1 − c) · max{ max_{j∉M} |⟨x, τ_j⟩|, max_{k∉N} |⟨x, ω_k⟩| }
//! ```
//!
//! and consequently a vector supported on `M` in `τ` and on `N` in `ω` is 0.
//! Everything here is exact: `c` is `p^e` or 0, so `1/(1 − c)` is rational.
//!
//! Maxima over an empty index set are [`UltraNorm::Zero`].

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{nullspace, PMatrix, PVector};
use crate::onb::OrthonormalBasis;
use crate::rational::{
    format_rational, max_norm, padic_abs, ultranorm_to_rational, valuation, Prime, Rational,
    UltraNorm,
};

/// A subset of `{1, …, n}`, stored 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSubset {
    n: usize,
    members: Vec<usize>,
}

impl IndexSubset {
    pub fn from_zero_based(n: usize, indices: &[usize]) -> Result<Self, Error> {
        let mut members = indices.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, n });
        }
        Ok(IndexSubset { n, members })
    }

    /// From the 1-based indices used in instance files.
    pub fn from_one_based(n: usize, indices: &[usize]) -> Result<Self, Error> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        let zero_based: Vec<usize> = indices.iter().map(|i| i - 1).collect();
        Self::from_zero_based(n, &zero_based)
    }

    /// Bit `i` of `mask` selects index `i` (0-based).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        IndexSubset {
            n,
            members: (0..n).filter(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        IndexSubset { n, members: vec![] }
    }

    pub fn full(n: usize) -> Self {
        IndexSubset {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Cardinality `o(S)`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn complement(&self) -> IndexSubset {
        IndexSubset {
            n: self.n,
            members: (0..self.n).filter(|&i| !self.contains(i)).collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IndexSubset) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
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

/// One evaluation of the uncertainty inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncertaintyReport {
    pub prime: Prime,
    pub coherence: UltraNorm,
    /// `1/(1 − coherence)`.
    pub bound_constant: Rational,
    /// `‖x‖`.
    pub lhs_norm: UltraNorm,
    pub rhs_value: Rational,
    pub holds: bool,
    /// `‖P_N V P_M‖` for the operator `V` of the proof.
    pub pnvpm_norm: UltraNorm,
}

impl UncertaintyReport {
    pub(crate) fn assemble(
        prime: &Prime,
        coherence: UltraNorm,
        pnvpm_norm: UltraNorm,
        lhs_norm: UltraNorm,
        restricted: UltraNorm,
    ) -> Self {
        let bound_constant = (Rational::one() - ultranorm_to_rational(coherence, prime)).recip();
        let rhs_value = &bound_constant * ultranorm_to_rational(restricted, prime);
        let holds = ultranorm_to_rational(lhs_norm, prime) <= rhs_value;
        UncertaintyReport {
            prime: prime.clone(),
            coherence,
            bound_constant,
            lhs_norm,
            rhs_value,
            holds,
            pnvpm_norm,
        }
    }

    pub fn lhs_rational(&self) -> Rational {
        ultranorm_to_rational(self.lhs_norm, &self.prime)
    }

    /// `rhs / lhs`, undefined for `x = 0`.
    pub fn ratio(&self) -> Option<Rational> {
        let lhs = self.lhs_rational();
        (!lhs.is_zero()).then(|| &self.rhs_value / lhs)
    }
}

impl fmt::Display for UncertaintyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coherence={} constant={} lhs={} rhs={} holds={} pnvpm={}",
            self.coherence.render(&self.prime),
            format_rational(&self.bound_constant),
            self.lhs_norm.render(&self.prime),
            format_rational(&self.rhs_value),
            self.holds,
            self.pnvpm_norm.render(&self.prime)
        )
    }
}

/// `P_S x = Σ_{j∈S} ⟨x, τ_j⟩ τ_j`.
pub fn project(basis: &OrthonormalBasis, s: &IndexSubset, x: &PVector) -> Result<PVector, Error> {
    check_subset(s, basis.dim())?;
    let coeffs = basis.fourier_coefficients(x)?;
    let masked: Vec<Rational> = coeffs
        .into_iter()
        .enumerate()
        .map(|(j, c)| if s.contains(j) { c } else { Rational::zero() })
        .collect();
    basis.synthesize(&masked)
}

/// Matrix of `P_S`, i.e. `Σ_{j∈S} τ_j τ_jᵀ`.
pub fn projection_matrix(basis: &OrthonormalBasis, s: &IndexSubset) -> Result<PMatrix, Error> {
    check_subset(s, basis.dim())?;
    let n = basis.dim();
    let mut p = PMatrix::zeros(basis.prime().clone(), n);
    for j in s.iter() {
        let t = basis.vector(j).entries();
        for r in 0..n {
            if t[r].is_zero() {
                continue;
            }
            for c in 0..n {
                let add = &t[r] * &t[c];
                let cur = p.get(r, c) + add;
                p.set(r, c, cur);
            }
        }
    }
    Ok(p)
}

/// `‖x‖_{S,τ} = max_{j∈S} |⟨x, τ_j⟩|`.
pub fn restricted_max(
    basis: &OrthonormalBasis,
    s: &IndexSubset,
    x: &PVector,
) -> Result<UltraNorm, Error> {
    check_subset(s, basis.dim())?;
    basis.check_vector(x)?;
    Ok(max_norm(s.iter().map(|j| {
        let c = x.inner_product(basis.vector(j)).expect("checked");
        padic_abs(&c, basis.prime())
    })))
}

fn check_pair(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<(), Error> {
    tau.check_same_space(omega)?;
    check_subset(m, tau.dim())?;
    check_subset(n, tau.dim())
}

/// `max_{j∈M, k∈N} |⟨τ_j, ω_k⟩|`.
pub fn coherence(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<UltraNorm, Error> {
    check_pair(tau, omega, m, n)?;
    let mut best = UltraNorm::Zero;
    for j in m.iter() {
        for k in n.iter() {
            let ip = tau.vector(j).inner_product(omega.vector(k))?;
            best = best.max(padic_abs(&ip, tau.prime()));
        }
    }
    Ok(best)
}

/// Matrix of `V: x ↦ Σ_k ⟨x, ω_k⟩ τ_k`, i.e. `T Ωᵀ`.
pub fn proof_operator(tau: &OrthonormalBasis, omega: &OrthonormalBasis) -> Result<PMatrix, Error> {
    tau.check_same_space(omega)?;
    tau.matrix().mul(&omega.matrix().transpose())
}

/// `‖P_N V P_M‖`, computed from the explicit matrices.
pub fn pnvpm_norm(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<UltraNorm, Error> {
    check_pair(tau, omega, m, n)?;
    if m.is_empty() || n.is_empty() {
        return Ok(UltraNorm::Zero);
    }
    let v = proof_operator(tau, omega)?;
    let pm = projection_matrix(tau, m)?;
    let pn = projection_matrix(tau, n)?;
    Ok(pn.mul(&v)?.mul(&pm)?.operator_norm())
}

/// Largest dimension accepted by [`pnvpm_table`].
pub const MAX_TABLE_DIM: usize = 10;

/// `‖P_N V P_M‖` for every pair of subsets, indexed `[N mask][M mask]`.
///
/// For fixed `N` the matrix `P_N V P_M = Σ_{j∈M} (P_N V τ_j) τ_jᵀ` is kept
/// explicitly while `M` runs through a Gray code, so each step adds or
/// removes one rank-one term.
///
/// # Panics
/// If the dimension exceeds [`MAX_TABLE_DIM`].
pub fn pnvpm_table(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
) -> Result<Vec<Vec<UltraNorm>>, Error> {
    tau.check_same_space(omega)?;
    let d = tau.dim();
    assert!(d <= MAX_TABLE_DIM, "dimension {d} exceeds {MAX_TABLE_DIM}");
    let size = 1usize << d;
    let v = proof_operator(tau, omega)?;
    let mut table = vec![vec![UltraNorm::Zero; size]; size];
    for (n_mask, row) in table.iter_mut().enumerate().skip(1) {
        let pnv = projection_matrix(tau, &IndexSubset::from_mask(d, n_mask as u64))?.mul(&v)?;
        let terms = (0..d)
            .map(|j| {
                let image = pnv.matvec(tau.vector(j))?;
                let t = tau.vector(j).entries();
                Ok(image
                    .entries()
                    .iter()
                    .flat_map(|a| t.iter().map(move |b| a * b))
                    .collect())
            })
            .collect::<Result<Vec<Vec<Rational>>, Error>>()?;
        let mut acc = vec![Rational::zero(); d * d];
        let mut m_mask = 0usize;
        for step in 1..size {
            let bit = step.trailing_zeros() as usize;
            m_mask ^= 1 << bit;
            let adding = m_mask >> bit & 1 == 1;
            for (x, t) in acc.iter_mut().zip(&terms[bit]) {
                if adding {
                    *x += t;
                } else {
                    *x -= t;
                }
            }
            row[m_mask] = max_norm(acc.iter().map(|x| padic_abs(x, tau.prime())));
        }
    }
    Ok(table)
}

/// Evaluates both sides of the inequality exactly.
///
/// Fails with [`Error::HypothesisViolated`] when the coherence is not below
/// 1; an inapplicable theorem is not a falsified one.
pub fn check_uncertainty(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    m: &IndexSubset,
    n: &IndexSubset,
    x: &PVector,
) -> Result<UncertaintyReport, Error> {
    let c = coherence(tau, omega, m, n)?;
    if c >= UltraNorm::ONE {
        return Err(Error::HypothesisViolated { coherence: c });
    }
    tau.check_vector(x)?;
    let restricted =
        restricted_max(tau, &m.complement(), x)?.max(restricted_max(omega, &n.complement(), x)?);
    let pnvpm = pnvpm_norm(tau, omega, m, n)?;
    Ok(UncertaintyReport::assemble(
        tau.prime(),
        c,
        pnvpm,
        x.sup_norm(),
        restricted,
    ))
}

/// Whether the only `x` with `⟨x, τ_j⟩ = 0` for `j ∉ M` and `⟨x, ω_k⟩ = 0` for
/// `k ∉ N` is zero, decided by exact elimination.
pub fn support_annihilation_check(
    tau: &OrthonormalBasis,
    omega: &OrthonormalBasis,
    m: &IndexSubset,
    n: &IndexSubset,
) -> Result<bool, Error> {
    let c = coherence(tau, omega, m, n)?;
    if c >= UltraNorm::ONE {
        return Err(Error::HypothesisViolated { coherence: c });
    }
    let rows: Vec<Vec<Rational>> = m
        .complement()
        .iter()
        .map(|j| tau.vector(j).entries().to_vec())
        .chain(
            n.complement()
                .iter()
                .map(|k| omega.vector(k).entries().to_vec()),
        )
        .collect();
    Ok(nullspace(&rows, tau.dim()).is_empty())
}

/// Diagnostic p-adic Shannon entropy `−Σ_j |c_j|² log |c_j|²` with
/// `c_j = ⟨x, τ_j⟩`, evaluated as `Σ_j p^{−2v_j}·2v_j·ln p` in `f64`.
///
/// Defined only for `‖x‖ = 1` with every coefficient nonzero.
pub fn padic_shannon_entropy(basis: &OrthonormalBasis, x: &PVector) -> Result<f64, Error> {
    if x.sup_norm() != UltraNorm::ONE {
        return Err(Error::Membership("norm is not 1"));
    }
    let coeffs = basis.fourier_coefficients(x)?;
    let ln_p = (basis.prime().get() as f64).ln();
    let mut total = 0.0;
    for c in &coeffs {
        let v = valuation(c, basis.prime())
            .finite()
            .ok_or(Error::Membership("a Fourier coefficient vanishes"))?;
        if v != 0 {
            total += (basis.prime().get() as f64).powi(-2 * v as i32) * (2 * v) as f64 * ln_p;
        }
    }
    Ok(total)
}
