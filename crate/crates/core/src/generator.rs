//! Seed-deterministic instance generation.
//!
//! Unitaries are products of exactly unitary factors with p-integral entries
//! (permutations, sign flips, Pythagorean plane rotations and Cayley
//! transforms), so every product is again unitary. Biorthogonal systems use
//! an additional unimodular triangular factor with p-divisible off-diagonal
//! entries, which keeps both norm conditions while leaving the class of
//! systems induced by the inner product.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::banach::BiorthogonalSystem;
use crate::error::Error;
use crate::linalg::{PMatrix, PVector};
use crate::onb::{apply_unitary_to_onb, OrthonormalBasis};
use crate::rational::{int, padic_abs, ratio, Prime, Rational, UltraNorm};

/// Degenerate draws tolerated per factor before giving up.
pub const RETRY_BUDGET: usize = 256;

/// Largest Pythagorean parameter; keeps entries desk-sized.
const PYTHAGOREAN_RANGE: i64 = 12;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_permutation<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> PMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    PMatrix::permutation(prime.clone(), &perm)
}

fn random_signs<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> PMatrix {
    PMatrix::diagonal(
        prime.clone(),
        (0..n)
            .map(|_| if rng.gen_bool(0.5) { int(1) } else { int(-1) })
            .collect(),
    )
}

/// `(a, b) = ((m² − k²), 2mk) / (m² + k²)` with `p ∤ m² + k²`, so both have
/// non-negative valuation and `a² + b² = 1`.
fn pythagorean_pair<R: Rng>(prime: &Prime, rng: &mut R) -> Result<(Rational, Rational), Error> {
    for _ in 0..RETRY_BUDGET {
        let m = rng.gen_range(1..=PYTHAGOREAN_RANGE);
        let k = rng.gen_range(0..=PYTHAGOREAN_RANGE);
        let hyp = m * m + k * k;
        if hyp % prime.get() as i64 == 0 {
            continue;
        }
        let a = ratio(m * m - k * k, hyp);
        let b = ratio(2 * m * k, hyp);
        return Ok(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
    }
    Err(Error::GeneratorExhausted {
        attempts: RETRY_BUDGET,
    })
}

/// `[[a, b], [−b, a]]` acting on the coordinate plane `(i, j)`.
fn random_rotation<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> Result<PMatrix, Error> {
    let mut m = PMatrix::identity(prime.clone(), n);
    if n < 2 {
        return Ok(m);
    }
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    let (a, b) = pythagorean_pair(prime, rng)?;
    m.set(i, i, a.clone());
    m.set(j, j, a);
    m.set(i, j, b.clone());
    m.set(j, i, -b);
    Ok(m)
}

/// Cayley transform `(I − S)(I + S)⁻¹` of a p-integral antisymmetric `S`,
/// accepted only when `det(I + S)` is a p-adic unit.
fn random_cayley<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> Result<PMatrix, Error> {
    let id = PMatrix::identity(prime.clone(), n);
    let p = prime.get() as i64;
    for _ in 0..RETRY_BUDGET {
        // Multiples of p make the transform congruent to I mod p, which is
        // where small coherence values come from.
        let scale = if rng.gen_bool(0.5) { p } else { 1 };
        let mut s = PMatrix::zeros(prime.clone(), n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    continue;
                }
                let x = int(scale * rng.gen_range(-3..=3));
                s.set(i, j, x.clone());
                s.set(j, i, -x);
            }
        }
        let plus = id.add(&s)?;
        if padic_abs(&plus.determinant(), prime) != UltraNorm::ONE {
            continue;
        }
        return id.sub(&s)?.mul(&plus.inverse()?);
    }
    Err(Error::GeneratorExhausted {
        attempts: RETRY_BUDGET,
    })
}

fn unitary_from_rng<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> Result<PMatrix, Error> {
    let mut acc = PMatrix::identity(prime.clone(), n);
    let factors = rng.gen_range(1..=4);
    for _ in 0..factors {
        let factor = match rng.gen_range(0..4) {
            0 => random_permutation(prime, n, rng),
            1 => random_signs(prime, n, rng),
            2 => random_rotation(prime, n, rng)?,
            _ => random_cayley(prime, n, rng)?,
        };
        acc = factor.mul(&acc)?;
    }
    Ok(acc)
}

/// A unitary `n×n` matrix determined by `(prime, n, seed)`.
pub fn random_unitary(prime: &Prime, n: usize, seed: u64) -> Result<PMatrix, Error> {
    assert!(n >= 1, "dimension must be positive");
    unitary_from_rng(prime, n, &mut rng_for(seed))
}

pub fn random_onb(prime: &Prime, n: usize, seed: u64) -> Result<OrthonormalBasis, Error> {
    let v = random_unitary(prime, n, seed)?;
    apply_unitary_to_onb(&v, &OrthonormalBasis::standard(prime.clone(), n))
}

/// Two bases `τ` and `ω = Vτ`; the relative unitary `V` controls coherence.
pub fn random_onb_pair(
    prime: &Prime,
    n: usize,
    seed: u64,
) -> Result<(OrthonormalBasis, OrthonormalBasis), Error> {
    let mut rng = rng_for(seed);
    let base = unitary_from_rng(prime, n, &mut rng)?;
    let tau = apply_unitary_to_onb(&base, &OrthonormalBasis::standard(prime.clone(), n))?;
    let relative = unitary_from_rng(prime, n, &mut rng)?;
    let omega = apply_unitary_to_onb(&relative, &tau)?;
    Ok((tau, omega))
}

/// Unit lower-triangular matrix with p-divisible entries below the diagonal.
/// At least one off-diagonal entry is nonzero when `n ≥ 2`.
fn random_unimodular_triangular<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> PMatrix {
    let p = prime.get() as i64;
    let mut l = PMatrix::identity(prime.clone(), n);
    if n < 2 {
        return l;
    }
    for i in 1..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                let c = rng.gen_range(-3..=3);
                l.set(i, j, int(p * c));
            }
        }
    }
    let forced = rng.gen_range(1..n);
    if l.get(forced, 0).is_zero() {
        l.set(forced, 0, int(p));
    }
    l
}

/// An invertible isometry `U₁ L U₂`, not in general form-preserving.
pub fn random_isometry<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> Result<PMatrix, Error> {
    let left = unitary_from_rng(prime, n, rng)?;
    let tri = random_unimodular_triangular(prime, n, rng);
    let right = unitary_from_rng(prime, n, rng)?;
    left.mul(&tri)?.mul(&right)
}

/// Biorthogonal system `(A⁻¹, A)` for a random isometry `A`.
pub fn random_system(prime: &Prime, n: usize, seed: u64) -> Result<BiorthogonalSystem, Error> {
    let a = random_isometry(prime, n, &mut rng_for(seed))?;
    let f = a.inverse()?;
    BiorthogonalSystem::validate(a, f)
}

/// Two systems `S₁` and `S₂ = V·S₁` for a random isometry `V`.
pub fn random_system_pair(
    prime: &Prime,
    n: usize,
    seed: u64,
) -> Result<(BiorthogonalSystem, BiorthogonalSystem), Error> {
    let mut rng = rng_for(seed);
    let a = random_isometry(prime, n, &mut rng)?;
    let s1 = BiorthogonalSystem::validate(a.clone(), a.inverse()?)?;
    let v = random_isometry(prime, n, &mut rng)?;
    let s2 = s1.apply_isometry(&v)?;
    Ok((s1, s2))
}

/// Random rational entry `(a/b)·p^e` with small `a`, `b` and `e ∈ [−2, 2]`;
/// zero with probability about 1/8.
pub fn random_rational<R: Rng>(prime: &Prime, rng: &mut R) -> Rational {
    if rng.gen_ratio(1, 8) {
        return Rational::zero();
    }
    let mut num = rng.gen_range(-20i64..=20);
    if num == 0 {
        num = 1;
    }
    let den = rng.gen_range(1i64..=12);
    ratio(num, den) * prime.pow(rng.gen_range(-2..=2))
}

pub fn random_vector<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> PVector {
    PVector::new(
        prime.clone(),
        (0..n).map(|_| random_rational(prime, rng)).collect(),
    )
    .expect("n >= 1")
}

/// Random nonzero vector rescaled by a power of `p` to have norm exactly 1.
pub fn random_unit_vector<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> PVector {
    loop {
        let v = random_vector(prime, n, rng);
        if let Some(e) = v.sup_norm().exponent() {
            return v.scale(&prime.pow(e));
        }
    }
}

/// Random `(a_j)` drawn like [`random_vector`] entries; handy for synthesis
/// tests.
pub fn random_coefficients<R: Rng>(prime: &Prime, n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n).map(|_| random_rational(prime, rng)).collect()
}
