//! Dense vectors and square matrices over the rationals, normed by the
//! p-adic sup norm.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{max_norm, padic_abs, Prime, Rational, UltraNorm};

fn check_prime(a: &Prime, b: &Prime) -> Result<(), Error> {
    if a != b {
        return Err(Error::PrimeMismatch {
            left: a.get(),
            right: b.get(),
        });
    }
    Ok(())
}

fn check_dim(expected: usize, found: usize) -> Result<(), Error> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A vector of `ℚ^n` carrying the prime whose absolute value norms it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PVector {
    prime: Prime,
    entries: Vec<Rational>,
}

impl PVector {
    pub fn new(prime: Prime, entries: Vec<Rational>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(PVector { prime, entries })
    }

    pub fn zeros(prime: Prime, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        PVector {
            prime,
            entries: vec![Rational::zero(); n],
        }
    }

    /// Coordinate vector `e_j` (0-based `j`).
    pub fn unit(prime: Prime, n: usize, j: usize) -> Self {
        let mut v = Self::zeros(prime, n);
        v.entries[j] = Rational::one();
        v
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub(crate) fn check_compatible(&self, other: &PVector) -> Result<(), Error> {
        check_prime(&self.prime, &other.prime)?;
        check_dim(self.len(), other.len())
    }

    /// `max_j |x_j|_p`.
    pub fn sup_norm(&self) -> UltraNorm {
        max_norm(self.entries.iter().map(|x| padic_abs(x, &self.prime)))
    }

    /// The bilinear form `Σ u_j v_j`.
    pub fn inner_product(&self, other: &PVector) -> Result<Rational, Error> {
        self.check_compatible(other)?;
        Ok(dot(&self.entries, &other.entries))
    }

    pub fn add(&self, other: &PVector) -> Result<PVector, Error> {
        self.check_compatible(other)?;
        Ok(PVector {
            prime: self.prime.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &PVector) -> Result<PVector, Error> {
        self.check_compatible(other)?;
        Ok(PVector {
            prime: self.prime.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> PVector {
        PVector {
            prime: self.prime.clone(),
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `Σ_j c_j v_j` for vectors of common prime and length.
    pub fn linear_combination(coeffs: &[Rational], vectors: &[PVector]) -> Result<PVector, Error> {
        check_dim(vectors.len(), coeffs.len())?;
        let first = vectors.first().ok_or(Error::EmptyVector)?;
        let mut acc = PVector::zeros(first.prime.clone(), first.len());
        for (c, v) in coeffs.iter().zip(vectors) {
            acc.check_compatible(v)?;
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.entries.iter_mut().zip(&v.entries) {
                *a += c * x;
            }
        }
        Ok(acc)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `|⟨u, v⟩| ≤ ‖u‖·‖v‖`.
pub fn cauchy_schwarz_check(u: &PVector, v: &PVector) -> Result<bool, Error> {
    let ip = u.inner_product(v)?;
    Ok(padic_abs(&ip, u.prime()) <= u.sup_norm() * v.sup_norm())
}

/// Square matrix over the rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMatrix {
    prime: Prime,
    n: usize,
    data: Vec<Rational>,
}

impl PMatrix {
    pub fn zeros(prime: Prime, n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        PMatrix {
            prime,
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(prime: Prime, n: usize) -> Self {
        let mut m = Self::zeros(prime, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(prime: Prime, diag: Vec<Rational>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(prime, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Matrix sending `e_j` to `e_{perm[j]}` (0-based).
    pub fn permutation(prime: Prime, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(prime, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Rational::one();
        }
        m
    }

    pub fn from_rows(prime: Prime, rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyVector);
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            check_dim(n, row.len())?;
            data.extend(row);
        }
        Ok(PMatrix { prime, n, data })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[PVector]) -> Result<Self, Error> {
        let first = columns.first().ok_or(Error::EmptyVector)?;
        let n = columns.len();
        let mut m = Self::zeros(first.prime.clone(), n);
        for (j, c) in columns.iter().enumerate() {
            check_prime(&first.prime, &c.prime)?;
            check_dim(n, c.len())?;
            for (i, x) in c.entries.iter().enumerate() {
                m.data[i * n + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_row_vectors(rows: &[PVector]) -> Result<Self, Error> {
        Ok(Self::from_columns(rows)?.transpose())
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> PVector {
        PVector {
            prime: self.prime.clone(),
            entries: self.data[i * self.n..(i + 1) * self.n].to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> PVector {
        PVector {
            prime: self.prime.clone(),
            entries: (0..self.n).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<PVector> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> PMatrix {
        let n = self.n;
        let mut t = Self::zeros(self.prime.clone(), n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j].clone();
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.data.iter().enumerate().all(|(idx, x)| {
            if idx / n == idx % n {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check_compatible(&self, other: &PMatrix) -> Result<(), Error> {
        check_prime(&self.prime, &other.prime)?;
        check_dim(self.n, other.n)
    }

    pub fn mul(&self, other: &PMatrix) -> Result<PMatrix, Error> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out = Self::zeros(self.prime.clone(), n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PMatrix) -> Result<PMatrix, Error> {
        self.check_compatible(other)?;
        Ok(PMatrix {
            prime: self.prime.clone(),
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &PMatrix) -> Result<PMatrix, Error> {
        self.check_compatible(other)?;
        Ok(PMatrix {
            prime: self.prime.clone(),
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn matvec(&self, v: &PVector) -> Result<PVector, Error> {
        check_prime(&self.prime, &v.prime)?;
        check_dim(self.n, v.len())?;
        Ok(PVector {
            prime: self.prime.clone(),
            entries: self
                .data
                .chunks(self.n)
                .map(|row| dot(row, &v.entries))
                .collect(),
        })
    }

    /// Row vector times matrix, `φ ↦ φA`.
    pub fn vecmat(&self, phi: &PVector) -> Result<PVector, Error> {
        self.transpose().matvec(phi)
    }

    /// Operator norm for the coordinate sup norm. Over a non-Archimedean
    /// field this is the largest entry absolute value.
    pub fn operator_norm(&self) -> UltraNorm {
        max_norm(self.data.iter().map(|x| padic_abs(x, &self.prime)))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<PMatrix, Error> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(self.prime.clone(), n).rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = a[col][col].recip();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x *= &scale;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let (sub_a, sub_i) = (&factor * &a[col][c], &factor * &inv[col][c]);
                    a[r][c] -= sub_a;
                    inv[r][c] -= sub_i;
                }
            }
        }
        Self::from_rows(self.prime.clone(), inv)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.rows();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                a.swap(col, pivot);
                det = -det;
            }
            det *= &a[col][col];
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &a[col][col];
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Invertible with `‖A‖ ≤ 1` and `‖A⁻¹‖ ≤ 1`, which is equivalent to
    /// `‖Ax‖ = ‖x‖` for every `x`.
    pub fn is_isometry(&self) -> bool {
        if self.operator_norm() > UltraNorm::ONE {
            return false;
        }
        match self.inverse() {
            Ok(inv) => inv.operator_norm() <= UltraNorm::ONE,
            Err(_) => false,
        }
    }

    /// An isometry that also preserves the bilinear form, i.e. `AᵀA = I`.
    pub fn is_unitary(&self) -> bool {
        self.is_isometry()
            && self
                .transpose()
                .mul(self)
                .map(|g| g.is_identity())
                .unwrap_or(false)
    }
}

/// Basis of `{x : Rx = 0}` for the rectangular system with the given rows,
/// each of length `ncols`. Reduced row echelon form over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pivot) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pivot);
        let scale = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &scale;
        }
        for i in 0..a.len() {
            if i == r || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col].clone();
            for c in col..ncols {
                let sub = &factor * &a[r][c];
                a[i][c] -= sub;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    ncols - nullspace(rows, ncols).len()
}
