//! Dense complex linear algebra for the 2×2 and 4×4 matrices that appear in
//! two-qubit problems.
//!
//! Everything here works on [`ComplexMatrix`], a small row-major container.
//! Hermitian eigenproblems are solved with cyclic Jacobi rotations, and
//! singular values with the one-sided (Hestenes) variant of the same
//! rotation. At these sizes both are exact enough and fully deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use thiserror::Error;

/// Complex matrix entry.
pub type ComplexScalar = Complex64;

/// Default entrywise tolerance for the Hermitian precondition.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero by [`psd_sqrt`].
pub const PSD_TOL: f64 = 1e-12;

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    BadDimension(usize),
    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {got}")]
    BadLength {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian: max |M - M^H| = {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error(
        "matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -{tol:.1e}"
    )]
    NotPositiveSemiDefinite { min_eigenvalue: f64, tol: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

/// Square complex matrix of dimension 2 or 4, stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<ComplexScalar>,
}

fn check_dim(dim: usize) -> Result<(), LinalgError> {
    match dim {
        2 | 4 => Ok(()),
        other => Err(LinalgError::BadDimension(other)),
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(dim: usize, data: Vec<ComplexScalar>) -> Result<Self, LinalgError> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(LinalgError::BadLength {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(LinalgError::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<ComplexScalar>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::BadLength {
                    dim,
                    expected: dim,
                    got: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    /// Real row-major entries; handy for the many real matrices in tests.
    pub fn from_real(dim: usize, data: &[f64]) -> Result<Self, LinalgError> {
        Self::new(dim, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// # Panics
    /// If `dim` is not 2 or 4.
    pub fn zeros(dim: usize) -> Self {
        check_dim(dim).expect("ComplexMatrix dimension must be 2 or 4");
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// # Panics
    /// If `dim` is not 2 or 4.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// # Panics
    /// If `diag.len()` is not 2 or 4.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// The outer product `|v⟩⟨v|`.
    ///
    /// # Panics
    /// If `v.len()` is not 2 or 4.
    pub fn outer(v: &[ComplexScalar]) -> Self {
        let dim = v.len();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[ComplexScalar] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ComplexScalar]> {
        self.data.chunks(self.dim)
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    fn map(&self, f: impl Fn(ComplexScalar) -> ComplexScalar) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(ComplexScalar, ComplexScalar) -> ComplexScalar,
    ) -> Result<Self, LinalgError> {
        self.same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn same_dim(&self, other: &Self) -> Result<(), LinalgError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LinalgError::DimMismatch {
                left: self.dim,
                right: other.dim,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self, LinalgError> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out.data[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Entrywise complex conjugate `M*`.
    pub fn conjugate(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose `M†`.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> ComplexScalar {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        self.same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let adj = self.adjoint();
        self.zip_with(&adj, |a, b| (a + b) * 0.5)
            .expect("adjoint has the same dimension")
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    fn column(&self, j: usize) -> Vec<ComplexScalar> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = ComplexScalar;

    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.rows() {
            write!(f, " ")?;
            for z in row {
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    a.matmul(b)
}

pub fn conjugate(a: &ComplexMatrix) -> ComplexMatrix {
    a.conjugate()
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

pub fn trace(a: &ComplexMatrix) -> ComplexScalar {
    a.trace()
}

/// Eigendecomposition of a Hermitian matrix.
///
/// `values` are sorted descending and `vectors` holds the matching
/// orthonormal eigenvectors as columns, so `M = V·diag(values)·V†`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V·diag(values)·V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| x)
    }

    fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }
}

/// Rotation `(c, s, phase)` that annihilates the off-diagonal entry `g` of
/// the Hermitian 2×2 block `[[alpha, g], [g*, beta]]`.
///
/// The unitary acting on the (p, q) plane is
/// `[[c, s], [-s·conj(phase), c·conj(phase)]]`.
fn jacobi_rotation(alpha: f64, beta: f64, g: ComplexScalar) -> (f64, f64, ComplexScalar) {
    let modulus = g.norm();
    let phase = g / modulus;
    let theta = (beta - alpha) / (2.0 * modulus);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    (c, t * c, phase)
}

/// Eigenvalues (descending) and eigenvectors of a Hermitian matrix by cyclic
/// Jacobi rotations.
///
/// The input must be Hermitian within `require_hermitian_tol` entrywise; its
/// Hermitian part is what gets diagonalized.
pub fn hermitian_eigen(
    m: &ComplexMatrix,
    require_hermitian_tol: f64,
) -> Result<EigenSystem, LinalgError> {
    let deviation = m.hermitian_deviation();
    if deviation > require_hermitian_tol {
        return Err(LinalgError::NotHermitian {
            deviation,
            tol: require_hermitian_tol,
        });
    }

    let n = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let mut sweeps = 0;
    while a.off_diagonal_norm() > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                residual: a.off_diagonal_norm(),
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = a[(p, q)];
                if g.norm() == 0.0 {
                    continue;
                }
                let (c, s, phase) = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, g);
                rotate_hermitian(&mut a, p, q, c, s, phase);
                rotate_columns(&mut v, p, q, c, s, phase);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep Jacobi output order
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));

    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// `X ← X·U` with `U` the plane rotation from [`jacobi_rotation`].
fn rotate_columns(x: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: ComplexScalar) {
    let ph = phase.conj();
    for i in 0..x.dim() {
        let xp = x[(i, p)];
        let xq = x[(i, q)];
        x[(i, p)] = xp * c - xq * ph * s;
        x[(i, q)] = xp * s + xq * ph * c;
    }
}

/// `A ← U†·A·U`, then pins the annihilated pair and the diagonal to exact
/// Hermitian form.
fn rotate_hermitian(
    a: &mut ComplexMatrix,
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    phase: ComplexScalar,
) {
    rotate_columns(a, p, q, c, s, phase);
    let ph = phase;
    for j in 0..a.dim() {
        let ap = a[(p, j)];
        let aq = a[(q, j)];
        a[(p, j)] = ap * c - aq * ph * s;
        a[(q, j)] = ap * s + aq * ph * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
}

/// Principal square root of a Hermitian PSD matrix.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    psd_sqrt_tol(m, PSD_TOL)
}

/// [`psd_sqrt`] with a caller-chosen negative-eigenvalue floor: eigenvalues
/// in `[-negative_tol, 0)` are clamped to zero, anything lower is an error.
pub fn psd_sqrt_tol(m: &ComplexMatrix, negative_tol: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eigen(m, HERMITIAN_TOL)?;
    let min_eigenvalue = eig.values.last().copied().unwrap_or(0.0);
    if min_eigenvalue < -negative_tol {
        return Err(LinalgError::NotPositiveSemiDefinite {
            min_eigenvalue,
            tol: negative_tol,
        });
    }
    Ok(eig.reconstruct_with(|x| x.max(0.0).sqrt()))
}

/// Singular values of `m`, descending, by one-sided Jacobi orthogonalization
/// of its columns.
///
/// Small singular values come out with absolute error near machine epsilon
/// times `‖m‖`, which squaring into `m·m†` and diagonalizing cannot match.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let n = m.dim();
    let mut x = m.clone();
    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        let mut worst = 0.0_f64;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let cp = x.column(p);
                let cq = x.column(q);
                let alpha: f64 = cp.iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cq.iter().map(|z| z.norm_sqr()).sum();
                let gamma: ComplexScalar = cp.iter().zip(&cq).map(|(u, w)| u.conj() * w).sum();
                let scale = (alpha * beta).sqrt();
                if gamma.norm() == 0.0 || gamma.norm() <= f64::EPSILON * scale {
                    continue;
                }
                worst = worst.max(gamma.norm() / scale);
                rotated = true;
                let (c, s, phase) = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut x, p, q, c, s, phase);
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                residual: worst,
            });
        }
    }
    let mut values: Vec<f64> = (0..n)
        .map(|j| x.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}
