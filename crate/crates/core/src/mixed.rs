//! Two-qubit density matrices, the Hill–Wootters concurrence and
//! Bell-diagonal mixtures.
//!
//! The Hill–Wootters numbers `√λᵢ` are the square roots of the eigenvalues of
//! `R = ρ·ρ̃` with `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`. `R` itself is generally not
//! Hermitian, so it is never formed. Its spectrum equals that of the
//! Hermitian `M = √ρ·ρ̃·√ρ`, and `M = X·X†` with `X = √ρ·√ρ̃`, so the `√λᵢ`
//! are the singular values of `X`. Taking them that way keeps rank-deficient
//! inputs (pure states, Bell states) accurate to machine precision, where
//! `√(eig(M))` would lose half the digits.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{hermitian_eigen, psd_sqrt_tol, singular_values, ComplexMatrix, LinalgError};
use crate::measures::{Concurrence, EntanglementStats};

/// Entrywise Hermiticity, trace and eigenvalue-floor tolerance for
/// [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-9;

const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MixedError {
    #[error("density matrix must be 4x4, got {0}x{0}")]
    NotTwoQubit(usize),
    #[error("density matrix is not Hermitian: max |ρ - ρ†| = {deviation:.3e} (tolerance {DENSITY_TOL:.0e})")]
    NotHermitian { deviation: f64 },
    #[error("density matrix has bad trace: Tr ρ = {trace_re:.12}{trace_im:+.3e}i (tolerance {DENSITY_TOL:.0e})")]
    BadTrace { trace_re: f64, trace_im: f64 },
    #[error("density matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} (tolerance -{DENSITY_TOL:.0e})")]
    NotPositiveSemiDefinite { min_eigenvalue: f64 },
    #[error("Bell weight p{index} = {value} is negative or not finite")]
    NegativeWeight { index: usize, value: f64 },
    #[error("Bell weights sum to {sum:.15}, expected 1")]
    WeightSum { sum: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Validated two-qubit state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }

    /// Smallest eigenvalue, for diagnostics.
    pub fn min_eigenvalue(&self) -> Result<f64, MixedError> {
        let eig = hermitian_eigen(&self.m, DENSITY_TOL)?;
        Ok(eig.values[3])
    }
}

impl TryFrom<ComplexMatrix> for DensityMatrix {
    type Error = MixedError;

    fn try_from(m: ComplexMatrix) -> Result<Self, MixedError> {
        validate_density_matrix(m)
    }
}

/// Checks Hermiticity on the raw input, then symmetrizes to `(M + M†)/2` and
/// checks trace and the eigenvalue floor on the result.
pub fn validate_density_matrix(m: ComplexMatrix) -> Result<DensityMatrix, MixedError> {
    if m.dim() != 4 {
        return Err(MixedError::NotTwoQubit(m.dim()));
    }
    let deviation = m.hermitian_deviation();
    if deviation > DENSITY_TOL {
        return Err(MixedError::NotHermitian { deviation });
    }
    let m = m.hermitian_part();
    let tr = m.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
        return Err(MixedError::BadTrace {
            trace_re: tr.re,
            trace_im: tr.im,
        });
    }
    let min_eigenvalue = hermitian_eigen(&m, DENSITY_TOL)?.values[3];
    if min_eigenvalue < -DENSITY_TOL {
        return Err(MixedError::NotPositiveSemiDefinite { min_eigenvalue });
    }
    Ok(DensityMatrix { m })
}

/// `σ_y⊗σ_y` in the computational basis.
pub fn sigma_yy() -> ComplexMatrix {
    ComplexMatrix::from_real(
        4,
        &[
            0.0, 0.0, 0.0, -1.0, //
            0.0, 0.0, 1.0, 0.0, //
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0,
        ],
    )
    .expect("constant matrix")
}

/// `(σ_y⊗σ_y) M* (σ_y⊗σ_y)` for any 4×4 matrix.
fn flip(m: &ComplexMatrix) -> ComplexMatrix {
    // The sandwich only permutes entries and flips signs: row/col k maps to
    // 3 - k with sign -1 for k ∈ {0, 3}.
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = m[(3 - i, 3 - j)].conj() * (SIGN[i] * SIGN[j]);
        }
    }
    out
}

/// Spin-flipped state `ρ̃`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMatrix {
    flip(&rho.m)
}

fn sqrt_rho(rho: &DensityMatrix) -> Result<ComplexMatrix, MixedError> {
    Ok(psd_sqrt_tol(&rho.m, DENSITY_TOL)?)
}

/// `√ρ·ρ̃·√ρ`, the Hermitian matrix isospectral with `R = ρ·ρ̃`.
pub fn hermitian_form(rho: &DensityMatrix) -> Result<ComplexMatrix, MixedError> {
    let root = sqrt_rho(rho)?;
    Ok(root.matmul(&spin_flip(rho))?.matmul(&root)?)
}

/// Hill–Wootters concurrence with the four `√λᵢ` it was built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillWootters {
    pub concurrence: Concurrence,
    /// Descending.
    pub sqrt_lambdas: [f64; 4],
}

/// `C = max{0, √λ₁ − √λ₂ − √λ₃ − √λ₄}`.
pub fn concurrence_hw(rho: &DensityMatrix) -> Result<HillWootters, MixedError> {
    let root = sqrt_rho(rho)?;
    // √ρ̃ is the flip of √ρ because σ_y⊗σ_y is real, symmetric and squares to 1.
    let x = root.matmul(&flip(&root))?;
    let sv = singular_values(&x)?;
    let sqrt_lambdas = [sv[0], sv[1], sv[2], sv[3]];
    let raw = sqrt_lambdas[0] - sqrt_lambdas[1] - sqrt_lambdas[2] - sqrt_lambdas[3];
    Ok(HillWootters {
        concurrence: Concurrence::from_computed(raw),
        sqrt_lambdas,
    })
}

/// `E`, `ΔE` and `δE` of a mixed state. The optimal decomposition consists
/// of states that all share one concurrence, so every entropy moment is
/// that of a pure state with the Hill–Wootters concurrence.
pub fn mixed_stats(rho: &DensityMatrix) -> Result<(HillWootters, EntanglementStats), MixedError> {
    let hw = concurrence_hw(rho)?;
    Ok((hw, EntanglementStats::from_concurrence(hw.concurrence)))
}

/// Bell-state index used by [`BellWeights`]: `|Ψ⁺⟩, |Ψ⁻⟩, |Φ⁺⟩, |Φ⁻⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellState {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellState {
    pub const ALL: [BellState; 4] = [Self::PsiPlus, Self::PsiMinus, Self::PhiPlus, Self::PhiMinus];

    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z = 0.0;
        let v = match self {
            Self::PsiPlus => [z, h, h, z],
            Self::PsiMinus => [z, h, -h, z],
            Self::PhiPlus => [h, z, z, h],
            Self::PhiMinus => [h, z, z, -h],
        };
        v.map(|x| Complex64::new(x, 0.0))
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes())
    }
}

/// Weights `(p₁, p₂, p₃, p₄)` on `|Ψ⁺⟩, |Ψ⁻⟩, |Φ⁺⟩, |Φ⁻⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellWeights([f64; 4]);

impl BellWeights {
    pub fn new(p: [f64; 4]) -> Result<Self, MixedError> {
        for (index, &value) in p.iter().enumerate() {
            if !(value.is_finite() && value >= 0.0) {
                return Err(MixedError::NegativeWeight {
                    index: index + 1,
                    value,
                });
            }
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(MixedError::WeightSum { sum });
        }
        Ok(Self(p))
    }

    /// Weight `p` on one Bell state, `(1 − p)/3` on each of the others.
    pub fn werner(dominant: BellState, p: f64) -> Result<Self, MixedError> {
        let rest = (1.0 - p) / 3.0;
        let mut w = [rest; 4];
        w[dominant as usize] = p;
        Self::new(w)
    }

    pub fn weights(&self) -> [f64; 4] {
        self.0
    }

    pub fn p_max(&self) -> f64 {
        self.0.iter().copied().fold(0.0, f64::max)
    }
}

/// `Σ pᵢ |Bᵢ⟩⟨Bᵢ|`, filled directly from its X-shaped pattern.
pub fn bell_mixture(p: &BellWeights) -> DensityMatrix {
    let [p1, p2, p3, p4] = p.0;
    let phi_diag = 0.5 * (p3 + p4);
    let psi_diag = 0.5 * (p1 + p2);
    let mut m = ComplexMatrix::from_diagonal(&[phi_diag, psi_diag, psi_diag, phi_diag]);
    let corner = Complex64::new(0.5 * (p3 - p4), 0.0);
    let center = Complex64::new(0.5 * (p1 - p2), 0.0);
    m[(0, 3)] = corner;
    m[(3, 0)] = corner;
    m[(1, 2)] = center;
    m[(2, 1)] = center;
    DensityMatrix { m }
}

/// `2·p_max − 1` when `p_max > 1/2`, else 0.
pub fn bell_concurrence(p: &BellWeights) -> Concurrence {
    let p_max = p.p_max();
    if p_max > 0.5 {
        Concurrence::saturating(2.0 * p_max - 1.0)
    } else {
        Concurrence::ZERO
    }
}
