//! General two-qubit pure state `a|00⟩ + b|01⟩ + c|10⟩ + d|11⟩`.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, ComplexScalar};
use crate::measures::Concurrence;

const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("all amplitudes are zero")]
    ZeroVector,
    #[error(
        "state is not normalized: |a|²+|b|²+|c|²+|d|² = {norm_sqr:.12} (tolerance {NORM_TOL:.0e})"
    )]
    NotNormalized { norm_sqr: f64 },
    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },
}

/// Which qubit is kept when tracing out the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Normalized amplitudes `(a, b, c, d)` on `|00⟩, |01⟩, |10⟩, |11⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amps: [ComplexScalar; 4],
}

impl PureState {
    /// With `normalize` the amplitudes are divided by their Euclidean norm;
    /// without it the norm must already be 1 within `1e-10`.
    pub fn new(amps: [ComplexScalar; 4], normalize: bool) -> Result<Self, StateError> {
        if let Some(index) = amps
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(StateError::NonFinite { index });
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(StateError::ZeroVector);
        }
        if normalize {
            let inv = norm_sqr.sqrt().recip();
            Ok(Self {
                amps: amps.map(|z| z * inv),
            })
        } else if (norm_sqr - 1.0).abs() > NORM_TOL {
            Err(StateError::NotNormalized { norm_sqr })
        } else {
            Ok(Self { amps })
        }
    }

    /// Eight reals as `(re, im)` pairs in basis order.
    pub fn from_reals(parts: [f64; 8], normalize: bool) -> Result<Self, StateError> {
        let amps = std::array::from_fn(|k| Complex64::new(parts[2 * k], parts[2 * k + 1]));
        Self::new(amps, normalize)
    }

    pub fn amplitudes(&self) -> [ComplexScalar; 4] {
        self.amps
    }

    pub fn a(&self) -> ComplexScalar {
        self.amps[0]
    }

    pub fn b(&self) -> ComplexScalar {
        self.amps[1]
    }

    pub fn c(&self) -> ComplexScalar {
        self.amps[2]
    }

    pub fn d(&self) -> ComplexScalar {
        self.amps[3]
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let w = Complex64::from_polar(1.0, phi);
        Self {
            amps: self.amps.map(|z| z * w),
        }
    }
}

pub fn make_pure_state(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    d: ComplexScalar,
    normalize: bool,
) -> Result<PureState, StateError> {
    PureState::new([a, b, c, d], normalize)
}

/// `|ψ⟩⟨ψ|`.
pub fn density_matrix(psi: &PureState) -> ComplexMatrix {
    ComplexMatrix::outer(&psi.amps)
}

/// Reduced density matrix of the kept qubit.
pub fn reduce(psi: &PureState, which: Subsystem) -> ComplexMatrix {
    let [a, b, c, d] = psi.amps;
    // (p, q, r, s): ρ = [[|p|²+|q|², p r* + q s*], [·, |r|²+|s|²]]
    let (p, q, r, s) = match which {
        Subsystem::A => (a, b, c, d),
        Subsystem::B => (a, c, b, d),
    };
    let top = Complex64::new(p.norm_sqr() + q.norm_sqr(), 0.0);
    let bottom = Complex64::new(r.norm_sqr() + s.norm_sqr(), 0.0);
    let off = p * r.conj() + q * s.conj();
    ComplexMatrix::new(2, vec![top, off, off.conj(), bottom]).expect("2x2 from finite amplitudes")
}

/// `(λ₁, λ₂) = ((1 ± √(1 − C²))/2)`, larger first.
///
/// `√(1 − C²)` is taken as the discriminant `√((ρ₀₀ − ρ₁₁)² + 4|ρ₀₁|²)` of
/// `ρ_A`, a sum of squares that stays accurate as `C → 1`; the smaller
/// eigenvalue is `C²/(4λ₁)`, accurate as `C → 0`.
pub fn reduced_eigenvalues(psi: &PureState) -> (f64, f64) {
    let rho_a = reduce(psi, Subsystem::A);
    let split = rho_a[(0, 0)].re - rho_a[(1, 1)].re;
    let disc = (split * split + 4.0 * rho_a[(0, 1)].norm_sqr())
        .sqrt()
        .min(1.0);
    let large = 0.5 * (1.0 + disc);
    let c = concurrence_pure(psi).value();
    (large, c * c / (4.0 * large))
}

/// `C = 2|ad − bc|`, clamped to `[0, 1]`.
pub fn concurrence_pure(psi: &PureState) -> Concurrence {
    let [a, b, c, d] = psi.amps;
    Concurrence::from_computed(2.0 * (a * d - b * c).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, HERMITIAN_TOL};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn haar(rng: &mut ChaCha8Rng) -> PureState {
        let amps = std::array::from_fn(|_| {
            Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        PureState::new(amps, true).unwrap()
    }

    fn singlet() -> PureState {
        let h = 0.5_f64.sqrt();
        PureState::new([r(0.0), r(h), r(-h), r(0.0)], false).unwrap()
    }

    #[test]
    fn construction() {
        let s = make_pure_state(r(1.0), r(0.0), r(0.0), r(0.0), false).unwrap();
        assert_eq!(s.a(), r(1.0));

        let phi = make_pure_state(r(1.0), r(0.0), r(0.0), r(1.0), true).unwrap();
        let h = 0.5_f64.sqrt();
        assert!((phi.a() - r(h)).norm() < 1e-15 && (phi.d() - r(h)).norm() < 1e-15);

        let zero = r(0.0);
        assert_eq!(
            make_pure_state(zero, zero, zero, zero, true),
            Err(StateError::ZeroVector)
        );
        assert!(matches!(
            make_pure_state(r(1.0), r(0.0), r(0.0), r(1.0), false),
            Err(StateError::NotNormalized { norm_sqr }) if norm_sqr == 2.0
        ));
        assert!(matches!(
            PureState::from_reals([f64::INFINITY, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], true),
            Err(StateError::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn density_matrix_examples() {
        let s00 = PureState::from_reals([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], false).unwrap();
        assert_eq!(
            density_matrix(&s00),
            ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0])
        );

        let rho = density_matrix(&singlet());
        let want = ComplexMatrix::from_real(
            4,
            &[
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.5, -0.5, 0.0, //
                0.0, -0.5, 0.5, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert!(rho.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn reductions() {
        let s00 = PureState::from_reals([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], false).unwrap();
        assert_eq!(
            reduce(&s00, Subsystem::A),
            ComplexMatrix::from_diagonal(&[1.0, 0.0])
        );
        let phi = PureState::from_reals([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0], true).unwrap();
        let half = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        assert!(reduce(&phi, Subsystem::A).max_abs_diff(&half).unwrap() < 1e-15);
        assert!(reduce(&phi, Subsystem::B).max_abs_diff(&half).unwrap() < 1e-15);
    }

    /// Partial trace computed entrywise from `|ψ⟩⟨ψ|`, independent of the
    /// hand-expanded formulas in [`reduce`].
    fn partial_trace(rho: &ComplexMatrix, which: Subsystem) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let (row, col) = match which {
                        Subsystem::A => (2 * i + k, 2 * j + k),
                        Subsystem::B => (2 * k + i, 2 * k + j),
                    };
                    out[(i, j)] += rho[(row, col)];
                }
            }
        }
        out
    }

    #[test]
    fn random_state_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let psi = haar(&mut rng);
            let rho = density_matrix(&psi);
            let ra = reduce(&psi, Subsystem::A);
            let rb = reduce(&psi, Subsystem::B);
            assert!(ra.max_abs_diff(&partial_trace(&rho, Subsystem::A)).unwrap() < 1e-15);
            assert!(rb.max_abs_diff(&partial_trace(&rho, Subsystem::B)).unwrap() < 1e-15);

            let ea = hermitian_eigen(&ra, HERMITIAN_TOL).unwrap().values;
            let eb = hermitian_eigen(&rb, HERMITIAN_TOL).unwrap().values;
            let (l1, l2) = reduced_eigenvalues(&psi);
            for (x, y) in [(ea[0], eb[0]), (ea[1], eb[1]), (ea[0], l1), (ea[1], l2)] {
                assert!((x - y).abs() <= 1e-10, "{x} vs {y}");
            }
            assert!(l1 >= l2 && (l1 + l2 - 1.0).abs() < 1e-12);
            assert!((rho.trace().re - 1.0).abs() < 1e-12);

            let spectrum = hermitian_eigen(&rho, HERMITIAN_TOL).unwrap().values;
            for (x, y) in spectrum.iter().zip([1.0, 0.0, 0.0, 0.0]) {
                assert!((x - y).abs() <= 1e-10);
            }

            let c = concurrence_pure(&psi).value();
            for phi in [std::f64::consts::PI / 7.0, 1.0, 2.5] {
                let shifted = concurrence_pure(&psi.with_global_phase(phi)).value();
                assert!((shifted - c).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn concurrence_examples() {
        let s00 = PureState::from_reals([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], false).unwrap();
        assert_eq!(concurrence_pure(&s00), Concurrence::ZERO);
        assert!((concurrence_pure(&singlet()).value() - 1.0).abs() < 1e-15);
        let plus = PureState::from_reals([0.5, 0.0, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0], false).unwrap();
        assert_eq!(concurrence_pure(&plus), Concurrence::ZERO);

        assert_eq!(reduced_eigenvalues(&s00), (1.0, 0.0));
        let phi = PureState::from_reals([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0], true).unwrap();
        let (l1, l2) = reduced_eigenvalues(&phi);
        assert!((l1 - 0.5).abs() < 1e-15 && (l2 - 0.5).abs() < 1e-15);

        let c06 = PureState::from_reals(
            [0.9_f64.sqrt(), 0.0, 0.0, 0.0, 0.0, 0.0, 0.1_f64.sqrt(), 0.0],
            false,
        )
        .unwrap();
        let (l1, l2) = reduced_eigenvalues(&c06);
        assert!((l1 - 0.9).abs() < 1e-15 && (l2 - 0.1).abs() < 1e-15);
    }
}
