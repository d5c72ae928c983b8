//! Heisenberg dimer `H = −(J/2) σ₁·σ₂` in equilibrium at temperature `τ`
//! (`k_B = 1`).
//!
//! The thermal state is a Werner mixture: weight `e^{−3K}/Z` on the singlet
//! `|Ψ⁻⟩` and `e^{K}/Z` on each triplet state, with `K = J/(2τ)` and
//! `Z = 3e^{K} + e^{−3K}`. Entanglement exists only for antiferromagnetic
//! coupling (`J < 0`) and only below `τ_e = (2/ln 3)|J|`.

use thiserror::Error;

use crate::measures::{Concurrence, EntanglementStats, RelativeFluctuation};
use crate::mixed::{bell_mixture, BellWeights, DensityMatrix};

const LN3: f64 = 1.098_612_288_668_109_8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ThermalError {
    #[error("exchange coupling J must be finite and nonzero, got {0}")]
    ZeroCoupling(f64),
    #[error("temperature must be finite and positive, got {0}")]
    NonPositiveTemperature(f64),
    #[error("crossing concurrence must lie in (0, 1), got {0}")]
    BadCrossing(f64),
}

/// Exchange coupling `j` and temperature `tau`, both in the same energy unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimerParams {
    j: f64,
    tau: f64,
}

impl DimerParams {
    pub fn new(j: f64, tau: f64) -> Result<Self, ThermalError> {
        check_coupling(j)?;
        if !(tau.is_finite() && tau > 0.0) {
            return Err(ThermalError::NonPositiveTemperature(tau));
        }
        Ok(Self { j, tau })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `K = j/(2τ)`.
    pub fn k(&self) -> f64 {
        self.j / (2.0 * self.tau)
    }

    pub fn is_ferromagnetic(&self) -> bool {
        self.j > 0.0
    }
}

fn check_coupling(j: f64) -> Result<(), ThermalError> {
    if j.is_finite() && j != 0.0 {
        Ok(())
    } else {
        Err(ThermalError::ZeroCoupling(j))
    }
}

/// `(singlet, triplet)` Boltzmann weights, each triplet state getting the
/// second value. Normalized against the dominant exponent so no term
/// overflows at any `K`.
fn boltzmann_weights(k: f64) -> (f64, f64) {
    let singlet_exp = -3.0 * k;
    let triplet_exp = k;
    let top = singlet_exp.max(triplet_exp);
    let s = (singlet_exp - top).exp();
    let t = (triplet_exp - top).exp();
    let z = s + 3.0 * t;
    (s / z, t / z)
}

/// Bell weights `(p₁, p₂, p₃, p₄)` of the thermal state, `p₂` on the singlet.
pub fn thermal_weights(p: &DimerParams) -> BellWeights {
    let (s, t) = boltzmann_weights(p.k());
    BellWeights::new([t, s, t, t]).expect("Boltzmann weights are normalized")
}

/// Thermal density matrix `e^{−H/τ}/Z`.
pub fn thermal_state(p: &DimerParams) -> DensityMatrix {
    bell_mixture(&thermal_weights(p))
}

/// Closed-form thermal concurrence, `(1 − 3q)/(1 + 3q)` with
/// `q = e^{−2|J|/τ}` for `J < 0, τ < τ_e`, and 0 otherwise.
pub fn thermal_concurrence(p: &DimerParams) -> Concurrence {
    if p.is_ferromagnetic() || p.tau >= entanglement_temperature_unchecked(p.j) {
        return Concurrence::ZERO;
    }
    let q3 = 3.0 * (-2.0 * p.j.abs() / p.tau).exp();
    Concurrence::saturating(-1.0 + 2.0 / (1.0 + q3))
}

fn entanglement_temperature_unchecked(j: f64) -> f64 {
    2.0 / LN3 * j.abs()
}

/// `τ_e = (2/ln 3)|J|`. For `J > 0` the value is returned all the same,
/// although the ferromagnetic dimer is never entangled.
pub fn entanglement_temperature(j: f64) -> Result<f64, ThermalError> {
    check_coupling(j)?;
    Ok(entanglement_temperature_unchecked(j))
}

/// Temperature at which the thermal concurrence equals `c_f`:
/// `τ_f = 2|J| / ln[3(1 + c_f)/(1 − c_f)]`.
pub fn fluctuation_equal_temperature(j: f64, c_f: Concurrence) -> Result<f64, ThermalError> {
    check_coupling(j)?;
    let c = c_f.value();
    if !(c > 0.0 && c < 1.0) {
        return Err(ThermalError::BadCrossing(c));
    }
    Ok(2.0 * j.abs() / (3.0 * (1.0 + c) / (1.0 - c)).ln())
}

/// One sample of a temperature sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    pub tau: f64,
    pub tau_over_te: f64,
    pub c: Concurrence,
    pub e: f64,
    pub delta_e: f64,
    pub rel: RelativeFluctuation,
}

impl ThermalPoint {
    pub fn at(p: &DimerParams) -> Self {
        let c = thermal_concurrence(p);
        let stats = EntanglementStats::from_concurrence(c);
        Self {
            tau: p.tau,
            tau_over_te: p.tau / entanglement_temperature_unchecked(p.j),
            c,
            e: stats.e,
            delta_e: stats.delta_e,
            rel: stats.rel,
        }
    }
}

/// Evaluates every temperature in `taus`, in order.
pub fn thermal_sweep(j: f64, taus: &[f64]) -> Result<Vec<ThermalPoint>, ThermalError> {
    taus.iter()
        .map(|&tau| DimerParams::new(j, tau).map(|p| ThermalPoint::at(&p)))
        .collect()
}
