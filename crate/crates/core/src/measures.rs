//! Scalar functions of the concurrence: the reduced-state spectrum, entropy
//! moments, entanglement `E`, its rms fluctuation `ΔE` and the relative
//! fluctuation `δE = ΔE/E`, plus the boundary expansions of each.
//!
//! Entropies are in bits. Natural logarithms appear only where a formula is
//! naturally written with them (the `1/ln 2` and `ln(C/2)` terms).

use std::f64::consts::{E as EULER, LN_2, SQRT_2};
use std::fmt;

use thiserror::Error;

/// Slack allowed before an out-of-range argument is rejected rather than
/// clamped.
const DOMAIN_SLACK: f64 = 1e-12;

const UNIT_SNAP: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("concurrence {0} outside [0, 1]")]
    ConcurrenceOutOfRange(f64),
    #[error("Shannon function argument {0} outside [0, 1]")]
    OutOfDomain(f64),
    #[error("relative fluctuation is undefined at zero entanglement (0/0)")]
    UndefinedAtZero,
}

/// Two-qubit concurrence, a value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    pub const ZERO: Self = Self(0.0);
    pub const ONE: Self = Self(1.0);

    /// Accepts values within `1e-12` of `[0, 1]`, clamping them in.
    pub fn new(value: f64) -> Result<Self, MeasureError> {
        if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&value) {
            return Err(MeasureError::ConcurrenceOutOfRange(value));
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    /// Clamps any finite value into `[0, 1]`; NaN maps to 0.
    pub fn saturating(value: f64) -> Self {
        if value.is_nan() {
            Self(0.0)
        } else {
            Self(value.clamp(0.0, 1.0))
        }
    }

    /// For values produced by a floating-point evaluation of a state:
    /// saturates, and treats anything within `1e-14` of 1 as exactly 1.
    /// `ΔE` has infinite slope at `C = 1`, so rounding noise of a few ulp
    /// there would otherwise show up as `ΔE ~ 1e-7`.
    pub fn from_computed(value: f64) -> Self {
        if value > 1.0 - UNIT_SNAP {
            Self::ONE
        } else {
            Self::saturating(value)
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `√(1 − C²)`, exact at both endpoints.
    fn cosine(self) -> f64 {
        (1.0 - self.0 * self.0).max(0.0).sqrt()
    }

    /// Eigenvalues `(1 ± √(1 − C²))/2` of either reduced density matrix,
    /// larger first. The smaller one is formed as `C²/(4λ₊)` to avoid
    /// cancellation at small `C`.
    pub fn reduced_spectrum(self) -> (f64, f64) {
        let large = 0.5 * (1.0 + self.cosine());
        let small = self.0 * self.0 / (4.0 * large);
        (large, small)
    }
}

impl fmt::Display for Concurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which end of `C ∈ (0, 1)` an asymptotic expansion is taken at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    NearZero,
    NearOne,
}

/// `δE`, which has no value at zero entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelativeFluctuation {
    Value(f64),
    Undefined,
}

impl RelativeFluctuation {
    pub fn value(self) -> Result<f64, MeasureError> {
        match self {
            Self::Value(v) => Ok(v),
            Self::Undefined => Err(MeasureError::UndefinedAtZero),
        }
    }

    pub fn as_option(self) -> Option<f64> {
        match self {
            Self::Value(v) => Some(v),
            Self::Undefined => None,
        }
    }
}

/// `E`, `ΔE` and `δE` for one concurrence value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementStats {
    pub e: f64,
    pub delta_e: f64,
    pub rel: RelativeFluctuation,
}

impl EntanglementStats {
    pub fn from_concurrence(c: Concurrence) -> Self {
        let e = entanglement(c);
        let delta_e = fluctuation(c);
        Self {
            e,
            delta_e,
            rel: ratio(delta_e, e),
        }
    }
}

fn ratio(delta_e: f64, e: f64) -> RelativeFluctuation {
    if e == 0.0 {
        RelativeFluctuation::Undefined
    } else {
        RelativeFluctuation::Value(delta_e / e)
    }
}

/// `p log₂^k p` with the `0·log 0 = 0` convention.
fn weighted_log_power(p: f64, k: u32) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * p.log2().powi(k as i32)
    }
}

/// Binary Shannon entropy `H(x) = −x log₂x − (1−x) log₂(1−x)`.
pub fn shannon_h(x: f64) -> Result<f64, MeasureError> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) {
        return Err(MeasureError::OutOfDomain(x));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(0.0 - (weighted_log_power(x, 1) + weighted_log_power(1.0 - x, 1)))
}

/// `k`-th moment of the entropy operator `−log₂ρ` over a reduced state with
/// concurrence `c`.
pub fn entropy_moment(c: Concurrence, k: u32) -> f64 {
    let (large, small) = c.reduced_spectrum();
    let sum = weighted_log_power(large, k) + weighted_log_power(small, k);
    if k.is_multiple_of(2) {
        sum
    } else {
        // 0 − sum rather than −sum, so a pure product state reports +0
        0.0 - sum
    }
}

/// Entanglement entropy `E(C) = H((1 + √(1 − C²))/2)` in bits.
pub fn entanglement(c: Concurrence) -> f64 {
    entropy_moment(c, 1)
}

/// Closed-form fluctuation `ΔE = C log₂[(1 + √(1 − C²))/C]`, with `ΔE(0) = 0`.
pub fn fluctuation(c: Concurrence) -> f64 {
    let v = c.value();
    if v == 0.0 {
        return 0.0;
    }
    (v * ((1.0 + c.cosine()) / v).log2()).max(0.0)
}

/// `ΔE = √(⟨S²⟩ − ⟨S⟩²)` from the first two entropy moments.
pub fn fluctuation_via_moments(c: Concurrence) -> f64 {
    let mean = entropy_moment(c, 1);
    let second = entropy_moment(c, 2);
    (second - mean * mean).max(0.0).sqrt()
}

/// `δE = ΔE/E`; undefined where `E = 0`.
pub fn relative_fluctuation(c: Concurrence) -> RelativeFluctuation {
    ratio(fluctuation(c), entanglement(c))
}

/// Boundary expansion of `E(C)`.
pub fn asymptotic_entanglement(c: Concurrence, regime: Regime) -> f64 {
    let v = c.value();
    match regime {
        Regime::NearZero => -0.5 * v * v * (v / (2.0 * EULER.sqrt())).log2(),
        Regime::NearOne => 1.0 - (1.0 - v) / LN_2,
    }
}

/// Boundary expansion of `ΔE(C)`.
pub fn asymptotic_fluctuation(c: Concurrence, regime: Regime) -> f64 {
    let v = c.value();
    match regime {
        Regime::NearZero => -v * (v / 2.0).log2(),
        Regime::NearOne => SQRT_2 / LN_2 * (1.0 - v).sqrt(),
    }
}

/// Boundary expansion of `δE(C)`. Near zero this keeps the logarithmic
/// correction; the bare leading term is [`relative_leading_term`].
pub fn asymptotic_relative(c: Concurrence, regime: Regime) -> f64 {
    let v = c.value();
    match regime {
        Regime::NearZero => 2.0 / v / (1.0 - 1.0 / (2.0 * (v / 2.0).ln())),
        Regime::NearOne => SQRT_2 / LN_2 * (1.0 - v).sqrt(),
    }
}

/// `δE ≈ 2/C` as `C → 0`.
pub fn relative_leading_term(c: Concurrence) -> f64 {
    2.0 / c.value()
}
