//! Entanglement entropy and its rms fluctuations for two-qubit systems.
//!
//! Every entanglement statistic of a two-qubit state is a function of its
//! concurrence alone. The crate computes concurrence for pure states, for
//! arbitrary density matrices (Hill–Wootters), for Bell-diagonal mixtures and
//! for the thermal Heisenberg dimer, and maps it to the entanglement `E`,
//! the fluctuation `ΔE` and the relative fluctuation `δE = ΔE/E`.
//!
//! The basis order is `|00⟩, |01⟩, |10⟩, |11⟩` everywhere.

pub mod figures;
pub mod linalg;
pub mod measures;
pub mod mixed;
pub mod pure;
pub mod rho_file;
pub mod solvers;
pub mod thermal;

pub use linalg::{ComplexMatrix, ComplexScalar, EigenSystem, LinalgError};
pub use measures::{Concurrence, EntanglementStats, Regime, RelativeFluctuation};
pub use mixed::{BellWeights, DensityMatrix, HillWootters};
pub use pure::{PureState, Subsystem};
pub use solvers::RootResult;
pub use thermal::{DimerParams, ThermalPoint};
