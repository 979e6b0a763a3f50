//! Parameterized symmetric two-qubit joint measurement (SJM) bases.
//!
//! The basis family `|Φ_k(θ, φ)⟩` interpolates between a product basis
//! (`θ = 0`) and the elegant joint measurement (`θ = π/2`) with concurrence
//! `|sin θ|/2`. The even-`n` generalization and exact triangle-network
//! statistics live alongside it.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the scalar to `f64`, which is what the tolerances
//! [`TOL_NORM`] and [`TOL_EXACT`] are calibrated for.
//!
//! ```
//! use sjm_core::analysis::concurrence;
//! use sjm_core::bases::build_sjm_basis;
//! use sjm_core::Params64;
//!
//! let p = Params64::new(std::f64::consts::FRAC_PI_4, 0.0)?;
//! let basis = build_sjm_basis(&p);
//! assert!(basis.orthonormality_residual() < 1e-10);
//! let c = concurrence(&basis.states[0])?;
//! assert!((c - std::f64::consts::FRAC_PI_4.sin() / 2.0).abs() < 1e-10);
//! # Ok::<(), sjm_core::SjmError>(())
//! ```

pub mod analysis;
pub mod bases;
pub mod circuit;
pub mod error;
pub mod linalg;
pub mod multiqubit;
pub mod network;
pub mod scalar;

pub use analysis::{BlochVector, CurveFamily, CurvePoint, QubitPosition};
pub use bases::{BasisLabel, JointBasis, Sign, Slot, SjmParams};
pub use circuit::{DiscriminationReport, Gate, GateCircuit, GateKind};
pub use error::{Result, SjmError};
pub use linalg::{Amplitude, Operator, StateVector, Tensor};
pub use multiqubit::MultiSjmBasis;
pub use network::{NonlocalityReport, OutcomeDistribution};
pub use scalar::Scalar;

/// Tolerance for normalization and orthonormality checks.
pub const TOL_NORM: f64 = 1e-10;
/// Tolerance for identities that hold to rounding error.
pub const TOL_EXACT: f64 = 1e-12;

pub type Params64 = SjmParams<f64>;
pub type State64 = StateVector<f64>;
pub type Operator64 = Operator<f64>;
pub type Basis64 = JointBasis<f64>;
pub type Bloch64 = BlochVector<f64>;
pub type Circuit64 = GateCircuit<f64>;
pub type Distribution64 = OutcomeDistribution<f64>;
pub type MultiBasis64 = MultiSjmBasis<f64>;

pub type Params32 = SjmParams<f32>;
pub type State32 = StateVector<f32>;
