//! Uncertainty relations for the harmonic oscillator on non-commutative phase
//! space, evaluated numerically in a truncated Fock basis.
//!
//! The crate is organised bottom-up:
//!
//! * [`hilbert`]: truncated one- and two-mode Fock spaces, ladder and
//!   canonical operators, states, expectations and (co)variances.
//! * [`models`]: the linear (Bopp-shift) and nonlinear (GUP-deformed
//!   momentum) operator sets, plus their closed-form commutators and
//!   Robertson-Schrödinger right-hand sides.
//! * [`bounds`]: lower and upper bounds on products and sums of variances.
//! * [`oracle`]: independent closed forms and naive brute-force recomputation
//!   of every bound.
//! * [`sweep`]: θ-grid experiments over the superposition family
//!   `cos θ |ψ_i⟩ − sin θ |ψ_j⟩` and the preconfigured figure datasets.
//! * [`cli`]: config parsing, CSV and gnuplot script emission, and the
//!   `sweep` / `figure` / `check` commands used by the `ncbound` binary.
//!
//! Units default to ħ = m = ω = 1.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod hilbert;
pub mod models;
pub mod oracle;
pub mod sweep;

pub use error::{Error, Result};
pub use hilbert::{
    Basis, HilbertSpec, OperatorMatrix, PhysicalConstants, StateVector, C64,
};
pub use models::{LinearModelParams, NonlinearModelParams, OperatorSet};
pub use bounds::{BoundOptions, BoundsRecord};
pub use sweep::{ModelKind, Pair, SweepConfig, SweepResult};
