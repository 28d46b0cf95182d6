//! Single-qubit quantum embedding workbench.
//!
//! A scalar input is embedded as a qubit state by a trainable rotation
//! circuit. The crate covers the full pipeline around that idea:
//!
//! - [`qubit`]: exact 2x2 complex linear algebra (states, unitaries,
//!   Bloch-sphere conversion, SU(2) axis-angle decomposition).
//! - [`embedding`]: the feature map, the two-class cost function, Gram
//!   matrices, and the synthetic banded dataset.
//! - [`training`]: Adam over the three circuit angles with
//!   finite-difference gradients, plus the mean-fidelity classifier.
//! - [`compile`]: translation of target states/unitaries into microwave
//!   pulse durations (atomic platform) and waveplate angles (photonic
//!   platform).
//! - [`hwsim`]: shot-noise SWAP-test sampling and tomography simulation
//!   for both platforms, including parameter-drift noise models.
//! - [`analysis`]: Bloch-sphere capacity bounds and Gram-matrix cluster
//!   metrics.
//!
//! # Conventions
//!
//! `|0>` sits at +z on the Bloch sphere and the Bloch vector is the
//! ordered expectation values `(<sx>, <sy>, <sz>)`. `rot_z(t)` is
//! `exp(-i t sz / 2)` and rotates Bloch vectors by `+t` about +z
//! (right-hand rule). States are compared only through fidelity and
//! unitaries only up to a global phase.

pub mod analysis;
pub mod compile;
pub mod embedding;
pub mod error;
pub mod hwsim;
pub mod qubit;
pub mod reference;
pub mod report;
pub mod seed;
pub mod training;

mod optim;

pub use error::{Error, Result};
pub use qubit::{AxisAngle, BlochVector, PureQubitState, Unitary2};
