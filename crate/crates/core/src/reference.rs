//! Published hardware settings for the ten benchmark embedded states.
//!
//! Both tables target the same set of trained states: the atomic rows
//! give on/off/on microwave durations in microseconds, the photonic rows
//! give the axis-angle parameters of the single compiled rotation
//! applied to `|H>`. States 1-5 belong to the first class, 6-10 to the
//! second.

use crate::compile::{atomic_evolution, AtomicPlatformSpec, PulseSequence};
use crate::embedding::ClassLabel;
use crate::error::Result;
use crate::qubit::{axis_rotation, AxisAngle, PureQubitState};

/// Microwave durations `(tau1, T, tau2)` in microseconds.
pub const ATOMIC_SEQUENCES_US: [(f64, f64, f64); 10] = [
    (19.0, 36.0, 8.0),
    (45.0, 51.0, 7.0),
    (20.0, 37.0, 1.0),
    (20.0, 38.0, 3.0),
    (19.0, 28.0, 3.0),
    (30.0, 47.0, 38.0),
    (32.0, 20.0, 8.0),
    (4.0, 7.0, 35.0),
    (4.0, 25.0, 12.0),
    (7.0, 10.0, 6.0),
];

/// Rotation parameters `(phi, (nx, ny, nz))` of the photonic embedding.
pub const PHOTONIC_ROTATIONS: [(f64, [f64; 3]); 10] = [
    (0.668, [0.667, 0.143, 0.731]),
    (1.986, [-0.423, 0.460, -0.781]),
    (2.111, [-0.510, 0.379, -0.772]),
    (2.408, [0.619, 0.240, 0.748]),
    (1.301, [-0.405, 0.914, 0.034]),
    (4.258, [0.418, 0.908, -0.006]),
    (4.367, [0.247, 0.969, 0.026]),
    (3.549, [-0.475, 0.847, 0.239]),
    (4.379, [0.197, 0.980, 0.036]),
    (3.762, [-0.433, 0.877, 0.208]),
];

/// Class of each benchmark index: 0-4 are A, 5-9 are B.
pub fn benchmark_label(index: usize) -> ClassLabel {
    if index < 5 {
        ClassLabel::A
    } else {
        ClassLabel::B
    }
}

pub fn atomic_sequences() -> Vec<PulseSequence> {
    ATOMIC_SEQUENCES_US
        .iter()
        .map(|&(t1, t, t2)| PulseSequence::from_us(t1, t, t2))
        .collect()
}

pub fn photonic_rotations() -> Vec<AxisAngle> {
    PHOTONIC_ROTATIONS
        .iter()
        .map(|&(phi, axis)| AxisAngle::new(phi, axis))
        .collect()
}

/// The ten states realized by replaying the atomic pulse table.
pub fn atomic_reference_states(spec: &AtomicPlatformSpec) -> Result<Vec<PureQubitState>> {
    atomic_sequences()
        .iter()
        .map(|seq| atomic_evolution(seq, spec))
        .collect()
}

/// The ten states realized by applying the photonic rotations to `|H>`.
pub fn photonic_reference_states() -> Result<Vec<PureQubitState>> {
    photonic_rotations()
        .iter()
        .map(|aa| Ok(axis_rotation(aa)?.apply(&PureQubitState::ket0())))
        .collect()
}
