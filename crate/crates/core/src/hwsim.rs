//! Experiment simulation: shot-noise SWAP-test sampling, parameter-drift
//! noise, and state tomography for the atomic and photonic platforms.
//!
//! All randomized operations take an explicit seed and are bitwise
//! reproducible; independent sub-tasks derive their own seeds through
//! [`crate::seed::split_seed`] so any execution order gives the
//! sequential result.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::compile::{
    atomic_segment, compile_waveplates_numeric, compile_waveplates_paper, waveplate_jones,
    waveplate_jones_retarded, AtomicPlatformSpec, PlateKind, PulseSequence, WaveplateSetting,
};
use crate::embedding::GramMatrix;
use crate::error::{Error, Result};
use crate::optim::nelder_mead;
use crate::qubit::{
    axis_rotation, fidelity, state_to_bloch, AxisAngle, BlochVector, PureQubitState, Unitary2,
};
use crate::seed::{split_seed, stage_tag};

/// Drift and jitter of the atomic drive. The relative drift is drawn
/// once per tomography record (a per-session offset); the jitters are
/// fresh Gaussian draws per repetition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomicNoiseModel {
    /// Fractional per-session drift of both frequencies (e.g. 0.01).
    pub rel_drift: f64,
    /// Per-shot Rabi-frequency jitter, rad/s (1 sigma).
    pub rabi_jitter: f64,
    /// Per-shot detuning jitter, rad/s (1 sigma).
    pub detuning_jitter: f64,
    /// Repetitions per measured component.
    pub repetitions: usize,
}

impl AtomicNoiseModel {
    /// 1% drift, 2pi x 1.5 kHz / 2pi x 71 Hz jitters, 5 repetitions.
    pub fn lab_reference() -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        Self {
            rel_drift: 0.01,
            rabi_jitter: two_pi * 1.5e3,
            detuning_jitter: two_pi * 71.0,
            repetitions: 5,
        }
    }

    pub fn noiseless(repetitions: usize) -> Self {
        Self {
            rel_drift: 0.0,
            rabi_jitter: 0.0,
            detuning_jitter: 0.0,
            repetitions,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rel_drift < 0.0
            || self.rabi_jitter < 0.0
            || self.detuning_jitter < 0.0
            || self.repetitions == 0
        {
            return Err(Error::invalid("atomic noise fields must be >= 0, repetitions >= 1"));
        }
        Ok(())
    }
}

/// Plate-setting accuracy and counting statistics of the photonic setup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonicNoiseModel {
    /// Uniform bound on each encoding-plate angle error, radians.
    pub encoding_plate_error: f64,
    /// Uniform bound on each tomography-plate angle error, radians.
    pub tomo_plate_error: f64,
    /// Uniform bound on the retardance deviation from pi/2 or pi.
    pub retardance_error: f64,
    /// Total coincidence budget split over the six projectors;
    /// 0 selects the infinite-count (expected-value) limit.
    pub total_counts: u64,
}

impl PhotonicNoiseModel {
    /// +-1 deg encoding, +-0.25 deg tomography, +-2 deg retardance, 20k
    /// events.
    pub fn lab_reference() -> Self {
        Self {
            encoding_plate_error: 1.0_f64.to_radians(),
            tomo_plate_error: 0.25_f64.to_radians(),
            retardance_error: 2.0_f64.to_radians(),
            total_counts: 20_000,
        }
    }

    pub fn noiseless() -> Self {
        Self {
            encoding_plate_error: 0.0,
            tomo_plate_error: 0.0,
            retardance_error: 0.0,
            total_counts: 0,
        }
    }
}

/// Shot budget for one overlap estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotModel {
    pub shots_per_overlap: u64,
    pub seed: u64,
}

/// The six tomography projector labels, in inversion order.
pub const PROJECTOR_NAMES: [&str; 6] = ["H", "V", "D", "A", "R", "L"];

/// Raw data of one tomography run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "platform")]
pub enum TomographyData {
    Atomic {
        /// Relative population of `|1>` per component (x, y, z) and
        /// repetition.
        populations: Vec<Vec<f64>>,
        /// Mean measured spin component, order (x, y, z).
        component_means: [f64; 3],
    },
    Photonic {
        /// Counts per projector in [`PROJECTOR_NAMES`] order; stored as
        /// reals so the infinite-count limit can carry probabilities.
        counts: [f64; 6],
        /// True when the closed-form plate angles missed the target and
        /// the numeric compiler was used instead.
        used_numeric_compiler: bool,
        /// The plate setting actually applied (before perturbation).
        setting: WaveplateSetting,
    },
}

/// One simulated tomography experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TomographyRecord {
    pub data: TomographyData,
    pub bloch: BlochVector,
    /// Per-component standard uncertainty, order (x, y, z).
    pub uncertainty: [f64; 3],
    pub seed: u64,
}

/// SWAP-test success probability `(1 + |<a|b>|^2) / 2`.
pub fn swap_test_prob(a: &PureQubitState, b: &PureQubitState) -> f64 {
    0.5 * (1.0 + fidelity(a, b))
}

/// Brute-force 3-qubit check of [`swap_test_prob`]: Hadamard,
/// controlled-SWAP, Hadamard on an ancilla, then the ancilla-0
/// probability.
pub fn swap_test_statevector_oracle(a: &PureQubitState, b: &PureQubitState) -> f64 {
    // Basis order |ancilla q1 q2>, index = 4*anc + 2*q1 + q2.
    let mut amp = [Complex64::new(0.0, 0.0); 8];
    let a_amp = [a.amp0, a.amp1];
    let b_amp = [b.amp0, b.amp1];
    for (i, &ai) in a_amp.iter().enumerate() {
        for (j, &bj) in b_amp.iter().enumerate() {
            amp[2 * i + j] = ai * bj;
        }
    }
    let hadamard_ancilla = |amp: &mut [Complex64; 8]| {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for low in 0..4 {
            let (x, y) = (amp[low], amp[4 + low]);
            amp[low] = r * (x + y);
            amp[4 + low] = r * (x - y);
        }
    };
    hadamard_ancilla(&mut amp);
    amp.swap(0b101, 0b110); // controlled-SWAP on the ancilla-1 block
    hadamard_ancilla(&mut amp);
    (0..4).map(|low| amp[low].norm_sqr()).sum()
}

/// Binomial shot sampling of the SWAP test; returns the overlap estimate
/// `2 k/shots - 1` clamped to `[0, 1]`.
pub fn sample_swap_test(a: &PureQubitState, b: &PureQubitState, shots: &ShotModel) -> Result<f64> {
    if shots.shots_per_overlap == 0 {
        return Err(Error::invalid("sample_swap_test: shots must be >= 1"));
    }
    let p = swap_test_prob(a, b).clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(shots.seed);
    let k = Binomial::new(shots.shots_per_overlap, p)
        .map_err(|e| Error::invalid(format!("binomial: {e}")))?
        .sample(&mut rng);
    Ok((2.0 * k as f64 / shots.shots_per_overlap as f64 - 1.0).clamp(0.0, 1.0))
}

/// Shot-sampled Gram matrix: all `n^2` entries estimated independently
/// (diagonal included, no symmetrization -- the raw asymmetry is part of
/// the noise signature). Entry `(i, j)` uses seed
/// `split_seed(seed, [i, j])`.
pub fn gram_from_shots(states: &[PureQubitState], shots: &ShotModel) -> Result<GramMatrix> {
    if states.is_empty() {
        return Err(Error::invalid("gram_from_shots: empty state list"));
    }
    let n = states.len();
    let mut entries = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let entry_model = ShotModel {
                shots_per_overlap: shots.shots_per_overlap,
                seed: split_seed(shots.seed, &[i as u64, j as u64]),
            };
            entries[i][j] = sample_swap_test(&states[i], &states[j], &entry_model)?;
        }
    }
    Ok(GramMatrix {
        entries,
        ordering: (0..n).map(|i| format!("state-{i}")).collect(),
    })
}

/// Projects a raw component triple onto the closed Bloch ball (radial
/// projection of any vector with norm above 1).
pub fn reconstruct_bloch(raw: (f64, f64, f64)) -> BlochVector {
    let v = BlochVector::new(raw.0, raw.1, raw.2);
    let n = v.norm();
    if n <= 1.0 || !n.is_finite() {
        v
    } else {
        BlochVector::new(v.sx / n, v.sy / n, v.sz / n)
    }
}

// ---------------------------------------------------------------------
// Atomic tomography
// ---------------------------------------------------------------------

/// Rodrigues rotation of `v` by `angle` about the unit `axis`.
fn rot3(axis: [f64; 3], angle: f64, v: [f64; 3]) -> [f64; 3] {
    let (s, c) = angle.sin_cos();
    let dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    [
        v[0] * c + cross[0] * s + axis[0] * dot * (1.0 - c),
        v[1] * c + cross[1] * s + axis[1] * dot * (1.0 - c),
        v[2] * c + cross[2] * s + axis[2] * dot * (1.0 - c),
    ]
}

/// Solves an off/on segment pair whose Bloch rotation carries the
/// measurement axis onto +z, so a subsequent population measurement
/// reads out that component. Durations are continuous (analysis pulses
/// are not grid-quantized). Returns `(t_off, tau_on)` in seconds.
fn analysis_segments(axis: [f64; 3], spec: &AtomicPlatformSpec) -> Result<(f64, f64)> {
    let w = spec.generalized_rabi();
    let drive = spec.drive_axis();
    let two_pi = 2.0 * std::f64::consts::PI;
    let objective = |p: &[f64; 2]| -> f64 {
        let after_off = rot3([0.0, 0.0, -1.0], p[0], axis);
        let after_on = rot3(drive, p[1], after_off);
        let dx = after_on[0];
        let dy = after_on[1];
        let dz = after_on[2] - 1.0;
        dx * dx + dy * dy + dz * dz
    };
    let mut best: ([f64; 2], f64) = ([0.0, 0.0], objective(&[0.0, 0.0]));
    for i in 0..4 {
        for j in 0..4 {
            let start = [
                two_pi * (i as f64 + 0.5) / 4.0,
                two_pi * (j as f64 + 0.5) / 4.0,
            ];
            let (x, v) = nelder_mead(&objective, start, 0.7, 1e-14, 1e-28, 4000);
            if v < best.1 {
                best = (x, v);
            }
            if best.1 < 1e-26 {
                break;
            }
        }
    }
    if best.1 > 1e-18 {
        return Err(Error::Numerical(format!(
            "analysis pulse alignment residual {:.3e}",
            best.1
        )));
    }
    let a = best.0[0].rem_euclid(two_pi);
    let b = best.0[1].rem_euclid(two_pi);
    Ok((a / spec.detuning, b / w))
}

fn evolve_with(
    seq: &PulseSequence,
    analysis: Option<(f64, f64)>,
    spec: &AtomicPlatformSpec,
) -> Result<PureQubitState> {
    let mut u = atomic_segment(true, seq.tau1, spec)?;
    u = atomic_segment(false, seq.t_off, spec)?.mul(&u);
    u = atomic_segment(true, seq.tau2, spec)?.mul(&u);
    if let Some((t_off, tau_on)) = analysis {
        u = atomic_segment(false, t_off, spec)?.mul(&u);
        u = atomic_segment(true, tau_on, spec)?.mul(&u);
    }
    Ok(u.apply(&PureQubitState::ket0()))
}

/// Simulates atomic state tomography of the pulse sequence `seq`.
///
/// `<Sz>` is read directly from the relative populations; `<Sx>` and
/// `<Sy>` through appended analysis segments that rotate the respective
/// axis onto z. Each component is measured `repetitions` times with
/// fresh jitter draws on top of a per-session drift offset.
pub fn simulate_atomic_tomography(
    seq: &PulseSequence,
    spec: &AtomicPlatformSpec,
    noise: &AtomicNoiseModel,
    seed: u64,
) -> Result<TomographyRecord> {
    noise.validate()?;
    let analysis_x = analysis_segments([1.0, 0.0, 0.0], spec)?;
    let analysis_y = analysis_segments([0.0, 1.0, 0.0], spec)?;
    let plans = [Some(analysis_x), Some(analysis_y), None]; // x, y, z

    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, &[stage_tag("atomic-tomo")]));
    let gauss = |rng: &mut ChaCha8Rng| -> f64 {
        // Box-Muller; two uniforms per draw keep the stream simple.
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    };
    let session_rabi = spec.rabi * (1.0 + noise.rel_drift * gauss(&mut rng));
    let session_detuning = spec.detuning * (1.0 + noise.rel_drift * gauss(&mut rng));

    let mut populations = vec![Vec::with_capacity(noise.repetitions); 3];
    let mut means = [0.0; 3];
    let mut stds = [0.0; 3];
    for (ci, plan) in plans.iter().enumerate() {
        let mut values = Vec::with_capacity(noise.repetitions);
        for _ in 0..noise.repetitions {
            let rabi = session_rabi + noise.rabi_jitter * gauss(&mut rng);
            let detuning = session_detuning + noise.detuning_jitter * gauss(&mut rng);
            let jittered = AtomicPlatformSpec {
                rabi: rabi.max(1.0),
                detuning: if detuning == 0.0 { 1.0 } else { detuning },
                ..*spec
            };
            let state = evolve_with(seq, *plan, &jittered)?;
            let p0 = state.amp0.norm_sqr();
            let p1 = state.amp1.norm_sqr();
            populations[ci].push(p1 / (p0 + p1));
            values.push((p0 - p1) / (p0 + p1));
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (values.len() - 1) as f64
        } else {
            0.0
        };
        means[ci] = mean;
        stds[ci] = var.sqrt();
    }

    Ok(TomographyRecord {
        data: TomographyData::Atomic {
            populations,
            component_means: means,
        },
        bloch: reconstruct_bloch((means[0], means[1], means[2])),
        uncertainty: stds,
        seed,
    })
}

// ---------------------------------------------------------------------
// Photonic tomography
// ---------------------------------------------------------------------

/// Quarter- and half-plate fast-axis angles projecting each of the six
/// polarization states onto `|H>` through a Q-then-H stack followed by
/// an H-transmitting polarizer. Order matches [`PROJECTOR_NAMES`].
const TOMO_SETTINGS: [(f64, f64); 6] = [
    (0.0, 0.0),                                              // H
    (0.0, std::f64::consts::FRAC_PI_4),                      // V
    (std::f64::consts::FRAC_PI_4, std::f64::consts::PI / 8.0), // D
    (std::f64::consts::FRAC_PI_4, -std::f64::consts::PI / 8.0), // A
    (0.0, -std::f64::consts::PI / 8.0),                      // R
    (0.0, std::f64::consts::PI / 8.0),                       // L
];

/// The six projector states in [`PROJECTOR_NAMES`] order.
pub fn projector_states() -> [PureQubitState; 6] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = Complex64::new
;
    [
        PureQubitState::ket0(),
        PureQubitState::ket1(),
        PureQubitState { amp0: c(r, 0.0), amp1: c(r, 0.0) },
        PureQubitState { amp0: c(r, 0.0), amp1: c(-r, 0.0) },
        PureQubitState { amp0: c(r, 0.0), amp1: c(0.0, r) },
        PureQubitState { amp0: c(r, 0.0), amp1: c(0.0, -r) },
    ]
}

fn tomo_probability(state: &PureQubitState, q_angle: f64, h_angle: f64) -> Result<f64> {
    let q = waveplate_jones(PlateKind::Quarter, q_angle)?;
    let h = waveplate_jones(PlateKind::Half, h_angle)?;
    let out = h.mul(&q).apply(state);
    Ok(out.amp0.norm_sqr())
}

fn invert_counts(counts: &[f64; 6]) -> (f64, f64, f64) {
    let ratio = |num: f64, den: f64| if den > 0.0 { num / den } else { 0.0 };
    (
        ratio(counts[2] - counts[3], counts[2] + counts[3]), // (D - A)/(D + A)
        ratio(counts[4] - counts[5], counts[4] + counts[5]), // (R - L)/(R + L)
        ratio(counts[0] - counts[1], counts[0] + counts[1]), // (H - V)/(H + V)
    )
}

/// Simulates photonic tomography of the compiled rotation `target`.
///
/// Plates come from the closed-form compiler when it reproduces the
/// target, otherwise from the numeric compiler. Encoding plate angles
/// and retardances, then tomography plate angles, are perturbed by
/// uniform draws inside the model bounds; each projector receives
/// `total_counts / 6` incident events and Poisson counts are drawn from
/// the transmitted expectation (`total_counts = 0` uses expectations
/// directly).
pub fn simulate_photonic_tomography(
    target: &AxisAngle,
    noise: &PhotonicNoiseModel,
    seed: u64,
) -> Result<TomographyRecord> {
    let target_unitary = axis_rotation(target)?;
    let (setting, used_numeric) = match compile_waveplates_paper(target) {
        Ok(s) if !s.flagged => (s, false),
        _ => (compile_waveplates_numeric(&target_unitary)?, true),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, &[stage_tag("photonic-tomo")]));
    let jitter = |rng: &mut ChaCha8Rng, bound: f64| -> f64 {
        if bound > 0.0 {
            rng.gen_range(-bound..=bound)
        } else {
            0.0
        }
    };

    // Encoding stack with angle and retardance errors.
    let nominal = [
        (std::f64::consts::FRAC_PI_2, setting.theta_q1),
        (std::f64::consts::PI, setting.theta_h2),
        (std::f64::consts::FRAC_PI_2, setting.theta_q3),
    ];
    let mut stack = Unitary2::identity();
    for (retardance, angle) in nominal {
        let plate = waveplate_jones_retarded(
            retardance + jitter(&mut rng, noise.retardance_error),
            angle + jitter(&mut rng, noise.encoding_plate_error),
        )?;
        stack = plate.mul(&stack);
    }
    let state = stack.apply(&PureQubitState::ket0());

    let per_projector = noise.total_counts as f64 / 6.0;
    let mut counts = [0.0; 6];
    for (k, (q, h)) in TOMO_SETTINGS.iter().enumerate() {
        let p = tomo_probability(
            &state,
            q + jitter(&mut rng, noise.tomo_plate_error),
            h + jitter(&mut rng, noise.tomo_plate_error),
        )?
        .clamp(0.0, 1.0);
        counts[k] = if noise.total_counts == 0 {
            p
        } else {
            let lambda = per_projector * p;
            if lambda > 0.0 {
                Poisson::new(lambda)
                    .map_err(|e| Error::invalid(format!("poisson: {e}")))?
                    .sample(&mut rng)
            } else {
                0.0
            }
        };
    }

    let raw = invert_counts(&counts);
    // Poisson error propagation of each count ratio.
    let sigma = |a: f64, b: f64| -> f64 {
        let total = a + b;
        if total > 0.0 {
            2.0 * (a * b / (total * total * total)).sqrt()
        } else {
            0.0
        }
    };
    let uncertainty = if noise.total_counts == 0 {
        [0.0; 3]
    } else {
        [
            sigma(counts[2], counts[3]),
            sigma(counts[4], counts[5]),
            sigma(counts[0], counts[1]),
        ]
    };

    Ok(TomographyRecord {
        data: TomographyData::Photonic {
            counts,
            used_numeric_compiler: used_numeric,
            setting,
        },
        bloch: reconstruct_bloch(raw),
        uncertainty,
        seed,
    })
}

/// Fidelity `(1 + S . S_target)/2` between a reconstructed Bloch vector
/// (possibly mixed) and a pure target state.
pub fn bloch_fidelity(reconstructed: &BlochVector, target: &PureQubitState) -> Result<f64> {
    let t = state_to_bloch(target)?;
    Ok(0.5 * (1.0 + reconstructed.dot(&t)))
}

/// Poisson bootstrap of the tomography counts: redraws each projector
/// count, re-inverts, and returns the mean and standard deviation of the
/// fidelity with `target` over `replicas` replicas.
pub fn mc_fidelity_uncertainty(
    record: &TomographyRecord,
    target: &PureQubitState,
    replicas: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if replicas < 2 {
        return Err(Error::invalid("mc_fidelity_uncertainty: need >= 2 replicas"));
    }
    let counts = match &record.data {
        TomographyData::Photonic { counts, .. } => counts,
        TomographyData::Atomic { .. } => {
            return Err(Error::invalid(
                "mc_fidelity_uncertainty: requires a photonic record with counts",
            ))
        }
    };
    if counts.iter().all(|&c| c <= 0.0) {
        return Err(Error::invalid("mc_fidelity_uncertainty: all counts are zero"));
    }
    let mut fidelities = Vec::with_capacity(replicas);
    for r in 0..replicas {
        let mut rng =
            ChaCha8Rng::seed_from_u64(split_seed(seed, &[stage_tag("bootstrap"), r as u64]));
        let mut redrawn = [0.0; 6];
        for k in 0..6 {
            redrawn[k] = if counts[k] > 0.0 {
                Poisson::new(counts[k])
                    .map_err(|e| Error::invalid(format!("poisson: {e}")))?
                    .sample(&mut rng)
            } else {
                0.0
            };
        }
        let bloch = reconstruct_bloch(invert_counts(&redrawn));
        fidelities.push(bloch_fidelity(&bloch, target)?);
    }
    let mean = fidelities.iter().sum::<f64>() / replicas as f64;
    let var = fidelities
        .iter()
        .map(|f| (f - mean) * (f - mean))
        .sum::<f64>()
        / (replicas - 1) as f64;
    Ok((mean, var.sqrt()))
}
