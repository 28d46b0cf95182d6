//! Exact 2x2 complex linear algebra: qubit states, unitaries, rotations,
//! Bloch-sphere conversion and SU(2) axis-angle decomposition.
//!
//! Conventions, fixed once for the whole crate:
//! - `|0>` maps to Bloch +z; the Bloch vector is `(<sx>, <sy>, <sz>)`.
//! - `rot_x(t) = exp(-i t sx / 2)`, `rot_z(t) = exp(-i t sz / 2)`;
//!   `rot_z(t)` rotates Bloch vectors by `+t` about +z (right-hand rule).
//! - States compare via fidelity, unitaries via [`distance_up_to_phase`];
//!   global phases are never observable.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);
const ONE: C64 = C64::new(1.0, 0.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// A normalized pure qubit state `amp0 |0> + amp1 |1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubitState {
    pub amp0: C64,
    pub amp1: C64,
}

impl PureQubitState {
    /// Builds a state, rejecting amplitudes whose norm deviates from 1 by
    /// more than 1e-9.
    pub fn new(amp0: C64, amp1: C64) -> Result<Self> {
        let n2 = amp0.norm_sqr() + amp1.norm_sqr();
        if !n2.is_finite() || (n2 - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "state not normalized: |amp|^2 = {n2}"
            )));
        }
        Ok(Self { amp0, amp1 })
    }

    /// Builds a state from arbitrary non-zero amplitudes by rescaling.
    pub fn normalized(amp0: C64, amp1: C64) -> Result<Self> {
        let n = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if !n.is_finite() || n < 1e-300 {
            return Err(Error::invalid("cannot normalize a zero state"));
        }
        Ok(Self {
            amp0: amp0 / n,
            amp1: amp1 / n,
        })
    }

    pub fn ket0() -> Self {
        Self { amp0: ONE, amp1: ZERO }
    }

    pub fn ket1() -> Self {
        Self { amp0: ZERO, amp1: ONE }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amp0.conj() * other.amp0 + self.amp1.conj() * other.amp1
    }
}

/// A 2x2 complex unitary, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    /// Entries `[[m00, m01], [m10, m11]]`.
    pub m: [[C64; 2]; 2],
}

impl Unitary2 {
    /// Builds a unitary, checking `U^dag U = I` to 1e-12 entrywise and
    /// `|det U| = 1` to 1e-12.
    pub fn new(m: [[C64; 2]; 2]) -> Result<Self> {
        let u = Self { m };
        let dev = u.unitarity_deviation();
        if !dev.is_finite() || dev > 1e-12 {
            return Err(Error::invalid(format!(
                "matrix is not unitary (deviation {dev:.3e})"
            )));
        }
        Ok(u)
    }

    pub fn identity() -> Self {
        Self {
            m: [[ONE, ZERO], [ZERO, ONE]],
        }
    }

    /// Max-entry deviation of `U^dag U` from the identity, plus the
    /// deviation of `|det U|` from 1.
    pub fn unitarity_deviation(&self) -> f64 {
        let u = self.adjoint().mul(self);
        let mut dev: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let target = if r == c { ONE } else { ZERO };
                dev = dev.max((u.m[r][c] - target).norm());
            }
        }
        dev.max((self.det().norm() - 1.0).abs())
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut m = [[ZERO; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        Self { m }
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for e in row.iter_mut() {
                *e *= z;
            }
        }
        Self { m }
    }

    pub fn apply(&self, s: &PureQubitState) -> PureQubitState {
        PureQubitState {
            amp0: self.m[0][0] * s.amp0 + self.m[0][1] * s.amp1,
            amp1: self.m[1][0] * s.amp0 + self.m[1][1] * s.amp1,
        }
    }
}

/// Bloch vector `(sx, sy, sz)`; unit norm for pure states, inside the
/// closed unit ball after tomography projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl BlochVector {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        Self { sx, sy, sz }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.sx * other.sx + self.sy * other.sy + self.sz * other.sz
    }
}

/// Rotation by `angle` about the unit `axis`, in the sense of
/// `cos(angle/2) I - i sin(angle/2) (axis . sigma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisAngle {
    pub angle: f64,
    pub axis: [f64; 3],
}

impl AxisAngle {
    pub fn new(angle: f64, axis: [f64; 3]) -> Self {
        Self { angle, axis }
    }

    pub fn axis_norm(&self) -> f64 {
        (self.axis[0] * self.axis[0] + self.axis[1] * self.axis[1] + self.axis[2] * self.axis[2])
            .sqrt()
    }
}

/// `exp(-i angle sx / 2)`.
pub fn rot_x(angle: f64) -> Result<Unitary2> {
    if !angle.is_finite() {
        return Err(Error::invalid("rot_x: non-finite angle"));
    }
    let c = C64::new((angle / 2.0).cos(), 0.0);
    let s = -I * (angle / 2.0).sin();
    Ok(Unitary2 { m: [[c, s], [s, c]] })
}

/// `exp(-i angle sz / 2) = diag(e^{-i angle/2}, e^{+i angle/2})`.
pub fn rot_z(angle: f64) -> Result<Unitary2> {
    if !angle.is_finite() {
        return Err(Error::invalid("rot_z: non-finite angle"));
    }
    let e = C64::from_polar(1.0, -angle / 2.0);
    Ok(Unitary2 {
        m: [[e, ZERO], [ZERO, e.conj()]],
    })
}

/// `cos(angle/2) I - i sin(angle/2) (n . sigma)` for a unit axis `n`.
///
/// Axes within 1e-6 of unit norm are silently renormalized; the returned
/// matrix always uses the renormalized axis.
pub fn axis_rotation(aa: &AxisAngle) -> Result<Unitary2> {
    if !aa.angle.is_finite() || aa.axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("axis_rotation: non-finite input"));
    }
    let n = aa.axis_norm();
    if n < 1e-12 {
        if aa.angle.rem_euclid(4.0 * std::f64::consts::PI).abs() < 1e-12 {
            return Ok(Unitary2::identity());
        }
        return Err(Error::invalid(
            "axis_rotation: zero axis with nonzero angle",
        ));
    }
    let (nx, ny, nz) = (aa.axis[0] / n, aa.axis[1] / n, aa.axis[2] / n);
    let c = C64::new((aa.angle / 2.0).cos(), 0.0);
    let s = (aa.angle / 2.0).sin();
    Ok(Unitary2 {
        m: [
            [c - I * (nz * s), -I * (nx * s) - ny * s],
            [-I * (nx * s) + ny * s, c + I * (nz * s)],
        ],
    })
}

/// The input-independent initial state `S H |0> = (|0> + i|1>)/sqrt(2)`.
pub fn init_state() -> PureQubitState {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    PureQubitState {
        amp0: C64::new(r, 0.0),
        amp1: C64::new(0.0, r),
    }
}

/// The matrix `S H` taking `|0>` to [`init_state`].
pub fn sh_gate() -> Unitary2 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    Unitary2 {
        m: [
            [C64::new(r, 0.0), C64::new(r, 0.0)],
            [C64::new(0.0, r), C64::new(0.0, -r)],
        ],
    }
}

/// `(<sx>, <sy>, <sz>)` of a normalized state.
pub fn state_to_bloch(s: &PureQubitState) -> Result<BlochVector> {
    if (s.norm_sqr() - 1.0).abs() > 1e-9 {
        return Err(Error::invalid("state_to_bloch: unnormalized state"));
    }
    let cross = s.amp0.conj() * s.amp1;
    Ok(BlochVector {
        sx: 2.0 * cross.re,
        sy: 2.0 * cross.im,
        sz: s.amp0.norm_sqr() - s.amp1.norm_sqr(),
    })
}

/// Squared overlap `|<a|b>|^2`, clamped to `[0, 1]`.
pub fn fidelity(a: &PureQubitState, b: &PureQubitState) -> f64 {
    a.inner(b).norm_sqr().clamp(0.0, 1.0)
}

/// Decomposes `U = e^{i phase} (cos(t/2) I - i sin(t/2) n.sigma)` with
/// `t` in `[0, 2pi)`.
///
/// `U = +-I` returns angle 0 with axis `(0, 0, 1)`; the sign is absorbed
/// into the phase (`-I` comes back as phase `pi`).
pub fn unitary_to_axis_angle(u: &Unitary2) -> (AxisAngle, f64) {
    // Strip the global phase: det(e^{-ia}U) = 1.
    let mut phase = u.det().arg() / 2.0;
    let mut v = u.scale(C64::from_polar(1.0, -phase));
    // The SU(2) trace is real; a negative one means we picked the phase
    // branch off by pi. Fold it so cos(t/2) >= -1 with t in [0, 2pi).
    let c = (v.trace().re / 2.0).clamp(-1.0, 1.0);
    let s = (1.0 - c * c).sqrt();
    if s < 1e-9 {
        if c < 0.0 {
            phase += std::f64::consts::PI;
        }
        return (AxisAngle::new(0.0, [0.0, 0.0, 1.0]), phase);
    }
    if c < -1.0 + 1e-15 {
        // Pure half-turn with degenerate trace handled below via entries.
    }
    let _ = &mut v;
    let nx = -(v.m[0][1] + v.m[1][0]).im / (2.0 * s);
    let ny = (v.m[1][0] - v.m[0][1]).re / (2.0 * s);
    let nz = -(v.m[0][0] - v.m[1][1]).im / (2.0 * s);
    let n = (nx * nx + ny * ny + nz * nz).sqrt();
    let axis = if n > 1e-12 {
        [nx / n, ny / n, nz / n]
    } else {
        [0.0, 0.0, 1.0]
    };
    let angle = 2.0 * s.atan2(c);
    (AxisAngle::new(angle, axis), phase)
}

/// `min_alpha max_entry |U - e^{i alpha} V|`; zero iff the two unitaries
/// agree up to a global phase.
pub fn distance_up_to_phase(u: &Unitary2, v: &Unitary2) -> f64 {
    let f = |alpha: f64| -> f64 {
        let p = C64::from_polar(1.0, alpha);
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((u.m[r][c] - p * v.m[r][c]).norm());
            }
        }
        worst
    };
    // Candidate phases: entry-wise alignments plus the trace alignment,
    // plus a coarse grid as a safety net.
    let mut candidates = Vec::with_capacity(72);
    for r in 0..2 {
        for c in 0..2 {
            if v.m[r][c].norm() > 1e-12 {
                candidates.push((u.m[r][c] / v.m[r][c]).arg());
            }
        }
    }
    let t = v.adjoint().mul(u).trace();
    if t.norm() > 1e-12 {
        candidates.push(t.arg());
    }
    let grid = 64;
    for k in 0..grid {
        candidates.push(2.0 * std::f64::consts::PI * k as f64 / grid as f64);
    }
    let mut best_alpha = 0.0;
    let mut best = f64::INFINITY;
    for &a in &candidates {
        let val = f(a);
        if val < best {
            best = val;
            best_alpha = a;
        }
    }
    // Local refinement by ternary search around the best candidate.
    let mut lo = best_alpha - 0.2;
    let mut hi = best_alpha + 0.2;
    for _ in 0..120 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    best.min(f(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn assert_entries(u: &Unitary2, expect: [[C64; 2]; 2], tol: f64) {
        for r in 0..2 {
            for c in 0..2 {
                assert!(
                    (u.m[r][c] - expect[r][c]).norm() < tol,
                    "entry ({r},{c}): {:?} vs {:?}",
                    u.m[r][c],
                    expect[r][c]
                );
            }
        }
    }

    fn random_unitary(rng: &mut impl Rng) -> Unitary2 {
        let aa = AxisAngle::new(
            rng.gen_range(0.0..2.0 * PI),
            random_axis(rng),
        );
        let phase = C64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        axis_rotation(&aa).unwrap().scale(phase)
    }

    fn random_axis(rng: &mut impl Rng) -> [f64; 3] {
        loop {
            let v: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 {
                return [v[0] / n, v[1] / n, v[2] / n];
            }
        }
    }

    #[test]
    fn rot_x_basics() {
        assert_entries(&rot_x(0.0).unwrap(), Unitary2::identity().m, 1e-15);
        let minus_i = C64::new(0.0, -1.0);
        assert_entries(
            &rot_x(PI).unwrap(),
            [[ZERO, minus_i], [minus_i, ZERO]],
            1e-15,
        );
        // Spinor double cover: a full turn is -I.
        assert_entries(
            &rot_x(2.0 * PI).unwrap(),
            [[-ONE, ZERO], [ZERO, -ONE]],
            1e-15,
        );
        assert!(rot_x(f64::NAN).is_err());
    }

    #[test]
    fn rot_z_basics() {
        assert_entries(&rot_z(0.0).unwrap(), Unitary2::identity().m, 1e-15);
        assert_entries(
            &rot_z(PI).unwrap(),
            [[C64::new(0.0, -1.0), ZERO], [ZERO, C64::new(0.0, 1.0)]],
            1e-15,
        );
        let half = rot_z(PI / 2.0).unwrap();
        assert_entries(&half.mul(&half), rot_z(PI).unwrap().m, 1e-15);
    }

    #[test]
    fn rotation_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (a, b) = (rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            assert!(
                distance_up_to_phase(
                    &rot_x(a).unwrap().mul(&rot_x(b).unwrap()),
                    &rot_x(a + b).unwrap()
                ) < 1e-12
            );
            assert!(
                distance_up_to_phase(
                    &rot_z(a).unwrap().mul(&rot_z(b).unwrap()),
                    &rot_z(a + b).unwrap()
                ) < 1e-12
            );
        }
    }

    #[test]
    fn rotations_are_unitary_for_random_angles() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let t = rng.gen_range(-20.0..20.0);
            assert!(rot_x(t).unwrap().unitarity_deviation() < 1e-12);
            assert!(rot_z(t).unwrap().unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn axis_rotation_cases() {
        // Half-turn about z is -i sz.
        let u = axis_rotation(&AxisAngle::new(PI, [0.0, 0.0, 1.0])).unwrap();
        assert_entries(
            &u,
            [[C64::new(0.0, -1.0), ZERO], [ZERO, C64::new(0.0, 1.0)]],
            1e-15,
        );
        // x-axis case coincides with rot_x by definition.
        let phi = 1.37;
        assert!(
            distance_up_to_phase(
                &axis_rotation(&AxisAngle::new(phi, [1.0, 0.0, 0.0])).unwrap(),
                &rot_x(phi).unwrap()
            ) < 1e-15
        );
        // Published photonic row 1: tr(U)/2 = cos(phi/2) analytically.
        let u = axis_rotation(&AxisAngle::new(0.668, [0.667, 0.143, 0.731])).unwrap();
        assert_abs_diff_eq!(u.trace().re / 2.0, (0.334f64).cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(u.trace().im, 0.0, epsilon = 1e-12);

        assert!(axis_rotation(&AxisAngle::new(1.0, [0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn init_state_values() {
        let s = init_state();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amp0.re, r, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp0.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp1.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp1.im, r, epsilon = 1e-15);
        // Oracle: <sigma> by direct matrix algebra gives (0, 1, 0).
        let b = state_to_bloch(&s).unwrap();
        assert_abs_diff_eq!(b.sx, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.sy, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.sz, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(fidelity(&s, &s), 1.0, epsilon = 1e-15);
        // SH|0> reproduces it exactly.
        let via_gate = sh_gate().apply(&PureQubitState::ket0());
        assert!(fidelity(&s, &via_gate) > 1.0 - 1e-15);
    }

    #[test]
    fn bloch_conventions() {
        let b = state_to_bloch(&PureQubitState::ket0()).unwrap();
        assert_eq!((b.sx, b.sy, b.sz), (0.0, 0.0, 1.0));
        let plus = PureQubitState::normalized(ONE, ONE).unwrap();
        let b = state_to_bloch(&plus).unwrap();
        assert_abs_diff_eq!(b.sx, 1.0, epsilon = 1e-12);
        // rot_z(+t) rotates Bloch vectors by +t about +z.
        let rotated = rot_z(PI / 2.0).unwrap().apply(&plus);
        let b = state_to_bloch(&rotated).unwrap();
        assert_abs_diff_eq!(b.sx, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.sy, 1.0, epsilon = 1e-12);

        let bad = PureQubitState {
            amp0: C64::new(0.9, 0.0),
            amp1: ZERO,
        };
        assert!(state_to_bloch(&bad).is_err());
    }

    #[test]
    fn fidelity_cases() {
        let zero = PureQubitState::ket0();
        let one = PureQubitState::ket1();
        let plus = PureQubitState::normalized(ONE, ONE).unwrap();
        assert_abs_diff_eq!(fidelity(&zero, &one), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity(&zero, &plus), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(fidelity(&plus, &zero), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn fidelity_matches_bloch_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let a = random_unitary(&mut rng).apply(&PureQubitState::ket0());
            let b = random_unitary(&mut rng).apply(&PureQubitState::ket0());
            let (ba, bb) = (state_to_bloch(&a).unwrap(), state_to_bloch(&b).unwrap());
            assert!((ba.norm() - 1.0).abs() < 1e-9);
            assert_abs_diff_eq!(
                fidelity(&a, &b),
                0.5 * (1.0 + ba.dot(&bb)),
                epsilon = 1e-9
            );
        }
    }

    #[test]
    fn axis_angle_round_trip() {
        let (aa, phase) = unitary_to_axis_angle(&rot_x(1.2).unwrap());
        assert_abs_diff_eq!(aa.angle, 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(aa.axis[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(phase, 0.0, epsilon = 1e-12);

        // -I: angle 0 with phase pi, conventional axis.
        let minus_i = Unitary2::identity().scale(-ONE);
        let (aa, phase) = unitary_to_axis_angle(&minus_i);
        assert_eq!(aa.angle, 0.0);
        assert_eq!(aa.axis, [0.0, 0.0, 1.0]);
        assert_abs_diff_eq!(phase.rem_euclid(2.0 * PI), PI, epsilon = 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let u = random_unitary(&mut rng);
            let (aa, phase) = unitary_to_axis_angle(&u);
            assert!(aa.angle >= 0.0 && aa.angle < 2.0 * PI);
            let rebuilt = axis_rotation(&aa)
                .unwrap()
                .scale(C64::from_polar(1.0, phase));
            assert!(distance_up_to_phase(&rebuilt, &u) < 1e-10);
            // The phase reconstruction is exact, not just up-to-phase.
            let mut worst: f64 = 0.0;
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((rebuilt.m[r][c] - u.m[r][c]).norm());
                }
            }
            assert!(worst < 1e-10);
        }
    }

    #[test]
    fn distance_up_to_phase_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(&mut rng);
        assert_abs_diff_eq!(distance_up_to_phase(&u, &u), 0.0, epsilon = 1e-14);
        let shifted = u.scale(C64::from_polar(1.0, PI / 7.0));
        assert!(distance_up_to_phase(&u, &shifted) < 1e-14);

        // (I, sx): a fine-grid oracle confirms the minimum is exactly 1.
        let sx = Unitary2::new([[ZERO, ONE], [ONE, ZERO]]).unwrap();
        let id = Unitary2::identity();
        let mut oracle = f64::INFINITY;
        for k in 0..20_000 {
            let a = 2.0 * PI * k as f64 / 20_000.0;
            let p = C64::from_polar(1.0, a);
            let mut worst: f64 = 0.0;
            for r in 0..2 {
                for c in 0..2 {
                    worst = worst.max((id.m[r][c] - p * sx.m[r][c]).norm());
                }
            }
            oracle = oracle.min(worst);
        }
        let d = distance_up_to_phase(&id, &sx);
        assert!(d >= 1.0 - 1e-12);
        assert_abs_diff_eq!(d, oracle, epsilon = 1e-6);
    }

    #[test]
    fn state_constructors_validate() {
        assert!(PureQubitState::new(ONE, ONE).is_err());
        assert!(PureQubitState::normalized(ZERO, ZERO).is_err());
        assert!(Unitary2::new([[ONE, ONE], [ZERO, ONE]]).is_err());
    }
}
