//! Bloch-sphere capacity bounds and Gram-matrix cluster metrics.
//!
//! Non-overlapping spherical sectors of central angle `theta` each cover
//! an area `2 pi (1 - cos(theta/2))` of the `4 pi` sphere, which bounds
//! how many classes fit; treating a fidelity deficit `1 - F` as a cap
//! area likewise bounds the number of distinguishable points.

use serde::{Deserialize, Serialize};

use crate::embedding::{ClassLabel, GramMatrix};
use crate::error::{Error, Result};

/// Capacity statement: either the sector angle for a class count or the
/// point bound for a fidelity level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CapacityReport {
    SectorAngle { classes: usize, max_angle: f64 },
    MaxPoints { fidelity: f64, max_points: usize },
}

/// Mean same-class / cross-class Gram statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterMetrics {
    pub intra_mean: f64,
    pub inter_mean: f64,
    pub separation_gap: f64,
}

/// Largest sector angle such that `n` non-overlapping sectors fit on the
/// sphere: `2 acos(1 - 2/n)`, the whole sphere for a single class.
pub fn max_sector_angle(n_classes: usize) -> Result<f64> {
    if n_classes == 0 {
        return Err(Error::invalid("max_sector_angle: need at least one class"));
    }
    let arg = (1.0 - 2.0 / n_classes as f64).clamp(-1.0, 1.0);
    Ok(2.0 * arg.acos())
}

/// Maximum embeddable point count at fidelity `f`: `floor(2 / (1 - f))`.
pub fn max_points(f: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&f) {
        return Err(Error::invalid(
            "max_points: fidelity must lie in [0, 1); the bound diverges at 1",
        ));
    }
    Ok((2.0 / (1.0 - f)).floor() as usize)
}

/// Mean off-diagonal same-class entry, mean cross-class entry, and their
/// difference.
pub fn cluster_metrics(g: &GramMatrix, labels: &[ClassLabel]) -> Result<ClusterMetrics> {
    if labels.len() != g.n() {
        return Err(Error::invalid("cluster_metrics: labels do not match Gram order"));
    }
    if !labels.contains(&ClassLabel::A) || !labels.contains(&ClassLabel::B) {
        return Err(Error::invalid("cluster_metrics: need both classes"));
    }
    let (mut intra, mut inter) = ((0.0, 0usize), (0.0, 0usize));
    for i in 0..g.n() {
        for j in 0..g.n() {
            if i == j {
                continue;
            }
            if labels[i] == labels[j] {
                intra = (intra.0 + g.get(i, j), intra.1 + 1);
            } else {
                inter = (inter.0 + g.get(i, j), inter.1 + 1);
            }
        }
    }
    let intra_mean = intra.0 / intra.1.max(1) as f64;
    let inter_mean = inter.0 / inter.1.max(1) as f64;
    Ok(ClusterMetrics {
        intra_mean,
        inter_mean,
        separation_gap: intra_mean - inter_mean,
    })
}

/// Two-cluster assignment by the sign of the leading eigenvector of the
/// double-centered Gram matrix (power iteration; deterministic start).
pub fn spectral_split(g: &GramMatrix) -> Vec<bool> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    // Double centering: C = (I - J/n) G (I - J/n).
    let row_mean: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| g.get(i, j)).sum::<f64>() / n as f64)
        .collect();
    let total: f64 = row_mean.iter().sum::<f64>() / n as f64;
    let c = |i: usize, j: usize| g.get(i, j) - row_mean[i] - row_mean[j] + total;

    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64) * 0.1).collect();
    for _ in 0..500 {
        let mut w = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                w[i] += c(i, j) * v[j];
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-30 {
            break;
        }
        for i in 0..n {
            v[i] = w[i] / norm;
        }
    }
    v.iter().map(|&x| x >= 0.0).collect()
}
