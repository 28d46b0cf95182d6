//! The trainable feature map, the two-class overlap cost, Gram matrices
//! and the synthetic banded dataset.
//!
//! A scalar input `x` is embedded by the gate sequence
//! `{Rx(x), Rz(t1), Rx(x), Rz(t2), Rx(x), Rz(t3), Rx(x)}` applied, first
//! gate first, to the input-independent state `SH|0>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::{fidelity, init_state, rot_x, rot_z, sh_gate, PureQubitState, Unitary2};

/// The three trainable rotation angles of the feature map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingParams {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl EmbeddingParams {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        if ![theta1, theta2, theta3].iter().all(|t| t.is_finite()) {
            return Err(Error::invalid("embedding params must be finite"));
        }
        Ok(Self { theta1, theta2, theta3 })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.theta1, self.theta2, self.theta3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self { theta1: a[0], theta2: a[1], theta3: a[2] }
    }

    /// Angles folded into the canonical reporting range `(-pi, pi]`.
    pub fn canonical(&self) -> Self {
        let fold = |t: f64| {
            let two_pi = 2.0 * std::f64::consts::PI;
            let mut r = t.rem_euclid(two_pi);
            if r > std::f64::consts::PI {
                r -= two_pi;
            }
            r
        };
        Self {
            theta1: fold(self.theta1),
            theta2: fold(self.theta2),
            theta3: fold(self.theta3),
        }
    }
}

/// Two-class labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    A,
    B,
}

impl ClassLabel {
    pub fn flipped(&self) -> Self {
        match self {
            ClassLabel::A => ClassLabel::B,
            ClassLabel::B => ClassLabel::A,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassLabel::A => "A",
            ClassLabel::B => "B",
        }
    }
}

impl std::str::FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" => Ok(ClassLabel::A),
            "B" => Ok(ClassLabel::B),
            other => Err(Error::invalid(format!("unknown class label {other:?}"))),
        }
    }
}

/// A labeled scalar dataset on `[-pi, pi]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub points: Vec<(f64, ClassLabel)>,
}

impl LabeledDataset {
    /// Validates range and the one-point-per-class requirement.
    pub fn new(points: Vec<(f64, ClassLabel)>) -> Result<Self> {
        if points
            .iter()
            .any(|(v, _)| !v.is_finite() || *v < -std::f64::consts::PI || *v > std::f64::consts::PI)
        {
            return Err(Error::invalid("dataset values must lie in [-pi, pi]"));
        }
        let has = |l| points.iter().any(|(_, lab)| *lab == l);
        if !has(ClassLabel::A) || !has(ClassLabel::B) {
            return Err(Error::invalid("dataset needs at least one point per class"));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values_of(&self, label: ClassLabel) -> Vec<f64> {
        self.points
            .iter()
            .filter(|(_, l)| *l == label)
            .map(|(v, _)| *v)
            .collect()
    }

    /// CSV with header `value,label`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,label\n");
        for (v, l) in &self.points {
            out.push_str(&format!("{v},{}\n", l.as_str()));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some(h) if h.trim() == "value,label" => {}
            _ => return Err(Error::invalid("dataset CSV must start with 'value,label'")),
        }
        let mut points = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (v, l) = line
                .split_once(',')
                .ok_or_else(|| Error::invalid(format!("line {}: expected value,label", i + 2)))?;
            let value: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("line {}: bad value {v:?}", i + 2)))?;
            points.push((value, l.trim().parse()?));
        }
        Self::new(points)
    }
}

/// Alternating band layout on `[-pi, pi]`: class A on odd-numbered bands,
/// class B on even-numbered ones, so no single threshold separates them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandLayout {
    /// Strictly increasing band edges spanning `[-pi, pi]`.
    pub edges: Vec<f64>,
}

impl BandLayout {
    pub fn new(edges: Vec<f64>) -> Result<Self> {
        if edges.len() < 3 {
            return Err(Error::invalid("band layout needs at least 2 bands"));
        }
        if edges.windows(2).any(|w| w[1] - w[0] < 1e-9)
            || edges
                .iter()
                .any(|e| !e.is_finite() || e.abs() > std::f64::consts::PI + 1e-12)
        {
            return Err(Error::invalid("band edges must strictly increase within [-pi, pi]"));
        }
        Ok(Self { edges })
    }

    /// `count` equal-width bands covering `[-pi, pi]`.
    pub fn equal(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::invalid("band layout needs at least 2 bands"));
        }
        let pi = std::f64::consts::PI;
        let edges = (0..=count)
            .map(|k| -pi + 2.0 * pi * k as f64 / count as f64)
            .collect();
        Self::new(edges)
    }

    pub fn band_count(&self) -> usize {
        self.edges.len() - 1
    }

    fn label_of_band(band: usize) -> ClassLabel {
        if band % 2 == 0 {
            ClassLabel::A
        } else {
            ClassLabel::B
        }
    }
}

impl Default for BandLayout {
    fn default() -> Self {
        Self::equal(4).expect("4 bands are valid")
    }
}

/// Embeds `x` through the parameterized rotation circuit.
pub fn feature_map(x: f64, params: &EmbeddingParams) -> Result<PureQubitState> {
    if !x.is_finite() {
        return Err(Error::invalid("feature_map: non-finite input"));
    }
    let rx = rot_x(x)?;
    let mut s = init_state();
    s = rx.apply(&s);
    for theta in [params.theta1, params.theta2, params.theta3] {
        s = rot_z(theta)?.apply(&s);
        s = rx.apply(&s);
    }
    Ok(s)
}

/// The full embedding as a single unitary, `U |0> = feature_map(x)`.
pub fn embedding_unitary(x: f64, params: &EmbeddingParams) -> Result<Unitary2> {
    if !x.is_finite() {
        return Err(Error::invalid("embedding_unitary: non-finite input"));
    }
    let rx = rot_x(x)?;
    let mut u = rx.mul(&sh_gate());
    for theta in [params.theta1, params.theta2, params.theta3] {
        u = rot_z(theta)?.mul(&u);
        u = rx.mul(&u);
    }
    Ok(u)
}

/// An `n x n` matrix of pairwise squared overlaps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    /// Row-major entries, `entries[i][j] = |<i|j>|^2` (or its estimate).
    pub entries: Vec<Vec<f64>>,
    /// Identifiers of the states behind each row/column, in order.
    pub ordering: Vec<String>,
}

impl GramMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }
}

/// Exact Gram matrix of squared overlaps for a list of states.
pub fn gram_matrix(states: &[PureQubitState]) -> Result<GramMatrix> {
    if states.is_empty() {
        return Err(Error::invalid("gram_matrix: empty state list"));
    }
    let n = states.len();
    let mut entries = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = fidelity(&states[i], &states[j]);
        }
    }
    Ok(GramMatrix {
        entries,
        ordering: (0..n).map(|i| format!("state-{i}")).collect(),
    })
}

/// The two-class overlap cost
/// `C = 1 - (S_AA + S_BB)/2 + S_AB`,
/// where each intra-class sum runs over all ordered pairs including the
/// diagonal self-overlap terms.
pub fn cost(batch: &[(f64, ClassLabel)], params: &EmbeddingParams) -> Result<f64> {
    let has = |l| batch.iter().any(|(_, lab)| *lab == l);
    if !has(ClassLabel::A) || !has(ClassLabel::B) {
        return Err(Error::invalid("cost: batch must contain both classes"));
    }
    let mut a_states = Vec::new();
    let mut b_states = Vec::new();
    for (v, l) in batch {
        let s = feature_map(*v, params)?;
        match l {
            ClassLabel::A => a_states.push(s),
            ClassLabel::B => b_states.push(s),
        }
    }
    let pair_sum = |xs: &[PureQubitState], ys: &[PureQubitState]| -> f64 {
        let mut acc = 0.0;
        for x in xs {
            for y in ys {
                acc += fidelity(x, y);
            }
        }
        acc
    };
    Ok(1.0 - 0.5 * (pair_sum(&a_states, &a_states) + pair_sum(&b_states, &b_states))
        + pair_sum(&a_states, &b_states))
}

/// Draws a seeded dataset from the band layout: each point lands in a
/// uniformly chosen band, uniformly within it, labeled by band parity.
///
/// If a draw happens to miss a class entirely the whole set is redrawn
/// from the same RNG stream until both labels are present.
pub fn generate_dataset(layout: &BandLayout, n_points: usize, seed: u64) -> Result<LabeledDataset> {
    if n_points < 2 {
        return Err(Error::invalid("generate_dataset: need at least 2 points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..1000 {
        let mut points = Vec::with_capacity(n_points);
        for _ in 0..n_points {
            let band = rng.gen_range(0..layout.band_count());
            let lo = layout.edges[band];
            let hi = layout.edges[band + 1];
            let v = rng.gen_range(lo..hi);
            points.push((v, BandLayout::label_of_band(band)));
        }
        if let Ok(ds) = LabeledDataset::new(points) {
            return Ok(ds);
        }
    }
    Err(Error::Numerical(
        "generate_dataset: could not draw both classes".into(),
    ))
}
