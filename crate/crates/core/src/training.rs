//! Adam training of the embedding angles and the mean-fidelity
//! classifier used to validate the result.
//!
//! Gradients are central finite differences with step `1e-5`; every run
//! is bitwise deterministic given its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::embedding::{cost, feature_map, ClassLabel, EmbeddingParams, LabeledDataset};
use crate::error::{Error, Result};
use crate::qubit::{fidelity, PureQubitState};
use crate::seed::{split_seed, stage_tag};

const FD_STEP: f64 = 1e-5;

/// Optimizer configuration. `batch_size` is the number of points drawn
/// per class per iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub iterations: usize,
    pub batch_size: usize,
    pub seed: u64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            iterations: 200,
            batch_size: 25,
            seed: 17,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(Error::invalid("learning_rate must be positive"));
        }
        if self.iterations < 1 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        if self.batch_size < 2 {
            return Err(Error::invalid("batch_size must be at least 2"));
        }
        if !(self.beta1 > 0.0 && self.beta1 < 1.0 && self.beta2 > 0.0 && self.beta2 < 1.0) {
            return Err(Error::invalid("adam betas must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Record of one training run; `cost_trace` includes the initial cost,
/// so its length is `iterations + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainTrace {
    pub seed: u64,
    pub config: TrainConfig,
    pub initial_params: EmbeddingParams,
    pub cost_trace: Vec<f64>,
    pub final_params: EmbeddingParams,
}

impl TrainTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad trace JSON: {e}")))
    }
}

/// Central finite-difference gradient of the cost at `params`, step 1e-5.
pub fn cost_gradient(batch: &[(f64, ClassLabel)], params: &EmbeddingParams) -> Result<[f64; 3]> {
    cost_gradient_with_step(batch, params, FD_STEP)
}

/// Same as [`cost_gradient`] with an explicit step (used by the
/// Richardson consistency checks).
pub fn cost_gradient_with_step(
    batch: &[(f64, ClassLabel)],
    params: &EmbeddingParams,
    h: f64,
) -> Result<[f64; 3]> {
    let base = params.as_array();
    let mut g = [0.0; 3];
    for k in 0..3 {
        let mut plus = base;
        let mut minus = base;
        plus[k] += h;
        minus[k] -= h;
        let cp = cost(batch, &EmbeddingParams::from_array(plus))?;
        let cm = cost(batch, &EmbeddingParams::from_array(minus))?;
        g[k] = (cp - cm) / (2.0 * h);
    }
    Ok(g)
}

/// Draws a class-balanced batch without replacement, deterministically
/// from `(seed, iteration)`.
fn sample_batch(
    dataset: &LabeledDataset,
    per_class: usize,
    seed: u64,
    iteration: u64,
) -> Vec<(f64, ClassLabel)> {
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(seed, &[stage_tag("batch"), iteration]));
    let mut batch = Vec::with_capacity(2 * per_class);
    for label in [ClassLabel::A, ClassLabel::B] {
        let pool = dataset.values_of(label);
        let take = per_class.min(pool.len());
        let mut idx: Vec<usize> = (0..pool.len()).collect();
        idx.shuffle(&mut rng);
        for &i in idx.iter().take(take) {
            batch.push((pool[i], label));
        }
    }
    batch
}

/// Runs Adam for `config.iterations` steps from a seeded uniform initial
/// point in `(-pi, pi]^3`. The cost trace is evaluated on a fixed seeded
/// batch so successive entries are comparable.
pub fn train(dataset: &LabeledDataset, config: &TrainConfig) -> Result<TrainTrace> {
    config.validate()?;
    if dataset.is_empty() {
        return Err(Error::invalid("train: empty dataset"));
    }
    let pi = std::f64::consts::PI;
    let mut init_rng =
        ChaCha8Rng::seed_from_u64(split_seed(config.seed, &[stage_tag("init")]));
    let mut theta = [0.0; 3];
    for t in &mut theta {
        *t = init_rng.gen_range(-pi..=pi);
    }
    let initial_params = EmbeddingParams::from_array(theta);

    let eval_batch = sample_batch(dataset, config.batch_size, config.seed, u64::MAX);
    let mut cost_trace = Vec::with_capacity(config.iterations + 1);
    cost_trace.push(cost(&eval_batch, &EmbeddingParams::from_array(theta))?);

    let mut m = [0.0; 3];
    let mut v = [0.0; 3];
    for it in 1..=config.iterations {
        let batch = sample_batch(dataset, config.batch_size, config.seed, it as u64);
        let g = cost_gradient(&batch, &EmbeddingParams::from_array(theta))?;
        for k in 0..3 {
            m[k] = config.beta1 * m[k] + (1.0 - config.beta1) * g[k];
            v[k] = config.beta2 * v[k] + (1.0 - config.beta2) * g[k] * g[k];
            let m_hat = m[k] / (1.0 - config.beta1.powi(it as i32));
            let v_hat = v[k] / (1.0 - config.beta2.powi(it as i32));
            theta[k] -= config.learning_rate * m_hat / (v_hat.sqrt() + config.epsilon);
        }
        cost_trace.push(cost(&eval_batch, &EmbeddingParams::from_array(theta))?);
    }

    Ok(TrainTrace {
        seed: config.seed,
        config: *config,
        initial_params,
        cost_trace,
        final_params: EmbeddingParams::from_array(theta),
    })
}

/// Outcome of a classification, with the tie flag for the degenerate
/// equal-fidelity case (broken toward class A).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub label: ClassLabel,
    pub tie: bool,
}

/// Assigns to the class whose embedded training states have the larger
/// mean fidelity with `target`.
pub fn classify_state(
    target: &PureQubitState,
    class_a: &[PureQubitState],
    class_b: &[PureQubitState],
) -> Result<Classification> {
    if class_a.is_empty() || class_b.is_empty() {
        return Err(Error::invalid("classify: both classes need training states"));
    }
    let mean = |states: &[PureQubitState]| {
        states.iter().map(|s| fidelity(target, s)).sum::<f64>() / states.len() as f64
    };
    let (fa, fb) = (mean(class_a), mean(class_b));
    if fa >= fb {
        Ok(Classification {
            label: ClassLabel::A,
            tie: fa == fb,
        })
    } else {
        Ok(Classification {
            label: ClassLabel::B,
            tie: false,
        })
    }
}

/// Classifies the scalar `x` against the embedded training set.
pub fn classify(
    x: f64,
    params: &EmbeddingParams,
    training_set: &LabeledDataset,
) -> Result<Classification> {
    let target = feature_map(x, params)?;
    let embed = |label| -> Result<Vec<PureQubitState>> {
        training_set
            .values_of(label)
            .iter()
            .map(|v| feature_map(*v, params))
            .collect()
    };
    classify_state(&target, &embed(ClassLabel::A)?, &embed(ClassLabel::B)?)
}

/// Fraction of correctly classified test points.
pub fn evaluate(
    test_set: &LabeledDataset,
    params: &EmbeddingParams,
    training_set: &LabeledDataset,
) -> Result<f64> {
    if test_set.is_empty() {
        return Err(Error::invalid("evaluate: empty test set"));
    }
    let mut correct = 0usize;
    for (v, label) in &test_set.points {
        if classify(*v, params, training_set)?.label == *label {
            correct += 1;
        }
    }
    Ok(correct as f64 / test_set.len() as f64)
}
