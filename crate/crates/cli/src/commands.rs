//! Subcommand implementations. Every command derives its stage seeds
//! from the master seed as `split_seed(master, [stage_tag(name), ...])`,
//! so two runs with the same configuration produce byte-identical
//! artifacts.

use serde_json::json;

use qembed_core::analysis::{cluster_metrics, max_points, max_sector_angle, CapacityReport};
use qembed_core::compile::{
    atomic_evolution, compile_atomic, compile_waveplates_numeric, compile_waveplates_paper,
    waveplate_stack,
};
use qembed_core::embedding::{
    feature_map, generate_dataset, gram_matrix, BandLayout, ClassLabel, GramMatrix,
    LabeledDataset,
};
use qembed_core::hwsim::{
    bloch_fidelity, gram_from_shots, mc_fidelity_uncertainty, simulate_atomic_tomography,
    simulate_photonic_tomography, ShotModel,
};
use qembed_core::qubit::{axis_rotation, PureQubitState, Unitary2};
use qembed_core::reference::{
    atomic_reference_states, atomic_sequences, benchmark_label, photonic_reference_states,
    photonic_rotations,
};
use qembed_core::report::{gram_to_csv, gram_to_pgm};
use qembed_core::seed::{split_seed, stage_tag};
use qembed_core::training::{evaluate, train, TrainTrace};

use crate::config::Resolved;
use crate::manifest::ManifestBuilder;
use crate::{CliError, GramMode, PlatformArg, TargetSource};

fn stage_seed(master: u64, name: &str) -> u64 {
    split_seed(master, &[stage_tag(name)])
}

fn layout(resolved: &Resolved) -> Result<BandLayout, CliError> {
    BandLayout::equal(resolved.config.dataset.bands).map_err(CliError::from)
}

fn training_set(resolved: &Resolved) -> Result<LabeledDataset, CliError> {
    generate_dataset(
        &layout(resolved)?,
        resolved.config.dataset.n_points,
        stage_seed(resolved.master_seed, "dataset"),
    )
    .map_err(CliError::from)
}

fn validation_set(resolved: &Resolved) -> Result<LabeledDataset, CliError> {
    generate_dataset(
        &layout(resolved)?,
        resolved.config.dataset.validation_points,
        stage_seed(resolved.master_seed, "validation"),
    )
    .map_err(CliError::from)
}

fn run_training(resolved: &Resolved, ds: &LabeledDataset) -> Result<TrainTrace, CliError> {
    let config = resolved.config.train.to_train_config(resolved.master_seed);
    train(ds, &config).map_err(CliError::from)
}

fn trained_states(
    resolved: &Resolved,
) -> Result<(Vec<PureQubitState>, Vec<ClassLabel>), CliError> {
    let ds = training_set(resolved)?;
    let trace = run_training(resolved, &ds)?;
    let val = validation_set(resolved)?;
    let mut states = Vec::with_capacity(val.len());
    let mut labels = Vec::with_capacity(val.len());
    for (v, l) in &val.points {
        states.push(feature_map(*v, &trace.final_params)?);
        labels.push(*l);
    }
    Ok((states, labels))
}

pub fn cmd_dataset(resolved: &Resolved, manifest: &mut ManifestBuilder) -> Result<(), CliError> {
    manifest.start_stage("dataset");
    let ds = training_set(resolved)?;
    let val = validation_set(resolved)?;
    manifest.write_artifact("dataset.csv", ds.to_csv().as_bytes())?;
    manifest.write_artifact("validation.csv", val.to_csv().as_bytes())?;
    println!(
        "wrote dataset.csv ({} points) and validation.csv ({} points)",
        ds.len(),
        val.len()
    );
    Ok(())
}

pub fn cmd_train(resolved: &Resolved, manifest: &mut ManifestBuilder) -> Result<(), CliError> {
    manifest.start_stage("dataset");
    let ds = training_set(resolved)?;
    let val = validation_set(resolved)?;
    manifest.start_stage("train");
    let trace = run_training(resolved, &ds)?;
    manifest.start_stage("persist");
    manifest.write_artifact("trace.json", (trace.to_json() + "\n").as_bytes())?;
    let params = serde_json::to_string_pretty(&trace.final_params).expect("params serialize") + "\n";
    manifest.write_artifact("params.json", params.as_bytes())?;
    let mut curve = String::from("iteration,cost\n");
    for (i, c) in trace.cost_trace.iter().enumerate() {
        curve.push_str(&format!("{i},{c}\n"));
    }
    manifest.write_artifact("cost_curve.csv", curve.as_bytes())?;
    let accuracy = evaluate(&val, &trace.final_params, &ds)?;
    println!(
        "trained {} iterations: cost {:.3} -> {:.3}, validation accuracy {accuracy:.2}",
        resolved.config.train.iterations,
        trace.cost_trace[0],
        trace.cost_trace.last().copied().unwrap_or(f64::NAN),
    );
    Ok(())
}

fn gram_for_mode(
    resolved: &Resolved,
    mode: GramMode,
) -> Result<(GramMatrix, Vec<ClassLabel>), CliError> {
    match mode {
        GramMode::Exact => {
            let (states, labels) = trained_states(resolved)?;
            Ok((gram_matrix(&states)?, labels))
        }
        GramMode::Shots => {
            let (states, labels) = trained_states(resolved)?;
            let shots = ShotModel {
                shots_per_overlap: resolved.config.shots_per_overlap,
                seed: stage_seed(resolved.master_seed, "gram-shots"),
            };
            Ok((gram_from_shots(&states, &shots)?, labels))
        }
        GramMode::Atomic => {
            let states = atomic_reference_states(&resolved.config.atomic_platform)?;
            let labels = (0..states.len()).map(benchmark_label).collect();
            Ok((gram_matrix(&states)?, labels))
        }
        GramMode::Photonic => {
            let states = photonic_reference_states()?;
            let labels = (0..states.len()).map(benchmark_label).collect();
            Ok((gram_matrix(&states)?, labels))
        }
    }
}

pub fn cmd_gram(
    resolved: &Resolved,
    mode: GramMode,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    manifest.start_stage("gram");
    let (gram, labels) = gram_for_mode(resolved, mode)?;
    let metrics = cluster_metrics(&gram, &labels)?;
    manifest.start_stage("persist");
    let tag = mode.tag();
    manifest.write_artifact(&format!("gram_{tag}.csv"), gram_to_csv(&gram).as_bytes())?;
    manifest.write_artifact(&format!("gram_{tag}.pgm"), &gram_to_pgm(&gram)?)?;
    let metrics_json = serde_json::to_string_pretty(&metrics).expect("metrics serialize") + "\n";
    manifest.write_artifact(&format!("cluster_metrics_{tag}.json"), metrics_json.as_bytes())?;
    println!(
        "gram mode {tag}: {} states, intra {:.3}, inter {:.3}, separation gap {:.3}",
        gram.n(),
        metrics.intra_mean,
        metrics.inter_mean,
        metrics.separation_gap
    );
    Ok(())
}

/// A special-unitary completion sending `|0>` to `state` (second column
/// fixed by orthonormality).
fn state_preparation_unitary(state: &PureQubitState) -> Unitary2 {
    Unitary2::new([
        [state.amp0, -state.amp1.conj()],
        [state.amp1, state.amp0.conj()],
    ])
    .expect("completion of a normalized state is unitary")
}

fn compile_targets(
    resolved: &Resolved,
    source: TargetSource,
) -> Result<Vec<PureQubitState>, CliError> {
    match source {
        TargetSource::Trained => Ok(trained_states(resolved)?.0),
        TargetSource::Reference => Ok(photonic_reference_states()?),
    }
}

pub fn cmd_compile(
    resolved: &Resolved,
    backend: PlatformArg,
    source: TargetSource,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    manifest.start_stage("compile");
    match backend {
        PlatformArg::Atomic => {
            let targets = compile_targets(resolved, source)?;
            let mut records = Vec::new();
            let mut worst: f64 = 0.0;
            for (i, target) in targets.iter().enumerate() {
                let seq = compile_atomic(target, &resolved.config.atomic_platform)?;
                worst = worst.max(seq.achieved_infidelity);
                let mut value = seq.to_json_value();
                value["index"] = json!(i);
                records.push(value);
            }
            manifest.start_stage("persist");
            let text =
                serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
            manifest.write_artifact("pulses_atomic.json", text.as_bytes())?;
            println!(
                "compiled {} atomic sequences, worst infidelity {worst:.2e}",
                records.len()
            );
        }
        PlatformArg::Photonic => {
            // Reference targets are rotations with published axes, so the
            // closed-form compiler is tried first; trained states go
            // through the numeric compiler on a state-preparation unitary.
            let mut records = Vec::new();
            let mut fallbacks = 0usize;
            match source {
                TargetSource::Reference => {
                    for (i, rot) in photonic_rotations().iter().enumerate() {
                        let (setting, compiler) = match compile_waveplates_paper(rot) {
                            Ok(s) if !s.flagged => (s, "closed-form"),
                            _ => {
                                fallbacks += 1;
                                (
                                    compile_waveplates_numeric(&axis_rotation(rot)?)?,
                                    "numeric",
                                )
                            }
                        };
                        let mut value = setting.to_json_value();
                        value["index"] = json!(i);
                        value["compiler"] = json!(compiler);
                        records.push(value);
                    }
                }
                TargetSource::Trained => {
                    for (i, state) in trained_states(resolved)?.0.iter().enumerate() {
                        let target = state_preparation_unitary(state);
                        let setting = compile_waveplates_numeric(&target)?;
                        let realized = waveplate_stack(&setting)?.apply(&PureQubitState::ket0());
                        let mut value = setting.to_json_value();
                        value["index"] = json!(i);
                        value["compiler"] = json!("numeric");
                        value["state_infidelity"] =
                            json!(1.0 - qembed_core::qubit::fidelity(state, &realized));
                        records.push(value);
                    }
                }
            }
            manifest.start_stage("persist");
            let text =
                serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
            manifest.write_artifact("plates_photonic.json", text.as_bytes())?;
            if fallbacks > 0 {
                println!(
                    "compiled {} plate settings ({fallbacks} via numeric fallback)",
                    records.len()
                );
            } else {
                println!("compiled {} plate settings", records.len());
            }
        }
    }
    Ok(())
}

pub fn cmd_simulate(
    resolved: &Resolved,
    platform: PlatformArg,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    manifest.start_stage("simulate");
    match platform {
        PlatformArg::Atomic => {
            let spec = &resolved.config.atomic_platform;
            let mut records = Vec::new();
            let mut fidelity_sum = 0.0;
            for (i, seq) in atomic_sequences().iter().enumerate() {
                let seed = split_seed(
                    resolved.master_seed,
                    &[stage_tag("simulate-atomic"), i as u64],
                );
                let rec =
                    simulate_atomic_tomography(seq, spec, &resolved.config.atomic_noise, seed)?;
                let ideal = atomic_evolution(seq, spec)?;
                let fid = bloch_fidelity(&rec.bloch, &ideal)?;
                fidelity_sum += fid;
                let mut value = serde_json::to_value(&rec).expect("record serializes");
                value["index"] = json!(i);
                value["fidelity_vs_noiseless"] = json!(fid);
                records.push(value);
            }
            manifest.start_stage("persist");
            let text =
                serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
            manifest.write_artifact("tomography_atomic.json", text.as_bytes())?;
            println!(
                "simulated {} atomic tomographies, mean fidelity {:.4}",
                records.len(),
                fidelity_sum / records.len() as f64
            );
        }
        PlatformArg::Photonic => {
            let mut records = Vec::new();
            let mut fidelity_sum = 0.0;
            for (i, rot) in photonic_rotations().iter().enumerate() {
                let seed = split_seed(
                    resolved.master_seed,
                    &[stage_tag("simulate-photonic"), i as u64],
                );
                let rec = simulate_photonic_tomography(rot, &resolved.config.photonic_noise, seed)?;
                let ideal = axis_rotation(rot)?.apply(&PureQubitState::ket0());
                let fid = bloch_fidelity(&rec.bloch, &ideal)?;
                fidelity_sum += fid;
                let mut value = serde_json::to_value(&rec).expect("record serializes");
                value["index"] = json!(i);
                value["fidelity_vs_noiseless"] = json!(fid);
                if resolved.config.photonic_noise.total_counts > 0 {
                    let (mean, std) = mc_fidelity_uncertainty(
                        &rec,
                        &ideal,
                        300,
                        split_seed(seed, &[stage_tag("bootstrap-cmd")]),
                    )?;
                    value["bootstrap_fidelity"] = json!({ "mean": mean, "std": std });
                }
                records.push(value);
            }
            manifest.start_stage("persist");
            let text =
                serde_json::to_string_pretty(&records).expect("records serialize") + "\n";
            manifest.write_artifact("tomography_photonic.json", text.as_bytes())?;
            println!(
                "simulated {} photonic tomographies, mean fidelity {:.4}",
                records.len(),
                fidelity_sum / records.len() as f64
            );
        }
    }
    Ok(())
}

pub fn cmd_capacity(
    fidelity: Option<f64>,
    classes: Option<usize>,
    manifest: &mut ManifestBuilder,
) -> Result<(), CliError> {
    manifest.start_stage("capacity");
    let report = match (fidelity, classes) {
        (Some(f), None) => CapacityReport::MaxPoints {
            fidelity: f,
            max_points: max_points(f)?,
        },
        (None, Some(n)) => CapacityReport::SectorAngle {
            classes: n,
            max_angle: max_sector_angle(n)?,
        },
        _ => {
            return Err(CliError::Validation(
                "capacity needs exactly one of --fidelity or --classes".into(),
            ))
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    manifest.write_artifact("capacity.json", text.as_bytes())?;
    match report {
        CapacityReport::MaxPoints { fidelity, max_points } => {
            println!("max_points(F = {fidelity}) = {max_points}")
        }
        CapacityReport::SectorAngle { classes, max_angle } => {
            println!("max_sector_angle(N = {classes}) = {max_angle:.12} rad")
        }
    }
    Ok(())
}
