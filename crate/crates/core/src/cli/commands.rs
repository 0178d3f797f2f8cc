use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use super::report::{atom_list, conflict_lists, diagnosis_lists, formula_list, BenchReport, RunReport};
use super::sysfile::{FileError, SystemFile};
use crate::diagnosis::{self, DiagnosisError, Observation};
use crate::kernels::{compute_kernels_with, semi_revise_with};
use crate::locality::{self, RelatednessGraph, Retrieval, RetrievalBudget};
use crate::logic::{Formula, Prover};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const NOT_DIAGNOSABLE: i32 = 3;
    pub const NO_GRAPH: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    File(#[from] FileError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    NotDiagnosable(#[from] DiagnosisError),
    #[error("local mode needs a [COMPONENTS] or [GRAPH] section")]
    NoGraph,
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::File(_) | CommandError::Input(_) => exit::PARSE,
            CommandError::NotDiagnosable(_) => exit::NOT_DIAGNOSABLE,
            CommandError::NoGraph => exit::NO_GRAPH,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Focus {
    pub budget: RetrievalBudget,
    /// Soft wall-clock limit, checked before each newly marked atom.
    pub timeout: Option<Duration>,
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn graph_of(file: &SystemFile) -> Result<RelatednessGraph, CommandError> {
    file.graph()?.ok_or(CommandError::NoGraph)
}

fn run_retrieval(file: &SystemFile, obs: &Observation, focus: &Focus) -> Result<Retrieval, CommandError> {
    let graph = graph_of(file)?;
    let system = file.system();
    let deadline = focus.timeout.map(|t| Instant::now() + t);
    Ok(locality::retrieve_until(
        obs,
        system.ass(),
        &graph,
        focus.budget,
        |_| deadline.is_some_and(|d| Instant::now() >= d),
    ))
}

fn global_report(file: &SystemFile, obs: &Observation) -> Result<RunReport, CommandError> {
    let start = Instant::now();
    let system = file.system();
    let prover = Prover::new();
    if !diagnosis::diagnosable_with(&prover, &system, obs) {
        return Err(DiagnosisError::NotDiagnosable.into());
    }
    let run = diagnosis::run_with(&prover, &system, obs);
    let total = system.base().with(obs.formula().clone()).len();
    Ok(RunReport {
        diagnoses: diagnosis_lists(&run.diagnoses),
        conflict_sets: conflict_lists(&run.conflicts),
        compartment_size: total,
        total_formulas: total,
        entailment_calls: prover.calls(),
        elapsed_ms: elapsed_ms(start),
        ..RunReport::default()
    })
}

fn local_report(file: &SystemFile, obs: &Observation, focus: &Focus) -> Result<RunReport, CommandError> {
    let start = Instant::now();
    let retrieval = run_retrieval(file, obs, focus)?;
    let prover = Prover::new();
    let local = locality::local_diagnose_from(&prover, &file.system(), obs, retrieval)?;
    Ok(RunReport {
        diagnoses: diagnosis_lists(&local.diagnoses),
        conflict_sets: conflict_lists(&local.conflicts),
        relevant: atom_list(&local.retrieval.relevant),
        compartment_size: local.compartment_size(),
        total_formulas: local.total_formulas,
        entailment_calls: local.entailment_calls,
        elapsed_ms: elapsed_ms(start),
        budget_exhausted: local.budget_exhausted(),
        ..RunReport::default()
    })
}

/// Diagnoses the whole system, or only the retrieved compartment when `local`.
pub fn cmd_diagnose(file: &SystemFile, obs: &Formula, local: bool, focus: &Focus) -> Result<RunReport, CommandError> {
    let obs = Observation::new(obs.clone());
    if local {
        local_report(file, &obs, focus)
    } else {
        global_report(file, &obs)
    }
}

/// Minimal conflict sets of the whole system.
pub fn cmd_conflicts(file: &SystemFile, obs: &Formula) -> RunReport {
    let start = Instant::now();
    let system = file.system();
    let obs = Observation::new(obs.clone());
    let prover = Prover::new();
    let conflicts = diagnosis::minimal_conflict_sets_with(&prover, &system, &obs);
    let total = system.base().with(obs.formula().clone()).len();
    RunReport {
        conflict_sets: conflict_lists(&conflicts),
        compartment_size: total,
        total_formulas: total,
        entailment_calls: prover.calls(),
        elapsed_ms: elapsed_ms(start),
        ..RunReport::default()
    }
}

/// Kernels of `sd ∪ ass` (plus the observation, if given) for `target`.
pub fn cmd_kernels(file: &SystemFile, target: &Formula, obs: Option<&Formula>) -> RunReport {
    let start = Instant::now();
    let mut base = file.system().base();
    if let Some(o) = obs {
        base.insert(o.clone());
    }
    let prover = Prover::new();
    let kernels = compute_kernels_with(&prover, &base, target);
    RunReport {
        kernels: Some(kernels.iter().map(|k| formula_list(k.members())).collect()),
        compartment_size: base.len(),
        total_formulas: base.len(),
        entailment_calls: prover.calls(),
        elapsed_ms: elapsed_ms(start),
        ..RunReport::default()
    }
}

/// The compartment retrieved for the observation.
pub fn cmd_compartment(file: &SystemFile, obs: &Formula, focus: &Focus) -> Result<RunReport, CommandError> {
    let start = Instant::now();
    let obs = Observation::new(obs.clone());
    let retrieval = run_retrieval(file, &obs, focus)?;
    let system = file.system();
    let comp =
        locality::compartment(&obs, &system, &retrieval.relevant).map_err(|e| CommandError::Input(e.to_string()))?;
    Ok(RunReport {
        relevant: atom_list(&retrieval.relevant),
        compartment_size: comp.len(),
        total_formulas: system.base().with(obs.formula().clone()).len(),
        elapsed_ms: elapsed_ms(start),
        budget_exhausted: retrieval.budget_exhausted,
        base: Some(formula_list(comp.formulas())),
        ..RunReport::default()
    })
}

/// Semi-revises `sd ∪ ass` by `input`, preferring to give up the assumables
/// and any `extra_preferred` formulas.
pub fn cmd_revise(file: &SystemFile, input: &Formula, extra_preferred: &[Formula]) -> RunReport {
    let start = Instant::now();
    let system = file.system();
    let base = system.base();
    let mut preferred: BTreeSet<Formula> = system.assumable_formulas();
    preferred.extend(extra_preferred.iter().cloned());
    let prover = Prover::new();
    let revised = semi_revise_with(&prover, &base, input, &preferred);
    let total = base.with(input.clone()).len();
    RunReport {
        base: Some(formula_list(&revised)),
        compartment_size: total,
        total_formulas: total,
        entailment_calls: prover.calls(),
        elapsed_ms: elapsed_ms(start),
        ..RunReport::default()
    }
}

/// Runs global and unbounded local diagnosis on the same input.
pub fn cmd_bench(file: &SystemFile, obs: &Formula) -> Result<BenchReport, CommandError> {
    if !file.has_graph_data() {
        return Err(CommandError::NoGraph);
    }
    let obs = Observation::new(obs.clone());
    let global = global_report(file, &obs)?;
    let local = local_report(file, &obs, &Focus::default())?;
    let identical = global.diagnoses == local.diagnoses;
    Ok(BenchReport {
        global,
        local,
        identical,
    })
}
