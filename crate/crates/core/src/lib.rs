//! Consistency-based diagnosis through kernel semi-revision, with an optional
//! focusing step that restricts the search to the part of the system an
//! observation is related to.
//!
//! * [`logic`]: formulas, belief bases, satisfiability and entailment.
//! * [`kernels`]: kernels, `A`-minimal incisions, semi-revision, consolidation.
//! * [`diagnosis`]: conflict sets, minimal hitting sets, diagnoses.
//! * [`locality`]: relatedness graphs, anytime retrieval, compartments.
//! * [`cli`]: the system file format and the commands of the `localdiag` binary.
//!
//! The runnable programs under `examples/` walk through each of these.

pub mod cli;
pub mod diagnosis;
pub mod fixtures;
pub mod gen;
pub mod hitting;
pub mod kernels;
pub mod locality;
pub mod logic;

pub use diagnosis::{diagnose, diagnose_one, ConflictSet, Diagnosis, DiagnosisError, Observation, System};
pub use kernels::{compute_kernels, consolidate, semi_revise, Incision, Kernel, KernelCollection};
pub use locality::{local_diagnose, retrieve, RelatednessGraph, RetrievalBudget};
pub use logic::{entails, is_satisfiable, parse_formula, Atom, BeliefBase, Formula, Prover};
