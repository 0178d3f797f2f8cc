//! Local versus global diagnosis on the eleven-gate circuit. Only the
//! components related to the observed signals end up in the compartment.
//!
//! cargo run --example local_focus

use localdiag::diagnosis::diagnose_with;
use localdiag::locality::{local_diagnose_from, retrieve};
use localdiag::{fixtures, Observation, Prover, RetrievalBudget};

fn main() {
    let file = fixtures::eleven_gates();
    let system = file.system();
    let graph = file.graph().unwrap().expect("fixture has components");
    let obs = Observation::new(fixtures::observation());

    let global = Prover::new();
    let global_ds = diagnose_with(&global, &system, &obs);

    let local = Prover::new();
    let retrieval = retrieve(&obs, system.ass(), &graph, RetrievalBudget::unbounded());
    let run = local_diagnose_from(&local, &system, &obs, retrieval).expect("diagnosable");

    let relevant: Vec<String> = run.retrieval.relevant.iter().map(|a| a.to_string()).collect();
    println!("relevant: {}", relevant.join(" "));
    println!(
        "compartment ({} of {} formulas):",
        run.compartment_size(),
        run.total_formulas
    );
    for f in run.compartment.ordered() {
        println!("  {f}");
    }
    println!(
        "local diagnoses:  {:?} ({} entailment calls)",
        run.diagnoses,
        local.calls()
    );
    println!(
        "global diagnoses: {:?} ({} entailment calls)",
        global_ds,
        global.calls()
    );
}
