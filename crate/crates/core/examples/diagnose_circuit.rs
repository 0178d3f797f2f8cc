//! Diagnoses the three-gate circuit: both outputs are observed low although
//! the inputs say at least one of them should be high.
//!
//! cargo run --example diagnose_circuit

use localdiag::diagnosis::{diagnose_lazy, minimal_conflict_sets};
use localdiag::{diagnose, diagnose_one, fixtures, Observation};

fn main() {
    let file = fixtures::three_gates();
    let system = file.system();
    let obs = Observation::new(fixtures::observation());

    println!("system description:");
    for f in system.sd() {
        println!("  {f}");
    }
    println!("observation: {}", obs.formula());

    for c in minimal_conflict_sets(&system, &obs) {
        println!("conflict set: {c:?}");
    }
    for d in diagnose(&system, &obs) {
        println!("diagnosis:    {d:?}");
    }
    assert_eq!(diagnose_lazy(&system, &obs), diagnose(&system, &obs));

    let one = diagnose_one(&system, &obs).expect("the circuit is diagnosable");
    println!("one diagnosis by semi-revision: {one:?}");
}
