//! The hitting-set DAG driven by a lazy conflict oracle. The oracle here
//! deliberately hands out a non-minimal conflict first, so the DAG has to
//! prune and relabel.
//!
//! cargo run --example hs_dag

use std::collections::BTreeSet;

use localdiag::hitting::{minimal_hitting_sets, HsDag, NodeLabel};

fn main() {
    let family: Vec<BTreeSet<&str>> = vec![
        ["a", "b", "c"].into(),
        ["a", "b"].into(),
        ["b", "d"].into(),
        ["c", "d"].into(),
    ];
    let dag = HsDag::build(|excluded: &BTreeSet<&str>| family.iter().find(|c| c.is_disjoint(excluded)).cloned());
    for (id, node) in dag.nodes().iter().enumerate() {
        let label = match &node.label {
            NodeLabel::Conflict(c) => format!("{c:?}"),
            NodeLabel::Check => "✓".to_string(),
            NodeLabel::Unlabeled => "-".to_string(),
        };
        println!("node {id:>2} {:?} path {:?} label {label}", node.status, node.path);
    }
    println!("oracle calls: {}", dag.oracle_calls());
    println!("hitting sets: {:?}", dag.hitting_sets());
    assert_eq!(dag.hitting_sets(), minimal_hitting_sets(&family));
}
