//! Kernels, incisions and semi-revision on small belief bases.
//!
//! cargo run --example kernels_revision

use std::collections::BTreeSet;

use localdiag::kernels::{a_minimal_incision, enumerate_minimal_incisions};
use localdiag::{compute_kernels, consolidate, semi_revise, BeliefBase, Formula};

fn base(fs: &[&str]) -> BeliefBase {
    fs.iter().map(|s| s.parse::<Formula>().unwrap()).collect()
}

fn main() {
    let b = base(&["p", "p -> q", "r", "r -> q", "s"]);
    let q = Formula::var("q");
    println!("kernels of {b:?} for q:");
    let ks = compute_kernels(&b, &q);
    for k in ks.iter() {
        println!("  {k:?}");
    }

    let preferred: BTreeSet<Formula> = ["p", "r"].iter().map(|s| s.parse().unwrap()).collect();
    for cut in enumerate_minimal_incisions(&ks, &preferred) {
        println!("minimal incision: {cut:?}");
    }
    println!("chosen: {:?}", a_minimal_incision(&ks, &preferred));

    // accept !q, giving up the plain facts before the rules
    let revised = semi_revise(&b, &Formula::not(q), &preferred);
    println!("semi-revised by !q: {revised:?}");

    let messy = base(&["a", "!a", "a -> b", "!b"]);
    println!("consolidated {messy:?}: {:?}", consolidate(&messy, &BTreeSet::new()));
}
