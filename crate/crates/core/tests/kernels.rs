mod common;

use std::collections::BTreeSet;

use common::{
    brute_incisions, brute_kernels, formulas, incision_clauses_hold, random_base, tt_entails, tt_satisfiable,
};
use localdiag::fixtures;
use localdiag::kernels::{
    a_minimal_incision, compute_kernels, consolidate, enumerate_minimal_incisions, semi_revise, shrink_to_kernel,
    KernelCollection,
};
use localdiag::logic::{BeliefBase, Formula};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CIRCUIT_KERNEL: [&str; 5] = ["!C & !F", "!C & okY -> E", "(D | E) & okZ -> F", "okY", "okZ"];

fn circuit_base() -> BeliefBase {
    fixtures::three_gates().system().base().with(fixtures::observation())
}

fn kernel_sets(ks: &KernelCollection) -> BTreeSet<BTreeSet<Formula>> {
    ks.iter().map(|k| k.members().clone()).collect()
}

#[test]
fn circuit_has_exactly_one_inconsistent_kernel() {
    let base = circuit_base();
    let expected = BTreeSet::from([formulas(&CIRCUIT_KERNEL)]);
    // oracle: all 1024 subsets, truth tables
    assert_eq!(brute_kernels(&base, &Formula::Falsum), expected);
    assert_eq!(kernel_sets(&compute_kernels(&base, &Formula::Falsum)), expected);
}

#[test]
fn shrinking_the_whole_circuit_gives_its_kernel() {
    let k = shrink_to_kernel(&circuit_base(), &Formula::Falsum).unwrap();
    assert_eq!(k.members(), &formulas(&CIRCUIT_KERNEL));
}

#[test]
fn circuit_incision_prefers_assumables() {
    let ks = compute_kernels(&circuit_base(), &Formula::Falsum);
    let ass = formulas(&["okX", "okY", "okZ"]);
    let kernels: Vec<BTreeSet<Formula>> = ks.iter().map(|k| k.members().clone()).collect();

    // both singletons satisfy every incision clause and are minimal
    for single in [formulas(&["okY"]), formulas(&["okZ"])] {
        assert!(incision_clauses_hold(&kernels, &ass, &single));
        assert!(single.iter().all(|f| {
            let less: BTreeSet<Formula> = single.iter().filter(|g| *g != f).cloned().collect();
            !incision_clauses_hold(&kernels, &ass, &less)
        }));
    }
    assert_eq!(a_minimal_incision(&ks, &ass).selected(), &formulas(&["okY"]));

    let all: BTreeSet<BTreeSet<Formula>> = enumerate_minimal_incisions(&ks, &ass)
        .into_iter()
        .map(|i| i.into_set())
        .collect();
    assert_eq!(all, BTreeSet::from([formulas(&["okY"]), formulas(&["okZ"])]));
    assert_eq!(all, brute_incisions(&kernels, &ass));
}

#[test]
fn overlapping_kernels_incisions_match_brute_force() {
    let kernels = vec![formulas(&["a", "b"]), formulas(&["b", "c"])];
    let pref = formulas(&["a", "b", "c"]);
    let expected = brute_incisions(&kernels, &pref);
    assert_eq!(expected, BTreeSet::from([formulas(&["b"]), formulas(&["a", "c"])]));
    let ks = KernelCollection::from_sets(Formula::Falsum, kernels);
    let got: Vec<BTreeSet<Formula>> = enumerate_minimal_incisions(&ks, &pref)
        .into_iter()
        .map(|i| i.into_set())
        .collect();
    assert_eq!(got, vec![formulas(&["b"]), formulas(&["a", "c"])]);
}

#[test]
fn semi_revising_the_circuit_drops_one_assumable() {
    let sd_ass = fixtures::three_gates().system().base();
    let ass = formulas(&["okX", "okY", "okZ"]);
    let revised = semi_revise(&sd_ass, &fixtures::observation(), &ass);
    let expected = sd_ass.with(fixtures::observation()).difference(&formulas(&["okY"]));
    assert_eq!(revised, expected);
    assert!(tt_satisfiable(&revised));
}

#[test]
fn consolidating_a_contradiction() {
    let got = consolidate(&formulas(&["p", "!p"]).into(), &BTreeSet::new());
    assert_eq!(got, formulas(&["!p"]).into());
    assert!(got.is_subset(&formulas(&["p", "!p"]).into()));
    assert!(tt_satisfiable(&got));
}

// ---------------------------------------------------------------------------
// randomized agreement with the brute-force oracles

#[test]
fn kernels_match_exhaustive_enumeration_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65726e);
    let mut nontrivial = 0;
    for _ in 0..150 {
        let base = random_base(&mut rng, 9, 5);
        let target = if rng.gen_bool(0.7) {
            Formula::Falsum
        } else {
            common::random_formula(&mut rng, &common::pool(5), 2)
        };
        let got = kernel_sets(&compute_kernels(&base, &target));
        let want = brute_kernels(&base, &target);
        assert_eq!(got, want, "base {base:?} target {target}");
        if got.len() > 1 {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 10, "generator too tame: {nontrivial}");
}

fn arb_kernel_family() -> impl Strategy<Value = (Vec<BTreeSet<Formula>>, BTreeSet<Formula>)> {
    let names = ["a", "b", "c", "d", "e", "f"];
    let member = prop::sample::subsequence(names.to_vec(), 0..=4)
        .prop_map(|v| v.iter().map(|s| Formula::var(s)).collect::<BTreeSet<Formula>>());
    (
        prop::collection::vec(member, 0..=5),
        prop::sample::subsequence(names.to_vec(), 0..=6)
            .prop_map(|v| v.iter().map(|s| Formula::var(s)).collect::<BTreeSet<Formula>>()),
    )
}

proptest! {
    #[test]
    fn enumerated_incisions_match_clause_filtering((family, pref) in arb_kernel_family()) {
        let ks = KernelCollection::from_sets(Formula::Falsum, family.clone());
        let family: Vec<BTreeSet<Formula>> = ks.iter().map(|k| k.members().clone()).collect();
        let got: BTreeSet<BTreeSet<Formula>> = enumerate_minimal_incisions(&ks, &pref)
            .into_iter()
            .map(|i| i.into_set())
            .collect();
        prop_assert_eq!(got, brute_incisions(&family, &pref));
    }

    #[test]
    fn chosen_incision_is_element_wise_minimal((family, pref) in arb_kernel_family()) {
        let ks = KernelCollection::from_sets(Formula::Falsum, family);
        let family: Vec<BTreeSet<Formula>> = ks.iter().map(|k| k.members().clone()).collect();
        let cut = a_minimal_incision(&ks, &pref).into_set();
        prop_assert!(incision_clauses_hold(&family, &pref, &cut));
        for f in &cut {
            let mut less = cut.clone();
            less.remove(f);
            prop_assert!(!incision_clauses_hold(&family, &pref, &less));
        }
        if family.iter().all(|k| !k.is_disjoint(&pref)) {
            prop_assert!(cut.is_subset(&pref));
        }
    }
}

#[test]
fn kernels_are_sound_and_minimal_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let base = random_base(&mut rng, 12, 6);
        for k in compute_kernels(&base, &Formula::Falsum).iter() {
            assert!(k.to_base().is_subset(&base));
            assert!(tt_entails(k.members(), &Formula::Falsum));
            for f in k.members() {
                let rest: Vec<&Formula> = k.members().iter().filter(|g| *g != f).collect();
                assert!(!tt_entails(rest, &Formula::Falsum));
            }
        }
    }
}

#[test]
fn semi_revision_postulates_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let atoms = common::pool(5);
    for _ in 0..100 {
        let base = random_base(&mut rng, 8, 5);
        let input = common::random_formula(&mut rng, &atoms, 2);
        let preferred: BTreeSet<Formula> = base.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let expanded = base.with(input.clone());
        let revised = semi_revise(&base, &input, &preferred);
        assert!(revised.is_subset(&expanded));
        assert!(tt_satisfiable(&revised));
        if tt_satisfiable(&expanded) {
            assert_eq!(revised, expanded);
        }
    }
}
