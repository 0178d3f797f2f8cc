//! Brute-force oracles and random instance generators for the integration
//! suites. Nothing here calls the solver, kernel, or hitting-set code under
//! test: satisfiability is decided by truth tables and every minimal family
//! by exhaustive subset enumeration.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use localdiag::diagnosis::{Observation, System};
use localdiag::locality::{ComponentDecl, RelatednessGraph};
use localdiag::logic::{Atom, BeliefBase, Formula};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------------------
// truth tables

fn value(f: &Formula, env: &BTreeMap<Atom, bool>) -> bool {
    match f {
        Formula::Falsum => false,
        Formula::True => true,
        Formula::Atom(a) => env[a],
        Formula::Not(g) => !value(g, env),
        Formula::And(l, r) => value(l, env) && value(r, env),
        Formula::Or(l, r) => value(l, env) || value(r, env),
        Formula::Implies(l, r) => !value(l, env) || value(r, env),
    }
}

fn atoms_of(f: &Formula, out: &mut BTreeSet<Atom>) {
    match f {
        Formula::Falsum | Formula::True => {}
        Formula::Atom(a) => {
            out.insert(a.clone());
        }
        Formula::Not(g) => atoms_of(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            atoms_of(l, out);
            atoms_of(r, out);
        }
    }
}

pub fn tt_satisfiable<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> bool {
    let fs: Vec<&Formula> = fs.into_iter().collect();
    let mut atoms = BTreeSet::new();
    for f in &fs {
        atoms_of(f, &mut atoms);
    }
    let atoms: Vec<Atom> = atoms.into_iter().collect();
    assert!(atoms.len() <= 24, "truth table too large");
    (0u64..1 << atoms.len()).any(|bits| {
        let env: BTreeMap<Atom, bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), bits >> i & 1 == 1))
            .collect();
        fs.iter().all(|f| value(f, &env))
    })
}

pub fn tt_entails<'a>(fs: impl IntoIterator<Item = &'a Formula>, target: &Formula) -> bool {
    let neg = Formula::not(target.clone());
    let mut all: Vec<&Formula> = fs.into_iter().collect();
    all.push(&neg);
    !tt_satisfiable(all)
}

// ---------------------------------------------------------------------------
// subset enumeration

pub fn subsets<T: Ord + Clone>(items: &[T]) -> Vec<BTreeSet<T>> {
    assert!(items.len() <= 20);
    (0u32..1 << items.len())
        .map(|bits| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Members of `family` with no proper subset in `family`.
pub fn minimal_members<T: Ord + Clone>(family: &[BTreeSet<T>]) -> BTreeSet<BTreeSet<T>> {
    family
        .iter()
        .filter(|s| !family.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
        .cloned()
        .collect()
}

/// Every ⊆-minimal subset of `base` entailing `target`.
pub fn brute_kernels(base: &BeliefBase, target: &Formula) -> BTreeSet<BTreeSet<Formula>> {
    let items: Vec<Formula> = base.iter().cloned().collect();
    let entailing: Vec<BTreeSet<Formula>> = subsets(&items).into_iter().filter(|s| tt_entails(s, target)).collect();
    minimal_members(&entailing)
}

/// Every ⊆-minimal hitting set, by filtering all subsets of the union.
pub fn brute_hitting_sets<T: Ord + Clone>(family: &[BTreeSet<T>]) -> BTreeSet<BTreeSet<T>> {
    let universe: Vec<T> = family
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<T>>()
        .into_iter()
        .collect();
    let hitting: Vec<BTreeSet<T>> = subsets(&universe)
        .into_iter()
        .filter(|h| family.iter().all(|s| !s.is_disjoint(h)))
        .collect();
    minimal_members(&hitting)
}

/// The clause-by-clause incision conditions, checked on one candidate.
pub fn incision_clauses_hold(
    kernels: &[BTreeSet<Formula>],
    preferred: &BTreeSet<Formula>,
    sel: &BTreeSet<Formula>,
) -> bool {
    let union: BTreeSet<Formula> = kernels.iter().flatten().cloned().collect();
    let covered = sel.is_subset(&union);
    let hits = kernels.iter().filter(|k| !k.is_empty()).all(|k| !k.is_disjoint(sel));
    let confined = !kernels.iter().all(|k| !k.is_disjoint(preferred)) || sel.is_subset(preferred);
    covered && hits && confined
}

/// All selections satisfying the incision clauses and minimal among them.
pub fn brute_incisions(kernels: &[BTreeSet<Formula>], preferred: &BTreeSet<Formula>) -> BTreeSet<BTreeSet<Formula>> {
    let union: Vec<Formula> = kernels
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ok: Vec<BTreeSet<Formula>> = subsets(&union)
        .into_iter()
        .filter(|s| incision_clauses_hold(kernels, preferred, s))
        .collect();
    minimal_members(&ok)
}

/// Minimal Δ ⊆ ass with sd ∪ {obs} ∪ (ass ∖ Δ) satisfiable.
pub fn brute_diagnoses(system: &System, obs: &Observation) -> BTreeSet<BTreeSet<Atom>> {
    let ass: Vec<Atom> = system.ass().iter().cloned().collect();
    let ok: Vec<BTreeSet<Atom>> = subsets(&ass)
        .into_iter()
        .filter(|delta| {
            let kept: Vec<Formula> = ass.iter().filter(|a| !delta.contains(*a)).map(Formula::atom).collect();
            tt_satisfiable(system.sd().iter().chain([obs.formula()]).chain(kept.iter()))
        })
        .collect();
    minimal_members(&ok)
}

/// Minimal C ⊆ ass with sd ∪ {obs} ∪ C unsatisfiable.
pub fn brute_conflicts(system: &System, obs: &Observation) -> BTreeSet<BTreeSet<Atom>> {
    let ass: Vec<Atom> = system.ass().iter().cloned().collect();
    let bad: Vec<BTreeSet<Atom>> = subsets(&ass)
        .into_iter()
        .filter(|c| {
            let units: Vec<Formula> = c.iter().map(Formula::atom).collect();
            !tt_satisfiable(system.sd().iter().chain([obs.formula()]).chain(units.iter()))
        })
        .collect();
    minimal_members(&bad)
}

/// Atoms reachable from `start` along edges, `start` included.
pub fn reachable(graph: &RelatednessGraph, start: &BTreeSet<Atom>) -> BTreeSet<Atom> {
    let mut adj: BTreeMap<&Atom, Vec<&Atom>> = BTreeMap::new();
    for (from, to) in graph.edges() {
        adj.entry(from).or_default().push(to);
    }
    let mut seen: BTreeSet<Atom> = start.clone();
    let mut queue: VecDeque<Atom> = start.iter().cloned().collect();
    while let Some(a) = queue.pop_front() {
        for &b in adj.get(&a).map(Vec::as_slice).unwrap_or_default() {
            if seen.insert(b.clone()) {
                queue.push_back(b.clone());
            }
        }
    }
    seen
}

// ---------------------------------------------------------------------------
// random instances

pub fn atom(name: &str) -> Atom {
    Atom::new(name).unwrap()
}

pub fn pool(n: usize) -> Vec<Atom> {
    (0..n).map(|i| atom(&format!("p{i}"))).collect()
}

pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[Atom], depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..20) {
            0 => Formula::Falsum,
            1 => Formula::True,
            _ => Formula::atom(atoms.choose(rng).unwrap()),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(sub(rng)),
        1 => {
            let l = sub(rng);
            Formula::and(l, sub(rng))
        }
        2 => {
            let l = sub(rng);
            Formula::or(l, sub(rng))
        }
        _ => {
            let l = sub(rng);
            Formula::implies(l, sub(rng))
        }
    }
}

/// A random literal-heavy base: small bases over few atoms are inconsistent
/// often enough to exercise the kernel machinery.
pub fn random_base<R: Rng>(rng: &mut R, max_formulas: usize, n_atoms: usize) -> BeliefBase {
    let atoms = pool(n_atoms);
    let n = rng.gen_range(1..=max_formulas);
    (0..n)
        .map(|_| {
            if rng.gen_bool(0.35) {
                let a = Formula::atom(atoms.choose(rng).unwrap());
                if rng.gen_bool(0.5) {
                    a
                } else {
                    Formula::not(a)
                }
            } else {
                random_formula(rng, &atoms, 2)
            }
        })
        .collect()
}

/// A random system: implications from conjunctions of assumables and signal
/// literals to signal literals, plus a literal observation.
pub fn random_system<R: Rng>(rng: &mut R, max_ass: usize) -> (System, Observation) {
    let n_ass = rng.gen_range(1..=max_ass);
    let ass: Vec<Atom> = (0..n_ass).map(|i| atom(&format!("ok{i}"))).collect();
    let signals = pool(rng.gen_range(2..=4));
    let lit = |rng: &mut R| {
        let a = Formula::atom(signals.choose(rng).unwrap());
        if rng.gen_bool(0.5) {
            a
        } else {
            Formula::not(a)
        }
    };
    let n_rules = rng.gen_range(1..=6);
    let mut sd = BeliefBase::new();
    for _ in 0..n_rules {
        let mut premise = vec![Formula::atom(ass.choose(rng).unwrap())];
        if rng.gen_bool(0.4) {
            premise.push(Formula::atom(ass.choose(rng).unwrap()));
        }
        if rng.gen_bool(0.5) {
            premise.push(lit(rng));
        }
        let rule = Formula::implies(Formula::conjunction(premise), lit(rng));
        sd.insert(rule);
    }
    if rng.gen_bool(0.1) {
        sd.insert(lit(rng));
    }
    let obs = Formula::conjunction((0..rng.gen_range(1..=3)).map(|_| lit(rng)));
    (System::new(sd, ass.into_iter().collect()), Observation::new(obs))
}

/// A random component graph with `n` components over a few primary inputs.
pub fn random_components<R: Rng>(rng: &mut R, n: usize) -> Vec<ComponentDecl> {
    let mut signals: Vec<Atom> = (0..rng.gen_range(1..=4)).map(|i| atom(&format!("I{i}"))).collect();
    let mut decls = Vec::new();
    for c in 0..n {
        let fanin = rng.gen_range(1..=signals.len().min(3));
        let inputs: Vec<Atom> = signals.choose_multiple(rng, fanin).cloned().collect();
        let out = atom(&format!("S{c}"));
        decls.push(ComponentDecl::new(format!("c{c}"), inputs, out.clone(), atom(&format!("ok{c}"))).unwrap());
        signals.push(out);
    }
    decls
}

pub fn names<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Vec<String> {
    atoms.into_iter().map(|a| a.name().to_string()).collect()
}

pub fn formulas(fs: &[&str]) -> BTreeSet<Formula> {
    fs.iter().map(|s| s.parse().unwrap()).collect()
}
