//! Consistency-based diagnosis.
//!
//! A system is a description `sd` plus a set of assumable atoms `okX`, each
//! asserting that component X works. Assumables enter every base as unit
//! formulas. A diagnosis is a ⊆-minimal set Δ of assumables such that
//! `sd ∪ {obs} ∪ (ass ∖ Δ)` is satisfiable; equivalently a minimal hitting
//! set of the minimal conflict sets.

use std::collections::BTreeSet;
use std::fmt;

use crate::hitting::{by_size_then_lex, minimal_hitting_sets, minimize, HsDag};
use crate::kernels::{a_minimal_incision, compute_kernels_with, semi_revise_with, shrink_to_kernel_with};
use crate::logic::{Atom, BeliefBase, Formula, Prover};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    sd: BeliefBase,
    ass: BTreeSet<Atom>,
}

impl System {
    pub fn new(sd: BeliefBase, ass: BTreeSet<Atom>) -> System {
        System { sd, ass }
    }

    pub fn sd(&self) -> &BeliefBase {
        &self.sd
    }

    pub fn ass(&self) -> &BTreeSet<Atom> {
        &self.ass
    }

    /// The assumables as unit formulas.
    pub fn assumable_formulas(&self) -> BTreeSet<Formula> {
        self.ass.iter().map(Formula::atom).collect()
    }

    /// `sd ∪ ass`.
    pub fn base(&self) -> BeliefBase {
        let mut b = self.sd.clone();
        b.extend(self.ass.iter().map(Formula::atom));
        b
    }

    /// `sd ∪ {obs} ∪ (ass ∖ excluded)`.
    pub fn base_without(&self, obs: &Observation, excluded: &BTreeSet<Atom>) -> BeliefBase {
        let mut b = self.sd.with(obs.formula().clone());
        b.extend(self.ass.difference(excluded).map(Formula::atom));
        b
    }

    /// The assumables among a set of formulas.
    fn project<'a>(&self, fs: impl IntoIterator<Item = &'a Formula>) -> BTreeSet<Atom> {
        fs.into_iter()
            .filter_map(Formula::as_atom)
            .filter(|a| self.ass.contains(*a))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Observation(Formula);

impl Observation {
    pub fn new(formula: Formula) -> Observation {
        Observation(formula)
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }
}

impl From<Formula> for Observation {
    fn from(f: Formula) -> Observation {
        Observation(f)
    }
}

macro_rules! atom_set_newtype {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, PartialEq, Eq, Hash, Default)]
        pub struct $name(BTreeSet<Atom>);

        impl $name {
            pub fn new(atoms: BTreeSet<Atom>) -> $name {
                $name(atoms)
            }

            pub fn atoms(&self) -> &BTreeSet<Atom> {
                &self.0
            }

            pub fn into_atoms(self) -> BTreeSet<Atom> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn contains(&self, a: &Atom) -> bool {
                self.0.contains(a)
            }

            /// Atom names in order.
            pub fn names(&self) -> Vec<String> {
                self.0.iter().map(|a| a.name().to_string()).collect()
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> std::cmp::Ordering {
                by_size_then_lex(&self.0, &other.0)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.0.iter()).finish()
            }
        }

        impl FromIterator<Atom> for $name {
            fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> $name {
                $name(iter.into_iter().collect())
            }
        }
    };
}

atom_set_newtype!(
    /// Assumables that cannot all hold together with `sd` and the observation.
    ConflictSet
);
atom_set_newtype!(
    /// Assumables to retract; ordered by size, then lexicographically.
    Diagnosis
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DiagnosisError {
    #[error("no diagnosis exists: the system description contradicts the observation")]
    NotDiagnosable,
    #[error("no diagnosis exists within the compartment: the observation contradicts its retrieved part")]
    NotDiagnosableInCompartment,
}

/// A diagnosis exists iff `sd ∪ {obs}` is satisfiable.
pub fn diagnosable(system: &System, obs: &Observation) -> bool {
    diagnosable_with(&Prover::new(), system, obs)
}

pub fn diagnosable_with(prover: &Prover, system: &System, obs: &Observation) -> bool {
    prover.is_satisfiable(system.sd.iter().chain(std::iter::once(obs.formula())))
}

/// ⊆-minimal conflict sets, read off the ⊥-kernels of `sd ∪ ass ∪ {obs}`.
///
/// Different kernels can project to nested assumable sets, so projections
/// are minimized. When some kernel contains no assumable at all the result
/// is `[∅]`: nothing can be retracted to restore consistency.
pub fn minimal_conflict_sets(system: &System, obs: &Observation) -> Vec<ConflictSet> {
    minimal_conflict_sets_with(&Prover::new(), system, obs)
}

pub fn minimal_conflict_sets_with(prover: &Prover, system: &System, obs: &Observation) -> Vec<ConflictSet> {
    let base = system.base().with(obs.formula().clone());
    let kernels = compute_kernels_with(prover, &base, &Formula::Falsum);
    let projections = kernels.iter().map(|k| system.project(k.members())).collect();
    minimize(projections).into_iter().map(ConflictSet).collect()
}

/// All minimal diagnoses, sorted by size then lexicographically.
///
/// Empty exactly when no diagnosis exists; `[∅]` when the observation is
/// consistent with everything working.
pub fn diagnose(system: &System, obs: &Observation) -> Vec<Diagnosis> {
    diagnose_with(&Prover::new(), system, obs)
}

pub fn diagnose_with(prover: &Prover, system: &System, obs: &Observation) -> Vec<Diagnosis> {
    run_with(prover, system, obs).diagnoses
}

/// Conflict sets and diagnoses from one pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagnosisRun {
    pub conflicts: Vec<ConflictSet>,
    pub diagnoses: Vec<Diagnosis>,
}

pub fn run_with(prover: &Prover, system: &System, obs: &Observation) -> DiagnosisRun {
    let conflicts = minimal_conflict_sets_with(prover, system, obs);
    let family: Vec<BTreeSet<Atom>> = conflicts.iter().map(|c| c.0.clone()).collect();
    let diagnoses = minimal_hitting_sets(&family).into_iter().map(Diagnosis).collect();
    DiagnosisRun { conflicts, diagnoses }
}

/// Diagnoses via the hitting-set DAG, computing conflicts only on demand.
pub fn diagnose_lazy(system: &System, obs: &Observation) -> Vec<Diagnosis> {
    diagnose_lazy_with(&Prover::new(), system, obs)
}

pub fn diagnose_lazy_with(prover: &Prover, system: &System, obs: &Observation) -> Vec<Diagnosis> {
    HsDag::build(|excluded: &BTreeSet<Atom>| conflict_avoiding(prover, system, obs, excluded))
        .hitting_sets()
        .into_iter()
        .map(Diagnosis)
        .collect()
}

/// A conflict set disjoint from `excluded`, if there is one: shrink
/// `sd ∪ {obs} ∪ (ass ∖ excluded)` to a ⊥-kernel and keep its assumables.
pub fn conflict_avoiding(
    prover: &Prover,
    system: &System,
    obs: &Observation,
    excluded: &BTreeSet<Atom>,
) -> Option<BTreeSet<Atom>> {
    let base = system.base_without(obs, excluded);
    let kernel = shrink_to_kernel_with(prover, &base, &Formula::Falsum).ok()?;
    Some(system.project(kernel.members()))
}

/// The assumables given up when `sd ∪ ass` is semi-revised by the
/// observation with assumables preferred for removal.
pub fn diagnose_one(system: &System, obs: &Observation) -> Result<Diagnosis, DiagnosisError> {
    diagnose_one_with(&Prover::new(), system, obs)
}

pub fn diagnose_one_with(prover: &Prover, system: &System, obs: &Observation) -> Result<Diagnosis, DiagnosisError> {
    if !diagnosable_with(prover, system, obs) {
        return Err(DiagnosisError::NotDiagnosable);
    }
    let base = system.base();
    let revised = semi_revise_with(prover, &base, obs.formula(), &system.assumable_formulas());
    let removed: Vec<&Formula> = base.iter().filter(|f| !revised.contains(f)).collect();
    debug_assert!(removed
        .iter()
        .all(|f| f.as_atom().is_some_and(|a| system.ass.contains(a))));
    Ok(Diagnosis(system.project(removed)))
}

/// The `ass`-minimal incision over the ⊥-kernels of `sd ∪ ass ∪ {obs}`.
pub fn assumable_incision(prover: &Prover, system: &System, obs: &Observation) -> BTreeSet<Formula> {
    let base = system.base().with(obs.formula().clone());
    let kernels = compute_kernels_with(prover, &base, &Formula::Falsum);
    a_minimal_incision(&kernels, &system.assumable_formulas()).into_set()
}
