//! Kernels, incisions, and kernel semi-revision.
//!
//! An α-kernel of a base B is a ⊆-minimal subset of B entailing α. Kernels
//! are enumerated by dualization: keep the kernels found so far, take each
//! minimal hitting set H of them, and ask whether B∖H still entails α. If it
//! does, B∖H contains a kernel none of the known ones are, and shrinking
//! finds it. When no hitting-set complement entails α the list is complete.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::hitting::{by_size_then_lex, minimal_hitting_sets};
use crate::logic::{BeliefBase, Encoder, Formula, Lit, Prover};

/// A ⊆-minimal subset of a base entailing some target.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Kernel {
    members: BTreeSet<Formula>,
}

impl Kernel {
    pub fn members(&self) -> &BTreeSet<Formula> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    pub fn to_base(&self) -> BeliefBase {
        self.members.iter().cloned().collect()
    }
}

impl Ord for Kernel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        by_size_then_lex(&self.members, &other.members)
    }
}

impl PartialOrd for Kernel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}

/// All kernels of a base for one target, sorted by size then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCollection {
    target: Formula,
    kernels: Vec<Kernel>,
}

impl KernelCollection {
    /// Wraps arbitrary member sets, e.g. for exercising incision functions.
    /// Duplicates collapse; nothing else is checked.
    pub fn from_sets<I>(target: Formula, sets: I) -> KernelCollection
    where
        I: IntoIterator<Item = BTreeSet<Formula>>,
    {
        let mut kernels: Vec<Kernel> = sets.into_iter().map(|members| Kernel { members }).collect();
        kernels.sort();
        kernels.dedup();
        KernelCollection { target, kernels }
    }

    pub fn target(&self) -> &Formula {
        &self.target
    }

    pub fn kernels(&self) -> &[Kernel] {
        &self.kernels
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Kernel> {
        self.kernels.iter()
    }

    /// ⋃ of all kernels.
    pub fn union(&self) -> BTreeSet<Formula> {
        self.kernels.iter().flat_map(|k| k.members.iter().cloned()).collect()
    }
}

impl<'a> IntoIterator for &'a KernelCollection {
    type Item = &'a Kernel;
    type IntoIter = std::slice::Iter<'a, Kernel>;

    fn into_iter(self) -> Self::IntoIter {
        self.kernels.iter()
    }
}

/// The formulas an incision function selects from a kernel collection.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Incision {
    selected: BTreeSet<Formula>,
}

impl Incision {
    pub fn selected(&self) -> &BTreeSet<Formula> {
        &self.selected
    }

    pub fn into_set(self) -> BTreeSet<Formula> {
        self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}

impl fmt::Debug for Incision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.selected.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("candidate set does not entail `{0}`")]
    NotEntailed(Formula),
}

/// A base with every formula's clauses precomputed, so that entailment
/// questions about subsets only concatenate clause lists.
struct Encoded {
    formulas: Vec<Formula>,
    clauses: Vec<Vec<Vec<Lit>>>,
    negated_target: Vec<Vec<Lit>>,
    num_vars: usize,
}

impl Encoded {
    fn new<'a>(formulas: impl IntoIterator<Item = &'a Formula>, target: &Formula) -> Encoded {
        let mut enc = Encoder::default();
        let formulas: Vec<Formula> = formulas.into_iter().cloned().collect();
        let clauses = formulas.iter().map(|f| enc.clauses(f)).collect();
        let negated_target = enc.clauses(&Formula::not(target.clone()));
        Encoded {
            formulas,
            clauses,
            negated_target,
            num_vars: enc.num_vars(),
        }
    }

    fn entails(&self, prover: &Prover, members: impl Iterator<Item = usize>) -> bool {
        let mut refs: Vec<&[Lit]> = self.negated_target.iter().map(Vec::as_slice).collect();
        for i in members {
            refs.extend(self.clauses[i].iter().map(Vec::as_slice));
        }
        !prover.solve(&refs, self.num_vars)
    }

    /// Deletion-based minimization in canonical (index) order.
    fn shrink(&self, prover: &Prover, mut members: BTreeSet<usize>) -> BTreeSet<usize> {
        let order: Vec<usize> = members.iter().copied().collect();
        for i in order {
            members.remove(&i);
            if !self.entails(prover, members.iter().copied()) {
                members.insert(i);
            }
        }
        members
    }

    fn to_formulas(&self, idx: &BTreeSet<usize>) -> BTreeSet<Formula> {
        idx.iter().map(|&i| self.formulas[i].clone()).collect()
    }
}

/// All ⊆-minimal subsets of `base` entailing `target`.
pub fn compute_kernels(base: &BeliefBase, target: &Formula) -> KernelCollection {
    compute_kernels_with(&Prover::new(), base, target)
}

pub fn compute_kernels_with(prover: &Prover, base: &BeliefBase, target: &Formula) -> KernelCollection {
    let enc = Encoded::new(base, target);
    let all: BTreeSet<usize> = (0..enc.formulas.len()).collect();
    let mut found: Vec<BTreeSet<usize>> = Vec::new();
    let mut cleared: HashSet<BTreeSet<usize>> = HashSet::new();

    loop {
        let mut grew = false;
        for hit in minimal_hitting_sets(&found) {
            if cleared.contains(&hit) {
                continue;
            }
            let rest: BTreeSet<usize> = all.difference(&hit).copied().collect();
            if enc.entails(prover, rest.iter().copied()) {
                found.push(enc.shrink(prover, rest));
                grew = true;
                break;
            }
            cleared.insert(hit);
        }
        if !grew {
            break;
        }
    }

    KernelCollection::from_sets(target.clone(), found.iter().map(|k| enc.to_formulas(k)))
}

/// Shrinks an entailing set to one of its kernels, dropping formulas in
/// canonical order whenever the rest still entails `target`.
pub fn shrink_to_kernel(candidate: &BeliefBase, target: &Formula) -> Result<Kernel, KernelError> {
    shrink_to_kernel_with(&Prover::new(), candidate, target)
}

pub fn shrink_to_kernel_with(prover: &Prover, candidate: &BeliefBase, target: &Formula) -> Result<Kernel, KernelError> {
    let enc = Encoded::new(candidate, target);
    let all: BTreeSet<usize> = (0..enc.formulas.len()).collect();
    if !enc.entails(prover, all.iter().copied()) {
        return Err(KernelError::NotEntailed(target.clone()));
    }
    let idx = enc.shrink(prover, all);
    Ok(Kernel {
        members: enc.to_formulas(&idx),
    })
}

/// Every set an `A`-minimal incision function may return for `kernels`:
/// covered by the union of the kernels, meeting each non-empty kernel,
/// confined to `preferred` whenever every kernel meets `preferred`, and
/// ⊆-minimal under those constraints. Sorted by size then lexicographically.
pub fn enumerate_minimal_incisions(kernels: &KernelCollection, preferred: &BTreeSet<Formula>) -> Vec<Incision> {
    let all_meet_preferred = kernels.iter().all(|k| !k.members.is_disjoint(preferred));
    let family: Vec<BTreeSet<Formula>> = if all_meet_preferred {
        kernels
            .iter()
            .map(|k| k.members.intersection(preferred).cloned().collect())
            .collect()
    } else {
        kernels
            .iter()
            .filter(|k| !k.is_empty())
            .map(|k| k.members.clone())
            .collect()
    };
    minimal_hitting_sets(&family)
        .into_iter()
        .map(|selected| Incision { selected })
        .collect()
}

/// The `A`-minimal incision with the lexicographically least selection.
pub fn a_minimal_incision(kernels: &KernelCollection, preferred: &BTreeSet<Formula>) -> Incision {
    enumerate_minimal_incisions(kernels, preferred)
        .into_iter()
        .min_by(|a, b| a.selected.cmp(&b.selected))
        .unwrap_or_default()
}

/// Kernel semi-revision: add `input`, then cut the ⊥-kernels of the result
/// with the `preferred`-minimal incision.
pub fn semi_revise(base: &BeliefBase, input: &Formula, preferred: &BTreeSet<Formula>) -> BeliefBase {
    semi_revise_with(&Prover::new(), base, input, preferred)
}

pub fn semi_revise_with(
    prover: &Prover,
    base: &BeliefBase,
    input: &Formula,
    preferred: &BTreeSet<Formula>,
) -> BeliefBase {
    consolidate_with(prover, &base.with(input.clone()), preferred)
}

/// Contraction by ⊥: removes the `preferred`-minimal incision of the
/// ⊥-kernels. A consistent base is returned unchanged.
pub fn consolidate(base: &BeliefBase, preferred: &BTreeSet<Formula>) -> BeliefBase {
    consolidate_with(&Prover::new(), base, preferred)
}

pub fn consolidate_with(prover: &Prover, base: &BeliefBase, preferred: &BTreeSet<Formula>) -> BeliefBase {
    let kernels = compute_kernels_with(prover, base, &Formula::Falsum);
    let cut = a_minimal_incision(&kernels, preferred);
    base.difference(cut.selected())
}
