use std::collections::BTreeSet;
use std::fmt;

use super::formula::{Atom, Formula};

/// A finite set of formulas, iterated in canonical formula order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeliefBase {
    formulas: BTreeSet<Formula>,
}

impl BeliefBase {
    pub fn new() -> BeliefBase {
        BeliefBase::default()
    }

    /// Adds a formula; returns `false` if it was already present.
    pub fn insert(&mut self, f: Formula) -> bool {
        self.formulas.insert(f)
    }

    pub fn remove(&mut self, f: &Formula) -> bool {
        self.formulas.remove(f)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.formulas.contains(f)
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.formulas.iter()
    }

    pub fn as_set(&self) -> &BTreeSet<Formula> {
        &self.formulas
    }

    /// `self ∪ {f}` as a new base.
    pub fn with(&self, f: Formula) -> BeliefBase {
        let mut b = self.clone();
        b.insert(f);
        b
    }

    pub fn union(&self, other: &BeliefBase) -> BeliefBase {
        self.formulas.union(&other.formulas).cloned().collect()
    }

    pub fn difference<'a, I>(&self, remove: I) -> BeliefBase
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut b = self.clone();
        for f in remove {
            b.remove(f);
        }
        b
    }

    pub fn is_subset(&self, other: &BeliefBase) -> bool {
        self.formulas.is_subset(&other.formulas)
    }

    /// Atoms occurring anywhere in the base.
    pub fn vars(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for f in &self.formulas {
            f.collect_vars(&mut out);
        }
        out
    }
}

impl FromIterator<Formula> for BeliefBase {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> BeliefBase {
        BeliefBase {
            formulas: iter.into_iter().collect(),
        }
    }
}

impl Extend<Formula> for BeliefBase {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        self.formulas.extend(iter)
    }
}

impl From<BTreeSet<Formula>> for BeliefBase {
    fn from(formulas: BTreeSet<Formula>) -> BeliefBase {
        BeliefBase { formulas }
    }
}

impl<'a> IntoIterator for &'a BeliefBase {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_set::Iter<'a, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.iter()
    }
}

impl IntoIterator for BeliefBase {
    type Item = Formula;
    type IntoIter = std::collections::btree_set::IntoIter<Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.formulas.into_iter()
    }
}

impl fmt::Debug for BeliefBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.formulas.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_collapse() {
        let mut b = BeliefBase::new();
        assert!(b.insert(Formula::var("p")));
        assert!(!b.insert(Formula::var("p")));
        assert_eq!(b.len(), 1);
    }

    #[test]
    fn iteration_is_canonical() {
        let b: BeliefBase = ["q", "!p", "p"].iter().map(|s| s.parse::<Formula>().unwrap()).collect();
        let order: Vec<String> = b.iter().map(|f| f.to_string()).collect();
        assert_eq!(order, ["p", "q", "!p"]);
    }
}
