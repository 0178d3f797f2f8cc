//! Minimal hitting sets, eager and lazy.
//!
//! [`minimal_hitting_sets`] dualizes a fully known collection. [`HsDag`]
//! builds the hitting-set DAG against a conflict oracle, asking for a new
//! conflict only when no known one is disjoint from the current path. It
//! applies node reuse, closing and pruning, and is correct even when the
//! oracle hands out non-minimal conflicts.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

/// Orders sets by cardinality, then lexicographically.
pub fn by_size_then_lex<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Keeps only the ⊆-minimal members, sorted by size then lexicographically.
pub fn minimize<T: Ord + Clone>(mut sets: Vec<BTreeSet<T>>) -> Vec<BTreeSet<T>> {
    sets.sort_by(by_size_then_lex);
    sets.dedup();
    let mut kept: Vec<BTreeSet<T>> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// All ⊆-minimal sets meeting every member of `collection`.
///
/// Returns `[∅]` for an empty collection and nothing at all when some member
/// is empty. Output is sorted by size then lexicographically.
pub fn minimal_hitting_sets<T: Ord + Clone>(collection: &[BTreeSet<T>]) -> Vec<BTreeSet<T>> {
    if collection.iter().any(BTreeSet::is_empty) {
        return Vec::new();
    }
    let mut members = minimize(collection.to_vec());
    // small sets first keeps the intermediate families small
    members.sort_by(by_size_then_lex);

    let mut current = vec![BTreeSet::new()];
    for s in &members {
        let mut next = Vec::with_capacity(current.len());
        for h in current {
            if !h.is_disjoint(s) {
                next.push(h);
                continue;
            }
            for e in s {
                let mut grown = h.clone();
                grown.insert(e.clone());
                next.push(grown);
            }
        }
        current = minimize(next);
    }
    current
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeLabel<T> {
    /// Not labeled yet (or closed before labeling).
    Unlabeled,
    Conflict(BTreeSet<T>),
    /// The path hits every conflict: a minimal hitting set.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Open,
    Closed,
    Pruned,
}

#[derive(Debug, Clone)]
pub struct HsNode<T> {
    pub path: BTreeSet<T>,
    pub label: NodeLabel<T>,
    pub status: NodeStatus,
    children: BTreeMap<T, usize>,
    parents: Vec<usize>,
}

impl<T> HsNode<T> {
    pub fn children(&self) -> impl Iterator<Item = (&T, usize)> + '_ {
        self.children.iter().map(|(e, &c)| (e, c))
    }

    pub fn parents(&self) -> &[usize] {
        &self.parents
    }
}

/// A hitting-set DAG built breadth-first against a lazy conflict oracle.
#[derive(Debug, Clone)]
pub struct HsDag<T> {
    nodes: Vec<HsNode<T>>,
    oracle_calls: usize,
}

impl<T: Ord + Clone + Hash> HsDag<T> {
    /// Builds the DAG.
    ///
    /// `oracle(excluded)` must return a conflict disjoint from `excluded`
    /// whenever one exists, and `None` otherwise.
    ///
    /// # Panics
    ///
    /// If the oracle returns a conflict that meets `excluded`.
    pub fn build<F>(mut oracle: F) -> HsDag<T>
    where
        F: FnMut(&BTreeSet<T>) -> Option<BTreeSet<T>>,
    {
        let mut dag = Builder {
            nodes: vec![HsNode {
                path: BTreeSet::new(),
                label: NodeLabel::Unlabeled,
                status: NodeStatus::Open,
                children: BTreeMap::new(),
                parents: Vec::new(),
            }],
            by_path: HashMap::new(),
            conflicts: Vec::new(),
            checks: Vec::new(),
            oracle_calls: 0,
        };
        dag.by_path.insert(BTreeSet::new(), 0);

        let mut level = vec![0usize];
        while !level.is_empty() {
            for &id in &level {
                dag.label(id, &mut oracle);
            }
            let mut next = Vec::new();
            for &id in &level {
                dag.expand(id, &mut next);
            }
            level = next;
        }
        HsDag {
            nodes: dag.nodes,
            oracle_calls: dag.oracle_calls,
        }
    }

    pub fn nodes(&self) -> &[HsNode<T>] {
        &self.nodes
    }

    pub fn oracle_calls(&self) -> usize {
        self.oracle_calls
    }

    /// Paths of the live check-labeled nodes, by size then lexicographically.
    pub fn hitting_sets(&self) -> Vec<BTreeSet<T>> {
        let mut out: Vec<BTreeSet<T>> = self
            .nodes
            .iter()
            .filter(|n| n.status == NodeStatus::Open && n.label == NodeLabel::Check)
            .map(|n| n.path.clone())
            .collect();
        out.sort_by(by_size_then_lex);
        out
    }
}

struct Builder<T> {
    nodes: Vec<HsNode<T>>,
    by_path: HashMap<BTreeSet<T>, usize>,
    conflicts: Vec<BTreeSet<T>>,
    checks: Vec<usize>,
    oracle_calls: usize,
}

impl<T: Ord + Clone + Hash> Builder<T> {
    fn label<F>(&mut self, id: usize, oracle: &mut F)
    where
        F: FnMut(&BTreeSet<T>) -> Option<BTreeSet<T>>,
    {
        if self.nodes[id].status != NodeStatus::Open {
            return;
        }
        let path = &self.nodes[id].path;
        // closing
        let closed = self.checks.iter().any(|&c| {
            let n = &self.nodes[c];
            n.status == NodeStatus::Open && n.path.len() < path.len() && n.path.is_subset(path)
        });
        if closed {
            self.nodes[id].status = NodeStatus::Closed;
            return;
        }
        // reuse a known conflict before asking the oracle
        if let Some(known) = self.conflicts.iter().find(|c| c.is_disjoint(path)) {
            self.nodes[id].label = NodeLabel::Conflict(known.clone());
            return;
        }
        self.oracle_calls += 1;
        match oracle(path) {
            None => {
                self.nodes[id].label = NodeLabel::Check;
                self.checks.push(id);
            }
            Some(conflict) => {
                assert!(
                    conflict.is_disjoint(&self.nodes[id].path),
                    "conflict oracle returned a set meeting the excluded elements"
                );
                self.prune_with(&conflict);
                self.conflicts.push(conflict.clone());
                self.nodes[id].label = NodeLabel::Conflict(conflict);
            }
        }
    }

    /// A fresh conflict that is a proper subset of an existing label replaces
    /// it, and the branches for the dropped elements are cut off.
    fn prune_with(&mut self, conflict: &BTreeSet<T>) {
        self.conflicts
            .retain(|c| !(conflict.len() < c.len() && conflict.is_subset(c)));
        for m in 0..self.nodes.len() {
            if self.nodes[m].status == NodeStatus::Pruned {
                continue;
            }
            let dropped: Vec<T> = match &self.nodes[m].label {
                NodeLabel::Conflict(old) if conflict.len() < old.len() && conflict.is_subset(old) => {
                    old.difference(conflict).cloned().collect()
                }
                _ => continue,
            };
            self.nodes[m].label = NodeLabel::Conflict(conflict.clone());
            for e in dropped {
                if let Some(child) = self.nodes[m].children.remove(&e) {
                    self.detach(child, m);
                }
            }
        }
    }

    fn detach(&mut self, child: usize, parent: usize) {
        self.nodes[child].parents.retain(|&p| p != parent);
        if !self.nodes[child].parents.is_empty() {
            return;
        }
        self.nodes[child].status = NodeStatus::Pruned;
        let path = self.nodes[child].path.clone();
        if self.by_path.get(&path) == Some(&child) {
            self.by_path.remove(&path);
        }
        let grandchildren: Vec<usize> = std::mem::take(&mut self.nodes[child].children).into_values().collect();
        for gc in grandchildren {
            self.detach(gc, child);
        }
    }

    fn expand(&mut self, id: usize, next: &mut Vec<usize>) {
        if self.nodes[id].status != NodeStatus::Open {
            return;
        }
        let NodeLabel::Conflict(conflict) = &self.nodes[id].label else {
            return;
        };
        for e in conflict.clone() {
            let mut path = self.nodes[id].path.clone();
            path.insert(e.clone());
            let child = match self.by_path.get(&path) {
                Some(&existing) => {
                    self.nodes[existing].parents.push(id);
                    existing
                }
                None => {
                    let new = self.nodes.len();
                    self.nodes.push(HsNode {
                        path: path.clone(),
                        label: NodeLabel::Unlabeled,
                        status: NodeStatus::Open,
                        children: BTreeMap::new(),
                        parents: vec![id],
                    });
                    self.by_path.insert(path, new);
                    next.push(new);
                    new
                }
            };
            self.nodes[id].children.insert(e, child);
        }
    }
}

/// Minimal hitting sets of every conflict the oracle can produce.
pub fn build_hs_dag<T, F>(oracle: F) -> Vec<BTreeSet<T>>
where
    T: Ord + Clone + Hash,
    F: FnMut(&BTreeSet<T>) -> Option<BTreeSet<T>>,
{
    HsDag::build(oracle).hitting_sets()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&'static str]) -> BTreeSet<&'static str> {
        xs.iter().copied().collect()
    }

    /// Oracle over a fixed family: first member (in the given order) disjoint
    /// from the excluded set.
    fn family_oracle(
        family: Vec<BTreeSet<&'static str>>,
    ) -> impl FnMut(&BTreeSet<&'static str>) -> Option<BTreeSet<&'static str>> {
        move |excluded| family.iter().find(|c| c.is_disjoint(excluded)).cloned()
    }

    #[test]
    fn single_conflict() {
        assert_eq!(
            minimal_hitting_sets(&[set(&["okY", "okZ"])]),
            vec![set(&["okY"]), set(&["okZ"])]
        );
    }

    #[test]
    fn singletons_are_forced() {
        assert_eq!(
            minimal_hitting_sets(&[set(&["a"]), set(&["b"])]),
            vec![set(&["a", "b"])]
        );
    }

    #[test]
    fn overlapping_pair() {
        assert_eq!(
            minimal_hitting_sets(&[set(&["a", "b"]), set(&["b", "c"])]),
            vec![set(&["b"]), set(&["a", "c"])]
        );
    }

    #[test]
    fn degenerate_collections() {
        assert_eq!(minimal_hitting_sets::<&str>(&[]), vec![BTreeSet::new()]);
        assert!(minimal_hitting_sets(&[set(&["a"]), set(&[])]).is_empty());
    }

    #[test]
    fn dag_on_small_families() {
        assert_eq!(
            build_hs_dag(family_oracle(vec![set(&["okY", "okZ"])])),
            vec![set(&["okY"]), set(&["okZ"])]
        );
        assert_eq!(build_hs_dag(family_oracle(vec![])), vec![BTreeSet::new()]);
        assert_eq!(
            build_hs_dag(family_oracle(vec![set(&["a", "b"]), set(&["b", "c"])])),
            vec![set(&["b"]), set(&["a", "c"])]
        );
    }

    #[test]
    fn dag_prunes_when_a_smaller_conflict_shows_up() {
        // {a,b,c} labels the root; {a,b} turns up under the c-branch
        let family = vec![set(&["a", "b", "c"]), set(&["a", "b"])];
        let dag = HsDag::build(family_oracle(family.clone()));
        assert_eq!(dag.hitting_sets(), minimal_hitting_sets(&family));
        assert!(dag.nodes().iter().any(|n| n.status == NodeStatus::Pruned));
    }

    #[test]
    fn dag_reuses_nodes() {
        let family = vec![set(&["a", "b"]), set(&["b", "c"]), set(&["a", "c"])];
        let dag = HsDag::build(family_oracle(family.clone()));
        assert_eq!(dag.hitting_sets(), minimal_hitting_sets(&family));
        assert!(dag.nodes().iter().any(|n| n.parents().len() > 1));
    }

    #[test]
    fn empty_conflict_means_no_hitting_set() {
        assert!(build_hs_dag(family_oracle(vec![set(&[])])).is_empty());
    }
}
