//! Focusing diagnosis on the part of the system an observation touches.
//!
//! Activation spreads from the observation's atoms along a directed
//! relatedness graph, breadth-first, collecting the assumables it reaches.
//! The compartment is then the observation plus every formula of `sd ∪ ass`
//! that mentions one of those assumables, and diagnosis runs on that
//! compartment alone.
//!
//! Retrieval is anytime: cutting it short (by rounds, by marked atoms, or by
//! an external interrupt) returns a prefix of the unbounded answer.

use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use crate::diagnosis::{self, ConflictSet, Diagnosis, DiagnosisError, Observation, System};
use crate::logic::{Atom, BeliefBase, Formula, Prover};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalityError {
    #[error("components `{first}` and `{second}` both drive output `{output}`")]
    DuplicateOutput {
        output: Atom,
        first: String,
        second: String,
    },
    #[error("component `{0}` has no inputs")]
    NoInputs(String),
    #[error("component `{name}` lists its output `{output}` among its inputs")]
    OutputIsInput { name: String, output: Atom },
    #[error("`{0}` is not an assumable of the system")]
    NotAssumable(Atom),
}

/// Directed relation between atoms. Successors iterate in name order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelatednessGraph {
    succ: BTreeMap<Atom, BTreeSet<Atom>>,
}

impl RelatednessGraph {
    pub fn new() -> RelatednessGraph {
        RelatednessGraph::default()
    }

    pub fn from_edges<I: IntoIterator<Item = (Atom, Atom)>>(edges: I) -> RelatednessGraph {
        let mut g = RelatednessGraph::new();
        for (from, to) in edges {
            g.add_edge(from, to);
        }
        g
    }

    pub fn add_node(&mut self, a: Atom) {
        self.succ.entry(a).or_default();
    }

    pub fn add_edge(&mut self, from: Atom, to: Atom) {
        self.add_node(to.clone());
        self.succ.entry(from).or_default().insert(to);
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Atom> + '_ {
        self.succ.keys()
    }

    pub fn node_count(&self) -> usize {
        self.succ.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Atom, &Atom)> + '_ {
        self.succ
            .iter()
            .flat_map(|(from, tos)| tos.iter().map(move |to| (from, to)))
    }

    pub fn edge_count(&self) -> usize {
        self.succ.values().map(BTreeSet::len).sum()
    }

    pub fn successors(&self, a: &Atom) -> impl Iterator<Item = &Atom> + '_ {
        self.succ.get(a).into_iter().flatten()
    }

    /// Atoms one arc away from any of `atoms`, following arc direction.
    pub fn adjacent<'a, I>(&self, atoms: I) -> BTreeSet<Atom>
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        atoms.into_iter().flat_map(|a| self.successors(a).cloned()).collect()
    }
}

/// A component: its output depends on its inputs and on its ok-atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecl {
    pub name: String,
    pub inputs: Vec<Atom>,
    pub output: Atom,
    pub ok_atom: Atom,
}

impl ComponentDecl {
    pub fn new(
        name: impl Into<String>,
        inputs: Vec<Atom>,
        output: Atom,
        ok_atom: Atom,
    ) -> Result<ComponentDecl, LocalityError> {
        let name = name.into();
        if inputs.is_empty() {
            return Err(LocalityError::NoInputs(name));
        }
        if inputs.contains(&output) {
            return Err(LocalityError::OutputIsInput { name, output });
        }
        Ok(ComponentDecl {
            name,
            inputs,
            output,
            ok_atom,
        })
    }
}

/// Edges `input → ok` for every input and `ok → output`, per component.
pub fn graph_from_components(decls: &[ComponentDecl]) -> Result<RelatednessGraph, LocalityError> {
    let mut drivers: BTreeMap<&Atom, &str> = BTreeMap::new();
    let mut g = RelatednessGraph::new();
    for d in decls {
        if let Some(first) = drivers.insert(&d.output, &d.name) {
            return Err(LocalityError::DuplicateOutput {
                output: d.output.clone(),
                first: first.to_string(),
                second: d.name.clone(),
            });
        }
        for i in &d.inputs {
            g.add_edge(i.clone(), d.ok_atom.clone());
        }
        g.add_edge(d.ok_atom.clone(), d.output.clone());
    }
    Ok(g)
}

/// Resource limits for [`retrieve`]. Both `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RetrievalBudget {
    /// Frontier expansions.
    pub max_rounds: Option<NonZeroUsize>,
    /// Total marked atoms, counting the observation's own atoms.
    pub max_marked: Option<NonZeroUsize>,
}

impl RetrievalBudget {
    pub fn unbounded() -> RetrievalBudget {
        RetrievalBudget::default()
    }

    /// Panics if `n` is zero.
    pub fn rounds(n: usize) -> RetrievalBudget {
        RetrievalBudget {
            max_rounds: Some(NonZeroUsize::new(n).expect("round budget must be positive")),
            max_marked: None,
        }
    }

    /// Panics if `n` is zero.
    pub fn marked(n: usize) -> RetrievalBudget {
        RetrievalBudget {
            max_rounds: None,
            max_marked: Some(NonZeroUsize::new(n).expect("marked budget must be positive")),
        }
    }

    pub fn is_unbounded(&self) -> bool {
        self.max_rounds.is_none() && self.max_marked.is_none()
    }
}

/// Outcome of relevance spreading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retrieval {
    /// Relevant assumables in discovery order.
    pub relevant: Vec<Atom>,
    /// Every marked atom in marking order.
    pub marked: Vec<Atom>,
    pub rounds: usize,
    /// Stopped by the budget or interrupt with unmarked atoms still queued.
    pub budget_exhausted: bool,
}

/// Spreads activation from `Var(obs)` and returns the assumables reached.
///
/// The observation's atoms are marked first, and those that are assumables
/// open the relevant list in name order. Each round marks the current
/// frontier in order, appending new assumables, and the next frontier is the
/// not-yet-marked successors of the current one, taken frontier atom by
/// frontier atom with successors in name order.
pub fn retrieve(
    obs: &Observation,
    ass: &BTreeSet<Atom>,
    graph: &RelatednessGraph,
    budget: RetrievalBudget,
) -> Retrieval {
    retrieve_until(obs, ass, graph, budget, |_| false)
}

/// Like [`retrieve`], additionally consulting `interrupt(marked_so_far)`
/// before each new mark; returning `true` stops retrieval there.
pub fn retrieve_until<F>(
    obs: &Observation,
    ass: &BTreeSet<Atom>,
    graph: &RelatednessGraph,
    budget: RetrievalBudget,
    mut interrupt: F,
) -> Retrieval
where
    F: FnMut(usize) -> bool,
{
    let obs_vars = obs.formula().vars();
    let mut marked: BTreeSet<Atom> = BTreeSet::new();
    let mut order: Vec<Atom> = Vec::new();
    for p in &obs_vars {
        marked.insert(p.clone());
        order.push(p.clone());
    }
    let mut relevant: Vec<Atom> = obs_vars.iter().filter(|p| ass.contains(*p)).cloned().collect();

    let mut frontier: Vec<Atom> = Vec::new();
    for p in &obs_vars {
        for q in graph.successors(p) {
            if !frontier.contains(q) {
                frontier.push(q.clone());
            }
        }
    }

    let mut rounds = 0usize;
    let mut cut_short = false;
    'spread: while !frontier.is_empty() {
        if budget.max_rounds.is_some_and(|r| rounds >= r.get()) {
            cut_short = true;
            break;
        }
        rounds += 1;
        for p in &frontier {
            if marked.contains(p) {
                continue;
            }
            if budget.max_marked.is_some_and(|m| order.len() >= m.get()) || interrupt(order.len()) {
                cut_short = true;
                break 'spread;
            }
            marked.insert(p.clone());
            order.push(p.clone());
            if ass.contains(p) && !relevant.contains(p) {
                relevant.push(p.clone());
            }
        }
        let mut next: Vec<Atom> = Vec::new();
        for p in &frontier {
            for q in graph.successors(p) {
                if !marked.contains(q) && !next.contains(q) {
                    next.push(q.clone());
                }
            }
        }
        frontier = next;
    }

    let budget_exhausted = cut_short && frontier.iter().any(|p| !marked.contains(p));
    Retrieval {
        relevant,
        marked: order,
        rounds,
        budget_exhausted,
    }
}

/// The observation plus the formulas of `sd ∪ ass` mentioning a relevant
/// assumable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compartment {
    observation: Formula,
    relevant: Vec<Atom>,
    /// Formulas in insertion order: the observation, then the formulas of
    /// each relevant atom in turn.
    ordered: Vec<Formula>,
    formulas: BeliefBase,
}

impl Compartment {
    pub fn formulas(&self) -> &BeliefBase {
        &self.formulas
    }

    /// Formulas most-relevant-first; every prefix is itself a usable focus.
    pub fn ordered(&self) -> &[Formula] {
        &self.ordered
    }

    pub fn relevant(&self) -> &[Atom] {
        &self.relevant
    }

    pub fn observation(&self) -> &Formula {
        &self.observation
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// The reduced system the compartment stands for: its non-observation,
    /// non-assumable formulas as description and the relevant atoms as
    /// assumables.
    pub fn to_system(&self) -> System {
        let ass: BTreeSet<Atom> = self.relevant.iter().cloned().collect();
        let sd: BeliefBase = self
            .ordered
            .iter()
            .skip(1)
            .filter(|f| !f.as_atom().is_some_and(|a| ass.contains(a)))
            .cloned()
            .collect();
        System::new(sd, ass)
    }
}

pub fn compartment(obs: &Observation, system: &System, relevant: &[Atom]) -> Result<Compartment, LocalityError> {
    if let Some(a) = relevant.iter().find(|a| !system.ass().contains(*a)) {
        return Err(LocalityError::NotAssumable(a.clone()));
    }
    let full = system.base();
    let mut formulas = BeliefBase::new();
    let mut ordered = Vec::new();
    formulas.insert(obs.formula().clone());
    ordered.push(obs.formula().clone());
    for p in relevant {
        for f in full.iter().filter(|f| f.mentions(p)) {
            if formulas.insert(f.clone()) {
                ordered.push(f.clone());
            }
        }
    }
    Ok(Compartment {
        observation: obs.formula().clone(),
        relevant: relevant.to_vec(),
        ordered,
        formulas,
    })
}

/// Diagnoses computed inside the compartment, with bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDiagnosis {
    pub diagnoses: Vec<Diagnosis>,
    pub conflicts: Vec<ConflictSet>,
    pub retrieval: Retrieval,
    pub compartment: Compartment,
    /// `|sd ∪ ass ∪ {obs}|` of the full system.
    pub total_formulas: usize,
    /// Satisfiability checks spent inside the compartment.
    pub entailment_calls: u64,
}

impl LocalDiagnosis {
    pub fn compartment_size(&self) -> usize {
        self.compartment.len()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.retrieval.budget_exhausted
    }
}

/// Retrieve, cut out the compartment, and diagnose within it.
pub fn local_diagnose(
    system: &System,
    obs: &Observation,
    graph: &RelatednessGraph,
    budget: RetrievalBudget,
) -> Result<LocalDiagnosis, DiagnosisError> {
    let retrieval = retrieve(obs, system.ass(), graph, budget);
    local_diagnose_from(&Prover::new(), system, obs, retrieval)
}

/// Local diagnosis from an already computed retrieval; `prover` is only
/// charged for work inside the compartment.
pub fn local_diagnose_from(
    prover: &Prover,
    system: &System,
    obs: &Observation,
    retrieval: Retrieval,
) -> Result<LocalDiagnosis, DiagnosisError> {
    let before = prover.calls();
    let comp = compartment(obs, system, &retrieval.relevant).expect("retrieve only reports assumables");
    let local = comp.to_system();
    if !diagnosis::diagnosable_with(prover, &local, obs) {
        return Err(DiagnosisError::NotDiagnosableInCompartment);
    }
    let run = diagnosis::run_with(prover, &local, obs);
    Ok(LocalDiagnosis {
        diagnoses: run.diagnoses,
        conflicts: run.conflicts,
        retrieval,
        compartment: comp,
        total_formulas: system.base().with(obs.formula().clone()).len(),
        entailment_calls: prover.calls() - before,
    })
}
