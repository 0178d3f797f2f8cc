//! Satisfiability and classical consequence.
//!
//! Formulas are put into negation normal form and then into CNF by plain
//! distribution (no auxiliary variables), and the clause set is decided by a
//! DPLL search with unit propagation. The inputs this crate deals with are a
//! few dozen small formulas, so nothing cleverer is needed.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use super::base::BeliefBase;
use super::formula::{Atom, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Lit(u32);

impl Lit {
    fn new(var: u32, negative: bool) -> Lit {
        Lit(var << 1 | negative as u32)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negative(self) -> bool {
        self.0 & 1 == 1
    }

    fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

pub(crate) type Clause = Vec<Lit>;

/// Maps atoms to solver variables and turns formulas into clauses.
#[derive(Debug, Default, Clone)]
pub(crate) struct Encoder {
    vars: HashMap<Atom, u32>,
}

impl Encoder {
    pub(crate) fn num_vars(&self) -> usize {
        self.vars.len()
    }

    fn var(&mut self, a: &Atom) -> u32 {
        let next = self.vars.len() as u32;
        *self.vars.entry(a.clone()).or_insert(next)
    }

    pub(crate) fn clauses(&mut self, f: &Formula) -> Vec<Clause> {
        self.cnf(f, false)
    }

    /// CNF of `f` (or of `!f` when `negated`), pushing negations inward.
    fn cnf(&mut self, f: &Formula, negated: bool) -> Vec<Clause> {
        match (f, negated) {
            (Formula::True, false) | (Formula::Falsum, true) => Vec::new(),
            (Formula::Falsum, false) | (Formula::True, true) => vec![Vec::new()],
            (Formula::Atom(a), neg) => vec![vec![Lit::new(self.var(a), neg)]],
            (Formula::Not(g), neg) => self.cnf(g, !neg),
            (Formula::And(l, r), false) => self.conj(l, false, r, false),
            (Formula::Or(l, r), true) => self.conj(l, true, r, true),
            (Formula::Implies(l, r), true) => self.conj(l, false, r, true),
            (Formula::Or(l, r), false) => self.disj(l, false, r, false),
            (Formula::And(l, r), true) => self.disj(l, true, r, true),
            (Formula::Implies(l, r), false) => self.disj(l, true, r, false),
        }
    }

    fn conj(&mut self, l: &Formula, ln: bool, r: &Formula, rn: bool) -> Vec<Clause> {
        let mut out = self.cnf(l, ln);
        out.extend(self.cnf(r, rn));
        out
    }

    fn disj(&mut self, l: &Formula, ln: bool, r: &Formula, rn: bool) -> Vec<Clause> {
        let left = self.cnf(l, ln);
        let right = self.cnf(r, rn);
        let mut out = Vec::with_capacity(left.len() * right.len());
        for a in &left {
            'pair: for b in &right {
                let mut c: Clause = a.iter().chain(b.iter()).copied().collect();
                c.sort_unstable();
                c.dedup();
                for w in c.windows(2) {
                    if w[0].var() == w[1].var() {
                        // tautology
                        continue 'pair;
                    }
                }
                out.push(c);
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

fn lit_value(assign: &[Value], l: Lit) -> Value {
    match (assign[l.var()], l.negative()) {
        (Value::Unset, _) => Value::Unset,
        (Value::True, false) | (Value::False, true) => Value::True,
        _ => Value::False,
    }
}

fn set_lit(assign: &mut [Value], l: Lit) {
    assign[l.var()] = if l.negative() { Value::False } else { Value::True };
}

/// DPLL over the given clauses. `num_vars` bounds every variable index.
pub(crate) fn dpll(clauses: &[&[Lit]], num_vars: usize) -> bool {
    if clauses.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut assign = vec![Value::Unset; num_vars];
    search(clauses, &mut assign)
}

fn search(clauses: &[&[Lit]], assign: &mut Vec<Value>) -> bool {
    // unit propagation to fixpoint
    loop {
        let mut unit = None;
        let mut best: Option<(usize, Lit)> = None;
        for c in clauses {
            let mut unset = 0usize;
            let mut last = None;
            let mut satisfied = false;
            for &l in c.iter() {
                match lit_value(assign, l) {
                    Value::True => {
                        satisfied = true;
                        break;
                    }
                    Value::Unset => {
                        unset += 1;
                        last = Some(l);
                    }
                    Value::False => {}
                }
            }
            if satisfied {
                continue;
            }
            match (unset, last) {
                (0, _) => return false,
                (1, Some(l)) => {
                    unit = Some(l);
                    break;
                }
                (n, Some(l)) => {
                    if best.is_none_or(|(m, _)| n < m) {
                        best = Some((n, l));
                    }
                }
                _ => unreachable!(),
            }
        }
        if let Some(l) = unit {
            set_lit(assign, l);
            continue;
        }
        let Some((_, branch)) = best else {
            return true;
        };
        for l in [branch, branch.negate()] {
            let mut trial = assign.clone();
            set_lit(&mut trial, l);
            if search(clauses, &mut trial) {
                *assign = trial;
                return true;
            }
        }
        return false;
    }
}

/// Satisfiability oracle that counts how often it is consulted.
///
/// Every satisfiability or entailment question costs one call. The counter
/// is atomic so a shared prover can be used from several threads.
#[derive(Debug, Default)]
pub struct Prover {
    calls: AtomicU64,
}

impl Prover {
    pub fn new() -> Prover {
        Prover::default()
    }

    /// Number of satisfiability checks performed so far.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    pub fn is_satisfiable<'a, I>(&self, formulas: I) -> bool
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut enc = Encoder::default();
        let clauses: Vec<Clause> = formulas.into_iter().flat_map(|f| enc.clauses(f)).collect();
        let refs: Vec<&[Lit]> = clauses.iter().map(Vec::as_slice).collect();
        self.solve(&refs, enc.num_vars())
    }

    /// `formulas ⊨ target`, decided by refutation.
    pub fn entails<'a, I>(&self, formulas: I, target: &Formula) -> bool
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let negated = Formula::not(target.clone());
        let mut all: Vec<&Formula> = formulas.into_iter().collect();
        all.push(&negated);
        !self.is_satisfiable(all)
    }

    pub(crate) fn solve(&self, clauses: &[&[Lit]], num_vars: usize) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        dpll(clauses, num_vars)
    }
}

/// True iff some truth assignment satisfies every formula of `base`.
pub fn is_satisfiable(base: &BeliefBase) -> bool {
    Prover::new().is_satisfiable(base)
}

/// True iff every model of `base` satisfies `f`.
pub fn entails(base: &BeliefBase, f: &Formula) -> bool {
    Prover::new().entails(base, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(fs: &[&str]) -> BeliefBase {
        fs.iter().map(|s| s.parse::<Formula>().unwrap()).collect()
    }

    #[test]
    fn contradiction_is_unsatisfiable() {
        assert!(!is_satisfiable(&base(&["p", "!p"])));
    }

    #[test]
    fn empty_base_is_satisfiable() {
        assert!(is_satisfiable(&BeliefBase::new()));
    }

    #[test]
    fn modus_ponens() {
        assert!(entails(&base(&["p", "p -> q"]), &Formula::var("q")));
    }

    #[test]
    fn empty_base_does_not_entail_falsum() {
        assert!(!entails(&BeliefBase::new(), &Formula::Falsum));
    }

    #[test]
    fn constants() {
        assert!(!is_satisfiable(&base(&["false"])));
        assert!(is_satisfiable(&base(&["true"])));
        assert!(!is_satisfiable(&base(&["!true"])));
        assert!(entails(&BeliefBase::new(), &Formula::True));
        assert!(entails(
            &base(&["p"]),
            &Formula::or(Formula::var("q"), Formula::not(Formula::var("q")))
        ));
    }

    #[test]
    fn distribution_keeps_meaning() {
        // (a & b) | (c & d) has four clauses after distribution
        let mut enc = Encoder::default();
        let f: Formula = "a & b | c & d".parse().unwrap();
        assert_eq!(enc.clauses(&f).len(), 4);
        assert!(is_satisfiable(&base(&["a & b | c & d", "!a"])));
        assert!(!is_satisfiable(&base(&["a & b | c & d", "!a", "!c"])));
    }

    #[test]
    fn prover_counts_calls() {
        let p = Prover::new();
        let b = base(&["p"]);
        p.is_satisfiable(&b);
        p.entails(&b, &Formula::var("p"));
        assert_eq!(p.calls(), 2);
    }
}
