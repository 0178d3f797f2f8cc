//! Propositional formulas, belief bases, and the satisfiability oracle.

mod base;
mod formula;
mod parse;
mod sat;

pub use base::BeliefBase;
pub use formula::{Atom, Formula};
pub use parse::{parse_formula, ParseError, ParseErrorKind};
pub use sat::{entails, is_satisfiable, Prover};

pub(crate) use sat::{Encoder, Lit};

/// The atoms occurring in `f`.
pub fn vars(f: &Formula) -> std::collections::BTreeSet<Atom> {
    f.vars()
}
