//! Random component-structured circuits with faulty observations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cli::SystemFile;
use crate::locality::ComponentDecl;
use crate::logic::{Atom, Formula};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircuitParams {
    pub inputs: usize,
    pub components: usize,
    pub max_fanin: usize,
    /// Components whose output is inverted when simulating the observation.
    pub faults: usize,
    /// Probability that a given signal is observed.
    pub observed: f64,
}

impl Default for CircuitParams {
    fn default() -> CircuitParams {
        CircuitParams {
            inputs: 4,
            components: 6,
            max_fanin: 2,
            faults: 1,
            observed: 0.6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Gate {
    And,
    Or,
    Not,
}

#[derive(Clone, Debug)]
pub struct GeneratedCircuit {
    pub file: SystemFile,
    pub observation: Formula,
    /// Components whose outputs were flipped.
    pub faulty: Vec<Atom>,
}

fn atom(name: String) -> Atom {
    Atom::new(&name).expect("generated names are identifiers")
}

/// Builds a random acyclic circuit, simulates it with `params.faults` broken
/// components, and observes a random subset of the signals.
pub fn random_circuit<R: Rng + ?Sized>(rng: &mut R, params: CircuitParams) -> GeneratedCircuit {
    assert!(params.inputs > 0, "a circuit needs at least one input");
    let mut signals: Vec<Atom> = (1..=params.inputs).map(|i| atom(format!("I{i}"))).collect();
    let mut values: Vec<bool> = (0..params.inputs).map(|_| rng.gen()).collect();

    let mut faulty_idx: Vec<usize> = (0..params.components).collect();
    faulty_idx.shuffle(rng);
    faulty_idx.truncate(params.faults.min(params.components));

    let mut sd = Vec::new();
    let mut ass = Vec::new();
    let mut decls = Vec::new();
    let mut faulty = Vec::new();

    for c in 0..params.components {
        let gate = match rng.gen_range(0..3) {
            0 => Gate::And,
            1 => Gate::Or,
            _ => Gate::Not,
        };
        let fanin = match gate {
            Gate::Not => 1,
            _ => rng.gen_range(1..=params.max_fanin.max(1)).min(signals.len()),
        };
        let picked: Vec<usize> = rand::seq::index::sample(rng, signals.len(), fanin).into_vec();

        let ins: Vec<Formula> = picked.iter().map(|&i| Formula::atom(&signals[i])).collect();
        let expr = match gate {
            Gate::And => ins.into_iter().reduce(Formula::and).expect("fanin ≥ 1"),
            Gate::Or => ins.into_iter().reduce(Formula::or).expect("fanin ≥ 1"),
            Gate::Not => Formula::not(ins.into_iter().next().expect("fanin 1")),
        };
        let inputs_val: Vec<bool> = picked.iter().map(|&i| values[i]).collect();
        let mut out_val = match gate {
            Gate::And => inputs_val.iter().all(|&v| v),
            Gate::Or => inputs_val.iter().any(|&v| v),
            Gate::Not => !inputs_val[0],
        };

        let ok = atom(format!("okC{}", c + 1));
        let output = atom(format!("G{}", c + 1));
        if faulty_idx.contains(&c) {
            out_val = !out_val;
            faulty.push(ok.clone());
        }
        let out_f = Formula::atom(&output);
        sd.push(Formula::implies(
            Formula::and(expr.clone(), Formula::atom(&ok)),
            out_f.clone(),
        ));
        sd.push(Formula::implies(
            Formula::and(Formula::not(expr), Formula::atom(&ok)),
            Formula::not(out_f),
        ));
        decls.push(
            ComponentDecl::new(
                format!("c{}", c + 1),
                picked.iter().map(|&i| signals[i].clone()).collect(),
                output.clone(),
                ok.clone(),
            )
            .expect("fresh output is never an input"),
        );
        ass.push(ok);
        signals.push(output);
        values.push(out_val);
    }

    let mut literals: Vec<Formula> = signals
        .iter()
        .zip(&values)
        .filter(|_| rng.gen_bool(params.observed.clamp(0.0, 1.0)))
        .map(|(s, &v)| {
            if v {
                Formula::atom(s)
            } else {
                Formula::not(Formula::atom(s))
            }
        })
        .collect();
    if literals.is_empty() {
        let last = signals.len() - 1;
        let s = Formula::atom(&signals[last]);
        literals.push(if values[last] { s } else { Formula::not(s) });
    }

    GeneratedCircuit {
        file: SystemFile {
            sd,
            ass,
            components: Some(decls),
            edges: None,
        },
        observation: Formula::conjunction(literals),
        faulty,
    }
}
