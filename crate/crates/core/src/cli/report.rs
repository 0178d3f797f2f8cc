use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagnosis::{ConflictSet, Diagnosis};
use crate::logic::{Atom, Formula};

/// Machine-readable result of one command.
///
/// Diagnoses and conflict sets are sorted by size, then lexicographically;
/// `relevant` keeps retrieval order. `kernels` and `base` only appear for the
/// commands that produce them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub diagnoses: Vec<Vec<String>>,
    pub conflict_sets: Vec<Vec<String>>,
    pub relevant: Vec<String>,
    pub compartment_size: usize,
    pub total_formulas: usize,
    pub entailment_calls: u64,
    pub elapsed_ms: u64,
    pub budget_exhausted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernels: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<String>>,
}

pub(crate) fn diagnosis_lists(ds: &[Diagnosis]) -> Vec<Vec<String>> {
    ds.iter().map(Diagnosis::names).collect()
}

pub(crate) fn conflict_lists(cs: &[ConflictSet]) -> Vec<Vec<String>> {
    cs.iter().map(ConflictSet::names).collect()
}

pub(crate) fn atom_list(atoms: &[Atom]) -> Vec<String> {
    atoms.iter().map(|a| a.name().to_string()).collect()
}

/// Renderings sorted as plain strings.
pub(crate) fn formula_list<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<String> {
    let mut out: Vec<String> = fs.into_iter().map(Formula::to_string).collect();
    out.sort();
    out
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

impl RunReport {
    /// Single-line JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<RunReport> {
        serde_json::from_str(text)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        if let Some(kernels) = &self.kernels {
            let _ = writeln!(out, "kernels ({}):", kernels.len());
            for k in kernels {
                let _ = writeln!(out, "  {}", braces(k));
            }
        }
        if let Some(base) = &self.base {
            let _ = writeln!(out, "base ({}):", base.len());
            for f in base {
                let _ = writeln!(out, "  {f}");
            }
        }
        if self.kernels.is_none() && self.base.is_none() || !self.conflict_sets.is_empty() {
            let _ = writeln!(out, "conflict sets ({}):", self.conflict_sets.len());
            for c in &self.conflict_sets {
                let _ = writeln!(out, "  {}", braces(c));
            }
        }
        if !self.diagnoses.is_empty() {
            let _ = writeln!(out, "diagnoses ({}):", self.diagnoses.len());
            for d in &self.diagnoses {
                let _ = writeln!(out, "  {}", braces(d));
            }
        }
        if !self.relevant.is_empty() || self.budget_exhausted {
            let _ = writeln!(out, "relevant: {}", self.relevant.join(" "));
        }
        let _ = writeln!(
            out,
            "formulas examined: {} of {}",
            self.compartment_size, self.total_formulas
        );
        let _ = writeln!(out, "entailment calls: {}", self.entailment_calls);
        if self.budget_exhausted {
            let _ = writeln!(out, "retrieval budget exhausted: result may be partial");
        }
        let _ = write!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

/// Global and local runs over the same input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchReport {
    pub global: RunReport,
    pub local: RunReport,
    /// Both runs returned the same diagnoses.
    pub identical: bool,
}

impl BenchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== global ==\n{}", self.global.to_human());
        let _ = writeln!(out, "== local ==\n{}", self.local.to_human());
        if self.identical {
            let _ = write!(out, "diagnoses agree");
        } else {
            let _ = write!(out, "!!! DIVERGENCE: local and global diagnoses differ !!!");
        }
        out
    }
}
