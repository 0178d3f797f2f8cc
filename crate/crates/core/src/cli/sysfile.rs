//! Plain-text system files.
//!
//! ```text
//! # comment
//! [SD]
//! (A & B) & okX -> D
//! [ASS]
//! okX okY, okZ
//! [COMPONENTS]
//! x: inputs A B; output D; ok okX
//! [GRAPH]
//! C -> okY
//! ```
//!
//! `[SD]` takes one formula per line, `[ASS]` any number of atoms separated
//! by whitespace or commas. Sections may repeat; their contents accumulate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::diagnosis::System;
use crate::locality::{graph_from_components, ComponentDecl, LocalityError, RelatednessGraph};
use crate::logic::{parse_formula, Atom, Formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FileError {
    #[error("line {line}: content outside of any section")]
    OutsideSection { line: usize },
    #[error("line {line}: unknown section [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("{0}")]
    Formula(ParseError),
    #[error("line {line}: invalid atom {text:?}")]
    BadAtom { line: usize, text: String },
    #[error("line {line}: malformed component declaration: {reason}")]
    BadComponent { line: usize, reason: String },
    #[error("line {line}: malformed edge, expected `from -> to`")]
    BadEdge { line: usize },
    #[error(transparent)]
    Locality(#[from] LocalityError),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Sd,
    Ass,
    Components,
    Graph,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SystemFile {
    pub sd: Vec<Formula>,
    pub ass: Vec<Atom>,
    pub components: Option<Vec<ComponentDecl>>,
    pub edges: Option<Vec<(Atom, Atom)>>,
}

fn atom_at(line: usize, text: &str) -> Result<Atom, FileError> {
    Atom::new(text).map_err(|_| FileError::BadAtom {
        line,
        text: text.to_string(),
    })
}

fn parse_component(line: usize, text: &str) -> Result<ComponentDecl, FileError> {
    let bad = |reason: &str| FileError::BadComponent {
        line,
        reason: reason.to_string(),
    };
    let (name, rest) = text.split_once(':').ok_or_else(|| bad("missing `name:`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(bad("empty component name"));
    }
    let (mut inputs, mut output, mut ok) = (None, None, None);
    for part in rest.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let mut words = part.split_whitespace();
        let key = words.next().unwrap_or_default();
        let values = words.map(|w| atom_at(line, w)).collect::<Result<Vec<Atom>, _>>()?;
        let slot = match key {
            "inputs" => &mut inputs,
            "output" => &mut output,
            "ok" => &mut ok,
            other => return Err(bad(&format!("unknown key `{other}`"))),
        };
        if slot.replace(values).is_some() {
            return Err(bad(&format!("`{key}` given twice")));
        }
    }
    let single = |v: Option<Vec<Atom>>, key: &str| -> Result<Atom, FileError> {
        match v {
            Some(mut v) if v.len() == 1 => Ok(v.remove(0)),
            Some(_) => Err(bad(&format!("`{key}` takes exactly one atom"))),
            None => Err(bad(&format!("missing `{key}`"))),
        }
    };
    let output = single(output, "output")?;
    let ok = single(ok, "ok")?;
    let inputs = inputs.ok_or_else(|| bad("missing `inputs`"))?;
    ComponentDecl::new(name, inputs, output, ok).map_err(|e| bad(&e.to_string()))
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile, FileError> {
        let mut file = SystemFile::default();
        let mut section = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = Some(match name.trim() {
                    "SD" => Section::Sd,
                    "ASS" => Section::Ass,
                    "COMPONENTS" => {
                        file.components.get_or_insert_with(Vec::new);
                        Section::Components
                    }
                    "GRAPH" => {
                        file.edges.get_or_insert_with(Vec::new);
                        Section::Graph
                    }
                    other => {
                        return Err(FileError::UnknownSection {
                            line: line_no,
                            name: other.to_string(),
                        })
                    }
                });
                continue;
            }
            match section {
                None => return Err(FileError::OutsideSection { line: line_no }),
                Some(Section::Sd) => {
                    let f = parse_formula(line).map_err(|e| FileError::Formula(e.offset_lines(idx)))?;
                    file.sd.push(f);
                }
                Some(Section::Ass) => {
                    for word in line.split(|c: char| c.is_whitespace() || c == ',') {
                        if !word.is_empty() {
                            file.ass.push(atom_at(line_no, word)?);
                        }
                    }
                }
                Some(Section::Components) => {
                    let decl = parse_component(line_no, line)?;
                    file.components.get_or_insert_with(Vec::new).push(decl);
                }
                Some(Section::Graph) => {
                    let (from, to) = line.split_once("->").ok_or(FileError::BadEdge { line: line_no })?;
                    let (from, to) = (from.trim(), to.trim());
                    if from.contains(char::is_whitespace) || to.contains(char::is_whitespace) {
                        return Err(FileError::BadEdge { line: line_no });
                    }
                    let edge = (atom_at(line_no, from)?, atom_at(line_no, to)?);
                    file.edges.get_or_insert_with(Vec::new).push(edge);
                }
            }
        }
        Ok(file)
    }

    pub fn system(&self) -> System {
        System::new(
            self.sd.iter().cloned().collect(),
            self.ass.iter().cloned().collect::<BTreeSet<Atom>>(),
        )
    }

    pub fn has_graph_data(&self) -> bool {
        self.components.is_some() || self.edges.is_some()
    }

    /// The relatedness graph from `[COMPONENTS]` and `[GRAPH]` together, or
    /// `None` when the file has neither.
    pub fn graph(&self) -> Result<Option<RelatednessGraph>, FileError> {
        if !self.has_graph_data() {
            return Ok(None);
        }
        let mut g = match &self.components {
            Some(decls) => graph_from_components(decls)?,
            None => RelatednessGraph::new(),
        };
        for (from, to) in self.edges.iter().flatten() {
            g.add_edge(from.clone(), to.clone());
        }
        Ok(Some(g))
    }

    /// Renders the file back to text; parsing the result yields `self`.
    pub fn render(&self) -> String {
        let mut out = String::from("[SD]\n");
        for f in &self.sd {
            let _ = writeln!(out, "{f}");
        }
        out.push_str("\n[ASS]\n");
        let names: Vec<&str> = self.ass.iter().map(Atom::name).collect();
        let _ = writeln!(out, "{}", names.join(" "));
        if let Some(decls) = &self.components {
            out.push_str("\n[COMPONENTS]\n");
            for d in decls {
                let inputs: Vec<&str> = d.inputs.iter().map(Atom::name).collect();
                let _ = writeln!(
                    out,
                    "{}: inputs {}; output {}; ok {}",
                    d.name,
                    inputs.join(" "),
                    d.output,
                    d.ok_atom
                );
            }
        }
        if let Some(edges) = &self.edges {
            out.push_str("\n[GRAPH]\n");
            for (from, to) in edges {
                let _ = writeln!(out, "{from} -> {to}");
            }
        }
        out
    }
}
