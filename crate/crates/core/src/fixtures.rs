//! Two textbook circuits as system files.

use crate::cli::SystemFile;
use crate::logic::Formula;

/// Three components x, y, z: `D = A ∧ B`, `E = ¬C`, `F = D ∨ E`.
pub const THREE_GATES: &str = include_str!("../fixtures/three_gates.sys");

/// The three-gate circuit embedded in eleven components, with component
/// declarations for relevance retrieval.
pub const ELEVEN_GATES: &str = include_str!("../fixtures/eleven_gates.sys");

/// `¬C ∧ ¬F`: inconsistent with both circuits working correctly.
pub const OBSERVATION: &str = "!C & !F";

pub fn three_gates() -> SystemFile {
    SystemFile::parse(THREE_GATES).expect("bundled fixture parses")
}

pub fn eleven_gates() -> SystemFile {
    SystemFile::parse(ELEVEN_GATES).expect("bundled fixture parses")
}

pub fn observation() -> Formula {
    OBSERVATION.parse().expect("bundled observation parses")
}
