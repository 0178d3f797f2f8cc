//! System files, run reports, and the command implementations behind the
//! `localdiag` binary.

mod commands;
mod report;
mod sysfile;

pub use commands::{
    cmd_bench, cmd_compartment, cmd_conflicts, cmd_diagnose, cmd_kernels, cmd_revise, exit, CommandError, Focus,
};
pub use report::{BenchReport, RunReport};
pub use sysfile::{FileError, SystemFile};
