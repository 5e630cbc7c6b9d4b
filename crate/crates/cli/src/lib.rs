//! Library surface of the `carnot` command-line tool; the binary is a thin
//! wrapper so the full command path stays testable in-process.

pub mod commands;
pub mod report;

pub use commands::{exit_code, exit_code_for, Target};
pub use report::{InputDescriptor, Report, Results};
