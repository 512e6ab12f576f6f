//! File formats, reports and the commands behind the `bordcat` binary.
//!
//! Exit codes of the binary: `0` success, `1` a check failed, `2` invalid
//! input (parse or validation error), `3` an enumeration exceeded the cap.

mod commands;
mod format;
mod report;

pub use commands::{cmd_cohomology, cmd_gauge, cmd_verify, parse_ratio, parse_refined, GaugeTarget, Options, PairSpec, Scope, Suite};
pub use format::{BoundaryComponent, Input, ManifoldFile, SkeletonSource, SkeletonSpec};
pub use report::{Fact, GroupEntry, MatrixEntry, RunReport, Timing, ValueEntry};

use crate::error::Error;

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        _ => 2,
    }
}

#[cfg(test)]
mod tests;
