//! Exact detection of monochromatic ordered structures.
//!
//! Every detector returns the lexicographically smallest witness, so outputs
//! are deterministic and can be compared across tools. These detectors are
//! the reference that every other module's certificates are checked against.

mod clique;
mod count;
mod path_power;
mod tight;
mod violation;

pub use clique::find_mono_clique;
pub use count::{count_mono_cliques, BitGraph};
pub use path_power::find_mono_path_power;
pub use tight::{find_mono_broom, find_mono_tight_path};
pub use violation::{find_violation, find_violation_in_prefix};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Embedding, ViolationKind};
use crate::coloring::{Color, OrderedColoring};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Largest DP table a detector will allocate before reporting a resource error.
pub const DEFAULT_STATE_LIMIT: usize = 100_000_000;

pub(crate) fn check_state_count(states: usize, what: &str) -> Result<()> {
    if states > DEFAULT_STATE_LIMIT {
        return Err(Error::Resource(format!(
            "{what} needs {states} DP states (limit {DEFAULT_STATE_LIMIT})"
        )));
    }
    Ok(())
}

fn require_uniformity(c: &OrderedColoring, k: usize, what: &str) -> Result<()> {
    if c.uniformity() != k {
        return Err(Error::InvalidInput(format!(
            "{what} needs a {k}-uniform coloring, got k = {}",
            c.uniformity()
        )));
    }
    Ok(())
}

/// Lexicographically smallest copy of `pattern` in `color`, if any.
pub fn find(c: &OrderedColoring, pattern: &PatternSpec, color: Color) -> Result<Option<Embedding>> {
    pattern.validate()?;
    require_uniformity(c, pattern.uniformity(), &pattern.to_string())?;
    match *pattern {
        PatternSpec::PathPower { power, len } => find_mono_path_power(c, power, len, color),
        PatternSpec::TightPath { len, .. } => find_mono_tight_path(c, len, color),
        PatternSpec::Broom { path, bristles, .. } => find_mono_broom(c, path, bristles, color),
        PatternSpec::Clique { len, .. } => find_mono_clique(c, len, color),
    }
}

/// True iff `c` has no copy of `pattern` in `color`.
pub fn avoids(c: &OrderedColoring, pattern: &PatternSpec, color: Color) -> Result<bool> {
    Ok(find(c, pattern, color)?.is_none())
}

/// Something a coloring may contain: a monochromatic pattern or a red violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    Embedding { pattern: PatternSpec, color: Color },
    Violation { violation: ViolationKind },
}

impl Target {
    pub fn pattern(pattern: PatternSpec, color: Color) -> Target {
        Target::Embedding { pattern, color }
    }

    pub fn violation(kind: ViolationKind) -> Target {
        Target::Violation { violation: kind }
    }

    /// The canonical witness of this target in `c`, if there is one.
    pub fn find(&self, c: &OrderedColoring) -> Result<Option<Certificate>> {
        Ok(match *self {
            Target::Embedding { pattern, color } => find(c, &pattern, color)?.map(Certificate::from),
            Target::Violation { violation } => find_violation(c, violation)?.map(Certificate::from),
        })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Embedding { pattern, color } => write!(f, "{color} {pattern}"),
            Target::Violation { violation } => write!(f, "{violation} violation"),
        }
    }
}

/// Vertices `0..count` when the pattern has no edges and fits.
fn edgeless(c: &OrderedColoring, pattern: PatternSpec, color: Color) -> Option<Option<Embedding>> {
    if pattern.has_edges() {
        return None;
    }
    let count = pattern.vertex_count();
    Some((count <= c.vertex_count()).then(|| Embedding::new(pattern, color, (0..count).collect())))
}
