//! Certificate-producing versions of the broom and recursion arguments.
//!
//! Each extractor follows its argument step by step and returns a red
//! certificate, a blue certificate, or a [`Failure`] saying where the
//! argument ran out of room. Inputs below the argument's size threshold are
//! legal; they may fail, but never yield an invalid certificate.
//!
//! Returned certificates are canonical: the witness the argument produced is
//! recorded in the trace and replaced by the lexicographically smallest
//! witness of the same kind (colex-first for violations) among the vertices
//! up to the largest one it used.

mod broom3;
mod f3;
mod h3;
mod k4;
mod square;
mod stepdown;

pub use broom3::extract_3red_or_broom;
pub use f3::extract_f3_or_path;
pub use h3::extract_h3_or_path;
pub use k4::extract_k4_or_tight_path;
pub use square::{extract_square_path, SquarePathConfig};
pub use stepdown::{erdos_rado_stepdown, StepDown, StepDownOutcome};

use serde_json::{json, Map, Value};

use crate::certificate::{Certificate, Embedding};
use crate::coloring::{Color, OrderedColoring};
use crate::detect::Target;
use crate::error::{Error, Result};

/// Exact detection is run on the whole input at a stall when it has at most this many k-subsets.
pub const FALLBACK_SUBSETS: usize = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractOutcome {
    Red(Certificate),
    Blue(Embedding),
    Failure(Failure),
}

impl ExtractOutcome {
    pub fn certificate(&self) -> Option<Certificate> {
        match self {
            ExtractOutcome::Red(c) => Some(c.clone()),
            ExtractOutcome::Blue(e) => Some(Certificate::Embedding(e.clone())),
            ExtractOutcome::Failure(_) => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, ExtractOutcome::Failure(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            ExtractOutcome::Red(_) => "red",
            ExtractOutcome::Blue(_) => "blue",
            ExtractOutcome::Failure(_) => "failure",
        }
    }
}

/// Where an argument stalled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub stage: String,
    pub context: String,
    pub sub_instance: Option<SubInstance>,
    /// Exact detection on the whole input found none of the extractor's targets.
    pub confirmed: bool,
}

/// The coloring an argument was working in when it stalled, and what it needed there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubInstance {
    pub coloring: OrderedColoring,
    /// Original label of each vertex of `coloring`.
    pub vertices: Vec<usize>,
    pub targets: Vec<Target>,
    /// Whether exact detection confirmed that `coloring` contains none of `targets`.
    pub checked: bool,
}

/// An outcome with the step-by-step record of how it was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub outcome: ExtractOutcome,
    pub trace: Vec<String>,
}

impl Extraction {
    /// Certificate record fields plus `outcome`, and `trace` when asked for.
    pub fn to_json(&self, with_trace: bool) -> Value {
        let mut obj = match &self.outcome {
            ExtractOutcome::Failure(f) => {
                let mut m = Map::new();
                m.insert("stage".into(), json!(f.stage));
                m.insert("context".into(), json!(f.context));
                m.insert("confirmed".into(), json!(f.confirmed));
                if let Some(s) = &f.sub_instance {
                    m.insert(
                        "sub_instance".into(),
                        json!({
                            "k": s.coloring.uniformity(),
                            "n": s.coloring.vertex_count(),
                            "vertices": s.vertices,
                            "targets": s.targets,
                            "checked": s.checked,
                        }),
                    );
                }
                m
            }
            other => match other.certificate().expect("not a failure").to_json() {
                Value::Object(m) => m,
                _ => unreachable!("certificate records are objects"),
            },
        };
        obj.insert("outcome".into(), json!(self.outcome.label()));
        if with_trace {
            obj.insert("trace".into(), json!(self.trace));
        }
        Value::Object(obj)
    }
}

#[derive(Default)]
pub(crate) struct Trace(Vec<String>);

impl Trace {
    pub(crate) fn push(&mut self, line: impl Into<String>) {
        self.0.push(line.into());
    }
}

pub(crate) fn require_k(c: &OrderedColoring, k: usize, what: &str) -> Result<()> {
    if c.uniformity() != k {
        return Err(Error::InvalidInput(format!(
            "{what} needs a {k}-uniform coloring, got k = {}",
            c.uniformity()
        )));
    }
    Ok(())
}

/// Color of an unsorted small vertex set.
pub(crate) fn color_of_set(c: &OrderedColoring, set: &[usize]) -> Color {
    let mut s = set.to_vec();
    s.sort_unstable();
    c.get(&s)
}

/// Vertices `y` in `(after, limit)` for which `base + [y]` has `color`.
/// `base` is sorted, has `k - 1` entries, and lies below `after + 1`.
pub(crate) fn extensions<'a>(
    c: &'a OrderedColoring,
    base: &[usize],
    after: usize,
    limit: usize,
    color: Color,
) -> impl Iterator<Item = usize> + 'a {
    let k = c.uniformity();
    debug_assert_eq!(base.len(), k - 1);
    debug_assert!(base.last().is_none_or(|&b| b <= after));
    let binom = c.binomials();
    let head: usize = base.iter().enumerate().map(|(i, &v)| binom.get(v, i + 1)).sum();
    (after + 1..limit.min(c.vertex_count())).filter(move |&y| c.color_at(head + binom.get(y, k)) == color)
}

/// Replaces `cert` by the canonical witness of the same kind and checks it.
pub(crate) fn canonical(c: &OrderedColoring, cert: Certificate, trace: &mut Trace) -> Result<Certificate> {
    cert.validate(c)
        .map_err(|e| Error::Verification(format!("argument produced an invalid certificate: {e}")))?;
    trace.push(format!("argument certificate: {cert}"));
    let top = cert.vertices().last().map_or(0, |&v| v + 1);
    let prefix = c.prefix(top)?;
    let target = match &cert {
        Certificate::Embedding(e) => Target::pattern(e.pattern, e.color),
        Certificate::Violation(v) => Target::violation(v.kind),
    };
    let best = target
        .find(&prefix)?
        .ok_or_else(|| Error::Verification(format!("detector missed the certificate {cert}")))?;
    best.validate(c)?;
    Ok(best)
}

pub(crate) fn finish(c: &OrderedColoring, cert: Certificate, mut trace: Trace) -> Result<Extraction> {
    let cert = canonical(c, cert, &mut trace)?;
    let outcome = match cert {
        Certificate::Embedding(e) if e.color == Color::Blue => ExtractOutcome::Blue(e),
        red => ExtractOutcome::Red(red),
    };
    Ok(Extraction { outcome, trace: trace.0 })
}

/// The argument stalled. Decides the window, and the whole input, exactly
/// when that is cheap; a certificate found that way is returned instead of
/// a failure. Without an explicit sub-instance the window is reported.
pub(crate) fn stall(
    c: &OrderedColoring,
    targets: &[Target],
    stage: &str,
    context: String,
    window: usize,
    sub_instance: Option<SubInstance>,
    mut trace: Trace,
) -> Result<Extraction> {
    trace.push(format!("stalled at {stage}: {context}"));
    let prefix = c.prefix(window.min(c.vertex_count()))?;
    let mut window_checked = false;
    for (scope, coloring) in [("window", &prefix), ("whole input", c)] {
        if coloring.len() > FALLBACK_SUBSETS {
            continue;
        }
        for t in targets {
            if let Some(found) = t.find(coloring)? {
                trace.push(format!("exact detection on the {scope} found {t}"));
                return finish(c, found, trace);
            }
        }
        trace.push(format!("exact detection on the {scope} found no target"));
        window_checked = true;
    }
    let confirmed = c.len() <= FALLBACK_SUBSETS;
    let sub_instance = sub_instance.unwrap_or_else(|| SubInstance {
        vertices: (0..prefix.vertex_count()).collect(),
        coloring: prefix,
        targets: targets.to_vec(),
        checked: window_checked,
    });
    Ok(Extraction {
        outcome: ExtractOutcome::Failure(Failure {
            stage: stage.to_string(),
            context,
            sub_instance: Some(sub_instance),
            confirmed,
        }),
        trace: trace.0,
    })
}

/// Broom with `path` a tight path and each bristle closing an edge with its last `k - 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Broom {
    pub path: Vec<usize>,
    pub bristles: Vec<usize>,
}

impl Broom {
    /// The first `len` vertices of the path followed by the first bristle.
    pub(crate) fn tight_path(&self, len: usize) -> Vec<usize> {
        self.path.iter().chain(self.bristles.first()).copied().take(len).collect()
    }
}

impl std::fmt::Display for Broom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "path {:?}, bristles {:?}", self.path, self.bristles)
    }
}
