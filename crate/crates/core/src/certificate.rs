//! Machine-checkable witnesses: monochromatic embeddings and red violations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, OrderedColoring};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// A vertex list realising `pattern` in a single color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: PatternSpec,
    pub color: Color,
    pub vertices: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: PatternSpec, color: Color, vertices: Vec<usize>) -> Self {
        Embedding { pattern, color, vertices }
    }

    /// Re-reads every pattern edge from `c`.
    pub fn validate(&self, c: &OrderedColoring) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(format!("embedding {self}: {msg}")));
        if self.pattern.uniformity() != c.uniformity() {
            return fail(format!(
                "pattern uniformity {} differs from coloring uniformity {}",
                self.pattern.uniformity(),
                c.uniformity()
            ));
        }
        if self.vertices.len() != self.pattern.vertex_count() {
            return fail(format!("expected {} vertices", self.pattern.vertex_count()));
        }
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return fail("vertices are not strictly increasing".into());
        }
        if self.vertices.last().is_some_and(|&v| v >= c.vertex_count()) {
            return fail(format!("vertex out of range 0..{}", c.vertex_count()));
        }
        let mut edge = Vec::with_capacity(c.uniformity());
        for positions in self.pattern.edges() {
            edge.clear();
            edge.extend(positions.iter().map(|&p| self.vertices[p]));
            if c.get(&edge) != self.color {
                return fail(format!("edge {edge:?} is not {}", self.color));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {:?}", self.color, self.pattern, self.vertices)
    }
}

/// Which small red configuration a [`Violation`] exhibits on `k + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// At least three red edges, one of them the `k` smallest vertices.
    H3,
    /// At least three red edges.
    F3,
    /// At least `t` red edges.
    TRed(usize),
}

impl ViolationKind {
    pub fn min_red(self) -> usize {
        match self {
            ViolationKind::H3 | ViolationKind::F3 => 3,
            ViolationKind::TRed(t) => t,
        }
    }

    /// Whether a (k+1)-set with `red` red edges, `initial_red` telling whether
    /// its k smallest vertices form a red edge, has this kind.
    #[inline]
    pub fn accepts(self, red: usize, initial_red: bool) -> bool {
        match self {
            ViolationKind::H3 => red >= 3 && initial_red,
            ViolationKind::F3 => red >= 3,
            ViolationKind::TRed(t) => red >= t,
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationKind::H3 => f.write_str("h3"),
            ViolationKind::F3 => f.write_str("f3"),
            ViolationKind::TRed(t) => write!(f, "tred:{t}"),
        }
    }
}

impl FromStr for ViolationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "h3" => Ok(ViolationKind::H3),
            "f3" => Ok(ViolationKind::F3),
            _ => lower
                .strip_prefix("tred:")
                .and_then(|t| t.parse().ok())
                .map(ViolationKind::TRed)
                .ok_or_else(|| Error::parse("violation", format!("expected h3, f3 or tred:<t>, got `{s}`"))),
        }
    }
}

impl Serialize for ViolationKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ViolationKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// `k + 1` vertices together with the red k-subsets among them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub vertices: Vec<usize>,
    pub red_edges: Vec<Vec<usize>>,
}

impl Violation {
    /// Collects every red k-subset of `vertices`, in colex order.
    pub fn from_vertices(c: &OrderedColoring, kind: ViolationKind, vertices: Vec<usize>) -> Self {
        let red_edges = (0..vertices.len())
            .rev()
            .map(|skip| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect::<Vec<_>>()
            })
            .filter(|e| c.is_red(e))
            .collect();
        Violation { kind, vertices, red_edges }
    }

    pub fn validate(&self, c: &OrderedColoring) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(format!("violation {self}: {msg}")));
        let k = c.uniformity();
        if self.vertices.len() != k + 1 {
            return fail(format!("expected {} vertices", k + 1));
        }
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return fail("vertices are not strictly increasing".into());
        }
        if self.vertices.last().is_some_and(|&v| v >= c.vertex_count()) {
            return fail(format!("vertex out of range 0..{}", c.vertex_count()));
        }
        for (i, e) in self.red_edges.iter().enumerate() {
            if e.len() != k || !e.iter().all(|v| self.vertices.contains(v)) {
                return fail(format!("{e:?} is not a {k}-subset of the vertex set"));
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("{e:?} is not sorted"));
            }
            if self.red_edges[..i].contains(e) {
                return fail(format!("{e:?} listed twice"));
            }
            if !c.is_red(e) {
                return fail(format!("{e:?} is not red"));
            }
        }
        let initial = &self.vertices[..k];
        let initial_red = self.red_edges.iter().any(|e| e == initial);
        if !self.kind.accepts(self.red_edges.len(), initial_red) {
            return fail(format!(
                "{} red edges (initial edge listed: {initial_red}) do not make a {}",
                self.red_edges.len(),
                self.kind
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {:?}", self.kind, self.vertices)
    }
}

/// Either kind of witness, with the flat JSON form shared by every tool.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Embedding(Embedding),
    Violation(Violation),
}

impl Certificate {
    pub fn validate(&self, c: &OrderedColoring) -> Result<()> {
        match self {
            Certificate::Embedding(e) => e.validate(c),
            Certificate::Violation(v) => v.validate(c),
        }
    }

    pub fn color(&self) -> Color {
        match self {
            Certificate::Embedding(e) => e.color,
            Certificate::Violation(_) => Color::Red,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        match self {
            Certificate::Embedding(e) => &e.vertices,
            Certificate::Violation(v) => &v.vertices,
        }
    }

    pub fn to_record(&self) -> CertificateRecord {
        match self {
            Certificate::Embedding(e) => CertificateRecord {
                kind: RecordKind::Embedding,
                pattern: Some(e.pattern),
                violation: None,
                color: e.color,
                vertices: e.vertices.clone(),
                red_edges: None,
            },
            Certificate::Violation(v) => CertificateRecord {
                kind: RecordKind::Violation,
                pattern: None,
                violation: Some(v.kind),
                color: Color::Red,
                vertices: v.vertices.clone(),
                red_edges: Some(v.red_edges.clone()),
            },
        }
    }

    pub fn from_record(r: CertificateRecord) -> Result<Certificate> {
        match r.kind {
            RecordKind::Embedding => {
                let pattern = r
                    .pattern
                    .ok_or_else(|| Error::parse("pattern", "embedding without a pattern"))?;
                pattern.validate()?;
                Ok(Certificate::Embedding(Embedding::new(pattern, r.color, r.vertices)))
            }
            RecordKind::Violation => {
                if r.color != Color::Red {
                    return Err(Error::parse("color", "violations are always red"));
                }
                Ok(Certificate::Violation(Violation {
                    kind: r
                        .violation
                        .ok_or_else(|| Error::parse("violation", "violation without a kind"))?,
                    vertices: r.vertices,
                    red_edges: r.red_edges.unwrap_or_default(),
                }))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_record()).expect("certificate serializes")
    }
}

impl From<Embedding> for Certificate {
    fn from(e: Embedding) -> Self {
        Certificate::Embedding(e)
    }
}

impl From<Violation> for Certificate {
    fn from(v: Violation) -> Self {
        Certificate::Violation(v)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Embedding(e) => e.fmt(f),
            Certificate::Violation(v) => v.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Embedding,
    Violation,
}

/// Serialized certificate:
/// `{"kind", "pattern", "violation", "color", "vertices", "red_edges"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub kind: RecordKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationKind>,
    pub color: Color,
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub red_edges: Option<Vec<Vec<usize>>>,
}
