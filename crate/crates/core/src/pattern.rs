//! Ordered target structures and their edge lists.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered k-graph on vertex positions `0..vertex_count()`.
///
/// CLI spelling: `path:<l>:<s>`, `tight:<k>:<s>`, `broom:<k>:<a>:<m>`, `clique:<k>:<s>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PatternSpec {
    /// Graph on `len` vertices with an edge between positions at distance at most `power`.
    PathPower { power: usize, len: usize },
    /// k-graph whose edges are the windows of `k` consecutive positions.
    TightPath { k: usize, len: usize },
    /// Tight path on `path` vertices plus `bristles` later vertices, each joined
    /// to the last `k - 1` path vertices.
    Broom { k: usize, path: usize, bristles: usize },
    /// Complete k-graph on `len` vertices.
    Clique { k: usize, len: usize },
}

impl PatternSpec {
    pub fn path(len: usize) -> Self {
        PatternSpec::PathPower { power: 1, len }
    }

    pub fn square_path(len: usize) -> Self {
        PatternSpec::PathPower { power: 2, len }
    }

    pub fn tight(k: usize, len: usize) -> Self {
        PatternSpec::TightPath { k, len }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidInput(format!("{self}: {msg}")));
        match *self {
            PatternSpec::PathPower { power, len } => {
                if power < 1 || len < 1 {
                    return bad("path power needs power >= 1 and length >= 1");
                }
            }
            PatternSpec::TightPath { k, len } | PatternSpec::Clique { k, len } => {
                if k < 2 || len < 1 {
                    return bad("needs k >= 2 and length >= 1");
                }
            }
            PatternSpec::Broom { k, path, .. } => {
                if k < 2 || path < 1 {
                    return bad("broom needs k >= 2 and a path of at least one vertex");
                }
            }
        }
        Ok(())
    }

    pub fn uniformity(&self) -> usize {
        match *self {
            PatternSpec::PathPower { .. } => 2,
            PatternSpec::TightPath { k, .. }
            | PatternSpec::Broom { k, .. }
            | PatternSpec::Clique { k, .. } => k,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            PatternSpec::PathPower { len, .. }
            | PatternSpec::TightPath { len, .. }
            | PatternSpec::Clique { len, .. } => len,
            PatternSpec::Broom { path, bristles, .. } => path + bristles,
        }
    }

    /// Edges as sorted position lists, in colex order.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        let mut edges: Vec<Vec<usize>> = match *self {
            PatternSpec::PathPower { power, len } => (0..len)
                .flat_map(|j| (j.saturating_sub(power)..j).map(move |i| vec![i, j]))
                .collect(),
            PatternSpec::TightPath { k, len } => windows(k, len),
            PatternSpec::Broom { k, path, bristles } => {
                let mut e = windows(k, path);
                if path + 1 >= k {
                    let tail: Vec<usize> = (path + 1 - k..path).collect();
                    for w in path..path + bristles {
                        let mut edge = tail.clone();
                        edge.push(w);
                        e.push(edge);
                    }
                }
                e
            }
            PatternSpec::Clique { k, len } => {
                crate::combinatorics::lex_subsets(&(0..len).collect::<Vec<_>>(), k)
            }
        };
        edges.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        edges
    }

    /// An edgeless pattern embeds in any coloring with enough vertices.
    pub fn has_edges(&self) -> bool {
        !self.edges().is_empty()
    }
}

fn windows(k: usize, len: usize) -> Vec<Vec<usize>> {
    if len < k {
        return Vec::new();
    }
    (0..=len - k).map(|j| (j..j + k).collect()).collect()
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PatternSpec::PathPower { power, len } => write!(f, "path:{power}:{len}"),
            PatternSpec::TightPath { k, len } => write!(f, "tight:{k}:{len}"),
            PatternSpec::Broom { k, path, bristles } => write!(f, "broom:{k}:{path}:{bristles}"),
            PatternSpec::Clique { k, len } => write!(f, "clique:{k}:{len}"),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<PatternSpec> {
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let nums: Vec<usize> = parts
            .map(|p| {
                p.parse()
                    .map_err(|_| Error::parse("pattern", format!("`{p}` is not an integer in `{s}`")))
            })
            .collect::<Result<_>>()?;
        let arity = |want: usize| {
            if nums.len() == want {
                Ok(())
            } else {
                Err(Error::parse(
                    "pattern",
                    format!("`{kind}` takes {want} numbers, got {} in `{s}`", nums.len()),
                ))
            }
        };
        let p = match kind {
            "path" => {
                arity(2)?;
                PatternSpec::PathPower { power: nums[0], len: nums[1] }
            }
            "tight" => {
                arity(2)?;
                PatternSpec::TightPath { k: nums[0], len: nums[1] }
            }
            "broom" => {
                arity(3)?;
                PatternSpec::Broom { k: nums[0], path: nums[1], bristles: nums[2] }
            }
            "clique" => {
                arity(2)?;
                PatternSpec::Clique { k: nums[0], len: nums[1] }
            }
            other => {
                return Err(Error::parse(
                    "pattern",
                    format!("unknown pattern kind `{other}` (path, tight, broom, clique)"),
                ))
            }
        };
        p.validate()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_power_edges() {
        let p = PatternSpec::square_path(4);
        assert_eq!(
            p.edges(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(PatternSpec::path(1).edges(), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn clique_equals_full_path_power() {
        for s in 1..7 {
            let clique = PatternSpec::Clique { k: 2, len: s }.edges();
            let power = PatternSpec::PathPower { power: s.max(2) - 1, len: s }.edges();
            assert_eq!(clique, power);
        }
    }

    #[test]
    fn broom_edges() {
        let b = PatternSpec::Broom { k: 3, path: 3, bristles: 2 };
        assert_eq!(b.vertex_count(), 5);
        assert_eq!(b.edges(), vec![vec![0, 1, 2], vec![1, 2, 3], vec![1, 2, 4]]);
        let m0 = PatternSpec::Broom { k: 3, path: 4, bristles: 0 };
        assert_eq!(m0.edges(), PatternSpec::tight(3, 4).edges());
    }

    #[test]
    fn parse_round_trip() {
        for text in ["path:1:3", "path:2:4", "tight:3:4", "broom:3:4:2", "clique:2:5"] {
            let p: PatternSpec = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn parse_errors() {
        assert!("path:1".parse::<PatternSpec>().is_err());
        assert!("path:0:3".parse::<PatternSpec>().is_err());
        assert!("tight:1:3".parse::<PatternSpec>().is_err());
        assert!("star:3:3".parse::<PatternSpec>().is_err());
        assert!("path:a:3".parse::<PatternSpec>().is_err());
    }

    #[test]
    fn json_shape() {
        let p = PatternSpec::Broom { k: 3, path: 4, bristles: 2 };
        let v = serde_json::to_value(p).unwrap();
        assert_eq!(v["type"], "broom");
        assert_eq!(v["bristles"], 2);
        let back: PatternSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
    }
}
