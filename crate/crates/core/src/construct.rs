//! Explicit lower-bound colorings and the permutation-to-coloring bridge.
//!
//! Every `build_*` generator checks its own avoidance properties with the
//! detectors and refuses to return a coloring that fails them.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::ViolationKind;
use crate::coloring::{Color, OrderedColoring};
use crate::detect::Target;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Largest `n` accepted by [`build_eh_c_lower`]; `n = 10` would mean scanning C(256, 5) 5-sets.
pub const EH_C_MAX_N: usize = 9;

/// A named generator together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum Construction {
    /// `n - 1` consecutive blocks of `s - 1` vertices, red inside blocks.
    Block { s: usize, n: usize },
    /// 3-uniform coloring on `2n - 3` vertices with no blue tight path on `n`
    /// vertices and no 4-set spanning three red triples.
    EhB { n: usize },
    /// 4-uniform coloring on `2^(n-2)` vertices with no blue tight path on `n`
    /// vertices and no 5-set spanning four red 4-sets.
    EhC { n: usize },
    /// Edge `ij` is red iff `seq[i] < seq[j]`.
    Sequence { seq: Vec<i64> },
}

impl Construction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Construction::Block { s, n } if s < 2 || n < 2 => {
                Err(Error::InvalidInput(format!("block coloring needs s, n >= 2, got s = {s}, n = {n}")))
            }
            Construction::EhB { n } if n < 3 => Err(Error::InvalidInput(format!("eh-b needs n >= 3, got {n}"))),
            Construction::EhC { n } if n < 2 => Err(Error::InvalidInput(format!("eh-c needs n >= 2, got {n}"))),
            Construction::EhC { n } if n > EH_C_MAX_N => Err(Error::Resource(format!(
                "eh-c with n = {n} has 2^{} vertices; verification is limited to n <= {EH_C_MAX_N}",
                n - 2
            ))),
            Construction::Sequence { ref seq } => check_distinct(seq),
            _ => Ok(()),
        }
    }

    /// The coloring, without verification.
    pub fn generate(&self) -> Result<OrderedColoring> {
        self.validate()?;
        match *self {
            Construction::Block { s, n } => {
                let block = s - 1;
                OrderedColoring::from_fn(2, block * (n - 1), |e| Color::from_bit(e[0] / block == e[1] / block))
            }
            Construction::EhB { n } => OrderedColoring::from_fn(3, 2 * n - 3, |t| {
                // The triple contains a twin pair {2i, 2i+1} and a larger vertex.
                Color::from_bit(t[0] % 2 == 0 && t[1] == t[0] + 1)
            }),
            Construction::EhC { n } => OrderedColoring::from_fn(4, 1 << (n - 2), |q| {
                // Halves at every scale are aligned blocks, so the deciding split
                // is the highest bit in which the set's elements differ.
                let bit = usize::BITS - 1 - (q[0] ^ q[3]).leading_zeros();
                let high = q.iter().filter(|&&x| x >> bit & 1 == 1).count();
                Color::from_bit(high == 2)
            }),
            Construction::Sequence { ref seq } => sequence_to_coloring(seq),
        }
    }

    /// Structures the coloring must avoid.
    pub fn targets(&self) -> Result<Vec<Target>> {
        Ok(match *self {
            Construction::Block { s, n } => vec![
                Target::pattern(PatternSpec::path(s), Color::Red),
                Target::pattern(PatternSpec::path(n), Color::Blue),
            ],
            Construction::EhB { n } => vec![
                Target::pattern(PatternSpec::tight(3, n), Color::Blue),
                Target::violation(ViolationKind::TRed(3)),
            ],
            Construction::EhC { n } => vec![
                Target::pattern(PatternSpec::tight(4, n), Color::Blue),
                Target::violation(ViolationKind::TRed(4)),
            ],
            Construction::Sequence { ref seq } => {
                let (lis, lds) = longest_monotone(seq)?;
                vec![
                    Target::pattern(PatternSpec::path(lis + 1), Color::Red),
                    Target::pattern(PatternSpec::path(lds + 1), Color::Blue),
                ]
            }
        })
    }

    /// Generates the coloring and checks every target is absent.
    pub fn build(&self) -> Result<OrderedColoring> {
        let c = self.generate()?;
        verify_avoids(&c, &self.targets()?)?;
        Ok(c)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Block { s, n } => write!(f, "block(s={s}, n={n})"),
            Construction::EhB { n } => write!(f, "eh-b(n={n})"),
            Construction::EhC { n } => write!(f, "eh-c(n={n})"),
            Construction::Sequence { seq } => write!(f, "sequence({} entries)", seq.len()),
        }
    }
}

/// Fails with the first certificate found for any of `targets`.
pub fn verify_avoids(c: &OrderedColoring, targets: &[Target]) -> Result<()> {
    for t in targets {
        if let Some(found) = t.find(c)? {
            return Err(Error::Verification(format!("coloring contains {t}: {found}")));
        }
    }
    Ok(())
}

pub fn build_block_coloring(s: usize, n: usize) -> Result<OrderedColoring> {
    Construction::Block { s, n }.build()
}

pub fn build_eh_b_lower(n: usize) -> Result<OrderedColoring> {
    Construction::EhB { n }.build()
}

pub fn build_eh_c_lower(n: usize) -> Result<OrderedColoring> {
    Construction::EhC { n }.build()
}

fn check_distinct(seq: &[i64]) -> Result<()> {
    let mut seen = HashSet::with_capacity(seq.len());
    for &x in seq {
        if !seen.insert(x) {
            return Err(Error::InvalidInput(format!("sequence entry {x} appears twice")));
        }
    }
    Ok(())
}

/// Edge `ij` (`i < j`) is red iff `seq[i] < seq[j]`.
pub fn sequence_to_coloring(seq: &[i64]) -> Result<OrderedColoring> {
    check_distinct(seq)?;
    OrderedColoring::from_fn(2, seq.len(), |e| Color::from_bit(seq[e[0]] < seq[e[1]]))
}

/// Lengths of the longest increasing and longest decreasing subsequences.
pub fn longest_monotone(seq: &[i64]) -> Result<(usize, usize)> {
    check_distinct(seq)?;
    let n = seq.len();
    let mut inc = vec![1usize; n];
    let mut dec = vec![1usize; n];
    for j in 0..n {
        for i in 0..j {
            if seq[i] < seq[j] {
                inc[j] = inc[j].max(inc[i] + 1);
            } else {
                dec[j] = dec[j].max(dec[i] + 1);
            }
        }
    }
    Ok((
        inc.iter().copied().max().unwrap_or(0),
        dec.iter().copied().max().unwrap_or(0),
    ))
}
