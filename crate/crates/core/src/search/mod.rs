//! Exact small ordered Ramsey numbers by exhaustive search, and minimum
//! monochromatic K4 counts.

mod dfs;
mod multiplicity;

pub use multiplicity::{min_mono_k4, K4Mode, K4Result, EXHAUSTIVE_K4_MAX_N};

use std::sync::atomic::{AtomicBool, AtomicU64};
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::coloring::{Color, OrderedColoring};
use crate::construct::build_block_coloring;
use crate::detect;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;
use dfs::{search_level, Budget, Level};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000_000;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(24 * 60 * 60);
pub const NODE_BUDGET_ENV: &str = "ORAMSEY_NODE_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub time_budget: Duration,
    /// Number of leading assignments enumerated up front; each live prefix is one parallel task.
    pub split_depth: usize,
    /// Worker threads; `None` uses the ambient rayon pool.
    pub threads: Option<usize>,
    /// Try explicit constructions before searching.
    pub seed_witnesses: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: DEFAULT_TIME_BUDGET,
            split_depth: 10,
            threads: None,
            seed_witnesses: true,
        }
    }
}

impl SearchConfig {
    /// Defaults, with the node budget taken from `ORAMSEY_NODE_BUDGET` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = SearchConfig::default();
        if let Ok(v) = std::env::var(NODE_BUDGET_ENV) {
            cfg.node_budget = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("{NODE_BUDGET_ENV} must be a non-negative integer, got {v:?}")))?;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub value: usize,
    /// Coloring on `value - 1` vertices avoiding both patterns.
    pub witness: OrderedColoring,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

impl SearchResult {
    pub fn to_json(&self, witness_file: Option<&str>) -> Value {
        json!({
            "value": self.value,
            "witness_file": witness_file,
            "nodes_explored": self.nodes_explored,
            "wall_time_ms": self.wall_time.as_millis() as u64,
            "certified": true,
        })
    }
}

/// Search stopped before closing; the bounds are certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetExhausted {
    /// The value is at least this.
    pub lower: usize,
    /// The value is at most this, when known.
    pub upper: Option<usize>,
    /// Avoiding coloring on `lower - 1` vertices.
    pub witness: Option<OrderedColoring>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

impl BudgetExhausted {
    pub fn to_json(&self, witness_file: Option<&str>) -> Value {
        json!({
            "value": null,
            "lower": self.lower,
            "upper": self.upper,
            "witness_file": witness_file,
            "nodes_explored": self.nodes_explored,
            "wall_time_ms": self.wall_time.as_millis() as u64,
            "certified": false,
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error("search budget exhausted with bounds [{}, {}]", .0.lower, .0.upper.map_or("?".to_string(), |u| u.to_string()))]
    Budget(Box<BudgetExhausted>),
    #[error(transparent)]
    Core(#[from] Error),
}

/// True iff `c` has no copy of `p` in `color`.
pub fn verify_avoidance(c: &OrderedColoring, p: &PatternSpec, color: Color) -> Result<bool> {
    if p.uniformity() != c.uniformity() {
        return Err(Error::InvalidInput(format!(
            "pattern {p} is {}-uniform but the coloring is {}-uniform",
            p.uniformity(),
            c.uniformity()
        )));
    }
    detect::avoids(c, p, color)
}

fn avoids_both(c: &OrderedColoring, red: &PatternSpec, blue: &PatternSpec) -> Result<bool> {
    Ok(verify_avoidance(c, red, Color::Red)? && verify_avoidance(c, blue, Color::Blue)?)
}

/// Verified avoiding colorings from constructions, largest first.
fn seeds(red: &PatternSpec, blue: &PatternSpec) -> Result<Vec<OrderedColoring>> {
    let k = red.uniformity();
    let mut out = Vec::new();
    if let (PatternSpec::PathPower { power: 1, len: s }, PatternSpec::PathPower { power: 1, len: n }) = (*red, *blue) {
        if s >= 2 && n >= 2 {
            out.push(build_block_coloring(s, n)?);
        }
    }
    // A single color avoids the other color's pattern, and its own below its size.
    if red.vertex_count() > 1 {
        out.push(OrderedColoring::new(k, red.vertex_count() - 1, Color::Red)?);
    }
    if blue.vertex_count() > 1 {
        out.push(OrderedColoring::new(k, blue.vertex_count() - 1, Color::Blue)?);
    }
    let mut checked = Vec::new();
    for c in out {
        if avoids_both(&c, red, blue)? {
            checked.push(c);
        }
    }
    checked.sort_by_key(|c| std::cmp::Reverse(c.vertex_count()));
    Ok(checked)
}

fn validate_pair(red: &PatternSpec, blue: &PatternSpec) -> Result<()> {
    red.validate()?;
    blue.validate()?;
    if red.uniformity() != blue.uniformity() {
        return Err(Error::InvalidInput(format!(
            "patterns must share uniformity, got {red} and {blue}"
        )));
    }
    Ok(())
}

/// Outcome of a search at one vertex count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelOutcome {
    Avoidable(OrderedColoring),
    Unavoidable,
}

/// Whether some coloring on `n` vertices avoids both patterns, by search alone.
pub fn search_at(
    red: &PatternSpec,
    blue: &PatternSpec,
    n: usize,
    cfg: &SearchConfig,
) -> std::result::Result<(LevelOutcome, u64), SearchError> {
    validate_pair(red, blue)?;
    let start = Instant::now();
    let budget = budget(cfg, start);
    let run = || search_level(red, blue, n, cfg.split_depth, &budget);
    let r = in_pool(cfg, run)??;
    match r.level {
        Level::Avoidable(c) => Ok((LevelOutcome::Avoidable(c), r.nodes)),
        Level::Unavoidable => Ok((LevelOutcome::Unavoidable, r.nodes)),
        Level::Exhausted => Err(SearchError::Budget(Box::new(BudgetExhausted {
            lower: 0,
            upper: None,
            witness: None,
            nodes_explored: r.nodes,
            wall_time: start.elapsed(),
        }))),
    }
}

fn budget(cfg: &SearchConfig, start: Instant) -> Budget {
    Budget {
        nodes: AtomicU64::new(0),
        node_limit: cfg.node_budget,
        deadline: start + cfg.time_budget,
        exhausted: AtomicBool::new(false),
    }
}

fn in_pool<T: Send>(cfg: &SearchConfig, f: impl FnOnce() -> T + Send) -> Result<T> {
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
        None => Ok(f()),
    }
}

/// Smallest `N` such that every coloring of the k-subsets of `0..N` has a red
/// copy of `red` or a blue copy of `blue`.
///
/// Each `N` is settled completely before the next, starting just above the
/// largest verified construction.
pub fn exact_ordered_ramsey(
    red: &PatternSpec,
    blue: &PatternSpec,
    cfg: &SearchConfig,
) -> std::result::Result<SearchResult, SearchError> {
    validate_pair(red, blue)?;
    let start = Instant::now();
    let budget = budget(cfg, start);
    let k = red.uniformity();
    let mut nodes = 0u64;
    // Largest vertex count with a known avoiding coloring.
    let mut witness = OrderedColoring::new(k, 0, Color::Blue)?;
    if cfg.seed_witnesses {
        if let Some(best) = seeds(red, blue)?.into_iter().next() {
            witness = best;
        }
    }
    loop {
        let n = witness.vertex_count() + 1;
        let edgeless_hit = [red, blue].iter().any(|p| !p.has_edges() && p.vertex_count() <= n);
        let level = if edgeless_hit {
            Level::Unavoidable
        } else {
            let r = in_pool(cfg, || search_level(red, blue, n, cfg.split_depth, &budget))??;
            nodes += r.nodes;
            r.level
        };
        match level {
            Level::Avoidable(c) => {
                debug_assert!(avoids_both(&c, red, blue)?);
                witness = c;
            }
            Level::Unavoidable => {
                if !avoids_both(&witness, red, blue)? {
                    return Err(Error::Verification("search witness contains a forbidden copy".into()).into());
                }
                return Ok(SearchResult { value: n, witness, nodes_explored: nodes, wall_time: start.elapsed() });
            }
            Level::Exhausted => {
                let has_witness = witness.vertex_count() > 0;
                return Err(SearchError::Budget(Box::new(BudgetExhausted {
                    lower: n,
                    upper: None,
                    witness: has_witness.then_some(witness),
                    nodes_explored: nodes,
                    wall_time: start.elapsed(),
                })));
            }
        }
    }
}
