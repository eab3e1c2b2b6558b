//! Depth-first search over colorings of a fixed vertex count.
//!
//! k-subsets are colored in colex order, red before blue. After each
//! assignment only the copies whose colex-largest edge is the new edge are
//! examined, so the check is proportional to the number of new copies.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::combinatorics::{lex_subsets, next_colex, BinomialTable};
use crate::coloring::{Color, OrderedColoring};
use crate::detect;
use crate::error::Result;
use crate::pattern::PatternSpec;

/// A window that closes at a given edge: the path state `src` extends to `dst`
/// once every edge in `others` has the tracker's color.
struct Window {
    src: u32,
    dst: u32,
    others: std::ops::Range<u32>,
}

/// Longest monochromatic path of `q`-vertex windows ending at each `(q-1)`-tuple.
///
/// With window size `k` this is a tight path, with `power + 1` on graphs a
/// path power, and with a single window of size `s` a clique.
struct WindowTracker {
    color: Color,
    len: u8,
    start: u8,
    by_edge: Vec<std::ops::Range<u32>>,
    windows: Vec<Window>,
    others: Vec<u32>,
    tuples: usize,
}

impl WindowTracker {
    fn new(k: usize, n: usize, q: usize, len: usize, color: Color) -> Result<Self> {
        let binom = BinomialTable::new(n.max(q), q)?;
        let edges = if n >= k { binom.get(n, k) } else { 0 };
        let mut by_edge = Vec::with_capacity(edges);
        let mut windows = Vec::new();
        let mut others = Vec::new();
        if n >= k {
            let mut e: Vec<usize> = (0..k).collect();
            loop {
                let from = windows.len() as u32;
                let below: Vec<usize> = (0..e[0]).collect();
                for t in lex_subsets(&below, q - k) {
                    let mut w = t.clone();
                    w.extend(&e);
                    let lo = others.len() as u32;
                    for sub in lex_subsets(&w, k) {
                        if sub != e {
                            others.push(binom.rank(&sub) as u32);
                        }
                    }
                    let src = if q >= 2 { binom.rank(&w[..q - 1]) } else { 0 };
                    let dst = if q >= 2 { binom.rank(&w[1..]) } else { 0 };
                    windows.push(Window { src: src as u32, dst: dst as u32, others: lo..others.len() as u32 });
                }
                by_edge.push(from..windows.len() as u32);
                if !next_colex(&mut e, n) {
                    break;
                }
            }
        }
        let tuples = if q >= 2 { binom.get(n, q - 1) } else { 1 };
        Ok(WindowTracker {
            color,
            len: len as u8,
            start: (q - 1) as u8,
            by_edge,
            windows,
            others,
            tuples,
        })
    }
}

enum Tracker {
    Window(WindowTracker),
    /// Runs the full detector whenever a vertex has all its edges colored.
    Detect { pattern: PatternSpec, color: Color },
}

fn tracker(pattern: &PatternSpec, color: Color, n: usize) -> Result<Tracker> {
    let k = pattern.uniformity();
    Ok(match *pattern {
        PatternSpec::PathPower { power, len } if pattern.has_edges() => {
            let q = (power + 1).min(len);
            Tracker::Window(WindowTracker::new(2, n, q, len, color)?)
        }
        PatternSpec::TightPath { len, .. } if pattern.has_edges() => {
            Tracker::Window(WindowTracker::new(k, n, k, len, color)?)
        }
        PatternSpec::Clique { len, .. } if pattern.has_edges() => {
            Tracker::Window(WindowTracker::new(k, n, len, len, color)?)
        }
        _ => Tracker::Detect { pattern: *pattern, color },
    })
}

/// Mutable search state for one vertex count.
struct State<'a> {
    k: usize,
    colors: Vec<Color>,
    trackers: &'a [Tracker],
    lens: Vec<Vec<u8>>,
    undo: Vec<(u8, u32, u8)>,
    /// `vertex_done[r]`: vertex whose last edge is `r`, if any.
    vertex_done: &'a [Option<usize>],
}

impl<'a> State<'a> {
    fn new(k: usize, trackers: &'a [Tracker], vertex_done: &'a [Option<usize>]) -> Self {
        let lens = trackers
            .iter()
            .map(|t| match t {
                Tracker::Window(w) => vec![w.start; w.tuples],
                Tracker::Detect { .. } => Vec::new(),
            })
            .collect();
        State { k, colors: Vec::new(), trackers, lens, undo: Vec::new(), vertex_done }
    }

    /// Colors the next edge; false (with nothing changed) if that completes a forbidden copy.
    fn push(&mut self, color: Color) -> bool {
        let r = self.colors.len();
        self.colors.push(color);
        let mark = self.undo.len();
        for (i, t) in self.trackers.iter().enumerate() {
            let ok = match t {
                Tracker::Window(w) if w.color == color => {
                    let lens = &mut self.lens[i];
                    let mut ok = true;
                    for win in &w.windows[w.by_edge[r].start as usize..w.by_edge[r].end as usize] {
                        let others = &w.others[win.others.start as usize..win.others.end as usize];
                        if others.iter().any(|&o| self.colors[o as usize] != color) {
                            continue;
                        }
                        let next = lens[win.src as usize] + 1;
                        if next >= w.len {
                            ok = false;
                            break;
                        }
                        let dst = &mut lens[win.dst as usize];
                        if next > *dst {
                            self.undo.push((i as u8, win.dst, *dst));
                            *dst = next;
                        }
                    }
                    ok
                }
                Tracker::Detect { pattern, color: want } => match self.vertex_done[r] {
                    Some(v) if pattern.vertex_count() <= v + 1 => {
                        let prefix = self.coloring(v + 1);
                        detect::find(&prefix, pattern, *want).map(|f| f.is_none()).unwrap_or(false)
                    }
                    _ => true,
                },
                _ => true,
            };
            if !ok {
                self.rollback(mark);
                self.colors.pop();
                return false;
            }
        }
        true
    }

    fn pop(&mut self, mark: usize) {
        self.rollback(mark);
        self.colors.pop();
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (i, dst, old) = self.undo.pop().expect("undo entry");
            self.lens[i as usize][dst as usize] = old;
        }
    }

    fn coloring(&self, n: usize) -> OrderedColoring {
        let edges = if n >= self.k { BinomialTable::new(n, self.k).map(|b| b.get(n, self.k)).unwrap_or(0) } else { 0 };
        let mut c = OrderedColoring::new(self.k, n, Color::Blue).expect("small coloring");
        for (r, &col) in self.colors[..edges].iter().enumerate() {
            c.set_at(r, col);
        }
        c
    }
}

/// Shared stopping conditions.
pub(super) struct Budget {
    pub nodes: AtomicU64,
    pub node_limit: u64,
    pub deadline: Instant,
    pub exhausted: AtomicBool,
}

impl Budget {
    const BATCH: u64 = 1 << 14;

    fn charge(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local % Self::BATCH == 0 {
            let total = self.nodes.fetch_add(Self::BATCH, Ordering::Relaxed) + Self::BATCH;
            if total > self.node_limit || Instant::now() > self.deadline {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn settle(&self, local: u64) {
        self.nodes.fetch_add(local % Self::BATCH, Ordering::Relaxed);
    }
}

pub(super) enum Level {
    /// An avoiding coloring on `n` vertices.
    Avoidable(OrderedColoring),
    /// Every coloring contains a copy.
    Unavoidable,
    Exhausted,
}

pub(super) struct LevelResult {
    pub level: Level,
    /// Deterministic count: split nodes plus every subtree up to the first witness.
    pub nodes: u64,
}

enum Sub {
    Found(Vec<Color>),
    Closed,
    Stopped,
}

/// Decides whether some coloring of `n` vertices avoids both patterns.
pub(super) fn search_level(
    red: &PatternSpec,
    blue: &PatternSpec,
    n: usize,
    split_depth: usize,
    budget: &Budget,
) -> Result<LevelResult> {
    let k = red.uniformity();
    let edges = if n >= k { BinomialTable::new(n, k)?.get(n, k) } else { 0 };
    let trackers = [tracker(red, Color::Red, n)?, tracker(blue, Color::Blue, n)?];
    let vertex_done: Vec<Option<usize>> = {
        let mut v = vec![None; edges];
        if n >= k {
            let binom = BinomialTable::new(n, k)?;
            for top in k - 1..n {
                v[binom.get(top + 1, k) - 1] = Some(top);
            }
        }
        v
    };

    // Live prefixes of length `split`, in DFS order.
    let split = split_depth.min(edges);
    let mut prefixes: Vec<Vec<Color>> = Vec::new();
    let mut split_nodes = 0u64;
    {
        let mut st = State::new(k, &trackers, &vertex_done);
        collect_prefixes(&mut st, split, &mut prefixes, &mut split_nodes);
    }
    if prefixes.is_empty() {
        budget.nodes.fetch_add(split_nodes, Ordering::Relaxed);
        return Ok(LevelResult { level: Level::Unavoidable, nodes: split_nodes });
    }

    let first_found = AtomicUsize::new(usize::MAX);
    let results: Vec<(Sub, u64)> = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, prefix)| {
            if i > first_found.load(Ordering::Relaxed) {
                return (Sub::Stopped, 0);
            }
            let mut st = State::new(k, &trackers, &vertex_done);
            for &c in prefix {
                let ok = st.push(c);
                debug_assert!(ok, "prefixes are live");
            }
            let mut local = 0u64;
            let found = dfs(&mut st, edges, budget, &mut local, &|| i > first_found.load(Ordering::Relaxed));
            budget.settle(local);
            let sub = match found {
                Some(true) => {
                    first_found.fetch_min(i, Ordering::Relaxed);
                    Sub::Found(st.colors.clone())
                }
                Some(false) => Sub::Closed,
                None => Sub::Stopped,
            };
            (sub, local)
        })
        .collect();

    budget.nodes.fetch_add(split_nodes, Ordering::Relaxed);
    let mut nodes = split_nodes;
    for (sub, local) in results {
        nodes += local;
        match sub {
            Sub::Found(colors) => {
                let mut c = OrderedColoring::new(k, n, Color::Blue)?;
                for (r, col) in colors.into_iter().enumerate() {
                    c.set_at(r, col);
                }
                return Ok(LevelResult { level: Level::Avoidable(c), nodes });
            }
            Sub::Closed => {}
            Sub::Stopped => return Ok(LevelResult { level: Level::Exhausted, nodes }),
        }
    }
    Ok(LevelResult { level: Level::Unavoidable, nodes })
}

fn collect_prefixes(st: &mut State, split: usize, out: &mut Vec<Vec<Color>>, nodes: &mut u64) {
    if st.colors.len() == split {
        out.push(st.colors.clone());
        return;
    }
    for color in [Color::Red, Color::Blue] {
        *nodes += 1;
        let mark = st.undo.len();
        if st.push(color) {
            collect_prefixes(st, split, out, nodes);
            st.pop(mark);
        }
    }
}

/// `Some(true)`: `st.colors` is a full avoiding coloring. `Some(false)`: the subtree is closed.
/// `None`: stopped by the budget or because an earlier subtree already succeeded.
fn dfs(st: &mut State, edges: usize, budget: &Budget, local: &mut u64, cancelled: &dyn Fn() -> bool) -> Option<bool> {
    if st.colors.len() == edges {
        return Some(true);
    }
    for color in [Color::Red, Color::Blue] {
        if !budget.charge(local) {
            return None;
        }
        if *local % Budget::BATCH == 0 && cancelled() {
            return None;
        }
        let mark = st.undo.len();
        if st.push(color) {
            match dfs(st, edges, budget, local, cancelled) {
                Some(true) => return Some(true),
                Some(false) => st.pop(mark),
                None => return None,
            }
        }
    }
    Some(false)
}
