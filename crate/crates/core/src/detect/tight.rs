use std::collections::HashMap;

use super::{check_state_count, edgeless};
use crate::certificate::Embedding;
use crate::combinatorics::{next_colex, next_lex, BinomialTable};
use crate::coloring::{Color, OrderedColoring};
use crate::error::Result;
use crate::pattern::PatternSpec;

const NONE: i32 = -1;

/// Ranks for a (k-1)-tuple `t` and the k-set / successor tuple obtained by appending `w`.
struct Shift<'a> {
    binom: &'a BinomialTable,
    k: usize,
    edge: usize,
    next: usize,
}

impl<'a> Shift<'a> {
    fn new(binom: &'a BinomialTable, t: &[usize]) -> Self {
        let k = t.len() + 1;
        let edge = (0..k - 1).map(|i| binom.get(t[i], i + 1)).sum();
        let next = (1..k - 1).map(|i| binom.get(t[i], i)).sum();
        Shift { binom, k, edge, next }
    }

    /// Colex rank of `t + [w]` as a k-set.
    #[inline]
    fn edge(&self, w: usize) -> usize {
        self.edge + self.binom.get(w, self.k)
    }

    /// Colex rank of `t[1..] + [w]` as a (k-1)-set.
    #[inline]
    fn next(&self, w: usize) -> usize {
        self.next + self.binom.get(w, self.k - 1)
    }
}

fn state_count(c: &OrderedColoring) -> Result<usize> {
    let k = c.uniformity();
    let n = c.vertex_count();
    let states = if n + 1 >= k { c.binomials().get(n, k - 1) } else { 0 };
    check_state_count(states, "tight path")?;
    Ok(states)
}

/// Calls `f` on every (k-1)-subset of `0..n`, grouped by decreasing maximum.
fn for_each_tuple_top_down(k: usize, n: usize, mut f: impl FnMut(&[usize])) {
    let mut t = vec![0usize; k - 1];
    for top in (k.saturating_sub(2)..n).rev() {
        let mut head: Vec<usize> = (0..k - 2).collect();
        loop {
            t[..k - 2].copy_from_slice(&head);
            t[k - 2] = top;
            f(&t);
            if k == 2 || !next_colex(&mut head, top) {
                break;
            }
        }
    }
}

/// `g[rank(T)]`: most vertices that can follow the (k-1)-tuple T on a tight path of `color`.
fn forward_lengths(c: &OrderedColoring, color: Color) -> Result<Vec<i32>> {
    let k = c.uniformity();
    let n = c.vertex_count();
    let binom = c.binomials();
    let mut g = vec![0i32; state_count(c)?];
    for_each_tuple_top_down(k, n, |t| {
        let s = Shift::new(binom, t);
        let top = t[k - 2];
        let best = (top + 1..n)
            .filter(|&w| c.color_at(s.edge(w)) == color)
            .map(|w| g[s.next(w)] + 1)
            .max()
            .unwrap_or(0);
        g[binom.rank(t)] = best;
    });
    Ok(g)
}

/// First (k-1)-subset in lex order satisfying `ok`.
fn first_tuple(c: &OrderedColoring, mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let k = c.uniformity();
    let n = c.vertex_count();
    if n + 1 < k {
        return None;
    }
    let mut t: Vec<usize> = (0..k - 1).collect();
    loop {
        if ok(&t) {
            return Some(t);
        }
        if !next_lex(&mut t, n) {
            return None;
        }
    }
}

/// Lexicographically smallest monochromatic tight path on `len` vertices.
pub fn find_mono_tight_path(c: &OrderedColoring, len: usize, color: Color) -> Result<Option<Embedding>> {
    let k = c.uniformity();
    let pattern = PatternSpec::tight(k, len);
    pattern.validate()?;
    if let Some(found) = edgeless(c, pattern, color) {
        return Ok(found);
    }
    if pattern.vertex_count() > c.vertex_count() {
        return Ok(None);
    }
    let g = forward_lengths(c, color)?;
    let binom = c.binomials();
    let n = c.vertex_count();
    let need = (len - (k - 1)) as i32;
    let Some(mut t) = first_tuple(c, |t| g[binom.rank(t)] >= need) else {
        return Ok(None);
    };
    let mut out = t.clone();
    while out.len() < len {
        let need = (len - out.len() - 1) as i32;
        let s = Shift::new(binom, &t);
        let w = (t[k - 2] + 1..n)
            .find(|&w| c.color_at(s.edge(w)) == color && g[s.next(w)] >= need)
            .expect("DP value guarantees a continuation");
        out.push(w);
        t.remove(0);
        t.push(w);
    }
    Ok(Some(Embedding::new(pattern, color, out)))
}

/// Lexicographically smallest monochromatic broom: a tight path on `path`
/// vertices followed by `bristles` vertices that each close an edge with the
/// last `k - 1` path vertices.
pub fn find_mono_broom(
    c: &OrderedColoring,
    path: usize,
    bristles: usize,
    color: Color,
) -> Result<Option<Embedding>> {
    let k = c.uniformity();
    let pattern = PatternSpec::Broom { k, path, bristles };
    pattern.validate()?;
    if let Some(found) = edgeless(c, pattern, color) {
        return Ok(found);
    }
    if pattern.vertex_count() > c.vertex_count() {
        return Ok(None);
    }
    let n = c.vertex_count();
    let binom = c.binomials();
    let states = state_count(c)?;

    // Bristle candidates of each tuple, then the longest continuation ending at a tuple with enough of them.
    let mut good = vec![false; states];
    for_each_tuple_top_down(k, n, |t| {
        let s = Shift::new(binom, t);
        let count = (t[k - 2] + 1..n).filter(|&w| c.color_at(s.edge(w)) == color).count();
        good[binom.rank(t)] = count >= bristles;
    });
    let mut reach = vec![NONE; states];
    for_each_tuple_top_down(k, n, |t| {
        let s = Shift::new(binom, t);
        let r = binom.rank(t);
        let here = if good[r] { 0 } else { NONE };
        reach[r] = (t[k - 2] + 1..n)
            .filter(|&w| c.color_at(s.edge(w)) == color)
            .map(|w| reach[s.next(w)])
            .filter(|&x| x != NONE)
            .map(|x| x + 1)
            .fold(here, i32::max);
    });

    let mut search = BroomSearch { c, color, good: &good, reach: &reach, memo: HashMap::new() };
    let steps = path - (k - 1);
    let Some(mut t) = first_tuple(c, |t| search.exact(t, steps)) else {
        return Ok(None);
    };
    let mut out = t.clone();
    for left in (0..steps).rev() {
        let s = Shift::new(binom, &t);
        let w = (t[k - 2] + 1..n)
            .find(|&w| {
                c.color_at(s.edge(w)) == color && {
                    let mut next = t[1..].to_vec();
                    next.push(w);
                    search.exact(&next, left)
                }
            })
            .expect("reachability guarantees a continuation");
        out.push(w);
        t.remove(0);
        t.push(w);
    }
    let s = Shift::new(binom, &t);
    out.extend(
        (t[k - 2] + 1..n)
            .filter(|&w| c.color_at(s.edge(w)) == color)
            .take(bristles),
    );
    Ok(Some(Embedding::new(pattern, color, out)))
}

/// Exact-length reachability of a tuple with enough bristles.
struct BroomSearch<'a> {
    c: &'a OrderedColoring,
    color: Color,
    good: &'a [bool],
    reach: &'a [i32],
    memo: HashMap<(usize, usize), bool>,
}

impl BroomSearch<'_> {
    /// Whether exactly `steps` more path vertices after `t` can end at a good tuple.
    fn exact(&mut self, t: &[usize], steps: usize) -> bool {
        let binom = self.c.binomials();
        let r = binom.rank(t);
        if steps == 0 {
            return self.good[r];
        }
        if self.reach[r] < steps as i32 {
            return false;
        }
        if let Some(&known) = self.memo.get(&(r, steps)) {
            return known;
        }
        let k = t.len() + 1;
        let n = self.c.vertex_count();
        let s = Shift::new(binom, t);
        let mut next = t[1..].to_vec();
        next.push(0);
        let mut found = false;
        for w in t[k - 2] + 1..n {
            if self.c.color_at(s.edge(w)) != self.color {
                continue;
            }
            next[k - 2] = w;
            if self.exact(&next, steps - 1) {
                found = true;
                break;
            }
        }
        self.memo.insert((r, steps), found);
        found
    }
}
