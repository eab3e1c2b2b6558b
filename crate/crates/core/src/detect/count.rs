use crate::coloring::{Color, OrderedColoring};
use crate::error::{Error, Result};

/// Adjacency bitsets of one color class of a graph coloring.
#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(c: &OrderedColoring, color: Color) -> Result<BitGraph> {
        if c.uniformity() != 2 {
            return Err(Error::InvalidInput(format!(
                "adjacency bitsets need a graph coloring, got k = {}",
                c.uniformity()
            )));
        }
        let n = c.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        let binom = c.binomials();
        for v in 1..n {
            let base = binom.get(v, 2);
            for u in 0..v {
                if c.color_at(base + u) == color {
                    rows[u * words + v / 64] |= 1 << (v % 64);
                    rows[v * words + u / 64] |= 1 << (u % 64);
                }
            }
        }
        Ok(BitGraph { n, words, rows })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has(&self, u: usize, v: usize) -> bool {
        (self.rows[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }
}

/// Clears every bit at position `<= v`.
#[inline]
pub(crate) fn clear_through(set: &mut [u64], v: usize) {
    let w = v / 64;
    for x in &mut set[..w] {
        *x = 0;
    }
    if w < set.len() {
        let keep = if v % 64 == 63 { 0 } else { !0u64 << (v % 64 + 1) };
        set[w] &= keep;
    }
}

#[inline]
pub(crate) fn popcount(set: &[u64]) -> u64 {
    set.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// Positions of the set bits, ascending.
pub(crate) fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + b)
        })
    })
}

/// Number of `q`-sets of each color spanning a monochromatic clique, as `(red, blue)`.
pub fn count_mono_cliques(c: &OrderedColoring, q: usize) -> Result<(u64, u64)> {
    if q != 3 && q != 4 {
        return Err(Error::InvalidInput(format!("clique counting supports q = 3 or 4, got {q}")));
    }
    let red = count_in(&BitGraph::new(c, Color::Red)?, q);
    let blue = count_in(&BitGraph::new(c, Color::Blue)?, q);
    Ok((red, blue))
}

/// Each clique is counted once, from its two smallest vertices.
fn count_in(g: &BitGraph, q: usize) -> u64 {
    let mut common = vec![0u64; g.words()];
    let mut inner = vec![0u64; g.words()];
    let mut total = 0;
    for u in 0..g.vertex_count() {
        for v in ones(g.row(u)).filter(|&v| v > u) {
            for ((c, a), b) in common.iter_mut().zip(g.row(u)).zip(g.row(v)) {
                *c = a & b;
            }
            clear_through(&mut common, v);
            if q == 3 {
                total += popcount(&common);
                continue;
            }
            for x in ones(&common) {
                for ((i, a), b) in inner.iter_mut().zip(&common).zip(g.row(x)) {
                    *i = a & b;
                }
                clear_through(&mut inner, x);
                total += popcount(&inner);
            }
        }
    }
    total
}
