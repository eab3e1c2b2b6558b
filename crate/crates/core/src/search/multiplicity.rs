use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::combinatorics::lex_subsets;
use crate::coloring::{Color, OrderedColoring};
use crate::detect::count_mono_cliques;
use crate::error::{Error, Result};

/// Largest `N` for exhaustive mode: `2^21` colorings at `N = 7`.
pub const EXHAUSTIVE_K4_MAX_N: usize = 7;
const HEURISTIC_MAX_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K4Mode {
    Exhaustive,
    /// Random restarts, each followed by single-edge-flip descent.
    Heuristic { seed: u64, restarts: usize, iterations: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4Result {
    /// Monochromatic K4 count of `witness`.
    pub count: u64,
    pub witness: OrderedColoring,
    /// True for exhaustive mode, where `count` is the minimum; otherwise an upper bound on it.
    pub exact: bool,
}

/// Fewest monochromatic K4s over colorings of the edges of `K_n`.
pub fn min_mono_k4(n: usize, mode: K4Mode) -> Result<K4Result> {
    let result = match mode {
        K4Mode::Exhaustive => exhaustive(n)?,
        K4Mode::Heuristic { seed, restarts, iterations } => heuristic(n, seed, restarts, iterations)?,
    };
    let (red, blue) = count_mono_cliques(&result.witness, 4)?;
    if red + blue != result.count {
        return Err(Error::Verification(format!(
            "witness has {} monochromatic K4s, search reported {}",
            red + blue,
            result.count
        )));
    }
    Ok(result)
}

fn exhaustive(n: usize) -> Result<K4Result> {
    if n > EXHAUSTIVE_K4_MAX_N {
        return Err(Error::Resource(format!(
            "exhaustive K4 minimisation is limited to N <= {EXHAUSTIVE_K4_MAX_N}, got {n}"
        )));
    }
    let edges = n * n.saturating_sub(1) / 2;
    let rank = |u: usize, v: usize| v * (v - 1) / 2 + u;
    let verts: Vec<usize> = (0..n).collect();
    let masks: Vec<u32> = lex_subsets(&verts, 4)
        .iter()
        .map(|q| {
            let mut m = 0u32;
            for i in 0..4 {
                for j in i + 1..4 {
                    m |= 1 << rank(q[i], q[j]);
                }
            }
            m
        })
        .collect();
    let count = |x: u32| masks.iter().filter(|&&m| x & m == m || x & m == 0).count() as u64;
    // Ties go to the smallest mask so the witness does not depend on scheduling.
    let (best, mask) = (0u32..1 << edges)
        .into_par_iter()
        .map(|x| (count(x), x))
        .min()
        .expect("at least one coloring");
    let mut witness = OrderedColoring::new(2, n, Color::Blue)?;
    for r in 0..edges {
        witness.set_at(r, Color::from_bit(mask >> r & 1 == 1));
    }
    Ok(K4Result { count: best, witness, exact: true })
}

/// Red adjacency as one word per vertex.
struct Graph {
    n: usize,
    red: Vec<u64>,
}

impl Graph {
    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn row(&self, v: usize, color: Color) -> u64 {
        match color {
            Color::Red => self.red[v],
            Color::Blue => !self.red[v] & self.full() & !(1 << v),
        }
    }

    fn color(&self, u: usize, v: usize) -> Color {
        Color::from_bit(self.red[u] >> v & 1 == 1)
    }

    fn flip(&mut self, u: usize, v: usize) {
        self.red[u] ^= 1 << v;
        self.red[v] ^= 1 << u;
    }

    /// K4s through `uv` that are monochromatic in `color`, ignoring the color of `uv`.
    fn through(&self, u: usize, v: usize, color: Color) -> u64 {
        let common = self.row(u, color) & self.row(v, color);
        let mut rest = common;
        let mut twice = 0u64;
        while rest != 0 {
            let x = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += u64::from((self.row(x, color) & common).count_ones());
        }
        twice / 2
    }

    fn count(&self) -> u64 {
        let mut total = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                total += self.through(u, v, self.color(u, v));
            }
        }
        // Each K4 has six edges.
        total / 6
    }

    fn to_coloring(&self) -> Result<OrderedColoring> {
        OrderedColoring::from_fn(2, self.n, |e| self.color(e[0], e[1]))
    }
}

fn heuristic(n: usize, seed: u64, restarts: usize, iterations: usize) -> Result<K4Result> {
    if n > HEURISTIC_MAX_N {
        return Err(Error::Resource(format!("heuristic K4 minimisation is limited to N <= {HEURISTIC_MAX_N}, got {n}")));
    }
    if n < 2 || restarts == 0 {
        return Ok(K4Result { count: 0, witness: OrderedColoring::new(2, n, Color::Blue)?, exact: n < 4 });
    }
    let runs: Vec<(u64, Vec<u64>)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            let mut g = Graph { n, red: vec![0; n] };
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen::<bool>() {
                        g.flip(u, v);
                    }
                }
            }
            let mut current = g.count();
            let mut best = (current, g.red.clone());
            for _ in 0..iterations {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                let now = g.color(u, v);
                let delta = g.through(u, v, now.flip()) as i64 - g.through(u, v, now) as i64;
                if delta <= 0 {
                    g.flip(u, v);
                    current = (current as i64 + delta) as u64;
                    if current < best.0 {
                        best = (current, g.red.clone());
                    }
                }
            }
            best
        })
        .collect();
    let (count, red) = runs.into_iter().min().expect("at least one restart");
    let g = Graph { n, red };
    Ok(K4Result { count, witness: g.to_coloring()?, exact: false })
}
