use super::count::{clear_through, ones, popcount, BitGraph};
use super::edgeless;
use crate::certificate::Embedding;
use crate::combinatorics::lex_subsets;
use crate::coloring::{Color, OrderedColoring};
use crate::error::Result;
use crate::pattern::PatternSpec;

/// Lexicographically smallest monochromatic complete k-graph on `len` vertices.
pub fn find_mono_clique(c: &OrderedColoring, len: usize, color: Color) -> Result<Option<Embedding>> {
    let k = c.uniformity();
    let pattern = PatternSpec::Clique { k, len };
    pattern.validate()?;
    if let Some(found) = edgeless(c, pattern, color) {
        return Ok(found);
    }
    if pattern.vertex_count() > c.vertex_count() {
        return Ok(None);
    }
    let found = if k == 2 {
        let g = BitGraph::new(c, color)?;
        let mut all = vec![0u64; g.words()];
        for v in 0..c.vertex_count() {
            all[v / 64] |= 1 << (v % 64);
        }
        let mut chosen = Vec::with_capacity(len);
        graph_search(&g, &all, len, &mut chosen).then_some(chosen)
    } else {
        let cands: Vec<usize> = (0..c.vertex_count()).collect();
        let mut chosen = Vec::with_capacity(len);
        let mut buf = vec![0usize; k];
        hyper_search(c, color, &cands, len, &mut chosen, &mut buf).then_some(chosen)
    };
    Ok(found.map(|v| Embedding::new(pattern, color, v)))
}

/// Candidates are the common neighbours of `chosen` above its last vertex.
fn graph_search(g: &BitGraph, cands: &[u64], len: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == len {
        return true;
    }
    let need = (len - chosen.len()) as u64;
    if popcount(cands) < need {
        return false;
    }
    let mut next = vec![0u64; cands.len()];
    for v in ones(cands) {
        for ((x, a), b) in next.iter_mut().zip(cands).zip(g.row(v)) {
            *x = a & b;
        }
        clear_through(&mut next, v);
        chosen.push(v);
        if graph_search(g, &next, len, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Candidates `x` are those for which every k-set of `chosen + [x]` through `x` has the color.
fn hyper_search(
    c: &OrderedColoring,
    color: Color,
    cands: &[usize],
    len: usize,
    chosen: &mut Vec<usize>,
    buf: &mut [usize],
) -> bool {
    if chosen.len() == len {
        return true;
    }
    let k = c.uniformity();
    let need = len - chosen.len();
    for (i, &v) in cands.iter().enumerate() {
        if cands.len() - i < need {
            return false;
        }
        let rest = &cands[i + 1..];
        let next: Vec<usize> = if chosen.len() + 2 < k {
            rest.to_vec()
        } else {
            let bases = lex_subsets(chosen, k - 2);
            rest.iter()
                .copied()
                .filter(|&x| {
                    bases.iter().all(|b| {
                        buf[..k - 2].copy_from_slice(b);
                        buf[k - 2] = v;
                        buf[k - 1] = x;
                        c.get(buf) == color
                    })
                })
                .collect()
        };
        chosen.push(v);
        if hyper_search(c, color, &next, len, chosen, buf) {
            return true;
        }
        chosen.pop();
    }
    false
}
