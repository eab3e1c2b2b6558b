use super::count::{clear_through, ones, BitGraph};
use super::{check_state_count, edgeless, find_mono_clique, require_uniformity};
use crate::certificate::Embedding;
use crate::combinatorics::{binomial, next_colex, next_lex, BinomialTable};
use crate::coloring::{Color, OrderedColoring};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

const NONE: i32 = -1;

/// Lexicographically smallest monochromatic copy of the `power`-th power of a path on `len` vertices.
pub fn find_mono_path_power(
    c: &OrderedColoring,
    power: usize,
    len: usize,
    color: Color,
) -> Result<Option<Embedding>> {
    let pattern = PatternSpec::PathPower { power, len };
    pattern.validate()?;
    require_uniformity(c, 2, "path power")?;
    if let Some(found) = edgeless(c, pattern, color) {
        return Ok(found);
    }
    if pattern.vertex_count() > c.vertex_count() {
        return Ok(None);
    }
    if len <= power + 1 {
        let clique = find_mono_clique(c, len, color)?;
        return Ok(clique.map(|e| Embedding::new(pattern, color, e.vertices)));
    }
    let g = BitGraph::new(c, color)?;
    let vertices = match power {
        1 => path(&g, len),
        2 => square_path(&g, len)?,
        _ => find_path_power_tuples(&g, power, len)?,
    };
    Ok(vertices.map(|v| Embedding::new(pattern, color, v)))
}

fn path(g: &BitGraph, len: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    // f[v]: most vertices that can follow v.
    let mut f = vec![0usize; n];
    for v in (0..n).rev() {
        f[v] = ones(g.row(v)).filter(|&w| w > v).map(|w| f[w] + 1).max().unwrap_or(0);
    }
    let mut v = (0..n).find(|&v| f[v] + 1 >= len)?;
    let mut out = vec![v];
    while out.len() < len {
        let need = len - out.len() - 1;
        v = ones(g.row(v)).find(|&w| w > v && f[w] >= need)?;
        out.push(v);
    }
    Some(out)
}

fn square_path(g: &BitGraph, len: usize) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    check_state_count(n * n, "square path")?;
    // f[u * n + v]: most vertices that can follow the edge uv, or NONE when uv is not an edge.
    let mut f = vec![NONE; n * n];
    let mut common = vec![0u64; g.words()];
    for u in (0..n).rev() {
        for v in ones(g.row(u)).filter(|&v| v > u) {
            for ((x, a), b) in common.iter_mut().zip(g.row(u)).zip(g.row(v)) {
                *x = a & b;
            }
            clear_through(&mut common, v);
            f[u * n + v] = ones(&common).map(|w| f[v * n + w] + 1).max().unwrap_or(0);
        }
    }
    let need = (len - 2) as i32;
    let Some((mut u, mut v)) = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .find(|&(u, v)| f[u * n + v] >= need)
    else {
        return Ok(None);
    };
    let mut out = vec![u, v];
    while out.len() < len {
        let need = (len - out.len() - 1) as i32;
        let w = (v + 1..n)
            .find(|&w| g.has(u, w) && g.has(v, w) && f[v * n + w] >= need)
            .expect("DP value guarantees a continuation");
        out.push(w);
        (u, v) = (v, w);
    }
    Ok(Some(out))
}

/// Generic DP whose states are the last `power` chosen vertices.
fn find_path_power_tuples(g: &BitGraph, power: usize, len: usize) -> Result<Option<Vec<usize>>> {
    let n = g.vertex_count();
    let l = power;
    let states = binomial(n as u64, l as u64)?;
    let states = usize::try_from(states).map_err(|_| Error::Overflow(format!("C({n}, {l})")))?;
    check_state_count(states, "path power")?;
    let binom = BinomialTable::new(n, l)?;
    // f[rank(T)]: most vertices that can follow the clique T, NONE when T is not a clique.
    let mut f = vec![NONE; states];
    let mut t = vec![0usize; l];
    for top in (l - 1..n).rev() {
        let mut head: Vec<usize> = (0..l - 1).collect();
        loop {
            t[..l - 1].copy_from_slice(&head);
            t[l - 1] = top;
            if is_clique(g, &t) {
                // Rank of t[1..] followed by w is shift + C(w, l).
                let shift: usize = (1..l).map(|i| binom.get(t[i], i)).sum();
                let best = (top + 1..n)
                    .filter(|&w| t.iter().all(|&x| g.has(x, w)))
                    .map(|w| f[shift + binom.get(w, l)] + 1)
                    .max()
                    .unwrap_or(0);
                f[binom.rank(&t)] = best;
            }
            if l == 1 || !next_colex(&mut head, top) {
                break;
            }
        }
    }
    let need = (len - l) as i32;
    let mut t: Vec<usize> = (0..l).collect();
    loop {
        if f[binom.rank(&t)] >= need {
            break;
        }
        if !next_lex(&mut t, n) {
            return Ok(None);
        }
    }
    let mut out = t.clone();
    while out.len() < len {
        let need = (len - out.len() - 1) as i32;
        let last = *t.last().expect("power >= 1");
        let shift: usize = (1..l).map(|i| binom.get(t[i], i)).sum();
        let w = (last + 1..n)
            .find(|&w| t.iter().all(|&x| g.has(x, w)) && f[shift + binom.get(w, l)] >= need)
            .expect("DP value guarantees a continuation");
        out.push(w);
        t.remove(0);
        t.push(w);
    }
    Ok(Some(out))
}

fn is_clique(g: &BitGraph, t: &[usize]) -> bool {
    t.iter()
        .enumerate()
        .all(|(i, &x)| t[i + 1..].iter().all(|&y| g.has(x, y)))
}
