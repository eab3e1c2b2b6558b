//! Oracles written from the definitions, independent of the library's detectors.
#![allow(dead_code)]

use oramsey::{Certificate, Color, OrderedColoring, PatternSpec, ViolationKind};

/// All `k`-subsets of `0..n` in lex order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Edges of `p` as sets of positions.
pub fn pattern_edges(p: &PatternSpec) -> Vec<Vec<usize>> {
    match *p {
        PatternSpec::PathPower { power, len } => {
            let mut e = Vec::new();
            for j in 0..len {
                for i in j.saturating_sub(power)..j {
                    e.push(vec![i, j]);
                }
            }
            e
        }
        PatternSpec::TightPath { k, len } => {
            (0..(len + 1).saturating_sub(k)).map(|i| (i..i + k).collect()).collect()
        }
        PatternSpec::Broom { k, path, bristles } => {
            let mut e = pattern_edges(&PatternSpec::TightPath { k, len: path });
            if path >= k - 1 {
                for b in path..path + bristles {
                    let mut edge: Vec<usize> = (path - (k - 1)..path).collect();
                    edge.push(b);
                    e.push(edge);
                }
            }
            e
        }
        PatternSpec::Clique { k, len } => subsets(len, k),
    }
}

pub fn vertex_count(p: &PatternSpec) -> usize {
    match *p {
        PatternSpec::PathPower { len, .. } | PatternSpec::TightPath { len, .. } | PatternSpec::Clique { len, .. } => len,
        PatternSpec::Broom { path, bristles, .. } => path + bristles,
    }
}

/// Whether `verts` spans a copy of `p` whose edges all have `color`.
pub fn embedding_ok(c: &OrderedColoring, p: &PatternSpec, color: Color, verts: &[usize]) -> bool {
    verts.len() == vertex_count(p)
        && verts.windows(2).all(|w| w[0] < w[1])
        && verts.last().map_or(true, |&v| v < c.vertex_count())
        && pattern_edges(p).iter().all(|e| {
            let set: Vec<usize> = e.iter().map(|&i| verts[i]).collect();
            c.get(&set) == color
        })
}

/// Whether the `k + 1` vertices carry a violation of `kind`.
pub fn violation_ok(c: &OrderedColoring, kind: ViolationKind, verts: &[usize]) -> bool {
    let k = c.uniformity();
    if verts.len() != k + 1 || verts.windows(2).any(|w| w[0] >= w[1]) || verts[k] >= c.vertex_count() {
        return false;
    }
    let red = subsets(k + 1, k)
        .iter()
        .filter(|s| c.is_red(&s.iter().map(|&i| verts[i]).collect::<Vec<_>>()))
        .count();
    match kind {
        ViolationKind::F3 => red >= 3,
        ViolationKind::H3 => red >= 3 && c.is_red(&verts[..k]),
        ViolationKind::TRed(t) => red >= t,
    }
}

pub fn certificate_ok(c: &OrderedColoring, cert: &Certificate) -> bool {
    match cert {
        Certificate::Embedding(e) => embedding_ok(c, &e.pattern, e.color, &e.vertices),
        Certificate::Violation(v) => violation_ok(c, v.kind, &v.vertices),
    }
}

/// Exhaustive search for a copy of `p` in `color`.
pub fn brute_contains(c: &OrderedColoring, p: &PatternSpec, color: Color) -> bool {
    let m = vertex_count(p);
    m <= c.vertex_count() && subsets(c.vertex_count(), m).iter().any(|v| embedding_ok(c, p, color, v))
}

pub fn brute_violation(c: &OrderedColoring, kind: ViolationKind) -> bool {
    let k = c.uniformity();
    subsets(c.vertex_count(), k + 1).iter().any(|v| violation_ok(c, kind, v))
}

/// Longest strictly increasing and strictly decreasing subsequences, by quadratic DP.
pub fn lis_lds(seq: &[i64]) -> (usize, usize) {
    let n = seq.len();
    let mut inc = vec![1; n];
    let mut dec = vec![1; n];
    for j in 0..n {
        for i in 0..j {
            if seq[i] < seq[j] {
                inc[j] = inc[j].max(inc[i] + 1);
            }
            if seq[i] > seq[j] {
                dec[j] = dec[j].max(dec[i] + 1);
            }
        }
    }
    (inc.into_iter().max().unwrap_or(0), dec.into_iter().max().unwrap_or(0))
}

/// Every permutation of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<i64> = (0..n as i64).collect();
    let mut c = vec![0usize; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Whether all k-sets of `verts` with the same first `k - 1` elements share a color.
pub fn pre_homogeneous(c: &OrderedColoring, verts: &[usize]) -> bool {
    let k = c.uniformity();
    subsets(verts.len(), k - 1).iter().all(|head| {
        let last = *head.last().unwrap();
        let colors: Vec<Color> = (last + 1..verts.len())
            .map(|j| {
                let mut s: Vec<usize> = head.iter().map(|&i| verts[i]).collect();
                s.push(verts[j]);
                c.get(&s)
            })
            .collect();
        colors.windows(2).all(|w| w[0] == w[1])
    })
}

/// Random coloring with each edge red with probability `num / den`.
pub fn biased(k: usize, n: usize, num: u32, den: u32, rng: &mut impl rand::Rng) -> OrderedColoring {
    OrderedColoring::from_fn(k, n, |_| Color::from_bit(rng.gen_ratio(num, den))).unwrap()
}
