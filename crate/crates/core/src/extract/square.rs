use num_rational::Ratio;

use super::{finish, require_k, ExtractOutcome, Extraction, Failure, SubInstance, Trace};
use crate::certificate::{Certificate, Embedding};
use crate::coloring::{Color, OrderedColoring};
use crate::detect::{count_mono_cliques, find_mono_path_power, BitGraph, Target};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Parameters of the density recursion for square paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePathConfig {
    pub alpha: Ratio<u64>,
    pub epsilon: Ratio<u64>,
    /// Vertex sets smaller than this times the larger target are decided exactly.
    pub min_recursion_size: usize,
}

impl Default for SquarePathConfig {
    fn default() -> Self {
        SquarePathConfig {
            alpha: Ratio::new(287, 240_000),
            epsilon: Ratio::new(1, 1_000_000_000),
            min_recursion_size: 64,
        }
    }
}

impl SquarePathConfig {
    pub fn validate(&self) -> Result<()> {
        let zero = Ratio::from_integer(0);
        if *self.alpha.denom() == 0 || *self.epsilon.denom() == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if self.alpha <= zero || self.epsilon <= zero || self.epsilon >= self.alpha {
            return Err(Error::InvalidInput(format!(
                "need 0 < epsilon < alpha, got alpha = {}, epsilon = {}",
                self.alpha, self.epsilon
            )));
        }
        if self.min_recursion_size < 4 {
            return Err(Error::InvalidInput(format!(
                "min_recursion_size must be at least 4, got {}",
                self.min_recursion_size
            )));
        }
        Ok(())
    }

    /// Guaranteed density of each side, `alpha - 2 epsilon`, or zero.
    pub fn beta(&self) -> Ratio<u64> {
        let twice = self.epsilon * 2;
        if twice >= self.alpha {
            Ratio::from_integer(0)
        } else {
            self.alpha - twice
        }
    }

    /// `log2(1 / alpha)`, the exponent in the resulting bound.
    pub fn exponent(&self) -> f64 {
        (*self.alpha.denom() as f64 / *self.alpha.numer() as f64).log2()
    }
}

enum Found {
    Path(Color, Vec<usize>),
    Stuck(Failure),
}

/// Red square path on `a` vertices or blue square path on `b` vertices.
pub fn extract_square_path(c: &OrderedColoring, a: usize, b: usize, cfg: &SquarePathConfig) -> Result<Extraction> {
    require_k(c, 2, "square path extraction")?;
    cfg.validate()?;
    if a < 2 || b < 2 {
        return Err(Error::InvalidInput(format!("square path lengths must be at least 2, got {a} and {b}")));
    }
    let mut trace = Trace::default();
    trace.push(format!(
        "alpha = {}, beta = {}, exponent {:.4}",
        cfg.alpha,
        cfg.beta(),
        cfg.exponent()
    ));
    let all: Vec<usize> = (0..c.vertex_count()).collect();
    match recurse(c, &all, a, b, cfg, 0, &mut trace)? {
        Found::Path(color, v) => {
            let len = if color == Color::Red { a } else { b };
            let e = Embedding::new(PatternSpec::square_path(len), color, v);
            finish(c, Certificate::Embedding(e), trace)
        }
        Found::Stuck(f) => {
            trace.push(format!("stalled at {}: {}", f.stage, f.context));
            Ok(Extraction { outcome: ExtractOutcome::Failure(f), trace: trace.0 })
        }
    }
}

fn targets(a: usize, b: usize) -> Vec<Target> {
    vec![
        Target::pattern(PatternSpec::square_path(a), Color::Red),
        Target::pattern(PatternSpec::square_path(b), Color::Blue),
    ]
}

fn exact(c: &OrderedColoring, verts: &[usize], a: usize, b: usize, depth: usize, trace: &mut Trace) -> Result<Found> {
    let sub = c.induced(verts)?;
    for (color, len) in [(Color::Red, a), (Color::Blue, b)] {
        if let Some(e) = find_mono_path_power(&sub, 2, len, color)? {
            trace.push(format!("depth {depth}: exact search on {} vertices found {color} P_{len}^2", verts.len()));
            return Ok(Found::Path(color, e.vertices.iter().map(|&i| verts[i]).collect()));
        }
    }
    let context = format!(
        "{} vertices hold neither a red square path on {a} nor a blue one on {b}",
        verts.len()
    );
    Ok(Found::Stuck(Failure {
        stage: format!("exact search at depth {depth}"),
        context,
        sub_instance: Some(SubInstance { coloring: sub, vertices: verts.to_vec(), targets: targets(a, b), checked: true }),
        confirmed: verts.len() == c.vertex_count(),
    }))
}

fn recurse(
    c: &OrderedColoring,
    verts: &[usize],
    a: usize,
    b: usize,
    cfg: &SquarePathConfig,
    depth: usize,
    trace: &mut Trace,
) -> Result<Found> {
    // Halving reaches empty targets, which need no vertices.
    if a == 0 {
        return Ok(Found::Path(Color::Red, Vec::new()));
    }
    if b == 0 {
        return Ok(Found::Path(Color::Blue, Vec::new()));
    }
    if verts.len() < cfg.min_recursion_size.saturating_mul(a.max(b)) {
        return exact(c, verts, a, b, depth, trace);
    }
    let sub = c.induced(verts)?;
    let (red_k4, blue_k4) = count_mono_cliques(&sub, 4)?;
    let major = if red_k4 >= blue_k4 { Color::Red } else { Color::Blue };
    let g = BitGraph::new(&sub, major)?;
    let Some((y1, y2, count)) = middle_pair(&g) else {
        trace.push(format!("depth {depth}: no monochromatic K4, deciding exactly"));
        return exact(c, verts, a, b, depth, trace);
    };
    let n = sub.vertex_count();
    let common: Vec<u64> = g.row(y1).iter().zip(g.row(y2)).map(|(p, q)| p & q).collect();
    let has = |set: &[u64], v: usize| (set[v / 64] >> (v % 64)) & 1 == 1;
    let left_all: Vec<usize> = (0..y1).filter(|&x| has(&common, x)).collect();
    let right_all: Vec<usize> = (y2 + 1..n).filter(|&z| has(&common, z)).collect();
    let left: Vec<usize> = left_all
        .iter()
        .copied()
        .filter(|&x| right_all.iter().any(|&z| g.has(x, z)))
        .map(|x| verts[x])
        .collect();
    let right: Vec<usize> = right_all
        .iter()
        .copied()
        .filter(|&z| left_all.iter().any(|&x| g.has(x, z)))
        .map(|z| verts[z])
        .collect();
    trace.push(format!(
        "depth {depth}: {} vertices, {red_k4} red and {blue_k4} blue K4, majority {major}, \
         middle pair ({}, {}) in {count} of them, |L| = {}, |R| = {}",
        n,
        verts[y1],
        verts[y2],
        left.len(),
        right.len()
    ));

    // The majority color needs only half its length on each side.
    let (side_a, side_b) = if major == Color::Red { (a / 2, b) } else { (a, b / 2) };
    let mut pieces = Vec::with_capacity(2);
    for side in [&left, &right] {
        match recurse(c, side, side_a, side_b, cfg, depth + 1, trace)? {
            Found::Path(color, p) if color == major => pieces.push(p),
            other => return Ok(other),
        }
    }
    let len = if major == Color::Red { a } else { b };
    let mut glued = pieces[0].clone();
    glued.extend([verts[y1], verts[y2]]);
    glued.extend(&pieces[1]);
    glued.truncate(len);
    Ok(Found::Path(major, glued))
}

/// Pair `y1 < y2` that is the middle pair of the most K4s of `g`, lex-first on ties.
fn middle_pair(g: &BitGraph) -> Option<(usize, usize, u64)> {
    let n = g.vertex_count();
    let words = g.words();
    let mut best: Option<(usize, usize, u64)> = None;
    let mut common = vec![0u64; words];
    for y1 in 0..n {
        for y2 in y1 + 1..n {
            if !g.has(y1, y2) {
                continue;
            }
            for ((x, p), q) in common.iter_mut().zip(g.row(y1)).zip(g.row(y2)) {
                *x = p & q;
            }
            let mut count = 0u64;
            for x in 0..y1 {
                if (common[x / 64] >> (x % 64)) & 1 == 0 {
                    continue;
                }
                // Common neighbours of the pair that are above y2 and adjacent to x.
                for (w, (cm, row)) in common.iter().zip(g.row(x)).enumerate() {
                    let mut bits = cm & row;
                    let lo = w * 64;
                    if lo + 64 <= y2 + 1 {
                        continue;
                    }
                    if lo <= y2 {
                        bits &= !((1u64 << (y2 - lo)) | ((1u64 << (y2 - lo)) - 1));
                    }
                    count += u64::from(bits.count_ones());
                }
            }
            if count > 0 && best.is_none_or(|(_, _, c)| count > c) {
                best = Some((y1, y2, count));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::combinatorics::lex_subsets;

    fn brute_middle(g: &BitGraph) -> Option<(usize, usize, u64)> {
        let n = g.vertex_count();
        let mut counts = std::collections::BTreeMap::new();
        for q in lex_subsets(&(0..n).collect::<Vec<_>>(), 4) {
            let all = (0..4).all(|i| (i + 1..4).all(|j| g.has(q[i], q[j])));
            if all {
                *counts.entry((q[1], q[2])).or_insert(0u64) += 1;
            }
        }
        let max = counts.values().copied().max()?;
        counts.into_iter().find(|&(_, c)| c == max).map(|((a, b), c)| (a, b, c))
    }

    #[test]
    fn middle_pair_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [4, 9, 14, 70] {
            for _ in 0..5 {
                let c = OrderedColoring::random(2, n, &mut rng).unwrap();
                let g = BitGraph::new(&c, Color::Red).unwrap();
                assert_eq!(middle_pair(&g), brute_middle(&g));
            }
        }
    }

    #[test]
    fn small_inputs_are_exact() {
        let c = OrderedColoring::new(2, 60, Color::Blue).unwrap();
        let x = extract_square_path(&c, 4, 4, &SquarePathConfig::default()).unwrap();
        match x.outcome {
            ExtractOutcome::Blue(e) => assert_eq!(e.vertices, vec![0, 1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn recursion_produces_valid_certificates() {
        let cfg = SquarePathConfig { min_recursion_size: 4, ..Default::default() };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let c = OrderedColoring::random(2, 40, &mut rng).unwrap();
            let x = extract_square_path(&c, 4, 4, &cfg).unwrap();
            match &x.outcome {
                ExtractOutcome::Failure(f) => {
                    let s = f.sub_instance.as_ref().unwrap();
                    for t in &s.targets {
                        assert!(t.find(&s.coloring).unwrap().is_none());
                    }
                }
                o => o.certificate().unwrap().validate(&c).unwrap(),
            }
            assert!(x.trace.iter().any(|l| l.contains("majority")));
        }
    }

    #[test]
    fn odd_lengths_halve_down_to_nothing() {
        let cfg = SquarePathConfig { min_recursion_size: 4, ..SquarePathConfig::default() };
        for (color, a, b) in [(Color::Red, 3, 3), (Color::Blue, 3, 3), (Color::Red, 2, 5), (Color::Blue, 5, 2)] {
            let c = OrderedColoring::new(2, 40, color).unwrap();
            let x = extract_square_path(&c, a, b, &cfg).unwrap();
            let cert = x.outcome.certificate().unwrap();
            cert.validate(&c).unwrap();
            assert_eq!(cert.color(), color);
        }
    }

    #[test]
    fn majority_blue_swaps_roles() {
        let cfg = SquarePathConfig { min_recursion_size: 4, ..Default::default() };
        let c = OrderedColoring::new(2, 32, Color::Blue).unwrap();
        let x = extract_square_path(&c, 4, 4, &cfg).unwrap();
        assert_eq!(x.outcome.label(), "blue");
        assert!(x.trace.iter().any(|l| l.contains("majority blue")));
    }

    #[test]
    fn config_checks() {
        assert!(SquarePathConfig::default().validate().is_ok());
        let bad = SquarePathConfig { epsilon: Ratio::new(1, 100), alpha: Ratio::new(1, 200), ..Default::default() };
        assert!(bad.validate().is_err());
        let small = SquarePathConfig { min_recursion_size: 2, ..Default::default() };
        assert!(small.validate().is_err());
        assert!(SquarePathConfig::default().exponent() < 9.7434);
    }

    #[test]
    fn wrong_uniformity() {
        let c = OrderedColoring::new(3, 6, Color::Red).unwrap();
        assert!(extract_square_path(&c, 4, 4, &SquarePathConfig::default()).is_err());
    }
}
