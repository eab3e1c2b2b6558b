use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::Failure;
use crate::combinatorics::lex_subsets;
use crate::coloring::{Color, OrderedColoring};
use crate::error::{Error, Result};

/// A vertex sequence on which the color of each k-set is decided by its
/// first `k - 1` elements, and the induced coloring of (k-1)-sets of positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDown {
    pub vertices: Vec<usize>,
    pub induced: OrderedColoring,
}

impl StepDown {
    /// Checks that every k-subset of the sequence has the induced color of its first `k - 1` positions.
    pub fn validate(&self, c: &OrderedColoring) -> Result<()> {
        let k = c.uniformity();
        if self.induced.uniformity() != k - 1 || self.induced.vertex_count() != self.vertices.len() {
            return Err(Error::Verification("induced coloring has the wrong shape".into()));
        }
        if self.vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Verification(format!("sequence {:?} is not increasing", self.vertices)));
        }
        let positions: Vec<usize> = (0..self.vertices.len()).collect();
        for s in lex_subsets(&positions, k) {
            let set: Vec<usize> = s.iter().map(|&i| self.vertices[i]).collect();
            let want = self.induced.get(&s[..k - 1]);
            if c.get(&set) != want {
                return Err(Error::Verification(format!("{set:?} is not {want} as its first k-1 elements say")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepDownOutcome {
    PreHomogeneous(StepDown),
    Failure(Failure),
}

impl StepDownOutcome {
    pub fn to_json(&self) -> Value {
        match self {
            StepDownOutcome::PreHomogeneous(s) => {
                let k = s.induced.uniformity();
                let positions: Vec<usize> = (0..s.vertices.len()).collect();
                let red: Vec<Vec<usize>> = lex_subsets(&positions, k)
                    .into_iter()
                    .filter(|t| s.induced.is_red(t))
                    .collect();
                json!({
                    "outcome": "pre-homogeneous",
                    "vertices": s.vertices,
                    "induced_k": k,
                    "induced_red": red,
                })
            }
            StepDownOutcome::Failure(f) => json!({
                "outcome": "failure",
                "stage": f.stage,
                "context": f.context,
            }),
        }
    }
}

/// Greedy pre-homogeneous sequence of length `target_len`.
///
/// Repeatedly takes the smallest vertex left in the pool, then keeps only
/// the largest class of the pool under the colors of the new (k-1)-sets
/// through that vertex. Ties go to the class whose color vector is
/// lexicographically first with red before blue. A (k-1)-set of positions
/// ending at the last element takes the color of the final kept class, or
/// blue when the pool is empty.
pub fn erdos_rado_stepdown(c: &OrderedColoring, target_len: usize) -> Result<StepDownOutcome> {
    let k = c.uniformity();
    if k < 3 {
        return Err(Error::InvalidInput(format!("step-down needs k >= 3, got k = {k}")));
    }
    if target_len < k {
        return Err(Error::InvalidInput(format!("target length must be at least k = {k}, got {target_len}")));
    }
    let mut seq: Vec<usize> = Vec::with_capacity(target_len);
    let mut pool: Vec<usize> = (0..c.vertex_count()).collect();
    // Color of each (k-1)-set of positions, once decided.
    let mut labels: BTreeMap<Vec<usize>, Color> = BTreeMap::new();
    let mut buf = vec![0usize; k];

    while seq.len() < target_len {
        if pool.is_empty() {
            return Ok(StepDownOutcome::Failure(Failure {
                stage: format!("element {}", seq.len() + 1),
                context: format!("pool exhausted after {} elements, wanted {target_len}", seq.len()),
                sub_instance: None,
                confirmed: false,
            }));
        }
        let x = pool.remove(0);
        seq.push(x);
        let pos = seq.len() - 1;
        if seq.len() < k - 1 {
            continue;
        }
        let earlier: Vec<usize> = (0..pos).collect();
        let heads: Vec<Vec<usize>> = lex_subsets(&earlier, k - 2)
            .into_iter()
            .map(|mut h| {
                h.push(pos);
                h
            })
            .collect();
        let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
        for &y in &pool {
            let label: Vec<bool> = heads
                .iter()
                .map(|h| {
                    for (slot, &i) in buf.iter_mut().zip(h) {
                        *slot = seq[i];
                    }
                    buf[k - 1] = y;
                    // Blue sorts after red.
                    !c.is_red(&buf)
                })
                .collect();
            classes.entry(label).or_default().push(y);
        }
        let best = classes
            .iter()
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(a.0)))
            .map(|(label, members)| (label.clone(), members.clone()));
        match best {
            Some((label, members)) => {
                for (h, blue) in heads.into_iter().zip(label) {
                    labels.insert(h, Color::from_bit(!blue));
                }
                pool = members;
            }
            None => {
                for h in heads {
                    labels.insert(h, Color::Blue);
                }
            }
        }
    }
    let induced = OrderedColoring::from_fn(k - 1, seq.len(), |s| labels.get(s).copied().unwrap_or(Color::Blue))?;
    let out = StepDown { vertices: seq, induced };
    out.validate(c)?;
    Ok(StepDownOutcome::PreHomogeneous(out))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn random_colorings_reach_length_five() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let c = OrderedColoring::random(3, 1024, &mut rng).unwrap();
            match erdos_rado_stepdown(&c, 5).unwrap() {
                StepDownOutcome::PreHomogeneous(s) => {
                    assert_eq!(s.vertices.len(), 5);
                    s.validate(&c).unwrap();
                }
                f => panic!("{f:?}"),
            }
        }
    }

    #[test]
    fn monochromatic_input_keeps_everything() {
        let c = OrderedColoring::new(3, 10, Color::Red).unwrap();
        match erdos_rado_stepdown(&c, 10).unwrap() {
            StepDownOutcome::PreHomogeneous(s) => {
                assert_eq!(s.vertices, (0..10).collect::<Vec<_>>());
                // Pairs ending at the last element have no extension and default to blue.
                assert!(s.induced.is_red(&[0, 1]));
                assert!(!s.induced.is_red(&[0, 9]));
            }
            f => panic!("{f:?}"),
        }
    }

    #[test]
    fn ties_prefer_red() {
        // After 0 and 1 the pool {2, 3} splits evenly: 3 is red with (0, 1), 2 is blue.
        let c = OrderedColoring::from_fn(3, 4, |s| Color::from_bit(s == [0, 1, 3])).unwrap();
        match erdos_rado_stepdown(&c, 3).unwrap() {
            StepDownOutcome::PreHomogeneous(s) => {
                assert_eq!(s.vertices, vec![0, 1, 3]);
                assert!(s.induced.is_red(&[0, 1]));
            }
            f => panic!("{f:?}"),
        }
    }

    #[test]
    fn too_short_fails() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = OrderedColoring::random(3, 6, &mut rng).unwrap();
        let out = erdos_rado_stepdown(&c, 7).unwrap();
        assert!(matches!(out, StepDownOutcome::Failure(_)));
        assert_eq!(out.to_json()["outcome"], "failure");
    }

    #[test]
    fn parameters() {
        let c = OrderedColoring::new(2, 6, Color::Red).unwrap();
        assert!(erdos_rado_stepdown(&c, 4).is_err());
        let c = OrderedColoring::new(3, 6, Color::Red).unwrap();
        assert!(erdos_rado_stepdown(&c, 2).is_err());
    }
}
