use rayon::prelude::*;

use crate::certificate::{Violation, ViolationKind};
use crate::combinatorics::next_colex;
use crate::coloring::OrderedColoring;
use crate::error::{Error, Result};

/// First (k+1)-set in colex order exhibiting `kind`.
pub fn find_violation(c: &OrderedColoring, kind: ViolationKind) -> Result<Option<Violation>> {
    find_violation_in_prefix(c, kind, c.vertex_count())
}

/// As [`find_violation`], restricted to vertices below `limit`.
pub fn find_violation_in_prefix(
    c: &OrderedColoring,
    kind: ViolationKind,
    limit: usize,
) -> Result<Option<Violation>> {
    let k = c.uniformity();
    if let ViolationKind::TRed(t) = kind {
        if !(2..=k + 1).contains(&t) {
            return Err(Error::InvalidInput(format!("tred:{t} needs 2 <= t <= {}", k + 1)));
        }
    }
    let limit = limit.min(c.vertex_count());
    // Colex order is by maximum first, so the first hit over increasing maxima is colex-first.
    let hit = (k..limit)
        .into_par_iter()
        .find_map_first(|top| scan_top(c, kind, top));
    Ok(hit.map(|s| Violation::from_vertices(c, kind, s)))
}

fn scan_top(c: &OrderedColoring, kind: ViolationKind, top: usize) -> Option<Vec<usize>> {
    let k = c.uniformity();
    let binom = c.binomials();
    let need = kind.min_red();
    let mut s = vec![0usize; k + 1];
    let mut head: Vec<usize> = (0..k).collect();
    // suffix[j]: rank contribution of s[j+1..] shifted down one position.
    let mut suffix = vec![0usize; k + 1];
    loop {
        s[..k].copy_from_slice(&head);
        s[k] = top;
        suffix[k] = 0;
        for j in (0..k).rev() {
            suffix[j] = suffix[j + 1] + binom.get(s[j + 1], j + 1);
        }
        let mut prefix = 0;
        let mut red = 0;
        let mut initial_red = false;
        for j in 0..=k {
            // Rank of s without s[j].
            if c.bit(prefix + suffix[j]) {
                red += 1;
                if j == k {
                    initial_red = true;
                }
            }
            if j == k || red + (k - j) < need {
                break;
            }
            prefix += binom.get(s[j], j + 1);
        }
        if kind.accepts(red, initial_red) {
            return Some(s);
        }
        if !next_colex(&mut head, top) {
            return None;
        }
    }
}
