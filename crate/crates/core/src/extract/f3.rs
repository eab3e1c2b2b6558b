use super::{extensions, finish, stall, Broom, Extraction, Trace};
use crate::certificate::{Certificate, Embedding, Violation, ViolationKind};
use crate::combinatorics::next_lex;
use crate::coloring::{Color, OrderedColoring};
use crate::detect::{find_violation_in_prefix, Target};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

const BRISTLES: usize = 6;

/// Red F3 violation or a blue tight path on `n` vertices.
///
/// Grows blue brooms with six bristles inside the first `16(a + 1)`
/// vertices; a monochromatic triangle among the bristles, colored through
/// the last `k - 2` path vertices, either extends the broom or gives an F3.
pub fn extract_f3_or_path(c: &OrderedColoring, n: usize) -> Result<Extraction> {
    let k = c.uniformity();
    if k < 3 {
        return Err(Error::InvalidInput(format!("F3 or path extraction needs k >= 3, got k = {k}")));
    }
    if n < k {
        return Err(Error::InvalidInput(format!("need n >= k, got n = {n}, k = {k}")));
    }
    let targets = [
        Target::violation(ViolationKind::F3),
        Target::pattern(PatternSpec::tight(k, n), Color::Blue),
    ];
    let big = c.vertex_count();
    let mut trace = Trace::default();
    let blue_path = |v: Vec<usize>| Certificate::Embedding(Embedding::new(PatternSpec::tight(k, n), Color::Blue, v));
    let f3 = |v: Vec<usize>| Certificate::Violation(Violation::from_vertices(c, ViolationKind::F3, v));

    let window = (16 * k).min(big);
    let mut broom = match base(c, window) {
        Some(b) => b,
        None => {
            trace.push(format!("base: no (k-1)-set below {window} has {BRISTLES} blue extensions"));
            if let Some(v) = find_violation_in_prefix(c, ViolationKind::F3, window)? {
                return finish(c, Certificate::Violation(v), trace);
            }
            let context = format!("no F3 and no blue broom below {window}");
            return stall(c, &targets, "base", context, window, None, trace);
        }
    };
    trace.push(format!("base: {broom}"));

    'grow: while broom.path.len() < n - 1 {
        let a = broom.path.len() + 1;
        let limit = (16 * (a + 1)).min(big);
        let v = &broom.path;
        let w = &broom.bristles;
        let s2 = &v[v.len() - (k - 2)..];
        let s3 = &v[v.len() - (k - 3)..];
        let with = |s: &[usize], extra: &[usize]| {
            let mut e = s.to_vec();
            e.extend(extra);
            c.get(&e)
        };
        let t = mono_triangle(w, |x, y| with(s2, &[x, y]));
        let color = with(s2, &[t[0], t[1]]);
        trace.push(format!("step {a}: {color} triangle {t:?} on the bristles"));
        if color == Color::Red {
            let mut e = s2.to_vec();
            e.extend(t);
            return finish(c, f3(e), trace);
        }
        for (p, q) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let mut base = s3.to_vec();
            base.extend([p, q]);
            let ys: Vec<usize> = extensions(c, &base, t[2], limit, Color::Blue).take(BRISTLES).collect();
            if ys.len() == BRISTLES {
                let mut path = v[1..].to_vec();
                path.extend([p, q]);
                broom = Broom { path, bristles: ys };
                trace.push(format!("step {a}: pair ({p}, {q}) extends, {broom}"));
                continue 'grow;
            }
        }
        let all_red = |y: usize| {
            [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                .iter()
                .all(|&(p, q)| with(s3, &[p, q, y]) == Color::Red)
        };
        let Some(y) = (t[2] + 1..limit).find(|&y| all_red(y)) else {
            let context = format!("no vertex below {limit} is red with every pair of {t:?}");
            return stall(c, &targets, &format!("step {a}"), context, limit, None, trace);
        };
        let mut e = s3.to_vec();
        e.extend(t);
        e.push(y);
        return finish(c, f3(e), trace);
    }
    finish(c, blue_path(broom.tight_path(n)), trace)
}

/// Lex-first (k-1)-set below `window` with six blue extensions below `window`.
fn base(c: &OrderedColoring, window: usize) -> Option<Broom> {
    let k = c.uniformity();
    if window < k - 1 {
        return None;
    }
    let mut s: Vec<usize> = (0..k - 1).collect();
    loop {
        let top = s[k - 2];
        let ys: Vec<usize> = extensions(c, &s, top, window, Color::Blue).take(BRISTLES).collect();
        if ys.len() == BRISTLES {
            return Some(Broom { path: s, bristles: ys });
        }
        if !next_lex(&mut s, window) {
            return None;
        }
    }
}

/// Lex-first monochromatic triangle of the pair coloring `phi` on `w`.
fn mono_triangle(w: &[usize], phi: impl Fn(usize, usize) -> Color) -> [usize; 3] {
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let cij = phi(w[i], w[j]);
            for l in j + 1..w.len() {
                if phi(w[i], w[l]) == cij && phi(w[j], w[l]) == cij {
                    return [w[i], w[j], w[l]];
                }
            }
        }
    }
    unreachable!("every 2-coloring of the pairs of six vertices has a monochromatic triangle")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::extract::ExtractOutcome;

    #[test]
    fn all_red_gives_first_f3() {
        let c = OrderedColoring::new(3, 96, Color::Red).unwrap();
        let x = extract_f3_or_path(&c, 6).unwrap();
        match x.outcome {
            ExtractOutcome::Red(Certificate::Violation(v)) => {
                assert_eq!(v.kind, ViolationKind::F3);
                assert_eq!(v.vertices, vec![0, 1, 2, 3]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn all_blue_gives_first_path() {
        for k in [3, 4] {
            let c = OrderedColoring::new(k, 16 * 7, Color::Blue).unwrap();
            let x = extract_f3_or_path(&c, 6).unwrap();
            match x.outcome {
                ExtractOutcome::Blue(e) => assert_eq!(e.vertices, (0..6).collect::<Vec<_>>()),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn path_of_length_k_is_one_edge() {
        let c = OrderedColoring::new(3, 48, Color::Blue).unwrap();
        match extract_f3_or_path(&c, 3).unwrap().outcome {
            ExtractOutcome::Blue(e) => assert_eq!(e.vertices, vec![0, 1, 2]),
            other => panic!("{other:?}"),
        }
        assert!(extract_f3_or_path(&c, 2).is_err());
    }

    #[test]
    fn triangle_in_every_six_vertex_coloring() {
        let w: Vec<usize> = (0..6).collect();
        for mask in 0u32..1 << 15 {
            let phi = |x: usize, y: usize| {
                let idx = y * (y - 1) / 2 + x;
                Color::from_bit(mask >> idx & 1 == 1)
            };
            let t = mono_triangle(&w, phi);
            assert!(t[0] < t[1] && t[1] < t[2]);
        }
    }

    #[test]
    fn mostly_blue_inputs_grow_brooms() {
        // Sparse red keeps F3 rare, so the broom has to do the work.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..5 {
            let c = OrderedColoring::from_fn(3, 16 * 8, |_| {
                Color::from_bit(rand::Rng::gen_ratio(&mut rng, 1, 40))
            })
            .unwrap();
            let x = extract_f3_or_path(&c, 7).unwrap();
            assert!(!x.outcome.is_failure());
            x.outcome.certificate().unwrap().validate(&c).unwrap();
        }
    }
}
