use super::{color_of_set, extensions, finish, require_k, stall, Broom, Extraction, SubInstance, Trace};
use crate::certificate::{Certificate, Embedding};
use crate::coloring::{Color, OrderedColoring};
use crate::detect::{find_mono_clique, find_mono_path_power, Target};
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Red K4 in a 3-uniform coloring, or a blue tight path on `n` vertices.
///
/// Grows blue brooms with `m` bristles, coloring pairs of bristles by the
/// triple they form with the last path vertex; `m` at least the ordered
/// Ramsey number of the square path on `n` vertices makes every step succeed.
pub fn extract_k4_or_tight_path(c: &OrderedColoring, n: usize, m: usize) -> Result<Extraction> {
    require_k(c, 3, "K4 or tight path extraction")?;
    if n < 3 || m < 1 {
        return Err(Error::InvalidInput(format!("need n >= 3 and m >= 1, got n = {n}, m = {m}")));
    }
    let targets = [
        Target::pattern(PatternSpec::Clique { k: 3, len: 4 }, Color::Red),
        Target::pattern(PatternSpec::tight(3, n), Color::Blue),
    ];
    let big = c.vertex_count();
    let mut trace = Trace::default();
    let red_k4 = |v: Vec<usize>| Certificate::Embedding(Embedding::new(PatternSpec::Clique { k: 3, len: 4 }, Color::Red, v));
    let blue_path = |v: Vec<usize>| Certificate::Embedding(Embedding::new(PatternSpec::tight(3, n), Color::Blue, v));

    let window = (12 * m).min(big);
    let mut broom = match base(c, window, m) {
        Some(b) => b,
        None => {
            trace.push(format!("base: no pair below {window} has {m} blue extensions"));
            let prefix = c.prefix(window)?;
            if let Some(e) = find_mono_clique(&prefix, 4, Color::Red)? {
                return finish(c, red_k4(e.vertices), trace);
            }
            let context = format!("no red K4 and no blue broom below {window}");
            return stall(c, &targets, "base", context, window, None, trace);
        }
    };
    trace.push(format!("base: {broom}"));

    'grow: while broom.path.len() + 1 < n {
        let a = broom.path.len() + 1;
        let limit = (6 * a * m).min(big);
        let last = *broom.path.last().expect("path has two vertices");
        let w = &broom.bristles;
        let phi = OrderedColoring::from_fn(2, w.len(), |e| c.get(&[last, w[e[0]], w[e[1]]]))?;
        let found = match find_mono_path_power(&phi, 2, n, Color::Red)? {
            Some(e) => Some(e),
            None => find_mono_path_power(&phi, 2, n, Color::Blue)?,
        };
        let Some(h) = found else {
            let sub = SubInstance {
                coloring: phi,
                vertices: w.clone(),
                targets: vec![
                    Target::pattern(PatternSpec::square_path(n), Color::Red),
                    Target::pattern(PatternSpec::square_path(n), Color::Blue),
                ],
                checked: true,
            };
            let context = format!("{} bristles hold no monochromatic square path on {n}", w.len());
            return stall(c, &targets, &format!("step {a}"), context, limit, Some(sub), trace);
        };
        let z: Vec<usize> = h.vertices.iter().map(|&i| w[i]).collect();
        trace.push(format!("step {a}: {} square path {z:?} on the bristles", h.color));

        if h.color == Color::Red {
            for t in z.windows(3) {
                if c.get(t) == Color::Red {
                    return finish(c, red_k4(vec![last, t[0], t[1], t[2]]), trace);
                }
            }
            return finish(c, blue_path(z), trace);
        }

        for t in z.windows(3) {
            for (p, q) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let ys: Vec<usize> = extensions(c, &[p, q], q, limit, Color::Blue).take(m).collect();
                if ys.len() == m {
                    let mut path = broom.path[1..].to_vec();
                    path.extend([p, q]);
                    broom = Broom { path, bristles: ys };
                    trace.push(format!("step {a}: pair ({p}, {q}) extends, {broom}"));
                    continue 'grow;
                }
            }
            let all_red = |y: usize| {
                [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
                    .iter()
                    .all(|&(p, q)| color_of_set(c, &[p, q, y]) == Color::Red)
            };
            let Some(y) = (t[2] + 1..limit).find(|&y| all_red(y)) else {
                let context = format!("no vertex below {limit} is red with every pair of {t:?}");
                return stall(c, &targets, &format!("step {a}"), context, limit, None, trace);
            };
            if c.get(t) == Color::Red {
                return finish(c, red_k4(vec![t[0], t[1], t[2], y]), trace);
            }
        }
        return finish(c, blue_path(z), trace);
    }
    finish(c, blue_path(broom.tight_path(n)), trace)
}

/// Lex-first pair below `window` with `m` blue extensions below `window`.
fn base(c: &OrderedColoring, window: usize, m: usize) -> Option<Broom> {
    for u in 0..window {
        for v in u + 1..window {
            let ys: Vec<usize> = extensions(c, &[u, v], v, window, Color::Blue).take(m).collect();
            if ys.len() == m {
                return Some(Broom { path: vec![u, v], bristles: ys });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::extract::ExtractOutcome;

    #[test]
    fn all_red_gives_first_k4() {
        let c = OrderedColoring::new(3, 10, Color::Red).unwrap();
        let x = extract_k4_or_tight_path(&c, 4, 3).unwrap();
        assert_eq!(x.outcome.certificate().unwrap().vertices(), &[0, 1, 2, 3]);
        assert_eq!(x.outcome.label(), "red");
    }

    #[test]
    fn all_blue_gives_first_path() {
        for m in [1, 3, 7, 40] {
            let c = OrderedColoring::new(3, 30, Color::Blue).unwrap();
            let x = extract_k4_or_tight_path(&c, 5, m).unwrap();
            match x.outcome {
                ExtractOutcome::Blue(e) => assert_eq!(e.vertices, vec![0, 1, 2, 3, 4]),
                other => panic!("m = {m}: {other:?}"),
            }
        }
    }

    #[test]
    fn random_inputs_give_valid_outcomes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..30 {
            let c = OrderedColoring::random(3, 60, &mut rng).unwrap();
            let x = extract_k4_or_tight_path(&c, 4, 5).unwrap();
            if let Some(cert) = x.outcome.certificate() {
                cert.validate(&c).unwrap();
            }
        }
    }

    #[test]
    fn few_vertices_fail_with_confirmation() {
        // No red K4 and no blue P_5: the tight-path construction on 5 vertices.
        let c = crate::construct::build_eh_b_lower(5).unwrap();
        let blue_p5 = crate::detect::find_mono_tight_path(&c, 5, Color::Blue).unwrap();
        let red_k4 = find_mono_clique(&c, 4, Color::Red).unwrap();
        let x = extract_k4_or_tight_path(&c, 5, 2).unwrap();
        if blue_p5.is_none() && red_k4.is_none() {
            match x.outcome {
                ExtractOutcome::Failure(f) => assert!(f.confirmed),
                other => panic!("{other:?}"),
            }
        } else {
            x.outcome.certificate().unwrap().validate(&c).unwrap();
        }
    }

    #[test]
    fn bad_parameters() {
        let c = OrderedColoring::new(3, 10, Color::Red).unwrap();
        assert!(extract_k4_or_tight_path(&c, 2, 3).is_err());
        assert!(extract_k4_or_tight_path(&c, 4, 0).is_err());
        let g = OrderedColoring::new(2, 10, Color::Red).unwrap();
        assert!(extract_k4_or_tight_path(&g, 4, 3).is_err());
    }
}
