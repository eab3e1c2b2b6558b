use super::{color_of_set, finish, require_k, stall, Broom, Extraction, Trace};
use crate::certificate::{Certificate, Embedding, Violation, ViolationKind};
use crate::coloring::{Color, OrderedColoring};
use crate::detect::Target;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Four vertices spanning at least three red triples, or a blue broom with
/// a path on `n - 1` vertices and two bristles, inside the first `3n - 3`
/// vertices of a 3-uniform coloring.
pub fn extract_3red_or_broom(c: &OrderedColoring, n: usize) -> Result<Extraction> {
    require_k(c, 3, "three-red or broom extraction")?;
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    let targets = [
        Target::violation(ViolationKind::TRed(3)),
        Target::pattern(PatternSpec::Broom { k: 3, path: n - 1, bristles: 2 }, Color::Blue),
    ];
    let big = c.vertex_count();
    let mut trace = Trace::default();
    let red = |v: &[usize]| color_of_set(c, v) == Color::Red;
    let three_red = |v: Vec<usize>| Certificate::Violation(Violation::from_vertices(c, ViolationKind::TRed(3), v));

    if big < 6 {
        return stall(c, &targets, "base", format!("{big} vertices, the base case needs 6"), big, None, trace);
    }
    // Base case on the first six vertices.
    let mut broom = {
        let blue: Vec<usize> = (2..6).filter(|&x| !red(&[0, 1, x])).collect();
        if blue.len() >= 2 {
            Broom { path: vec![0, 1], bristles: blue[..2].to_vec() }
        } else {
            let s: Vec<usize> = (2..6).filter(|&x| red(&[0, 1, x])).take(3).collect();
            let mut found = None;
            'pairs: for (i, &x) in s.iter().enumerate() {
                for &y in &s[i + 1..] {
                    if red(&[0, x, y]) || red(&[1, x, y]) {
                        found = Some(vec![0, 1, x, y]);
                        break 'pairs;
                    }
                }
            }
            if let Some(v) = found {
                trace.push(format!("base: red triple inside {v:?}"));
                return finish(c, three_red(v), trace);
            }
            Broom { path: vec![0, s[0]], bristles: vec![s[1], s[2]] }
        }
    };
    trace.push(format!("base: {broom}"));

    for step in 4..=n {
        let top = 3 * step - 3;
        if big < top {
            let context = format!("{big} vertices, step {step} needs {top}");
            return stall(c, &targets, &format!("step {step}"), context, big, None, trace);
        }
        let s = [top - 3, top - 2, top - 1];
        let p = &broom.path;
        let last = *p.last().expect("path is non-empty");
        let (b1, b2) = (broom.bristles[0], broom.bristles[1]);

        let blue_with = |u: usize, v: usize| -> Vec<usize> { s.iter().copied().filter(|&x| !red(&[u, v, x])).collect() };
        let via_b1 = blue_with(last, b1);
        if via_b1.len() >= 2 {
            broom = extend(p, b1, via_b1[..2].to_vec());
            trace.push(format!("step {step}: two blue triples through ({last}, {b1}), {broom}"));
            continue;
        }
        let via_b2 = blue_with(last, b2);
        if via_b2.len() >= 2 {
            broom = extend(p, b2, via_b2[..2].to_vec());
            trace.push(format!("step {step}: two blue triples through ({last}, {b2}), {broom}"));
            continue;
        }
        let w = s
            .iter()
            .copied()
            .find(|&x| red(&[last, b1, x]) && red(&[last, b2, x]))
            .expect("at most one blue triple through each bristle");
        if red(&[last, b1, b2]) || red(&[b1, b2, w]) {
            trace.push(format!("step {step}: red triple inside {:?}", [last, b1, b2, w]));
            return finish(c, three_red(vec![last, b1, b2, w]), trace);
        }
        let rest: Vec<usize> = s.iter().copied().filter(|&x| x != w).collect();
        if let Some(&z) = rest.iter().find(|&&z| !red(&[b1, b2, z])) {
            let mut path = p[1..].to_vec();
            path.extend([b1, b2]);
            broom = Broom { path, bristles: vec![w.min(z), w.max(z)] };
            trace.push(format!("step {step}: ({b1}, {b2}) closes blue with {w} and {z}, {broom}"));
            continue;
        }
        if let Some(&x) = rest.iter().find(|&&x| !red(&[last, b1, x])) {
            let mut path = p.clone();
            path.push(b1);
            broom = Broom { path, bristles: vec![b2, x] };
            trace.push(format!("step {step}: ({last}, {b1}) closes blue with {b2} and {x}, {broom}"));
            continue;
        }
        // Both of the rest are red with (last, b1) and with (b1, b2).
        if let Some(&x) = rest.iter().find(|&&x| red(&[last, b2, x])) {
            trace.push(format!("step {step}: red triple inside {:?}", [last, b1, b2, x]));
            return finish(c, three_red(vec![last, b1, b2, x]), trace);
        }
        broom = extend(p, b2, rest);
        trace.push(format!("step {step}: ({last}, {b2}) closes blue with both remaining vertices, {broom}"));
    }
    let mut v = broom.path.clone();
    v.extend(&broom.bristles);
    let pattern = PatternSpec::Broom { k: 3, path: n - 1, bristles: 2 };
    finish(c, Certificate::Embedding(Embedding::new(pattern, Color::Blue, v)), trace)
}

fn extend(path: &[usize], next: usize, bristles: Vec<usize>) -> Broom {
    let mut p = path.to_vec();
    p.push(next);
    Broom { path: p, bristles }
}
