use super::{extensions, finish, stall, Broom, Extraction, Trace};
use crate::certificate::{Certificate, Embedding, Violation, ViolationKind};
use crate::combinatorics::lex_subsets;
use crate::coloring::{Color, OrderedColoring};
use crate::detect::Target;
use crate::error::{Error, Result};
use crate::pattern::PatternSpec;

/// Red H3 violation or a blue tight path on `n` vertices.
///
/// Grows blue brooms with `n` bristles inside the first `2an` vertices. At
/// each step the smallest red set made of the last path vertices and some
/// bristles either extends the broom or closes an H3.
pub fn extract_h3_or_path(c: &OrderedColoring, n: usize) -> Result<Extraction> {
    let k = c.uniformity();
    if k < 3 {
        return Err(Error::InvalidInput(format!("H3 or path extraction needs k >= 3, got k = {k}")));
    }
    if n <= k {
        return Err(Error::InvalidInput(format!("need n > k, got n = {n}, k = {k}")));
    }
    let targets = [
        Target::violation(ViolationKind::H3),
        Target::pattern(PatternSpec::tight(k, n), Color::Blue),
    ];
    let big = c.vertex_count();
    let mut trace = Trace::default();
    let blue_path = |v: Vec<usize>| Certificate::Embedding(Embedding::new(PatternSpec::tight(k, n), Color::Blue, v));

    if big < n + 1 {
        return stall(c, &targets, "base", format!("{big} vertices cannot hold B_(1,{n})"), big, None, trace);
    }
    let mut broom = Broom { path: vec![0], bristles: (1..=n).collect() };
    trace.push(format!("base: {broom}"));

    'grow: while broom.path.len() < n - 1 {
        let a = broom.path.len() + 1;
        let limit = (2 * a * n).min(big);
        let v = &broom.path;
        let w = broom.bristles.clone();
        let last_w = *w.last().expect("n bristles");
        for i in 2..=k {
            if v.len() < k - i {
                continue;
            }
            let s = &v[v.len() - (k - i)..];
            for p in lex_subsets(&w, i) {
                let mut set = s.to_vec();
                set.extend(&p);
                if c.get(&set) == Color::Blue {
                    continue;
                }
                trace.push(format!("step {a}: {set:?} is red"));
                let subs = lex_subsets(&p, i - 1);
                let (p1, p2) = (&subs[0], &subs[1]);
                for q in [p1, p2] {
                    let mut base = s.to_vec();
                    base.extend(q);
                    let ys: Vec<usize> = extensions(c, &base, last_w, limit, Color::Blue).take(n).collect();
                    if ys.len() == n {
                        let mut path = v.clone();
                        path.extend(q);
                        broom = Broom { path, bristles: ys };
                        trace.push(format!("step {a}: {q:?} extends, {broom}"));
                        continue 'grow;
                    }
                }
                let red_with = |q: &[usize], y: usize| {
                    let mut e = s.to_vec();
                    e.extend(q);
                    e.push(y);
                    c.get(&e) == Color::Red
                };
                let Some(y) = (last_w + 1..limit).find(|&y| red_with(p1, y) && red_with(p2, y)) else {
                    let context = format!("no vertex below {limit} closes an H3 on {set:?}");
                    return stall(c, &targets, &format!("step {a}"), context, limit, None, trace);
                };
                set.push(y);
                let cert = Violation::from_vertices(c, ViolationKind::H3, set);
                return finish(c, Certificate::Violation(cert), trace);
            }
        }
        trace.push(format!("step {a}: every k-subset of the bristles is blue"));
        return finish(c, blue_path(w), trace);
    }
    finish(c, blue_path(broom.tight_path(n)), trace)
}
