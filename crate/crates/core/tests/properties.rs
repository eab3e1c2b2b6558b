mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use oramsey::construct::{build_block_coloring, sequence_to_coloring};
use oramsey::detect::{self, count_mono_cliques, find_mono_path_power, find_mono_tight_path, find_violation};
use oramsey::extract::{
    erdos_rado_stepdown, extract_3red_or_broom, extract_f3_or_path, extract_h3_or_path, extract_k4_or_tight_path,
    extract_square_path, ExtractOutcome, SquarePathConfig, StepDownOutcome,
};
use oramsey::search::{exact_ordered_ramsey, SearchConfig};
use oramsey::{Certificate, Color, OrderedColoring, PatternSpec, ViolationKind};

fn coloring(k: usize, n: usize, seed: u64) -> OrderedColoring {
    OrderedColoring::seeded(k, n, seed).unwrap()
}

fn any_color() -> impl Strategy<Value = Color> {
    prop_oneof![Just(Color::Red), Just(Color::Blue)]
}

/// Patterns of uniformity `k` small enough for brute force on 8 vertices.
fn pattern(k: usize) -> BoxedStrategy<PatternSpec> {
    let tight = (k..=6).prop_map(move |len| PatternSpec::TightPath { k, len });
    let clique = (k..=5).prop_map(move |len| PatternSpec::Clique { k, len });
    let broom = (k - 1..=4, 0..=3usize).prop_map(move |(path, bristles)| PatternSpec::Broom { k, path, bristles });
    if k == 2 {
        let pp = (1..=3usize, 1..=6usize).prop_map(|(power, len)| PatternSpec::PathPower { power, len });
        prop_oneof![pp, tight, clique, broom].boxed()
    } else {
        prop_oneof![tight, clique, broom].boxed()
    }
}

fn violation_kind(k: usize) -> impl Strategy<Value = ViolationKind> {
    prop_oneof![Just(ViolationKind::H3), Just(ViolationKind::F3), (2..=k + 1).prop_map(ViolationKind::TRed)]
}

fn valid_extraction(c: &OrderedColoring, outcome: &ExtractOutcome) -> bool {
    outcome.certificate().is_none_or(|cert| certificate_ok(c, &cert))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detectors_agree_with_brute_force(
        (k, p) in (2..=3usize).prop_flat_map(|k| (Just(k), pattern(k))),
        n in 0..=8usize,
        color in any_color(),
        seed in any::<u64>(),
    ) {
        let c = coloring(k, n, seed);
        let found = detect::find(&c, &p, color).unwrap();
        prop_assert_eq!(found.is_some(), brute_contains(&c, &p, color));
        if let Some(e) = found {
            prop_assert!(embedding_ok(&c, &p, color, &e.vertices));
            // Lexicographically first: nothing smaller works.
            let first = subsets(n, vertex_count(&p)).into_iter().find(|v| embedding_ok(&c, &p, color, v));
            prop_assert_eq!(Some(e.vertices), first);
        }
    }

    #[test]
    fn violations_agree_with_brute_force(
        (k, kind) in (2..=3usize).prop_flat_map(|k| (Just(k), violation_kind(k))),
        n in 0..=8usize,
        seed in any::<u64>(),
    ) {
        let c = coloring(k, n, seed);
        let found = find_violation(&c, kind).unwrap();
        prop_assert_eq!(found.is_some(), brute_violation(&c, kind));
        if let Some(v) = found {
            prop_assert!(violation_ok(&c, kind, &v.vertices));
        }
    }

    #[test]
    fn tight_path_witnesses_shrink(k in 2..=4usize, seed in any::<u64>(), color in any_color()) {
        let c = coloring(k, 14, seed);
        for len in (k..=9).rev() {
            if let Some(e) = find_mono_tight_path(&c, len, color).unwrap() {
                for shorter in k..len {
                    let prefix = &e.vertices[..shorter];
                    prop_assert!(embedding_ok(&c, &PatternSpec::tight(k, shorter), color, prefix));
                    prop_assert!(find_mono_tight_path(&c, shorter, color).unwrap().is_some());
                }
                break;
            }
        }
    }

    #[test]
    fn detectors_sound_on_larger_inputs(seed in any::<u64>(), n in 20..=60usize, color in any_color()) {
        let g = coloring(2, n, seed);
        for (power, len) in [(1, 6), (2, 5), (3, 5)] {
            if let Some(e) = find_mono_path_power(&g, power, len, color).unwrap() {
                let p = PatternSpec::PathPower { power, len };
                prop_assert!(embedding_ok(&g, &p, color, &e.vertices));
            }
        }
        let h = coloring(3, n, seed);
        for p in [PatternSpec::tight(3, 7), PatternSpec::Clique { k: 3, len: 4 }, PatternSpec::Broom { k: 3, path: 4, bristles: 3 }] {
            if let Some(e) = detect::find(&h, &p, color).unwrap() {
                prop_assert!(embedding_ok(&h, &p, color, &e.vertices));
            }
        }
        for kind in [ViolationKind::H3, ViolationKind::F3, ViolationKind::TRed(4)] {
            if let Some(v) = find_violation(&h, kind).unwrap() {
                prop_assert!(violation_ok(&h, kind, &v.vertices));
            }
        }
    }

    #[test]
    fn sequence_bridge(seq in Just((0..30i64).collect::<Vec<_>>()).prop_shuffle(), len in 1..=30usize, s in 1..=8usize, n in 1..=8usize) {
        let seq = &seq[..len];
        let (lis, lds) = lis_lds(seq);
        let c = sequence_to_coloring(seq).unwrap();
        prop_assert_eq!(find_mono_path_power(&c, 1, s, Color::Red).unwrap().is_some(), lis >= s);
        prop_assert_eq!(find_mono_path_power(&c, 1, n, Color::Blue).unwrap().is_some(), lds >= n);
    }

    #[test]
    fn file_round_trip(k in 2..=4usize, n in 0..=20usize, seed in any::<u64>()) {
        let c = coloring(k, n, seed);
        let mut bytes = Vec::new();
        c.write_to(&mut bytes, false).unwrap();
        let (back, header) = OrderedColoring::read_from(&mut bytes.as_slice()).unwrap();
        prop_assert_eq!((header.k, header.n, header.unverified), (k, n, false));
        prop_assert_eq!(back, c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn extractors_never_emit_invalid_certificates(seed in any::<u64>(), n in 4..=6usize, big in 6..=40usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sparse = biased(3, big, 1, 12, &mut rng);
        let dense = coloring(3, big, seed);
        for c in [&sparse, &dense] {
            prop_assert!(valid_extraction(c, &extract_3red_or_broom(c, n).unwrap().outcome));
            prop_assert!(valid_extraction(c, &extract_h3_or_path(c, n).unwrap().outcome));
            prop_assert!(valid_extraction(c, &extract_f3_or_path(c, n).unwrap().outcome));
            prop_assert!(valid_extraction(c, &extract_k4_or_tight_path(c, n, 2).unwrap().outcome));
        }
        let g = biased(2, big, 1, 3, &mut rng);
        let cfg = SquarePathConfig { min_recursion_size: 4, ..SquarePathConfig::default() };
        prop_assert!(valid_extraction(&g, &extract_square_path(&g, n, n, &cfg).unwrap().outcome));
    }

    #[test]
    fn square_path_never_contradicts_ground_truth(seed in any::<u64>(), big in 4..=14usize, a in 2..=5usize, b in 2..=5usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = biased(2, big, 1, 2, &mut rng);
        let red = brute_contains(&c, &PatternSpec::square_path(a), Color::Red);
        let blue = brute_contains(&c, &PatternSpec::square_path(b), Color::Blue);
        for cfg in [SquarePathConfig::default(), SquarePathConfig { min_recursion_size: 4, ..SquarePathConfig::default() }] {
            let x = extract_square_path(&c, a, b, &cfg).unwrap();
            match x.outcome.certificate() {
                Some(cert) => {
                    prop_assert!(certificate_ok(&c, &cert));
                    let exists = if cert.color() == Color::Red { red } else { blue };
                    prop_assert!(exists);
                }
                None => {
                    // Only the recursion may miss an existing target; exact search never does.
                    let exact = big < 4 * a.max(b);
                    prop_assert!(!exact || (!red && !blue));
                }
            }
        }
    }

    #[test]
    fn stepdown_is_pre_homogeneous(seed in any::<u64>(), k in 3..=4usize, big in 4..=60usize, len in 3..=7usize) {
        let c = coloring(k, big, seed);
        let len = len.max(k);
        match erdos_rado_stepdown(&c, len).unwrap() {
            StepDownOutcome::PreHomogeneous(s) => {
                prop_assert_eq!(s.vertices.len(), len);
                prop_assert!(pre_homogeneous(&c, &s.vertices));
            }
            StepDownOutcome::Failure(_) => prop_assert!(big < 1 << len),
        }
        // Length k needs nothing beyond k vertices.
        prop_assert!(matches!(erdos_rado_stepdown(&c, k).unwrap(), StepDownOutcome::PreHomogeneous(_)));
    }
}

#[test]
fn all_red_clique_counts() {
    for n in 0..=30usize {
        let c = OrderedColoring::new(2, n, Color::Red).unwrap();
        let want = subsets(n, 4).len() as u64;
        assert_eq!(count_mono_cliques(&c, 4).unwrap(), (want, 0));
    }
}

#[test]
fn block_colorings_avoid_both_paths() {
    for s in 2..=8 {
        for n in 2..=8 {
            let c = build_block_coloring(s, n).unwrap();
            assert_eq!(c.vertex_count(), (s - 1) * (n - 1));
            if c.vertex_count() <= 20 {
                assert!(!brute_contains(&c, &PatternSpec::path(s), Color::Red));
                assert!(!brute_contains(&c, &PatternSpec::path(n), Color::Blue));
            }
            assert!(find_mono_path_power(&c, 1, s, Color::Red).unwrap().is_none());
            assert!(find_mono_path_power(&c, 1, n, Color::Blue).unwrap().is_none());
        }
    }
}

#[test]
fn search_witnesses_and_symmetry() {
    let cfg = SearchConfig::default();
    for s in 2..=4 {
        for n in s..=4 {
            let (red, blue) = (PatternSpec::path(s), PatternSpec::path(n));
            let r = exact_ordered_ramsey(&red, &blue, &cfg).unwrap();
            assert_eq!(r.value, (s - 1) * (n - 1) + 1);
            assert_eq!(r.witness.vertex_count(), r.value - 1);
            assert!(!brute_contains(&r.witness, &red, Color::Red));
            assert!(!brute_contains(&r.witness, &blue, Color::Blue));
            let swapped = exact_ordered_ramsey(&blue, &red, &cfg).unwrap();
            assert_eq!(swapped.value, r.value);
            let flipped = swapped.witness.swapped();
            assert!(!brute_contains(&flipped, &red, Color::Red));
            assert!(!brute_contains(&flipped, &blue, Color::Blue));
        }
    }
}

#[test]
fn search_is_deterministic_across_workers() {
    let (red, blue) = (PatternSpec::path(3), PatternSpec::path(4));
    let run = |threads| {
        let cfg = SearchConfig { threads: Some(threads), seed_witnesses: false, split_depth: 6, ..SearchConfig::default() };
        exact_ordered_ramsey(&red, &blue, &cfg).unwrap()
    };
    let one = run(1);
    for threads in [2, 3] {
        let other = run(threads);
        assert_eq!((other.value, other.nodes_explored), (one.value, one.nodes_explored));
        assert_eq!(other.witness, one.witness);
    }
}

#[test]
fn extremal_inputs_fail_honestly() {
    // eh-b(n) has no 4-set with three red triples, hence no red K4, and no blue tight path on n.
    for n in 4..=8 {
        let c = oramsey::construct::build_eh_b_lower(n).unwrap();
        match extract_k4_or_tight_path(&c, n, 2).unwrap().outcome {
            ExtractOutcome::Failure(f) => assert!(f.confirmed),
            other => panic!("eh-b({n}): {other:?}"),
        }
        // An extra all-blue top vertex completes a blue tight path on n vertices,
        // but a broom on n - 1 path vertices with two bristles still does not fit.
        let padded = OrderedColoring::from_fn(3, c.vertex_count() + 1, |t| {
            if t[2] == c.vertex_count() { Color::Blue } else { c.get(t) }
        })
        .unwrap();
        assert!(brute_contains(&padded, &PatternSpec::tight(3, n), Color::Blue));
        match extract_3red_or_broom(&padded, n).unwrap().outcome {
            ExtractOutcome::Failure(f) => assert!(f.confirmed),
            other => panic!("padded eh-b({n}): {other:?}"),
        }
        match extract_3red_or_broom(&padded, n - 1).unwrap().outcome.certificate() {
            Some(cert @ Certificate::Embedding(_)) => assert!(certificate_ok(&padded, &cert)),
            other => panic!("padded eh-b({n}) with n - 1: {other:?}"),
        }
    }
}
