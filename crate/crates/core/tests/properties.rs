mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use drtest::adian::{is_discretizable, LabeledEdgeGraph};
use drtest::checker::{check_verdict, naive_weight_matrix};
use drtest::ivanov::{distinguished_cyclic_perm, ivanov_sequence};
use drtest::linalg::null_space;
use drtest::log_tools::is_deforestable;
use drtest::rational::{int, ints, Rational};
use drtest::word::{Letter, Word};
use drtest::{
    detect_adian, itest_fixed, left_graph, log_verdict, parse_log, parse_presentation, right_graph,
    weight_matrix, AdianPresentation, Log, Presentation,
};

use common::exponent_sequence;

fn letter() -> impl Strategy<Value = Letter> {
    (0..3usize, any::<bool>())
        .prop_map(|(g, pos)| if pos { Letter::pos(g) } else { Letter::neg(g) })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 1..=max).prop_map(Word::new)
}

fn log() -> impl Strategy<Value = Log> {
    (1..=5usize).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0..n), 0..=6).prop_map(move |edges| {
            let text: Vec<String> = std::iter::once(format!(
                "vertices: {}",
                (1..=n)
                    .map(|i| format!("v{i}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ))
            .chain(
                edges
                    .iter()
                    .map(|(a, l, b)| format!("v{} v{} v{}", a + 1, l + 1, b + 1)),
            )
            .collect();
            parse_log(&text.join("\n")).expect("generated LOG parses")
        })
    })
}

fn adian() -> impl Strategy<Value = AdianPresentation> {
    let positive = |len: usize| prop::collection::vec((0..4usize).prop_map(Letter::pos), len);
    prop::collection::vec(
        (1..=4usize).prop_flat_map(move |len| (positive(len), positive(len))),
        1..=4,
    )
    .prop_map(|rels| {
        let rels = rels
            .into_iter()
            .map(|(u, v)| (Word::new(u), Word::new(v)))
            .collect();
        AdianPresentation::new((1..=4).map(|i| format!("x{i}")).collect(), rels)
            .expect("positive words")
    })
}

/// Deletes a random deletable edge at each step instead of the lowest one.
fn random_deletion(g: &LabeledEdgeGraph, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = vec![true; g.edges.len()];
    loop {
        let open: Vec<usize> = (0..g.edges.len())
            .filter(|&e| present[e] && g.deletable(&present, e).is_some())
            .collect();
        match open.choose(&mut rng) {
            Some(&e) => present[e] = false,
            None => return present.iter().all(|p| !p),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn deletion_order_does_not_matter(a in adian(), seed in any::<u64>()) {
        for g in [left_graph(&a), right_graph(&a)] {
            prop_assert_eq!(is_discretizable(&g), random_deletion(&g, seed));
        }
    }

    #[test]
    fn labels_and_endpoints_come_from_the_relation(a in adian()) {
        let g = left_graph(&a);
        prop_assert_eq!(g.edges.len(), a.relations().len());
        for (e, (u, v)) in g.edges.iter().zip(a.relations()) {
            let mut letters: Vec<usize> =
                u.letters().iter().chain(v.letters()).map(|l| l.generator).collect();
            letters.sort_unstable();
            letters.dedup();
            let mut labels = e.labels.clone();
            labels.dedup();
            prop_assert!(labels.iter().all(|x| letters.contains(x)));
            prop_assert!(letters.contains(&e.a) && letters.contains(&e.b));
        }
    }

    #[test]
    fn opposite_log_is_deforestable_together(g in log()) {
        prop_assert_eq!(is_deforestable(&g), is_deforestable(&g.opposite()));
    }

    #[test]
    fn log_witnesses_pass_the_checker(g in log()) {
        let v = log_verdict(&g);
        prop_assert!(check_verdict(&g.to_presentation(), Some(&g), &v).is_ok());
        if is_deforestable(&g) {
            prop_assert!(v.is_dr());
        }
    }

    #[test]
    fn log_presentations_are_adian(g in log()) {
        let a = detect_adian(&g.to_presentation());
        prop_assert!(a.is_some());
        prop_assert!(a.unwrap().is_equal_length());
    }

    #[test]
    fn sequences_of_rotations_starting_with_x(w in word(20)) {
        let beta = w.exponent_of(2);
        prop_assume!(beta != 0);
        let w = if beta < 0 { w.inverse() } else { w };
        let b = beta.abs();
        for start in 1..=w.len() {
            let rot = w.rotate(start).unwrap();
            if rot.letters()[0] != Letter::pos(2) {
                continue;
            }
            let a = ivanov_sequence(&rot, 2).unwrap();
            let letters: Vec<(usize, i64)> =
                rot.letters().iter().map(|l| (l.generator, l.sign())).collect();
            prop_assert_eq!(&a, &exponent_sequence(&letters, 2));
            prop_assert_eq!(a[0], b);
            prop_assert!(a.windows(2).all(|p| (p[1] - p[0]).abs() <= 1));
            prop_assert!(*a.last().unwrap() == 0 || *a.last().unwrap() == 1);
        }
        let d = distinguished_cyclic_perm(&w, 2).unwrap();
        prop_assert!(d.sequence[1..].iter().all(|&x| x < b));
    }

    #[test]
    fn weight_matrix_matches_letterwise_sum(
        rels in prop::collection::vec(word(8), 1..=2),
        c in prop::collection::vec(-3i64..=3, 3),
    ) {
        let p = Presentation::with_default_names(3, rels).unwrap();
        let rows: Vec<Vec<i64>> = p.abelianizations().into_iter().map(|a| a.0).collect();
        let basis = null_space(&rows, 3);
        prop_assume!(!basis.is_empty());
        let v: Vec<Rational> = (0..3)
            .map(|i| basis.iter().zip(&c).map(|(b, k)| &b[i] * int(*k)).sum())
            .collect();
        let m = weight_matrix(&p, &v).unwrap();
        let naive = naive_weight_matrix(&p, &v);
        for (i, row) in naive.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                prop_assert_eq!(m.entry(i, j), entry.as_slice());
            }
        }
    }

    #[test]
    fn goodness_ignores_positive_scaling_and_relator_order(
        rels in prop::collection::vec(word(6), 1..=2),
        v in prop::collection::vec(-2i64..=2, 3),
        k in 1i64..=5,
    ) {
        let p = Presentation::with_default_names(3, rels).unwrap();
        let v = ints(&v);
        let good = itest_fixed(&p, &v).map(|x| x.is_dr()).unwrap_or(false);
        let scaled: Vec<Rational> = v.iter().map(|x| x * int(k)).collect();
        prop_assert_eq!(good, itest_fixed(&p, &scaled).map(|x| x.is_dr()).unwrap_or(false));
        let mut reversed = p.relators().to_vec();
        reversed.reverse();
        let q = Presentation::with_default_names(3, reversed).unwrap();
        prop_assert_eq!(good, itest_fixed(&q, &v).map(|x| x.is_dr()).unwrap_or(false));
    }

    #[test]
    fn presentations_print_and_parse_back(rels in prop::collection::vec(word(8), 1..=3)) {
        let p = Presentation::with_default_names(3, rels).unwrap();
        prop_assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn logs_print_and_parse_back(g in log()) {
        prop_assert_eq!(parse_log(&g.to_string()).unwrap(), g);
    }
}
