//! Reproducible random instances: LOTs, equal-length Adian presentations
//! and commutator towers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kervaire::build_tower;
use crate::presentation::{AdianPresentation, Log, LogEdge};
use crate::word::{Letter, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random labeled tree on `n` vertices, decoded from a random
/// Pruefer sequence.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// A LOT on `n` vertices: a random tree, random orientations, random labels.
pub fn random_lot(rng: &mut impl Rng, n: usize) -> Log {
    let edges = random_tree(rng, n)
        .into_iter()
        .map(|(a, b)| {
            let (init, terminal) = if rng.gen() { (a, b) } else { (b, a) };
            LogEdge {
                init,
                label: rng.gen_range(0..n),
                terminal,
            }
        })
        .collect();
    Log::with_default_names(n.max(1), edges).expect("edges use declared vertices")
}

/// A LOG with `n` vertices and `m` arbitrary edges.
pub fn random_log(rng: &mut impl Rng, n: usize, m: usize) -> Log {
    let edges = (0..m)
        .map(|_| LogEdge {
            init: rng.gen_range(0..n),
            label: rng.gen_range(0..n),
            terminal: rng.gen_range(0..n),
        })
        .collect();
    Log::with_default_names(n, edges).expect("edges use declared vertices")
}

fn positive_word(rng: &mut impl Rng, n: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| Letter::pos(rng.gen_range(0..n))).collect())
}

/// `n` generators and between one and `n` relations `U = V` with
/// `len(U) = len(V) <= max_len`.
pub fn random_adian(rng: &mut impl Rng, n: usize, max_len: usize) -> AdianPresentation {
    let m = rng.gen_range(1..=n.max(1));
    let relations = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            (positive_word(rng, n, len), positive_word(rng, n, len))
        })
        .collect();
    let names = (1..=n).map(|i| format!("x{i}")).collect();
    AdianPresentation::new(names, relations).expect("positive nonempty words")
}

/// Words `w_1..w_size` for a tower, each positive or negative in `x, y`
/// with length at most `max_len`.
pub fn random_tower_words(rng: &mut impl Rng, size: usize, max_len: usize) -> Vec<Word> {
    (0..size)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            let w = positive_word(rng, 2, len);
            if rng.gen() {
                w
            } else {
                w.inverse()
            }
        })
        .collect()
}

pub fn random_tower(rng: &mut impl Rng, size: usize, max_len: usize) -> Result<(Vec<Word>, Word)> {
    let words = random_tower_words(rng, size, max_len);
    let tower = build_tower(&words, true)?;
    Ok((words, tower))
}

/// Shuffled copy, for order-independence checks.
pub fn shuffled<T: Clone>(rng: &mut impl Rng, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::detect_adian;

    #[test]
    fn trees_are_trees() {
        let mut r = rng(3);
        for n in 1..9 {
            let g = random_lot(&mut r, n);
            assert_eq!(g.num_edges(), n.saturating_sub(1));
            assert!(g.is_tree());
        }
    }

    #[test]
    fn adian_round_trip() {
        let mut r = rng(5);
        for _ in 0..50 {
            let a = random_adian(&mut r, 4, 4);
            assert!(a.is_equal_length());
            assert_eq!(detect_adian(&a.to_presentation()).as_ref(), Some(&a));
        }
    }

    #[test]
    fn same_seed_same_instances() {
        let a: Vec<String> = (0..5)
            .map(|_| random_lot(&mut rng(7), 6).to_string())
            .collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
    }
}
