//! Exponent sequences of an extra generator and the perturbation
//! `x_i^M r'` that makes its weights have a unique extremum.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rational::{self, Rational};
use crate::word::{Letter, Word};

/// `a_1..a_p`: the exponent of `x` in `s(k_j, r)` at each occurrence `k_j`
/// of `x`.
pub fn ivanov_sequence(r: &Word, x: usize) -> Result<Vec<i64>> {
    let occ = r.occurrences(x);
    if occ.is_empty() {
        return Err(Error::Precondition(
            "generator does not occur in the word".into(),
        ));
    }
    occ.iter()
        .map(|&k| Ok(r.suffix_s(k)?.exponent_of(x)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishedRotation {
    /// Whether the word was inverted to make the exponent positive.
    pub inverted: bool,
    /// 1-based start of the rotation in the (possibly inverted) word.
    pub rotation: usize,
    #[serde(skip)]
    pub word: Word,
    pub sequence: Vec<i64>,
}

/// Whether a rotation starts with `x` and its sequence has `a_1 = beta` as
/// strict maximum.
pub fn qualifies(r: &Word, x: usize, beta: i64) -> bool {
    if r.letters().first() != Some(&Letter::pos(x)) {
        return false;
    }
    match ivanov_sequence(r, x) {
        Ok(a) => a[0] == beta && a[1..].iter().all(|&ai| ai < beta),
        Err(_) => false,
    }
}

/// 1-based starts of every qualifying rotation of `r` (already oriented so
/// that the exponent of `x` is positive).
pub fn qualifying_rotations(r: &Word, x: usize) -> Vec<usize> {
    let beta = r.exponent_of(x);
    (1..=r.len())
        .filter(|&t| qualifies(&r.rotate(t).expect("position in range"), x, beta))
        .collect()
}

/// The first rotation starting with `x^{+1}` whose exponent sequence has a
/// strict maximum at its first term, after replacing `r` by its inverse
/// when the exponent `beta` of `x` is negative.
pub fn distinguished_cyclic_perm(r: &Word, x: usize) -> Result<DistinguishedRotation> {
    let beta = r.exponent_of(x);
    if beta == 0 {
        return Err(Error::Precondition(
            "the exponent of the generator is zero".into(),
        ));
    }
    let inverted = beta < 0;
    let w = if inverted { r.inverse() } else { r.clone() };
    let rotation = *qualifying_rotations(&w, x)
        .first()
        .ok_or_else(|| Error::Precondition("no qualifying rotation".into()))?;
    let word = w.rotate(rotation)?;
    let sequence = ivanov_sequence(&word, x)?;
    Ok(DistinguishedRotation {
        inverted,
        rotation,
        word,
        sequence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Perturbation {
    pub rotation: DistinguishedRotation,
    /// Index of the perturbing generator `x_i`.
    #[serde(serialize_with = "crate::verdict::one_based_one")]
    pub generator: usize,
    pub beta: i64,
    /// The weights at `M = 0`, one per occurrence of `x` in `r'`.
    #[serde(serialize_with = "rational::serialize_vec")]
    pub constants: Vec<Rational>,
    /// The coefficient `v_i / beta` of `-M a_j` in the weights.
    #[serde(serialize_with = "rational::serialize")]
    pub slope: Rational,
    /// Least `M_0` such that every `|M| >= M_0` gives a unique extremum.
    pub m0: u64,
}

impl Perturbation {
    /// `c_j - (M v_i / beta) a_j` for every occurrence.
    pub fn weights(&self, m: i64) -> Vec<Rational> {
        let t = &self.slope * rational::int(m);
        self.constants
            .iter()
            .zip(&self.rotation.sequence)
            .map(|(c, &a)| c - &t * rational::int(a))
            .collect()
    }

    /// Whether the first weight is a strict maximum or a strict minimum.
    pub fn has_unique_extremum(&self, m: i64) -> bool {
        let w = self.weights(m);
        w[1..].iter().all(|x| *x < w[0]) || w[1..].iter().all(|x| *x > w[0])
    }

    /// The relator `x_i^M r'`.
    pub fn perturbed_relator(&self, m: i64) -> Word {
        Word::from_powers(&[(self.generator, m)]).concat(&self.rotation.word)
    }

    /// `q` with the extra generator `name` and the relator `x_i^M r'`.
    pub fn perturbed_presentation(
        &self,
        q: &Presentation,
        name: &str,
        m: i64,
    ) -> Result<Presentation> {
        let mut gens = q.generators().to_vec();
        gens.push(name.to_string());
        let mut rels = q.relators().to_vec();
        rels.push(self.perturbed_relator(m));
        Presentation::new(gens, rels)
    }
}

/// Computes `r'`, the weight constants and the exact threshold `M_0` for
/// the extra generator `x = n` (with `n` the number of generators of `q`),
/// the generator `x_i` and a vector `v` orthogonal to the relators of `q`.
pub fn perturbation_bound(
    q: &Presentation,
    r: &Word,
    i: usize,
    v: &[Rational],
) -> Result<Perturbation> {
    let n = q.num_generators();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, size: n });
    }
    if !r.uses_only(n + 1) {
        return Err(Error::Precondition(
            "the word uses generators beyond the extra one".into(),
        ));
    }
    for (j, rel) in q.relators().iter().enumerate() {
        if !rational::dot_int(rel.abelianize(n).as_slice(), v).is_zero() {
            return Err(Error::NotOrthogonal { relator: j + 1 });
        }
    }
    if v[i].is_zero() {
        return Err(Error::Precondition(
            "the chosen coordinate of v is zero".into(),
        ));
    }
    let rotation = distinguished_cyclic_perm(r, n)?;
    let beta = rotation.word.exponent_of(n);
    let beta_q = rational::int(beta);
    // v'_0 = (v, alpha_0) is orthogonal to q'(r')
    let ab = rotation.word.abelianize(n + 1);
    let alpha0 = -rational::dot_int(&ab.as_slice()[..n], v) / &beta_q;
    let mut v0 = v.to_vec();
    v0.push(alpha0);
    let suffixes = rotation.word.suffix_abelianizations(n + 1);
    let constants: Vec<Rational> = rotation
        .word
        .occurrences(n)
        .iter()
        .map(|&k| rational::dot_int(&suffixes[rotation.word.s_start(k)], &v0))
        .collect();
    let slope = &v[i] / &beta_q;
    let m0 = threshold(&constants, &rotation.sequence, beta, &slope);
    Ok(Perturbation {
        rotation,
        generator: i,
        beta,
        constants,
        slope,
        m0,
    })
}

/// With `t = M * slope`, the family fails exactly for `t` in
/// `[min T_j, max T_j]`, `T_j = (c_1 - c_j) / (beta - a_j)`; the threshold is
/// one more than the largest `|M|` over integers in that interval.
fn threshold(c: &[Rational], a: &[i64], beta: i64, slope: &Rational) -> u64 {
    let ts: Vec<Rational> = (1..c.len())
        .map(|j| (&c[0] - &c[j]) / rational::int(beta - a[j]))
        .collect();
    let (Some(lo), Some(hi)) = (ts.iter().min(), ts.iter().max()) else {
        return 0;
    };
    let (m_lo, m_hi) = {
        let (x, y) = (lo / slope, hi / slope);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let (first, last) = (m_lo.ceil().to_integer(), m_hi.floor().to_integer());
    if first > last {
        return 0;
    }
    let far = first.abs().max(last.abs());
    u64::try_from(far).expect("threshold fits in u64") + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn word(p: &Presentation, text: &str) -> Word {
        p.parse_word(text).unwrap()
    }

    #[test]
    fn sequences() {
        let p = parse_presentation("x, y | ").unwrap();
        assert_eq!(
            ivanov_sequence(&word(&p, "x y x^-1 y^-1"), 0).unwrap(),
            vec![0, 0]
        );
        assert_eq!(ivanov_sequence(&word(&p, "x"), 0).unwrap(), vec![1]);
        assert!(ivanov_sequence(&word(&p, "y"), 0).is_err());
    }

    #[test]
    fn distinguished_rotation_of_short_words() {
        let p = parse_presentation("x, y | ").unwrap();
        let d = distinguished_cyclic_perm(&word(&p, "x"), 0).unwrap();
        assert_eq!(d.rotation, 1);
        let d = distinguished_cyclic_perm(&word(&p, "y x"), 0).unwrap();
        assert_eq!((d.rotation, d.sequence.clone()), (2, vec![1]));
        assert_eq!(d.word, word(&p, "x y"));
        let d = distinguished_cyclic_perm(&word(&p, "x^-1 y"), 0).unwrap();
        assert!(d.inverted);
        assert!(distinguished_cyclic_perm(&word(&p, "x y x^-1"), 0).is_err());
    }

    #[test]
    fn single_occurrence_needs_no_perturbation() {
        let q = parse_presentation("y | ").unwrap();
        let r = parse_presentation("y, x | ")
            .unwrap()
            .parse_word("y x y")
            .unwrap();
        let b = perturbation_bound(&q, &r, 0, &[rational::int(1)]).unwrap();
        assert_eq!(b.m0, 0);
        assert!(b.has_unique_extremum(0));
    }
}
