//! Words over a finite alphabet of generators and their inverses.
//!
//! Words are stored exactly as written. Nothing here reduces implicitly:
//! suffixes, occurrences and weights are all defined on the literal letter
//! sequence of a relator, so `x x^-1` and the empty word are different words.
//!
//! Positions in the public API are 1-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter {
            generator,
            positive: true,
        }
    }

    pub fn neg(generator: usize) -> Self {
        Letter {
            generator,
            positive: false,
        }
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            positive: !self.positive,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.positive != other.positive
    }
}

/// Signed letter count per generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Whether a one-generator word is a strong Dyck word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DyckClass {
    /// Every proper nonempty prefix has positive exponent. Words of length at
    /// most one satisfy this vacuously.
    Positive,
    Negative,
    No,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    /// Builds a word from `(generator, exponent)` powers, e.g.
    /// `[(0, 3), (1, 1)]` is `x^3 y`. Zero exponents contribute nothing.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(g, e) in powers {
            let letter = if e > 0 {
                Letter::pos(g)
            } else {
                Letter::neg(g)
            };
            letters.extend(std::iter::repeat_n(letter, e.unsigned_abs() as usize));
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The `k`-th letter, 1-based.
    pub fn letter(&self, k: usize) -> Result<Letter> {
        self.check_position(k)?;
        Ok(self.letters[k - 1])
    }

    fn check_position(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            Err(Error::PositionOutOfRange {
                position: k,
                length: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// The commutator `a b a^-1 b^-1`, unreduced.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    pub fn power(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Free reduction, computed with a stack.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    /// Strips conjugating letters from a freely reduced word.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.reduce();
        let l = &reduced.letters;
        let (mut i, mut j) = (0, l.len());
        while j > i + 1 && l[i].cancels(l[j - 1]) {
            i += 1;
            j -= 1;
        }
        Word {
            letters: l[i..j].to_vec(),
        }
    }

    /// `w^{(k)}`: the word with the first `k - 1` letters removed. `k` may be
    /// `len + 1`, which yields the empty word.
    pub fn suffix(&self, k: usize) -> Result<Word> {
        if k == 0 || k > self.len() + 1 {
            return Err(Error::PositionOutOfRange {
                position: k,
                length: self.len(),
            });
        }
        Ok(Word {
            letters: self.letters[k - 1..].to_vec(),
        })
    }

    /// `s(k, w)`: `w^{(k)}` when the `k`-th letter is positive, `w^{(k+1)}`
    /// when it is negative.
    pub fn suffix_s(&self, k: usize) -> Result<Word> {
        let letter = self.letter(k)?;
        self.suffix(if letter.positive { k } else { k + 1 })
    }

    /// Start index (0-based into the letters) of `s(k, w)`.
    pub(crate) fn s_start(&self, k: usize) -> usize {
        if self.letters[k - 1].positive {
            k - 1
        } else {
            k
        }
    }

    /// Positions (1-based, ascending) at which generator `i` occurs with either sign.
    pub fn occurrences(&self, i: usize) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, l)| l.generator == i)
            .map(|(k, _)| k + 1)
            .collect()
    }

    pub fn exponent_of(&self, i: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == i)
            .map(|l| l.sign())
            .sum()
    }

    pub fn total_exponent(&self) -> i64 {
        self.letters.iter().map(|l| l.sign()).sum()
    }

    /// The image in `Z^n`. Letters with generator `>= n` are ignored; callers
    /// validate alphabets up front.
    pub fn abelianize(&self, n: usize) -> ExponentVector {
        let mut v = vec![0i64; n];
        for l in &self.letters {
            if l.generator < n {
                v[l.generator] += l.sign();
            }
        }
        ExponentVector(v)
    }

    /// `q(w^{(k)})` for every `k` in `1..=len+1`, computed right to left.
    /// Entry `k - 1` holds the abelianization of `w^{(k)}`.
    pub(crate) fn suffix_abelianizations(&self, n: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; n]; self.len() + 1];
        for k in (0..self.len()).rev() {
            let mut v = out[k + 1].clone();
            let l = self.letters[k];
            if l.generator < n {
                v[l.generator] += l.sign();
            }
            out[k] = v;
        }
        out
    }

    /// Rotation starting at 1-based position `start`.
    pub fn rotate(&self, start: usize) -> Result<Word> {
        self.check_position(start)?;
        let mut letters = self.letters[start - 1..].to_vec();
        letters.extend_from_slice(&self.letters[..start - 1]);
        Ok(Word { letters })
    }

    /// All `len` rotations, in rotation order, starting with the word itself.
    pub fn cyclic_permutations(&self) -> Vec<Word> {
        (1..=self.len())
            .map(|k| self.rotate(k).expect("position in range"))
            .collect()
    }

    /// The subsequence of letters on generator `i`.
    pub fn x_shape(&self, i: usize) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .copied()
                .filter(|l| l.generator == i)
                .collect(),
        }
    }

    pub fn is_strong_dyck(&self) -> Result<DyckClass> {
        if let Some(first) = self.letters.first() {
            if self.letters.iter().any(|l| l.generator != first.generator) {
                return Err(Error::MultipleGenerators);
            }
        }
        let mut running = 0i64;
        let (mut all_pos, mut all_neg) = (true, true);
        for l in self.letters.iter().take(self.len().saturating_sub(1)) {
            running += l.sign();
            all_pos &= running > 0;
            all_neg &= running < 0;
        }
        Ok(if all_pos {
            DyckClass::Positive
        } else if all_neg {
            DyckClass::Negative
        } else {
            DyckClass::No
        })
    }

    /// Maximal runs of one letter: `(generator, signed run length)`.
    pub fn syllables(&self) -> Vec<(usize, i64)> {
        let mut out: Vec<(usize, i64)> = Vec::new();
        let mut prev: Option<Letter> = None;
        for &l in &self.letters {
            if prev == Some(l) {
                out.last_mut().expect("run started").1 += l.sign();
            } else {
                out.push((l.generator, l.sign()));
            }
            prev = Some(l);
        }
        out
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.positive)
    }

    pub fn is_negative(&self) -> bool {
        self.letters.iter().all(|l| !l.positive)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    pub fn uses_only(&self, n: usize) -> bool {
        self.letters.iter().all(|l| l.generator < n)
    }

    /// Canonical text: runs of one letter are grouped, e.g. `x^3 y x^-1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }

    /// Relabels generators through `map` (old index to new index).
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    generator: map[l.generator],
                    positive: l.positive,
                })
                .collect(),
        }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        for (idx, (g, e)) in self.word.syllables().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            let fallback = format!("g{g}");
            let name = self.names.get(g).map(String::as_str).unwrap_or(&fallback);
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;

    fn w(powers: &[(usize, i64)]) -> Word {
        Word::from_powers(powers)
    }

    /// The relator of the convex-hull example, letter by letter.
    fn hull_relator() -> Word {
        w(&[
            (Y, 1),
            (X, -1),
            (X, 2),
            (Y, 1),
            (X, -2),
            (Y, -1),
            (X, 1),
            (Y, -1),
            (Y, 1),
            (X, 2),
            (Y, -1),
            (X, -2),
        ])
    }

    #[test]
    fn reduce_examples() {
        assert!(w(&[(X, 1), (X, -1)]).reduce().is_empty());
        let xyx = w(&[(X, 1), (Y, 1), (X, -1)]);
        assert_eq!(xyx.reduce(), xyx);
        let input = w(&[(X, 1), (X, -1), (X, 1), (Y, 1), (Y, -1)]);
        assert_eq!(input.reduce(), w(&[(X, 1)]));
        // input untouched
        assert_eq!(input.len(), 5);
    }

    #[test]
    fn suffix_s_examples() {
        let r = w(&[(X, 3), (Y, 1), (X, 1), (Y, 1)]);
        assert_eq!(r.suffix_s(4).unwrap(), w(&[(Y, 1), (X, 1), (Y, 1)]));
        assert!(w(&[(X, -1)]).suffix_s(1).unwrap().is_empty());
        let r2 = w(&[(X, 1), (Y, 1), (X, -1), (Z, 1), (Y, 1), (Z, -1)]);
        assert_eq!(r2.suffix_s(3).unwrap(), w(&[(Z, 1), (Y, 1), (Z, -1)]));
        assert!(r.suffix_s(0).is_err());
        assert!(r.suffix_s(7).is_err());
    }

    #[test]
    fn occurrence_examples() {
        let r = w(&[(X, 3), (Y, 1), (X, 1), (Y, 1)]);
        assert_eq!(r.occurrences(X), vec![1, 2, 3, 5]);
        assert_eq!(
            hull_relator().occurrences(X),
            vec![2, 3, 4, 6, 7, 9, 12, 13, 15, 16]
        );
        assert!(r.occurrences(Z).is_empty());
    }

    #[test]
    fn abelianize_examples() {
        assert_eq!(
            w(&[(X, 3), (Y, 1), (X, 1), (Y, 1)]).abelianize(2).0,
            vec![4, 2]
        );
        assert_eq!(
            w(&[(X, 2), (Y, 2), (Z, 2)]).abelianize(4).0,
            vec![2, 2, 2, 0]
        );
        assert!(Word::empty().abelianize(3).is_zero());
    }

    #[test]
    fn rotations_and_shapes() {
        let xy = w(&[(X, 1), (Y, 1)]);
        assert_eq!(
            xy.cyclic_permutations(),
            vec![xy.clone(), w(&[(Y, 1), (X, 1)])]
        );
        assert_eq!(hull_relator().cyclic_permutations().len(), 16);
        assert!(w(&[(Y, 3)]).x_shape(X).is_empty());
        assert_eq!(
            w(&[(X, 1), (Y, 1), (X, -1), (Y, -1)]).x_shape(X),
            w(&[(X, 1), (X, -1)])
        );
    }

    #[test]
    fn strong_dyck_examples() {
        let pos = w(&[(X, 2), (X, -1), (X, 2), (X, -2), (X, 1), (X, -2)]);
        assert_eq!(pos.is_strong_dyck().unwrap(), DyckClass::Positive);
        let no = w(&[(X, 1), (X, -1), (X, 1)]);
        assert_eq!(no.is_strong_dyck().unwrap(), DyckClass::No);
        let neg = w(&[(X, -2), (X, 2)]);
        assert_eq!(neg.is_strong_dyck().unwrap(), DyckClass::Negative);
        assert_eq!(
            w(&[(X, 1), (Y, 1)]).is_strong_dyck(),
            Err(Error::MultipleGenerators)
        );
    }

    #[test]
    fn syllables_keep_signs_apart() {
        let word = w(&[(X, 1), (X, -1), (Y, 2)]);
        assert_eq!(word.syllables(), vec![(X, 1), (X, -1), (Y, 2)]);
    }

    #[test]
    fn display_groups_runs() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let r = w(&[(X, 3), (Y, 1), (X, -2)]);
        assert_eq!(r.display(&names).to_string(), "x^3 y x^-2");
        assert_eq!(Word::empty().display(&names).to_string(), "1");
    }

    #[test]
    fn cyclic_reduce_strips_conjugators() {
        let r = w(&[(Y, 1), (X, 2), (Y, -1)]);
        assert_eq!(r.cyclic_reduce(), w(&[(X, 2)]));
    }
}
