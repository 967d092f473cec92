//! One-relator criteria: extreme points of occurrence clouds, strong Dyck
//! shapes, and commutator towers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::itest::{itest_fixed, ITestWitness};
use crate::linalg::extreme_normal;
use crate::presentation::Presentation;
use crate::rational::{self, Rational};
use crate::verdict::{one_based_one, Verdict, Witness};
use crate::word::{DyckClass, Word};

/// The classes `q(s(k, r))` in `Z^n`, one per occurrence `k` of a generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OccurrenceCloud {
    #[serde(serialize_with = "one_based_one")]
    pub generator: usize,
    /// 1-based positions of the occurrences.
    pub positions: Vec<usize>,
    pub points: Vec<Vec<i64>>,
}

impl OccurrenceCloud {
    pub fn multiplicity(&self, point: &[i64]) -> usize {
        self.points.iter().filter(|p| p.as_slice() == point).count()
    }

    /// Distinct points with their multiplicities, in first-occurrence order.
    pub fn counted(&self) -> Vec<(Vec<i64>, usize)> {
        let mut out: Vec<(Vec<i64>, usize)> = Vec::new();
        for p in &self.points {
            match out.iter_mut().find(|(q, _)| q == p) {
                Some(entry) => entry.1 += 1,
                None => out.push((p.clone(), 1)),
            }
        }
        out
    }
}

pub fn occurrence_cloud(r: &Word, i: usize, n: usize) -> Result<OccurrenceCloud> {
    if i >= n {
        return Err(Error::GeneratorOutOfRange { index: i, size: n });
    }
    if !r.abelianize(n).is_zero() {
        return Err(Error::NonzeroAbelianization);
    }
    let suffixes = r.suffix_abelianizations(n);
    let positions = r.occurrences(i);
    let points = positions
        .iter()
        .map(|&k| suffixes[r.s_start(k)].clone())
        .collect();
    Ok(OccurrenceCloud {
        generator: i,
        positions,
        points,
    })
}

fn single_relator(p: &Presentation) -> Result<&Word> {
    match p.relators() {
        [r] => {
            if r.abelianize(p.num_generators()).is_zero() {
                Ok(r)
            } else {
                Err(Error::NonzeroAbelianization)
            }
        }
        rs => Err(Error::Precondition(format!(
            "expected one relator, found {}",
            rs.len()
        ))),
    }
}

/// A multiplicity-one extreme point and a normal exposing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullCandidate {
    #[serde(serialize_with = "one_based_one")]
    pub generator: usize,
    pub position: usize,
    pub point: Vec<i64>,
    /// `<normal, point - c> >= 1` for every other point `c` of the cloud.
    #[serde(serialize_with = "rational::serialize_vec")]
    pub normal: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullWitness {
    pub candidate: HullCandidate,
    /// The I-test certificate for the normal or its negation.
    pub itest: ITestWitness,
    /// Every multiplicity-one extreme point found, over all generators.
    pub candidates: Vec<HullCandidate>,
}

/// All multiplicity-one extreme points of all occurrence clouds.
pub fn hull_candidates(p: &Presentation) -> Result<Vec<HullCandidate>> {
    let r = single_relator(p)?;
    let n = p.num_generators();
    let mut out = Vec::new();
    for i in 0..n {
        let cloud = occurrence_cloud(r, i, n)?;
        let rat: Vec<Vec<Rational>> = cloud.points.iter().map(|pt| rational::ints(pt)).collect();
        for (k, pt) in cloud.points.iter().enumerate() {
            if cloud.multiplicity(pt) != 1 {
                continue;
            }
            if let Some(normal) = extreme_normal(&rat[k], &rat)? {
                out.push(HullCandidate {
                    generator: i,
                    position: cloud.positions[k],
                    point: pt.clone(),
                    normal,
                });
            }
        }
    }
    Ok(out)
}

/// Looks for a generator whose occurrence cloud has an extreme point of
/// multiplicity one; the exposing normal then passes the I-test.
pub fn hull_test(p: &Presentation) -> Result<Verdict> {
    let candidates = hull_candidates(p)?;
    for c in &candidates {
        for sign in [1, -1] {
            let v: Vec<Rational> = c.normal.iter().map(|x| x * rational::int(sign)).collect();
            if let Verdict::ProvenDr { witness } = itest_fixed(p, &v)? {
                if let Witness::ITest(itest) = *witness {
                    return Ok(Verdict::dr(Witness::Hull(HullWitness {
                        candidate: c.clone(),
                        itest,
                        candidates: candidates.clone(),
                    })));
                }
            }
        }
    }
    if candidates.is_empty() {
        Ok(Verdict::not_satisfied(
            "no extreme point of multiplicity one",
        ))
    } else {
        Ok(Verdict::not_satisfied("extreme normals failed the I-test"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyckWitness {
    /// The generators playing the roles of `x` and `y`.
    #[serde(serialize_with = "one_based_one")]
    pub x: usize,
    #[serde(serialize_with = "one_based_one")]
    pub y: usize,
    /// 1-based start of the witnessing cyclic permutation.
    pub rotation: usize,
    pub syllables: usize,
    pub x_shape: String,
    /// Whether the shape is Dyck with positive or negative prefixes.
    pub positive: bool,
}

/// Scans the cyclic permutations `w'` of the relator for one whose
/// syllables `z_1^{l_1}...z_p^{l_p}` have `z_1 = z_{p-1} = x`, `z_p = y`
/// and whose `x`-shape is a strong Dyck word. Both generators are tried as
/// `x`.
pub fn dyck_test(p: &Presentation) -> Result<Verdict> {
    if p.num_generators() != 2 {
        return Err(Error::Precondition(format!(
            "expected two generators, found {}",
            p.num_generators()
        )));
    }
    let w = single_relator(p)?;
    for (x, y) in [(0, 1), (1, 0)] {
        for (t, rot) in w.cyclic_permutations().into_iter().enumerate() {
            let syl = rot.syllables();
            let n = syl.len();
            if n < 2 || syl[0].0 != x || syl[n - 2].0 != x || syl[n - 1].0 != y {
                continue;
            }
            let shape = rot.x_shape(x);
            let class = shape.is_strong_dyck()?;
            if class == DyckClass::No {
                continue;
            }
            return Ok(Verdict::dr(Witness::Dyck(DyckWitness {
                x,
                y,
                rotation: t + 1,
                syllables: n,
                x_shape: shape.display(p.generators()).to_string(),
                positive: class == DyckClass::Positive,
            })));
        }
    }
    Ok(Verdict::not_satisfied(
        "no cyclic permutation has the required shape",
    ))
}

/// `[w_n, [w_{n-1}, ..., [w_1, [x, y]]...]]` on generators `x = 0`, `y = 1`,
/// unreduced. With `validate`, each `w_i` must be nonempty and either
/// positive or negative.
pub fn build_tower(words: &[Word], validate: bool) -> Result<Word> {
    if validate {
        for (k, w) in words.iter().enumerate() {
            if w.is_empty() || !(w.is_positive() || w.is_negative()) || !w.uses_only(2) {
                return Err(Error::Precondition(format!(
                    "tower word {} must be a nonempty positive or negative word in x, y",
                    k + 1
                )));
            }
        }
    }
    let mut t = Word::commutator(&Word::from_powers(&[(0, 1)]), &Word::from_powers(&[(1, 1)]));
    for w in words {
        t = Word::commutator(w, &t);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    #[test]
    fn commutator_cloud() {
        let p = parse_presentation("x, y | x y x^-1 y^-1").unwrap();
        let c = occurrence_cloud(&p.relators()[0], 0, 2).unwrap();
        assert_eq!(c.points, vec![vec![0, 0], vec![0, -1]]);
        assert!(hull_test(&p).unwrap().is_dr());
        let absent = occurrence_cloud(&p.relators()[0], 1, 3).unwrap();
        assert_eq!(absent.points.len(), 2);
        let q = parse_presentation("x, y, z | x y x^-1 y^-1").unwrap();
        assert!(occurrence_cloud(&q.relators()[0], 2, 3)
            .unwrap()
            .points
            .is_empty());
    }

    #[test]
    fn nonzero_abelianization_is_rejected() {
        let p = parse_presentation("x, y | x y").unwrap();
        assert!(matches!(hull_test(&p), Err(Error::NonzeroAbelianization)));
        let two = parse_presentation("x, y | x y x^-1 y^-1 ; x y x^-1 y^-1").unwrap();
        assert!(matches!(hull_test(&two), Err(Error::Precondition(_))));
    }

    #[test]
    fn coincident_points_are_inconclusive() {
        let p = parse_presentation("x | x x^-1 x x^-1").unwrap();
        let c = occurrence_cloud(&p.relators()[0], 0, 1).unwrap();
        assert!(c.counted().iter().all(|(_, m)| *m > 1));
        assert!(!hull_test(&p).unwrap().is_proven());
    }

    #[test]
    fn dyck_rotations() {
        // the only proper prefix of the shape x x^-1 is positive
        let p = parse_presentation("x, y | x y x^-1 y^-1").unwrap();
        match dyck_test(&p).unwrap().witness() {
            Some(Witness::Dyck(w)) => assert_eq!((w.rotation, w.x_shape.as_str()), (1, "x x^-1")),
            other => panic!("{other:?}"),
        }
        let q = parse_presentation("x, y | x x^-1 y y^-1").unwrap();
        assert!(!dyck_test(&q).unwrap().is_proven());
        let three = parse_presentation("x, y, z | x y x^-1 y^-1").unwrap();
        assert!(dyck_test(&three).is_err());
    }

    #[test]
    fn towers() {
        assert_eq!(build_tower(&[], true).unwrap().len(), 4);
        let x = Word::from_powers(&[(0, 1)]);
        assert_eq!(build_tower(&[x], true).unwrap().len(), 10);
        let mixed = Word::from_powers(&[(0, 1), (1, -1)]);
        assert!(build_tower(std::slice::from_ref(&mixed), true).is_err());
        assert!(build_tower(&[mixed], false).is_ok());
    }
}
