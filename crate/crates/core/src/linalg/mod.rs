//! Exact linear algebra: null spaces, feasibility of linear systems with
//! certificates, and extreme points of finite point clouds.

mod simplex;

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Basis of `{v : <row, v> = 0 for every row}` in `Q^n`, by exact Gaussian
/// elimination. Basis vectors are scaled to primitive integer vectors.
pub fn null_space(rows: &[Vec<i64>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| rational::ints(r)).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let lead = m[rank][col].clone();
        for x in m[rank].iter_mut() {
            *x /= &lead;
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[r][free].clone();
        }
        basis.push(rational::primitive(&v));
    }
    basis
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Constraint {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    #[serde(serialize_with = "rational::serialize")]
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds(&self, x: &[Rational]) -> bool {
        let lhs = rational::dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

/// Linear constraints over named rational unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSystem {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    /// A point satisfying every constraint.
    Feasible(#[serde(serialize_with = "rational::serialize_vec")] Vec<Rational>),
    /// Multipliers, nonnegative on inequalities, under which the constraints
    /// sum to `0 >= 1`.
    Infeasible(#[serde(serialize_with = "rational::serialize_vec")] Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinearSystem {
            variables,
            constraints: Vec::new(),
        }
    }

    /// A system over unknowns named `l1, l2, ...`.
    pub fn with_unknowns(k: usize) -> Self {
        Self::new((1..=k).map(|i| format!("l{i}")).collect())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn dimension(&self) -> usize {
        self.variables.len()
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                found: coeffs.len(),
            });
        }
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    /// Replaces every `a.x > 0` by `a.x >= 1`. For a homogeneous system both
    /// are feasible together, since any solution of the first scales to one
    /// of the second.
    pub fn strictify(&self) -> Result<LinearSystem> {
        let mut out = self.clone();
        for (idx, c) in out.constraints.iter_mut().enumerate() {
            if c.relation == Relation::Gt {
                if !c.rhs.is_zero() {
                    return Err(Error::StrictWithRhs {
                        constraint: idx + 1,
                    });
                }
                c.relation = Relation::Ge;
                c.rhs = Rational::one();
            }
        }
        Ok(out)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.dimension() && self.constraints.iter().all(|c| c.holds(x))
    }

    /// Checks that `y` is a valid infeasibility certificate: nonnegative on
    /// inequalities, the weighted sum of the left-hand sides vanishes, and the
    /// weighted sum of the right-hand sides is positive.
    pub fn is_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let mut combo = vec![Rational::zero(); self.dimension()];
        let mut rhs = Rational::zero();
        for (c, yi) in self.constraints.iter().zip(y) {
            if c.relation != Relation::Eq && yi.is_negative() {
                return false;
            }
            if c.relation == Relation::Gt {
                return false;
            }
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += a * yi;
            }
            rhs += &c.rhs * yi;
        }
        combo.iter().all(Zero::is_zero) && rhs.is_positive()
    }

    fn require_nonstrict(&self) -> Result<()> {
        if self.constraints.iter().any(|c| c.relation == Relation::Gt) {
            Err(Error::StrictConstraint)
        } else {
            Ok(())
        }
    }

    /// A feasible point, or `None`. Skips building a certificate.
    pub fn solve(&self) -> Result<Option<Vec<Rational>>> {
        self.require_nonstrict()?;
        let k = self.dimension();
        if self.constraints.is_empty() {
            return Ok(Some(vec![Rational::zero(); k]));
        }
        let slacks = self
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Ge)
            .count();
        // x = p - q with p, q >= 0; inequality rows get a surplus column
        let width = 2 * k + slacks;
        let mut a = Vec::with_capacity(self.constraints.len());
        let mut b = Vec::with_capacity(self.constraints.len());
        let mut s = 2 * k;
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); width];
            for (j, x) in c.coeffs.iter().enumerate() {
                row[j] = x.clone();
                row[k + j] = -x;
            }
            if c.relation == Relation::Ge {
                row[s] = -Rational::one();
                s += 1;
            }
            a.push(row);
            b.push(c.rhs.clone());
        }
        let Some(z) = simplex::nonnegative_solution(&a, &b) else {
            return Ok(None);
        };
        let x: Vec<Rational> = (0..k).map(|j| &z[j] - &z[k + j]).collect();
        debug_assert!(self.is_satisfied_by(&x));
        Ok(Some(x))
    }

    /// Decides feasibility, returning either a point or a Farkas certificate.
    pub fn feasible(&self) -> Result<Feasibility> {
        if let Some(x) = self.solve()? {
            return Ok(Feasibility::Feasible(x));
        }
        Ok(Feasibility::Infeasible(self.certificate()))
    }

    fn certificate(&self) -> Vec<Rational> {
        // unknowns: one y_i >= 0 per inequality, y_i = y+ - y- per equality
        let cols: Vec<(usize, bool)> = self
            .constraints
            .iter()
            .enumerate()
            .flat_map(|(i, c)| {
                if c.relation == Relation::Eq {
                    vec![(i, true), (i, false)]
                } else {
                    vec![(i, true)]
                }
            })
            .collect();
        let signed = |pos: bool, x: &Rational| if pos { x.clone() } else { -x };
        let mut a = Vec::with_capacity(self.dimension() + 1);
        let mut b = Vec::with_capacity(self.dimension() + 1);
        for j in 0..self.dimension() {
            a.push(
                cols.iter()
                    .map(|&(i, pos)| {
                        let c = &self.constraints[i];
                        signed(pos, &c.coeffs[j])
                    })
                    .collect(),
            );
            b.push(Rational::zero());
        }
        a.push(
            cols.iter()
                .map(|&(i, pos)| {
                    let c = &self.constraints[i];
                    signed(pos, &c.rhs)
                })
                .collect(),
        );
        b.push(Rational::one());
        let z = simplex::nonnegative_solution(&a, &b)
            .expect("an infeasible system always has a Farkas certificate");
        let mut y = vec![Rational::zero(); self.constraints.len()];
        for (&(i, pos), zi) in cols.iter().zip(&z) {
            if pos {
                y[i] += zi;
            } else {
                y[i] -= zi;
            }
        }
        debug_assert!(self.is_certificate(&y));
        y
    }
}

impl fmt::Display for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let mut terms = Vec::new();
            for (a, name) in c.coeffs.iter().zip(&self.variables) {
                if a.is_zero() {
                    continue;
                }
                if a.is_one() {
                    terms.push(name.clone());
                } else if (-a).is_one() {
                    terms.push(format!("-{name}"));
                } else {
                    terms.push(format!("{}*{name}", rational::format(a)));
                }
            }
            let lhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ").replace("+ -", "- ")
            };
            writeln!(f, "{lhs} {} {}", c.relation, rational::format(&c.rhs))?;
        }
        Ok(())
    }
}

fn split_cloud<'a>(point: &[Rational], cloud: &'a [Vec<Rational>]) -> Result<Vec<&'a [Rational]>> {
    for c in cloud {
        if c.len() != point.len() {
            return Err(Error::DimensionMismatch {
                expected: point.len(),
                found: c.len(),
            });
        }
    }
    let idx = cloud
        .iter()
        .position(|c| c.as_slice() == point)
        .ok_or(Error::PointNotInCloud)?;
    Ok(cloud
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, c)| c.as_slice())
        .collect())
}

/// A direction `u` with `<u, point - c> >= 1` for every other member `c` of
/// the cloud (one copy of `point` removed), or `None` if `point` lies in the
/// convex hull of the others.
///
/// Such a `u` exists exactly when no convex combination of the other points
/// equals `point`, so this decides extremality and yields an outer normal.
pub fn extreme_normal(
    point: &[Rational],
    cloud: &[Vec<Rational>],
) -> Result<Option<Vec<Rational>>> {
    let others = split_cloud(point, cloud)?;
    if others.contains(&point) {
        return Ok(None);
    }
    let mut sys = LinearSystem::with_unknowns(point.len());
    for c in &others {
        let diff: Vec<Rational> = point.iter().zip(c.iter()).map(|(p, q)| p - q).collect();
        sys.add(diff, Relation::Ge, Rational::one())?;
    }
    Ok(sys.solve()?.map(|u| rational::primitive(&u)))
}

/// Whether `point` is a vertex of the convex hull of the multiset `cloud`.
pub fn is_extreme(point: &[Rational], cloud: &[Vec<Rational>]) -> Result<bool> {
    Ok(extreme_normal(point, cloud)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rational::{int, ints};

    #[test]
    fn empty_system_and_lone_point() {
        let sys = LinearSystem::with_unknowns(2);
        assert_eq!(sys.solve().unwrap(), Some(ints(&[0, 0])));
        assert!(is_extreme(&ints(&[1, 2]), &[ints(&[1, 2])]).unwrap());
    }

    #[test]
    fn null_space_examples() {
        let basis = null_space(&[vec![2, 2, 2, 0], vec![0, 2, 0, 0], vec![-1, 0, 1, 1]], 4);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        let expected = ints(&[1, 0, -1, 2]);
        assert!(*v == expected || v.iter().map(|x| -x).collect::<Vec<_>>() == expected);

        assert!(null_space(&[vec![1, 1], vec![1, -1]], 2).is_empty());
        assert_eq!(null_space(&[], 3).len(), 3);
    }

    #[test]
    fn strictify_examples() {
        let mut sys = LinearSystem::with_unknowns(2);
        sys.add(ints(&[1, -1]), Relation::Gt, int(0)).unwrap();
        let s = sys.strictify().unwrap();
        assert_eq!(s.constraints()[0].relation, Relation::Ge);
        assert_eq!(s.constraints()[0].rhs, int(1));

        let mut bad = LinearSystem::with_unknowns(1);
        bad.add(ints(&[1]), Relation::Gt, int(2)).unwrap();
        assert!(matches!(
            bad.strictify(),
            Err(Error::StrictWithRhs { constraint: 1 })
        ));
        assert!(matches!(bad.feasible(), Err(Error::StrictConstraint)));

        let mut contra = LinearSystem::with_unknowns(1);
        contra.add(ints(&[1]), Relation::Gt, int(0)).unwrap();
        contra.add(ints(&[-1]), Relation::Gt, int(0)).unwrap();
        assert!(!contra
            .strictify()
            .unwrap()
            .feasible()
            .unwrap()
            .is_feasible());
    }

    #[test]
    fn feasibility_examples() {
        let mut sys = LinearSystem::with_unknowns(1);
        sys.add(ints(&[1]), Relation::Ge, int(1)).unwrap();
        sys.add(ints(&[-1]), Relation::Ge, int(-2)).unwrap();
        let x = sys.feasible().unwrap();
        assert!(sys.is_satisfied_by(x.point().unwrap()));

        let mut sys = LinearSystem::with_unknowns(1);
        sys.add(ints(&[1]), Relation::Ge, int(1)).unwrap();
        sys.add(ints(&[-1]), Relation::Ge, int(0)).unwrap();
        match sys.feasible().unwrap() {
            Feasibility::Infeasible(y) => {
                assert!(sys.is_certificate(&y));
                assert_eq!(y[0], y[1]);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn equalities_and_free_variables() {
        let mut sys = LinearSystem::with_unknowns(2);
        sys.add(ints(&[1, 1]), Relation::Eq, int(-3)).unwrap();
        sys.add(ints(&[1, -1]), Relation::Ge, int(5)).unwrap();
        let x = sys.solve().unwrap().unwrap();
        assert!(sys.is_satisfied_by(&x));
        sys.add(ints(&[0, 1]), Relation::Ge, int(0)).unwrap();
        match sys.feasible().unwrap() {
            Feasibility::Infeasible(y) => assert!(sys.is_certificate(&y)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn extreme_point_examples() {
        let cloud: Vec<Vec<Rational>> = [
            [1, -1],
            [1, -1],
            [1, -1],
            [0, -1],
            [0, -1],
            [0, -2],
            [1, -2],
            [-1, -1],
            [-1, 0],
            [0, 0],
        ]
        .iter()
        .map(|p| ints(p))
        .collect();
        assert!(is_extreme(&ints(&[-1, 0]), &cloud).unwrap());
        assert!(!is_extreme(&ints(&[1, -1]), &cloud).unwrap());
        assert!(!is_extreme(&ints(&[0, -1]), &cloud).unwrap());

        let segment = vec![ints(&[0, 0]), ints(&[1, 1]), ints(&[2, 2])];
        assert!(!is_extreme(&ints(&[1, 1]), &segment).unwrap());
        assert!(is_extreme(&ints(&[2, 2]), &segment).unwrap());

        assert!(matches!(
            is_extreme(&ints(&[5, 5]), &segment),
            Err(Error::PointNotInCloud)
        ));
        let normal = extreme_normal(&ints(&[-1, 0]), &cloud).unwrap().unwrap();
        for c in &cloud {
            if *c != ints(&[-1, 0]) {
                let d: Vec<Rational> = ints(&[-1, 0]).iter().zip(c).map(|(p, q)| p - q).collect();
                assert!(rational::dot(&normal, &d) > Rational::zero());
            }
        }
    }
}
