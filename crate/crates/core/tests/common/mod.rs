//! Reference implementations used to cross-check the library. None of them
//! calls into the code under test beyond plain data types.

#![allow(dead_code)]

use drtest::linalg::Relation;
use drtest::rational::{int, Rational};
use drtest::{parse_presentation, Presentation};

pub fn pres(text: &str) -> Presentation {
    parse_presentation(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

/// Fourier-Motzkin elimination over the rationals. Constraints are
/// `a.x (=, >=, >) b`. Equalities are used to substitute a variable away;
/// the remaining inequalities are combined pairwise, with strictness carried
/// through every combination.
pub fn fourier_motzkin(constraints: &[(Vec<Rational>, Relation, Rational)]) -> bool {
    let zero = int(0);
    let vars = constraints.first().map_or(0, |c| c.0.len());
    let mut eqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    let mut rows: Vec<(Vec<Rational>, Rational, bool)> = Vec::new();
    for (a, rel, b) in constraints {
        match rel {
            Relation::Eq => eqs.push((a.clone(), b.clone())),
            Relation::Ge => rows.push((a.clone(), b.clone(), false)),
            Relation::Gt => rows.push((a.clone(), b.clone(), true)),
        }
    }
    for k in 0..vars {
        let Some(pivot) = eqs.iter().position(|e| e.0[k] != zero) else {
            continue;
        };
        let (pa, pb) = eqs.swap_remove(pivot);
        let substitute = |a: &mut Vec<Rational>, b: &mut Rational| {
            let f = &a[k] / &pa[k];
            for (x, y) in a.iter_mut().zip(&pa) {
                *x -= &f * y;
            }
            *b -= &f * &pb;
        };
        for e in eqs.iter_mut() {
            substitute(&mut e.0, &mut e.1);
        }
        for r in rows.iter_mut() {
            substitute(&mut r.0, &mut r.1);
        }
    }
    // every equality left has a zero left-hand side
    if eqs.iter().any(|e| e.1 != zero) {
        return false;
    }
    for k in 0..vars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[k] > zero {
                pos.push(r);
            } else if r.0[k] < zero {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (sp, sn) = (-&n.0[k], p.0[k].clone());
                let a: Vec<Rational> =
                    p.0.iter()
                        .zip(&n.0)
                        .map(|(x, y)| x * &sp + y * &sn)
                        .collect();
                let b = &p.1 * &sp + &n.1 * &sn;
                rest.push(normalized(a, b, p.2 || n.2));
            }
        }
        rest.sort();
        rest.dedup();
        rows = rest;
    }
    rows.iter()
        .all(|(_, b, strict)| if *strict { *b < zero } else { *b <= zero })
}

/// Scales a row so that its first nonzero coefficient has absolute value one.
fn normalized(a: Vec<Rational>, b: Rational, strict: bool) -> (Vec<Rational>, Rational, bool) {
    let zero = int(0);
    match a.iter().find(|x| **x != zero) {
        None => (a, b, strict),
        Some(lead) => {
            let s = if *lead < zero {
                -lead.clone()
            } else {
                lead.clone()
            };
            (a.iter().map(|x| x / &s).collect(), b / &s, strict)
        }
    }
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Vertices of the convex hull of distinct planar points (monotone chain,
/// collinear points dropped).
pub fn hull_vertices(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A member of the multiset is extreme when it occurs once and is a hull
/// vertex.
pub fn sweep_is_extreme(point: (i64, i64), cloud: &[(i64, i64)]) -> bool {
    cloud.iter().filter(|&&c| c == point).count() == 1 && hull_vertices(cloud).contains(&point)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for prefix in injections(n, k - 1) {
        for i in 0..n {
            if !prefix.contains(&i) {
                let mut p = prefix.clone();
                p.push(i);
                out.push(p);
            }
        }
    }
    out
}

/// Goodness straight from the definition, over every column order and every
/// injective choice of rows.
pub fn good_by_definition(m: &[Vec<Vec<i64>>]) -> bool {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if rows < cols {
        return false;
    }
    let all: Vec<usize> = (0..cols).collect();
    permutations(&all).iter().any(|js| {
        injections(rows, cols).iter().any(|is| {
            (0..cols).all(|k| {
                let (i, j) = (is[k], js[k]);
                let Some(&lambda) = m[i][j].iter().max() else {
                    return false;
                };
                let row_max = m[i].iter().flatten().max().copied();
                let mult = js[k..]
                    .iter()
                    .flat_map(|&c| &m[i][c])
                    .filter(|&&x| x == lambda)
                    .count();
                row_max == Some(lambda) && mult == 1
            })
        })
    })
}

/// The exponent of generator `x` in each `s(k, r)` for the occurrences `k`
/// of `x`, computed from the letter list.
pub fn exponent_sequence(letters: &[(usize, i64)], x: usize) -> Vec<i64> {
    let mut out = Vec::new();
    for (k, &(g, e)) in letters.iter().enumerate() {
        if g != x {
            continue;
        }
        let start = if e > 0 { k } else { k + 1 };
        out.push(
            letters[start..]
                .iter()
                .filter(|l| l.0 == x)
                .map(|l| l.1)
                .sum(),
        );
    }
    out
}
