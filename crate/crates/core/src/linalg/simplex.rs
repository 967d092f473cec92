//! Phase-one simplex over exact rationals with Bland's pivoting rule.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Finds `z >= 0` with `A z = b`, or returns `None` when no such `z` exists.
///
/// `a` is row-major with every row of the same length. Bland's rule (lowest
/// improving column enters, lowest basic index leaves on ratio ties) rules
/// out cycling, so the loop always terminates.
pub(crate) fn nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m;

    // tableau rows: [A | I | b] with every b_i made nonnegative
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut t: Vec<Rational> = row
            .iter()
            .map(|x| if flip { -x } else { x.clone() })
            .collect();
        t.resize(width, Rational::zero());
        t[n + i] = Rational::one();
        rows.push(t);
        rhs.push(if flip { -bi } else { bi.clone() });
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // reduced costs of the artificial-sum objective
    let mut cost = vec![Rational::zero(); width];
    let mut value = Rational::zero();
    for (row, bi) in rows.iter().zip(&rhs) {
        for j in 0..n {
            if !row[j].is_zero() {
                cost[j] += &row[j];
            }
        }
        value += bi;
    }

    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_positive()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !rows[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &rows[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // the objective is bounded below by zero, so some row always blocks
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut rows, &mut rhs, &mut cost, &mut value, r, enter);
        basis[r] = enter;
    }

    if value.is_positive() {
        return None;
    }
    let mut z = vec![Rational::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            z[j] = rhs[i].clone();
        }
    }
    Some(z)
}

fn pivot(
    rows: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    cost: &mut [Rational],
    value: &mut Rational,
    r: usize,
    c: usize,
) {
    let p = rows[r][c].clone();
    if !p.is_one() {
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        rhs[r] /= &p;
    }
    let pivot_row = rows[r].clone();
    let pivot_rhs = rhs[r].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, y) in cost.iter_mut().zip(&pivot_row) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        *value -= &f * &pivot_rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ints;

    #[test]
    fn solves_small_systems() {
        // z1 + z2 = 3, z1 - z2 = 1
        let a = vec![ints(&[1, 1]), ints(&[1, -1])];
        let z = nonnegative_solution(&a, &ints(&[3, 1])).unwrap();
        assert_eq!(z, ints(&[2, 1]));
        // z1 + z2 = -1 has no nonnegative solution
        assert!(nonnegative_solution(&[ints(&[1, 1])], &ints(&[-1])).is_none());
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        let a = vec![ints(&[1, 1, 0]), ints(&[2, 2, 0]), ints(&[0, 0, 0])];
        let z = nonnegative_solution(&a, &ints(&[1, 2, 0])).unwrap();
        assert_eq!(&z[0] + &z[1], Rational::one());
        assert!(nonnegative_solution(&a, &ints(&[1, 3, 0])).is_none());
    }
}
