//! Goodness of weight matrices: the greedy decision procedure and a
//! brute-force enumeration used as its reference.

use serde::Serialize;

use super::WeightMatrix;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::verdict::{one_based, one_based_one};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 6;

/// One step of a goodness witness: the pivot of row `row` in column `column`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pivot {
    #[serde(serialize_with = "one_based_one")]
    pub row: usize,
    #[serde(serialize_with = "one_based_one")]
    pub column: usize,
    /// Index of the pivot inside the entry, in occurrence order.
    #[serde(skip)]
    pub occurrence: usize,
    /// 1-based position of the pivot letter in its relator, when known.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub position: Option<usize>,
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
}

/// Column order `j_1..j_m`, row order `i_1..i_m` and the pivots `lambda_k`.
/// Indices are 0-based in memory and 1-based when serialized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodnessWitness {
    #[serde(serialize_with = "one_based")]
    pub column_order: Vec<usize>,
    #[serde(serialize_with = "one_based")]
    pub row_order: Vec<usize>,
    pub pivots: Vec<Pivot>,
}

/// Whether `(i, j)` can be the next step when `remaining` columns are left:
/// the entry is nonempty, its maximum is the maximum of the whole row, and
/// that maximum occurs exactly once in the remaining columns of the row.
fn step(m: &WeightMatrix, remaining: &[bool], i: usize, j: usize) -> Option<Pivot> {
    let entry = m.entry(i, j);
    let (occurrence, lambda) = entry.iter().enumerate().max_by(|a, b| a.1.cmp(b.1))?;
    if Some(lambda) != m.row_max(i) {
        return None;
    }
    let count: usize = (0..m.cols())
        .filter(|&c| remaining[c])
        .map(|c| m.entry(i, c).iter().filter(|x| *x == lambda).count())
        .sum();
    (count == 1).then(|| Pivot {
        row: i,
        column: j,
        occurrence,
        position: m.positions(i, j).map(|p| p[occurrence]),
        value: lambda.clone(),
    })
}

/// Decides goodness greedily, taking at every step the lowest remaining
/// column and then the lowest unused row that qualify.
///
/// A row can only ever pivot the unique remaining column holding its row
/// maximum, and removing columns never invalidates another row's candidate
/// column, so any valid step extends to a full witness whenever one exists.
pub fn is_good(m: &WeightMatrix) -> Option<GoodnessWitness> {
    if m.rows() < m.cols() {
        return None;
    }
    let mut remaining = vec![true; m.cols()];
    let mut used = vec![false; m.rows()];
    let mut w = GoodnessWitness {
        column_order: Vec::with_capacity(m.cols()),
        row_order: Vec::with_capacity(m.cols()),
        pivots: Vec::with_capacity(m.cols()),
    };
    for _ in 0..m.cols() {
        let pivot = (0..m.cols()).filter(|&j| remaining[j]).find_map(|j| {
            (0..m.rows())
                .filter(|&i| !used[i])
                .find_map(|i| step(m, &remaining, i, j))
        })?;
        remaining[pivot.column] = false;
        used[pivot.row] = true;
        w.column_order.push(pivot.column);
        w.row_order.push(pivot.row);
        w.pivots.push(pivot);
    }
    Some(w)
}

/// Checks given orders against the definition, returning the witness with
/// its pivots if every step is valid.
pub fn check_orders(
    m: &WeightMatrix,
    column_order: &[usize],
    row_order: &[usize],
) -> Option<GoodnessWitness> {
    if m.rows() < m.cols()
        || column_order.len() != m.cols()
        || row_order.len() != m.cols()
        || !crate::presentation::is_permutation(column_order, m.cols())
    {
        return None;
    }
    let mut seen = vec![false; m.rows()];
    for &i in row_order {
        if i >= m.rows() || seen[i] {
            return None;
        }
        seen[i] = true;
    }
    let mut remaining = vec![true; m.cols()];
    let mut pivots = Vec::with_capacity(m.cols());
    for (&j, &i) in column_order.iter().zip(row_order) {
        pivots.push(step(m, &remaining, i, j)?);
        remaining[j] = false;
    }
    Some(GoodnessWitness {
        column_order: column_order.to_vec(),
        row_order: row_order.to_vec(),
        pivots,
    })
}

/// Whether the k-th condition of the definition holds for the step
/// `(i_k, j_k)` given the tail `j_k..j_m`, evaluated literally.
fn literal_step(m: &WeightMatrix, i: usize, j: usize, tail: &[usize]) -> bool {
    let entry = m.entry(i, j);
    let Some(lambda) = entry.iter().max() else {
        return false;
    };
    let row: Vec<&Rational> = (0..m.cols()).flat_map(|c| m.entry(i, c)).collect();
    if row.iter().any(|x| *x > lambda) {
        return false;
    }
    let mult = tail
        .iter()
        .flat_map(|&c| m.entry(i, c))
        .filter(|x| *x == lambda)
        .count();
    mult == 1
}

fn enumerate(
    m: &WeightMatrix,
    cols: &mut Vec<usize>,
    rows: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    first_only: bool,
) {
    if first_only && !out.is_empty() {
        return;
    }
    if cols.len() == m.cols() {
        out.push((cols.clone(), rows.clone()));
        return;
    }
    for j in 0..m.cols() {
        if cols.contains(&j) {
            continue;
        }
        let tail: Vec<usize> = (0..m.cols()).filter(|c| !cols.contains(c)).collect();
        for i in 0..m.rows() {
            if rows.contains(&i) || !literal_step(m, i, j, &tail) {
                continue;
            }
            cols.push(j);
            rows.push(i);
            enumerate(m, cols, rows, out, first_only);
            cols.pop();
            rows.pop();
        }
    }
}

fn witness_from(m: &WeightMatrix, cols: Vec<usize>, rows: Vec<usize>) -> GoodnessWitness {
    let mut remaining = vec![true; m.cols()];
    let pivots = cols
        .iter()
        .zip(&rows)
        .map(|(&j, &i)| {
            let p = step(m, &remaining, i, j).expect("enumerated steps are valid");
            remaining[j] = false;
            p
        })
        .collect();
    GoodnessWitness {
        column_order: cols,
        row_order: rows,
        pivots,
    }
}

/// Brute force over all column orders and row injections, checking the
/// three conditions verbatim. Refuses matrices with more than `cap` columns.
pub fn is_good_exhaustive(m: &WeightMatrix, cap: usize) -> Result<Option<GoodnessWitness>> {
    if m.cols() > cap {
        return Err(Error::CapExceeded {
            columns: m.cols(),
            cap,
        });
    }
    if m.rows() < m.cols() {
        return Ok(None);
    }
    let mut out = Vec::new();
    enumerate(m, &mut Vec::new(), &mut Vec::new(), &mut out, true);
    Ok(out.pop().map(|(c, r)| witness_from(m, c, r)))
}

/// Every pair of orders making the matrix good.
pub fn all_good_witnesses(m: &WeightMatrix, cap: usize) -> Result<Vec<GoodnessWitness>> {
    if m.cols() > cap {
        return Err(Error::CapExceeded {
            columns: m.cols(),
            cap,
        });
    }
    if m.rows() < m.cols() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    enumerate(m, &mut Vec::new(), &mut Vec::new(), &mut out, false);
    Ok(out
        .into_iter()
        .map(|(c, r)| witness_from(m, c, r))
        .collect())
}
