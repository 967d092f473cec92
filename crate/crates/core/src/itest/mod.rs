//! Weight matrices and the I-test.

mod blocks;
mod equations;
mod goodness;
mod search;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

pub use blocks::{
    block_itest, block_search, detect_blocks, BlockCandidate, BlockStructure, BlockWitness,
};
pub use equations::{equation_terms, format_equation, EquationTerm};
pub use goodness::{
    all_good_witnesses, check_orders, is_good, is_good_exhaustive, GoodnessWitness, Pivot,
    DEFAULT_EXHAUSTIVE_CAP,
};
pub use search::{itest_search, itest_search_with, SearchConfig, DEFAULT_BUDGET};

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rational::{self, Rational};
use crate::verdict::{Verdict, Witness};
use crate::word::Word;

/// `<q(w), v>`, the weight of `w` relative to `v`.
pub fn weight(w: &Word, v: &[Rational]) -> Result<Rational> {
    if let Some(g) = w.max_generator() {
        if g >= v.len() {
            return Err(Error::DimensionMismatch {
                expected: g + 1,
                found: v.len(),
            });
        }
    }
    Ok(rational::dot_int(w.abelianize(v.len()).as_slice(), v))
}

/// Weights `s(k, w)` for every position `k` of `w`, indexed by `k - 1`.
pub(crate) fn suffix_weights(w: &Word, v: &[Rational]) -> Vec<Rational> {
    // weight of w^(k) for k = 1..=len+1, accumulated from the right
    let len = w.len();
    let mut tail = vec![Rational::zero(); len + 1];
    for k in (0..len).rev() {
        let l = w.letters()[k];
        let step = &v[l.generator];
        tail[k] = if l.positive {
            &tail[k + 1] + step
        } else {
            &tail[k + 1] - step
        };
    }
    w.letters()
        .iter()
        .enumerate()
        .map(|(k, l)| {
            if l.positive {
                tail[k].clone()
            } else {
                tail[k + 1].clone()
            }
        })
        .collect()
}

/// An `n x m` grid of finite multisets of rationals.
///
/// Entries keep the order of occurrences in the relator; when the matrix
/// comes from a presentation the 1-based relator positions are kept too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Vec<Rational>>>,
    positions: Option<Vec<Vec<Vec<usize>>>>,
}

impl WeightMatrix {
    /// Builds a matrix from explicit entries, `entries[i][j]` being the
    /// multiset at row `i`, column `j`.
    pub fn from_values(entries: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(bad) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(WeightMatrix {
            rows,
            cols,
            entries,
            positions: None,
        })
    }

    /// A matrix with `rows` rows and no columns.
    pub fn empty(rows: usize) -> Self {
        WeightMatrix {
            rows,
            cols: 0,
            entries: vec![Vec::new(); rows],
            positions: None,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &[Rational] {
        &self.entries[i][j]
    }

    /// The entry as a sorted multiset.
    pub fn sorted_entry(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut e = self.entries[i][j].clone();
        e.sort();
        e
    }

    /// 1-based relator positions of the occurrences in entry `(i, j)`.
    pub fn positions(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.positions.as_ref().map(|p| p[i][j].as_slice())
    }

    pub fn row_max(&self, i: usize) -> Option<&Rational> {
        self.entries[i].iter().flatten().max()
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> WeightMatrix {
        let pick = |grid: &Vec<Vec<Vec<Rational>>>| -> Vec<Vec<Vec<Rational>>> {
            rows.iter()
                .map(|&i| cols.iter().map(|&j| grid[i][j].clone()).collect())
                .collect()
        };
        WeightMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries: pick(&self.entries),
            positions: self.positions.as_ref().map(|p| {
                rows.iter()
                    .map(|&i| cols.iter().map(|&j| p[i][j].clone()).collect())
                    .collect()
            }),
        }
    }

    /// Renders the matrix as a table with row and column headers.
    pub fn render(&self, row_names: &[String], col_names: &[String]) -> String {
        let cell = |i: usize, j: usize| -> String {
            let mut e = self.entries[i][j].clone();
            if e.is_empty() {
                return "-".to_string();
            }
            e.sort_by(|a, b| b.cmp(a));
            e.iter().map(rational::format).collect::<Vec<_>>().join(",")
        };
        let mut widths: Vec<usize> = col_names.iter().map(String::len).collect();
        widths.resize(self.cols, 1);
        for i in 0..self.rows {
            for (j, w) in widths.iter_mut().enumerate() {
                *w = (*w).max(cell(i, j).len());
            }
        }
        let label_width = row_names.iter().map(String::len).max().unwrap_or(0);
        let mut out = String::new();
        out.push_str(&" ".repeat(label_width));
        for (j, w) in widths.iter().enumerate() {
            let name = col_names.get(j).cloned().unwrap_or_default();
            out.push_str(&format!("  {name:>w$}"));
        }
        out.push('\n');
        for i in 0..self.rows {
            let name = row_names.get(i).cloned().unwrap_or_default();
            out.push_str(&format!("{name:<label_width$}"));
            for (j, w) in widths.iter().enumerate() {
                out.push_str(&format!("  {:>w$}", cell(i, j)));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (1..=self.rows).map(|i| format!("x{i}")).collect();
        let cols: Vec<String> = (1..=self.cols).map(|j| format!("r{j}")).collect();
        f.write_str(&self.render(&rows, &cols))
    }
}

pub(crate) fn check_vector(p: &Presentation, v: &[Rational]) -> Result<()> {
    if v.len() != p.num_generators() {
        return Err(Error::DimensionMismatch {
            expected: p.num_generators(),
            found: v.len(),
        });
    }
    for (j, q) in p.abelianizations().iter().enumerate() {
        if !rational::dot_int(q.as_slice(), v).is_zero() {
            return Err(Error::NotOrthogonal { relator: j + 1 });
        }
    }
    Ok(())
}

/// The weight matrix `M(v)`: entry `(i, j)` collects the weights of
/// `s(k, r_j)` over the occurrences `k` of `x_i` in `r_j`.
pub fn weight_matrix(p: &Presentation, v: &[Rational]) -> Result<WeightMatrix> {
    check_vector(p, v)?;
    Ok(weight_matrix_unchecked(p, v))
}

pub(crate) fn weight_matrix_unchecked(p: &Presentation, v: &[Rational]) -> WeightMatrix {
    let n = p.num_generators();
    let m = p.num_relators();
    let mut entries = vec![vec![Vec::new(); m]; n];
    let mut positions = vec![vec![Vec::new(); m]; n];
    for (j, r) in p.relators().iter().enumerate() {
        for (k, (l, wt)) in r.letters().iter().zip(suffix_weights(r, v)).enumerate() {
            entries[l.generator][j].push(wt);
            positions[l.generator][j].push(k + 1);
        }
    }
    WeightMatrix {
        rows: n,
        cols: m,
        entries,
        positions: Some(positions),
    }
}

/// A vector together with orderings making its weight matrix good.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ITestWitness {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub vector: Vec<Rational>,
    #[serde(flatten)]
    pub goodness: GoodnessWitness,
}

/// Runs the I-test for a fixed vector `v`.
pub fn itest_fixed(p: &Presentation, v: &[Rational]) -> Result<Verdict> {
    if v.len() != p.num_generators() {
        return Err(Error::DimensionMismatch {
            expected: p.num_generators(),
            found: v.len(),
        });
    }
    if let Err(Error::NotOrthogonal { relator }) = check_vector(p, v) {
        return Ok(Verdict::inapplicable(format!(
            "vector is not orthogonal to q(r{relator})"
        )));
    }
    if p.num_generators() < p.num_relators() {
        return Ok(Verdict::inapplicable("fewer generators than relators"));
    }
    let m = weight_matrix_unchecked(p, v);
    Ok(match is_good(&m) {
        Some(goodness) => Verdict::dr(Witness::ITest(ITestWitness {
            vector: v.to_vec(),
            goodness,
        })),
        None => Verdict::not_satisfied("weight matrix is not good"),
    })
}
