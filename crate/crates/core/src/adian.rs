//! Left and right graphs of Adian presentations, edge deletions, and the
//! generalized left graph for zero-exponent relators.

use serde::Serialize;

use crate::itest::{check_orders, is_good, weight_matrix, ITestWitness};
use crate::presentation::{AdianPresentation, Presentation};
use crate::rational;
use crate::verdict::{one_based, one_based_one, Verdict, Witness};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledEdge {
    #[serde(serialize_with = "one_based_one")]
    pub a: usize,
    #[serde(serialize_with = "one_based_one")]
    pub b: usize,
    /// Generator labels with multiplicity, sorted.
    #[serde(serialize_with = "one_based")]
    pub labels: Vec<usize>,
}

/// An undirected graph on the generators with one edge per relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabeledEdgeGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<LabeledEdge>,
}

impl LabeledEdgeGraph {
    /// Total multiplicity of every generator over the labels of the edges
    /// still present.
    fn multiplicities(&self, present: &[bool]) -> Vec<usize> {
        let mut count = vec![0; self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if present[e] {
                for &x in &edge.labels {
                    count[x] += 1;
                }
            }
        }
        count
    }

    /// Whether deleting `edge` is allowed when the edges in `present` remain.
    pub fn deletable(&self, present: &[bool], edge: usize) -> Option<usize> {
        if !present[edge] {
            return None;
        }
        let count = self.multiplicities(present);
        self.edges[edge]
            .labels
            .iter()
            .copied()
            .filter(|&x| count[x] == 1)
            .min()
    }
}

/// The position (0-based) of the first occurrence of each generator in a
/// positive word.
fn first_positions(w: &Word, n: usize) -> Vec<Option<usize>> {
    let mut first = vec![None; n];
    for (k, l) in w.letters().iter().enumerate() {
        first[l.generator].get_or_insert(k);
    }
    first
}

fn side_graph(a: &AdianPresentation, reverse: bool) -> LabeledEdgeGraph {
    let n = a.num_generators();
    let words: Vec<(Word, Word)> = a
        .relations()
        .iter()
        .map(|(u, v)| {
            if reverse {
                (reversed(u), reversed(v))
            } else {
                (u.clone(), v.clone())
            }
        })
        .collect();
    let firsts: Vec<[Vec<Option<usize>>; 2]> = words
        .iter()
        .map(|(u, v)| [first_positions(u, n), first_positions(v, n)])
        .collect();
    let mut edges: Vec<LabeledEdge> = words
        .iter()
        .map(|(u, v)| LabeledEdge {
            a: u.letters()[0].generator,
            b: v.letters()[0].generator,
            labels: Vec::new(),
        })
        .collect();
    for x in 0..n {
        let best = firsts
            .iter()
            .flat_map(|f| [f[0][x], f[1][x]])
            .flatten()
            .min();
        let Some(best) = best else { continue };
        for (j, f) in firsts.iter().enumerate() {
            for side in f {
                if side[x] == Some(best) {
                    edges[j].labels.push(x);
                }
            }
        }
    }
    for e in &mut edges {
        e.labels.sort_unstable();
    }
    LabeledEdgeGraph {
        vertices: a.generators().to_vec(),
        edges,
    }
}

fn reversed(w: &Word) -> Word {
    Word::new(w.letters().iter().rev().copied().collect())
}

/// `L(P)`: an edge between the first letters of `U_j` and `V_j`, labeled by
/// the generators whose left-most occurrence overall falls in that relation.
pub fn left_graph(a: &AdianPresentation) -> LabeledEdgeGraph {
    side_graph(a, false)
}

/// `R(P)`: the same with last letters and right-most occurrences.
pub fn right_graph(a: &AdianPresentation) -> LabeledEdgeGraph {
    side_graph(a, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deletion {
    #[serde(serialize_with = "one_based_one")]
    pub edge: usize,
    /// A label of the edge that occurs once in all remaining labels.
    #[serde(serialize_with = "one_based_one")]
    pub witness: usize,
}

/// Deletes edges one at a time, always the lowest deletable edge with its
/// lowest unique label. Returns the deletions if the graph empties.
///
/// Deleting an edge only lowers multiplicities, so a deletable edge stays
/// deletable; the greedy order therefore never blocks a possible
/// discretization.
pub fn discretize(g: &LabeledEdgeGraph) -> Option<Vec<Deletion>> {
    let mut present = vec![true; g.edges.len()];
    let mut out = Vec::with_capacity(g.edges.len());
    while out.len() < g.edges.len() {
        let (edge, witness) =
            (0..g.edges.len()).find_map(|e| g.deletable(&present, e).map(|x| (e, x)))?;
        present[edge] = false;
        out.push(Deletion { edge, witness });
    }
    Some(out)
}

pub fn is_discretizable(g: &LabeledEdgeGraph) -> bool {
    discretize(g).is_some()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeletionWitness {
    pub side: Side,
    pub deletions: Vec<Deletion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub itest: Option<ITestWitness>,
}

/// The I-test witness induced by a discretization: columns in deletion
/// order, rows the witness generators.
fn induced_itest(p: &Presentation, deletions: &[Deletion], sign: i64) -> Option<ITestWitness> {
    let v = vec![rational::int(sign); p.num_generators()];
    let m = weight_matrix(p, &v).ok()?;
    let cols: Vec<usize> = deletions.iter().map(|d| d.edge).collect();
    let rows: Vec<usize> = deletions.iter().map(|d| d.witness).collect();
    let goodness = check_orders(&m, &cols, &rows).or_else(|| is_good(&m))?;
    Some(ITestWitness {
        vector: v,
        goodness,
    })
}

/// Discretizes the left graph, then the right graph. Requires
/// `len(U_j) = len(V_j)` for every relation.
pub fn adian_verdict(a: &AdianPresentation) -> Verdict {
    if !a.is_equal_length() {
        return Verdict::inapplicable("relation sides differ in length");
    }
    let p = a.to_presentation();
    for (side, graph, sign) in [
        (Side::Left, left_graph(a), 1),
        (Side::Right, right_graph(a), -1),
    ] {
        if let Some(deletions) = discretize(&graph) {
            if let Some(itest) = induced_itest(&p, &deletions, sign) {
                return Verdict::dr(Witness::Deletion(DeletionWitness {
                    side,
                    deletions,
                    itest: Some(itest),
                }));
            }
        }
    }
    Verdict::not_satisfied("neither the left nor the right graph is discretizable")
}

/// For relators with total exponent zero whose proper final segments all
/// have negative total exponent: an edge from the first to the last letter
/// of each relator, labeled by the generators whose largest `s(k, r)`
/// exponent sum is attained there, once per attaining occurrence.
pub fn generalized_left_graph(p: &Presentation) -> Option<LabeledEdgeGraph> {
    let n = p.num_generators();
    // per generator, the (relator, s-exponent) of each occurrence
    let mut values: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(p.num_relators());
    for (j, r) in p.relators().iter().enumerate() {
        let letters = r.letters();
        if r.total_exponent() != 0 {
            return None;
        }
        // suffix[k] = exponent sum of letters[k..]
        let mut suffix = vec![0i64; letters.len() + 1];
        for k in (0..letters.len()).rev() {
            suffix[k] = suffix[k + 1] + letters[k].sign();
        }
        if (1..letters.len()).any(|k| suffix[k] >= 0) {
            return None;
        }
        for (k, l) in letters.iter().enumerate() {
            let s = if l.positive { suffix[k] } else { suffix[k + 1] };
            values[l.generator].push((j, s));
        }
        edges.push(LabeledEdge {
            a: letters[0].generator,
            b: letters[letters.len() - 1].generator,
            labels: Vec::new(),
        });
    }
    for (x, vals) in values.iter().enumerate() {
        if let Some(best) = vals.iter().map(|&(_, s)| s).max() {
            for &(j, s) in vals {
                if s == best {
                    edges[j].labels.push(x);
                }
            }
        }
    }
    for e in &mut edges {
        e.labels.sort_unstable();
    }
    Some(LabeledEdgeGraph {
        vertices: p.generators().to_vec(),
        edges,
    })
}

/// Asphericity from a discretizable generalized left graph.
pub fn generalized_verdict(p: &Presentation) -> Verdict {
    let Some(g) = generalized_left_graph(p) else {
        return Verdict::inapplicable("relators are not of the required exponent shape");
    };
    match discretize(&g) {
        Some(deletions) => Verdict::aspherical(Witness::Deletion(DeletionWitness {
            side: Side::Generalized,
            deletions,
            itest: None,
        })),
        None => Verdict::not_satisfied("generalized left graph is not discretizable"),
    }
}

/// Labels rendered as generator names, for display.
pub fn label_names(g: &LabeledEdgeGraph, e: usize) -> Vec<&str> {
    g.edges[e]
        .labels
        .iter()
        .map(|&x| g.vertices[x].as_str())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{detect_adian, parse_presentation};

    fn adian(text: &str) -> AdianPresentation {
        detect_adian(&parse_presentation(text).unwrap()).unwrap()
    }

    #[test]
    fn commuting_pair_has_a_loop_free_left_graph() {
        let a = adian("x, y | x y = y x");
        let l = left_graph(&a);
        assert_eq!((l.edges[0].a, l.edges[0].b), (0, 1));
        assert_eq!(l.edges[0].labels, vec![0, 1]);
        assert!(adian_verdict(&a).is_dr());
    }

    #[test]
    fn unequal_lengths_are_inapplicable() {
        let a = adian("x, y | x x = y");
        assert!(matches!(adian_verdict(&a), Verdict::Inapplicable { .. }));
    }

    #[test]
    fn repeated_left_most_label_counts_twice() {
        let a = adian("x, y | x y = x x");
        let l = left_graph(&a);
        assert_eq!(l.edges[0].labels, vec![0, 0, 1]);
    }

    #[test]
    fn generalized_graph_shape() {
        let p = parse_presentation("x, y | x y x^-1 y^-1").unwrap();
        let g = generalized_left_graph(&p).unwrap();
        assert_eq!((g.edges[0].a, g.edges[0].b), (0, 1));
        let q = parse_presentation("x, y | x^-1 y x y^-1").unwrap();
        assert!(generalized_left_graph(&q).is_none());
        assert!(matches!(
            generalized_verdict(&q),
            Verdict::Inapplicable { .. }
        ));
    }
}
