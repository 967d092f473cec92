//! Whitehead graphs and the weight test, decided exactly by linear
//! programming. Used for comparison with the I-test; it never produces a
//! verdict of its own.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::linalg::{Feasibility, LinearSystem, Relation};
use crate::presentation::Presentation;
use crate::rational::{self, Rational};
use crate::word::Word;

pub const DEFAULT_CYCLE_CAP: usize = 100_000;

/// Cycles added to the LP per round of the weight test.
const WORKING_SET: usize = 64;

/// A vertex `+x_i` or `-x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedGenerator {
    pub generator: usize,
    pub positive: bool,
}

impl SignedGenerator {
    fn index(self) -> usize {
        2 * self.generator + usize::from(!self.positive)
    }
}

/// One corner: the edge `(e_k x_{i_k}, -e_{k+1} x_{i_{k+1}})` of relator `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub a: SignedGenerator,
    pub b: SignedGenerator,
    pub relator: usize,
    /// 0-based position `k` of the first letter of the pair.
    pub corner: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhiteheadGraph {
    generators: Vec<String>,
    edges: Vec<Corner>,
}

impl WhiteheadGraph {
    pub fn edges(&self) -> &[Corner] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn vertex_name(&self, v: SignedGenerator) -> String {
        let sign = if v.positive { "" } else { "-" };
        format!("{sign}{}", self.generators[v.generator])
    }

    /// Simple cycles as lists of edge indices. Self-loops are cycles of
    /// length one and two parallel edges form a cycle of length two.
    /// Returns `None` once more than `cap` cycles have been found.
    pub fn simple_cycles(&self, cap: usize) -> Option<Vec<Vec<usize>>> {
        let nv = self.num_vertices();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        let mut cycles = Vec::new();
        for (e, c) in self.edges.iter().enumerate() {
            let (a, b) = (c.a.index(), c.b.index());
            if a == b {
                cycles.push(vec![e]);
            } else {
                adj[a].push((b, e));
                adj[b].push((a, e));
            }
        }
        if cycles.len() > cap {
            return None;
        }
        // each cycle is rooted at its smallest vertex and read in the
        // direction whose first edge has the smaller index
        for s in 0..nv {
            let mut on_path = vec![false; nv];
            on_path[s] = true;
            let mut path = Vec::new();
            if !extend(&adj, s, s, &mut on_path, &mut path, &mut cycles, cap) {
                return None;
            }
        }
        Some(cycles)
    }
}

fn extend(
    adj: &[Vec<(usize, usize)>],
    root: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    cycles: &mut Vec<Vec<usize>>,
    cap: usize,
) -> bool {
    for &(next, e) in &adj[at] {
        if path.last() == Some(&e) {
            continue;
        }
        if next == root {
            if !path.is_empty() && path[0] < e {
                let mut cycle = path.clone();
                cycle.push(e);
                cycles.push(cycle);
                if cycles.len() > cap {
                    return false;
                }
            }
            continue;
        }
        if next < root || on_path[next] {
            continue;
        }
        on_path[next] = true;
        path.push(e);
        let ok = extend(adj, root, next, on_path, path, cycles, cap);
        path.pop();
        on_path[next] = false;
        if !ok {
            return false;
        }
    }
    true
}

pub fn whitehead_graph(p: &Presentation) -> WhiteheadGraph {
    let mut edges = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        let letters = r.letters();
        let l = letters.len();
        for k in 0..l {
            let (x, y) = (letters[k], letters[(k + 1) % l]);
            edges.push(Corner {
                a: SignedGenerator {
                    generator: x.generator,
                    positive: x.positive,
                },
                b: SignedGenerator {
                    generator: y.generator,
                    positive: !y.positive,
                },
                relator: j,
                corner: k,
            });
        }
    }
    WhiteheadGraph {
        generators: p.generators().to_vec(),
        edges,
    }
}

/// Whether the relator is `u^k` in the free group for some `k >= 2`.
pub fn is_proper_power(r: &Word) -> bool {
    let w = r.cyclic_reduce();
    let letters = w.letters();
    let l = letters.len();
    (1..l)
        .filter(|d| l.is_multiple_of(*d))
        .any(|d| (d..l).all(|i| letters[i] == letters[i - d]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WeightTest {
    /// A weight per edge of the Whitehead graph.
    Feasible {
        #[serde(serialize_with = "rational::serialize_vec")]
        weights: Vec<Rational>,
    },
    /// Multipliers for the relator rows followed by the cycle rows.
    Infeasible {
        #[serde(serialize_with = "rational::serialize_vec")]
        certificate: Vec<Rational>,
    },
    Inapplicable {
        #[serde(serialize_with = "crate::verdict::one_based_one")]
        proper_power: usize,
    },
    /// The cycle enumeration exceeded its cap; nothing is claimed.
    Truncated { cap: usize },
}

impl WeightTest {
    pub fn status(&self) -> &'static str {
        match self {
            WeightTest::Feasible { .. } => "feasible",
            WeightTest::Infeasible { .. } => "infeasible",
            WeightTest::Inapplicable { .. } => "inapplicable",
            WeightTest::Truncated { .. } => "truncated",
        }
    }
}

impl fmt::Display for WeightTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightTest::Feasible { weights } => {
                write!(f, "feasible: {}", rational::format_vector(weights))
            }
            WeightTest::Infeasible { certificate } => {
                write!(
                    f,
                    "infeasible, certificate {}",
                    rational::format_vector(certificate)
                )
            }
            WeightTest::Inapplicable { proper_power } => {
                write!(
                    f,
                    "inapplicable: relator {} is a proper power",
                    proper_power + 1
                )
            }
            WeightTest::Truncated { cap } => write!(f, "truncated: more than {cap} simple cycles"),
        }
    }
}

/// The weight system: `sum over W_{r_j} of g <= len(r_j) - 2` for every
/// relator, written as `>=` with negated sides, then `sum over z of g >= 2`
/// for every simple cycle `z`.
pub fn weight_system(
    p: &Presentation,
    graph: &WhiteheadGraph,
    cycles: &[Vec<usize>],
) -> Result<LinearSystem> {
    let m = graph.edges().len();
    let mut sys = LinearSystem::new((1..=m).map(|e| format!("g{e}")).collect());
    for (j, r) in p.relators().iter().enumerate() {
        let coeffs = graph
            .edges()
            .iter()
            .map(|c| {
                if c.relator == j {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        sys.add(coeffs, Relation::Ge, rational::int(2 - r.len() as i64))?;
    }
    for cycle in cycles {
        let mut coeffs = vec![Rational::zero(); m];
        for &e in cycle {
            coeffs[e] += Rational::one();
        }
        sys.add(coeffs, Relation::Ge, rational::int(2))?;
    }
    Ok(sys)
}

pub fn weight_test(p: &Presentation, cycle_cap: usize) -> Result<WeightTest> {
    if let Some(j) = p.relators().iter().position(is_proper_power) {
        return Ok(WeightTest::Inapplicable { proper_power: j });
    }
    let graph = whitehead_graph(p);
    let Some(cycles) = graph.simple_cycles(cycle_cap) else {
        return Ok(WeightTest::Truncated { cap: cycle_cap });
    };
    // Constraint generation: solve over a working set of cycles, then add the
    // cycles the candidate weights violate. A certificate for the working set
    // padded with zeros is a certificate for the full system.
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&c| cycles[c].len());
    let mut active: Vec<usize> = order.iter().copied().take(WORKING_SET).collect();
    let mut in_set = vec![false; cycles.len()];
    for &c in &active {
        in_set[c] = true;
    }
    loop {
        let subset: Vec<Vec<usize>> = active.iter().map(|&c| cycles[c].clone()).collect();
        match weight_system(p, &graph, &subset)?.feasible()? {
            Feasibility::Infeasible(y) => {
                let rels = p.num_relators();
                let mut certificate = vec![Rational::zero(); rels + cycles.len()];
                certificate[..rels].clone_from_slice(&y[..rels]);
                for (k, &c) in active.iter().enumerate() {
                    certificate[rels + c] = y[rels + k].clone();
                }
                return Ok(WeightTest::Infeasible { certificate });
            }
            Feasibility::Feasible(weights) => {
                let two = rational::int(2);
                let violated: Vec<usize> = order
                    .iter()
                    .copied()
                    .filter(|&c| !in_set[c])
                    .filter(|&c| cycles[c].iter().map(|&e| &weights[e]).sum::<Rational>() < two)
                    .take(WORKING_SET)
                    .collect();
                if violated.is_empty() {
                    return Ok(WeightTest::Feasible { weights });
                }
                for c in violated {
                    in_set[c] = true;
                    active.push(c);
                }
            }
        }
    }
}
