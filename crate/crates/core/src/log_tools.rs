//! Tests specific to labeled oriented graphs: the initial and terminal
//! graphs, deforestations and weak deforestations.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::itest::{
    block_itest, check_orders, weight_matrix, BlockStructure, BlockWitness, ITestWitness,
};
use crate::presentation::Log;
use crate::rational::{self, Rational};
use crate::verdict::{one_based, Verdict, Witness};

/// An undirected multigraph; self-loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    /// True when the graph has no cycle. A self-loop or a pair of parallel
    /// edges is a cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    /// A connected forest.
    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty() && self.edges.len() + 1 == self.vertices.len() && self.is_forest()
    }
}

/// `I(G)`: an edge `(label, terminal)` for every edge of the LOG.
pub fn initial_graph(g: &Log) -> UndirectedGraph {
    UndirectedGraph {
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|e| (e.label, e.terminal)).collect(),
    }
}

/// `T(G)`: an edge `(init, label)` for every edge of the LOG.
pub fn terminal_graph(g: &Log) -> UndirectedGraph {
    UndirectedGraph {
        vertices: g.vertices().to_vec(),
        edges: g.edges().iter().map(|e| (e.init, e.label)).collect(),
    }
}

pub fn is_forest(g: &UndirectedGraph) -> bool {
    g.is_forest()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeforestKind {
    /// Clauses (IL) and (T).
    IlT,
    /// Clauses (TL) and (I): the same with initial and terminal swapped.
    TlI,
}

impl DeforestKind {
    pub fn other(self) -> Self {
        match self {
            DeforestKind::IlT => DeforestKind::TlI,
            DeforestKind::TlI => DeforestKind::IlT,
        }
    }

    /// The sign of the all-ones vector that certifies the I-test.
    pub fn sign(self) -> i64 {
        match self {
            DeforestKind::IlT => 1,
            DeforestKind::TlI => -1,
        }
    }
}

impl fmt::Display for DeforestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeforestKind::IlT => "IL/T",
            DeforestKind::TlI => "TL/I",
        })
    }
}

impl Serialize for DeforestKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which clause justified a step. `Label` is (IL) or (TL), `Leaf` is (T)
/// or (I), depending on the kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Clause {
    Label,
    Leaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Remove every edge.
    Discrete,
    /// Stop at any sub-LOG other than the start.
    AnySubLog,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeforestationWitness {
    pub kind: DeforestKind,
    /// Removed edges `e_1..e_m` (0-based in memory, 1-based in JSON).
    #[serde(serialize_with = "one_based")]
    pub edge_order: Vec<usize>,
    /// Removed vertices `x_1..x_m`.
    #[serde(serialize_with = "one_based")]
    pub vertex_order: Vec<usize>,
    #[serde(serialize_with = "clause_names")]
    pub clauses: Vec<Clause>,
}

fn clause_names<S: Serializer>(clauses: &[Clause], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(clauses.iter().map(|c| match c {
        Clause::Label => "label",
        Clause::Leaf => "leaf",
    }))
}

impl DeforestationWitness {
    /// Clause names as written for the witness's kind, e.g. `IL` and `T`.
    pub fn clause_label(&self, c: Clause) -> &'static str {
        match (self.kind, c) {
            (DeforestKind::IlT, Clause::Label) => "IL",
            (DeforestKind::IlT, Clause::Leaf) => "T",
            (DeforestKind::TlI, Clause::Label) => "TL",
            (DeforestKind::TlI, Clause::Leaf) => "I",
        }
    }
}

/// A state of a deforestation run inside a fixed starting sub-LOG.
#[derive(Clone)]
struct Frame<'a> {
    g: &'a Log,
    kind: DeforestKind,
    /// Edges of the starting sub-LOG.
    start_edges: Vec<bool>,
}

impl Frame<'_> {
    fn init(&self, e: usize) -> usize {
        let edge = self.g.edges()[e];
        match self.kind {
            DeforestKind::IlT => edge.init,
            DeforestKind::TlI => edge.terminal,
        }
    }

    fn terminal(&self, e: usize) -> usize {
        let edge = self.g.edges()[e];
        match self.kind {
            DeforestKind::IlT => edge.terminal,
            DeforestKind::TlI => edge.init,
        }
    }

    /// The possible steps from the given state, label-clause steps first.
    fn moves(&self, edges: &[bool], vertices: &[bool]) -> Vec<(usize, usize, Clause)> {
        let g = self.g;
        let mut label_moves = Vec::new();
        let mut leaf_moves = Vec::new();
        for x in 0..g.num_vertices() {
            if !vertices[x] {
                continue;
            }
            // (IL): exactly one incidence as initial vertex or label
            let mut count = 0;
            let mut which = None;
            for e in (0..g.num_edges()).filter(|&e| edges[e]) {
                let hits = usize::from(self.init(e) == x) + usize::from(g.edges()[e].label == x);
                if hits > 0 {
                    count += hits;
                    which = Some(e);
                }
            }
            if count == 1 {
                label_moves.push((which.expect("counted one edge"), x, Clause::Label));
            }
            // (T): terminal of a unique remaining edge, and never an initial
            // vertex or label in the starting sub-LOG
            let ends: Vec<usize> = (0..g.num_edges())
                .filter(|&e| edges[e] && self.terminal(e) == x)
                .collect();
            let clean = (0..g.num_edges())
                .filter(|&e| self.start_edges[e])
                .all(|e| self.init(e) != x && g.edges()[e].label != x);
            if ends.len() == 1 && clean {
                leaf_moves.push((ends[0], x, Clause::Leaf));
            }
        }
        label_moves.extend(leaf_moves);
        label_moves
    }

    fn is_closed(&self, edges: &[bool], vertices: &[bool]) -> bool {
        self.g.is_closed(vertices, edges)
    }
}

struct Path {
    edges: Vec<usize>,
    vertices: Vec<usize>,
    clauses: Vec<Clause>,
}

/// Depth-first search for a deforestation; `accept` decides which states
/// end the run. Failed states are memoized.
fn run(
    frame: &Frame<'_>,
    edges: &mut Vec<bool>,
    vertices: &mut Vec<bool>,
    path: &mut Path,
    failed: &mut HashSet<(Vec<bool>, Vec<bool>)>,
    accept: &mut dyn FnMut(&[bool], &[bool], &Path) -> bool,
    budget: &mut u64,
) -> bool {
    if !path.edges.is_empty() && frame.is_closed(edges, vertices) && accept(edges, vertices, path) {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if failed.contains(&(edges.clone(), vertices.clone())) {
        return false;
    }
    for (e, x, clause) in frame.moves(edges, vertices) {
        edges[e] = false;
        vertices[x] = false;
        path.edges.push(e);
        path.vertices.push(x);
        path.clauses.push(clause);
        let ok = run(frame, edges, vertices, path, failed, accept, budget);
        if ok {
            return true;
        }
        path.edges.pop();
        path.vertices.pop();
        path.clauses.pop();
        edges[e] = true;
        vertices[x] = true;
    }
    failed.insert((edges.clone(), vertices.clone()));
    false
}

const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

/// Searches for a deforestation of the given kind from the whole LOG.
///
/// With [`Target::Discrete`] every edge must be removed. With
/// [`Target::AnySubLog`] the first sub-LOG reached (after at least one step)
/// is accepted.
pub fn deforest(g: &Log, kind: DeforestKind, target: Target) -> Option<DeforestationWitness> {
    let all_edges = vec![true; g.num_edges()];
    let all_vertices = vec![true; g.num_vertices()];
    if g.num_edges() == 0 {
        return Some(DeforestationWitness {
            kind,
            edge_order: Vec::new(),
            vertex_order: Vec::new(),
            clauses: Vec::new(),
        });
    }
    let frame = Frame {
        g,
        kind,
        start_edges: all_edges.clone(),
    };
    let mut path = Path {
        edges: Vec::new(),
        vertices: Vec::new(),
        clauses: Vec::new(),
    };
    let mut accept = |edges: &[bool], _: &[bool], _: &Path| match target {
        Target::Discrete => edges.iter().all(|e| !e),
        Target::AnySubLog => true,
    };
    let mut budget = DEFAULT_NODE_BUDGET;
    let found = run(
        &frame,
        &mut all_edges.clone(),
        &mut all_vertices.clone(),
        &mut path,
        &mut HashSet::new(),
        &mut accept,
        &mut budget,
    );
    found.then_some(DeforestationWitness {
        kind,
        edge_order: path.edges,
        vertex_order: path.vertices,
        clauses: path.clauses,
    })
}

/// A deforestation of either kind to a discrete sub-LOG, IL/T tried first.
pub fn deforest_any(g: &Log) -> Option<DeforestationWitness> {
    deforest(g, DeforestKind::IlT, Target::Discrete)
        .or_else(|| deforest(g, DeforestKind::TlI, Target::Discrete))
}

pub fn is_deforestable(g: &Log) -> bool {
    deforest_any(g).is_some()
}

/// One stage of a weak deforestation: a deforestation from the previous
/// sub-LOG (given by the masks of the previous stage) to the next one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub deforestation: DeforestationWitness,
    /// Vertices and edges of the sub-LOG reached by this stage.
    #[serde(serialize_with = "mask_indices")]
    pub vertices: Vec<bool>,
    #[serde(serialize_with = "mask_indices")]
    pub edges: Vec<bool>,
}

fn mask_indices<S: Serializer>(mask: &[bool], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        mask.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakOutcome {
    Found(Vec<Stage>),
    NotFound,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakConfig {
    pub max_stages: usize,
    pub node_budget: u64,
}

impl Default for WeakConfig {
    fn default() -> Self {
        WeakConfig {
            max_stages: 4,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Searches for a chain of deforestations, each from a sub-LOG to a smaller
/// sub-LOG, ending at a discrete one.
pub fn is_weakly_deforestable(g: &Log) -> WeakOutcome {
    weakly_deforest(g, &WeakConfig::default())
}

pub fn weakly_deforest(g: &Log, config: &WeakConfig) -> WeakOutcome {
    let mut budget = config.node_budget;
    let mut stages = Vec::new();
    let mut dead = HashSet::new();
    let found = weak_dfs(
        g,
        &vec![true; g.num_edges()],
        &vec![true; g.num_vertices()],
        config.max_stages,
        &mut stages,
        &mut dead,
        &mut budget,
    );
    if found {
        WeakOutcome::Found(stages)
    } else if budget == 0 {
        WeakOutcome::Budget
    } else {
        WeakOutcome::NotFound
    }
}

fn weak_dfs(
    g: &Log,
    edges: &[bool],
    vertices: &[bool],
    stages_left: usize,
    stages: &mut Vec<Stage>,
    dead: &mut HashSet<(Vec<bool>, Vec<bool>, usize)>,
    budget: &mut u64,
) -> bool {
    if edges.iter().all(|e| !e) {
        return true;
    }
    if stages_left == 0 || dead.contains(&(edges.to_vec(), vertices.to_vec(), stages_left)) {
        return false;
    }
    for kind in [DeforestKind::IlT, DeforestKind::TlI] {
        let frame = Frame {
            g,
            kind,
            start_edges: edges.to_vec(),
        };
        // collect every sub-LOG reachable in one stage, then recurse; the
        // discrete ones come first so a one-stage finish is preferred
        let mut ends: Vec<(Vec<bool>, Vec<bool>, DeforestationWitness)> = Vec::new();
        let mut seen = HashSet::new();
        let mut accept = |e: &[bool], v: &[bool], p: &Path| {
            if seen.insert((e.to_vec(), v.to_vec())) {
                ends.push((
                    e.to_vec(),
                    v.to_vec(),
                    DeforestationWitness {
                        kind,
                        edge_order: p.edges.clone(),
                        vertex_order: p.vertices.clone(),
                        clauses: p.clauses.clone(),
                    },
                ));
            }
            false
        };
        let mut path = Path {
            edges: Vec::new(),
            vertices: Vec::new(),
            clauses: Vec::new(),
        };
        run(
            &frame,
            &mut edges.to_vec(),
            &mut vertices.to_vec(),
            &mut path,
            &mut HashSet::new(),
            &mut accept,
            budget,
        );
        ends.sort_by_key(|(e, _, _)| e.iter().filter(|&&b| b).count());
        for (e, v, w) in ends {
            stages.push(Stage {
                deforestation: w,
                vertices: v.clone(),
                edges: e.clone(),
            });
            if weak_dfs(g, &e, &v, stages_left - 1, stages, dead, budget) {
                return true;
            }
            stages.pop();
            if *budget == 0 {
                return false;
            }
        }
    }
    dead.insert((edges.to_vec(), vertices.to_vec(), stages_left));
    false
}

/// Block structure, reordering and vectors derived from a weak
/// deforestation: the first block is the last nondiscrete sub-LOG, and every
/// earlier stage contributes one square block.
pub fn stage_blocks(
    g: &Log,
    stages: &[Stage],
) -> Option<(Vec<usize>, Vec<usize>, BlockStructure, Vec<Vec<Rational>>)> {
    let last = stages.last()?;
    let n = g.num_vertices();
    let mut gen_order: Vec<usize> = last.deforestation.vertex_order.clone();
    gen_order.extend((0..n).filter(|&x| last.vertices[x]));
    let mut rel_order: Vec<usize> = last.deforestation.edge_order.clone();
    let ones = |sign: i64| vec![rational::int(sign); n];
    let mut gen_cuts = vec![gen_order.len()];
    let mut rel_cuts = vec![rel_order.len()];
    let mut vectors = vec![ones(last.deforestation.kind.sign())];
    for stage in stages.iter().rev().skip(1) {
        gen_order.extend(&stage.deforestation.vertex_order);
        rel_order.extend(&stage.deforestation.edge_order);
        gen_cuts.push(gen_order.len());
        rel_cuts.push(rel_order.len());
        vectors.push(ones(stage.deforestation.kind.sign()));
    }
    let structure = BlockStructure::new(gen_cuts, rel_cuts).ok()?;
    Some((gen_order, rel_order, structure, vectors))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogDeforestationWitness {
    pub deforestation: DeforestationWitness,
    pub itest: ITestWitness,
    /// Set when `I` or `T` is a tree, the hypothesis of Howie's theorem.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_graph: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakDeforestationWitness {
    pub stages: Vec<Stage>,
    pub blocks: BlockWitness,
}

/// The I-test witness induced by a deforestation to a discrete sub-LOG:
/// `v = +-(1,...,1)`, columns in edge order and rows in vertex order.
pub fn induced_itest(g: &Log, w: &DeforestationWitness) -> Option<ITestWitness> {
    let p = g.to_presentation();
    let v = vec![rational::int(w.kind.sign()); g.num_vertices()];
    let m = weight_matrix(&p, &v).ok()?;
    let goodness = check_orders(&m, &w.edge_order, &w.vertex_order)?;
    Some(ITestWitness {
        vector: v,
        goodness,
    })
}

/// Runs the tree check, deforestation and weak deforestation in turn.
pub fn log_verdict(g: &Log) -> Verdict {
    let tree_graph = if initial_graph(g).is_tree() {
        Some("I".to_string())
    } else if terminal_graph(g).is_tree() {
        Some("T".to_string())
    } else {
        None
    };
    if let Some(d) = deforest_any(g) {
        if let Some(itest) = induced_itest(g, &d) {
            return Verdict::dr(Witness::Deforestation(LogDeforestationWitness {
                deforestation: d,
                itest,
                tree_graph,
            }));
        }
    }
    match is_weakly_deforestable(g) {
        WeakOutcome::Found(stages) => {
            let Some((gens, rels, structure, vectors)) = stage_blocks(g, &stages) else {
                return Verdict::not_satisfied("weak deforestation did not yield blocks");
            };
            let q = match g.to_presentation().reordered(&gens, &rels) {
                Ok(q) => q,
                Err(_) => return Verdict::not_satisfied("weak deforestation did not yield blocks"),
            };
            match block_itest(&q, &structure, &vectors) {
                Ok(Verdict::ProvenDr { witness }) => match *witness {
                    Witness::Blocks(mut blocks) => {
                        blocks.generator_order = gens;
                        blocks.relator_order = rels;
                        Verdict::dr(Witness::WeakDeforestation(WeakDeforestationWitness {
                            stages,
                            blocks,
                        }))
                    }
                    _ => Verdict::not_satisfied("unexpected block witness"),
                },
                _ => Verdict::not_satisfied("stage blocks failed the block test"),
            }
        }
        WeakOutcome::Budget => Verdict::budget(),
        WeakOutcome::NotFound => {
            if tree_graph.is_some() {
                // unreachable by the forest argument, kept as a guard
                Verdict::not_satisfied("tree graph present but no deforestation found")
            } else {
                Verdict::not_satisfied("not weakly deforestable")
            }
        }
    }
}
