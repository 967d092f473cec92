//! The block version of the I-test for block-triangular presentations.

use serde::Serialize;

use super::search::{relator_null_space, search_submatrix, Outcome, SearchConfig};
use super::{check_vector, is_good, weight_matrix_unchecked, GoodnessWitness};
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::rational::{self, Rational};
use crate::verdict::{one_based, Verdict, Witness};

pub const DEFAULT_BLOCK_CANDIDATES: usize = 32;

/// Cut points `n_1 < ... < n_k = n` and `m_1 < ... < m_k = m`. Block `l`
/// holds generators `n_{l-1}+1..n_l` and relators `m_{l-1}+1..m_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockStructure {
    pub generator_cuts: Vec<usize>,
    pub relator_cuts: Vec<usize>,
}

impl BlockStructure {
    pub fn new(generator_cuts: Vec<usize>, relator_cuts: Vec<usize>) -> Result<Self> {
        let b = BlockStructure {
            generator_cuts,
            relator_cuts,
        };
        if b.generator_cuts.is_empty() || b.generator_cuts.len() != b.relator_cuts.len() {
            return Err(Error::InvalidBlocks(
                "generator and relator cut lists must be nonempty and of equal length".into(),
            ));
        }
        for cuts in [&b.generator_cuts, &b.relator_cuts] {
            if cuts[0] == 0 || cuts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidBlocks(
                    "cut points must be strictly increasing and positive".into(),
                ));
            }
        }
        Ok(b)
    }

    /// The single block covering everything.
    pub fn trivial(n: usize, m: usize) -> Result<Self> {
        Self::new(vec![n], vec![m])
    }

    pub fn len(&self) -> usize {
        self.generator_cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generator_cuts.is_empty()
    }

    /// 0-based generator and relator index ranges of block `l`.
    pub fn block(&self, l: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        let g0 = if l == 0 {
            0
        } else {
            self.generator_cuts[l - 1]
        };
        let r0 = if l == 0 { 0 } else { self.relator_cuts[l - 1] };
        (g0..self.generator_cuts[l], r0..self.relator_cuts[l])
    }

    /// Checks the cuts end at `n` and `m` and that relators of the first `l`
    /// blocks only use generators of the first `l` blocks.
    pub fn validate(&self, p: &Presentation) -> Result<()> {
        if self.generator_cuts.last() != Some(&p.num_generators())
            || self.relator_cuts.last() != Some(&p.num_relators())
        {
            return Err(Error::InvalidBlocks(format!(
                "last cuts must be n = {} and m = {}",
                p.num_generators(),
                p.num_relators()
            )));
        }
        for l in 0..self.len() {
            let (gens, rels) = self.block(l);
            for j in rels {
                if let Some(g) = p.relators()[j].max_generator() {
                    if g >= gens.end {
                        return Err(Error::InvalidBlocks(format!(
                            "relator {} uses generator {} outside the first {} blocks",
                            j + 1,
                            g + 1,
                            l + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A reordering of a presentation together with a block structure for the
/// reordered presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockCandidate {
    /// `generator_order[i]` is the original index of the new generator `i`.
    #[serde(serialize_with = "one_based")]
    pub generator_order: Vec<usize>,
    #[serde(serialize_with = "one_based")]
    pub relator_order: Vec<usize>,
    pub structure: BlockStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockWitness {
    /// Orders applied to the input before blocking; identities when the
    /// input was already block-triangular.
    #[serde(serialize_with = "one_based")]
    pub generator_order: Vec<usize>,
    #[serde(serialize_with = "one_based")]
    pub relator_order: Vec<usize>,
    pub structure: BlockStructure,
    #[serde(serialize_with = "rational::serialize_vecs")]
    pub vectors: Vec<Vec<Rational>>,
    /// One witness per diagonal block, with indices of the reordered
    /// presentation.
    pub blocks: Vec<GoodnessWitness>,
}

fn block_goodness(
    p: &Presentation,
    blocks: &BlockStructure,
    l: usize,
    v: &[Rational],
) -> Option<GoodnessWitness> {
    let (gens, rels) = blocks.block(l);
    let rows: Vec<usize> = gens.collect();
    let cols: Vec<usize> = rels.collect();
    let mut w = is_good(&weight_matrix_unchecked(p, v).submatrix(&rows, &cols))?;
    for c in &mut w.column_order {
        *c = cols[*c];
    }
    for r in &mut w.row_order {
        *r = rows[*r];
    }
    for pv in &mut w.pivots {
        pv.column = cols[pv.column];
        pv.row = rows[pv.row];
    }
    Some(w)
}

/// Tests every diagonal block `M_l(v_l)` for goodness.
pub fn block_itest(
    p: &Presentation,
    blocks: &BlockStructure,
    vectors: &[Vec<Rational>],
) -> Result<Verdict> {
    blocks.validate(p)?;
    if vectors.len() != blocks.len() {
        return Err(Error::InvalidBlocks(format!(
            "{} blocks but {} vectors",
            blocks.len(),
            vectors.len()
        )));
    }
    for v in vectors {
        check_vector(p, v)?;
    }
    let mut goodness = Vec::with_capacity(blocks.len());
    for (l, v) in vectors.iter().enumerate() {
        match block_goodness(p, blocks, l, v) {
            Some(w) => goodness.push(w),
            None => {
                return Ok(Verdict::not_satisfied(format!(
                    "block {} is not good",
                    l + 1
                )))
            }
        }
    }
    Ok(Verdict::dr(Witness::Blocks(BlockWitness {
        generator_order: (0..p.num_generators()).collect(),
        relator_order: (0..p.num_relators()).collect(),
        structure: blocks.clone(),
        vectors: vectors.to_vec(),
        blocks: goodness,
    })))
}

fn support(p: &Presentation, j: usize) -> Vec<bool> {
    let mut s = vec![false; p.num_generators()];
    for l in p.relators()[j].letters() {
        s[l.generator] = true;
    }
    s
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

type Layer = (Vec<usize>, Vec<usize>);

fn layerings(
    supports: &[Vec<bool>],
    used: &[bool],
    placed: &[bool],
    layers: &mut Vec<Layer>,
    out: &mut Vec<Vec<Layer>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let open: Vec<usize> = (0..placed.len()).filter(|&j| !placed[j]).collect();
    if open.is_empty() {
        out.push(layers.clone());
        return;
    }
    let unions: Vec<Vec<bool>> = open
        .iter()
        .map(|&j| {
            used.iter()
                .zip(&supports[j])
                .map(|(a, b)| *a || *b)
                .collect()
        })
        .collect();
    let mut minimal: Vec<Vec<bool>> = Vec::new();
    for (a, u) in unions.iter().enumerate() {
        let dominated = unions
            .iter()
            .enumerate()
            .any(|(b, w)| b != a && subset(w, u) && (w != u || b < a));
        if !dominated && !minimal.contains(u) {
            minimal.push(u.clone());
        }
    }
    for t in minimal {
        let rels: Vec<usize> = open
            .iter()
            .copied()
            .filter(|&j| subset(&supports[j], &t))
            .collect();
        let gens: Vec<usize> = (0..t.len()).filter(|&g| t[g] && !used[g]).collect();
        let mut placed2 = placed.to_vec();
        for &j in &rels {
            placed2[j] = true;
        }
        layers.push((gens, rels));
        layerings(supports, &t, &placed2, layers, out, cap);
        layers.pop();
    }
}

/// Merges layers until every layer has at least as many generators as
/// relators, appending unused generators to the last layer.
fn normalize(mut layers: Vec<Layer>, n: usize) -> Vec<Layer> {
    let mut seen = vec![false; n];
    for (g, _) in &layers {
        for &x in g {
            seen[x] = true;
        }
    }
    if let Some(last) = layers.last_mut() {
        last.0.extend((0..n).filter(|&x| !seen[x]));
    }
    let mut i = 0;
    while i < layers.len() {
        if layers[i].0.len() >= layers[i].1.len() {
            i += 1;
            continue;
        }
        if layers.len() == 1 {
            break;
        }
        let j = if i + 1 < layers.len() { i + 1 } else { i - 1 };
        let (lo, hi) = (i.min(j), i.max(j));
        let (g, r) = layers.remove(hi);
        layers[lo].0.extend(g);
        layers[lo].1.extend(r);
        i = lo;
    }
    layers
}

fn candidate(layers: &[Layer]) -> Option<BlockCandidate> {
    let mut generator_order = Vec::new();
    let mut relator_order = Vec::new();
    let mut gc = Vec::new();
    let mut rc = Vec::new();
    for (g, r) in layers {
        generator_order.extend(g.iter().copied());
        relator_order.extend(r.iter().copied());
        gc.push(generator_order.len());
        rc.push(relator_order.len());
    }
    Some(BlockCandidate {
        generator_order,
        relator_order,
        structure: BlockStructure::new(gc, rc).ok()?,
    })
}

/// Candidate block-triangular reorderings, found by repeatedly peeling the
/// relators whose generator support is minimal. Always includes the trivial
/// one-block structure (unless there are no relators); at most `cap` results.
pub fn detect_blocks(p: &Presentation, cap: usize) -> Vec<BlockCandidate> {
    let n = p.num_generators();
    let m = p.num_relators();
    if m == 0 || n == 0 {
        return Vec::new();
    }
    let supports: Vec<Vec<bool>> = (0..m).map(|j| support(p, j)).collect();
    let mut raw = Vec::new();
    layerings(
        &supports,
        &vec![false; n],
        &vec![false; m],
        &mut Vec::new(),
        &mut raw,
        cap,
    );

    let mut out: Vec<BlockCandidate> = Vec::new();
    let push = |c: Option<BlockCandidate>, out: &mut Vec<BlockCandidate>| {
        if let Some(c) = c {
            if out.len() < cap && !out.contains(&c) {
                out.push(c);
            }
        }
    };
    for layers in raw {
        let layers = normalize(layers, n);
        push(candidate(&layers), &mut out);
        for i in 0..layers.len().saturating_sub(1) {
            let mut merged = layers.clone();
            let (g, r) = merged.remove(i + 1);
            merged[i].0.extend(g);
            merged[i].1.extend(r);
            push(candidate(&merged), &mut out);
        }
    }
    let trivial = BlockCandidate {
        generator_order: (0..n).collect(),
        relator_order: (0..m).collect(),
        structure: BlockStructure::trivial(n, m).expect("n, m > 0"),
    };
    if !out.contains(&trivial) {
        if out.len() >= cap {
            out.pop();
        }
        out.push(trivial);
    }
    out
}

/// Tries every detected blocking with more than one block, searching each
/// diagonal block for its own vector.
pub fn block_search(p: &Presentation, config: &SearchConfig) -> Verdict {
    if p.num_relators() == 0 {
        return Verdict::inapplicable("no relators");
    }
    let mut calls = 0;
    let mut budget_hit = false;
    let mut tried = 0;
    for cand in detect_blocks(p, DEFAULT_BLOCK_CANDIDATES) {
        if cand.structure.len() < 2 {
            continue;
        }
        tried += 1;
        let q = match p.reordered(&cand.generator_order, &cand.relator_order) {
            Ok(q) => q,
            Err(_) => continue,
        };
        let basis = relator_null_space(&q);
        if basis.is_empty() {
            return Verdict::inapplicable("no nonzero vector is orthogonal to every relator");
        }
        let mut vectors = Vec::new();
        for l in 0..cand.structure.len() {
            let (gens, rels) = cand.structure.block(l);
            let rows: Vec<usize> = gens.collect();
            let cols: Vec<usize> = rels.collect();
            match search_submatrix(&q, &basis, &rows, &cols, config, &mut calls) {
                Outcome::Found(v, _) => vectors.push(v),
                Outcome::Budget => {
                    budget_hit = true;
                    break;
                }
                Outcome::Exhausted => break,
            }
        }
        if budget_hit {
            break;
        }
        if vectors.len() != cand.structure.len() {
            continue;
        }
        if let Ok(Verdict::ProvenDr { witness }) = block_itest(&q, &cand.structure, &vectors) {
            if let Witness::Blocks(mut w) = *witness {
                w.generator_order = cand.generator_order.clone();
                w.relator_order = cand.relator_order.clone();
                return Verdict::dr(Witness::Blocks(w));
            }
        }
    }
    if budget_hit {
        Verdict::budget()
    } else if tried == 0 {
        Verdict::inapplicable("no block-triangular structure with more than one block")
    } else {
        Verdict::not_satisfied("no detected blocking has good diagonal blocks")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;
    use crate::rational::ints;

    #[test]
    fn one_block_agrees_with_fixed_vector() {
        let p = parse_presentation("x, y | x^3 y x y").unwrap();
        let b = BlockStructure::trivial(2, 1).unwrap();
        assert!(block_itest(&p, &b, &[ints(&[1, -2])]).unwrap().is_dr());
    }

    #[test]
    fn triangularity_is_enforced() {
        let p = parse_presentation("a, b | a b a^-1 b^-1 ; b").unwrap();
        let b = BlockStructure::new(vec![1, 2], vec![1, 2]).unwrap();
        assert!(matches!(b.validate(&p), Err(Error::InvalidBlocks(_))));
        assert!(BlockStructure::new(vec![2, 1], vec![1, 2]).is_err());
        assert!(BlockStructure::new(vec![1], vec![1, 2]).is_err());
    }

    #[test]
    fn detects_given_triangular_order() {
        let p =
            parse_presentation("a, b, c | a^2 a^-2 ; b a b^-1 a^-1 ; c b c^-1 a^-1 b a").unwrap();
        let found = detect_blocks(&p, 32);
        let expected = BlockCandidate {
            generator_order: vec![0, 1, 2],
            relator_order: vec![0, 1, 2],
            structure: BlockStructure::new(vec![1, 2, 3], vec![1, 2, 3]).unwrap(),
        };
        assert!(found.contains(&expected), "{found:?}");
        for c in &found {
            let q = p.reordered(&c.generator_order, &c.relator_order).unwrap();
            c.structure.validate(&q).unwrap();
        }
    }

    #[test]
    fn single_relator_gets_the_trivial_block() {
        let p = parse_presentation("x, y | x y x^-1 y^-2").unwrap();
        let found = detect_blocks(&p, 32);
        assert!(found
            .iter()
            .any(|c| c.structure == BlockStructure::trivial(2, 1).unwrap()));
    }
}
