//! Re-verification of witnesses from their definitions.
//!
//! Nothing here calls the search code: weights, labels, clouds and clause
//! counts are recomputed directly so that a bug in a search cannot certify
//! its own output.

use std::fmt;

use num_traits::{One, Zero};

use crate::adian::{DeletionWitness, Side};
use crate::itest::{BlockWitness, GoodnessWitness, ITestWitness};
use crate::kervaire::{DyckWitness, HullWitness};
use crate::log_tools::{
    Clause, DeforestKind, DeforestationWitness, LogDeforestationWitness, WeakDeforestationWitness,
};
use crate::presentation::{Log, Presentation};
use crate::rational::{self, Rational};
use crate::verdict::{Verdict, Witness};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckError(pub String);

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckError {}

type Check = Result<(), CheckError>;

fn fail<T>(msg: impl Into<String>) -> Result<T, CheckError> {
    Err(CheckError(msg.into()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

/// Checks the witness of a positive verdict against the input. Verdicts
/// without a witness pass trivially. `log` is required for LOG witnesses.
pub fn check_verdict(p: &Presentation, log: Option<&Log>, verdict: &Verdict) -> Check {
    match verdict.witness() {
        None => Ok(()),
        Some(w) => check_witness(p, log, w),
    }
}

pub fn check_witness(p: &Presentation, log: Option<&Log>, w: &Witness) -> Check {
    match w {
        Witness::ITest(w) => check_itest(p, w),
        Witness::Blocks(w) => check_blocks(p, w),
        Witness::Deforestation(w) => {
            let g = log.ok_or_else(|| CheckError("deforestation witness needs the LOG".into()))?;
            check_log_deforestation(g, w)
        }
        Witness::WeakDeforestation(w) => {
            let g =
                log.ok_or_else(|| CheckError("weak deforestation witness needs the LOG".into()))?;
            check_weak_deforestation(g, w)
        }
        Witness::Deletion(w) => check_deletion(p, w),
        Witness::Hull(w) => check_hull(p, w),
        Witness::Dyck(w) => check_dyck(p, w),
    }
}

/// `M_{i,j}` by summing `v` over each `s(k, r_j)` letter by letter.
pub fn naive_weight_matrix(p: &Presentation, v: &[Rational]) -> Vec<Vec<Vec<Rational>>> {
    let mut m = vec![vec![Vec::new(); p.num_relators()]; p.num_generators()];
    for (j, r) in p.relators().iter().enumerate() {
        let letters = r.letters();
        for (k, l) in letters.iter().enumerate() {
            let start = if l.positive { k } else { k + 1 };
            let mut w = Rational::zero();
            for t in &letters[start..] {
                if t.positive {
                    w += &v[t.generator];
                } else {
                    w -= &v[t.generator];
                }
            }
            m[l.generator][j].push(w);
        }
    }
    m
}

fn orthogonal(p: &Presentation, v: &[Rational]) -> Check {
    ensure(v.len() == p.num_generators(), "vector has the wrong length")?;
    for (j, r) in p.relators().iter().enumerate() {
        let mut s = Rational::zero();
        for l in r.letters() {
            if l.positive {
                s += &v[l.generator];
            } else {
                s -= &v[l.generator];
            }
        }
        ensure(
            s.is_zero(),
            format!("vector is not orthogonal to relator {}", j + 1),
        )?;
    }
    Ok(())
}

/// The three conditions of goodness for given orders, restricted to the
/// listed rows and columns of `m`.
pub fn check_goodness(
    m: &[Vec<Vec<Rational>>],
    rows: &[usize],
    cols: &[usize],
    w: &GoodnessWitness,
) -> Check {
    ensure(rows.len() >= cols.len(), "fewer rows than columns")?;
    ensure(
        w.column_order.len() == cols.len(),
        "column order has the wrong length",
    )?;
    ensure(
        w.row_order.len() == cols.len(),
        "row order has the wrong length",
    )?;
    let mut seen_c = w.column_order.clone();
    seen_c.sort_unstable();
    seen_c.dedup();
    let mut want = cols.to_vec();
    want.sort_unstable();
    ensure(
        seen_c == want,
        "column order is not a permutation of the columns",
    )?;
    let mut seen_r = w.row_order.clone();
    seen_r.sort_unstable();
    seen_r.dedup();
    ensure(seen_r.len() == w.row_order.len(), "row order repeats a row")?;
    ensure(
        w.row_order.iter().all(|i| rows.contains(i)),
        "row order leaves the block",
    )?;
    for (k, (&j, &i)) in w.column_order.iter().zip(&w.row_order).enumerate() {
        let entry = &m[i][j];
        let Some(lambda) = entry.iter().max() else {
            return fail(format!("step {}: empty entry", k + 1));
        };
        let row_max = cols
            .iter()
            .flat_map(|&c| &m[i][c])
            .max()
            .expect("entry is nonempty");
        ensure(
            lambda == row_max,
            format!("step {}: pivot is not the row maximum", k + 1),
        )?;
        let mult = w.column_order[k..]
            .iter()
            .flat_map(|&c| &m[i][c])
            .filter(|x| *x == lambda)
            .count();
        ensure(
            mult == 1,
            format!("step {}: pivot value occurs {mult} times", k + 1),
        )?;
        if let Some(pv) = w.pivots.get(k) {
            ensure(
                &pv.value == lambda && pv.row == i && pv.column == j,
                format!("step {}: pivot record", k + 1),
            )?;
        }
    }
    Ok(())
}

pub fn check_itest(p: &Presentation, w: &ITestWitness) -> Check {
    orthogonal(p, &w.vector)?;
    let m = naive_weight_matrix(p, &w.vector);
    let rows: Vec<usize> = (0..p.num_generators()).collect();
    let cols: Vec<usize> = (0..p.num_relators()).collect();
    check_goodness(&m, &rows, &cols, &w.goodness)
}

fn reorder(p: &Presentation, gens: &[usize], rels: &[usize]) -> Result<Presentation, CheckError> {
    p.reordered(gens, rels)
        .map_err(|e| CheckError(format!("bad reordering: {e}")))
}

pub fn check_blocks(p: &Presentation, w: &BlockWitness) -> Check {
    let q = reorder(p, &w.generator_order, &w.relator_order)?;
    let s = &w.structure;
    ensure(
        s.generator_cuts.last() == Some(&q.num_generators()),
        "last generator cut is not n",
    )?;
    ensure(
        s.relator_cuts.last() == Some(&q.num_relators()),
        "last relator cut is not m",
    )?;
    ensure(
        w.vectors.len() == s.len() && w.blocks.len() == s.len(),
        "one vector and witness per block",
    )?;
    for l in 0..s.len() {
        let (gens, rels) = s.block(l);
        for j in rels.clone() {
            ensure(
                q.relators()[j]
                    .letters()
                    .iter()
                    .all(|x| x.generator < gens.end),
                format!("relator {} leaves the first {} generators", j + 1, gens.end),
            )?;
        }
        orthogonal(&q, &w.vectors[l])?;
        let m = naive_weight_matrix(&q, &w.vectors[l]);
        let rows: Vec<usize> = gens.collect();
        let cols: Vec<usize> = rels.collect();
        check_goodness(&m, &rows, &cols, &w.blocks[l])
            .map_err(|e| CheckError(format!("block {}: {e}", l + 1)))?;
    }
    Ok(())
}

/// Replays a deforestation from the sub-LOG given by the masks, clause by
/// clause; returns the masks it ends at.
pub fn replay_deforestation(
    g: &Log,
    edges: &[bool],
    vertices: &[bool],
    w: &DeforestationWitness,
) -> Result<(Vec<bool>, Vec<bool>), CheckError> {
    let (init, term): (Vec<usize>, Vec<usize>) = g
        .edges()
        .iter()
        .map(|e| match w.kind {
            DeforestKind::IlT => (e.init, e.terminal),
            DeforestKind::TlI => (e.terminal, e.init),
        })
        .unzip();
    let label: Vec<usize> = g.edges().iter().map(|e| e.label).collect();
    let start = edges.to_vec();
    let mut edges = edges.to_vec();
    let mut vertices = vertices.to_vec();
    ensure(
        w.edge_order.len() == w.vertex_order.len() && w.clauses.len() == w.edge_order.len(),
        "orders and clauses differ in length",
    )?;
    for (step, ((&e, &x), &clause)) in w
        .edge_order
        .iter()
        .zip(&w.vertex_order)
        .zip(&w.clauses)
        .enumerate()
    {
        let at = |msg: &str| CheckError(format!("step {}: {msg}", step + 1));
        if e >= edges.len() || !edges[e] {
            return Err(at("edge is not present"));
        }
        if x >= vertices.len() || !vertices[x] {
            return Err(at("vertex is not present"));
        }
        let live = (0..edges.len()).filter(|&f| edges[f]);
        match clause {
            Clause::Label => {
                let hits: usize = live
                    .map(|f| usize::from(init[f] == x) + usize::from(label[f] == x))
                    .sum();
                if hits != 1 || !(init[e] == x || label[e] == x) {
                    return Err(at("label clause fails"));
                }
            }
            Clause::Leaf => {
                let ends: Vec<usize> = live.filter(|&f| term[f] == x).collect();
                if ends != [e] {
                    return Err(at("vertex is not the terminal of exactly this edge"));
                }
                if (0..start.len()).any(|f| start[f] && (init[f] == x || label[f] == x)) {
                    return Err(at(
                        "vertex is an initial vertex or label in the starting LOG",
                    ));
                }
            }
        }
        edges[e] = false;
        vertices[x] = false;
    }
    Ok((edges, vertices))
}

fn closed(g: &Log, edges: &[bool], vertices: &[bool]) -> bool {
    g.edges()
        .iter()
        .zip(edges)
        .filter(|(_, &keep)| keep)
        .all(|(e, _)| vertices[e.init] && vertices[e.label] && vertices[e.terminal])
}

pub fn check_log_deforestation(g: &Log, w: &LogDeforestationWitness) -> Check {
    let (edges, _) = replay_deforestation(
        g,
        &vec![true; g.num_edges()],
        &vec![true; g.num_vertices()],
        &w.deforestation,
    )?;
    ensure(edges.iter().all(|e| !e), "deforestation leaves edges")?;
    let p = g.to_presentation();
    let sign = rational::int(w.deforestation.kind.sign());
    ensure(
        w.itest.vector.iter().all(|x| *x == sign),
        "vector is not the signed all-ones vector",
    )?;
    ensure(
        w.itest.goodness.column_order == w.deforestation.edge_order
            && w.itest.goodness.row_order == w.deforestation.vertex_order,
        "I-test orders differ from the deforestation orders",
    )?;
    check_itest(&p, &w.itest)
}

pub fn check_weak_deforestation(g: &Log, w: &WeakDeforestationWitness) -> Check {
    let mut edges = vec![true; g.num_edges()];
    let mut vertices = vec![true; g.num_vertices()];
    ensure(!w.stages.is_empty(), "no stages")?;
    for (i, stage) in w.stages.iter().enumerate() {
        let (e, v) = replay_deforestation(g, &edges, &vertices, &stage.deforestation)
            .map_err(|err| CheckError(format!("stage {}: {err}", i + 1)))?;
        ensure(
            e == stage.edges && v == stage.vertices,
            format!("stage {}: recorded sub-LOG differs from the replay", i + 1),
        )?;
        ensure(
            closed(g, &e, &v),
            format!("stage {}: result is not a sub-LOG", i + 1),
        )?;
        ensure(e != edges, format!("stage {}: removes nothing", i + 1))?;
        edges = e;
        vertices = v;
    }
    ensure(edges.iter().all(|e| !e), "last sub-LOG is not discrete")?;
    check_blocks(&g.to_presentation(), &w.blocks)
}

/// Splits `U V^-1` back into `(U, V)` by literal signs.
fn split(r: &Word) -> Option<(Vec<usize>, Vec<usize>)> {
    let letters = r.letters();
    let cut = letters.iter().position(|l| !l.positive)?;
    if cut == 0 || letters[cut..].iter().any(|l| l.positive) {
        return None;
    }
    let u = letters[..cut].iter().map(|l| l.generator).collect();
    let v = letters[cut..].iter().rev().map(|l| l.generator).collect();
    Some((u, v))
}

/// Label multisets and endpoints of the left (or right) graph, recomputed.
fn side_labels(p: &Presentation, right: bool) -> Option<Vec<(usize, usize, Vec<usize>)>> {
    let mut words = Vec::new();
    for r in p.relators() {
        let (mut u, mut v) = split(r)?;
        if right {
            u.reverse();
            v.reverse();
        }
        words.push((u, v));
    }
    let n = p.num_generators();
    let mut out: Vec<(usize, usize, Vec<usize>)> = words
        .iter()
        .map(|(u, v)| (u[0], v[0], Vec::new()))
        .collect();
    for x in 0..n {
        let pos = |w: &[usize]| w.iter().position(|&y| y == x);
        let best = words
            .iter()
            .flat_map(|(u, v)| [pos(u), pos(v)])
            .flatten()
            .min();
        if let Some(best) = best {
            for (j, (u, v)) in words.iter().enumerate() {
                for w in [u, v] {
                    if pos(w) == Some(best) {
                        out[j].2.push(x);
                    }
                }
            }
        }
    }
    Some(out)
}

fn generalized_labels(p: &Presentation) -> Option<Vec<(usize, usize, Vec<usize>)>> {
    let mut vals: Vec<(usize, usize, i64)> = Vec::new();
    let mut out = Vec::new();
    for (j, r) in p.relators().iter().enumerate() {
        let ls = r.letters();
        let tail = |k: usize| ls[k..].iter().map(|l| l.sign()).sum::<i64>();
        if tail(0) != 0 || (1..ls.len()).any(|k| tail(k) >= 0) {
            return None;
        }
        for (k, l) in ls.iter().enumerate() {
            vals.push((l.generator, j, tail(if l.positive { k } else { k + 1 })));
        }
        out.push((ls[0].generator, ls[ls.len() - 1].generator, Vec::new()));
    }
    for x in 0..p.num_generators() {
        if let Some(best) = vals.iter().filter(|v| v.0 == x).map(|v| v.2).max() {
            for v in vals.iter().filter(|v| v.0 == x && v.2 == best) {
                out[v.1].2.push(x);
            }
        }
    }
    Some(out)
}

pub fn check_deletion(p: &Presentation, w: &DeletionWitness) -> Check {
    let graph = match w.side {
        Side::Left => side_labels(p, false),
        Side::Right => side_labels(p, true),
        Side::Generalized => generalized_labels(p),
    }
    .ok_or_else(|| CheckError("presentation does not have the required shape".into()))?;
    let mut present = vec![true; graph.len()];
    for (k, d) in w.deletions.iter().enumerate() {
        ensure(
            d.edge < graph.len() && present[d.edge],
            format!("deletion {}: edge not present", k + 1),
        )?;
        ensure(
            graph[d.edge].2.contains(&d.witness),
            format!("deletion {}: witness is not a label", k + 1),
        )?;
        let total: usize = (0..graph.len())
            .filter(|&e| present[e])
            .map(|e| graph[e].2.iter().filter(|&&x| x == d.witness).count())
            .sum();
        ensure(
            total == 1,
            format!("deletion {}: witness occurs {total} times", k + 1),
        )?;
        present[d.edge] = false;
    }
    ensure(
        present.iter().all(|e| !e),
        "edges remain after the deletions",
    )?;
    match (&w.itest, w.side) {
        (Some(t), _) => {
            for (u, v) in p.relators().iter().filter_map(split) {
                ensure(u.len() == v.len(), "relation sides differ in length")?;
            }
            let sign = if w.side == Side::Right {
                -Rational::one()
            } else {
                Rational::one()
            };
            ensure(
                t.vector.iter().all(|x| *x == sign),
                "vector is not the signed all-ones vector",
            )?;
            check_itest(p, t)
        }
        (None, Side::Generalized) => Ok(()),
        (None, _) => fail("missing I-test certificate"),
    }
}

fn single(p: &Presentation) -> Result<&Word, CheckError> {
    match p.relators() {
        [r] => Ok(r),
        _ => fail("expected one relator"),
    }
}

pub fn check_hull(p: &Presentation, w: &HullWitness) -> Check {
    let r = single(p)?;
    let n = p.num_generators();
    let c = &w.candidate;
    let letters = r.letters();
    let cloud: Vec<(usize, Vec<i64>)> = letters
        .iter()
        .enumerate()
        .filter(|(_, l)| l.generator == c.generator)
        .map(|(k, l)| {
            let start = if l.positive { k } else { k + 1 };
            let mut pt = vec![0i64; n];
            for t in &letters[start..] {
                pt[t.generator] += t.sign();
            }
            (k + 1, pt)
        })
        .collect();
    let at = cloud
        .iter()
        .find(|(k, _)| *k == c.position)
        .map(|(_, pt)| pt);
    ensure(
        at == Some(&c.point),
        "point is not the class at the recorded position",
    )?;
    ensure(
        cloud.iter().filter(|(_, pt)| *pt == c.point).count() == 1,
        "point has multiplicity above one",
    )?;
    for (_, pt) in cloud.iter().filter(|(k, _)| *k != c.position) {
        let gap: Rational = (0..n)
            .map(|i| &c.normal[i] * rational::int(c.point[i] - pt[i]))
            .fold(Rational::zero(), |a, b| a + b);
        ensure(gap >= Rational::one(), "normal does not separate the point")?;
    }
    let neg: Vec<Rational> = c.normal.iter().map(|x| -x).collect();
    ensure(
        w.itest.vector == c.normal || w.itest.vector == neg,
        "I-test vector is not the normal",
    )?;
    check_itest(p, &w.itest)
}

pub fn check_dyck(p: &Presentation, w: &DyckWitness) -> Check {
    let r = single(p)?;
    ensure(
        p.num_generators() == 2 && w.x != w.y && w.x < 2 && w.y < 2,
        "expected two generators",
    )?;
    let letters = r.letters();
    ensure(
        w.rotation >= 1 && w.rotation <= letters.len(),
        "rotation out of range",
    )?;
    let rot: Vec<_> = letters[w.rotation - 1..]
        .iter()
        .chain(&letters[..w.rotation - 1])
        .copied()
        .collect();
    let mut syl: Vec<usize> = Vec::new();
    for (k, l) in rot.iter().enumerate() {
        if k == 0 || rot[k - 1] != *l {
            syl.push(l.generator);
        }
    }
    let p_len = syl.len();
    ensure(p_len == w.syllables, "syllable count differs")?;
    ensure(
        p_len >= 2 && syl[0] == w.x && syl[p_len - 2] == w.x && syl[p_len - 1] == w.y,
        "syllable pattern fails",
    )?;
    let signs: Vec<i64> = rot
        .iter()
        .filter(|l| l.generator == w.x)
        .map(|l| l.sign())
        .collect();
    ensure(
        signs.iter().sum::<i64>() == 0,
        "x-shape has nonzero exponent",
    )?;
    let mut run = 0;
    let want = if w.positive { 1 } else { -1 };
    for s in &signs[..signs.len().saturating_sub(1)] {
        run += s;
        ensure(run.signum() == want, "x-shape is not a strong Dyck word")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itest::itest_fixed;
    use crate::presentation::parse_presentation;
    use crate::rational::ints;

    #[test]
    fn rejects_a_tampered_witness() {
        let p = parse_presentation("x, y | x^3 y x y").unwrap();
        let v = itest_fixed(&p, &ints(&[1, -2])).unwrap();
        assert!(check_verdict(&p, None, &v).is_ok());
        let Some(Witness::ITest(mut w)) = v.witness().cloned() else {
            panic!("expected an I-test witness")
        };
        w.vector = ints(&[2, -4]);
        assert!(check_itest(&p, &w).is_ok());
        w.vector = ints(&[1, 1]);
        assert!(check_itest(&p, &w).is_err());
    }

    #[test]
    fn naive_matrix_matches_the_fast_one() {
        let p =
            parse_presentation("x, y, z, w | x^2 y^2 z^2 ; x y x^-1 z y z^-1 ; w^2 x^-1 w^-1 z")
                .unwrap();
        let v = ints(&[1, 0, -1, 2]);
        let fast = crate::itest::weight_matrix(&p, &v).unwrap();
        let slow = naive_weight_matrix(&p, &v);
        for i in 0..4 {
            for j in 0..3 {
                assert_eq!(fast.entry(i, j), slow[i][j].as_slice());
            }
        }
    }
}
