//! Human-readable rendering of verdicts and reports.

use std::fmt::Write;

use drtest::adian::Side;
use drtest::itest::GoodnessWitness;
use drtest::log_tools::Clause;
use drtest::pipeline::TestResult;
use drtest::rational::{format_vector, int, Rational};
use drtest::verdict::Witness;
use drtest::whitehead::WeightTest;
use drtest::{weight_matrix, Presentation, Report};

fn names(all: &[String], idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| all[i].as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

fn relator_names(m: usize) -> Vec<String> {
    (1..=m).map(|j| format!("r{j}")).collect()
}

fn orders(out: &mut String, p: &Presentation, g: &GoodnessWitness) {
    let cols: Vec<String> = g
        .column_order
        .iter()
        .map(|j| format!("r{}", j + 1))
        .collect();
    let _ = writeln!(out, "    columns {}", cols.join(" "));
    let _ = writeln!(out, "    rows    {}", names(p.generators(), &g.row_order));
}

fn matrix(out: &mut String, p: &Presentation, v: &[Rational]) {
    if let Ok(m) = weight_matrix(p, v) {
        for line in m
            .render(p.generators(), &relator_names(p.num_relators()))
            .lines()
        {
            let _ = writeln!(out, "    {line}");
        }
    }
}

fn itest(out: &mut String, p: &Presentation, v: &[Rational], g: &GoodnessWitness) {
    let _ = writeln!(out, "    vector  {}", format_vector(v));
    orders(out, p, g);
    matrix(out, p, v);
}

/// Details of a witness, indented under its verdict line.
pub fn witness(p: &Presentation, w: &Witness) -> String {
    let mut out = String::new();
    let gens = p.generators();
    match w {
        Witness::ITest(w) => itest(&mut out, p, &w.vector, &w.goodness),
        Witness::Blocks(b) => {
            if let Ok(q) = p.reordered(&b.generator_order, &b.relator_order) {
                let _ = writeln!(out, "    generators {}", q.generators().join(" "));
                for l in 0..b.structure.len() {
                    let (g, r) = b.structure.block(l);
                    let _ = writeln!(
                        out,
                        "    block {}: generators {}..{}, relators {}..{}, vector {}",
                        l + 1,
                        g.start + 1,
                        g.end,
                        r.start + 1,
                        r.end,
                        format_vector(&b.vectors[l])
                    );
                }
            }
        }
        Witness::Deforestation(d) => {
            let w = &d.deforestation;
            let _ = writeln!(out, "    {} deforestation", w.kind);
            let edges: Vec<String> = w.edge_order.iter().map(|e| format!("e{}", e + 1)).collect();
            let _ = writeln!(out, "    edges    {}", edges.join(" "));
            let _ = writeln!(out, "    vertices {}", names(gens, &w.vertex_order));
            let clauses: Vec<&str> = w.clauses.iter().map(|&c| w.clause_label(c)).collect();
            let _ = writeln!(out, "    clauses  {}", clauses.join(" "));
            if let Some(t) = &d.tree_graph {
                let _ = writeln!(out, "    {t}(G) is a tree");
            }
            itest(&mut out, p, &d.itest.vector, &d.itest.goodness);
        }
        Witness::WeakDeforestation(d) => {
            for (k, s) in d.stages.iter().enumerate() {
                let w = &s.deforestation;
                let labels = w.clauses.iter().filter(|&&c| c == Clause::Label).count();
                let _ = writeln!(
                    out,
                    "    stage {}: {} removing {} ({} label, {} leaf)",
                    k + 1,
                    w.kind,
                    names(gens, &w.vertex_order),
                    labels,
                    w.clauses.len() - labels
                );
            }
            let _ = writeln!(out, "    {} blocks", d.blocks.structure.len());
        }
        Witness::Deletion(d) => {
            let side = match d.side {
                Side::Left => "left graph",
                Side::Right => "right graph",
                Side::Generalized => "generalized left graph",
            };
            let _ = writeln!(out, "    {side} discretizes");
            for del in &d.deletions {
                let _ = writeln!(
                    out,
                    "    delete edge {} by {}",
                    del.edge + 1,
                    gens[del.witness]
                );
            }
            if let Some(w) = &d.itest {
                itest(&mut out, p, &w.vector, &w.goodness);
            }
        }
        Witness::Hull(h) => {
            let c = &h.candidate;
            let _ = writeln!(
                out,
                "    extreme point {:?} of {} (position {}), normal {}",
                c.point,
                gens[c.generator],
                c.position,
                format_vector(&c.normal)
            );
            itest(&mut out, p, &h.itest.vector, &h.itest.goodness);
        }
        Witness::Dyck(d) => {
            let _ = writeln!(
                out,
                "    rotation {} with {} syllables, x = {}, y = {}",
                d.rotation, d.syllables, gens[d.x], gens[d.y]
            );
            let _ = writeln!(out, "    {}-shape {}", gens[d.x], d.x_shape);
        }
    }
    out
}

pub fn result(p: &Presentation, r: &TestResult) -> String {
    let mut out = format!("  {:<24} {} ({} ms)\n", r.test, r.verdict, r.elapsed_ms);
    if let Some(w) = r.verdict.witness() {
        out.push_str(&witness(p, w));
    }
    out
}

/// Certificates are mostly zero; only the rows they use are listed, relator
/// rows as `r_j` and cycle rows as `z_k`.
pub fn weight_test(w: &WeightTest, relators: usize) -> String {
    match w {
        WeightTest::Infeasible { certificate } => {
            let used: Vec<String> = certificate
                .iter()
                .enumerate()
                .filter(|(_, y)| **y != int(0))
                .map(|(k, y)| match k.checked_sub(relators) {
                    None => format!("r{}: {y}", k + 1),
                    Some(c) => format!("z{}: {y}", c + 1),
                })
                .collect();
            format!(
                "  {:<24} infeasible, certificate {}\n",
                "weight test",
                used.join(", ")
            )
        }
        _ => format!("  {:<24} {w}\n", "weight test"),
    }
}

pub fn report(p: &Presentation, r: &Report) -> String {
    let mut out = format!("{}\n  {p}\n", r.input);
    for t in &r.results {
        out.push_str(&result(p, t));
    }
    if let Some(w) = &r.weight_test {
        out.push_str(&weight_test(w, p.num_relators()));
    }
    let _ = writeln!(out, "  status: {}", r.status);
    out
}
