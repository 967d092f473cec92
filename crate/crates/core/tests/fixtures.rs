//! Frozen LOTs that exercise the less common branches of the LOG tests.

use drtest::checker::check_verdict;
use drtest::log_tools::{
    initial_graph, is_deforestable, terminal_graph, weakly_deforest, WeakConfig, WeakOutcome,
};
use drtest::verdict::Witness;
use drtest::{log_verdict, parse_log, run_pipeline, Input, PipelineConfig};

/// Weakly deforestable in two stages, not deforestable.
const WEAK: &str = "vertices: x1 x2 x3 x4
x2 x1 x1
x3 x4 x2
x3 x4 x4";

/// Deforestable although both the initial and terminal graphs have cycles.
const CYCLIC: &str = "vertices: x1 x2 x3 x4
x1 x4 x2
x3 x1 x1
x1 x1 x4";

#[test]
fn weak_but_not_deforestable() {
    let g = parse_log(WEAK).unwrap();
    assert!(g.is_tree());
    assert!(!is_deforestable(&g));
    let WeakOutcome::Found(stages) = weakly_deforest(&g, &WeakConfig::default()) else {
        panic!("no weak deforestation");
    };
    assert_eq!(stages.len(), 2);
    let v = log_verdict(&g);
    assert!(
        matches!(v.witness(), Some(Witness::WeakDeforestation(_))),
        "{v:?}"
    );
    check_verdict(&g.to_presentation(), Some(&g), &v).unwrap();

    let one = WeakConfig {
        max_stages: 1,
        ..WeakConfig::default()
    };
    assert_eq!(weakly_deforest(&g, &one), WeakOutcome::NotFound);
}

#[test]
fn deforestable_with_cyclic_graphs() {
    let g = parse_log(CYCLIC).unwrap();
    assert!(!initial_graph(&g).is_forest());
    assert!(!terminal_graph(&g).is_forest());
    let v = log_verdict(&g);
    match v.witness() {
        Some(Witness::Deforestation(w)) => assert!(w.tree_graph.is_none()),
        other => panic!("{other:?}"),
    }
    check_verdict(&g.to_presentation(), Some(&g), &v).unwrap();
}

#[test]
fn pipeline_reports_the_log_verdict_first() {
    for text in [WEAK, CYCLIC] {
        let g = parse_log(text).unwrap();
        let report = run_pipeline("fixture", &Input::Log(g), &PipelineConfig::default());
        assert_eq!(report.status, "ProvenDR");
        assert_eq!(report.results[0].test, "log");
        assert_eq!(report.results.len(), 1);
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let g = parse_log(CYCLIC).unwrap();
    let mut v = log_verdict(&g);
    if let drtest::Verdict::ProvenDr { witness } = &mut v {
        if let Witness::Deforestation(w) = witness.as_mut() {
            w.deforestation.vertex_order.reverse();
        }
    }
    assert!(check_verdict(&g.to_presentation(), Some(&g), &v).is_err());
}
