//! Runs every applicable test on one input and collects a report.

use std::time::Instant;

use serde::Serialize;

use crate::adian::{adian_verdict, generalized_verdict};
use crate::checker::check_verdict;
use crate::error::Result;
use crate::itest::{block_search, itest_search_with, SearchConfig};
use crate::kervaire::{dyck_test, hull_test};
use crate::log_tools::log_verdict;
use crate::presentation::{detect_adian, Log, Presentation};
use crate::verdict::Verdict;
use crate::whitehead::{weight_test, WeightTest, DEFAULT_CYCLE_CAP};

/// A parsed input: a plain presentation or a LOG.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Presentation(Presentation),
    Log(Log),
}

impl Input {
    pub fn presentation(&self) -> Presentation {
        match self {
            Input::Presentation(p) => p.clone(),
            Input::Log(g) => g.to_presentation(),
        }
    }

    pub fn log(&self) -> Option<&Log> {
        match self {
            Input::Log(g) => Some(g),
            Input::Presentation(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub search: SearchConfig,
    pub cycle_cap: usize,
    /// Keep running after the first DR verdict.
    pub all: bool,
    /// Run the weight test for comparison.
    pub weight_test: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            search: SearchConfig::default(),
            cycle_cap: DEFAULT_CYCLE_CAP,
            all: false,
            weight_test: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestResult {
    pub test: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub input: String,
    pub results: Vec<TestResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_test: Option<WeightTest>,
    /// Status of the strongest verdict.
    pub status: &'static str,
}

impl Report {
    pub fn strongest(&self) -> Option<&Verdict> {
        self.results
            .iter()
            .map(|r| &r.verdict)
            .max_by_key(|v| v.strength())
    }
}

type TestFn = fn(&Input, &Presentation, &PipelineConfig) -> Result<Verdict>;

fn log_test(input: &Input, _: &Presentation, _: &PipelineConfig) -> Result<Verdict> {
    Ok(match input.log() {
        Some(g) => log_verdict(g),
        None => Verdict::inapplicable("input is not a LOG"),
    })
}

fn adian_test(_: &Input, p: &Presentation, _: &PipelineConfig) -> Result<Verdict> {
    Ok(match detect_adian(p) {
        Some(a) => adian_verdict(&a),
        None => Verdict::inapplicable("not an Adian presentation"),
    })
}

fn generalized_test(_: &Input, p: &Presentation, _: &PipelineConfig) -> Result<Verdict> {
    Ok(generalized_verdict(p))
}

fn hull(_: &Input, p: &Presentation, _: &PipelineConfig) -> Result<Verdict> {
    hull_test(p)
}

fn dyck(_: &Input, p: &Presentation, _: &PipelineConfig) -> Result<Verdict> {
    dyck_test(p)
}

fn itest(_: &Input, p: &Presentation, c: &PipelineConfig) -> Result<Verdict> {
    Ok(itest_search_with(p, &c.search))
}

fn blocks(_: &Input, p: &Presentation, c: &PipelineConfig) -> Result<Verdict> {
    if p.num_relators() < 2 {
        return Ok(Verdict::inapplicable(
            "a single relator has no block structure",
        ));
    }
    Ok(block_search(p, &c.search))
}

/// Tests in the order they run, cheapest first.
pub const TESTS: &[(&str, TestFn)] = &[
    ("log", log_test),
    ("adian", adian_test),
    ("generalized_left_graph", generalized_test),
    ("hull", hull),
    ("dyck", dyck),
    ("itest", itest),
    ("blocks", blocks),
];

/// Runs one named test, turning errors into `Inapplicable` and downgrading
/// any positive verdict whose witness fails the independent check.
pub fn run_test(name: &str, input: &Input, config: &PipelineConfig) -> Option<TestResult> {
    let (test, f) = TESTS.iter().find(|(n, _)| *n == name)?;
    let p = input.presentation();
    Some(run_one(test, *f, input, &p, config))
}

fn run_one(
    test: &'static str,
    f: TestFn,
    input: &Input,
    p: &Presentation,
    config: &PipelineConfig,
) -> TestResult {
    let start = Instant::now();
    let verdict = match f(input, p, config) {
        Ok(v) => match check_verdict(p, input.log(), &v) {
            Ok(()) => v,
            Err(e) => Verdict::not_satisfied(format!("witness failed the independent check: {e}")),
        },
        Err(e) => Verdict::inapplicable(e.to_string()),
    };
    TestResult {
        test,
        verdict,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn run_pipeline(name: &str, input: &Input, config: &PipelineConfig) -> Report {
    let p = input.presentation();
    let mut results = Vec::new();
    for (test, f) in TESTS {
        let r = run_one(test, *f, input, &p, config);
        let stop = r.verdict.is_dr() && !config.all;
        results.push(r);
        if stop {
            break;
        }
    }
    let weight_test = if config.weight_test {
        weight_test(&p, config.cycle_cap).ok()
    } else {
        None
    };
    let status = results
        .iter()
        .map(|r| &r.verdict)
        .max_by_key(|v| v.strength())
        .map_or("Inapplicable", Verdict::status);
    Report {
        input: name.to_string(),
        results,
        weight_test,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_log, parse_presentation};

    #[test]
    fn stops_at_the_first_dr_verdict() {
        let g = parse_log("vertices: a b c\na c b\nb a c").unwrap();
        let report = run_pipeline("lot", &Input::Log(g.clone()), &PipelineConfig::default());
        assert_eq!(report.status, "ProvenDR");
        assert_eq!(report.results.len(), 1);
        let all = PipelineConfig {
            all: true,
            ..PipelineConfig::default()
        };
        assert_eq!(
            run_pipeline("lot", &Input::Log(g), &all).results.len(),
            TESTS.len()
        );
    }

    #[test]
    fn negative_control_claims_nothing() {
        let p = parse_presentation("x | x^2 x^-1").unwrap();
        let all = PipelineConfig {
            all: true,
            ..PipelineConfig::default()
        };
        let report = run_pipeline("control", &Input::Presentation(p), &all);
        assert!(report.results.iter().all(|r| !r.verdict.is_proven()));
    }
}
