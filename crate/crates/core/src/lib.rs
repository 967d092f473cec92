//! Sufficient tests for asphericity and diagrammatic reducibility of group
//! presentations: the I-test and its block form, LOG deforestations, Adian
//! left and right graphs, one-relator hull and Dyck criteria, and the
//! classical weight test for comparison.

pub mod adian;
pub mod checker;
pub mod corpus;
pub mod dot;
pub mod error;
pub mod itest;
pub mod ivanov;
pub mod kervaire;
pub mod linalg;
pub mod log_tools;
pub mod pipeline;
pub mod presentation;
pub mod rational;
pub mod syntax;
pub mod verdict;
pub mod whitehead;
pub mod word;

pub use adian::{adian_verdict, discretize, left_graph, right_graph};
pub use error::{Error, Result};
pub use itest::{itest_fixed, itest_search, weight, weight_matrix, WeightMatrix};
pub use kervaire::{build_tower, dyck_test, hull_test};
pub use log_tools::{deforest, is_weakly_deforestable, log_verdict};
pub use pipeline::{run_pipeline, Input, PipelineConfig, Report};
pub use presentation::{
    detect_adian, log_to_presentation, parse_log, parse_presentation, AdianPresentation, Log,
    LogEdge, Presentation,
};
pub use rational::Rational;
pub use syntax::parse_word;
pub use verdict::{Inconclusive, Verdict, Witness};
pub use whitehead::{weight_test, whitehead_graph};
pub use word::{DyckClass, ExponentVector, Letter, Word};
