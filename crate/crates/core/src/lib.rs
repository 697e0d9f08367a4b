pub mod canon;
pub mod connectivity;
pub mod cost;
pub mod embedding;
pub mod error;
pub mod format;
pub mod generators;
pub mod fpt;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod random;
pub mod rng;
pub mod steiner;
pub mod treewidth;

pub use cost::Cost;
pub use error::{Error, Result, VerifyError};
pub use graph::Graph;
pub use model::{
    cost_of, dominates, plan_cost, verify_solution, verify_with, Color, ColorKind, ColorTable, CostSpec, Domination,
    Instance, MovementPlan, MulticoloredGraph, Pebble, Problem, Solution,
};
