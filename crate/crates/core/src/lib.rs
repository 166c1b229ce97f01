pub mod cli;
pub mod dp;
pub mod error;
pub mod instance;
pub mod io;
pub mod lab;
pub mod oracle;
pub mod pruned;
pub mod run;
pub mod stats;
pub mod suites;
pub mod threeway;
pub mod tree;
pub mod weight;

pub use dp::{solve_full, CutRange, DpTable, FullSolution};
pub use error::{Error, Result};
pub use instance::{SubproblemId, WeightedInstance};
pub use stats::SolveStats;
pub use tree::SearchTree;
pub use weight::Weight;
