//! Community membership hiding laboratory.
//!
//! The pipeline: load an undirected graph, inject controllable proxy nodes
//! next to a target, then rewire edges under a budget so that an overlapping
//! community detector no longer places the target in its original community.
//! A factored-policy PPO agent learns the rewiring strategy against a
//! black-box detector; heuristic baselines run through the same environment
//! for comparison, and a harness aggregates success rate / ONMI / F1 with
//! confidence intervals.

pub mod detect;
pub mod error;
pub mod graph;
pub mod util;

pub use error::{Error, Result};
