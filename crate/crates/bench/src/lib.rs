//! Inputs shared by the benchmarks.

use glmn_core::{staircase, WeightDiagram};

/// Staircase diagrams `×(2, 4, …, 2k − 2)` for `k = 2..=max_k`.
pub fn staircases(max_k: u32) -> Vec<(u32, WeightDiagram)> {
    (2..=max_k).map(|k| (k, staircase(k))).collect()
}

/// A wide diagram with cores, used for the single-move benchmarks.
pub fn wide() -> WeightDiagram {
    WeightDiagram::from_parts([19, 16, 15, 11, 10, 6, 5, 1, 0], [17, 7], [13, 3]).expect("disjoint positions")
}
