//! Benchmark inputs shared by the criterion targets.

use katoskel::fan::{fan_from_stratification, Component, KatoFan, StratifiedModel};
use katoskel::lattice::IVec;

/// Three components meeting pairwise and in a triple point.
pub fn triple_point(m: i64) -> KatoFan {
    let comps: Vec<Component> = ["E1", "E2", "E3"]
        .iter()
        .map(|n| StratifiedModel::vertical(n, m))
        .collect();
    let strata: &[&[&str]] = &[
        &["E1"],
        &["E2"],
        &["E3"],
        &["E1", "E2"],
        &["E1", "E3"],
        &["E2", "E3"],
        &["E1", "E2", "E3"],
    ];
    fan_from_stratification(&StratifiedModel::simple(comps, strata)).expect("valid model")
}

/// Generators of the rank-three cone over a square with a tilted apex.
pub fn square_cone(k: i64) -> Vec<IVec> {
    vec![vec![1, 0, 0], vec![1, k, 0], vec![1, 0, k], vec![1, k, k + 1]]
}
