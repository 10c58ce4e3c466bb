//! Fixed benchmark instances shared by the criterion benches.

use precsched::gen::{generate, GenParams, Model};
use precsched::Instance;

/// A seeded instance with times in `1..=100`.
pub fn fixture(n: usize, model: Model, density: f64, seed: u64) -> Instance {
    generate(&GenParams {
        n,
        model,
        density,
        tmax: 100,
        seed,
    })
    .expect("fixture parameters are valid")
}

/// Instances of growing size from every generator model.
pub fn sweep(sizes: &[usize]) -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for &n in sizes {
        for model in Model::ALL {
            out.push((format!("{model}/n{n}"), fixture(n, model, 0.3, n as u64)));
        }
    }
    out
}
