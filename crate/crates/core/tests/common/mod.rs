#![allow(dead_code)]

use afsat::af::{ArgumentationFramework, Extension};
use proptest::prelude::*;

pub fn af_from_matrix(k: usize, matrix: &[bool]) -> ArgumentationFramework {
    let names = (0..k).map(|i| format!("a{i}")).collect();
    let attacks = (0..k * k).filter(|&p| matrix[p]).map(|p| (p / k, p % k));
    ArgumentationFramework::new(names, attacks).unwrap()
}

/// Frameworks with `1..=max_k` arguments; each ordered pair is an attack
/// with a per-case density drawn from {0, 0.25, 0.5, 0.75, 1}.
pub fn arb_af(max_k: usize) -> impl Strategy<Value = ArgumentationFramework> {
    (1..=max_k, 0usize..5).prop_flat_map(|(k, d)| {
        let p = d as f64 / 4.0;
        proptest::collection::vec(proptest::bool::weighted(p), k * k).prop_map(move |m| af_from_matrix(k, &m))
    })
}

pub fn sorted(mut v: Vec<Extension>) -> Vec<Extension> {
    v.sort();
    v
}
