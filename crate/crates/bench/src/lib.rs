//! Workloads shared by the benchmarks.

use ordkit_core::randgen::{self, GenConfig};
use ordkit_core::Poset;

/// A seeded random poset with `n` sampled elements and an adjoined bottom.
pub fn random_poset(n: usize, edge_prob: f64, seed: u64) -> Poset {
    let cfg = GenConfig { n, edge_prob, seed, force_bottom: true, ..Default::default() };
    randgen::generate(&cfg).expect("valid configuration")
}

/// A seeded pseudocomplemented poset with `n` sampled elements and a bottom.
pub fn pseudocomplemented_poset(n: usize, edge_prob: f64, seed: u64) -> Poset {
    let cfg =
        GenConfig { n, edge_prob, seed, force_bottom: true, require_pseudocomplemented: true, max_rejects: 1_000_000 };
    randgen::generate(&cfg).expect("a pseudocomplemented poset within budget")
}

/// The chain `c0 < c1 < ... < c{n-1}`.
pub fn chain(n: usize) -> Poset {
    let labels = (0..n).map(|i| format!("c{i}")).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_index_covers(labels, &covers).expect("chains are posets")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_have_expected_shape() {
        assert_eq!(random_poset(20, 0.2, 1).len(), 21);
        assert!(ordkit_core::pseudo::is_pseudocomplemented(&pseudocomplemented_poset(6, 0.5, 3)));
        assert_eq!(chain(5).covers().len(), 4);
    }
}
