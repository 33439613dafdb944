//! The two golden posets, both pseudocomplemented and neither a lattice.

use crate::dsl;
use crate::poset::Poset;

/// Source text of `fixtures/figures.poset` (entries `fig1` and `fig2`).
pub const FIGURES: &str = include_str!("../fixtures/figures.poset");

fn load(name: &str) -> Poset {
    let doc = dsl::parse(FIGURES).expect("bundled fixture parses");
    doc.entry(name).expect("bundled fixture entry").to_poset().expect("bundled fixture is a poset")
}

/// `0 < a < b`, `0 < c`, `b, c < d, e < 1`.
pub fn fig1() -> Poset {
    load("fig1")
}

/// `0 < a, b < c < d, e < f, g < 1`.
pub fn fig2() -> Poset {
    load("fig2")
}
