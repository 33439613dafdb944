use std::collections::BTreeSet;

use ordkit_core::dsl;
use ordkit_core::ideal;
use ordkit_core::pseudo;
use ordkit_core::randgen::{self, GenConfig};
use ordkit_core::theorems::{self, Status, TheoremId};
use ordkit_core::{Element, Poset, Subset};
use proptest::prelude::*;

fn poset_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, 0.0..=1.0f64, any::<u64>(), any::<bool>()).prop_map(|(n, edge_prob, seed, force_bottom)| {
        randgen::generate(&GenConfig { n, edge_prob, seed, force_bottom, ..Default::default() }).unwrap()
    })
}

fn pseudocomplemented_strategy(max_n: usize) -> impl Strategy<Value = Poset> {
    // sparse draws over many elements are rarely pseudocomplemented; such
    // cases are skipped rather than resampled indefinitely
    (1..=max_n, 0.1..=0.9f64, any::<u64>()).prop_filter_map("no pseudocomplemented sample", |(n, edge_prob, seed)| {
        randgen::generate(&GenConfig {
            n,
            edge_prob,
            seed,
            force_bottom: true,
            require_pseudocomplemented: true,
            max_rejects: 10_000,
        })
        .ok()
    })
}

fn index_sets<'a>(v: impl IntoIterator<Item = &'a Subset>) -> BTreeSet<Vec<usize>> {
    v.into_iter().map(Subset::indices).collect()
}

/// Condition (iii) of the ultrafilter theorem, quantifying over every
/// `a, f1, f2, a1, a2` as written.
fn condition_iii_brute_force(p: &Poset, f: &Subset) -> bool {
    let lower = |x: Element, y: Element| -> Vec<Element> {
        p.elements().filter(|&z| p.leq(z, x).unwrap() && p.leq(z, y).unwrap()).collect()
    };
    let below = |s: &[Element], x: Element| s.iter().all(|&z| p.leq(z, x).unwrap());
    let fs: Vec<Element> = f.iter().collect();
    p.elements().filter(|&a| !f.contains(a)).all(|a| {
        fs.iter().all(|&f1| {
            fs.iter().all(|&f2| {
                p.elements().all(|a1| {
                    p.elements().all(|a2| {
                        if !(below(&lower(a, f1), a1) && below(&lower(a, f2), a2)) {
                            return true;
                        }
                        fs.iter().any(|&f3| lower(a1, a2).into_iter().any(|a3| below(&lower(a, f3), a3)))
                    })
                })
            })
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_matches_principal_inclusion(p in poset_strategy(9)) {
        for x in p.elements() {
            for y in p.elements() {
                let inclusion = p.down_set(x).unwrap().is_subset(&p.down_set(y).unwrap()).unwrap();
                prop_assert_eq!(p.leq(x, y).unwrap(), inclusion);
                let reverse = p.up_set(y).unwrap().is_subset(&p.up_set(x).unwrap()).unwrap();
                prop_assert_eq!(p.leq(x, y).unwrap(), reverse);
            }
        }
    }

    #[test]
    fn duality_swaps_ideals_and_filters(p in poset_strategy(9)) {
        let d = p.dual();
        prop_assert_eq!(index_sets(&ideal::enumerate_ideals(&d)), index_sets(&ideal::enumerate_filters(&p)));
        prop_assert_eq!(index_sets(&ideal::enumerate_filters(&d)), index_sets(&ideal::enumerate_ideals(&p)));
        let pi: BTreeSet<_> = ideal::enumerate_ideals(&p).iter()
            .filter(|s| ideal::is_prime_ideal(&p, s).unwrap()).map(Subset::indices).collect();
        let df: BTreeSet<_> = ideal::enumerate_filters(&d).iter()
            .filter(|s| ideal::is_prime_filter(&d, s).unwrap()).map(Subset::indices).collect();
        prop_assert_eq!(pi, df);
        prop_assert_eq!(d.dual(), p);
    }

    #[test]
    fn ultrafilters_are_maximal_proper_filters(p in poset_strategy(9)) {
        let filters = ideal::enumerate_filters(&p);
        let ultras = ideal::ultrafilters(&p);
        for u in &ultras {
            prop_assert!(!u.is_full());
            for f in filters.iter().filter(|f| !f.is_full()) {
                prop_assert!(!(u.is_subset(f).unwrap() && u != f));
            }
        }
        // every proper filter lies below some ultrafilter
        for f in filters.iter().filter(|f| !f.is_full()) {
            prop_assert!(ultras.iter().any(|u| f.is_subset(u).unwrap()));
        }
    }

    #[test]
    fn star_laws(p in pseudocomplemented_strategy(7)) {
        let t = pseudo::star_table(&p).unwrap();
        let zero = t.bottom();
        for a in p.elements() {
            let s = t.star(a);
            // a* is the greatest x with L(a, x) = {0}
            prop_assert_eq!(p.lower_pair(a, s).unwrap().indices(), vec![zero.index()]);
            for x in p.elements() {
                if p.lower_pair(a, x).unwrap().len() == 1 {
                    prop_assert!(p.leq(x, s).unwrap());
                }
            }
            prop_assert_eq!(t.star(t.double_star(a)), s);
        }
        let b = t.boolean_elements();
        let d = t.dense_elements();
        prop_assert_eq!(b.intersection(&d).unwrap().len(), 1);
    }

    #[test]
    fn condition_iii_matches_brute_force(p in pseudocomplemented_strategy(6)) {
        for f in ideal::enumerate_filters(&p).iter().filter(|f| !f.is_full()) {
            prop_assert_eq!(
                theorems::check_th2_condition_iii(&p, f).unwrap(),
                condition_iii_brute_force(&p, f)
            );
        }
    }

    #[test]
    fn registry_passes_on_pseudocomplemented_posets(p in pseudocomplemented_strategy(8)) {
        for r in theorems::check_all(&p) {
            prop_assert_eq!(r.status, Status::Pass, "{:?}", r);
        }
    }

    #[test]
    fn text_round_trip(p in poset_strategy(12)) {
        let text = dsl::serialize_poset("r", &p);
        let doc = dsl::parse(&text).unwrap();
        prop_assert_eq!(dsl::serialize(&doc), text);
        prop_assert_eq!(doc.entries[0].to_poset().unwrap(), p);
    }

    #[test]
    fn failures_replay(p in poset_strategy(7)) {
        for id in [TheoremId::Lem5Directed, TheoremId::DenseProperFilter] {
            let r = theorems::check(&p, id).unwrap();
            if let Some(cex) = r.counterexample {
                let again = theorems::replay(&cex).unwrap();
                prop_assert_eq!(again.status, Status::Fail);
                prop_assert_eq!(again.counterexample.unwrap(), cex);
            }
        }
    }
}

#[test]
fn meet_semilattices_satisfy_condition_iii() {
    // a chain and a diamond with a top
    let chain = Poset::from_covers(&["0", "x", "y"], &[("0", "x"), ("x", "y")]).unwrap();
    let diamond = Poset::from_covers(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]).unwrap();
    for p in [chain, diamond] {
        for f in ideal::enumerate_filters(&p).iter().filter(|f| !f.is_full()) {
            assert!(theorems::check_th2_condition_iii(&p, f).unwrap());
        }
    }
}
