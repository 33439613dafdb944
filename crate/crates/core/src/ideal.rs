//! Ideals, filters, primality, ultrafilters and separation by prime ideals.
//!
//! An ideal is a non-empty down-set in which every pair of members has an
//! upper bound inside the set; a filter is the order dual. The predicates in
//! this module work on arbitrary subsets and answer `false` rather than
//! erroring when the subset lacks the shape they test for.
//!
//! Every ideal of a finite poset is principal, so [`enumerate_ideals`] and
//! [`enumerate_filters`] simply collect the principal down-sets and up-sets.

use crate::error::{Error, Result};
use crate::poset::{Element, Poset, Subset};

pub fn is_ideal(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(directed_closed(p, s, Direction::Down))
}

pub fn is_filter(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(directed_closed(p, s, Direction::Up))
}

#[derive(Clone, Copy)]
enum Direction {
    /// down-closed, upper bounds inside (ideals)
    Down,
    /// up-closed, lower bounds inside (filters)
    Up,
}

fn directed_closed(p: &Poset, s: &Subset, dir: Direction) -> bool {
    if s.is_empty() {
        return false;
    }
    let bits = s.bits();
    let members: Vec<Element> = s.iter().collect();
    for &x in &members {
        let closure = match dir {
            Direction::Down => p.down_bits(x),
            Direction::Up => p.up_bits(x),
        };
        if !closure.is_subset(bits) {
            return false;
        }
    }
    for (k, &x) in members.iter().enumerate() {
        for &y in &members[k + 1..] {
            let bound = match dir {
                Direction::Down => p.upper_pair_unchecked(x, y),
                Direction::Up => p.lower_pair_unchecked(x, y),
            };
            if bound.bits().is_disjoint(bits) {
                return false;
            }
        }
    }
    true
}

/// `U(x, y) ∩ s ≠ ∅` for all `x, y ∈ s` (vacuous on the empty set).
pub fn is_up_directed(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(pairs_have_bound_inside(p, s, Direction::Down))
}

/// `L(x, y) ∩ s ≠ ∅` for all `x, y ∈ s` (vacuous on the empty set).
pub fn is_down_directed(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(pairs_have_bound_inside(p, s, Direction::Up))
}

fn pairs_have_bound_inside(p: &Poset, s: &Subset, dir: Direction) -> bool {
    let members: Vec<Element> = s.iter().collect();
    members.iter().enumerate().all(|(k, &x)| {
        members[k..].iter().all(|&y| {
            let bound = match dir {
                Direction::Down => p.upper_pair_unchecked(x, y),
                Direction::Up => p.lower_pair_unchecked(x, y),
            };
            !bound.bits().is_disjoint(s.bits())
        })
    })
}

/// Down-closed: `x ∈ s` and `y ≤ x` imply `y ∈ s`.
pub fn is_down_set(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(s.iter().all(|x| p.down_bits(x).is_subset(s.bits())))
}

/// Up-closed: `x ∈ s` and `x ≤ y` imply `y ∈ s`.
pub fn is_up_set(p: &Poset, s: &Subset) -> Result<bool> {
    p.owns(s)?;
    Ok(s.iter().all(|x| p.up_bits(x).is_subset(s.bits())))
}

/// All ideals, in canonical order.
pub fn enumerate_ideals(p: &Poset) -> Vec<Subset> {
    let mut v: Vec<Subset> = p.elements().map(|a| p.down_unchecked(a)).collect();
    v.sort();
    v.dedup();
    v
}

/// All filters, in canonical order.
pub fn enumerate_filters(p: &Poset) -> Vec<Subset> {
    let mut v: Vec<Subset> = p.elements().map(|a| p.up_unchecked(a)).collect();
    v.sort();
    v.dedup();
    v
}

/// Proper ideal with `L(a,b) ⊆ s ⇒ a ∈ s or b ∈ s` for all `a, b`.
pub fn is_prime_ideal(p: &Poset, s: &Subset) -> Result<bool> {
    Ok(is_ideal(p, s)? && !s.is_full() && prime_condition(p, s, Direction::Down))
}

/// Proper filter with `U(a,b) ⊆ s ⇒ a ∈ s or b ∈ s` for all `a, b`.
pub fn is_prime_filter(p: &Poset, s: &Subset) -> Result<bool> {
    Ok(is_filter(p, s)? && !s.is_full() && prime_condition(p, s, Direction::Up))
}

fn prime_condition(p: &Poset, s: &Subset, dir: Direction) -> bool {
    let outside: Vec<Element> = p.elements().filter(|&x| !s.contains(x)).collect();
    // only pairs with both a, b outside s can violate the implication
    outside.iter().enumerate().all(|(k, &a)| {
        outside[k..].iter().all(|&b| {
            let bound = match dir {
                Direction::Down => p.lower_pair_unchecked(a, b),
                Direction::Up => p.upper_pair_unchecked(a, b),
            };
            !bound.is_subset_unchecked(s)
        })
    })
}

/// Maximal proper filters.
pub fn ultrafilters(p: &Poset) -> Vec<Subset> {
    let proper: Vec<Subset> = enumerate_filters(p).into_iter().filter(|f| !f.is_full()).collect();
    proper.iter().filter(|f| !proper.iter().any(|g| g != *f && f.is_subset_unchecked(g))).cloned().collect()
}

/// `P ∖ s`
pub fn complement(p: &Poset, s: &Subset) -> Result<Subset> {
    p.owns(s)?;
    Ok(s.complement_unchecked())
}

/// Prime ideal containing `i` and missing `f`: the complement of `f`.
pub fn separate(p: &Poset, i: &Subset, f: &Subset) -> Result<Subset> {
    if !is_ideal(p, i)? {
        return Err(Error::NotAnIdeal);
    }
    if !is_prime_filter(p, f)? {
        return Err(Error::NotAPrimeFilter);
    }
    if !i.is_disjoint(f)? {
        return Err(Error::NotDisjoint);
    }
    Ok(f.complement_unchecked())
}

/// Ideals and filters of one poset with their classifications.
#[derive(Debug, Clone)]
pub struct IdealFilterCatalog {
    pub ideals: Vec<Subset>,
    pub filters: Vec<Subset>,
    /// Indices into `ideals`.
    pub prime_ideals: Vec<usize>,
    /// Indices into `filters`.
    pub prime_filters: Vec<usize>,
    /// Indices into `filters`.
    pub ultrafilters: Vec<usize>,
    /// Generator `a` with `ideals[k] = (a]`.
    pub ideal_generators: Vec<Element>,
    /// Generator `a` with `filters[k] = [a)`.
    pub filter_generators: Vec<Element>,
}

impl IdealFilterCatalog {
    pub fn build(p: &Poset) -> IdealFilterCatalog {
        let ideals = enumerate_ideals(p);
        let filters = enumerate_filters(p);
        let generator = |s: &Subset, top: bool| {
            let extreme = if top { p.maximal_elements(s) } else { p.minimal_elements(s) };
            extreme.ok().and_then(|m| m.iter().next()).expect("principal sets have a generator")
        };
        let ideal_generators = ideals.iter().map(|s| generator(s, true)).collect();
        let filter_generators = filters.iter().map(|s| generator(s, false)).collect();
        let prime_ideals = indices_where(&ideals, |s| prime_condition(p, s, Direction::Down) && !s.is_full());
        let prime_filters = indices_where(&filters, |s| prime_condition(p, s, Direction::Up) && !s.is_full());
        let ultra = ultrafilters(p);
        let ultrafilters = indices_where(&filters, |s| ultra.contains(s));
        IdealFilterCatalog {
            ideals,
            filters,
            prime_ideals,
            prime_filters,
            ultrafilters,
            ideal_generators,
            filter_generators,
        }
    }

    pub fn prime_ideal_sets(&self) -> impl Iterator<Item = &Subset> {
        self.prime_ideals.iter().map(|&k| &self.ideals[k])
    }

    pub fn prime_filter_sets(&self) -> impl Iterator<Item = &Subset> {
        self.prime_filters.iter().map(|&k| &self.filters[k])
    }

    pub fn ultrafilter_sets(&self) -> impl Iterator<Item = &Subset> {
        self.ultrafilters.iter().map(|&k| &self.filters[k])
    }
}

fn indices_where(sets: &[Subset], pred: impl Fn(&Subset) -> bool) -> Vec<usize> {
    sets.iter().enumerate().filter_map(|(k, s)| pred(s).then_some(k)).collect()
}
