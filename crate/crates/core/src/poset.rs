//! Finite posets stored as dense bit matrices, plus the [`Subset`] type that
//! every ideal, filter and bound set is expressed in.
//!
//! Elements are identified by their declaration index. The order relation is
//! kept twice, once as principal up-sets `[a)` and once as principal
//! down-sets `(a]`, so both directions of every query are a single row
//! lookup.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest carrier accepted by [`Poset::from_covers`].
pub const DEFAULT_MAX_CARRIER: usize = 4096;

static NEXT_POSET_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_POSET_ID.fetch_add(1, AtomicOrdering::Relaxed)
}

/// An element of a poset, by declaration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(usize);

impl Element {
    pub const fn new(index: usize) -> Self {
        Element(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

/// A set of elements belonging to one particular poset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    owner: u64,
    bits: FixedBitSet,
}

impl Subset {
    pub(crate) fn from_bits(owner: u64, bits: FixedBitSet) -> Self {
        Subset { owner, bits }
    }

    pub(crate) fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Size of the carrier this subset lives in.
    pub fn carrier_len(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, e: Element) -> bool {
        e.0 < self.bits.len() && self.bits.contains(e.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones().map(Element)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn same_owner(&self, other: &Subset) -> bool {
        self.owner == other.owner
    }

    fn check_owner(&self, other: &Subset) -> Result<()> {
        if self.owner == other.owner {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_owner(other)?;
        Ok(self.union_unchecked(other))
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.check_owner(other)?;
        Ok(self.intersection_unchecked(other))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check_owner(other)?;
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Ok(Subset { owner: self.owner, bits })
    }

    pub fn is_subset(&self, other: &Subset) -> Result<bool> {
        self.check_owner(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn is_disjoint(&self, other: &Subset) -> Result<bool> {
        self.check_owner(other)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }

    pub(crate) fn union_unchecked(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Subset { owner: self.owner, bits }
    }

    pub(crate) fn intersection_unchecked(&self, other: &Subset) -> Subset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Subset { owner: self.owner, bits }
    }

    pub(crate) fn complement_unchecked(&self) -> Subset {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        Subset { owner: self.owner, bits }
    }

    pub(crate) fn is_subset_unchecked(&self, other: &Subset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub(crate) fn insert(&mut self, e: Element) {
        self.bits.insert(e.0);
    }

    pub fn is_full(&self) -> bool {
        self.bits.is_full()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// Canonical order: by size, then lexicographically by member indices.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.bits.ones().cmp(other.bits.ones()))
            .then_with(|| self.owner.cmp(&other.owner))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A validated finite partial order.
#[derive(Clone)]
pub struct Poset {
    id: u64,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    // up[a] = [a), down[a] = (a]
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<(Element, Element)>,
}

impl Poset {
    /// Builds a poset from labelled cover pairs `(lower, upper)`. Pairs that
    /// are implied by transitivity are accepted and dropped from the stored
    /// covers.
    pub fn from_covers<L, C>(labels: &[L], covers: &[(C, C)]) -> Result<Poset>
    where
        L: AsRef<str>,
        C: AsRef<str>,
    {
        Self::from_covers_with_limit(labels, covers, DEFAULT_MAX_CARRIER)
    }

    pub fn from_covers_with_limit<L, C>(labels: &[L], covers: &[(C, C)], limit: usize) -> Result<Poset>
    where
        L: AsRef<str>,
        C: AsRef<str>,
    {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        let index = build_index(&labels)?;
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let lo = lo.as_ref();
            let hi = hi.as_ref();
            let i = *index.get(lo).ok_or_else(|| Error::UnknownLabel(lo.to_owned()))?;
            let j = *index.get(hi).ok_or_else(|| Error::UnknownLabel(hi.to_owned()))?;
            pairs.push((i, j));
        }
        Self::build(labels, index, &pairs, limit)
    }

    /// Same as [`Poset::from_covers`] with covers given as index pairs.
    pub fn from_index_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset> {
        let index = build_index(&labels)?;
        let n = labels.len();
        if let Some(&(i, j)) = covers.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::UnknownElement(i.max(j)));
        }
        Self::build(labels, index, covers, DEFAULT_MAX_CARRIER)
    }

    fn build(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
        limit: usize,
    ) -> Result<Poset> {
        let n = labels.len();
        if n > limit {
            return Err(Error::CarrierTooLarge { size: n, limit });
        }
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(i, j) in pairs {
            if i == j {
                return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
            }
            up[i].insert(j);
        }
        // Warshall
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                if i != j && up[j].contains(i) {
                    return Err(Error::CycleDetected(labels[i].clone(), labels[j].clone()));
                }
                down[j].insert(i);
            }
        }
        let covers = transitive_reduction(&up, &down);
        Ok(Poset { id: fresh_id(), labels, index, up, down, covers })
    }

    /// Builds a poset directly from a relation matrix that is already known
    /// to be a partial order.
    fn from_up_rows(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<FixedBitSet>) -> Poset {
        let n = labels.len();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        let covers = transitive_reduction(&up, &down);
        Poset { id: fresh_id(), labels, index, up, down, covers }
    }

    /// The order-reversed poset on the same labels.
    pub fn dual(&self) -> Poset {
        Poset::from_up_rows(self.labels.clone(), self.index.clone(), self.down.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: Element) -> &str {
        &self.labels[e.0]
    }

    pub fn element(&self, label: &str) -> Result<Element> {
        self.index.get(label).map(|&i| Element(i)).ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.labels.len()).map(Element)
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, sorted by index.
    pub fn covers(&self) -> &[(Element, Element)] {
        &self.covers
    }

    fn check(&self, e: Element) -> Result<()> {
        if e.0 < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(e.0))
        }
    }

    pub(crate) fn owns(&self, s: &Subset) -> Result<()> {
        if s.owner == self.id {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub fn leq(&self, x: Element, y: Element) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.le(x, y))
    }

    pub(crate) fn le(&self, x: Element, y: Element) -> bool {
        self.up[x.0].contains(y.0)
    }

    pub(crate) fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.le(x, y)
    }

    pub fn empty_subset(&self) -> Subset {
        Subset::from_bits(self.id, FixedBitSet::with_capacity(self.len()))
    }

    pub fn full_subset(&self) -> Subset {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        Subset::from_bits(self.id, bits)
    }

    pub fn subset<I>(&self, elements: I) -> Result<Subset>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut s = self.empty_subset();
        for e in elements {
            self.check(e)?;
            s.insert(e);
        }
        Ok(s)
    }

    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = self.empty_subset();
        for l in labels {
            s.insert(self.element(l.as_ref())?);
        }
        Ok(s)
    }

    /// Subset whose members are the set bits of `mask` (carriers up to 64).
    pub(crate) fn subset_from_mask(&self, mask: u64) -> Subset {
        let mut s = self.empty_subset();
        for i in 0..self.len().min(64) {
            if mask >> i & 1 == 1 {
                s.insert(Element(i));
            }
        }
        s
    }

    /// Member labels in declaration order.
    pub fn subset_labels(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|e| self.labels[e.0].clone()).collect()
    }

    pub fn display_subset(&self, s: &Subset) -> String {
        format!("{{{}}}", self.subset_labels(s).join(","))
    }

    /// `(a]`
    pub fn down_set(&self, a: Element) -> Result<Subset> {
        self.check(a)?;
        Ok(self.down_unchecked(a))
    }

    /// `[a)`
    pub fn up_set(&self, a: Element) -> Result<Subset> {
        self.check(a)?;
        Ok(self.up_unchecked(a))
    }

    pub(crate) fn down_unchecked(&self, a: Element) -> Subset {
        Subset::from_bits(self.id, self.down[a.0].clone())
    }

    pub(crate) fn up_unchecked(&self, a: Element) -> Subset {
        Subset::from_bits(self.id, self.up[a.0].clone())
    }

    pub(crate) fn down_bits(&self, a: Element) -> &FixedBitSet {
        &self.down[a.0]
    }

    pub(crate) fn up_bits(&self, a: Element) -> &FixedBitSet {
        &self.up[a.0]
    }

    /// Common lower bounds of all members of `xs`.
    pub fn lower_bounds(&self, xs: &Subset) -> Result<Subset> {
        self.owns(xs)?;
        self.bounds(xs, &self.down)
    }

    /// Common upper bounds of all members of `xs`.
    pub fn upper_bounds(&self, xs: &Subset) -> Result<Subset> {
        self.owns(xs)?;
        self.bounds(xs, &self.up)
    }

    fn bounds(&self, xs: &Subset, rows: &[FixedBitSet]) -> Result<Subset> {
        let mut it = xs.iter();
        let first = it.next().ok_or(Error::EmptyArgument)?;
        let mut acc = rows[first.0].clone();
        for x in it {
            acc.intersect_with(&rows[x.0]);
        }
        Ok(Subset::from_bits(self.id, acc))
    }

    /// `L(a, b)`
    pub fn lower_pair(&self, a: Element, b: Element) -> Result<Subset> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.lower_pair_unchecked(a, b))
    }

    /// `U(a, b)`
    pub fn upper_pair(&self, a: Element, b: Element) -> Result<Subset> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.upper_pair_unchecked(a, b))
    }

    pub(crate) fn lower_pair_unchecked(&self, a: Element, b: Element) -> Subset {
        let mut bits = self.down[a.0].clone();
        bits.intersect_with(&self.down[b.0]);
        Subset::from_bits(self.id, bits)
    }

    pub(crate) fn upper_pair_unchecked(&self, a: Element, b: Element) -> Subset {
        let mut bits = self.up[a.0].clone();
        bits.intersect_with(&self.up[b.0]);
        Subset::from_bits(self.id, bits)
    }

    pub fn least(&self) -> Option<Element> {
        self.elements().find(|&e| self.up[e.0].is_full())
    }

    pub fn greatest(&self) -> Option<Element> {
        self.elements().find(|&e| self.down[e.0].is_full())
    }

    /// Members of `s` with no strictly greater member inside `s`.
    pub fn maximal_elements(&self, s: &Subset) -> Result<Subset> {
        self.owns(s)?;
        if s.is_empty() {
            return Err(Error::EmptyArgument);
        }
        let mut out = self.empty_subset();
        for x in s.iter() {
            if !s.iter().any(|y| self.lt(x, y)) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Members of `s` with no strictly smaller member inside `s`.
    pub fn minimal_elements(&self, s: &Subset) -> Result<Subset> {
        self.owns(s)?;
        if s.is_empty() {
            return Err(Error::EmptyArgument);
        }
        let mut out = self.empty_subset();
        for x in s.iter() {
            if !s.iter().any(|y| self.lt(y, x)) {
                out.insert(x);
            }
        }
        Ok(out)
    }

    /// Transfers a subset of a structurally identical poset (for example
    /// the dual) onto this one.
    pub fn adopt(&self, s: &Subset) -> Result<Subset> {
        if s.carrier_len() != self.len() {
            return Err(Error::OwnerMismatch);
        }
        Ok(Subset::from_bits(self.id, s.bits.clone()))
    }
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> =
            self.covers.iter().map(|&(a, b)| format!("{}<{}", self.label(a), self.label(b))).collect();
        f.debug_struct("Poset").field("labels", &self.labels).field("covers", &covers).finish()
    }
}

fn build_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::EmptyLabel);
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn transitive_reduction(up: &[FixedBitSet], down: &[FixedBitSet]) -> Vec<(Element, Element)> {
    let mut covers = Vec::new();
    for (i, row) in up.iter().enumerate() {
        for j in row.ones() {
            if i == j {
                continue;
            }
            // [i) ∩ (j] = {i, j} exactly when nothing sits strictly between
            if row.intersection_count(&down[j]) == 2 {
                covers.push((Element(i), Element(j)));
            }
        }
    }
    covers
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(p: &Poset, labels: &[&str]) -> Subset {
        p.subset_of_labels(labels).unwrap()
    }

    fn el(p: &Poset, l: &str) -> Element {
        p.element(l).unwrap()
    }

    #[test]
    fn fig1_is_valid() {
        let p = fixtures::fig1();
        assert_eq!(p.len(), 7);
        assert_eq!(p.covers().len(), 9);
    }

    #[test]
    fn singleton() {
        let p = Poset::from_covers::<_, &str>(&["x"], &[]).unwrap();
        let x = el(&p, "x");
        assert!(p.leq(x, x).unwrap());
        assert_eq!(p.least(), Some(x));
        assert_eq!(p.greatest(), Some(x));
    }

    #[test]
    fn two_cycle_rejected() {
        let err = Poset::from_covers(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
        let err = Poset::from_covers(&["p"], &[("p", "p")]).unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
    }

    #[test]
    fn bad_labels() {
        assert_eq!(Poset::from_covers::<_, &str>(&["x", "x"], &[]).unwrap_err(), Error::DuplicateLabel("x".into()));
        assert_eq!(Poset::from_covers(&["x"], &[("x", "y")]).unwrap_err(), Error::UnknownLabel("y".into()));
        assert_eq!(Poset::from_covers::<_, &str>(&[""], &[]).unwrap_err(), Error::EmptyLabel);
        assert!(matches!(
            Poset::from_covers_with_limit::<_, &str>(&["a", "b", "c"], &[], 2),
            Err(Error::CarrierTooLarge { size: 3, limit: 2 })
        ));
    }

    #[test]
    fn redundant_pairs_are_normalized() {
        let p = Poset::from_covers(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z"), ("x", "y")]).unwrap();
        assert_eq!(p.covers(), &[(Element(0), Element(1)), (Element(1), Element(2))]);
    }

    #[test]
    fn fig1_leq() {
        let p = fixtures::fig1();
        assert!(p.leq(el(&p, "a"), el(&p, "d")).unwrap());
        assert!(!p.leq(el(&p, "b"), el(&p, "c")).unwrap());
        for x in p.elements() {
            assert!(p.leq(x, x).unwrap());
        }
        assert_eq!(p.leq(Element(7), Element(0)), Err(Error::UnknownElement(7)));
    }

    #[test]
    fn fig1_bounds() {
        let p = fixtures::fig1();
        let (b, c, d, e) = (el(&p, "b"), el(&p, "c"), el(&p, "d"), el(&p, "e"));
        assert_eq!(p.lower_pair(b, c).unwrap(), set(&p, &["0"]));
        assert_eq!(p.lower_pair(d, e).unwrap(), set(&p, &["0", "a", "b", "c"]));
        assert_eq!(p.upper_bounds(&set(&p, &["b", "c"])).unwrap(), set(&p, &["d", "e", "1"]));
        for x in p.elements() {
            let single = p.subset([x]).unwrap();
            assert_eq!(p.lower_bounds(&single).unwrap(), p.down_set(x).unwrap());
        }
        assert_eq!(p.lower_bounds(&p.empty_subset()).unwrap_err(), Error::EmptyArgument);
    }

    #[test]
    fn principal_sets() {
        let p = fixtures::fig1();
        assert_eq!(p.down_set(el(&p, "b")).unwrap(), set(&p, &["0", "a", "b"]));
        let q = fixtures::fig2();
        assert_eq!(q.up_set(el(&q, "c")).unwrap(), set(&q, &["c", "d", "e", "f", "g", "1"]));
        let bottom = p.least().unwrap();
        assert_eq!(p.down_set(bottom).unwrap(), p.subset([bottom]).unwrap());
    }

    #[test]
    fn extremes() {
        let p = fixtures::fig1();
        assert_eq!(p.least(), Some(el(&p, "0")));
        assert_eq!(p.greatest(), Some(el(&p, "1")));
        let anti = Poset::from_covers::<_, &str>(&["u", "v"], &[]).unwrap();
        assert_eq!(anti.least(), None);
        assert_eq!(anti.greatest(), None);
        let chain = Poset::from_covers(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert_eq!(chain.least(), Some(el(&chain, "x")));
        assert_eq!(chain.greatest(), Some(el(&chain, "z")));
    }

    #[test]
    fn maximal() {
        let p = fixtures::fig1();
        let s = set(&p, &["0", "a", "b", "c"]);
        assert_eq!(p.maximal_elements(&s).unwrap(), set(&p, &["b", "c"]));
        assert_eq!(p.maximal_elements(&set(&p, &["d"])).unwrap(), set(&p, &["d"]));
        let db = p.down_set(el(&p, "b")).unwrap();
        assert_eq!(p.maximal_elements(&db).unwrap(), set(&p, &["b"]));
        assert_eq!(p.maximal_elements(&p.empty_subset()).unwrap_err(), Error::EmptyArgument);
    }

    #[test]
    fn owner_mismatch() {
        let p = fixtures::fig1();
        let q = fixtures::fig1();
        let s = q.full_subset();
        assert_eq!(p.lower_bounds(&s).unwrap_err(), Error::OwnerMismatch);
        assert_eq!(p.full_subset().union(&s).unwrap_err(), Error::OwnerMismatch);
        assert_eq!(p.adopt(&s).unwrap(), p.full_subset());
    }

    #[test]
    fn dual_swaps_directions() {
        let p = fixtures::fig1();
        let d = p.dual();
        for x in p.elements() {
            assert_eq!(d.adopt(&p.up_set(x).unwrap()).unwrap(), d.down_set(x).unwrap());
        }
        assert_eq!(d.least(), p.greatest());
        assert_eq!(d.dual(), p);
    }

    #[test]
    fn subset_ordering_is_by_size_then_members() {
        let p = fixtures::fig1();
        let mut v = vec![set(&p, &["a", "b"]), set(&p, &["1"]), set(&p, &["0", "c"]), set(&p, &["0"])];
        v.sort();
        assert_eq!(v, vec![set(&p, &["0"]), set(&p, &["1"]), set(&p, &["0", "c"]), set(&p, &["a", "b"])]);
    }
}
