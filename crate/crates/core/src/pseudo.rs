//! Pseudocomplementation on posets with a least element.
//!
//! The pseudocomplement `a*` is the greatest `x` with `L(a, x) = {0}`. A
//! [`StarTable`] exists only when every element has one. On top of it sit
//! the Boolean and dense elements, the preimage/image operators `A_*` and
//! `A^*`, *-ideals (ideals of the form `F_*` for a filter `F`) and the
//! *-condition.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ideal;
use crate::poset::{Element, Poset, Subset};

/// Why a poset has no star table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarFailure {
    NoLeastElement,
    /// First element (by index) without a pseudocomplement.
    Missing(Element),
}

impl StarFailure {
    pub fn describe(&self, p: &Poset) -> String {
        match self {
            StarFailure::NoLeastElement => "no least element".to_owned(),
            StarFailure::Missing(e) => format!("element `{}` has no pseudocomplement", p.label(*e)),
        }
    }
}

/// `a*`, or `None` when the candidates `{x | L(a,x) = {0}}` have no
/// greatest member.
pub fn pseudocomplement(p: &Poset, a: Element) -> Result<Option<Element>> {
    p.leq(a, a)?;
    p.least().ok_or(Error::NoLeastElement)?;
    Ok(pseudocomplement_unchecked(p, a))
}

fn pseudocomplement_unchecked(p: &Poset, a: Element) -> Option<Element> {
    let below_a = p.down_bits(a);
    // the least element lies in every down-set, so L(a,x) = {0} iff |L(a,x)| = 1
    let mut candidates = FixedBitSet::with_capacity(p.len());
    for x in p.elements() {
        if below_a.intersection_count(p.down_bits(x)) == 1 {
            candidates.insert(x.index());
        }
    }
    candidates.ones().map(Element::new).find(|&g| candidates.is_subset(p.down_bits(g)))
}

#[derive(Clone, PartialEq, Eq)]
pub struct StarTable {
    owner: Subset,
    star: Vec<Element>,
    bottom: Element,
    top: Element,
}

pub fn star_table(p: &Poset) -> Result<StarTable, StarFailure> {
    let bottom = p.least().ok_or(StarFailure::NoLeastElement)?;
    let star = p
        .elements()
        .map(|a| pseudocomplement_unchecked(p, a).ok_or(StarFailure::Missing(a)))
        .collect::<Result<Vec<_>, _>>()?;
    let top = star[bottom.index()];
    Ok(StarTable { owner: p.empty_subset(), star, bottom, top })
}

pub fn is_pseudocomplemented(p: &Poset) -> bool {
    star_table(p).is_ok()
}

impl StarTable {
    pub fn star(&self, a: Element) -> Element {
        self.star[a.index()]
    }

    /// `a**`
    pub fn double_star(&self, a: Element) -> Element {
        self.star(self.star(a))
    }

    pub fn bottom(&self) -> Element {
        self.bottom
    }

    /// `0*`, the greatest element.
    pub fn top(&self) -> Element {
        self.top
    }

    pub fn len(&self) -> usize {
        self.star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.star.is_empty()
    }

    /// `(x, x*)` in element order.
    pub fn entries(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.star.iter().enumerate().map(|(i, &s)| (Element::new(i), s))
    }

    fn empty(&self) -> Subset {
        self.owner.clone()
    }

    fn check(&self, s: &Subset) -> Result<()> {
        if s.same_owner(&self.owner) {
            Ok(())
        } else {
            Err(Error::OwnerMismatch)
        }
    }

    pub(crate) fn check_poset(&self, p: &Poset) -> Result<()> {
        p.owns(&self.owner)
    }

    /// `B(P) = {a | a** = a}`
    pub fn boolean_elements(&self) -> Subset {
        let mut s = self.empty();
        for (a, _) in self.entries() {
            if self.double_star(a) == a {
                s.insert(a);
            }
        }
        s
    }

    /// `D(P) = {a | a* = 0}`
    pub fn dense_elements(&self) -> Subset {
        let mut s = self.empty();
        for (a, sa) in self.entries() {
            if sa == self.bottom {
                s.insert(a);
            }
        }
        s
    }

    /// `A_* = {x | x* ∈ A}`
    pub fn lower_star(&self, a: &Subset) -> Result<Subset> {
        self.check(a)?;
        Ok(self.lower_star_unchecked(a))
    }

    pub(crate) fn lower_star_unchecked(&self, a: &Subset) -> Subset {
        let mut s = self.empty();
        for (x, sx) in self.entries() {
            if a.contains(sx) {
                s.insert(x);
            }
        }
        s
    }

    /// `A^* = {x* | x ∈ A}`
    pub fn upper_star(&self, a: &Subset) -> Result<Subset> {
        self.check(a)?;
        Ok(self.upper_star_unchecked(a))
    }

    pub(crate) fn upper_star_unchecked(&self, a: &Subset) -> Subset {
        let mut s = self.empty();
        for x in a.iter() {
            s.insert(self.star(x));
        }
        s
    }

    /// For every `x`, exactly one of `x` and `x*` lies in `s`.
    pub fn satisfies_star_condition(&self, s: &Subset) -> Result<bool> {
        self.check(s)?;
        Ok(self.star_condition_unchecked(s))
    }

    pub(crate) fn star_condition_unchecked(&self, s: &Subset) -> bool {
        self.entries().all(|(x, sx)| {
            // x* = x puts the same element on both sides; never exactly one
            x != sx && s.contains(x) != s.contains(sx)
        })
    }

    /// First `x` at which the *-condition fails for `s`.
    pub fn star_condition_violation(&self, s: &Subset) -> Option<Element> {
        self.entries().find(|&(x, sx)| x == sx || s.contains(x) == s.contains(sx)).map(|(x, _)| x)
    }
}

impl fmt::Debug for StarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries().map(|(a, s)| (a.index(), s.index()))).finish()
    }
}

/// Some filter `F` with `F_* = i`, the first one in canonical filter order.
/// `Ok(None)` when `i` is an ideal but not a *-ideal.
pub fn is_star_ideal(p: &Poset, t: &StarTable, i: &Subset) -> Result<Option<Subset>> {
    t.check_poset(p)?;
    if !ideal::is_ideal(p, i)? {
        return Err(Error::NotAnIdeal);
    }
    Ok(star_ideal_witness(p, t, i))
}

pub(crate) fn star_ideal_witness(p: &Poset, t: &StarTable, i: &Subset) -> Option<Subset> {
    ideal::enumerate_filters(p).into_iter().find(|f| t.lower_star_unchecked(f) == *i)
}

/// The three conditions of the *-ideal characterization, evaluated
/// independently of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarIdealConditions {
    /// `I = F_*` for some filter `F`.
    pub star_ideal: bool,
    /// `I** ⊆ I`.
    pub double_star_closed: bool,
    /// `x ∈ P, y ∈ I, x* ≤ y` imply `y* ≤ x`.
    pub star_exchange: bool,
}

pub fn star_ideal_conditions(p: &Poset, t: &StarTable, i: &Subset) -> Result<StarIdealConditions> {
    let star_ideal = is_star_ideal(p, t, i)?.is_some();
    let double = t.upper_star_unchecked(&t.upper_star_unchecked(i));
    let double_star_closed = double.is_subset_unchecked(i);
    let star_exchange = p.elements().all(|x| i.iter().all(|y| !p.le(t.star(x), y) || p.le(t.star(y), x)));
    Ok(StarIdealConditions { star_ideal, double_star_closed, star_exchange })
}

/// A *-ideal containing `i` and missing `f`, namely `f_*`.
pub fn separate_star(p: &Poset, t: &StarTable, i: &Subset, f: &Subset) -> Result<Subset> {
    t.check_poset(p)?;
    if !ideal::is_ideal(p, i)? {
        return Err(Error::NotAnIdeal);
    }
    if !ideal::is_filter(p, f)? {
        return Err(Error::NotAFilter);
    }
    if !t.satisfies_star_condition(f)? {
        return Err(Error::StarConditionFails);
    }
    if !i.is_disjoint(f)? {
        return Err(Error::NotDisjoint);
    }
    Ok(t.lower_star_unchecked(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn el(p: &Poset, l: &str) -> Element {
        p.element(l).unwrap()
    }

    fn set(p: &Poset, labels: &[&str]) -> Subset {
        p.subset_of_labels(labels).unwrap()
    }

    fn down(p: &Poset, l: &str) -> Subset {
        p.down_set(el(p, l)).unwrap()
    }

    fn up(p: &Poset, l: &str) -> Subset {
        p.up_set(el(p, l)).unwrap()
    }

    fn star_labels(p: &Poset, t: &StarTable) -> Vec<String> {
        t.entries().map(|(_, s)| p.label(s).to_owned()).collect()
    }

    #[test]
    fn fig1_table() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        assert_eq!(star_labels(&p, &t), ["1", "c", "c", "b", "0", "0", "0"]);
        assert_eq!(pseudocomplement(&p, el(&p, "a")).unwrap(), Some(el(&p, "c")));
        assert_eq!(t.top(), p.greatest().unwrap());
        assert_eq!(t.boolean_elements(), set(&p, &["0", "b", "c", "1"]));
        assert_eq!(t.dense_elements(), set(&p, &["d", "e", "1"]));
    }

    #[test]
    fn fig2_table() {
        let p = fixtures::fig2();
        let t = star_table(&p).unwrap();
        assert_eq!(star_labels(&p, &t), ["1", "b", "a", "0", "0", "0", "0", "0", "0"]);
        assert_eq!(t.boolean_elements(), set(&p, &["0", "a", "b", "1"]));
        assert_eq!(t.dense_elements(), up(&p, "c"));
    }

    #[test]
    fn boolean_square() {
        let p = Poset::from_covers(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]).unwrap();
        assert_eq!(pseudocomplement(&p, el(&p, "x")).unwrap(), Some(el(&p, "y")));
        let t = star_table(&p).unwrap();
        assert_eq!(t.boolean_elements(), p.full_subset());
        assert_eq!(t.boolean_elements().intersection(&t.dense_elements()).unwrap(), set(&p, &["1"]));
    }

    #[test]
    fn missing_pseudocomplements() {
        let anti = Poset::from_covers::<_, &str>(&["u", "v"], &[]).unwrap();
        assert_eq!(star_table(&anti).unwrap_err(), StarFailure::NoLeastElement);
        assert_eq!(pseudocomplement(&anti, el(&anti, "u")).unwrap_err(), Error::NoLeastElement);
        assert!(!is_pseudocomplemented(&anti));
        // three atoms over 0 and no top
        let p = Poset::from_covers(&["0", "x", "y", "z"], &[("0", "x"), ("0", "y"), ("0", "z")]).unwrap();
        // x*: candidates {0, y, z}, no greatest
        assert_eq!(pseudocomplement(&p, el(&p, "x")).unwrap(), None);
        assert_eq!(star_table(&p).unwrap_err(), StarFailure::Missing(el(&p, "0")));
    }

    #[test]
    fn lower_and_upper_star() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        assert_eq!(t.lower_star(&up(&p, "c")).unwrap(), down(&p, "b"));
        assert_eq!(t.lower_star(&p.full_subset()).unwrap(), p.full_subset());
        assert_eq!(t.lower_star(&up(&p, "1")).unwrap(), set(&p, &["0"]));
        assert_eq!(t.upper_star(&set(&p, &["d", "e"])).unwrap(), set(&p, &["0"]));
        assert_eq!(t.upper_star(&p.empty_subset()).unwrap(), p.empty_subset());
        assert_eq!(t.upper_star(&p.full_subset()).unwrap(), t.boolean_elements());
        let other = fixtures::fig1();
        assert_eq!(t.lower_star(&other.full_subset()).unwrap_err(), Error::OwnerMismatch);
    }

    #[test]
    fn star_ideals_fig1() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        assert_eq!(is_star_ideal(&p, &t, &down(&p, "b")).unwrap(), Some(up(&p, "c")));
        assert_eq!(is_star_ideal(&p, &t, &down(&p, "a")).unwrap(), None);
        assert_eq!(is_star_ideal(&p, &t, &set(&p, &["0", "a", "b", "c"])).unwrap_err(), Error::NotAnIdeal);
        let q = fixtures::fig2();
        let tq = star_table(&q).unwrap();
        assert!(is_star_ideal(&q, &tq, &down(&q, "a")).unwrap().is_some());
    }

    #[test]
    fn conditions() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        let c = star_ideal_conditions(&p, &t, &down(&p, "b")).unwrap();
        assert!(c.star_ideal && c.double_star_closed);
        // P = P_* is a *-ideal, yet a* = c ≤ c while c* = b is not below a
        let c = star_ideal_conditions(&p, &t, &p.full_subset()).unwrap();
        assert_eq!(c, StarIdealConditions { star_ideal: true, double_star_closed: true, star_exchange: false });
        let c = star_ideal_conditions(&p, &t, &down(&p, "d")).unwrap();
        assert!(!c.double_star_closed && !c.star_ideal);
    }

    #[test]
    fn star_condition() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        assert!(t.satisfies_star_condition(&up(&p, "c")).unwrap());
        assert!(!t.satisfies_star_condition(&up(&p, "1")).unwrap());
        assert_eq!(t.star_condition_violation(&up(&p, "1")), Some(el(&p, "a")));
        assert!(!t.satisfies_star_condition(&p.full_subset()).unwrap());
        // singleton: 0* = 0, so nothing satisfies it
        let s = Poset::from_covers::<_, &str>(&["x"], &[]).unwrap();
        let ts = star_table(&s).unwrap();
        assert!(!ts.satisfies_star_condition(&s.full_subset()).unwrap());
        assert!(!ts.satisfies_star_condition(&s.empty_subset()).unwrap());
    }

    #[test]
    fn separation_by_star_ideals() {
        let p = fixtures::fig1();
        let t = star_table(&p).unwrap();
        assert_eq!(separate_star(&p, &t, &down(&p, "a"), &up(&p, "c")).unwrap(), down(&p, "b"));
        assert_eq!(separate_star(&p, &t, &down(&p, "0"), &up(&p, "0")).unwrap_err(), Error::StarConditionFails);
        assert_eq!(separate_star(&p, &t, &down(&p, "c"), &up(&p, "c")).unwrap_err(), Error::NotDisjoint);
        assert_eq!(separate_star(&p, &t, &down(&p, "0"), &set(&p, &["d", "e", "1"])).unwrap_err(), Error::NotAFilter);
        let q = fixtures::fig2();
        let tq = star_table(&q).unwrap();
        let j = separate_star(&q, &tq, &down(&q, "0"), &up(&q, "a")).unwrap();
        assert_eq!(j, down(&q, "b"));
        assert!(j.is_disjoint(&up(&q, "a")).unwrap());
    }

    #[test]
    fn table_must_match_poset() {
        let p = fixtures::fig1();
        let t = star_table(&fixtures::fig1()).unwrap();
        assert_eq!(is_star_ideal(&p, &t, &p.full_subset()).unwrap_err(), Error::OwnerMismatch);
    }
}
