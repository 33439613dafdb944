//! Model-level verification of the results about ideals, filters and
//! pseudocomplementation.
//!
//! Each registered [`TheoremId`] has a checker that instantiates the
//! statement's quantifiers over one concrete poset: every element, every
//! ideal and filter (all principal, since carriers are finite), and, where
//! the statement ranges over arbitrary subsets, every subset up to
//! [`CheckConfig::subset_cap`] elements or a seeded sample beyond that.
//!
//! A failing check carries a [`Counterexample`] with the poset rendered as
//! `.poset` text and the offending sets and elements by label, so
//! [`replay`] can rebuild it and fail the same way.

use std::cell::OnceCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsl;
use crate::error::{Error, Result};
use crate::ideal;
use crate::poset::{Element, Poset, Subset};
use crate::pseudo::{self, StarTable};
use crate::randgen;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Directedness of `I` versus its complement, and the two primality
    /// reformulations.
    Lem5,
    /// Ideal `I`: prime ⇔ `P∖I` prime filter ⇔ `P∖I` filter.
    Cor2,
    /// Filter `F`: prime ⇔ `P∖F` prime ideal ⇔ `P∖F` ideal.
    Cor1,
    /// Separation of an ideal from a disjoint prime filter by a prime ideal.
    Cor3,
    /// Every ideal and every filter of a finite poset is principal.
    Lem1Finite,
    /// Standard identities of pseudocomplementation.
    Facts,
    /// Properties of the `A_*` operator.
    Lem4,
    /// *-ideal characterization: (i) ⇒ (ii) and (ii) ∧ (iii) ⇒ (i).
    StarChar,
    /// `F_*` is a *-ideal; `(a*] = [a)_*`.
    Lem3,
    /// Proper *-ideals contain no dense element.
    Lem2,
    /// Boolean elements versus principal *-ideals; `D(P) = {1}`.
    Th1,
    /// Dense elements and the *-condition for ideals and filters.
    Th3,
    /// Prime ideal: *-condition ⇔ no dense element.
    Cor6,
    /// *-condition versus ultrafilters.
    Th2,
    /// Prime filters containing `D(P)` are ultrafilters.
    CorUltra,
    /// Proper filters with the *-condition.
    Lem6,
    /// Proper filter: *-condition ⇒ contains `D(P)`; prime filter:
    /// *-condition ⇔ contains `D(P)`.
    CorStarDense,
    /// Separation by *-ideals.
    Cor4,
    /// `I` down-directed ⇔ `P∖I` up-directed, read with the usual meaning of
    /// directedness. This reading is false in general (the `fig1`
    /// fixture with `I = {1}`), so it is not part of [`REGISTRY`]; it is kept
    /// as a known-failing probe.
    Lem5Directed,
    /// Proper filter: contains `D(P)` ⇒ *-condition. False in general: in
    /// the `fig1` fixture `[b)` contains `D(P)` but neither `a` nor
    /// `a* = c`. Kept outside [`REGISTRY`] as a known-failing probe.
    DenseProperFilter,
}

/// Every registered theorem, in report order.
pub const REGISTRY: [TheoremId; 18] = [
    TheoremId::Lem5,
    TheoremId::Cor2,
    TheoremId::Cor1,
    TheoremId::Cor3,
    TheoremId::Lem1Finite,
    TheoremId::Facts,
    TheoremId::Lem4,
    TheoremId::StarChar,
    TheoremId::Lem3,
    TheoremId::Lem2,
    TheoremId::Th1,
    TheoremId::Th3,
    TheoremId::Cor6,
    TheoremId::Th2,
    TheoremId::CorUltra,
    TheoremId::Lem6,
    TheoremId::CorStarDense,
    TheoremId::Cor4,
];

const ALL_IDS: [TheoremId; 20] = [
    TheoremId::Lem5,
    TheoremId::Cor2,
    TheoremId::Cor1,
    TheoremId::Cor3,
    TheoremId::Lem1Finite,
    TheoremId::Facts,
    TheoremId::Lem4,
    TheoremId::StarChar,
    TheoremId::Lem3,
    TheoremId::Lem2,
    TheoremId::Th1,
    TheoremId::Th3,
    TheoremId::Cor6,
    TheoremId::Th2,
    TheoremId::CorUltra,
    TheoremId::Lem6,
    TheoremId::CorStarDense,
    TheoremId::Cor4,
    TheoremId::Lem5Directed,
    TheoremId::DenseProperFilter,
];

impl TheoremId {
    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Lem5 => "lem5",
            TheoremId::Cor2 => "cor2",
            TheoremId::Cor1 => "cor1",
            TheoremId::Cor3 => "cor3",
            TheoremId::Lem1Finite => "lem1-finite",
            TheoremId::Facts => "facts",
            TheoremId::Lem4 => "lem4",
            TheoremId::StarChar => "star-char",
            TheoremId::Lem3 => "lem3",
            TheoremId::Lem2 => "lem2",
            TheoremId::Th1 => "th1",
            TheoremId::Th3 => "th3",
            TheoremId::Cor6 => "cor6",
            TheoremId::Th2 => "th2",
            TheoremId::CorUltra => "cor-ultra",
            TheoremId::Lem6 => "lem6",
            TheoremId::CorStarDense => "cor-star-dense",
            TheoremId::Cor4 => "cor4",
            TheoremId::Lem5Directed => "lem5-directed",
            TheoremId::DenseProperFilter => "dense-proper-filter",
        }
    }

    pub fn from_name(name: &str) -> Result<TheoremId> {
        ALL_IDS.into_iter().find(|id| id.name() == name).ok_or_else(|| Error::UnknownTheorem(name.to_owned()))
    }

    /// Needs a total star table to be instantiated.
    pub fn needs_star(self) -> bool {
        !matches!(
            self,
            TheoremId::Lem5
                | TheoremId::Cor2
                | TheoremId::Cor1
                | TheoremId::Cor3
                | TheoremId::Lem1Finite
                | TheoremId::Lem5Directed
        )
    }

    /// Quantifies over arbitrary subsets of the carrier.
    pub fn quantifies_subsets(self) -> bool {
        matches!(self, TheoremId::Lem5 | TheoremId::Lem1Finite | TheoremId::Lem4 | TheoremId::Lem5Directed)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSet {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedElement {
    pub name: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub theorem_id: String,
    /// Which part of the statement failed.
    pub clause: String,
    /// `.poset` text of the poset the failure occurred on.
    pub poset: String,
    pub sets: Vec<NamedSet>,
    pub elements: Vec<NamedElement>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.theorem_id, self.clause)?;
        for s in &self.sets {
            writeln!(f, "  {} = {{{}}}", s.name, s.members.join(","))?;
        }
        for e in &self.elements {
            writeln!(f, "  {} = {}", e.name, e.label)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub checked_instances: u64,
    /// Why the check was not applicable, or how subsets were instantiated.
    pub detail: Option<String>,
}

/// Name used for the poset inside counterexample text.
pub const COUNTEREXAMPLE_POSET: &str = "counterexample";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckConfig {
    /// Largest carrier on which subset quantifiers run over all `2^n` subsets.
    pub subset_cap: usize,
    /// Largest carrier on which subset quantifiers run at all (sampled).
    pub sampled_cap: usize,
    /// Subsets drawn per sampled quantifier.
    pub samples: usize,
    /// Subsets in the pool that unions and intersections of families are
    /// drawn from.
    pub family_pool: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { subset_cap: 10, sampled_cap: 64, samples: 10_000, family_pool: 16, seed: 0x5eed }
    }
}

pub fn check(p: &Poset, id: TheoremId) -> Result<TheoremReport> {
    check_with(p, id, &CheckConfig::default())
}

pub fn check_named(p: &Poset, name: &str) -> Result<TheoremReport> {
    check(p, TheoremId::from_name(name)?)
}

pub fn check_with(p: &Poset, id: TheoremId, cfg: &CheckConfig) -> Result<TheoremReport> {
    Env::new(p, cfg).run(id)
}

/// Runs all of `ids` on `p`, in the given order, without stopping early.
/// A subset quantifier on a carrier beyond `sampled_cap` is reported as
/// not applicable.
pub fn check_many(p: &Poset, ids: &[TheoremId], cfg: &CheckConfig) -> Vec<TheoremReport> {
    let env = Env::new(p, cfg);
    ids.iter()
        .map(|&id| {
            env.run(id).unwrap_or_else(|e| TheoremReport {
                theorem_id: id.name().to_owned(),
                status: Status::NotApplicable,
                counterexample: None,
                checked_instances: 0,
                detail: Some(e.to_string()),
            })
        })
        .collect()
}

pub fn check_all(p: &Poset) -> Vec<TheoremReport> {
    check_many(p, &REGISTRY, &CheckConfig::default())
}

/// Rebuilds the counterexample's poset and runs its theorem again.
pub fn replay(cex: &Counterexample) -> Result<TheoremReport> {
    replay_with(cex, &CheckConfig::default())
}

pub fn replay_with(cex: &Counterexample, cfg: &CheckConfig) -> Result<TheoremReport> {
    let id = TheoremId::from_name(&cex.theorem_id)?;
    let doc =
        dsl::parse(&cex.poset).map_err(|e| Error::InvalidConfig(format!("counterexample text does not parse: {e}")))?;
    let entry = doc.entries.first().ok_or_else(|| Error::InvalidConfig("counterexample text is empty".into()))?;
    check_with(&entry.to_poset()?, id, cfg)
}

/// Condition (iii) of the ultrafilter theorem for a proper filter `f`:
/// for `a ∉ f`, `f1, f2 ∈ f` and `a1, a2` with `L(a, fi) ⊆ (ai]` there are
/// `f3 ∈ f` and `a3 ∈ L(a1, a2)` with `L(a, f3) ⊆ (a3]`.
pub fn check_th2_condition_iii(p: &Poset, f: &Subset) -> Result<bool> {
    if !ideal::is_filter(p, f)? {
        return Err(Error::NotAFilter);
    }
    if f.is_full() {
        return Err(Error::NotProper);
    }
    Ok(th2_condition_iii(p, f))
}

fn th2_condition_iii(p: &Poset, f: &Subset) -> bool {
    // For fixed a, G = {x | L(a, f) ⊆ (x] for some f ∈ F}. The pairs (a1, a2)
    // range over G × G, so the condition says L(a1, a2) ∩ G ≠ ∅ on G.
    p.elements().filter(|&a| !f.contains(a)).all(|a| {
        let mut g = p.empty_subset();
        for fe in f.iter() {
            let lower = p.lower_pair_unchecked(a, fe);
            let above =
                if lower.is_empty() { p.full_subset() } else { p.upper_bounds(&lower).expect("non-empty and owned") };
            g = g.union_unchecked(&above);
        }
        let members: Vec<Element> = g.iter().collect();
        members.iter().all(|&a1| members.iter().all(|&a2| !p.lower_pair_unchecked(a1, a2).bits().is_disjoint(g.bits())))
    })
}

struct StarData {
    table: StarTable,
    boolean: Subset,
    dense: Subset,
    /// Per entry of `Env::ideals`.
    star_ideal: Vec<bool>,
}

struct Env<'a> {
    p: &'a Poset,
    cfg: &'a CheckConfig,
    ideals: Vec<Subset>,
    filters: Vec<Subset>,
    prime_ideal: Vec<bool>,
    prime_filter: Vec<bool>,
    ultra: Vec<bool>,
    star: std::result::Result<StarData, String>,
    subsets: OnceCell<std::result::Result<(Vec<Subset>, bool), Error>>,
}

type Outcome = std::result::Result<(), Counterexample>;

struct Ctx<'a> {
    env: &'a Env<'a>,
    id: TheoremId,
    checked: u64,
}

impl Ctx<'_> {
    fn claim(&mut self, ok: bool, clause: &str, sets: &[(&str, &Subset)], elements: &[(&str, Element)]) -> Outcome {
        self.checked += 1;
        if ok {
            return Ok(());
        }
        let p = self.env.p;
        Err(Counterexample {
            theorem_id: self.id.name().to_owned(),
            clause: clause.to_owned(),
            poset: dsl::serialize_poset(COUNTEREXAMPLE_POSET, p),
            sets: sets
                .iter()
                .map(|(name, s)| NamedSet { name: (*name).to_owned(), members: p.subset_labels(s) })
                .collect(),
            elements: elements
                .iter()
                .map(|&(name, e)| NamedElement { name: name.to_owned(), label: p.label(e).to_owned() })
                .collect(),
        })
    }
}

impl<'a> Env<'a> {
    fn new(p: &'a Poset, cfg: &'a CheckConfig) -> Env<'a> {
        let ideals = ideal::enumerate_ideals(p);
        let filters = ideal::enumerate_filters(p);
        let prime_ideal = ideals.iter().map(|s| ideal::is_prime_ideal(p, s).unwrap_or(false)).collect();
        let prime_filter = filters.iter().map(|s| ideal::is_prime_filter(p, s).unwrap_or(false)).collect();
        let ultras = ideal::ultrafilters(p);
        let ultra = filters.iter().map(|f| ultras.contains(f)).collect();
        let star = pseudo::star_table(p)
            .map(|table| {
                let star_ideal = ideals.iter().map(|i| pseudo::star_ideal_witness(p, &table, i).is_some()).collect();
                StarData { boolean: table.boolean_elements(), dense: table.dense_elements(), table, star_ideal }
            })
            .map_err(|f| f.describe(p));
        Env { p, cfg, ideals, filters, prime_ideal, prime_filter, ultra, star, subsets: OnceCell::new() }
    }

    /// Subsets for subset quantifiers, and whether they are exhaustive.
    fn subsets(&self) -> Result<(&[Subset], bool)> {
        let r = self.subsets.get_or_init(|| {
            let n = self.p.len();
            if n <= self.cfg.subset_cap && n < 64 {
                Ok(((0..1u64 << n).map(|m| self.p.subset_from_mask(m)).collect(), true))
            } else if n <= self.cfg.sampled_cap {
                Ok((random_subsets(self.p, self.cfg.samples, self.cfg.seed), false))
            } else {
                Err(Error::CarrierTooLargeForSubsetQuantifier { size: n, limit: self.cfg.sampled_cap })
            }
        });
        match r {
            Ok((v, exhaustive)) => Ok((v.as_slice(), *exhaustive)),
            Err(e) => Err(e.clone()),
        }
    }

    fn run(&self, id: TheoremId) -> Result<TheoremReport> {
        let mut detail = None;
        if id.needs_star() {
            if let Err(reason) = &self.star {
                return Ok(TheoremReport {
                    theorem_id: id.name().to_owned(),
                    status: Status::NotApplicable,
                    counterexample: None,
                    checked_instances: 0,
                    detail: Some(format!("not pseudocomplemented: {reason}")),
                });
            }
        }
        if id.quantifies_subsets() {
            let (subsets, exhaustive) = self.subsets()?;
            detail = Some(if exhaustive {
                format!("all {} subsets", subsets.len())
            } else {
                format!("{} sampled subsets (seed {})", subsets.len(), self.cfg.seed)
            });
        }
        let mut ctx = Ctx { env: self, id, checked: 0 };
        let outcome = match id {
            TheoremId::Lem5 => self.lem5(&mut ctx),
            TheoremId::Lem5Directed => self.lem5_directed(&mut ctx),
            TheoremId::Cor2 => self.cor2(&mut ctx),
            TheoremId::Cor1 => self.cor1(&mut ctx),
            TheoremId::Cor3 => self.cor3(&mut ctx),
            TheoremId::Lem1Finite => self.lem1_finite(&mut ctx),
            TheoremId::Facts => self.facts(&mut ctx),
            TheoremId::Lem4 => self.lem4(&mut ctx),
            TheoremId::StarChar => self.star_char(&mut ctx),
            TheoremId::Lem3 => self.lem3(&mut ctx),
            TheoremId::Lem2 => self.lem2(&mut ctx),
            TheoremId::Th1 => self.th1(&mut ctx),
            TheoremId::Th3 => self.th3(&mut ctx),
            TheoremId::Cor6 => self.cor6(&mut ctx),
            TheoremId::Th2 => self.th2(&mut ctx),
            TheoremId::CorUltra => self.cor_ultra(&mut ctx),
            TheoremId::Lem6 => self.lem6(&mut ctx),
            TheoremId::CorStarDense => self.cor_star_dense(&mut ctx),
            TheoremId::Cor4 => self.cor4(&mut ctx),
            TheoremId::DenseProperFilter => self.dense_proper_filter(&mut ctx),
        };
        let (status, counterexample) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(cex) => (Status::Fail, Some(cex)),
        };
        Ok(TheoremReport {
            theorem_id: id.name().to_owned(),
            status,
            counterexample,
            checked_instances: ctx.checked,
            detail,
        })
    }

    fn star(&self) -> &StarData {
        self.star.as_ref().expect("checked by run")
    }

    fn is_ideal(&self, s: &Subset) -> bool {
        ideal::is_ideal(self.p, s).expect("owned")
    }

    fn is_filter(&self, s: &Subset) -> bool {
        ideal::is_filter(self.p, s).expect("owned")
    }

    fn is_prime_ideal(&self, s: &Subset) -> bool {
        ideal::is_prime_ideal(self.p, s).expect("owned")
    }

    fn is_prime_filter(&self, s: &Subset) -> bool {
        ideal::is_prime_filter(self.p, s).expect("owned")
    }

    fn proper_filters(&self) -> impl Iterator<Item = (usize, &Subset)> {
        self.filters.iter().enumerate().filter(|(_, f)| !f.is_full())
    }

    fn lem5(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let (subsets, _) = self.subsets().expect("checked by run");
        for i in subsets {
            let rest = i.complement_unchecked();
            // (i) with directedness read as closure: down-set ⇔ complement is an up-set
            let down = ideal::is_down_set(p, i).expect("owned");
            let up = ideal::is_up_set(p, &rest).expect("owned");
            ctx.claim(down == up, "(i) I is a down-set iff P∖I is an up-set", &[("I", i)], &[])?;

            // (ii)
            let a = ideal::is_up_directed(p, i).expect("owned");
            let b = p.elements().all(|x| {
                p.elements().all(|y| {
                    !p.upper_pair_unchecked(x, y).is_subset_unchecked(&rest) || rest.contains(x) || rest.contains(y)
                })
            });
            ctx.claim(a == b, "(ii) U(a,b)∩I≠∅ on I iff U(a,b)⊆P∖I forces a or b into P∖I", &[("I", i)], &[])?;

            // (iii)
            let c = p.elements().all(|x| {
                p.elements()
                    .all(|y| !p.lower_pair_unchecked(x, y).is_subset_unchecked(i) || i.contains(x) || i.contains(y))
            });
            let d = ideal::is_down_directed(p, &rest).expect("owned");
            ctx.claim(c == d, "(iii) L(a,b)⊆I forces a or b into I iff L(a,b)∩(P∖I)≠∅ on P∖I", &[("I", i)], &[])?;
        }
        Ok(())
    }

    fn lem5_directed(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let (subsets, _) = self.subsets().expect("checked by run");
        for i in subsets {
            let rest = i.complement_unchecked();
            let left = ideal::is_down_directed(p, i).expect("owned");
            let right = ideal::is_up_directed(p, &rest).expect("owned");
            ctx.claim(left == right, "I is down-directed iff P∖I is up-directed", &[("I", i), ("P∖I", &rest)], &[])?;
        }
        Ok(())
    }

    fn cor2(&self, ctx: &mut Ctx) -> Outcome {
        for (k, i) in self.ideals.iter().enumerate() {
            let rest = i.complement_unchecked();
            let prime = self.prime_ideal[k];
            let rest_prime = self.is_prime_filter(&rest);
            let rest_filter = self.is_filter(&rest);
            ctx.claim(
                prime == rest_prime && rest_prime == rest_filter,
                "I prime iff P∖I prime filter iff P∖I filter",
                &[("I", i)],
                &[],
            )?;
        }
        // I ↦ P∖I is a bijection from prime ideals onto prime filters
        let primes: Vec<&Subset> =
            self.ideals.iter().zip(&self.prime_ideal).filter(|(_, &b)| b).map(|(s, _)| s).collect();
        let prime_filters: Vec<&Subset> =
            self.filters.iter().zip(&self.prime_filter).filter(|(_, &b)| b).map(|(s, _)| s).collect();
        for i in &primes {
            let image = i.complement_unchecked();
            ctx.claim(
                prime_filters.contains(&&image) && image.complement_unchecked() == **i,
                "complement maps prime ideals into prime filters",
                &[("I", i)],
                &[],
            )?;
        }
        let dummy = self.p.empty_subset();
        ctx.claim(
            primes.len() == prime_filters.len(),
            "as many prime ideals as prime filters",
            &[("none", &dummy)],
            &[],
        )
    }

    fn cor1(&self, ctx: &mut Ctx) -> Outcome {
        for (k, f) in self.filters.iter().enumerate() {
            let rest = f.complement_unchecked();
            let prime = self.prime_filter[k];
            let rest_prime = self.is_prime_ideal(&rest);
            let rest_ideal = self.is_ideal(&rest);
            ctx.claim(
                prime == rest_prime && rest_prime == rest_ideal,
                "F prime iff P∖F prime ideal iff P∖F ideal",
                &[("F", f)],
                &[],
            )?;
        }
        Ok(())
    }

    fn cor3(&self, ctx: &mut Ctx) -> Outcome {
        for i in &self.ideals {
            for (f, _) in self.filters.iter().zip(&self.prime_filter).filter(|(_, &b)| b) {
                if !i.is_disjoint(f).expect("owned") {
                    continue;
                }
                let ok = match ideal::separate(self.p, i, f) {
                    Ok(j) => self.is_prime_ideal(&j) && i.is_subset_unchecked(&j) && j.bits().is_disjoint(f.bits()),
                    Err(_) => false,
                };
                ctx.claim(ok, "J is a prime ideal with I ⊆ J and J ∩ F = ∅", &[("I", i), ("F", f)], &[])?;
            }
        }
        Ok(())
    }

    fn lem1_finite(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let (subsets, exhaustive) = self.subsets().expect("checked by run");
        let mut found_ideals = Vec::new();
        let mut found_filters = Vec::new();
        for s in subsets {
            if self.is_ideal(s) {
                let top = p.maximal_elements(s).expect("ideals are non-empty");
                let principal = top.len() == 1 && top.iter().all(|m| p.down_unchecked(m) == *s);
                ctx.claim(principal, "every ideal is principal", &[("I", s)], &[])?;
                found_ideals.push(s.clone());
            }
            if self.is_filter(s) {
                let bottom = p.minimal_elements(s).expect("filters are non-empty");
                let principal = bottom.len() == 1 && bottom.iter().all(|m| p.up_unchecked(m) == *s);
                ctx.claim(principal, "every filter is principal", &[("F", s)], &[])?;
                found_filters.push(s.clone());
            }
        }
        if exhaustive {
            found_ideals.sort();
            found_filters.sort();
            let empty = p.empty_subset();
            ctx.claim(
                found_ideals == self.ideals,
                "ideals found by subset search equal the principal ideals",
                &[("none", &empty)],
                &[],
            )?;
            ctx.claim(
                found_filters == self.filters,
                "filters found by subset search equal the principal filters",
                &[("none", &empty)],
                &[],
            )?;
        }
        Ok(())
    }

    fn facts(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let sd = self.star();
        let t = &sd.table;
        let zero = t.bottom();
        let one = t.top();
        let s = |x: Element| t.star(x);
        let l_is_zero = |x: Element, y: Element| p.lower_pair_unchecked(x, y).len() == 1;

        for a in p.elements() {
            ctx.claim(p.le(a, s(s(a))), "a ≤ a**", &[], &[("a", a)])?;
            ctx.claim(s(s(s(a))) == s(a), "a*** = a*", &[], &[("a", a)])?;
            for x in p.elements() {
                ctx.claim(l_is_zero(a, x) == p.le(x, s(a)), "L(a,x) = {0} iff x ≤ a*", &[], &[("a", a), ("x", x)])?;
            }
            for b in p.elements() {
                if p.le(a, b) {
                    ctx.claim(p.le(s(b), s(a)), "a ≤ b implies b* ≤ a*", &[], &[("a", a), ("b", b)])?;
                }
                let forms = [
                    l_is_zero(a, b),
                    p.le(a, s(b)),
                    p.le(s(s(a)), s(b)),
                    p.le(b, s(a)),
                    p.le(s(s(b)), s(a)),
                    l_is_zero(s(s(a)), b),
                ];
                ctx.claim(
                    forms.iter().all(|&v| v == forms[0]),
                    "L(a,b)={0}, a≤b*, a**≤b*, b≤a*, b**≤a*, L(a**,b)={0} agree",
                    &[],
                    &[("a", a), ("b", b)],
                )?;
                if sd.dense.contains(a) && p.le(a, b) {
                    ctx.claim(sd.dense.contains(b), "dense elements form an up-set", &[], &[("a", a), ("b", b)])?;
                }
            }
        }
        ctx.claim(p.greatest() == Some(one), "0* is the greatest element", &[], &[("0*", one)])?;
        ctx.claim(s(one) == zero, "1* = 0", &[], &[("1", one)])?;
        ctx.claim(
            sd.boolean.contains(zero) && sd.boolean.contains(one) && sd.dense.contains(one),
            "0, 1 ∈ B(P) and 1 ∈ D(P)",
            &[("B", &sd.boolean), ("D", &sd.dense)],
            &[],
        )?;
        let image = t.upper_star_unchecked(&p.full_subset());
        ctx.claim(image == sd.boolean, "B(P) = P*", &[("B", &sd.boolean), ("P*", &image)], &[])?;
        let meet = sd.boolean.intersection_unchecked(&sd.dense);
        let expected = p.subset([one]).expect("in carrier");
        ctx.claim(meet == expected, "B(P) ∩ D(P) = {1}", &[("B∩D", &meet)], &[])
    }

    fn lem4(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let t = &self.star().table;
        let full = p.full_subset();
        for i in &self.ideals {
            let li = t.lower_star_unchecked(i);
            ctx.claim(i.is_full() == li.is_full(), "(i) I = P iff I_* = P", &[("I", i)], &[])?;
        }
        for f in &self.filters {
            let lf = t.lower_star_unchecked(f);
            ctx.claim(f.is_full() == lf.is_full(), "(i) F = P iff F_* = P", &[("F", f)], &[])?;
            if !f.is_full() {
                ctx.claim(lf.bits().is_disjoint(f.bits()), "(ii) proper F has F ∩ F_* = ∅", &[("F", f)], &[])?;
            }
        }
        let (subsets, _) = self.subsets().expect("checked by run");
        for a_set in subsets {
            let la = t.lower_star_unchecked(a_set);
            for a in p.elements() {
                ctx.claim(
                    la.contains(a) == la.contains(t.double_star(a)),
                    "(iii) a ∈ A_* iff a** ∈ A_*",
                    &[("A", a_set)],
                    &[("a", a)],
                )?;
            }
            // monotonicity along single-element extensions covers all of A ⊆ B
            for x in p.elements().filter(|&x| !a_set.contains(x)) {
                let mut b_set = a_set.clone();
                b_set.insert(x);
                let lb = t.lower_star_unchecked(&b_set);
                ctx.claim(
                    la.is_subset_unchecked(&lb),
                    "(iv) A ⊆ B implies A_* ⊆ B_*",
                    &[("A", a_set), ("B", &b_set)],
                    &[],
                )?;
            }
        }
        let pool = random_subsets(p, self.cfg.family_pool, self.cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
        let n = pool.len();
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let family = [&pool[x], &pool[y], &pool[z]];
                    let union = family.iter().fold(p.empty_subset(), |acc, s| acc.union_unchecked(s));
                    let inter = family.iter().fold(full.clone(), |acc, s| acc.intersection_unchecked(s));
                    let union_of =
                        family.iter().fold(p.empty_subset(), |acc, s| acc.union_unchecked(&t.lower_star_unchecked(s)));
                    let inter_of = family
                        .iter()
                        .fold(full.clone(), |acc, s| acc.intersection_unchecked(&t.lower_star_unchecked(s)));
                    let sets = [("A1", family[0]), ("A2", family[1]), ("A3", family[2])];
                    ctx.claim(t.lower_star_unchecked(&union) == union_of, "(v) (⋃ A_i)_* = ⋃ (A_i)_*", &sets, &[])?;
                    ctx.claim(t.lower_star_unchecked(&inter) == inter_of, "(v) (⋂ A_i)_* = ⋂ (A_i)_*", &sets, &[])?;
                }
            }
        }
        Ok(())
    }

    fn star_char(&self, ctx: &mut Ctx) -> Outcome {
        let sd = self.star();
        for i in &self.ideals {
            let c = pseudo::star_ideal_conditions(self.p, &sd.table, i).expect("enumerated ideal");
            ctx.claim(!c.star_ideal || c.double_star_closed, "(i) implies (ii)", &[("I", i)], &[])?;
            ctx.claim(
                !(c.double_star_closed && c.star_exchange) || c.star_ideal,
                "(ii) and (iii) imply (i)",
                &[("I", i)],
                &[],
            )?;
        }
        Ok(())
    }

    fn lem3(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let t = &self.star().table;
        for f in &self.filters {
            let lf = t.lower_star_unchecked(f);
            let ok = self.is_ideal(&lf) && pseudo::star_ideal_witness(p, t, &lf).is_some();
            ctx.claim(ok, "(i) F_* is a *-ideal", &[("F", f), ("F_*", &lf)], &[])?;
        }
        for a in p.elements() {
            let principal = p.down_unchecked(t.star(a));
            let image = t.lower_star_unchecked(&p.up_unchecked(a));
            ctx.claim(
                principal == image && pseudo::star_ideal_witness(p, t, &principal).is_some(),
                "(ii) (a*] = [a)_* is a *-ideal",
                &[("(a*]", &principal), ("[a)_*", &image)],
                &[("a", a)],
            )?;
        }
        Ok(())
    }

    fn lem2(&self, ctx: &mut Ctx) -> Outcome {
        let sd = self.star();
        for (k, i) in self.ideals.iter().enumerate() {
            if sd.star_ideal[k] && !i.is_full() {
                ctx.claim(
                    i.bits().is_disjoint(sd.dense.bits()),
                    "a proper *-ideal contains no dense element",
                    &[("I", i), ("D", &sd.dense)],
                    &[],
                )?;
            }
        }
        Ok(())
    }

    fn th1(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let sd = self.star();
        let t = &sd.table;
        for a in p.elements() {
            let boolean = sd.boolean.contains(a);
            let principal = p.down_unchecked(a);
            let star_ideal = pseudo::star_ideal_witness(p, t, &principal).is_some();
            let closed = self.ideals.iter().filter(|i| i.contains(a)).all(|i| i.contains(t.double_star(a)));
            ctx.claim(
                boolean == star_ideal && star_ideal == closed,
                "a Boolean iff (a] is a *-ideal iff every ideal containing a contains a**",
                &[],
                &[("a", a)],
            )?;
        }
        let only_top = sd.dense.len() == 1;
        let avoided = self.ideals.iter().filter(|i| !i.is_full()).all(|i| i.bits().is_disjoint(sd.dense.bits()));
        ctx.claim(
            only_top == avoided,
            "D(P) = {1} iff no proper ideal contains a dense element",
            &[("D", &sd.dense)],
            &[],
        )
    }

    fn th3(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let sd = self.star();
        let t = &sd.table;
        let dense = &sd.dense;
        for (k, i) in self.ideals.iter().enumerate() {
            let no_dense = i.bits().is_disjoint(dense.bits());
            let cond = t.star_condition_unchecked(i);
            if no_dense {
                for a in p.elements() {
                    ctx.claim(
                        !(i.contains(a) && i.contains(t.star(a))),
                        "(i) I without dense elements never holds both a and a*",
                        &[("I", i)],
                        &[("a", a)],
                    )?;
                }
            }
            if self.prime_ideal[k] && no_dense {
                ctx.claim(cond, "(iii) prime I without dense elements satisfies the *-condition", &[("I", i)], &[])?;
            }
            if cond {
                ctx.claim(no_dense, "(v) I with the *-condition has no dense element", &[("I", i)], &[])?;
            }
        }
        for (k, f) in self.filters.iter().enumerate() {
            let proper = !f.is_full();
            let has_dense = dense.is_subset_unchecked(f);
            let cond = t.star_condition_unchecked(f);
            if proper {
                for a in p.elements() {
                    ctx.claim(
                        !(f.contains(a) && f.contains(t.star(a))),
                        "(ii) proper F never holds both a and a*",
                        &[("F", f)],
                        &[("a", a)],
                    )?;
                }
            }
            if self.prime_filter[k] && has_dense {
                ctx.claim(cond, "(iv) prime F containing D(P) satisfies the *-condition", &[("F", f)], &[])?;
            }
            if proper && cond {
                ctx.claim(has_dense, "(vi) proper F with the *-condition contains D(P)", &[("F", f)], &[])?;
            }
        }
        Ok(())
    }

    fn cor6(&self, ctx: &mut Ctx) -> Outcome {
        let sd = self.star();
        for (k, i) in self.ideals.iter().enumerate() {
            if self.prime_ideal[k] {
                let cond = sd.table.star_condition_unchecked(i);
                let no_dense = i.bits().is_disjoint(sd.dense.bits());
                ctx.claim(
                    cond == no_dense,
                    "prime I satisfies the *-condition iff it has no dense element",
                    &[("I", i)],
                    &[],
                )?;
            }
        }
        Ok(())
    }

    fn th2(&self, ctx: &mut Ctx) -> Outcome {
        let t = &self.star().table;
        for (k, f) in self.proper_filters() {
            let cond = t.star_condition_unchecked(f);
            let ultra = self.ultra[k];
            if cond {
                ctx.claim(ultra, "(i) implies (ii): *-condition gives an ultrafilter", &[("F", f)], &[])?;
            }
            if ultra && th2_condition_iii(self.p, f) {
                ctx.claim(cond, "(ii) and (iii) imply (i)", &[("F", f)], &[])?;
            }
        }
        Ok(())
    }

    fn cor_ultra(&self, ctx: &mut Ctx) -> Outcome {
        let dense = &self.star().dense;
        for (k, f) in self.filters.iter().enumerate() {
            if self.prime_filter[k] && dense.is_subset_unchecked(f) {
                ctx.claim(self.ultra[k], "prime F containing D(P) is an ultrafilter", &[("F", f)], &[])?;
            }
        }
        Ok(())
    }

    fn lem6(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let sd = self.star();
        for (_, f) in self.proper_filters() {
            if !sd.table.star_condition_unchecked(f) {
                continue;
            }
            let lf = sd.table.lower_star_unchecked(f);
            ctx.claim(self.is_prime_filter(f), "F is a prime filter", &[("F", f)], &[])?;
            ctx.claim(sd.dense.is_subset_unchecked(f), "F contains D(P)", &[("F", f)], &[])?;
            ctx.claim(
                self.is_ideal(&lf) && pseudo::star_ideal_witness(p, &sd.table, &lf).is_some(),
                "F_* is a *-ideal",
                &[("F", f), ("F_*", &lf)],
                &[],
            )?;
            ctx.claim(lf == f.complement_unchecked(), "F_* = P∖F", &[("F", f), ("F_*", &lf)], &[])?;
        }
        Ok(())
    }

    fn cor_star_dense(&self, ctx: &mut Ctx) -> Outcome {
        let sd = self.star();
        for (k, f) in self.proper_filters() {
            let cond = sd.table.star_condition_unchecked(f);
            let has_dense = sd.dense.is_subset_unchecked(f);
            if cond {
                ctx.claim(has_dense, "proper F with the *-condition contains D(P)", &[("F", f)], &[])?;
            }
            if self.prime_filter[k] {
                ctx.claim(
                    cond == has_dense,
                    "prime F satisfies the *-condition iff it contains D(P)",
                    &[("F", f)],
                    &[],
                )?;
            }
        }
        Ok(())
    }

    fn dense_proper_filter(&self, ctx: &mut Ctx) -> Outcome {
        let sd = self.star();
        for (_, f) in self.proper_filters() {
            if sd.dense.is_subset_unchecked(f) {
                ctx.claim(
                    sd.table.star_condition_unchecked(f),
                    "proper F containing D(P) satisfies the *-condition",
                    &[("F", f)],
                    &[],
                )?;
            }
        }
        Ok(())
    }

    fn cor4(&self, ctx: &mut Ctx) -> Outcome {
        let p = self.p;
        let t = &self.star().table;
        for i in &self.ideals {
            for f in self.filters.iter().filter(|f| t.star_condition_unchecked(f)) {
                if !i.bits().is_disjoint(f.bits()) {
                    continue;
                }
                let ok = match pseudo::separate_star(p, t, i, f) {
                    Ok(j) => {
                        self.is_ideal(&j)
                            && pseudo::star_ideal_witness(p, t, &j).is_some()
                            && i.is_subset_unchecked(&j)
                            && j.bits().is_disjoint(f.bits())
                    }
                    Err(_) => false,
                };
                ctx.claim(ok, "J is a *-ideal with I ⊆ J and J ∩ F = ∅", &[("I", i), ("F", f)], &[])?;
            }
        }
        Ok(())
    }
}

fn random_subsets(p: &Poset, count: usize, seed: u64) -> Vec<Subset> {
    let mut rng = randgen::rng(seed);
    (0..count)
        .map(|_| {
            let mut s = p.empty_subset();
            for x in p.elements() {
                if randgen::unit_f64(&mut rng) < 0.5 {
                    s.insert(x);
                }
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn names_round_trip() {
        for id in ALL_IDS {
            assert_eq!(TheoremId::from_name(id.name()).unwrap(), id);
        }
        assert_eq!(TheoremId::from_name("th99").unwrap_err(), Error::UnknownTheorem("th99".into()));
        assert!(!REGISTRY.contains(&TheoremId::Lem5Directed));
    }

    #[test]
    fn fixtures_pass_everything() {
        for p in [fixtures::fig1(), fixtures::fig2()] {
            let reports = check_all(&p);
            assert_eq!(reports.len(), REGISTRY.len());
            for r in &reports {
                assert_eq!(r.status, Status::Pass, "{r:?}");
                assert!(r.checked_instances > 0 || r.theorem_id == "lem2", "{r:?}");
            }
        }
    }

    #[test]
    fn cor3_counts_disjoint_pairs() {
        let p = fixtures::fig1();
        let r = check(&p, TheoremId::Cor3).unwrap();
        let primes: Vec<Subset> =
            ideal::enumerate_filters(&p).into_iter().filter(|f| ideal::is_prime_filter(&p, f).unwrap()).collect();
        let pairs = ideal::enumerate_ideals(&p)
            .iter()
            .flat_map(|i| primes.iter().map(move |f| (i.clone(), f)))
            .filter(|(i, f)| i.is_disjoint(f).unwrap())
            .count();
        assert_eq!(r.checked_instances, pairs as u64);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn antichain_is_not_applicable_for_star_theorems() {
        let p = Poset::from_covers::<_, &str>(&["u", "v"], &[]).unwrap();
        let r = check(&p, TheoremId::Lem3).unwrap();
        assert_eq!(r.status, Status::NotApplicable);
        assert!(r.detail.unwrap().contains("no least element"));
        let r = check(&p, TheoremId::Cor2).unwrap();
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn singleton_passes() {
        let p = Poset::from_covers::<_, &str>(&["x"], &[]).unwrap();
        for r in check_all(&p) {
            assert_eq!(r.status, Status::Pass, "{r:?}");
        }
    }

    #[test]
    fn literal_directedness_reading_fails_and_replays() {
        let p = fixtures::fig1();
        let r = check(&p, TheoremId::Lem5Directed).unwrap();
        assert_eq!(r.status, Status::Fail);
        let cex = r.counterexample.unwrap();
        let again = replay(&cex).unwrap();
        assert_eq!(again.status, Status::Fail);
        assert_eq!(again.counterexample.unwrap(), cex);
    }

    #[test]
    fn top_alone_is_down_directed_but_its_complement_is_not_up_directed() {
        let p = fixtures::fig1();
        let i = p.subset_of_labels(&["1"]).unwrap();
        assert!(ideal::is_down_directed(&p, &i).unwrap());
        assert!(!ideal::is_up_directed(&p, &i.complement_unchecked()).unwrap());
    }

    #[test]
    fn dense_proper_filter_fails_on_first_figure() {
        let p = fixtures::fig1();
        let r = check(&p, TheoremId::DenseProperFilter).unwrap();
        assert_eq!(r.status, Status::Fail);
        let cex = r.counterexample.unwrap();
        assert_eq!(cex.sets[0].members, ["b", "d", "e", "1"]);
        assert_eq!(replay(&cex).unwrap().counterexample.unwrap(), cex);
        // in the fig2 fixture, [c) = D(P) misses both a and a* = b
        let q = fixtures::fig2();
        assert_eq!(check(&q, TheoremId::DenseProperFilter).unwrap().status, Status::Fail);
    }

    #[test]
    fn large_carriers_sample_or_refuse() {
        let labels: Vec<String> = (0..12).map(|i| format!("c{i}")).collect();
        let covers: Vec<(usize, usize)> = (0..11).map(|i| (i, i + 1)).collect();
        let chain = Poset::from_index_covers(labels, &covers).unwrap();
        let cfg = CheckConfig { samples: 200, ..Default::default() };
        let r = check_with(&chain, TheoremId::Lem5, &cfg).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.detail.unwrap().contains("sampled"));
        let tight = CheckConfig { sampled_cap: 11, ..Default::default() };
        assert_eq!(
            check_with(&chain, TheoremId::Lem4, &tight).unwrap_err(),
            Error::CarrierTooLargeForSubsetQuantifier { size: 12, limit: 11 }
        );
        let reports = check_many(&chain, &[TheoremId::Lem4, TheoremId::Th1], &tight);
        assert_eq!(reports[0].status, Status::NotApplicable);
        assert_eq!(reports[1].status, Status::Pass);
    }

    #[test]
    fn condition_iii_errors() {
        let p = fixtures::fig1();
        assert_eq!(check_th2_condition_iii(&p, &p.full_subset()).unwrap_err(), Error::NotProper);
        let s = p.subset_of_labels(&["d", "e", "1"]).unwrap();
        assert_eq!(check_th2_condition_iii(&p, &s).unwrap_err(), Error::NotAFilter);
    }
}
