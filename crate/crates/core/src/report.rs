//! Full classification of one poset, as a text table or JSON.
//!
//! JSON keys are fixed (see the README for the schema). Every set is a
//! principal ideal `(a]` or filter `[a)`; lists of sets are ordered by the
//! declaration position of the generator `a`, and members of a set are
//! listed in declaration order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ideal::{self, IdealFilterCatalog};
use crate::poset::{Element, Poset, Subset};
use crate::pseudo;
use crate::theorems::{self, CheckConfig, TheoremId, TheoremReport};

/// A principal ideal `(a]` or filter `[a)`, named after its generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSet {
    /// `(a]` or `[a)`
    pub name: String,
    pub generator: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarIdealEntry {
    pub ideal: LabeledSet,
    /// First filter `F` in canonical order with `F_* = ideal`.
    pub witness: LabeledSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub poset: String,
    pub n: usize,
    pub elements: Vec<String>,
    /// Covering pairs `[lower, upper]`.
    pub covers: Vec<[String; 2]>,
    pub ideals: Vec<LabeledSet>,
    pub filters: Vec<LabeledSet>,
    pub prime_ideals: Vec<LabeledSet>,
    pub prime_filters: Vec<LabeledSet>,
    pub ultrafilters: Vec<LabeledSet>,
    pub pseudocomplemented: bool,
    /// Why the star table is partial; `null` when pseudocomplemented.
    pub star_failure: Option<String>,
    /// `x → x*`; `null` when not pseudocomplemented.
    pub star_table: Option<BTreeMap<String, String>>,
    pub boolean_elements: Option<Vec<String>>,
    pub dense_elements: Option<Vec<String>>,
    pub star_ideals: Option<Vec<StarIdealEntry>>,
    pub theorems: Vec<TheoremReport>,
}

impl AnalysisReport {
    /// Classifies `p`; theorem checks run only for the given ids.
    pub fn build(name: &str, p: &Poset, theorem_ids: &[TheoremId]) -> AnalysisReport {
        let cat = IdealFilterCatalog::build(p);
        let ideal_set = |k: usize| labeled(p, &cat.ideals[k], cat.ideal_generators[k], true);
        let filter_set = |k: usize| labeled(p, &cat.filters[k], cat.filter_generators[k], false);
        let by_generator = |ks: &mut Vec<usize>, gens: &[Element]| ks.sort_by_key(|&k| gens[k].index());
        let mut ideal_order: Vec<usize> = (0..cat.ideals.len()).collect();
        let mut filter_order: Vec<usize> = (0..cat.filters.len()).collect();
        let mut prime_ideals = cat.prime_ideals.clone();
        let mut prime_filters = cat.prime_filters.clone();
        let mut ultrafilters = cat.ultrafilters.clone();
        by_generator(&mut ideal_order, &cat.ideal_generators);
        by_generator(&mut prime_ideals, &cat.ideal_generators);
        by_generator(&mut filter_order, &cat.filter_generators);
        by_generator(&mut prime_filters, &cat.filter_generators);
        by_generator(&mut ultrafilters, &cat.filter_generators);

        let star = pseudo::star_table(p);
        let (star_failure, star_table, boolean_elements, dense_elements, star_ideals) = match &star {
            Ok(t) => {
                let table = t.entries().map(|(a, s)| (p.label(a).to_owned(), p.label(s).to_owned())).collect();
                let mut entries = Vec::new();
                for &k in &ideal_order {
                    if let Some(w) = pseudo::star_ideal_witness(p, t, &cat.ideals[k]) {
                        let wk = cat.filters.iter().position(|f| *f == w).expect("witness is enumerated");
                        entries.push(StarIdealEntry { ideal: ideal_set(k), witness: filter_set(wk) });
                    }
                }
                (
                    None,
                    Some(table),
                    Some(p.subset_labels(&t.boolean_elements())),
                    Some(p.subset_labels(&t.dense_elements())),
                    Some(entries),
                )
            }
            Err(f) => (Some(f.describe(p)), None, None, None, None),
        };

        AnalysisReport {
            poset: name.to_owned(),
            n: p.len(),
            elements: p.labels().to_vec(),
            covers: p.covers().iter().map(|&(a, b)| [p.label(a).to_owned(), p.label(b).to_owned()]).collect(),
            ideals: ideal_order.iter().map(|&k| ideal_set(k)).collect(),
            filters: filter_order.iter().map(|&k| filter_set(k)).collect(),
            prime_ideals: prime_ideals.iter().map(|&k| ideal_set(k)).collect(),
            prime_filters: prime_filters.iter().map(|&k| filter_set(k)).collect(),
            ultrafilters: ultrafilters.iter().map(|&k| filter_set(k)).collect(),
            pseudocomplemented: star.is_ok(),
            star_failure,
            star_table,
            boolean_elements,
            dense_elements,
            star_ideals,
            theorems: theorems::check_many(p, theorem_ids, &CheckConfig::default()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<AnalysisReport> {
        serde_json::from_str(text)
    }

    /// Re-derives every listed set from `p` with the module predicates and
    /// reports the first disagreement.
    pub fn consistency_check(&self, p: &Poset) -> Result<(), String> {
        let set = |ls: &LabeledSet| -> Result<Subset, String> {
            p.subset_of_labels(&ls.members).map_err(|e| format!("{}: {e}", ls.name))
        };
        let expect = |ok: bool, what: &str, ls: &LabeledSet| {
            if ok {
                Ok(())
            } else {
                Err(format!("{} is listed as {what} but is not", ls.name))
            }
        };
        if self.n != p.len() || self.elements != p.labels() {
            return Err("carrier differs".into());
        }
        for ls in &self.ideals {
            expect(ideal::is_ideal(p, &set(ls)?).unwrap_or(false), "an ideal", ls)?;
        }
        for ls in &self.filters {
            expect(ideal::is_filter(p, &set(ls)?).unwrap_or(false), "a filter", ls)?;
        }
        for ls in &self.prime_ideals {
            expect(ideal::is_prime_ideal(p, &set(ls)?).unwrap_or(false), "a prime ideal", ls)?;
        }
        for ls in &self.prime_filters {
            expect(ideal::is_prime_filter(p, &set(ls)?).unwrap_or(false), "a prime filter", ls)?;
        }
        let ultras = ideal::ultrafilters(p);
        for ls in &self.ultrafilters {
            expect(ultras.contains(&set(ls)?), "an ultrafilter", ls)?;
        }
        if self.ultrafilters.len() != ultras.len() {
            return Err("ultrafilter count differs".into());
        }
        match (pseudo::star_table(p), &self.star_table) {
            (Ok(t), Some(table)) => {
                for (a, s) in t.entries() {
                    if table.get(p.label(a)).map(String::as_str) != Some(p.label(s)) {
                        return Err(format!("star of {} differs", p.label(a)));
                    }
                }
                for entry in self.star_ideals.iter().flatten() {
                    let i = set(&entry.ideal)?;
                    let w = set(&entry.witness)?;
                    if t.lower_star_unchecked(&w) != i {
                        return Err(format!("{} is not the witness of {}", entry.witness.name, entry.ideal.name));
                    }
                }
            }
            (Err(_), None) => {}
            _ => return Err("pseudocomplementation flag differs".into()),
        }
        Ok(())
    }

    /// Human-readable table; the star table is printed as two rows.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names = |v: &[LabeledSet]| {
            if v.is_empty() {
                "(none)".to_owned()
            } else {
                v.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(" ")
            }
        };
        let braces = |v: &[String]| format!("{{{}}}", v.join(","));
        let _ = writeln!(out, "poset {} ({} elements)", self.poset, self.n);
        let _ = writeln!(out, "  elements:       {}", self.elements.join(" "));
        let covers: Vec<String> = self.covers.iter().map(|[a, b]| format!("{a}<{b}")).collect();
        let _ = writeln!(out, "  covers:         {}", covers.join(", "));
        let _ = writeln!(out, "  ideals:         {}", names(&self.ideals));
        let _ = writeln!(out, "  filters:        {}", names(&self.filters));
        let _ = writeln!(out, "  prime ideals:   {}", names(&self.prime_ideals));
        let _ = writeln!(out, "  prime filters:  {}", names(&self.prime_filters));
        let _ = writeln!(out, "  ultrafilters:   {}", names(&self.ultrafilters));
        match (&self.star_table, &self.star_failure) {
            (Some(table), _) => {
                let _ = writeln!(out, "  pseudocomplemented: yes");
                let top: Vec<&str> = self.elements.iter().map(String::as_str).collect();
                let bottom: Vec<&str> = top.iter().map(|a| table[*a].as_str()).collect();
                let width = top.iter().chain(&bottom).map(|s| s.chars().count()).max().unwrap_or(1);
                let row = |head: &str, cells: &[&str]| {
                    let cells: Vec<String> = cells.iter().map(|c| format!("{c:<width$}")).collect();
                    format!("    {head:<2} | {}", cells.join(" ")).trim_end().to_owned()
                };
                let _ = writeln!(out, "{}", row("x", &top));
                let _ = writeln!(out, "{}", row("x*", &bottom));
                let _ = writeln!(out, "  Boolean:        {}", braces(self.boolean_elements.as_deref().unwrap_or(&[])));
                let _ = writeln!(out, "  dense:          {}", braces(self.dense_elements.as_deref().unwrap_or(&[])));
                let entries: Vec<String> = self
                    .star_ideals
                    .iter()
                    .flatten()
                    .map(|e| format!("{} = {}_*", e.ideal.name, e.witness.name))
                    .collect();
                let _ = writeln!(out, "  *-ideals:       {}", entries.join(", "));
            }
            (None, reason) => {
                let _ = writeln!(
                    out,
                    "  pseudocomplemented: no ({})",
                    reason.as_deref().unwrap_or("star table is partial")
                );
            }
        }
        if !self.theorems.is_empty() {
            let _ = writeln!(out, "  theorems:");
            let width = self.theorems.iter().map(|r| r.theorem_id.len()).max().unwrap_or(0);
            for r in &self.theorems {
                let _ = writeln!(
                    out,
                    "    {:<width$}  {:<14}  {} instances",
                    r.theorem_id,
                    r.status.to_string(),
                    r.checked_instances
                );
            }
        }
        out
    }
}

fn labeled(p: &Poset, s: &Subset, generator: Element, ideal: bool) -> LabeledSet {
    let g = p.label(generator);
    LabeledSet {
        name: if ideal { format!("({g}]") } else { format!("[{g})") },
        generator: g.to_owned(),
        members: p.subset_labels(s),
    }
}
