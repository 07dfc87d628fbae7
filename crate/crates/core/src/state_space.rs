//! State spaces `(Σ, ⊥)`, the perp operator, and their property lattices.

use std::collections::HashSet;
use std::fmt;

use crate::atomset::AtomSet;
use crate::closure::{meet_closure_capped, ClosureSystem, DEFAULT_FAMILY_CAP};
use crate::error::{Error, Result};

/// Orthogonality on atoms, stored as one row per atom: `rows[p] = {q | q ⊥ p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoRelation {
    rows: Vec<AtomSet>,
}

impl OrthoRelation {
    /// The empty relation on `n` atoms.
    pub fn empty(n: usize) -> Self {
        OrthoRelation {
            rows: vec![AtomSet::empty(n); n],
        }
    }

    /// Builds the symmetric closure of `pairs`.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut rel = Self::empty(n);
        for (p, q) in pairs {
            rel.relate(p, q);
        }
        rel
    }

    /// Takes rows as given; nothing is enforced. Use [`OrthoRelation::check`]
    /// to find violations.
    pub fn from_rows(rows: Vec<AtomSet>) -> Self {
        OrthoRelation { rows }
    }

    /// Adds `p ⊥ q` and `q ⊥ p`.
    pub fn relate(&mut self, p: usize, q: usize) {
        self.rows[p].insert(q);
        self.rows[q].insert(p);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    #[inline]
    pub fn orth(&self, p: usize, q: usize) -> bool {
        self.rows[p].contains(q)
    }

    #[inline]
    pub fn row(&self, p: usize) -> &AtomSet {
        &self.rows[p]
    }

    pub fn rows(&self) -> &[AtomSet] {
        &self.rows
    }

    /// `A^⊥`: the atoms orthogonal to every atom of `set`. `∅^⊥ = Σ`.
    pub fn perp(&self, set: &AtomSet) -> AtomSet {
        let mut out = AtomSet::full(self.len());
        for p in set.iter() {
            out.intersect_with(&self.rows[p]);
        }
        out
    }

    /// Orthogonal pairs `p < q` in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.rows[p].iter().filter(|&q| q > p) {
                out.push((p, q));
            }
        }
        out
    }

    /// Checks the three orthogonality axioms and reports the first witness of
    /// each failure.
    pub fn check(&self) -> ValidationReport {
        let n = self.len();
        let antireflexive = (0..n).find(|&p| self.orth(p, p));
        let mut symmetric = None;
        'sym: for p in 0..n {
            for q in self.rows[p].iter() {
                if !self.orth(q, p) {
                    symmetric = Some((p, q));
                    break 'sym;
                }
            }
        }
        // p ≠ q is separated iff some r ⊥ p is not ⊥ q, i.e. rows[p] ⊄ rows[q].
        let mut separating = None;
        'sep: for p in 0..n {
            for q in 0..n {
                if p != q && self.rows[p].is_subset(&self.rows[q]) {
                    separating = Some((p, q));
                    break 'sep;
                }
            }
        }
        ValidationReport {
            antireflexive,
            symmetric,
            separating,
        }
    }
}

/// Outcome of checking the state-space axioms; each field holds the first
/// violation found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// An atom orthogonal to itself.
    pub antireflexive: Option<usize>,
    /// `(p, q)` with `q ⊥ p` recorded but not `p ⊥ q`.
    pub symmetric: Option<(usize, usize)>,
    /// `(p, q)`, `p ≠ q`, with no `r ⊥ p` such that `r` is not `⊥ q`.
    pub separating: Option<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.antireflexive.is_none() && self.symmetric.is_none() && self.separating.is_none()
    }

    /// One tab-separated line per axiom.
    pub fn lines(&self, labels: &[String]) -> Vec<String> {
        let l = |i: usize| labels.get(i).cloned().unwrap_or_else(|| i.to_string());
        vec![
            match self.antireflexive {
                None => "antireflexive\tpass".to_string(),
                Some(p) => format!("antireflexive\tfail\t{}", l(p)),
            },
            match self.symmetric {
                None => "symmetric\tpass".to_string(),
                Some((p, q)) => format!("symmetric\tfail\t{}\t{}", l(p), l(q)),
            },
            match self.separating {
                None => "separating\tpass".to_string(),
                Some((p, q)) => format!("separating\tfail\t{}\t{}", l(p), l(q)),
            },
        ]
    }

    fn describe(&self, labels: &[String]) -> String {
        self.lines(labels)
            .into_iter()
            .filter(|l| l.contains("\tfail"))
            .map(|l| l.replace('\t', " "))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn check_labels(labels: &[String], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Validation(
            "state space must have at least one atom".into(),
        ));
    }
    if labels.len() != n {
        return Err(Error::Validation(format!(
            "{} labels for {n} atoms",
            labels.len()
        )));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::Validation(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

/// A set of states with an orthogonality relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    labels: Vec<String>,
    orth: OrthoRelation,
}

impl StateSpace {
    /// Builds a state space and requires all three orthogonality axioms.
    pub fn new(labels: Vec<String>, orth: OrthoRelation) -> Result<Self> {
        let ss = Self::unchecked(labels, orth)?;
        let report = ss.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.describe(&ss.labels)));
        }
        Ok(ss)
    }

    /// Builds a state space without checking the orthogonality axioms (labels
    /// are still checked). Used to report on invalid inputs.
    pub fn unchecked(labels: Vec<String>, orth: OrthoRelation) -> Result<Self> {
        check_labels(&labels, orth.len())?;
        Ok(StateSpace { labels, orth })
    }

    pub fn validate(&self) -> ValidationReport {
        self.orth.check()
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

    pub fn orth(&self) -> &OrthoRelation {
        &self.orth
    }

    pub fn perp(&self, set: &AtomSet) -> AtomSet {
        self.orth.perp(set)
    }

    /// `A^⊥⊥`.
    pub fn biorthogonal_closure(&self, set: &AtomSet) -> AtomSet {
        self.perp(&self.perp(set))
    }

    /// The lattice of biorthogonally closed sets, with the default family cap.
    pub fn property_lattice(&self) -> Result<Ppl> {
        self.property_lattice_capped(DEFAULT_FAMILY_CAP)
    }

    pub fn property_lattice_capped(&self, cap: usize) -> Result<Ppl> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::Validation(report.describe(&self.labels)));
        }
        // Closed sets are perps, and perps are intersections of rows.
        let cs = meet_closure_capped(self.orth.rows(), self.len(), cap)?;
        if let Some(bad) = cs
            .closed()
            .iter()
            .find(|a| self.biorthogonal_closure(a) != **a)
        {
            return Err(Error::InvariantViolation(format!(
                "generated set {bad} is not biorthogonally closed"
            )));
        }
        Ppl::new(cs, self.orth.clone(), self.labels.clone())
    }
}

/// A pseudo property lattice: a T₁ closure system with an orthogonality on
/// its atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ppl {
    cs: ClosureSystem,
    orth: OrthoRelation,
    labels: Vec<String>,
}

impl Ppl {
    pub fn new(cs: ClosureSystem, orth: OrthoRelation, labels: Vec<String>) -> Result<Self> {
        if cs.ground() != orth.len() {
            return Err(Error::Validation(format!(
                "closure system on {} atoms, orthogonality on {}",
                cs.ground(),
                orth.len()
            )));
        }
        check_labels(&labels, orth.len())?;
        if !cs.is_t1() {
            return Err(Error::Validation(
                "closure system is not T1 (missing the empty set or a singleton)".into(),
            ));
        }
        let report = orth.check();
        if !report.is_valid() {
            return Err(Error::Validation(report.describe(&labels)));
        }
        Ok(Ppl { cs, orth, labels })
    }

    pub fn cs(&self) -> &ClosureSystem {
        &self.cs
    }

    pub fn orth(&self) -> &OrthoRelation {
        &self.orth
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of atoms.
    pub fn ground(&self) -> usize {
        self.orth.len()
    }

    /// `{a,b}` rendering of an atom set with this ppl's labels.
    pub fn show(&self, set: &AtomSet) -> String {
        show_set(&self.labels, set)
    }
}

pub(crate) fn show_set(labels: &[String], set: &AtomSet) -> String {
    let parts: Vec<&str> = set.iter().map(|i| labels[i].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::serialize_statespace(self))
    }
}
