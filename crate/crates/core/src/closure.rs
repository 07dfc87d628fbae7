//! Finite Moore families as the concrete form of complete atomistic lattices.
//!
//! A [`ClosureSystem`] stores its closed sets extensionally, in canonical order,
//! together with a meet-generating basis. Lattice meets are set intersections;
//! joins are closures of unions, where the closure of `X` is the intersection
//! of all basis sets containing `X`.

use std::collections::HashMap;
use std::fmt;

use crate::atomset::AtomSet;
use crate::error::{Error, Result};

/// Default limit on the number of closed sets a construction may produce.
pub const DEFAULT_FAMILY_CAP: usize = 1_000_000;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 1024;

/// An element of a closure system: a closed set and its canonical id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeElement {
    pub id: usize,
    pub atoms: AtomSet,
}

/// Why a family of sets is not a Moore family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDefect {
    MissingGround,
    WrongGround(AtomSet),
    NotIntersectionClosed(AtomSet, AtomSet),
}

impl fmt::Display for FamilyDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDefect::MissingGround => write!(f, "family does not contain the full set"),
            FamilyDefect::WrongGround(s) => write!(f, "set {s} has the wrong ground size"),
            FamilyDefect::NotIntersectionClosed(a, b) => {
                write!(f, "intersection of {a} and {b} is not in the family")
            }
        }
    }
}

/// A Moore family on `{0, .., n-1}`: contains the full set and is closed under
/// intersection.
#[derive(Clone)]
pub struct ClosureSystem {
    n: usize,
    closed: Vec<AtomSet>,
    index: HashMap<AtomSet, usize>,
    is_t1: bool,
    basis: Vec<AtomSet>,
}

impl fmt::Debug for ClosureSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClosureSystem")
            .field("n", &self.n)
            .field("closed", &self.closed)
            .finish()
    }
}

impl PartialEq for ClosureSystem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.closed == other.closed
    }
}

impl Eq for ClosureSystem {}

/// Smallest intersection-closed family containing `generators` and the full
/// set, with the default family cap.
pub fn meet_closure(generators: &[AtomSet], n: usize) -> Result<ClosureSystem> {
    meet_closure_capped(generators, n, DEFAULT_FAMILY_CAP)
}

/// [`meet_closure`] with an explicit limit on the number of closed sets.
pub fn meet_closure_capped(generators: &[AtomSet], n: usize, cap: usize) -> Result<ClosureSystem> {
    check_ground(n)?;
    for g in generators {
        if g.ground() != n {
            return Err(Error::Argument(format!(
                "generator {g} has ground size {}, expected {n}",
                g.ground()
            )));
        }
    }
    let basis = reduce_basis(generators, n);
    let full = AtomSet::full(n);

    // Every intersection of generators is reached from the full set by
    // intersecting with one generator at a time.
    let mut seen: HashMap<AtomSet, usize> = HashMap::new();
    let mut family = vec![full.clone()];
    seen.insert(full, 0);
    let mut cursor = 0;
    while cursor < family.len() {
        let current = family[cursor].clone();
        cursor += 1;
        for g in &basis {
            let next = current.intersection(g);
            if seen.contains_key(&next) {
                continue;
            }
            if family.len() >= cap {
                return Err(Error::Capacity {
                    what: format!("closure system on {n} atoms has more than {cap} closed sets"),
                    limit: cap,
                });
            }
            seen.insert(next.clone(), family.len());
            family.push(next);
        }
    }
    Ok(ClosureSystem::assemble(n, family, basis))
}

fn check_ground(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("ground set must be nonempty".into()));
    }
    if n > MAX_GROUND {
        return Err(Error::Capacity {
            what: format!("ground set of {n} atoms"),
            limit: MAX_GROUND,
        });
    }
    Ok(())
}

/// Deduplicates generators, drops the full set and any generator that is the
/// intersection of the generators strictly above it.
fn reduce_basis(generators: &[AtomSet], n: usize) -> Vec<AtomSet> {
    let mut gens: Vec<AtomSet> = generators
        .iter()
        .filter(|g| !g.is_full())
        .cloned()
        .collect();
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .map(|g| {
            let mut above = AtomSet::full(n);
            for h in &gens {
                if g.is_proper_subset(h) {
                    above.intersect_with(h);
                }
            }
            above != *g
        })
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

impl ClosureSystem {
    fn assemble(n: usize, mut closed: Vec<AtomSet>, basis: Vec<AtomSet>) -> Self {
        closed.sort();
        closed.dedup();
        let index: HashMap<AtomSet, usize> = closed
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let is_t1 = index.contains_key(&AtomSet::empty(n))
            && (0..n).all(|p| index.contains_key(&AtomSet::singleton(n, p)));
        ClosureSystem {
            n,
            closed,
            index,
            is_t1,
            basis,
        }
    }

    /// Builds a closure system from an explicit family, which must contain the
    /// full set and be closed under pairwise intersection.
    pub fn from_family(n: usize, sets: &[AtomSet]) -> std::result::Result<Self, FamilyDefect> {
        if let Some(bad) = sets.iter().find(|s| s.ground() != n) {
            return Err(FamilyDefect::WrongGround(bad.clone()));
        }
        let mut closed = sets.to_vec();
        closed.sort();
        closed.dedup();
        let full = AtomSet::full(n);
        if !closed.contains(&full) {
            return Err(FamilyDefect::MissingGround);
        }
        let members: std::collections::HashSet<&AtomSet> = closed.iter().collect();
        for (i, a) in closed.iter().enumerate() {
            for b in &closed[i + 1..] {
                if !members.contains(&a.intersection(b)) {
                    return Err(FamilyDefect::NotIntersectionClosed(a.clone(), b.clone()));
                }
            }
        }
        let basis = reduce_basis(&closed, n);
        Ok(Self::assemble(n, closed, basis))
    }

    /// Ground-set size.
    pub fn ground(&self) -> usize {
        self.n
    }

    /// Number of closed sets.
    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    /// Contains the empty set and every singleton.
    pub fn is_t1(&self) -> bool {
        self.is_t1
    }

    /// Closed sets in canonical order.
    pub fn closed(&self) -> &[AtomSet] {
        &self.closed
    }

    /// Meet-irreducible generators; every closed set other than the full set
    /// is an intersection of these.
    pub fn basis(&self) -> &[AtomSet] {
        &self.basis
    }

    pub fn id_of(&self, set: &AtomSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn contains(&self, set: &AtomSet) -> bool {
        self.index.contains_key(set)
    }

    pub fn element(&self, id: usize) -> LatticeElement {
        LatticeElement {
            id,
            atoms: self.closed[id].clone(),
        }
    }

    pub fn get(&self, set: &AtomSet) -> Option<LatticeElement> {
        self.id_of(set).map(|id| self.element(id))
    }

    pub fn elements(&self) -> impl Iterator<Item = LatticeElement> + '_ {
        (0..self.len()).map(|id| self.element(id))
    }

    /// Least element (intersection of everything), always id 0.
    pub fn bottom(&self) -> LatticeElement {
        self.element(0)
    }

    /// Greatest element, the full set.
    pub fn top(&self) -> LatticeElement {
        self.element(self.len() - 1)
    }

    /// Smallest closed set containing `set`.
    pub fn closure(&self, set: &AtomSet) -> AtomSet {
        let mut out = AtomSet::full(self.n);
        for g in &self.basis {
            if set.is_subset(g) {
                out.intersect_with(g);
            }
        }
        out
    }

    /// Id of the closure of `set`.
    pub fn closure_id(&self, set: &AtomSet) -> usize {
        self.index[&self.closure(set)]
    }

    pub fn meet(&self, a: &LatticeElement, b: &LatticeElement) -> LatticeElement {
        let atoms = a.atoms.intersection(&b.atoms);
        let id = self.index[&atoms];
        LatticeElement { id, atoms }
    }

    pub fn join(&self, a: &LatticeElement, b: &LatticeElement) -> LatticeElement {
        let atoms = self.closure(&a.atoms.union(&b.atoms));
        let id = self.index[&atoms];
        LatticeElement { id, atoms }
    }

    /// True iff `b` covers `a`.
    pub fn covers(&self, a: &LatticeElement, b: &LatticeElement) -> bool {
        a.atoms.is_proper_subset(&b.atoms) && self.intermediate(&a.atoms, &b.atoms).is_none()
    }

    /// For closed `a ⊊ b`, a closed set strictly between them if one exists.
    ///
    /// Any such set contains some atom `x ∈ b \ a`, and then so does the
    /// closure of `a ∪ {x}`; scanning those closures is exhaustive.
    pub fn intermediate(&self, a: &AtomSet, b: &AtomSet) -> Option<AtomSet> {
        for x in b.difference(a).iter() {
            let mut grown = a.clone();
            grown.insert(x);
            let c = self.closure(&grown);
            if c != *b {
                return Some(c);
            }
        }
        None
    }

    /// The minimal nonempty closed sets. For a T₁ system these are the
    /// singletons in atom order.
    pub fn atoms_of(&self) -> Vec<LatticeElement> {
        if self.is_t1 {
            return (0..self.n)
                .map(|p| {
                    self.get(&AtomSet::singleton(self.n, p))
                        .expect("T1 singleton")
                })
                .collect();
        }
        let mut found: Vec<LatticeElement> = Vec::new();
        for e in self.elements() {
            if e.atoms.is_empty() {
                continue;
            }
            if found.iter().all(|f| !f.atoms.is_proper_subset(&e.atoms)) {
                found.push(e);
            }
        }
        found.sort_by_key(|e| e.atoms.first());
        found
    }

    /// Hasse diagram edges `(lower, upper)` by id, ordered by upper then lower.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (j, b) in self.closed.iter().enumerate() {
            for (i, a) in self.closed[..j].iter().enumerate() {
                if a.is_proper_subset(b) && self.intermediate(a, b).is_none() {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}
