//! Symmetries of ppl's: atom permutations preserving closed sets and
//! orthogonality in both directions.

mod plane;
mod search;

use crate::atomset::AtomSet;
use crate::error::Result;
use crate::state_space::Ppl;

pub use plane::{
    find_plane_symmetry, is_plane_transitive, product_plane_witness, verify_plane_witness,
    PlaneReport, PlaneStatus, PlaneWitness,
};
pub use search::{SearchContext, SymmetrySearch};

/// Default node-expansion budget per search query.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A permutation of atom indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    perm: Vec<usize>,
}

impl Symmetry {
    pub fn identity(n: usize) -> Self {
        Symmetry {
            perm: (0..n).collect(),
        }
    }

    /// Wraps a permutation; nothing about the ppl is checked.
    pub fn new_unchecked(perm: Vec<usize>) -> Self {
        Symmetry { perm }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn image(&self, atom: usize) -> usize {
        self.perm[atom]
    }

    pub fn apply(&self, set: &AtomSet) -> AtomSet {
        set.map(&self.perm)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        Symmetry {
            perm: other.perm.iter().map(|&x| self.perm[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Symmetry {
        let mut inv = vec![0; self.perm.len()];
        for (i, &x) in self.perm.iter().enumerate() {
            inv[x] = i;
        }
        Symmetry { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x)
    }
}

/// Why a permutation is not a symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryViolation {
    NotPermutation,
    /// `p ⊥ q` and `f(p) ⊥ f(q)` disagree.
    Orthogonality {
        p: usize,
        q: usize,
    },
    /// A closed set whose image is not closed.
    ClosedSet {
        set: AtomSet,
    },
}

/// Checks both symmetry conditions. Orthogonality pairs are tested in
/// lexicographic order, then closed sets in canonical order.
///
/// Closed sets are checked in the forward direction only: a permutation maps
/// the finite family injectively, so mapping it into itself means mapping it
/// onto itself.
pub fn is_symmetry(ppl: &Ppl, perm: &[usize]) -> std::result::Result<(), SymmetryViolation> {
    let n = ppl.ground();
    if perm.len() != n {
        return Err(SymmetryViolation::NotPermutation);
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || seen[x] {
            return Err(SymmetryViolation::NotPermutation);
        }
        seen[x] = true;
    }
    let orth = ppl.orth();
    for p in 0..n {
        for q in p + 1..n {
            if orth.orth(p, q) != orth.orth(perm[p], perm[q]) {
                return Err(SymmetryViolation::Orthogonality { p, q });
            }
        }
    }
    let cs = ppl.cs();
    for f in cs.closed() {
        let img = f.map(perm);
        if !cs.contains(&img) {
            return Err(SymmetryViolation::ClosedSet { set: f.clone() });
        }
    }
    Ok(())
}

/// Lazy stream of every symmetry, in lexicographic order of the permutation.
pub fn enumerate_symmetries<'c, 'a>(
    ctx: &'c SearchContext<'a>,
    budget: u64,
) -> SymmetrySearch<'c, 'a> {
    ctx.search(vec![None; ctx.ppl().ground()], budget)
}

/// Collects [`enumerate_symmetries`]; fails if the budget runs out.
pub fn all_symmetries(ppl: &Ppl, budget: u64) -> Result<Vec<Symmetry>> {
    let ctx = SearchContext::new(ppl);
    enumerate_symmetries(&ctx, budget).collect()
}

/// Whether the symmetry group acts transitively on atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTransitivity {
    /// `(p, q)` with no symmetry taking `p` to `q`, if any.
    pub failing: Option<(usize, usize)>,
    /// For each atom `q`, a symmetry taking atom 0 to `q` when one exists.
    pub movers: Vec<Option<Symmetry>>,
}

impl GroupTransitivity {
    pub fn is_transitive(&self) -> bool {
        self.failing.is_none()
    }
}

/// True iff every atom can be sent to every other by some symmetry.
///
/// Symmetries form a group, so it suffices that atom 0 reaches every atom:
/// `p ↦ q` is then realised by `g_q ∘ g_p⁻¹`.
pub fn is_group_transitive(ppl: &Ppl, budget: u64) -> Result<GroupTransitivity> {
    let n = ppl.ground();
    let ctx = SearchContext::new(ppl);
    let mut movers = Vec::with_capacity(n);
    let mut failing = None;
    for q in 0..n {
        let mut fixed = vec![None; n];
        fixed[0] = Some(q);
        let found = ctx.search(fixed, budget).next().transpose()?;
        if found.is_none() && failing.is_none() {
            failing = Some((0, q));
        }
        movers.push(found);
    }
    Ok(GroupTransitivity { failing, movers })
}

#[cfg(test)]
mod tests;
