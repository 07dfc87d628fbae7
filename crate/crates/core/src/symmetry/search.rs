//! Backtracking over atom images.
//!
//! Atoms are assigned in index order and candidate images are tried in
//! ascending order, so permutations come out lexicographically. Candidates are
//! pruned by orthogonality degree, by per-atom membership profile (how many
//! closed sets of each size contain the atom), by orthogonality against the
//! atoms already placed, and by requiring every closed set whose largest atom
//! was just placed to map onto a closed set.

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::state_space::Ppl;

use super::Symmetry;

/// Precomputed invariants of a ppl shared by every search over it.
pub struct SearchContext<'a> {
    ppl: &'a Ppl,
    /// Images compatible with each atom's degree and profile, ascending.
    compatible: Vec<Vec<usize>>,
    /// Closed-set ids grouped by their largest atom.
    by_last: Vec<Vec<usize>>,
}

impl<'a> SearchContext<'a> {
    pub fn new(ppl: &'a Ppl) -> Self {
        let n = ppl.ground();
        let cs = ppl.cs();
        let mut profile = vec![vec![0u32; n + 1]; n];
        let mut by_last = vec![Vec::new(); n];
        for (id, f) in cs.closed().iter().enumerate() {
            let size = f.len();
            for a in f.iter() {
                profile[a][size] += 1;
            }
            if let Some(last) = f.last() {
                by_last[last].push(id);
            }
        }
        let degree: Vec<usize> = (0..n).map(|p| ppl.orth().row(p).len()).collect();
        let compatible = (0..n)
            .map(|p| {
                (0..n)
                    .filter(|&v| degree[v] == degree[p] && profile[v] == profile[p])
                    .collect()
            })
            .collect();
        SearchContext {
            ppl,
            compatible,
            by_last,
        }
    }

    pub fn ppl(&self) -> &Ppl {
        self.ppl
    }

    /// All symmetries honouring `fixed` (`fixed[p] = Some(v)` forces `p ↦ v`).
    pub fn search(&self, fixed: Vec<Option<usize>>, budget: u64) -> SymmetrySearch<'_, 'a> {
        SymmetrySearch::new(self, fixed, budget)
    }
}

/// Lazy stream of symmetries in lexicographic order.
///
/// Yields `Err(Error::Budget)` once if the node budget runs out, then stops.
pub struct SymmetrySearch<'c, 'a> {
    ctx: &'c SearchContext<'a>,
    candidates: Vec<Vec<usize>>,
    pinned: Vec<bool>,
    reserved: Vec<bool>,
    image: Vec<usize>,
    used: Vec<bool>,
    position: Vec<usize>,
    level: usize,
    nodes: u64,
    budget: u64,
    done: bool,
}

const UNSET: usize = usize::MAX;

impl<'c, 'a> SymmetrySearch<'c, 'a> {
    fn new(ctx: &'c SearchContext<'a>, fixed: Vec<Option<usize>>, budget: u64) -> Self {
        let n = ctx.ppl.ground();
        assert_eq!(fixed.len(), n, "one constraint slot per atom");
        let mut reserved = vec![false; n];
        let mut done = false;
        for v in fixed.iter().flatten() {
            if reserved[*v] {
                // two atoms forced onto the same image
                done = true;
            }
            reserved[*v] = true;
        }
        let candidates = (0..n)
            .map(|p| match fixed[p] {
                Some(v) if ctx.compatible[p].contains(&v) => vec![v],
                Some(_) => Vec::new(),
                None => ctx.compatible[p].clone(),
            })
            .collect();
        SymmetrySearch {
            ctx,
            candidates,
            pinned: fixed.iter().map(Option::is_some).collect(),
            reserved,
            image: vec![UNSET; n],
            used: vec![false; n],
            position: vec![0; n + 1],
            level: 0,
            nodes: 0,
            budget,
            done,
        }
    }

    /// Node expansions so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn consistent(&self, atom: usize, v: usize) -> bool {
        let orth = self.ctx.ppl.orth();
        (0..atom).all(|u| orth.orth(u, atom) == orth.orth(self.image[u], v))
    }

    fn closed_sets_hold(&self, atom: usize) -> bool {
        let cs = self.ctx.ppl.cs();
        self.ctx.by_last[atom].iter().all(|&id| {
            let f = &cs.closed()[id];
            let mut img = AtomSet::empty(cs.ground());
            for a in f.iter() {
                img.insert(self.image[a]);
            }
            cs.contains(&img)
        })
    }

    fn unassign(&mut self, atom: usize) {
        let v = self.image[atom];
        self.used[v] = false;
        self.image[atom] = UNSET;
    }
}

impl Iterator for SymmetrySearch<'_, '_> {
    type Item = Result<Symmetry>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.image.len();
        if self.done {
            return None;
        }
        loop {
            if self.level == n {
                let found = Symmetry::new_unchecked(self.image.clone());
                self.level -= 1;
                self.unassign(self.level);
                return Some(Ok(found));
            }
            let k = self.level;
            let mut descended = false;
            while self.position[k] < self.candidates[k].len() {
                let v = self.candidates[k][self.position[k]];
                self.position[k] += 1;
                if self.used[v] || (self.reserved[v] && !self.pinned[k]) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.done = true;
                    return Some(Err(Error::Budget { limit: self.budget }));
                }
                if !self.consistent(k, v) {
                    continue;
                }
                self.image[k] = v;
                self.used[v] = true;
                if !self.closed_sets_hold(k) {
                    self.unassign(k);
                    continue;
                }
                self.level += 1;
                self.position[self.level] = 0;
                descended = true;
                break;
            }
            if descended {
                continue;
            }
            if k == 0 {
                self.done = true;
                return None;
            }
            self.level -= 1;
            self.unassign(self.level);
        }
    }
}
