//! Abstract finite lattices given by an order matrix, and their translation
//! into closure systems on the atoms.

use crate::atomset::AtomSet;
use crate::closure::ClosureSystem;
use crate::error::{Error, Result};

/// A finite poset given by its order matrix; `le[i][j]` means `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractLattice {
    le: Vec<Vec<bool>>,
}

impl AbstractLattice {
    /// Checks the partial-order axioms and that every pair has a meet and a
    /// join.
    pub fn new(le: Vec<Vec<bool>>) -> Result<Self> {
        let m = le.len();
        if m == 0 {
            return Err(Error::Argument(
                "lattice must have at least one element".into(),
            ));
        }
        if le.iter().any(|row| row.len() != m) {
            return Err(Error::Argument("order matrix must be square".into()));
        }
        for i in 0..m {
            if !le[i][i] {
                return Err(Error::Argument(format!("order is not reflexive at {i}")));
            }
            for j in 0..m {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::Argument(format!(
                        "order is not antisymmetric at ({i},{j})"
                    )));
                }
                for k in 0..m {
                    if le[i][j] && le[j][k] && !le[i][k] {
                        return Err(Error::Argument(format!(
                            "order is not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let lat = AbstractLattice { le };
        for a in 0..m {
            for b in a + 1..m {
                if lat.meet(a, b).is_none() {
                    return Err(Error::NotALattice(a, b, "meet"));
                }
                if lat.join(a, b).is_none() {
                    return Err(Error::NotALattice(a, b, "join"));
                }
            }
        }
        Ok(lat)
    }

    /// The inclusion order on the closed sets of a closure system.
    pub fn of_closure_system(cs: &ClosureSystem) -> Self {
        let le = cs
            .closed()
            .iter()
            .map(|a| cs.closed().iter().map(|b| a.is_subset(b)).collect())
            .collect();
        AbstractLattice { le }
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&x| self.le[x][a] && self.le[x][b])
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&x| self.le[x][g]))
    }

    fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&x| self.le[a][x] && self.le[b][x])
            .collect();
        upper
            .iter()
            .copied()
            .find(|&l| upper.iter().all(|&x| self.le[l][x]))
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&b| (0..self.len()).all(|x| self.le[b][x]))
            .expect("finite lattice has a bottom")
    }

    /// Elements covering the bottom, in index order.
    pub fn atoms(&self) -> Vec<usize> {
        let bot = self.bottom();
        (0..self.len())
            .filter(|&x| x != bot && !(0..self.len()).any(|y| y != bot && y != x && self.le[y][x]))
            .collect()
    }

    /// Join of a set of elements (bottom for the empty set).
    pub fn join_all(&self, items: &[usize]) -> usize {
        items.iter().fold(self.bottom(), |acc, &x| {
            self.join(acc, x).expect("checked lattice")
        })
    }
}

/// The closure space of an atomistic lattice: ground set = its atoms, closed
/// sets = every `F` such that any atom below `∨F` already lies in `F`.
///
/// In an atomistic lattice these are exactly the atom sets below single
/// elements, and `x ↦ {atoms ≤ x}` is an order-isomorphism onto them.
pub fn closure_space_of(lat: &AbstractLattice) -> Result<ClosureSystem> {
    let atoms = lat.atoms();
    let n = atoms.len();
    if n == 0 {
        return Err(Error::Argument("one-element lattice has no atoms".into()));
    }
    let below = |x: usize| AtomSet::from_atoms(n, (0..n).filter(|&i| lat.le(atoms[i], x)));
    let mut family = Vec::with_capacity(lat.len());
    for x in 0..lat.len() {
        let set = below(x);
        let members: Vec<usize> = set.iter().map(|i| atoms[i]).collect();
        if lat.join_all(&members) != x {
            return Err(Error::NotAtomistic { element: x });
        }
        family.push(set);
    }
    ClosureSystem::from_family(n, &family).map_err(|d| Error::InvariantViolation(d.to_string()))
}
