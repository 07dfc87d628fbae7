//! Plane transitivity: for atoms `p, q` find distinct atoms `p1, p2` and a
//! symmetry fixing the interval below `p1 ∨ p2` and sending `p` to `q`.
//!
//! Fixing the interval elementwise is searched as fixing every atom of
//! `p1 ∨ p2`: each element below is the join of its atoms, and a symmetry acts
//! on closed sets through the atom permutation.

use crate::atomset::AtomSet;
use crate::error::{Error, Result};
use crate::products::PairLayout;
use crate::state_space::Ppl;

use super::{is_symmetry, SearchContext, Symmetry};

/// A certified instance of the plane condition for the pair `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneWitness {
    pub p: usize,
    pub q: usize,
    pub p1: usize,
    pub p2: usize,
    pub f: Symmetry,
}

/// Checks every witness invariant against `ppl`.
pub fn verify_plane_witness(ppl: &Ppl, w: &PlaneWitness) -> std::result::Result<(), String> {
    let n = ppl.ground();
    if [w.p, w.q, w.p1, w.p2].iter().any(|&a| a >= n) {
        return Err("atom index out of range".into());
    }
    if w.p1 == w.p2 {
        return Err(format!("plane atoms coincide ({})", w.p1));
    }
    if let Err(v) = is_symmetry(ppl, w.f.perm()) {
        return Err(format!("not a symmetry: {v:?}"));
    }
    if w.f.image(w.p) != w.q {
        return Err(format!("f({}) = {}, expected {}", w.p, w.f.image(w.p), w.q));
    }
    let cs = ppl.cs();
    let plane = cs.closure(&AtomSet::from_atoms(n, [w.p1, w.p2]));
    if let Some(a) = plane.iter().find(|&a| w.f.image(a) != a) {
        return Err(format!(
            "atom {a} of the plane is moved to {}",
            w.f.image(a)
        ));
    }
    if let Some(f) = cs
        .closed()
        .iter()
        .find(|f| f.is_subset(&plane) && w.f.apply(f) != **f)
    {
        return Err(format!("closed set {f} below the plane is moved"));
    }
    Ok(())
}

/// Pairs `p1 < p2` in lexicographic order with their planes `cl{p1, p2}`.
fn planes(ppl: &Ppl) -> Vec<(usize, usize, AtomSet)> {
    let n = ppl.ground();
    let mut out = Vec::new();
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            out.push((p1, p2, ppl.cs().closure(&AtomSet::from_atoms(n, [p1, p2]))));
        }
    }
    out
}

fn search_pair(
    ctx: &SearchContext<'_>,
    planes: &[(usize, usize, AtomSet)],
    p: usize,
    q: usize,
    budget: u64,
) -> Result<Option<PlaneWitness>> {
    let n = ctx.ppl().ground();
    let mut spent = 0u64;
    for (p1, p2, plane) in planes {
        // p in the plane must stay put; q in the plane is already taken by itself.
        if p != q && (plane.contains(p) || plane.contains(q)) {
            continue;
        }
        let mut fixed = vec![None; n];
        for a in plane.iter() {
            fixed[a] = Some(a);
        }
        fixed[p] = Some(q);
        let mut search = ctx.search(fixed, budget - spent);
        let found = search.next();
        spent += search.nodes();
        match found {
            Some(Ok(f)) => {
                return Ok(Some(PlaneWitness {
                    p,
                    q,
                    p1: *p1,
                    p2: *p2,
                    f,
                }))
            }
            Some(Err(_)) => return Err(Error::Budget { limit: budget }),
            None => {}
        }
    }
    Ok(None)
}

/// First witness for `(p, q)` over planes in canonical order, or `None` once
/// every plane is exhausted. The budget covers the whole query.
pub fn find_plane_symmetry(
    ppl: &Ppl,
    p: usize,
    q: usize,
    budget: u64,
) -> Result<Option<PlaneWitness>> {
    let ctx = SearchContext::new(ppl);
    search_pair(&ctx, &planes(ppl), p, q, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneStatus {
    Transitive,
    /// The first ordered pair without a witness.
    Fails {
        p: usize,
        q: usize,
    },
    /// The budget ran out on this pair; nothing is claimed.
    Unknown {
        p: usize,
        q: usize,
    },
}

#[derive(Debug, Clone)]
pub struct PlaneReport {
    pub status: PlaneStatus,
    /// Witnesses for the pairs decided before the status was settled, in pair
    /// order; complete (`n²` entries) when transitive.
    pub witnesses: Vec<PlaneWitness>,
}

impl PlaneReport {
    pub fn is_transitive(&self) -> bool {
        self.status == PlaneStatus::Transitive
    }

    /// The witness for `(p, q)`, if recorded.
    pub fn witness(&self, p: usize, q: usize) -> Option<&PlaneWitness> {
        self.witnesses.iter().find(|w| w.p == p && w.q == q)
    }
}

/// Decides plane transitivity over all ordered atom pairs.
///
/// A ppl with fewer than two atoms has no distinct `p1, p2` and is reported as
/// failing at `(0, 0)`.
pub fn is_plane_transitive(ppl: &Ppl, budget: u64) -> Result<PlaneReport> {
    let n = ppl.ground();
    if n < 2 {
        return Ok(PlaneReport {
            status: PlaneStatus::Fails { p: 0, q: 0 },
            witnesses: Vec::new(),
        });
    }
    let ctx = SearchContext::new(ppl);
    let planes = planes(ppl);
    let mut witnesses = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            match search_pair(&ctx, &planes, p, q, budget) {
                Ok(Some(w)) => witnesses.push(w),
                Ok(None) => {
                    return Ok(PlaneReport {
                        status: PlaneStatus::Fails { p, q },
                        witnesses,
                    })
                }
                Err(Error::Budget { .. }) => {
                    return Ok(PlaneReport {
                        status: PlaneStatus::Unknown { p, q },
                        witnesses,
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(PlaneReport {
        status: PlaneStatus::Transitive,
        witnesses,
    })
}

/// Combines factor witnesses into a witness on a product ppl.
///
/// With `w1: r1 ↦ s1` fixing `p1` and `w2: r2 ↦ s2` fixing the plane of
/// `p2, q2`, the map `(t1, t2) ↦ (f1(t1), f2(t2))` sends `(r1, r2)` to
/// `(s1, s2)` and fixes the plane spanned by `(p1, p2)` and `(p1, q2)`. The
/// result is verified on `product`; a failure is an invariant violation.
pub fn product_plane_witness(
    w1: &PlaneWitness,
    w2: &PlaneWitness,
    layout: PairLayout,
    product: &Ppl,
) -> Result<PlaneWitness> {
    if w1.f.perm().len() != layout.n1
        || w2.f.perm().len() != layout.n2
        || product.ground() != layout.len()
    {
        return Err(Error::Argument(
            "witness sizes do not match the product layout".into(),
        ));
    }
    let perm = (0..layout.len())
        .map(|t| {
            let (i, j) = layout.split(t);
            layout.index(w1.f.image(i), w2.f.image(j))
        })
        .collect();
    let w = PlaneWitness {
        p: layout.index(w1.p, w2.p),
        q: layout.index(w1.q, w2.q),
        p1: layout.index(w1.p1, w2.p1),
        p2: layout.index(w1.p1, w2.p2),
        f: Symmetry::new_unchecked(perm),
    };
    verify_plane_witness(product, &w).map_err(|why| {
        Error::InvariantViolation(format!(
            "product witness for ({}, {}) -> ({}, {}): {why}",
            w1.p, w2.p, w1.q, w2.q
        ))
    })?;
    Ok(w)
}
