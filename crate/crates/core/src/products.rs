//! Separated and minimal products.
//!
//! Both products live on `Σ₁ × Σ₂` with pair `(i, j)` stored at index
//! `i·n₂ + j` and labelled `(x,y)`, and share the orthogonality
//! `(p₁,p₂) ⊥ (q₁,q₂) ⇔ p₁ ⊥ q₁ or p₂ ⊥ q₂`.

use crate::atomset::AtomSet;
use crate::closure::{meet_closure_capped, DEFAULT_FAMILY_CAP, MAX_GROUND};
use crate::error::{Error, Result};
use crate::state_space::{OrthoRelation, Ppl, StateSpace};

/// Index arithmetic for a product ground set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairLayout {
    pub n1: usize,
    pub n2: usize,
}

impl PairLayout {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        match n1.checked_mul(n2) {
            Some(n) if n <= MAX_GROUND => Ok(PairLayout { n1, n2 }),
            _ => Err(Error::Capacity {
                what: format!("product of {n1} and {n2} atoms"),
                limit: MAX_GROUND,
            }),
        }
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n2 + j
    }

    #[inline]
    pub fn split(&self, t: usize) -> (usize, usize) {
        (t / self.n2, t % self.n2)
    }

    /// `F₁ × F₂` as an atom set of the product.
    pub fn rectangle(&self, f1: &AtomSet, f2: &AtomSet) -> AtomSet {
        let mut out = AtomSet::empty(self.len());
        for i in f1.iter() {
            for j in f2.iter() {
                out.insert(self.index(i, j));
            }
        }
        out
    }

    /// Projection of a product set onto the first coordinate.
    pub fn project_first(&self, set: &AtomSet) -> AtomSet {
        AtomSet::from_atoms(self.n1, set.iter().map(|t| self.split(t).0))
    }

    pub fn project_second(&self, set: &AtomSet) -> AtomSet {
        AtomSet::from_atoms(self.n2, set.iter().map(|t| self.split(t).1))
    }

    pub fn labels(&self, l1: &[String], l2: &[String]) -> Vec<String> {
        let mut out = Vec::with_capacity(self.len());
        for x in l1 {
            for y in l2 {
                out.push(format!("({x},{y})"));
            }
        }
        out
    }
}

/// `(p₁,p₂) ⊥ (q₁,q₂)` iff `p₁ ⊥ q₁` or `p₂ ⊥ q₂`.
pub fn product_orthogonality(o1: &OrthoRelation, o2: &OrthoRelation) -> Result<OrthoRelation> {
    let layout = PairLayout::new(o1.len(), o2.len())?;
    let n = layout.len();
    let mut rows = Vec::with_capacity(n);
    for t in 0..n {
        let (p1, p2) = layout.split(t);
        let left = layout.rectangle(o1.row(p1), &AtomSet::full(o2.len()));
        let right = layout.rectangle(&AtomSet::full(o1.len()), o2.row(p2));
        rows.push(left.union(&right));
    }
    Ok(OrthoRelation::from_rows(rows))
}

/// The state space `(Σ₁ × Σ₂, ⊥_sep)`.
pub fn separated_product(ss1: &StateSpace, ss2: &StateSpace) -> Result<StateSpace> {
    let layout = PairLayout::new(ss1.len(), ss2.len())?;
    let orth = product_orthogonality(ss1.orth(), ss2.orth())?;
    StateSpace::new(layout.labels(ss1.labels(), ss2.labels()), orth)
}

/// The minimal product with the default family cap.
pub fn minimal_product(ppl1: &Ppl, ppl2: &Ppl) -> Result<Ppl> {
    minimal_product_capped(ppl1, ppl2, DEFAULT_FAMILY_CAP)
}

/// The product of the factor closure spaces: the coarsest closure structure
/// on `Σ₁ × Σ₂` making both projections continuous, generated by the
/// cylinders `F × Σ₂` and `Σ₁ × F` over factor-closed `F`.
pub fn minimal_product_capped(ppl1: &Ppl, ppl2: &Ppl, cap: usize) -> Result<Ppl> {
    let layout = PairLayout::new(ppl1.ground(), ppl2.ground())?;
    let all1 = AtomSet::full(layout.n1);
    let all2 = AtomSet::full(layout.n2);
    let mut generators = Vec::with_capacity(ppl1.cs().len() + ppl2.cs().len());
    for f in ppl1.cs().closed() {
        generators.push(layout.rectangle(f, &all2));
    }
    for f in ppl2.cs().closed() {
        generators.push(layout.rectangle(&all1, f));
    }
    let cs = meet_closure_capped(&generators, layout.len(), cap)?;
    let orth = product_orthogonality(ppl1.orth(), ppl2.orth())?;
    Ppl::new(cs, orth, layout.labels(ppl1.labels(), ppl2.labels()))
}
