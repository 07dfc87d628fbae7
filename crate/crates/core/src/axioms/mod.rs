//! Decidable checks for the lattice axioms, each producing either a pass or a
//! replayable counterexample.
//!
//! All scans are exhaustive and visit elements in canonical id order, so the
//! first counterexample reported is deterministic.

mod registry;
mod replay;

use std::fmt;
use std::time::{Duration, Instant};

use crate::atomset::AtomSet;
use crate::closure::ClosureSystem;
use crate::state_space::Ppl;

pub use registry::{AxiomCheck, AxiomContext, AxiomRegistry};
pub use replay::replay;

/// An orthocomplementation as a map on element ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orthocomplementation {
    map: Vec<usize>,
}

impl Orthocomplementation {
    pub fn from_map(map: Vec<usize>) -> Self {
        Orthocomplementation { map }
    }

    #[inline]
    pub fn of(&self, id: usize) -> usize {
        self.map[id]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// Which distributive law failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistributiveLaw {
    /// `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`
    MeetOverJoin,
    /// `a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)`
    JoinOverMeet,
}

/// A counterexample. Element fields are closed-set ids; atom sets are included
/// where they make the violation readable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The forced complement `perp(element)` is not a closed set.
    PerpNotClosed {
        element: usize,
        perp: AtomSet,
    },
    NotInvolutive {
        element: usize,
    },
    /// `lower ≤ upper` but the complement of `upper` is not below that of `lower`.
    NotOrderReversing {
        lower: usize,
        upper: usize,
    },
    MeetNotBottom {
        element: usize,
    },
    JoinNotTop {
        element: usize,
    },
    /// Atoms `p`, `q` where `p ⊥ q` disagrees with `p ≤ q′`.
    AtomIncompatible {
        p: usize,
        q: usize,
    },
    /// `a ≤ b` but `a ∨ (b ∧ a′) = recovered ≠ b`.
    Orthomodular {
        a: usize,
        b: usize,
        recovered: AtomSet,
    },
    /// `a ∧ atom = 0` but `join` does not cover `a`: `intermediate` lies
    /// strictly between.
    Covering {
        atom: usize,
        element: usize,
        join: AtomSet,
        intermediate: AtomSet,
    },
    Distributive {
        a: usize,
        b: usize,
        c: usize,
        law: DistributiveLaw,
    },
    /// Distributive, but no compatible orthocomplementation exists.
    NotOrthocomplemented,
    /// A central element other than bottom and top.
    Central {
        z: usize,
    },
}

impl Certificate {
    /// Tab-separated rendering with atom labels.
    pub fn render(&self, cs: &ClosureSystem, labels: &[String]) -> String {
        let e = |id: usize| crate::state_space::show_set(labels, &cs.closed()[id]);
        let s = |set: &AtomSet| crate::state_space::show_set(labels, set);
        match self {
            Certificate::PerpNotClosed { element, perp } => {
                format!("perp-not-closed\telement={}\tperp={}", e(*element), s(perp))
            }
            Certificate::NotInvolutive { element } => {
                format!("not-involutive\telement={}", e(*element))
            }
            Certificate::NotOrderReversing { lower, upper } => {
                format!(
                    "not-order-reversing\tlower={}\tupper={}",
                    e(*lower),
                    e(*upper)
                )
            }
            Certificate::MeetNotBottom { element } => {
                format!("meet-not-bottom\telement={}", e(*element))
            }
            Certificate::JoinNotTop { element } => format!("join-not-top\telement={}", e(*element)),
            Certificate::AtomIncompatible { p, q } => {
                format!("atom-incompatible\tp={}\tq={}", labels[*p], labels[*q])
            }
            Certificate::Orthomodular { a, b, recovered } => {
                format!("a={}\tb={}\ta∨(b∧a')={}", e(*a), e(*b), s(recovered))
            }
            Certificate::Covering {
                atom,
                element,
                join,
                intermediate,
            } => format!(
                "p={}\ta={}\ta∨p={}\tintermediate={}",
                e(*atom),
                e(*element),
                s(join),
                s(intermediate)
            ),
            Certificate::Distributive { a, b, c, law } => format!(
                "{}\ta={}\tb={}\tc={}",
                match law {
                    DistributiveLaw::MeetOverJoin => "meet-over-join",
                    DistributiveLaw::JoinOverMeet => "join-over-meet",
                },
                e(*a),
                e(*b),
                e(*c)
            ),
            Certificate::NotOrthocomplemented => "not-orthocomplemented".to_string(),
            Certificate::Central { z } => format!("central\tz={}", e(*z)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Certificate),
    /// The check's precondition is unavailable (e.g. no orthocomplementation).
    Skipped(String),
}

/// Outcome of one axiom check.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub verdict: Verdict,
    /// Elements, pairs or triples examined.
    pub checked: u64,
    pub elapsed: Duration,
}

impl AxiomReport {
    fn timed(axiom: &'static str, start: Instant, checked: u64, verdict: Verdict) -> Self {
        AxiomReport {
            axiom,
            verdict,
            checked,
            elapsed: start.elapsed(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.verdict {
            Verdict::Fail(c) => Some(c),
            _ => None,
        }
    }

    /// `<axiom>\tpass`, `<axiom>\tfail\t<certificate>` or `<axiom>\tskip\t<reason>`.
    pub fn line(&self, cs: &ClosureSystem, labels: &[String]) -> String {
        match &self.verdict {
            Verdict::Pass => format!("{}\tpass", self.axiom),
            Verdict::Fail(c) => format!("{}\tfail\t{}", self.axiom, c.render(cs, labels)),
            Verdict::Skipped(why) => format!("{}\tskip\t{}", self.axiom, why),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail(c) => write!(f, "fail ({c:?})"),
            Verdict::Skipped(why) => write!(f, "skip ({why})"),
        }
    }
}

/// Returns the unique orthocomplementation compatible with the orthogonality,
/// or the first obstruction.
///
/// Compatibility (`p ⊥ q ⇔ p ≤ q′` on atoms) pins `q′` to the closed set
/// `perp({q})`; an order-reversing involution turns joins into meets, so every
/// `x′` is pinned to `perp(x)`. The candidate is built and then checked against
/// the four orthocomplementation requirements.
pub fn find_compatible_orthocomplementation(
    ppl: &Ppl,
) -> std::result::Result<Orthocomplementation, Certificate> {
    let cs = ppl.cs();
    let orth = ppl.orth();
    let mut map = Vec::with_capacity(cs.len());
    for (id, x) in cs.closed().iter().enumerate() {
        let perp = orth.perp(x);
        match cs.id_of(&perp) {
            Some(c) => map.push(c),
            None => return Err(Certificate::PerpNotClosed { element: id, perp }),
        }
    }
    let oc = Orthocomplementation { map };
    verify_orthocomplementation(ppl, &oc)?;
    Ok(oc)
}

/// Checks involution, order reversal, complement laws and atom compatibility.
///
/// Order reversal is checked on single-atom extensions `x ≤ cl(x ∪ {p})`.
/// Every `x < y` is reached by a chain of such steps inside `[x, y]`, so this
/// is equivalent to checking all comparable pairs.
pub fn verify_orthocomplementation(
    ppl: &Ppl,
    oc: &Orthocomplementation,
) -> std::result::Result<(), Certificate> {
    let cs = ppl.cs();
    let m = cs.len();
    if oc.map.len() != m {
        return Err(Certificate::NotInvolutive { element: 0 });
    }
    let bottom = cs.bottom().id;
    let top = cs.top().id;
    for x in 0..m {
        if oc.of(x) >= m || oc.of(oc.of(x)) != x {
            return Err(Certificate::NotInvolutive { element: x });
        }
    }
    for x in 0..m {
        let xs = &cs.closed()[x];
        for p in xs.complement().iter() {
            let mut grown = xs.clone();
            grown.insert(p);
            let y = cs.closure_id(&grown);
            if !cs.closed()[oc.of(y)].is_subset(&cs.closed()[oc.of(x)]) {
                return Err(Certificate::NotOrderReversing { lower: x, upper: y });
            }
        }
    }
    for x in 0..m {
        let xs = &cs.closed()[x];
        let cx = &cs.closed()[oc.of(x)];
        if cs.id_of(&xs.intersection(cx)) != Some(bottom) {
            return Err(Certificate::MeetNotBottom { element: x });
        }
        if cs.closure_id(&xs.union(cx)) != top {
            return Err(Certificate::JoinNotTop { element: x });
        }
    }
    let atoms = cs.atoms_of();
    for p in &atoms {
        for q in &atoms {
            let (pa, qa) = (single(&p.atoms), single(&q.atoms));
            let below = p.atoms.is_subset(&cs.closed()[oc.of(q.id)]);
            if ppl.orth().orth(pa, qa) != below {
                return Err(Certificate::AtomIncompatible { p: pa, q: qa });
            }
        }
    }
    Ok(())
}

fn single(set: &AtomSet) -> usize {
    set.first().expect("atoms are nonempty")
}

/// `a ≤ b ⇒ b = a ∨ (b ∧ a′)` over all comparable pairs.
pub fn check_orthomodular(ppl: &Ppl, oc: &Orthocomplementation) -> AxiomReport {
    let start = Instant::now();
    let cs = ppl.cs();
    let closed = cs.closed();
    let mut checked = 0;
    for (a, sa) in closed.iter().enumerate() {
        let ca = &closed[oc.of(a)];
        for (b, sb) in closed.iter().enumerate() {
            if !sa.is_subset(sb) {
                continue;
            }
            checked += 1;
            let recovered = cs.closure(&sa.union(&sb.intersection(ca)));
            if recovered != *sb {
                return AxiomReport::timed(
                    "orthomodular",
                    start,
                    checked,
                    Verdict::Fail(Certificate::Orthomodular { a, b, recovered }),
                );
            }
        }
    }
    AxiomReport::timed("orthomodular", start, checked, Verdict::Pass)
}

/// For every atom `p` and element `a` with `a ∧ p = 0`, `a ∨ p` covers `a`.
pub fn check_covering_law(cs: &ClosureSystem) -> AxiomReport {
    let start = Instant::now();
    let bottom = cs.bottom();
    let atoms: Vec<_> = cs
        .atoms_of()
        .into_iter()
        .filter(|p| p.id != bottom.id)
        .collect();
    let mut checked = 0;
    for a in cs.elements() {
        for p in &atoms {
            if cs.meet(&a, p).id != bottom.id {
                continue;
            }
            checked += 1;
            let join = cs.join(&a, p);
            if let Some(intermediate) = cs.intermediate(&a.atoms, &join.atoms) {
                return AxiomReport::timed(
                    "covering",
                    start,
                    checked,
                    Verdict::Fail(Certificate::Covering {
                        atom: p.id,
                        element: a.id,
                        join: join.atoms,
                        intermediate,
                    }),
                );
            }
        }
    }
    AxiomReport::timed("covering", start, checked, Verdict::Pass)
}

fn is_powerset(cs: &ClosureSystem) -> bool {
    cs.ground() < 63 && cs.len() as u64 == 1u64 << cs.ground()
}

/// Distributive in both directions, and orthocomplemented.
///
/// A family holding all `2ⁿ` subsets is the powerset and passes without a
/// triple scan.
pub fn check_boolean(cs: &ClosureSystem, oc: Option<&Orthocomplementation>) -> AxiomReport {
    let start = Instant::now();
    let mut checked = 0;
    if !is_powerset(cs) {
        let m = cs.len();
        let closed = cs.closed();
        let join = |x: &AtomSet, y: &AtomSet| cs.closure(&x.union(y));
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    checked += 1;
                    let (sa, sb, sc) = (&closed[a], &closed[b], &closed[c]);
                    let lhs = sa.intersection(&join(sb, sc));
                    let rhs = join(&sa.intersection(sb), &sa.intersection(sc));
                    if lhs != rhs {
                        let law = DistributiveLaw::MeetOverJoin;
                        return AxiomReport::timed(
                            "boolean",
                            start,
                            checked,
                            Verdict::Fail(Certificate::Distributive { a, b, c, law }),
                        );
                    }
                    let lhs = join(sa, &sb.intersection(sc));
                    let rhs = join(sa, sb).intersection(&join(sa, sc));
                    if lhs != rhs {
                        let law = DistributiveLaw::JoinOverMeet;
                        return AxiomReport::timed(
                            "boolean",
                            start,
                            checked,
                            Verdict::Fail(Certificate::Distributive { a, b, c, law }),
                        );
                    }
                }
            }
        }
    }
    let verdict = match oc {
        Some(_) => Verdict::Pass,
        None => Verdict::Fail(Certificate::NotOrthocomplemented),
    };
    AxiomReport::timed("boolean", start, checked, verdict)
}

/// Only bottom and top are central, where `z` is central when
/// `F = (F ∧ z) ∨ (F ∧ z′)` for every `F`.
pub fn check_irreducible(ppl: &Ppl, oc: &Orthocomplementation) -> AxiomReport {
    let start = Instant::now();
    let cs = ppl.cs();
    let closed = cs.closed();
    let (bottom, top) = (cs.bottom().id, cs.top().id);
    let mut checked = 0;
    for z in 0..cs.len() {
        if z == bottom || z == top {
            continue;
        }
        let sz = &closed[z];
        let cz = &closed[oc.of(z)];
        // Atoms are elements too: each must lie in z or in z′.
        if !sz.union(cz).is_full() {
            checked += 1;
            continue;
        }
        let central = closed.iter().all(|f| {
            checked += 1;
            cs.closure(&f.intersection(sz).union(&f.intersection(cz))) == *f
        });
        if central {
            return AxiomReport::timed(
                "irreducible",
                start,
                checked,
                Verdict::Fail(Certificate::Central { z }),
            );
        }
    }
    AxiomReport::timed("irreducible", start, checked, Verdict::Pass)
}

/// At most two elements.
pub fn check_trivial(cs: &ClosureSystem) -> bool {
    cs.len() <= 2
}

#[cfg(test)]
mod tests;
