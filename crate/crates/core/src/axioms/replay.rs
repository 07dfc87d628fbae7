//! Independent re-evaluation of certificates.
//!
//! Joins here are computed by scanning every closed superset rather than
//! through the closure basis, so a replay does not share code paths with the
//! checkers that produced the certificate.

use super::{Certificate, DistributiveLaw, Orthocomplementation};
use crate::atomset::AtomSet;
use crate::closure::ClosureSystem;
use crate::state_space::Ppl;

fn join_scan(cs: &ClosureSystem, a: &AtomSet, b: &AtomSet) -> AtomSet {
    let u = a.union(b);
    let mut out = AtomSet::full(cs.ground());
    for f in cs.closed() {
        if u.is_subset(f) {
            out.intersect_with(f);
        }
    }
    out
}

fn bottom(cs: &ClosureSystem) -> AtomSet {
    cs.closed()
        .iter()
        .fold(AtomSet::full(cs.ground()), |acc, f| acc.intersection(f))
}

/// True iff the certificate still exhibits its violation on `ppl`.
///
/// `oc` is the orthocomplementation the original check was given, where it
/// took one.
pub fn replay(cert: &Certificate, ppl: &Ppl, oc: Option<&Orthocomplementation>) -> bool {
    let cs = ppl.cs();
    let closed = cs.closed();
    let get = |id: usize| closed.get(id);
    let comp = |id: usize| oc.and_then(|oc| oc.map().get(id)).and_then(|&c| get(c));
    match cert {
        Certificate::PerpNotClosed { element, perp } => match get(*element) {
            Some(x) => *perp == ppl.orth().perp(x) && !closed.contains(perp),
            None => false,
        },
        Certificate::NotInvolutive { element } => match oc {
            Some(oc) => {
                oc.map().len() != closed.len()
                    || oc.map().get(*element).and_then(|&c| oc.map().get(c)) != Some(element)
            }
            None => false,
        },
        Certificate::NotOrderReversing { lower, upper } => {
            match (get(*lower), get(*upper), comp(*lower), comp(*upper)) {
                (Some(x), Some(y), Some(cx), Some(cy)) => x.is_subset(y) && !cy.is_subset(cx),
                _ => false,
            }
        }
        Certificate::MeetNotBottom { element } => match (get(*element), comp(*element)) {
            (Some(x), Some(cx)) => x.intersection(cx) != bottom(cs),
            _ => false,
        },
        Certificate::JoinNotTop { element } => match (get(*element), comp(*element)) {
            (Some(x), Some(cx)) => !join_scan(cs, x, cx).is_full(),
            _ => false,
        },
        Certificate::AtomIncompatible { p, q } => {
            let n = cs.ground();
            if *p >= n || *q >= n {
                return false;
            }
            let qid = closed.iter().position(|f| *f == AtomSet::singleton(n, *q));
            match qid.and_then(comp) {
                Some(cq) => ppl.orth().orth(*p, *q) != cq.contains(*p),
                None => false,
            }
        }
        Certificate::Orthomodular { a, b, recovered } => match (get(*a), get(*b), comp(*a)) {
            (Some(sa), Some(sb), Some(ca)) => {
                let r = join_scan(cs, sa, &sb.intersection(ca));
                sa.is_subset(sb) && r == *recovered && r != *sb
            }
            _ => false,
        },
        Certificate::Covering {
            atom,
            element,
            join,
            intermediate,
        } => match (get(*atom), get(*element)) {
            (Some(p), Some(a)) => {
                let is_atom = !p.is_empty()
                    && !closed
                        .iter()
                        .any(|f| !f.is_empty() && f.is_proper_subset(p));
                is_atom
                    && a.intersection(p) == bottom(cs)
                    && join_scan(cs, a, p) == *join
                    && closed.contains(intermediate)
                    && a.is_proper_subset(intermediate)
                    && intermediate.is_proper_subset(join)
            }
            _ => false,
        },
        Certificate::Distributive { a, b, c, law } => match (get(*a), get(*b), get(*c)) {
            (Some(sa), Some(sb), Some(sc)) => match law {
                DistributiveLaw::MeetOverJoin => {
                    sa.intersection(&join_scan(cs, sb, sc))
                        != join_scan(cs, &sa.intersection(sb), &sa.intersection(sc))
                }
                DistributiveLaw::JoinOverMeet => {
                    join_scan(cs, sa, &sb.intersection(sc))
                        != join_scan(cs, sa, sb).intersection(&join_scan(cs, sa, sc))
                }
            },
            _ => false,
        },
        Certificate::NotOrthocomplemented => {
            super::find_compatible_orthocomplementation(ppl).is_err()
        }
        Certificate::Central { z } => match (get(*z), comp(*z)) {
            (Some(sz), Some(cz)) => {
                let nontrivial = *sz != bottom(cs) && !sz.is_full();
                nontrivial
                    && closed
                        .iter()
                        .all(|f| join_scan(cs, &f.intersection(sz), &f.intersection(cz)) == *f)
            }
            _ => false,
        },
    }
}
