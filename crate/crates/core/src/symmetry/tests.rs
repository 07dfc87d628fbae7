use std::collections::HashSet;

use super::*;
use crate::catalog::{boolean_space, mo_lantern, random_space};
use crate::products::{separated_product, PairLayout};
use crate::state_space::StateSpace;

fn ppl(ss: StateSpace) -> Ppl {
    ss.property_lattice().unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for smaller in permutations(n - 1) {
        for pos in 0..n {
            let mut p = smaller.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

/// Filters all permutations with a direct reading of the definition.
fn symmetries_by_definition(ppl: &Ppl) -> Vec<Vec<usize>> {
    let n = ppl.ground();
    let family: HashSet<Vec<usize>> = ppl
        .cs()
        .closed()
        .iter()
        .map(|f| f.iter().collect())
        .collect();
    permutations(n)
        .into_iter()
        .filter(|perm| {
            let orth_ok = (0..n).all(|p| {
                (0..n).all(|q| ppl.orth().orth(p, q) == ppl.orth().orth(perm[p], perm[q]))
            });
            let sets_ok = family.iter().all(|f| {
                let mut img: Vec<usize> = f.iter().map(|&a| perm[a]).collect();
                img.sort();
                family.contains(&img)
            });
            orth_ok && sets_ok
        })
        .collect()
}

fn orth_preserving(ss: &StateSpace) -> Vec<Vec<usize>> {
    let n = ss.len();
    permutations(n)
        .into_iter()
        .filter(|perm| {
            (0..n).all(|p| (0..n).all(|q| ss.orth().orth(p, q) == ss.orth().orth(perm[p], perm[q])))
        })
        .collect()
}

#[test]
fn identity_and_transposition() {
    let b3 = ppl(boolean_space(3).unwrap());
    assert_eq!(is_symmetry(&b3, &[0, 1, 2]), Ok(()));
    assert_eq!(is_symmetry(&b3, &[1, 0, 2]), Ok(()));
    assert_eq!(
        is_symmetry(&b3, &[0, 0, 2]),
        Err(SymmetryViolation::NotPermutation)
    );
    assert_eq!(
        is_symmetry(&b3, &[0, 1]),
        Err(SymmetryViolation::NotPermutation)
    );
}

#[test]
fn mo2_swap_across_blocks_breaks_orthogonality() {
    // a1 b1 a2 b2: exchanging a1 and a2 alone separates a1 from b1
    let mo2 = ppl(mo_lantern(2).unwrap());
    assert_eq!(
        is_symmetry(&mo2, &[2, 1, 0, 3]),
        Err(SymmetryViolation::Orthogonality { p: 0, q: 1 })
    );
    assert_eq!(is_symmetry(&mo2, &[2, 3, 0, 1]), Ok(()));
}

#[test]
fn closed_set_violation_is_reported() {
    // every pair orthogonal, but only {a,b} among the pairs is closed
    let n = 3;
    let mut family = vec![
        AtomSet::empty(n),
        AtomSet::full(n),
        AtomSet::from_atoms(n, [0, 1]),
    ];
    family.extend((0..n).map(|a| AtomSet::singleton(n, a)));
    let cs = crate::ClosureSystem::from_family(n, &family).unwrap();
    let orth = crate::OrthoRelation::from_pairs(n, [(0, 1), (0, 2), (1, 2)]);
    let p = Ppl::new(cs, orth, vec!["a".into(), "b".into(), "c".into()]).unwrap();
    assert_eq!(
        is_symmetry(&p, &[0, 2, 1]),
        Err(SymmetryViolation::ClosedSet {
            set: AtomSet::from_atoms(n, [0, 1])
        })
    );
    assert_eq!(is_symmetry(&p, &[1, 0, 2]), Ok(()));
}

#[test]
fn counts_match_definition() {
    let cases = [
        (boolean_space(1).unwrap(), 1),
        (boolean_space(4).unwrap(), 24),
        (boolean_space(5).unwrap(), 120),
        (mo_lantern(2).unwrap(), 8),
        (mo_lantern(3).unwrap(), 48),
    ];
    for (ss, expected) in cases {
        let p = ppl(ss);
        let found: Vec<Vec<usize>> = all_symmetries(&p, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(|s| s.perm().to_vec())
            .collect();
        assert_eq!(found.len(), expected);
        assert_eq!(found, symmetries_by_definition(&p));
    }
}

#[test]
fn random_spaces_match_definition() {
    for seed in 0..60u64 {
        let n = 2 + (seed % 5) as usize;
        let p = ppl(random_space(n, 0.4, seed).unwrap());
        let found: Vec<Vec<usize>> = all_symmetries(&p, DEFAULT_BUDGET)
            .unwrap()
            .into_iter()
            .map(|s| s.perm().to_vec())
            .collect();
        assert_eq!(found, symmetries_by_definition(&p), "seed {seed}");
    }
}

#[test]
fn orthogonality_preservation_suffices_on_property_lattices() {
    let mut spaces: Vec<StateSpace> = vec![
        boolean_space(3).unwrap(),
        boolean_space(5).unwrap(),
        mo_lantern(2).unwrap(),
        mo_lantern(3).unwrap(),
    ];
    for seed in 0..100u64 {
        let n = 2 + (seed % 5) as usize;
        let density = [0.2, 0.5, 0.8][(seed % 3) as usize];
        spaces.push(random_space(n, density, seed).unwrap());
    }
    for ss in spaces {
        let p = ppl(ss.clone());
        for perm in orth_preserving(&ss) {
            assert_eq!(is_symmetry(&p, &perm), Ok(()), "{perm:?}");
        }
    }
}

#[test]
fn group_laws() {
    let p = ppl(mo_lantern(3).unwrap());
    let all = all_symmetries(&p, DEFAULT_BUDGET).unwrap();
    let set: HashSet<Symmetry> = all.iter().cloned().collect();
    assert!(set.contains(&Symmetry::identity(6)));
    for f in &all {
        assert!(set.contains(&f.inverse()));
        assert!(f.compose(&f.inverse()).is_identity());
        for g in all.iter().step_by(7) {
            assert!(set.contains(&f.compose(g)));
        }
    }
}

#[test]
fn budget_exhaustion_is_reported() {
    let p = ppl(boolean_space(6).unwrap());
    let err = all_symmetries(&p, 50).unwrap_err();
    assert!(matches!(err, crate::Error::Budget { limit: 50 }));
}

#[test]
fn group_transitivity() {
    for ss in [
        boolean_space(3).unwrap(),
        mo_lantern(2).unwrap(),
        mo_lantern(3).unwrap(),
    ] {
        let p = ppl(ss);
        let g = is_group_transitive(&p, DEFAULT_BUDGET).unwrap();
        assert!(g.is_transitive());
        for (q, f) in g.movers.iter().enumerate() {
            assert_eq!(f.as_ref().unwrap().image(0), q);
        }
    }
    let mut intransitive = 0;
    for seed in 0..40u64 {
        let p = ppl(random_space(3 + (seed % 4) as usize, 0.5, seed).unwrap());
        let orbit: HashSet<usize> = symmetries_by_definition(&p).iter().map(|f| f[0]).collect();
        let g = is_group_transitive(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.is_transitive(), orbit.len() == p.ground(), "seed {seed}");
        if let Some((_, q)) = g.failing {
            assert!(!orbit.contains(&q));
            intransitive += 1;
        }
    }
    assert!(intransitive > 0);
}

#[test]
fn plane_transitivity_ground_truth() {
    let expect = [
        (boolean_space(2).unwrap(), false),
        (boolean_space(3).unwrap(), false),
        (boolean_space(4).unwrap(), true),
        (boolean_space(5).unwrap(), true),
        (mo_lantern(2).unwrap(), false),
        (mo_lantern(3).unwrap(), false),
    ];
    for (ss, transitive) in expect {
        let p = ppl(ss);
        let report = is_plane_transitive(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(report.is_transitive(), transitive);
        for w in &report.witnesses {
            verify_plane_witness(&p, w).unwrap();
        }
        if transitive {
            assert_eq!(report.witnesses.len(), p.ground() * p.ground());
        }
    }
}

#[test]
fn boolean3_fails_on_first_moving_pair() {
    let p = ppl(boolean_space(3).unwrap());
    let report = is_plane_transitive(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(report.status, PlaneStatus::Fails { p: 0, q: 1 });
    assert!(report.witness(0, 0).is_some());
}

#[test]
fn single_atom_is_not_plane_transitive() {
    let p = ppl(boolean_space(1).unwrap());
    let report = is_plane_transitive(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(report.status, PlaneStatus::Fails { p: 0, q: 0 });
}

#[test]
fn boolean4_witness_shape() {
    let p = ppl(boolean_space(4).unwrap());
    let w = find_plane_symmetry(&p, 0, 1, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    assert_eq!((w.p1, w.p2), (2, 3));
    assert_eq!(w.f.perm(), &[1, 0, 2, 3]);
}

#[test]
fn bad_witnesses_are_rejected() {
    let p = ppl(boolean_space(4).unwrap());
    let good = find_plane_symmetry(&p, 0, 1, DEFAULT_BUDGET)
        .unwrap()
        .unwrap();
    let mut moved_plane = good.clone();
    moved_plane.p1 = 0;
    moved_plane.p2 = 2;
    assert!(verify_plane_witness(&p, &moved_plane).is_err());
    let mut wrong_target = good.clone();
    wrong_target.q = 2;
    assert!(verify_plane_witness(&p, &wrong_target).is_err());
    let mut coincide = good;
    coincide.p2 = coincide.p1;
    assert!(verify_plane_witness(&p, &coincide).is_err());
}

#[test]
fn plane_budget_gives_unknown() {
    let p = ppl(boolean_space(5).unwrap());
    let report = is_plane_transitive(&p, 3).unwrap();
    assert!(matches!(report.status, PlaneStatus::Unknown { .. }));
}

#[test]
fn product_witnesses_verify_on_separated_product() {
    let b4 = boolean_space(4).unwrap();
    let f = ppl(b4.clone());
    let product = ppl(separated_product(&b4, &b4).unwrap());
    let layout = PairLayout::new(4, 4).unwrap();
    let report = is_plane_transitive(&f, DEFAULT_BUDGET).unwrap();
    for w1 in report.witnesses.iter().step_by(3) {
        for w2 in report.witnesses.iter().step_by(5) {
            let w = product_plane_witness(w1, w2, layout, &product).unwrap();
            assert_eq!(w.p, layout.index(w1.p, w2.p));
            assert_eq!(w.q, layout.index(w1.q, w2.q));
        }
    }
}

#[test]
fn search_is_deterministic() {
    let p = ppl(random_space(6, 0.5, 11).unwrap());
    let a = all_symmetries(&p, DEFAULT_BUDGET).unwrap();
    let b = all_symmetries(&p, DEFAULT_BUDGET).unwrap();
    assert_eq!(a, b);
    let mut sorted = a.clone();
    sorted.sort();
    assert_eq!(a, sorted);
}
