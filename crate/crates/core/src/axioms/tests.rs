use super::*;
use crate::catalog::{boolean_space, mo_lantern, random_space};
use crate::products::{minimal_product, separated_product};

fn ppl_of(ss: crate::state_space::StateSpace) -> Ppl {
    ss.property_lattice().unwrap()
}

fn boolean(n: usize) -> Ppl {
    ppl_of(boolean_space(n).unwrap())
}

fn mo2() -> Ppl {
    ppl_of(mo_lantern(2).unwrap())
}

fn set(n: usize, atoms: &[usize]) -> AtomSet {
    AtomSet::from_atoms(n, atoms.iter().copied())
}

// Naive references: meets and joins by scanning the family.

fn join_scan(cs: &ClosureSystem, a: &AtomSet, b: &AtomSet) -> AtomSet {
    let u = a.union(b);
    cs.closed()
        .iter()
        .filter(|f| u.is_subset(f))
        .fold(AtomSet::full(cs.ground()), |acc, f| acc.intersection(f))
}

fn meet_scan(cs: &ClosureSystem, a: &AtomSet, b: &AtomSet) -> AtomSet {
    let i = a.intersection(b);
    cs.closed()
        .iter()
        .filter(|f| f.is_subset(&i))
        .max_by_key(|f| f.len())
        .unwrap()
        .clone()
}

fn naive_orthomodular(cs: &ClosureSystem, oc: &Orthocomplementation) -> bool {
    let c = cs.closed();
    for a in 0..c.len() {
        for b in 0..c.len() {
            if c[a].is_subset(&c[b]) {
                let m = meet_scan(cs, &c[b], &c[oc.of(a)]);
                if join_scan(cs, &c[a], &m) != c[b] {
                    return false;
                }
            }
        }
    }
    true
}

fn naive_covering(cs: &ClosureSystem) -> bool {
    let c = cs.closed();
    let bottom = c[0].clone();
    let atoms: Vec<&AtomSet> = c
        .iter()
        .filter(|x| **x != bottom && !c.iter().any(|y| *y != bottom && y.is_proper_subset(x)))
        .collect();
    for a in c {
        for p in &atoms {
            if meet_scan(cs, a, p) != bottom {
                continue;
            }
            let j = join_scan(cs, a, p);
            let covers = a.is_proper_subset(&j)
                && !c
                    .iter()
                    .any(|x| a.is_proper_subset(x) && x.is_proper_subset(&j));
            if !covers {
                return false;
            }
        }
    }
    true
}

/// All involutions of `0..m`.
fn involutions(m: usize) -> Vec<Vec<usize>> {
    fn go(map: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        match map.iter().position(|x| x.is_none()) {
            None => out.push(map.iter().map(|x| x.unwrap()).collect()),
            Some(i) => {
                map[i] = Some(i);
                go(map, out);
                for j in i + 1..map.len() {
                    if map[j].is_none() {
                        map[i] = Some(j);
                        map[j] = Some(i);
                        go(map, out);
                        map[j] = None;
                    }
                }
                map[i] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; m], &mut out);
    out
}

fn compatible_by_definition(ppl: &Ppl, map: &[usize]) -> bool {
    let cs = ppl.cs();
    let c = cs.closed();
    let m = c.len();
    let bottom = &c[0];
    for x in 0..m {
        for y in 0..m {
            if c[x].is_subset(&c[y]) && !c[map[y]].is_subset(&c[map[x]]) {
                return false;
            }
        }
        if meet_scan(cs, &c[x], &c[map[x]]) != *bottom
            || !join_scan(cs, &c[x], &c[map[x]]).is_full()
        {
            return false;
        }
    }
    let n = cs.ground();
    for p in 0..n {
        for q in 0..n {
            let qid = cs.id_of(&AtomSet::singleton(n, q)).unwrap();
            if ppl.orth().orth(p, q) != c[map[qid]].contains(p) {
                return false;
            }
        }
    }
    true
}

#[test]
fn involution_enumeration_counts() {
    // telephone numbers
    let counts: Vec<usize> = (1..=6).map(|m| involutions(m).len()).collect();
    assert_eq!(counts, [1, 2, 4, 10, 26, 76]);
}

#[test]
fn property_lattices_have_the_perp_orthocomplement() {
    for ppl in [
        boolean(1),
        boolean(3),
        mo2(),
        ppl_of(random_space(7, 0.6, 5).unwrap()),
    ] {
        let oc = find_compatible_orthocomplementation(&ppl).unwrap();
        for (id, x) in ppl.cs().closed().iter().enumerate() {
            assert_eq!(ppl.cs().closed()[oc.of(id)], ppl.orth().perp(x));
        }
    }
}

#[test]
fn minimal_b2_b2_has_no_orthocomplement() {
    let b2 = boolean(2);
    let prod = minimal_product(&b2, &b2).unwrap();
    let cert = find_compatible_orthocomplementation(&prod).unwrap_err();
    // {(a,a)}⊥ = {(a,b),(b,a),(b,b)} is not a rectangle
    assert_eq!(
        cert,
        Certificate::PerpNotClosed {
            element: 1,
            perp: set(4, &[1, 2, 3])
        }
    );
    assert!(replay(&cert, &prod, None));
}

#[test]
fn single_atom_two_element_lattice() {
    let one = boolean(1);
    assert_eq!(one.cs().len(), 2);
    let oc = find_compatible_orthocomplementation(&one).unwrap();
    assert_eq!(oc.map(), &[1, 0]);
    assert!(check_orthomodular(&one, &oc).holds());
    assert!(check_covering_law(one.cs()).holds());
    assert!(check_boolean(one.cs(), Some(&oc)).holds());
    assert!(check_irreducible(&one, &oc).holds());
    assert!(check_trivial(one.cs()));
}

#[test]
fn boolean_families_pass() {
    for n in 1..=4 {
        let ppl = boolean(n);
        let oc = find_compatible_orthocomplementation(&ppl).unwrap();
        assert!(check_orthomodular(&ppl, &oc).holds());
        assert!(check_covering_law(ppl.cs()).holds());
        assert!(check_boolean(ppl.cs(), Some(&oc)).holds());
        assert!(naive_orthomodular(ppl.cs(), &oc));
    }
}

#[test]
fn mo2_profile() {
    let ppl = mo2();
    let oc = find_compatible_orthocomplementation(&ppl).unwrap();
    assert!(check_orthomodular(&ppl, &oc).holds());
    assert!(check_covering_law(ppl.cs()).holds());
    let boolean = check_boolean(ppl.cs(), Some(&oc));
    let cert = boolean.certificate().expect("MO2 is not distributive");
    assert!(replay(cert, &ppl, Some(&oc)));
    assert!(check_irreducible(&ppl, &oc).holds());
    assert!(!check_trivial(ppl.cs()));
}

#[test]
fn boolean_two_is_reducible() {
    let ppl = boolean(2);
    let oc = find_compatible_orthocomplementation(&ppl).unwrap();
    let report = check_irreducible(&ppl, &oc);
    assert_eq!(report.certificate(), Some(&Certificate::Central { z: 1 }));
    assert_eq!(ppl.cs().closed()[1], set(2, &[0]));
    assert!(replay(report.certificate().unwrap(), &ppl, Some(&oc)));
}

#[test]
fn trivial_families() {
    assert!(check_trivial(
        &crate::closure::meet_closure(&[], 2).unwrap()
    ));
    assert!(check_trivial(boolean(1).cs()));
    assert!(!check_trivial(mo2().cs()));
}

#[test]
fn separated_mo2_mo2_fails_orthomodularity_and_covering() {
    let ss = separated_product(&mo_lantern(2).unwrap(), &mo_lantern(2).unwrap()).unwrap();
    let ppl = ss.property_lattice().unwrap();
    let oc = find_compatible_orthocomplementation(&ppl).unwrap();
    let om = check_orthomodular(&ppl, &oc);
    assert!(!naive_orthomodular(ppl.cs(), &oc));
    assert!(replay(om.certificate().unwrap(), &ppl, Some(&oc)));
    let cov = check_covering_law(ppl.cs());
    assert!(!naive_covering(ppl.cs()));
    assert!(replay(cov.certificate().unwrap(), &ppl, None));
}

#[test]
fn minimal_b2_b2_covering_certificate() {
    let b2 = boolean(2);
    let prod = minimal_product(&b2, &b2).unwrap();
    let report = check_covering_law(prod.cs());
    let cs = prod.cs();
    match report.certificate().unwrap() {
        Certificate::Covering {
            atom,
            element,
            join,
            intermediate,
        } => {
            assert_eq!(cs.closed()[*element], set(4, &[0]));
            assert_eq!(cs.closed()[*atom], set(4, &[3]));
            assert!(join.is_full());
            assert_eq!(*intermediate, set(4, &[0, 1]));
        }
        other => panic!("unexpected certificate {other:?}"),
    }
    assert!(replay(report.certificate().unwrap(), &prod, None));
    assert!(!naive_covering(cs));
}

#[test]
fn checkers_agree_with_naive_references() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let n = 1 + (seed % 8) as usize;
        let density = 0.35 + (seed % 5) as f64 * 0.15;
        let Ok(ss) = random_space(n, density, seed) else {
            continue;
        };
        let ppl = ss.property_lattice().unwrap();
        let oc = find_compatible_orthocomplementation(&ppl).unwrap();
        let om = check_orthomodular(&ppl, &oc);
        assert_eq!(om.holds(), naive_orthomodular(ppl.cs(), &oc), "seed {seed}");
        if let Some(c) = om.certificate() {
            assert!(replay(c, &ppl, Some(&oc)));
        }
        let cov = check_covering_law(ppl.cs());
        assert_eq!(cov.holds(), naive_covering(ppl.cs()), "seed {seed}");
        if let Some(c) = cov.certificate() {
            assert!(replay(c, &ppl, None));
        }
        for report in [
            check_boolean(ppl.cs(), Some(&oc)),
            check_irreducible(&ppl, &oc),
        ] {
            if let Some(c) = report.certificate() {
                assert!(replay(c, &ppl, Some(&oc)));
            }
        }
        checked += 1;
    }
    assert!(checked > 200);
}

#[test]
fn forced_candidate_is_the_only_orthocomplement() {
    let mut instances = vec![boolean(1), boolean(2), boolean(3), mo2()];
    let b2 = boolean(2);
    instances.push(minimal_product(&b2, &b2).unwrap());
    instances.push(minimal_product(&boolean(1), &b2).unwrap());
    for seed in 0..60u64 {
        if let Ok(ss) = random_space(2 + (seed % 3) as usize, 0.6, seed) {
            instances.push(ss.property_lattice().unwrap());
        }
    }
    let mut tried = 0;
    for ppl in instances.iter().filter(|p| p.cs().len() <= 10) {
        let found: Vec<Vec<usize>> = involutions(ppl.cs().len())
            .into_iter()
            .filter(|m| compatible_by_definition(ppl, m))
            .collect();
        match find_compatible_orthocomplementation(ppl) {
            Ok(oc) => assert_eq!(found, vec![oc.map().to_vec()]),
            Err(_) => assert!(found.is_empty()),
        }
        tried += 1;
    }
    assert!(tried >= 20);
}

#[test]
fn bogus_certificates_do_not_replay() {
    let ppl = boolean(3);
    let oc = find_compatible_orthocomplementation(&ppl).unwrap();
    let fake = Certificate::Orthomodular {
        a: 0,
        b: 7,
        recovered: AtomSet::empty(3),
    };
    assert!(!replay(&fake, &ppl, Some(&oc)));
    assert!(!replay(&Certificate::Central { z: 99 }, &ppl, Some(&oc)));
    assert!(!replay(&Certificate::NotOrthocomplemented, &ppl, None));
}

#[test]
fn registry_runs_in_order() {
    let reg = AxiomRegistry::standard();
    assert_eq!(
        reg.names(),
        [
            "orthocomplementation",
            "orthomodular",
            "covering",
            "boolean",
            "irreducible"
        ]
    );
    let ppl = mo2();
    let results = reg.run_all(&ppl);
    let verdicts: Vec<bool> = results.iter().map(|(r, _)| r.holds()).collect();
    assert_eq!(verdicts, [true, true, true, false, true]);

    let b2 = boolean(2);
    let prod = minimal_product(&b2, &b2).unwrap();
    let results = reg.run_all(&prod);
    assert!(matches!(results[1].0.verdict, Verdict::Skipped(_)));
    assert!(!results[2].0.holds());
}
