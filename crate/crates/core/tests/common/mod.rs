//! Reference implementations on `u64` bitmasks, sharing no code with the
//! library's closure engine. Ground sets here never exceed 64 atoms.
#![allow(dead_code)]

use std::collections::HashSet;

use orthlab::catalog::{boolean_space, mo_lantern, random_space};
use orthlab::{AtomSet, ClosureSystem, StateSpace};

pub type Mask = u64;

pub fn mask(set: &AtomSet) -> Mask {
    set.iter().fold(0, |m, a| m | 1 << a)
}

pub fn full(n: usize) -> Mask {
    if n == 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

pub fn family(cs: &ClosureSystem) -> Vec<Mask> {
    let mut out: Vec<Mask> = cs.closed().iter().map(mask).collect();
    out.sort_unstable();
    out
}

/// `rows[p]` = atoms orthogonal to `p`.
pub fn orth_rows(ss: &StateSpace) -> Vec<Mask> {
    let n = ss.len();
    (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| ss.orth().orth(p, q))
                .fold(0, |m, q| m | 1 << q)
        })
        .collect()
}

/// Atoms orthogonal to every member of `a`.
pub fn perp(rows: &[Mask], a: Mask) -> Mask {
    (0..rows.len())
        .filter(|&q| rows[q] & a == a)
        .fold(0, |m, q| m | 1 << q)
}

/// `{A ⊆ Σ | A = A⊥⊥}` by enumerating all subsets.
pub fn brute_lattice(rows: &[Mask]) -> Vec<Mask> {
    let n = rows.len();
    let mut out: Vec<Mask> = (0..1u64 << n)
        .filter(|&a| perp(rows, perp(rows, a)) == a)
        .collect();
    out.sort_unstable();
    out
}

/// Smallest member of a Moore family containing `a`.
pub fn closure(family: &[Mask], a: Mask) -> Mask {
    family
        .iter()
        .filter(|&&f| f & a == a)
        .fold(!0, |m, &f| m & f)
}

/// `{F₁ × F₂}` over both families with index `i·n₂ + j`; empty products
/// collapse to the empty set.
pub fn rectangles(f1: &[Mask], f2: &[Mask], n2: usize) -> Vec<Mask> {
    let mut out = HashSet::new();
    for &a in f1 {
        for &b in f2 {
            let mut r = 0u64;
            for i in 0..64 {
                if a >> i & 1 == 1 {
                    r |= b << (i * n2);
                }
            }
            out.insert(r);
        }
    }
    let mut out: Vec<Mask> = out.into_iter().collect();
    out.sort_unstable();
    out
}

pub fn apply(perm: &[usize], a: Mask) -> Mask {
    perm.iter()
        .enumerate()
        .filter(|&(i, _)| a >> i & 1 == 1)
        .fold(0, |m, (_, &v)| m | 1 << v)
}

/// Both symmetry conditions read off the definition.
pub fn is_symmetry(family: &HashSet<Mask>, rows: &[Mask], perm: &[usize]) -> bool {
    let n = rows.len();
    let orth_ok =
        (0..n).all(|p| (0..n).all(|q| (rows[p] >> q & 1) == (rows[perm[p]] >> perm[q] & 1)));
    orth_ok && family.iter().all(|&f| family.contains(&apply(perm, f)))
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// First ordered pair `(p, q)` with no plane witness, by trying every
/// permutation; `None` when plane transitive.
pub fn plane_failure(family: &[Mask], rows: &[Mask]) -> Option<(usize, usize)> {
    let n = rows.len();
    if n < 2 {
        return Some((0, 0));
    }
    let set: HashSet<Mask> = family.iter().copied().collect();
    let symmetries: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| is_symmetry(&set, rows, p))
        .collect();
    for p in 0..n {
        for q in 0..n {
            let ok = (0..n).any(|p1| {
                (p1 + 1..n).any(|p2| {
                    let plane = closure(family, 1 << p1 | 1 << p2);
                    symmetries.iter().any(|f| {
                        f[p] == q
                            && family
                                .iter()
                                .filter(|&&g| g & plane == g)
                                .all(|&g| (0..n).filter(|&a| g >> a & 1 == 1).all(|a| f[a] == a))
                    })
                })
            });
            if !ok {
                return Some((p, q));
            }
        }
    }
    None
}

/// Named catalog factors used for product-level checks.
pub fn catalog() -> Vec<(String, StateSpace)> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push((format!("boolean:{n}"), boolean_space(n).unwrap()));
    }
    for n in 2..=4 {
        out.push((format!("mo:{n}"), mo_lantern(n).unwrap()));
    }
    for (n, d, s) in [(3, 0.6, 1), (4, 0.5, 2), (5, 0.5, 3), (4, 0.7, 4)] {
        out.push((
            format!("random:{n}:{d}:{s}"),
            random_space(n, d, s).unwrap(),
        ));
    }
    out
}
