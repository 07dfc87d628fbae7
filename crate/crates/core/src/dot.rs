//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::closure::ClosureSystem;
use crate::error::{Error, Result};
use crate::state_space::show_set;

/// Largest lattice rendered.
pub const DOT_CAP: usize = 500;

/// Hasse diagram of `cs` as a `digraph`, bottom first. Nodes are `n<id>`
/// labelled by their atom sets; elements of equal cardinality share a rank.
pub fn export_dot(cs: &ClosureSystem, labels: &[String]) -> Result<String> {
    if cs.len() > DOT_CAP {
        return Err(Error::Capacity {
            what: format!("dot export of {} elements", cs.len()),
            limit: DOT_CAP,
        });
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (id, f) in cs.closed().iter().enumerate() {
        let label = show_set(labels, f)
            .replace('\\', "\\\\")
            .replace('"', "\\\"");
        let _ = writeln!(out, "  n{id} [label=\"{label}\"];");
    }
    // closed sets are sorted by cardinality, so each rank is a contiguous run
    let closed = cs.closed();
    let mut start = 0;
    while start < closed.len() {
        let size = closed[start].len();
        let end = start
            + closed[start..]
                .iter()
                .take_while(|f| f.len() == size)
                .count();
        if end - start > 1 {
            let ids: Vec<String> = (start..end).map(|i| format!("n{i}")).collect();
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        start = end;
    }
    for (lo, hi) in cs.cover_pairs() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atomset::AtomSet;
    use crate::catalog::{boolean_space, mo_lantern};

    fn counts(dot: &str) -> (usize, usize) {
        let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        (nodes, edges)
    }

    #[test]
    fn node_and_edge_counts() {
        let mo2 = mo_lantern(2).unwrap().property_lattice().unwrap();
        assert_eq!(counts(&export_dot(mo2.cs(), mo2.labels()).unwrap()), (6, 8));
        let b3 = boolean_space(3).unwrap().property_lattice().unwrap();
        assert_eq!(counts(&export_dot(b3.cs(), b3.labels()).unwrap()), (8, 12));
        let two = ClosureSystem::from_family(2, &[AtomSet::empty(2), AtomSet::full(2)]).unwrap();
        let dot = export_dot(&two, &["x".into(), "y".into()]).unwrap();
        assert_eq!(counts(&dot), (2, 1));
        assert!(dot.contains("n1 [label=\"{x,y}\"]"));
        assert!(dot.contains("n0 -> n1;"));
    }

    #[test]
    fn labels_are_escaped() {
        let one = ClosureSystem::from_family(1, &[AtomSet::empty(1), AtomSet::full(1)]).unwrap();
        let dot = export_dot(&one, &["a\"b".into()]).unwrap();
        assert!(dot.contains(r#"label="{a\"b}""#));
    }

    #[test]
    fn large_lattices_are_refused() {
        let b9 = boolean_space(9).unwrap().property_lattice().unwrap();
        assert!(export_dot(b9.cs(), b9.labels())
            .unwrap_err()
            .is_resource_limit());
    }
}
