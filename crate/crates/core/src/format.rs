//! Line-oriented text formats for state spaces and ppl's.
//!
//! ```text
//! statespace v1
//! atoms a1 b1 a2 b2
//! orth a1 b1
//! orth a2 b2
//! ```
//!
//! A ppl file starts with `ppl v1` and may add `closed <label>*` lines; the
//! empty set, the singletons and the full set are implied. `#` starts a
//! comment. Serializing a parsed canonical file reproduces it byte for byte.

use std::collections::HashMap;

use crate::atomset::AtomSet;
use crate::closure::{ClosureSystem, FamilyDefect};
use crate::error::{Error, Result};
use crate::state_space::{show_set, OrthoRelation, Ppl, StateSpace};

/// A parsed input of either kind.
#[derive(Debug, Clone)]
pub enum Source {
    StateSpace(StateSpace),
    Ppl(Ppl),
}

impl Source {
    pub fn labels(&self) -> &[String] {
        match self {
            Source::StateSpace(ss) => ss.labels(),
            Source::Ppl(p) => p.labels(),
        }
    }

    /// The ppl itself, or the property lattice of the state space.
    pub fn into_ppl(self) -> Result<Ppl> {
        match self {
            Source::StateSpace(ss) => ss.property_lattice(),
            Source::Ppl(p) => Ok(p),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Source::StateSpace(ss) => serialize_statespace(ss),
            Source::Ppl(p) => serialize_ppl(p),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    StateSpace,
    Ppl,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            if ch == '#' {
                return out;
            }
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

struct Raw {
    kind: Kind,
    labels: Vec<String>,
    orth: Vec<(usize, usize)>,
    closed: Vec<(usize, Vec<usize>)>,
}

fn parse_raw(text: &str) -> Result<Raw> {
    let mut kind = None;
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut orth = Vec::new();
    let mut orth_seen = HashMap::new();
    let mut closed: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut closed_seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut body_started = false;

    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokenize(line);
        let Some(head) = toks.first() else { continue };
        let Some(k) = kind else {
            let version = toks.get(1).map(|t| t.text);
            kind = match (head.text, version, toks.len()) {
                ("statespace", Some("v1"), 2) => Some(Kind::StateSpace),
                ("ppl", Some("v1"), 2) => Some(Kind::Ppl),
                _ => {
                    return Err(syntax(
                        lineno,
                        head.column,
                        "expected header `statespace v1` or `ppl v1`",
                    ))
                }
            };
            continue;
        };
        let lookup = |t: &Token<'_>| {
            index
                .get(t.text)
                .copied()
                .ok_or_else(|| Error::UnknownLabel {
                    line: lineno,
                    label: t.text.to_string(),
                })
        };
        match head.text {
            "atoms" => {
                if body_started {
                    return Err(syntax(
                        lineno,
                        head.column,
                        "`atoms` must precede `orth` and `closed`",
                    ));
                }
                if toks.len() < 2 {
                    return Err(syntax(
                        lineno,
                        head.column,
                        "`atoms` needs at least one label",
                    ));
                }
                for t in &toks[1..] {
                    if index.contains_key(t.text) {
                        return Err(Error::Duplicate {
                            line: lineno,
                            item: format!("atom {}", t.text),
                        });
                    }
                    index.insert(t.text.to_string(), labels.len());
                    labels.push(t.text.to_string());
                }
            }
            "orth" => {
                body_started = true;
                if toks.len() != 3 {
                    return Err(syntax(
                        lineno,
                        head.column,
                        "`orth` takes exactly two labels",
                    ));
                }
                let p = lookup(&toks[1])?;
                let q = lookup(&toks[2])?;
                if p == q {
                    return Err(syntax(
                        lineno,
                        toks[2].column,
                        format!("`{}` cannot be orthogonal to itself", toks[1].text),
                    ));
                }
                let key = (p.min(q), p.max(q));
                if orth_seen.insert(key, lineno).is_some() {
                    return Err(Error::Duplicate {
                        line: lineno,
                        item: format!("orth {} {}", toks[1].text, toks[2].text),
                    });
                }
                orth.push((p, q));
            }
            "closed" if k == Kind::Ppl => {
                body_started = true;
                let mut members = Vec::new();
                for t in &toks[1..] {
                    let a = lookup(t)?;
                    if members.contains(&a) {
                        return Err(Error::Duplicate {
                            line: lineno,
                            item: format!("label {} in closed set", t.text),
                        });
                    }
                    members.push(a);
                }
                members.sort_unstable();
                if closed_seen.insert(members.clone(), lineno).is_some() {
                    return Err(Error::Duplicate {
                        line: lineno,
                        item: "closed set".to_string(),
                    });
                }
                closed.push((lineno, members));
            }
            other => {
                return Err(syntax(
                    lineno,
                    head.column,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    let Some(kind) = kind else {
        return Err(syntax(1, 1, "empty input"));
    };
    if labels.is_empty() {
        return Err(Error::Validation("no atoms declared".into()));
    }
    Ok(Raw {
        kind,
        labels,
        orth,
        closed,
    })
}

/// Parses without checking the orthogonality axioms; `validate` uses this to
/// report on invalid spaces.
pub fn parse_statespace_unchecked(text: &str) -> Result<StateSpace> {
    let raw = parse_raw(text)?;
    if raw.kind != Kind::StateSpace {
        return Err(syntax(1, 1, "expected `statespace v1`"));
    }
    let n = raw.labels.len();
    StateSpace::unchecked(raw.labels, OrthoRelation::from_pairs(n, raw.orth))
}

pub fn parse_statespace(text: &str) -> Result<StateSpace> {
    let ss = parse_statespace_unchecked(text)?;
    StateSpace::new(ss.labels().to_vec(), ss.orth().clone())
}

pub fn parse_ppl(text: &str) -> Result<Ppl> {
    let raw = parse_raw(text)?;
    if raw.kind != Kind::Ppl {
        return Err(syntax(1, 1, "expected `ppl v1`"));
    }
    ppl_from_raw(raw)
}

fn ppl_from_raw(raw: Raw) -> Result<Ppl> {
    let n = raw.labels.len();
    let mut family = vec![AtomSet::empty(n), AtomSet::full(n)];
    family.extend((0..n).map(|p| AtomSet::singleton(n, p)));
    let mut origin: HashMap<AtomSet, usize> = HashMap::new();
    for (line, members) in &raw.closed {
        let s = AtomSet::from_atoms(n, members.iter().copied());
        origin.entry(s.clone()).or_insert(*line);
        family.push(s);
    }
    let cs = ClosureSystem::from_family(n, &family).map_err(|defect| match defect {
        FamilyDefect::NotIntersectionClosed(a, b) => {
            let at = |s: &AtomSet| match origin.get(s) {
                Some(l) => format!("line {l}"),
                None => "implied".to_string(),
            };
            Error::Validation(format!(
                "closed sets {} ({}) and {} ({}) intersect in {}, which is not closed",
                show_set(&raw.labels, &a),
                at(&a),
                show_set(&raw.labels, &b),
                at(&b),
                show_set(&raw.labels, &a.intersection(&b)),
            ))
        }
        other => Error::Validation(other.to_string()),
    })?;
    Ppl::new(cs, OrthoRelation::from_pairs(n, raw.orth), raw.labels)
}

/// Parses either format, dispatching on the header.
pub fn parse_source(text: &str) -> Result<Source> {
    let raw = parse_raw(text)?;
    match raw.kind {
        Kind::StateSpace => {
            let n = raw.labels.len();
            Ok(Source::StateSpace(StateSpace::new(
                raw.labels,
                OrthoRelation::from_pairs(n, raw.orth),
            )?))
        }
        Kind::Ppl => Ok(Source::Ppl(ppl_from_raw(raw)?)),
    }
}

fn write_orth(out: &mut String, labels: &[String], orth: &OrthoRelation) {
    for (p, q) in orth.pairs() {
        out.push_str(&format!("orth {} {}\n", labels[p], labels[q]));
    }
}

pub fn serialize_statespace(ss: &StateSpace) -> String {
    let mut out = String::from("statespace v1\n");
    out.push_str(&format!("atoms {}\n", ss.labels().join(" ")));
    write_orth(&mut out, ss.labels(), ss.orth());
    out
}

pub fn serialize_ppl(ppl: &Ppl) -> String {
    let labels = ppl.labels();
    let mut out = String::from("ppl v1\n");
    out.push_str(&format!("atoms {}\n", labels.join(" ")));
    for set in ppl.cs().closed() {
        if set.len() <= 1 || set.is_full() {
            continue;
        }
        let names: Vec<&str> = set.iter().map(|i| labels[i].as_str()).collect();
        out.push_str(&format!("closed {}\n", names.join(" ")));
    }
    write_orth(&mut out, labels, ppl.orth());
    out
}
