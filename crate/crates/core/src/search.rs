//! Counterexample mining over seeded random factor pairs.
//!
//! ```text
//! search v1
//! target separated-orthomodular
//! count 200
//! seed 1
//! min-atoms 1
//! max-atoms 4
//! density 0.3 0.9
//! family random
//! ```
//!
//! Instance `i` draws from `SplitMix64(seed + i)`: the size (uniform in
//! `min-atoms..=max-atoms`) and density of the first factor, its generator
//! seed, then the same for the second factor. A hit is an instance
//! satisfying the target predicate.

use crate::axioms::{
    check_boolean, check_covering_law, check_orthomodular, check_trivial,
    find_compatible_orthocomplementation,
};
use crate::catalog::{random_space, SplitMix64};
use crate::error::{Error, Result};
use crate::format::serialize_statespace;
use crate::products::{minimal_product, separated_product};
use crate::state_space::{Ppl, StateSpace};

/// What a target says about one factor pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The factors do not meet the target's hypotheses.
    Excluded,
    Miss,
    Hit,
}

/// A predicate on factor pairs whose hits would contradict a known result.
pub trait SearchTarget: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn evaluate(&self, ss1: &StateSpace, ss2: &StateSpace) -> Result<Outcome>;
}

fn is_boolean(ppl: &Ppl) -> bool {
    let oc = find_compatible_orthocomplementation(ppl).ok();
    check_boolean(ppl.cs(), oc.as_ref()).holds()
}

fn factors(ss1: &StateSpace, ss2: &StateSpace) -> Result<(Ppl, Ppl)> {
    Ok((ss1.property_lattice()?, ss2.property_lattice()?))
}

struct SeparatedOrthomodular;

impl SearchTarget for SeparatedOrthomodular {
    fn name(&self) -> &'static str {
        "separated-orthomodular"
    }
    fn description(&self) -> &'static str {
        "separated product orthomodular, neither factor Boolean"
    }
    fn evaluate(&self, ss1: &StateSpace, ss2: &StateSpace) -> Result<Outcome> {
        let (l1, l2) = factors(ss1, ss2)?;
        if is_boolean(&l1) || is_boolean(&l2) {
            return Ok(Outcome::Excluded);
        }
        let product = separated_product(ss1, ss2)?.property_lattice()?;
        Ok(match find_compatible_orthocomplementation(&product) {
            Ok(oc) if check_orthomodular(&product, &oc).holds() => Outcome::Hit,
            _ => Outcome::Miss,
        })
    }
}

struct SeparatedCovering;

impl SearchTarget for SeparatedCovering {
    fn name(&self) -> &'static str {
        "separated-covering"
    }
    fn description(&self) -> &'static str {
        "separated product satisfies the covering law, neither factor Boolean"
    }
    fn evaluate(&self, ss1: &StateSpace, ss2: &StateSpace) -> Result<Outcome> {
        let (l1, l2) = factors(ss1, ss2)?;
        if is_boolean(&l1) || is_boolean(&l2) {
            return Ok(Outcome::Excluded);
        }
        let product = separated_product(ss1, ss2)?.property_lattice()?;
        Ok(if check_covering_law(product.cs()).holds() {
            Outcome::Hit
        } else {
            Outcome::Miss
        })
    }
}

struct MinimalOrthocomplement;

impl SearchTarget for MinimalOrthocomplement {
    fn name(&self) -> &'static str {
        "minimal-orthocomplement"
    }
    fn description(&self) -> &'static str {
        "minimal product has a compatible orthocomplementation, both factors nontrivial"
    }
    fn evaluate(&self, ss1: &StateSpace, ss2: &StateSpace) -> Result<Outcome> {
        let (l1, l2) = factors(ss1, ss2)?;
        if check_trivial(l1.cs()) || check_trivial(l2.cs()) {
            return Ok(Outcome::Excluded);
        }
        let product = minimal_product(&l1, &l2)?;
        Ok(if find_compatible_orthocomplementation(&product).is_ok() {
            Outcome::Hit
        } else {
            Outcome::Miss
        })
    }
}

struct MinimalCovering;

impl SearchTarget for MinimalCovering {
    fn name(&self) -> &'static str {
        "minimal-covering"
    }
    fn description(&self) -> &'static str {
        "minimal product satisfies the covering law, both factors nontrivial"
    }
    fn evaluate(&self, ss1: &StateSpace, ss2: &StateSpace) -> Result<Outcome> {
        let (l1, l2) = factors(ss1, ss2)?;
        if check_trivial(l1.cs()) || check_trivial(l2.cs()) {
            return Ok(Outcome::Excluded);
        }
        let product = minimal_product(&l1, &l2)?;
        Ok(if check_covering_law(product.cs()).holds() {
            Outcome::Hit
        } else {
            Outcome::Miss
        })
    }
}

/// Search targets by name, in registration order.
pub struct TargetRegistry {
    entries: Vec<Box<dyn SearchTarget>>,
}

impl Default for TargetRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl TargetRegistry {
    pub fn empty() -> Self {
        TargetRegistry {
            entries: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(SeparatedOrthomodular));
        reg.register(Box::new(SeparatedCovering));
        reg.register(Box::new(MinimalOrthocomplement));
        reg.register(Box::new(MinimalCovering));
        reg
    }

    /// Adds a target, replacing any existing one with the same name.
    pub fn register(&mut self, target: Box<dyn SearchTarget>) {
        self.entries.retain(|t| t.name() != target.name());
        self.entries.push(target);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SearchTarget> {
        self.entries
            .iter()
            .find(|t| t.name() == name)
            .map(|t| t.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|t| t.name()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub target: String,
    pub count: u64,
    pub seed: u64,
    pub min_atoms: usize,
    pub max_atoms: usize,
    pub density: (f64, f64),
}

impl SearchSpec {
    pub fn new(target: &str, count: u64, seed: u64) -> Self {
        SearchSpec {
            target: target.to_string(),
            count,
            seed,
            min_atoms: 1,
            max_atoms: 4,
            density: (0.3, 0.9),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn value<T: std::str::FromStr>(
    line: usize,
    words: &[(usize, &str)],
    i: usize,
    what: &str,
) -> Result<T> {
    let (column, text) = words
        .get(i)
        .copied()
        .ok_or_else(|| syntax(line, words[0].0, format!("`{}` needs {what}", words[0].1)))?;
    text.parse()
        .map_err(|_| syntax(line, column, format!("expected {what}, found `{text}`")))
}

/// Parses a search spec file. `target` and `count` are required.
pub fn parse_search_spec(text: &str) -> Result<SearchSpec> {
    let mut header = false;
    let mut target = None;
    let mut count = None;
    let mut spec = SearchSpec::new("", 0, 0);
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let words: Vec<(usize, &str)> = body
            .split_whitespace()
            .map(|w| (w.as_ptr() as usize - raw.as_ptr() as usize + 1, w))
            .collect();
        if words.is_empty() {
            continue;
        }
        if !header {
            if words.iter().map(|w| w.1).collect::<Vec<_>>() != ["search", "v1"] {
                return Err(syntax(line, words[0].0, "expected header `search v1`"));
            }
            header = true;
            continue;
        }
        let arity = match words[0].1 {
            "target" => {
                target = Some(value::<String>(line, &words, 1, "a target name")?);
                2
            }
            "count" => {
                count = Some(value(line, &words, 1, "an instance count")?);
                2
            }
            "seed" => {
                spec.seed = value(line, &words, 1, "a seed")?;
                2
            }
            "min-atoms" => {
                spec.min_atoms = value(line, &words, 1, "an atom count")?;
                if spec.min_atoms == 0 {
                    return Err(syntax(line, words[1].0, "min-atoms must be at least 1"));
                }
                2
            }
            "max-atoms" => {
                spec.max_atoms = value(line, &words, 1, "an atom count")?;
                if spec.max_atoms == 0 {
                    return Err(syntax(line, words[1].0, "max-atoms must be at least 1"));
                }
                2
            }
            "density" => {
                let lo: f64 = value(line, &words, 1, "a probability")?;
                let hi: f64 = value(line, &words, 2, "a probability")?;
                if !(0.0..=1.0).contains(&lo) || !(lo..=1.0).contains(&hi) {
                    return Err(syntax(line, words[1].0, "density needs 0 <= lo <= hi <= 1"));
                }
                spec.density = (lo, hi);
                3
            }
            "family" => {
                let family: String = value(line, &words, 1, "a family")?;
                if family != "random" {
                    return Err(syntax(
                        line,
                        words[1].0,
                        format!("unknown family `{family}`"),
                    ));
                }
                2
            }
            other => {
                return Err(syntax(
                    line,
                    words[0].0,
                    format!("unknown directive `{other}`"),
                ))
            }
        };
        if let Some(&(column, extra)) = words.get(arity) {
            return Err(syntax(line, column, format!("unexpected `{extra}`")));
        }
    }
    if !header {
        return Err(syntax(1, 1, "expected header `search v1`"));
    }
    spec.target = target.ok_or_else(|| Error::Validation("search spec has no `target`".into()))?;
    spec.count = count.ok_or_else(|| Error::Validation("search spec has no `count`".into()))?;
    if spec.min_atoms > spec.max_atoms {
        return Err(Error::Validation(format!(
            "min-atoms {} exceeds max-atoms {}",
            spec.min_atoms, spec.max_atoms
        )));
    }
    Ok(spec)
}

/// One drawn factor pair.
#[derive(Debug, Clone)]
pub struct Instance {
    pub index: u64,
    pub seed: u64,
    pub factors: Result<(StateSpace, StateSpace)>,
}

fn draw_factor(rng: &mut SplitMix64, spec: &SearchSpec) -> Result<StateSpace> {
    let span = spec.max_atoms.saturating_sub(spec.min_atoms) + 1;
    let n = spec.min_atoms + rng.next_below(span as u64) as usize;
    let (lo, hi) = spec.density;
    let density = lo + (hi - lo) * rng.next_unit();
    random_space(n, density, rng.next_u64())
}

/// The factor pair for instance `index`.
pub fn instance(spec: &SearchSpec, index: u64) -> Instance {
    let seed = spec.seed.wrapping_add(index);
    let mut rng = SplitMix64::new(seed);
    let factors = draw_factor(&mut rng, spec).and_then(|a| Ok((a, draw_factor(&mut rng, spec)?)));
    Instance {
        index,
        seed,
        factors,
    }
}

#[derive(Debug, Clone)]
pub struct Hit {
    pub index: u64,
    pub seed: u64,
    pub factors: (StateSpace, StateSpace),
}

#[derive(Debug, Clone, Default)]
pub struct SearchSummary {
    pub instances: u64,
    /// Factor draws that could not be separated.
    pub rejected: u64,
    pub excluded: u64,
    pub checked: u64,
    pub hits: u64,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub target: String,
    pub hits: Vec<Hit>,
    pub summary: SearchSummary,
}

impl SearchReport {
    /// Tab-separated report: each hit with both factors serialized line by
    /// line, then the summary.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for hit in &self.hits {
            out.push(format!("hit\t{}\t{}\t{}", self.target, hit.index, hit.seed));
            for (tag, ss) in [("factor1", &hit.factors.0), ("factor2", &hit.factors.1)] {
                for l in serialize_statespace(ss).lines() {
                    out.push(format!("{tag}\t{l}"));
                }
            }
        }
        let s = &self.summary;
        out.push(format!(
            "summary\t{}\tinstances={}\trejected={}\texcluded={}\tchecked={}\thits={}",
            self.target, s.instances, s.rejected, s.excluded, s.checked, s.hits
        ));
        out
    }
}

/// Runs every instance of `spec` in index order.
pub fn run_search(spec: &SearchSpec, targets: &TargetRegistry) -> Result<SearchReport> {
    let target = targets.get(&spec.target).ok_or_else(|| {
        Error::Argument(format!(
            "unknown search target `{}` (known: {})",
            spec.target,
            targets.names().join(", ")
        ))
    })?;
    let mut summary = SearchSummary::default();
    let mut hits = Vec::new();
    for index in 0..spec.count {
        summary.instances += 1;
        let inst = instance(spec, index);
        let (ss1, ss2) = match inst.factors {
            Ok(f) => f,
            Err(Error::CouldNotSeparate { .. }) => {
                summary.rejected += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match target.evaluate(&ss1, &ss2)? {
            Outcome::Excluded => summary.excluded += 1,
            Outcome::Miss => summary.checked += 1,
            Outcome::Hit => {
                summary.checked += 1;
                summary.hits += 1;
                hits.push(Hit {
                    index,
                    seed: inst.seed,
                    factors: (ss1, ss2),
                });
            }
        }
    }
    Ok(SearchReport {
        target: spec.target.clone(),
        hits,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_space, mo_lantern};

    #[test]
    fn parse_full_spec() {
        let spec = parse_search_spec(
            "# mining\nsearch v1\ntarget minimal-covering\ncount 12\nseed 7\nmax-atoms 3\ndensity 0.5 0.5\nfamily random\n",
        )
        .unwrap();
        assert_eq!(spec.target, "minimal-covering");
        assert_eq!(
            (spec.count, spec.seed, spec.min_atoms, spec.max_atoms),
            (12, 7, 1, 3)
        );
        let fixed =
            parse_search_spec("search v1\ntarget t\ncount 1\nmin-atoms 4\nmax-atoms 4\n").unwrap();
        let (a, b) = instance(&fixed, 0).factors.unwrap();
        assert_eq!((a.len(), b.len()), (4, 4));
        let err = parse_search_spec("search v1\ntarget t\ncount 1\nmin-atoms 5\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        assert_eq!(spec.density, (0.5, 0.5));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_search_spec("search v1\ntarget x\ncount many\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 3,
                    column: 7,
                    ..
                }
            ),
            "{err:?}"
        );
        let err = parse_search_spec("search v2\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        let err = parse_search_spec("search v1\ncount 1\n").unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let err = parse_search_spec("search v1\ndensity 0.9 0.2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 2,
                column: 9,
                ..
            }
        ));
        let err = parse_search_spec("search v1\nfamily lattice\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 2,
                column: 8,
                ..
            }
        ));
        let err = parse_search_spec("search v1\nseed 1 2\n").unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 2,
                column: 8,
                ..
            }
        ));
    }

    #[test]
    fn empty_search_has_empty_summary() {
        let report = run_search(
            &SearchSpec::new("separated-orthomodular", 0, 0),
            &TargetRegistry::standard(),
        )
        .unwrap();
        assert!(report.hits.is_empty());
        assert_eq!(
            report.lines(),
            ["summary\tseparated-orthomodular\tinstances=0\trejected=0\texcluded=0\tchecked=0\thits=0"]
        );
    }

    #[test]
    fn unknown_target_is_an_argument_error() {
        let err =
            run_search(&SearchSpec::new("nope", 1, 0), &TargetRegistry::standard()).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }

    #[test]
    fn instances_are_deterministic() {
        let spec = SearchSpec::new("minimal-covering", 5, 99);
        for i in 0..5 {
            let a = instance(&spec, i).factors.unwrap();
            let b = instance(&spec, i).factors.unwrap();
            assert_eq!(serialize_statespace(&a.0), serialize_statespace(&b.0));
            assert_eq!(serialize_statespace(&a.1), serialize_statespace(&b.1));
            assert!(a.0.len() <= 4 && a.1.len() <= 4);
        }
    }

    #[test]
    fn targets_on_catalog_pairs() {
        let reg = TargetRegistry::standard();
        let b1 = boolean_space(1).unwrap();
        let b2 = boolean_space(2).unwrap();
        let mo2 = mo_lantern(2).unwrap();
        let eval =
            |t: &str, a: &StateSpace, b: &StateSpace| reg.get(t).unwrap().evaluate(a, b).unwrap();
        assert_eq!(eval("separated-orthomodular", &b2, &mo2), Outcome::Excluded);
        assert_eq!(eval("separated-orthomodular", &mo2, &mo2), Outcome::Miss);
        assert_eq!(eval("separated-covering", &mo2, &mo2), Outcome::Miss);
        assert_eq!(
            eval("minimal-orthocomplement", &b1, &mo2),
            Outcome::Excluded
        );
        assert_eq!(eval("minimal-orthocomplement", &b2, &b2), Outcome::Miss);
        assert_eq!(eval("minimal-covering", &b2, &b2), Outcome::Miss);
        assert_eq!(eval("minimal-covering", &mo2, &b2), Outcome::Miss);
    }

    /// A target that hits everything, to exercise hit reporting.
    struct Always;

    impl SearchTarget for Always {
        fn name(&self) -> &'static str {
            "always"
        }
        fn description(&self) -> &'static str {
            "every pair"
        }
        fn evaluate(&self, _: &StateSpace, _: &StateSpace) -> Result<Outcome> {
            Ok(Outcome::Hit)
        }
    }

    #[test]
    fn hits_are_reported_with_factors() {
        let mut reg = TargetRegistry::standard();
        reg.register(Box::new(Always));
        let report = run_search(&SearchSpec::new("always", 2, 5), &reg).unwrap();
        let lines = report.lines();
        assert_eq!(lines[0], "hit\talways\t0\t5");
        assert_eq!(lines[1], "factor1\tstatespace v1");
        assert!(lines.iter().any(|l| l.starts_with("hit\talways\t1\t6")));
        assert!(lines.last().unwrap().ends_with("hits=2"));
    }
}
