//! Named state-space generators and a seeded random generator.
//!
//! Generators are registered by name and addressed as `<name>:<arg>:..`,
//! e.g. `boolean:4`, `mo:2`, `random:6:0.5:42`.

use crate::closure::MAX_GROUND;
use crate::error::{Error, Result};
use crate::state_space::{OrthoRelation, StateSpace};

/// Attempts made by [`random_space`] before giving up on separation.
pub const MAX_SEPARATION_ATTEMPTS: usize = 10_000;

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// State transition: `state += 0x9E3779B97F4A7C15`; output is `state` passed
/// through `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
/// z *= 0x94D049BB133111EB; z ^= z >> 31`. Pinned so that seeds reproduce in
/// any implementation.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..bound` by modulo reduction; `bound > 0`.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Argument(format!(
            "size must be at least {min}, got {n}"
        )));
    }
    if n > MAX_GROUND {
        return Err(Error::Capacity {
            what: format!("{n} atoms"),
            limit: MAX_GROUND,
        });
    }
    Ok(())
}

fn letter_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (0..n).map(|i| format!("s{i}")).collect()
    }
}

/// `n` mutually orthogonal states; the property lattice is the powerset.
pub fn boolean_space(n: usize) -> Result<StateSpace> {
    check_size(n, 1)?;
    let pairs = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q)));
    StateSpace::new(letter_labels(n), OrthoRelation::from_pairs(n, pairs))
}

/// The lantern MO_n: states `a1 b1 .. an bn` with `ai ⊥ bi` only.
pub fn mo_lantern(n: usize) -> Result<StateSpace> {
    check_size(n, 2)?;
    check_size(2 * n, 2)?;
    let labels = (1..=n)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    StateSpace::new(
        labels,
        OrthoRelation::from_pairs(2 * n, (0..n).map(|i| (2 * i, 2 * i + 1))),
    )
}

/// A random separated state space. Each unordered pair `p < q`, visited in
/// lexicographic order, is made orthogonal when the next
/// [`SplitMix64::next_unit`] draw is below `density`. Relations that fail
/// separation are redrawn from the same stream, at most
/// [`MAX_SEPARATION_ATTEMPTS`] times.
pub fn random_space(n: usize, density: f64, seed: u64) -> Result<StateSpace> {
    check_size(n, 1)?;
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Argument(format!("density {density} outside [0, 1]")));
    }
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..MAX_SEPARATION_ATTEMPTS {
        let mut rel = OrthoRelation::empty(n);
        for p in 0..n {
            for q in p + 1..n {
                if rng.next_unit() < density {
                    rel.relate(p, q);
                }
            }
        }
        if rel.check().is_valid() {
            return StateSpace::new(labels, rel);
        }
    }
    Err(Error::CouldNotSeparate {
        n,
        density,
        seed,
        attempts: MAX_SEPARATION_ATTEMPTS,
    })
}

/// A named family of state spaces.
pub trait Generator: Send + Sync {
    fn name(&self) -> &'static str;
    /// Argument shape, e.g. `boolean:<n>`.
    fn usage(&self) -> &'static str;
    fn build(&self, args: &[&str]) -> Result<StateSpace>;
}

fn parse_arg<T: std::str::FromStr>(args: &[&str], i: usize, usage: &str) -> Result<T> {
    args.get(i)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Argument(format!("expected {usage}")))
}

fn expect_arity(args: &[&str], k: usize, usage: &str) -> Result<()> {
    if args.len() != k {
        return Err(Error::Argument(format!("expected {usage}")));
    }
    Ok(())
}

struct BooleanGen;

impl Generator for BooleanGen {
    fn name(&self) -> &'static str {
        "boolean"
    }
    fn usage(&self) -> &'static str {
        "boolean:<n>"
    }
    fn build(&self, args: &[&str]) -> Result<StateSpace> {
        expect_arity(args, 1, self.usage())?;
        boolean_space(parse_arg(args, 0, self.usage())?)
    }
}

struct LanternGen;

impl Generator for LanternGen {
    fn name(&self) -> &'static str {
        "mo"
    }
    fn usage(&self) -> &'static str {
        "mo:<n>"
    }
    fn build(&self, args: &[&str]) -> Result<StateSpace> {
        expect_arity(args, 1, self.usage())?;
        mo_lantern(parse_arg(args, 0, self.usage())?)
    }
}

struct RandomGen;

impl Generator for RandomGen {
    fn name(&self) -> &'static str {
        "random"
    }
    fn usage(&self) -> &'static str {
        "random:<n>:<density>:<seed>"
    }
    fn build(&self, args: &[&str]) -> Result<StateSpace> {
        expect_arity(args, 3, self.usage())?;
        random_space(
            parse_arg(args, 0, self.usage())?,
            parse_arg(args, 1, self.usage())?,
            parse_arg(args, 2, self.usage())?,
        )
    }
}

/// Generators by name, in registration order.
pub struct GeneratorRegistry {
    entries: Vec<Box<dyn Generator>>,
}

impl Default for GeneratorRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl GeneratorRegistry {
    pub fn empty() -> Self {
        GeneratorRegistry {
            entries: Vec::new(),
        }
    }

    /// `boolean`, `mo` and `random`.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(BooleanGen));
        reg.register(Box::new(LanternGen));
        reg.register(Box::new(RandomGen));
        reg
    }

    /// Adds a generator, replacing any existing one with the same name.
    pub fn register(&mut self, generator: Box<dyn Generator>) {
        self.entries.retain(|g| g.name() != generator.name());
        self.entries.push(generator);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Generator> {
        self.entries
            .iter()
            .find(|g| g.name() == name)
            .map(|g| g.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|g| g.name()).collect()
    }

    /// Builds from `<name>:<arg>:..`.
    pub fn build(&self, spec: &str) -> Result<StateSpace> {
        let mut parts = spec.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let generator = self.get(name).ok_or_else(|| {
            Error::Argument(format!(
                "unknown generator `{name}` (known: {})",
                self.names().join(", ")
            ))
        })?;
        generator.build(&args)
    }
}
