use super::{
    check_boolean, check_covering_law, check_irreducible, check_orthomodular,
    find_compatible_orthocomplementation, AxiomReport, Certificate, Orthocomplementation, Verdict,
};
use crate::state_space::Ppl;
use std::time::Instant;

/// Shared input for every check: the ppl and its compatible
/// orthocomplementation, if one exists.
pub struct AxiomContext<'a> {
    pub ppl: &'a Ppl,
    pub oc: std::result::Result<Orthocomplementation, Certificate>,
}

impl<'a> AxiomContext<'a> {
    pub fn new(ppl: &'a Ppl) -> Self {
        AxiomContext {
            ppl,
            oc: find_compatible_orthocomplementation(ppl),
        }
    }

    pub fn oc(&self) -> Option<&Orthocomplementation> {
        self.oc.as_ref().ok()
    }
}

const NO_OC: &str = "no compatible orthocomplementation";

/// One named check.
pub trait AxiomCheck: Send + Sync {
    fn name(&self) -> &'static str;

    /// Quantum-logic axioms count towards a failing exit status; classifying
    /// checks (Boolean, irreducible) are informational.
    fn is_axiom(&self) -> bool;

    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport;
}

struct OrthocomplementationCheck;

impl AxiomCheck for OrthocomplementationCheck {
    fn name(&self) -> &'static str {
        "orthocomplementation"
    }
    fn is_axiom(&self) -> bool {
        true
    }
    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport {
        let start = Instant::now();
        let verdict = match &ctx.oc {
            Ok(_) => Verdict::Pass,
            Err(c) => Verdict::Fail(c.clone()),
        };
        AxiomReport::timed(self.name(), start, ctx.ppl.cs().len() as u64, verdict)
    }
}

struct OrthomodularCheck;

impl AxiomCheck for OrthomodularCheck {
    fn name(&self) -> &'static str {
        "orthomodular"
    }
    fn is_axiom(&self) -> bool {
        true
    }
    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport {
        match ctx.oc() {
            Some(oc) => check_orthomodular(ctx.ppl, oc),
            None => AxiomReport::timed(
                self.name(),
                Instant::now(),
                0,
                Verdict::Skipped(NO_OC.into()),
            ),
        }
    }
}

struct CoveringCheck;

impl AxiomCheck for CoveringCheck {
    fn name(&self) -> &'static str {
        "covering"
    }
    fn is_axiom(&self) -> bool {
        true
    }
    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport {
        check_covering_law(ctx.ppl.cs())
    }
}

struct BooleanCheck;

impl AxiomCheck for BooleanCheck {
    fn name(&self) -> &'static str {
        "boolean"
    }
    fn is_axiom(&self) -> bool {
        false
    }
    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport {
        check_boolean(ctx.ppl.cs(), ctx.oc())
    }
}

struct IrreducibleCheck;

impl AxiomCheck for IrreducibleCheck {
    fn name(&self) -> &'static str {
        "irreducible"
    }
    fn is_axiom(&self) -> bool {
        false
    }
    fn run(&self, ctx: &AxiomContext<'_>) -> AxiomReport {
        match ctx.oc() {
            Some(oc) => check_irreducible(ctx.ppl, oc),
            None => AxiomReport::timed(
                self.name(),
                Instant::now(),
                0,
                Verdict::Skipped(NO_OC.into()),
            ),
        }
    }
}

/// Checks by name, run in registration order.
pub struct AxiomRegistry {
    checks: Vec<Box<dyn AxiomCheck>>,
}

impl Default for AxiomRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl AxiomRegistry {
    pub fn empty() -> Self {
        AxiomRegistry { checks: Vec::new() }
    }

    /// orthocomplementation, orthomodular, covering, boolean, irreducible.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(OrthocomplementationCheck));
        reg.register(Box::new(OrthomodularCheck));
        reg.register(Box::new(CoveringCheck));
        reg.register(Box::new(BooleanCheck));
        reg.register(Box::new(IrreducibleCheck));
        reg
    }

    pub fn register(&mut self, check: Box<dyn AxiomCheck>) {
        self.checks.retain(|c| c.name() != check.name());
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Option<&dyn AxiomCheck> {
        self.checks
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn AxiomCheck> {
        self.checks.iter().map(|c| c.as_ref())
    }

    /// Runs every check; each report is paired with the check's `is_axiom`.
    pub fn run_all(&self, ppl: &Ppl) -> Vec<(AxiomReport, bool)> {
        let ctx = AxiomContext::new(ppl);
        self.checks
            .iter()
            .map(|c| (c.run(&ctx), c.is_axiom()))
            .collect()
    }
}
