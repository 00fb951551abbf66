use std::fmt::{self, Write as _};

use super::normalize::{normalize_traced, RewriteStep};
use super::{Expr, OpcalcError, RuleSet};

/// A single "this expression normalizes to zero" claim and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub label: String,
    pub rules: String,
    pub statement: Expr,
    pub steps: Vec<RewriteStep>,
    /// The canonical form; zero iff the claim is verified.
    pub residual: Expr,
}

impl Obligation {
    pub fn verified(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Named group of obligations with a full rewrite trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLedger {
    pub name: String,
    pub description: String,
    pub obligations: Vec<Obligation>,
}

impl ProofLedger {
    pub fn new(name: impl Into<String>, description: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
            obligations: Vec::new(),
        }
    }

    /// VERIFIED iff every obligation reduced to zero (and there is at least one).
    pub fn verified(&self) -> bool {
        !self.obligations.is_empty() && self.obligations.iter().all(Obligation::verified)
    }

    pub fn status(&self) -> &'static str {
        if self.verified() {
            "VERIFIED"
        } else {
            "RESIDUAL"
        }
    }

    pub fn step_count(&self) -> usize {
        self.obligations.iter().map(|o| o.steps.len()).sum()
    }

    /// Normalizes `statement` under `rules` and records the outcome.
    pub fn prove(
        mut self,
        label: impl Into<String>,
        statement: Expr,
        rules: &RuleSet,
    ) -> Result<Self, OpcalcError> {
        let (residual, steps) = normalize_traced(&statement, rules)?;
        self.obligations.push(Obligation {
            label: label.into(),
            rules: rules.name().to_string(),
            statement,
            steps,
            residual,
        });
        Ok(self)
    }

    /// Structured text report, one rewrite step per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ledger: {}", self.name);
        let _ = writeln!(out, "description: {}", self.description);
        let _ = writeln!(out, "status: {}", self.status());
        for (k, ob) in self.obligations.iter().enumerate() {
            let _ = writeln!(out, "obligation {}: {}", k + 1, ob.label);
            let _ = writeln!(out, "  rules: {}", ob.rules);
            let _ = writeln!(out, "  input: {}", ob.statement);
            for (n, s) in ob.steps.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  step {}: ({})*{} @{} by {} => {}",
                    n + 1,
                    s.coefficient,
                    s.word,
                    s.position,
                    s.rule,
                    s.replacement
                );
            }
            let _ = writeln!(out, "  result: {}", ob.residual);
            let status = if ob.verified() { "VERIFIED" } else { "RESIDUAL" };
            let _ = writeln!(out, "  status: {status}");
        }
        out
    }
}

impl fmt::Display for ProofLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Ledger claiming `e = 0` under `rules`.
pub fn prove_zero(e: &Expr, rules: &RuleSet) -> Result<ProofLedger, OpcalcError> {
    ProofLedger::new("prove-zero", "expression reduces to zero").prove("e = 0", e.clone(), rules)
}
