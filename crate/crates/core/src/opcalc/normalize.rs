//! Canonical-form engine.
//!
//! Terms are processed smallest word first. Inside a word the leftmost
//! composite with a substitution is expanded before anything else; otherwise
//! the leftmost adjacent pair that is either a declared square `g g` or a
//! descending pair `a b` (`a > b`) with a declared reordering fact is
//! rewritten. Pairs without a declared fact are left in place, so residuals
//! involving undeclared algebra (for example `theta1` against `alpha1`) are
//! reported as they are.

use super::rules::Relation;
use super::{Expr, OpcalcError, RuleSet, Word};
use crate::exact::ExactComplex;

/// Step budget used by [`normalize`].
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// One applied rewrite: `coefficient · redex` at `position` became
/// `coefficient · replacement`, where `replacement` already contains the
/// untouched prefix and suffix of the word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: String,
    pub word: Word,
    pub position: usize,
    pub coefficient: ExactComplex,
    pub replacement: Expr,
}

enum Redex<'a> {
    Substitute(usize, &'a Expr, usize),
    Pair(usize, Expr, usize),
}

fn find_redex<'a>(word: &Word, rules: &'a RuleSet) -> Option<Redex<'a>> {
    let letters = word.letters();
    for (i, &g) in letters.iter().enumerate() {
        if let Some((rel, value)) = rules.substitution(g) {
            return Some(Redex::Substitute(i, value, *rel));
        }
    }
    for (i, pair) in letters.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if a == b {
            if let Some((rel, value)) = rules.square(a) {
                return Some(Redex::Pair(i, value.clone(), *rel));
            }
        } else if a > b {
            if let Some(r) = rules.reorder(a, b) {
                let swapped = Expr::product(&[b, a]);
                let swapped = if r.negate { -&swapped } else { swapped };
                return Some(Redex::Pair(i, &swapped + &r.correction, r.relation));
            }
        }
    }
    None
}

fn splice(word: &Word, at: usize, width: usize, replacement: &Expr) -> Expr {
    let letters = word.letters();
    let prefix = Expr::product(&letters[..at]);
    let suffix = Expr::product(&letters[at + width..]);
    &(&prefix * replacement) * &suffix
}

/// True when no rewrite applies anywhere in `word`.
pub fn is_normal_word(word: &Word, rules: &RuleSet) -> bool {
    find_redex(word, rules).is_none()
}

pub(crate) fn normalize_impl(
    e: &Expr,
    rules: &RuleSet,
    budget: usize,
    mut trace: Option<&mut Vec<RewriteStep>>,
) -> Result<Expr, OpcalcError> {
    let mut pending = e.clone();
    let mut done = Expr::zero();
    let mut steps = 0usize;
    while let Some((word, coeff)) = pending.pop_first() {
        let (at, width, replacement, rel) = match find_redex(&word, rules) {
            None => {
                done.add_term(word, &coeff);
                continue;
            }
            Some(Redex::Substitute(at, value, rel)) => (at, 1, value.clone(), rel),
            Some(Redex::Pair(at, value, rel)) => (at, 2, value, rel),
        };
        steps += 1;
        if steps > budget {
            return Err(OpcalcError::BudgetExceeded { budget });
        }
        let produced = splice(&word, at, width, &replacement);
        for (w, c) in produced.terms() {
            pending.add_term(w.clone(), &(c * &coeff));
        }
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(RewriteStep {
                rule: rules.relations()[rel].to_string(),
                word,
                position: at,
                coefficient: coeff,
                replacement: produced,
            });
        }
    }
    Ok(done)
}

/// Canonical form of `e` under `rules`, with the default step budget.
pub fn normalize(e: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    normalize_impl(e, rules, DEFAULT_STEP_BUDGET, None)
}

pub fn normalize_with_budget(e: &Expr, rules: &RuleSet, budget: usize) -> Result<Expr, OpcalcError> {
    normalize_impl(e, rules, budget, None)
}

/// Canonical form together with every rewrite applied, in order.
pub fn normalize_traced(e: &Expr, rules: &RuleSet) -> Result<(Expr, Vec<RewriteStep>), OpcalcError> {
    let mut steps = Vec::new();
    let out = normalize_impl(e, rules, DEFAULT_STEP_BUDGET, Some(&mut steps))?;
    Ok((out, steps))
}

/// `normalize(ab − ba)`
pub fn commutator(a: &Expr, b: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    normalize(&Expr::raw_commutator(a, b), rules)
}

/// `normalize(ab + ba)`
pub fn anticommutator(a: &Expr, b: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    normalize(&Expr::raw_anticommutator(a, b), rules)
}

/// Formal `∂e/∂t` by the product rule over every letter; not normalized.
pub fn explicit_time_derivative(e: &Expr, rules: &RuleSet) -> Expr {
    let mut out = Expr::zero();
    for (word, coeff) in e.terms() {
        for (i, &g) in word.letters().iter().enumerate() {
            let d = rules.time_derivative_of(g);
            if d.is_zero() {
                continue;
            }
            for (w, c) in splice(word, i, 1, &d).terms() {
                out.add_term(w.clone(), &(c * coeff));
            }
        }
    }
    out
}

/// The unnormalized Heisenberg rate `∂a/∂t + i[hamiltonian, a]`, with `a`
/// brought to canonical form first so that substitutions are visible to the
/// time derivative.
pub fn heisenberg_rate_expr(a: &Expr, hamiltonian: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    let a = normalize(a, rules)?;
    let partial = explicit_time_derivative(&a, rules);
    let flow = Expr::raw_commutator(hamiltonian, &a).scale(&ExactComplex::i());
    Ok(&partial + &flow)
}

/// `normalize(∂a/∂t + i[hamiltonian, a])`
pub fn heisenberg_derivative(a: &Expr, hamiltonian: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    normalize(&heisenberg_rate_expr(a, hamiltonian, rules)?, rules)
}

/// A substitution `g := value` relation, for ad hoc specializations such as
/// `m := 0`.
pub fn substitution(g: super::Generator, value: Expr) -> Relation {
    Relation::Substitution { generator: g, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcalc::Generator::*;
    use crate::opcalc::{identities, parse};

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn canonical_pair() {
        let rs = RuleSet::canonical();
        assert_eq!(normalize(&p("x1*p1 - p1*x1"), &rs).unwrap(), Expr::i());
    }

    #[test]
    fn alpha_squares_to_unit() {
        let rs = RuleSet::canonical();
        assert_eq!(normalize(&p("alpha1*alpha1"), &rs).unwrap(), Expr::unit());
    }

    #[test]
    fn independent_variables_stay_put() {
        let rs = RuleSet::canonical();
        assert_eq!(normalize(&p("t*p1"), &rs).unwrap(), p("t*p1"));
        assert_eq!(normalize(&p("p1*t"), &rs).unwrap(), p("t*p1"));
    }

    #[test]
    fn theta_against_matrices_is_left_alone() {
        let rs = RuleSet::canonical();
        let e = p("theta1*alpha1*x1");
        assert_eq!(normalize(&e, &rs).unwrap(), p("x1*theta1*alpha1"));
    }

    #[test]
    fn anticommutator_of_hamiltonian_with_alpha() {
        let rs = RuleSet::concrete_dirac();
        let got = anticommutator(&Expr::gen(Hamiltonian), &Expr::gen(Alpha1), &rs).unwrap();
        assert_eq!(got, p("2*p1"));
    }

    #[test]
    fn hamiltonian_spin_commutator() {
        let rs = RuleSet::concrete_dirac();
        let got = commutator(&Expr::gen(Hamiltonian), &Expr::gen(Spin01), &rs).unwrap();
        let expected = normalize(&p("i*H*alpha1 - i*p1"), &rs).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn hamiltonian_position_commutator() {
        let rs = RuleSet::concrete_dirac();
        let got = commutator(&Expr::gen(Hamiltonian), &p("-x1*H"), &rs).unwrap();
        let expected = normalize(&p("i*alpha1*H"), &rs).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn printed_time_function_commutator() {
        let rs = RuleSet::canonical();
        let got = commutator(&p("alpha1*x1"), &p("alpha1*p1"), &rs).unwrap();
        assert_eq!(got, Expr::i());
    }

    #[test]
    fn angular_momentum_is_conserved_concretely() {
        let rs = RuleSet::concrete_dirac();
        let j01 = identities::angular_momentum_01();
        let rate = heisenberg_derivative(&j01, &Expr::gen(Hamiltonian), &rs).unwrap();
        assert!(rate.is_zero(), "residual: {rate}");
    }

    #[test]
    fn abstract_time_function_rate() {
        let rs = RuleSet::abstract_time_function();
        let rate = heisenberg_derivative(&p("T*p1"), &Expr::gen(Hamiltonian), &rs).unwrap();
        assert_eq!(rate, p("p1"));
    }

    #[test]
    fn momentum_is_conserved() {
        let rs = RuleSet::concrete_dirac();
        let rate = heisenberg_derivative(&p("p1"), &Expr::gen(Hamiltonian), &rs).unwrap();
        assert!(rate.is_zero());
    }

    #[test]
    fn runaway_substitution_hits_budget() {
        let rs = RuleSet::empty("loop")
            .with(substitution(Hamiltonian, p("H + x1")))
            .unwrap();
        let err = normalize_with_budget(&p("H"), &rs, 50).unwrap_err();
        assert_eq!(err, OpcalcError::BudgetExceeded { budget: 50 });
    }

    #[test]
    fn trace_records_each_swap() {
        let rs = RuleSet::canonical();
        let (out, steps) = normalize_traced(&p("p1*x1"), &rs).unwrap();
        assert_eq!(out, p("x1*p1 - i"));
        assert_eq!(steps.len(), 1);
        assert_eq!(steps[0].rule, "[x1, p1] = i");
        assert_eq!(steps[0].position, 0);
    }

    #[test]
    fn product_rule_on_time() {
        let rs = RuleSet::canonical();
        let d = explicit_time_derivative(&p("t*t*p1"), &rs);
        assert_eq!(normalize(&d, &rs).unwrap(), p("2*t*p1"));
    }
}
