//! The operator identities of the free (1+1)D Dirac model and the time
//! function, each packaged as a proof ledger.
//!
//! Two rule sets are used. The concrete set expands `H`, `S01` and `T` into
//! Dirac matrices and canonical variables. The abstract set keeps `H` and `T`
//! opaque and knows only `[H, T] = -i`, `[H, p1] = 0`, `[H, t] = 0` and
//! `dT/dt = 0`. The angular-momentum conservation law is proved once in
//! each.

use num_rational::BigRational;

use super::normalize::{explicit_time_derivative, heisenberg_rate_expr, substitution};
use super::{Expr, Generator, OpcalcError, ProofLedger, RuleSet};
use crate::exact::ExactComplex;

use Generator::*;

/// `H = alpha1*p1 + m*beta`
pub fn dirac_hamiltonian() -> Expr {
    &Expr::product(&[Alpha1, P1]) + &Expr::product(&[Mass, Beta])
}

/// `S01 = (i/2)*alpha1`
pub fn spin01() -> Expr {
    Expr::gen(Alpha1).scale(&(ExactComplex::ratio(1, 2) * ExactComplex::i()))
}

/// `T = alpha1*x1 - alpha1*theta1`
pub fn time_function() -> Expr {
    &Expr::product(&[Alpha1, X1]) - &Expr::product(&[Alpha1, Theta1])
}

/// `J01 = t*p1 - x1*H + S01`, with the energy operator written through `H`.
pub fn angular_momentum_01() -> Expr {
    &(&Expr::product(&[Time, P1]) - &Expr::product(&[X1, Hamiltonian])) + &Expr::gen(Spin01)
}

fn h() -> Expr {
    Expr::gen(Hamiltonian)
}

fn i_times(e: &Expr) -> Expr {
    e.scale(&ExactComplex::i())
}

/// `{H, alpha1} = 2 p1`
pub fn dirac_anticommutator() -> Result<ProofLedger, OpcalcError> {
    let stmt = &Expr::raw_anticommutator(&h(), &Expr::gen(Alpha1)) - &Expr::product(&[P1]).scale(&2.into());
    ProofLedger::new(
        "dirac-anticommutator",
        "{H, alpha1} - 2*p1 = 0 for H = alpha1*p1 + m*beta",
    )
    .prove("{H, alpha1} - 2*p1", stmt, &RuleSet::concrete_dirac())
}

/// `[H, -x1 H] = i alpha1 H`
pub fn position_hamiltonian_commutator() -> Result<ProofLedger, OpcalcError> {
    let minus_x1_h = -&Expr::product(&[X1, Hamiltonian]);
    let stmt = &Expr::raw_commutator(&h(), &minus_x1_h) - &i_times(&Expr::product(&[Alpha1, Hamiltonian]));
    ProofLedger::new(
        "position-hamiltonian-commutator",
        "[H, -x1*H] - i*alpha1*H = 0",
    )
    .prove("[H, -x1*H] - i*alpha1*H", stmt, &RuleSet::concrete_dirac())
}

/// `[H, S01] = i H alpha1 - i p1`
pub fn spin_hamiltonian_commutator() -> Result<ProofLedger, OpcalcError> {
    let rhs = &i_times(&Expr::product(&[Hamiltonian, Alpha1])) - &i_times(&Expr::gen(P1));
    let stmt = &Expr::raw_commutator(&h(), &Expr::gen(Spin01)) - &rhs;
    ProofLedger::new(
        "spin-hamiltonian-commutator",
        "[H, S01] - i*H*alpha1 + i*p1 = 0 with S01 = (i/2)*alpha1",
    )
    .prove("[H, S01] - i*H*alpha1 + i*p1", stmt, &RuleSet::concrete_dirac())
}

/// `∂(a)/∂t + i[H, a] - p1`, the reduced form of `dJ01/dt` with `a = t p1`
/// (defining route) or `a = T p1` (calculating route).
fn reduced_rate(a: &Expr, rules: &RuleSet) -> Result<Expr, OpcalcError> {
    Ok(&heisenberg_rate_expr(a, &h(), rules)? - &Expr::gen(P1))
}

/// `dJ01/dt` equals `∂(t p1)/∂t + i[H, t p1] - p1` once the other pieces of
/// `J01` have been commuted through `H`.
pub fn angular_momentum_rate_reduction() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::concrete_dirac();
    let full = heisenberg_rate_expr(&angular_momentum_01(), &h(), &rules)?;
    let reduced = reduced_rate(&Expr::product(&[Time, P1]), &rules)?;
    ProofLedger::new(
        "angular-momentum-rate",
        "dJ01/dt - (d(t*p1)/dt + i*[H, t*p1] - p1) = 0 for J01 = t*p1 - x1*H + S01",
    )
    .prove("dJ01/dt - reduced form", &full - &reduced, &rules)
}

/// `∂t/∂t = 1`, `[p0, t] = i` and `[H, t] = 0`.
pub fn defining_time_facts() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::concrete_dirac();
    let t = Expr::gen(Time);
    let dt = &explicit_time_derivative(&t, &rules) - &Expr::unit();
    let canonical = &Expr::raw_commutator(&Expr::gen(P0), &t) - &Expr::i();
    let static_h = Expr::raw_commutator(&h(), &t);
    ProofLedger::new("defining-time-facts", "dt/dt = 1, [p0, t] = i, [H, t] = 0")
        .prove("dt/dt - 1", dt, &rules)?
        .prove("[p0, t] - i", canonical, &rules)?
        .prove("[H, t]", static_h, &rules)
}

/// `[alpha1 x1, alpha1 p1] = i`, `∂T/∂t = 0`, and the 3D normalization
/// `alpha·alpha = 3` behind the factor 1/3 of the 3D time function.
pub fn time_function_commutator() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::concrete_dirac();
    let printed = &Expr::raw_commutator(&Expr::product(&[Alpha1, X1]), &Expr::product(&[Alpha1, P1])) - &Expr::i();
    let static_t = explicit_time_derivative(&time_function(), &rules);
    ProofLedger::new(
        "time-function-commutator",
        "[alpha1*x1, alpha1*p1] - i = 0, dT/dt = 0, alpha.alpha - 3 = 0",
    )
    .prove("[alpha1*x1, alpha1*p1] - i", printed, &rules)?
    .prove("dT/dt", static_t, &rules)?
    .prove("alpha1^2 + alpha2^2 + alpha3^2 - 3", alpha_dot_alpha_minus_three(), &rules)
}

fn alpha_dot_alpha_minus_three() -> Expr {
    let sum = [Alpha1, Alpha2, Alpha3]
        .iter()
        .fold(Expr::zero(), |acc, &a| &acc + &Expr::product(&[a, a]));
    &sum - &Expr::int(3)
}

/// `dJ01/dt = 0` with `H`, `S01` expanded concretely (defining route, `t`
/// as the time operator).
pub fn conservation_defining_route() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::concrete_dirac();
    let full = heisenberg_rate_expr(&angular_momentum_01(), &h(), &rules)?;
    let reduced = reduced_rate(&Expr::product(&[Time, P1]), &rules)?;
    ProofLedger::new(
        "conservation-defining-route",
        "dJ01/dt = 0 using t as the time operator, H = alpha1*p1 + m*beta",
    )
    .prove("dJ01/dt", full, &rules)?
    .prove("d(t*p1)/dt + i*[H, t*p1] - p1", reduced, &rules)
}

/// `∂(T p1)/∂t + i[H, T p1] - p1 = 0` from the abstract facts only
/// (calculating route, `T` as the time operator).
pub fn conservation_calculating_route() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::abstract_time_function();
    let reduced = reduced_rate(&Expr::product(&[TimeFunction, P1]), &rules)?;
    ProofLedger::new(
        "conservation-calculating-route",
        "d(T*p1)/dt + i*[H, T*p1] - p1 = 0 from [H, T] = -i, [H, p1] = 0, dT/dt = 0",
    )
    .prove("d(T*p1)/dt + i*[H, T*p1] - p1", reduced, &rules)
}

/// `(alpha1*x1 + tau*beta)^2 - x1^2 - tau^2`
pub fn linearized_square_expr(tau: &BigRational) -> Expr {
    let tau_c = ExactComplex::real(tau.clone());
    let linear = &Expr::product(&[Alpha1, X1]) + &Expr::gen(Beta).scale(&tau_c);
    let tau_sq = Expr::scalar(&tau_c * &tau_c);
    &(&linear.pow(2) - &Expr::product(&[X1, X1])) - &tau_sq
}

/// Checks that `T = alpha1*x1 + tau*beta` squares to `x1^2 + tau^2`.
pub fn square_identity_check(tau: &BigRational) -> Result<ProofLedger, OpcalcError> {
    ProofLedger::new(
        "linearized-square",
        "(alpha1*x1 + tau*beta)^2 - x1^2 - tau^2 = 0",
    )
    .prove(format!("tau = {tau}"), linearized_square_expr(tau), &RuleSet::canonical())
}

/// The square identity for each `tau`, collected into one ledger.
pub fn square_identity_suite(taus: &[BigRational]) -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::canonical();
    taus.iter().try_fold(
        ProofLedger::new(
            "linearized-square",
            "(alpha1*x1 + tau*beta)^2 - x1^2 - tau^2 = 0",
        ),
        |ledger, tau| ledger.prove(format!("tau = {tau}"), linearized_square_expr(tau), &rules),
    )
}

/// `[T, H] - i` with both operators fully expanded. For `m != 0` this does
/// not vanish; the ledger records the residual and then the specialization
/// `m = 0, theta1 = 0`, where it does.
pub fn full_time_function_residual() -> Result<ProofLedger, OpcalcError> {
    let rules = RuleSet::concrete_dirac();
    let stmt = &Expr::raw_commutator(&time_function(), &dirac_hamiltonian()) - &Expr::i();
    let massless = rules
        .clone()
        .with(substitution(Mass, Expr::zero()))?
        .with(substitution(Theta1, Expr::zero()))?
        .renamed("concrete-dirac+m=0+theta1=0");
    ProofLedger::new(
        "full-time-function-commutator",
        "[alpha1*x1 - alpha1*theta1, alpha1*p1 + m*beta] - i; residual disclosed for m != 0",
    )
    .prove("[T, H] - i (general m, theta1)", stmt.clone(), &rules)?
    .prove("[T, H] - i (m = 0, theta1 = 0)", stmt, &massless)
}

/// The nine ledgers of the algebra suite, in report order.
pub fn verification_suite() -> Result<Vec<ProofLedger>, OpcalcError> {
    let taus = [
        BigRational::from_integer(0.into()),
        BigRational::from_integer(1.into()),
        BigRational::new(3.into(), 2.into()),
    ];
    Ok(vec![
        dirac_anticommutator()?,
        position_hamiltonian_commutator()?,
        spin_hamiltonian_commutator()?,
        angular_momentum_rate_reduction()?,
        defining_time_facts()?,
        time_function_commutator()?,
        conservation_defining_route()?,
        conservation_calculating_route()?,
        square_identity_suite(&taus)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcalc::parse;

    #[test]
    fn whole_suite_verifies() {
        let suite = verification_suite().unwrap();
        assert_eq!(suite.len(), 9);
        for ledger in &suite {
            assert!(ledger.verified(), "{}", ledger.to_text());
        }
    }

    #[test]
    fn square_identity_examples() {
        for (n, d) in [(1, 1), (0, 1), (3, 2)] {
            let tau = BigRational::new(n.into(), d.into());
            assert!(square_identity_check(&tau).unwrap().verified());
        }
    }

    #[test]
    fn full_commutator_residual_has_mass_and_theta_terms() {
        let ledger = full_time_function_residual().unwrap();
        let general = &ledger.obligations[0];
        assert!(!general.verified());
        let r = &general.residual;
        let mass_term = parse("2*m*x1*alpha1*beta").unwrap();
        let (w, c) = mass_term.terms().next().unwrap();
        assert_eq!(r.coefficient(w), c.clone());
        assert!(r.mentions(Theta1));
        assert!(ledger.obligations[1].verified());
    }

    #[test]
    fn three_dim_alpha_normalization() {
        let rules = RuleSet::canonical();
        let e = crate::opcalc::normalize(&alpha_dot_alpha_minus_three(), &rules).unwrap();
        assert!(e.is_zero());
    }
}
