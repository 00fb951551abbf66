use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use timeop::exact::ExactComplex;
use timeop::format::csv_table;
use timeop::opcalc::identities::*;
use timeop::opcalc::{commutator, parse, prove_zero, Expr, Generator, OpcalcError, ProofLedger, RuleSet, Word};

use crate::config::{ConfigError, ExtraIdentity, RuleChoice, VerifyAlgebraConfig};
use crate::output::Artifacts;

const LETTERS: [Generator; 8] = [
    Generator::Mass,
    Generator::Time,
    Generator::P0,
    Generator::X1,
    Generator::P1,
    Generator::Alpha1,
    Generator::Beta,
    Generator::Theta1,
];

fn algebra_err(e: OpcalcError) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

fn parse_tau(s: &str) -> Result<BigRational, ConfigError> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| ConfigError::Invalid(format!("tau {s:?} is not a rational")))
}

fn random_expr(rng: &mut ChaCha8Rng, max_word: usize) -> Expr {
    let mut e = Expr::zero();
    for _ in 0..rng.random_range(1..=3) {
        let len = rng.random_range(0..=max_word);
        let word = Word((0..len).map(|_| LETTERS[rng.random_range(0..LETTERS.len())]).collect());
        let den = rng.random_range(1..=3);
        let c = &ExactComplex::ratio(rng.random_range(-3..=3), den)
            + &(&ExactComplex::ratio(rng.random_range(-3..=3), den) * &ExactComplex::i());
        e.add_term(word, &c);
    }
    e
}

fn prove_extra(extra: &ExtraIdentity) -> Result<ProofLedger, ConfigError> {
    let valid_name = !extra.name.is_empty()
        && extra.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
    if !valid_name {
        return Err(ConfigError::Invalid(format!("identity name {:?} must be [A-Za-z0-9_-]+", extra.name)));
    }
    let e = parse(&extra.expression).map_err(|err| ConfigError::Invalid(format!("{}: {err}", extra.name)))?;
    let rules = match extra.rules {
        RuleChoice::Canonical => RuleSet::canonical(),
        RuleChoice::ConcreteDirac => RuleSet::concrete_dirac(),
        RuleChoice::AbstractTimeFunction => RuleSet::abstract_time_function(),
    };
    let ledger = ProofLedger::new(extra.name.clone(), format!("{} = 0", extra.expression));
    ledger.prove("expression = 0", e, &rules).map_err(algebra_err)
}

/// Seeded Jacobi and Leibniz checks on random expressions.
fn property_sweep(cfg: &VerifyAlgebraConfig, seed: u64, out: &mut Artifacts) -> Result<(), ConfigError> {
    let rules = RuleSet::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comm = |a: &Expr, b: &Expr| commutator(a, b, &rules).map_err(algebra_err);
    let mut rows = Vec::new();
    for case in 0..cfg.sweep_cases {
        let (a, b, c) = (
            random_expr(&mut rng, cfg.max_word),
            random_expr(&mut rng, cfg.max_word),
            random_expr(&mut rng, cfg.max_word),
        );
        let jacobi = &(&comm(&a, &comm(&b, &c)?)? + &comm(&b, &comm(&c, &a)?)?) + &comm(&c, &comm(&a, &b)?)?;
        let leibniz = &(&comm(&a, &(&b * &c))? - &(&comm(&a, &b)? * &c)) - &(&b * &comm(&a, &c)?);
        for (law, e) in [("jacobi", jacobi), ("leibniz", leibniz)] {
            let ledger = prove_zero(&e, &rules).map_err(algebra_err)?;
            if !ledger.verified() {
                out.fail(format!("{law} case {case} left residual {}", ledger.obligations[0].residual));
            }
            rows.push(vec![case.to_string(), law.to_string(), ledger.status().to_string()]);
        }
    }
    out.add("property_sweep.csv", csv_table(&["case", "law", "status"], rows));
    Ok(())
}

pub fn run(cfg: &VerifyAlgebraConfig, seed: u64) -> Result<Artifacts, ConfigError> {
    let taus = cfg.taus.iter().map(|s| parse_tau(s)).collect::<Result<Vec<_>, _>>()?;
    if taus.is_empty() {
        return Err(ConfigError::Invalid("taus must not be empty".into()));
    }
    let suite = vec![
        dirac_anticommutator(),
        position_hamiltonian_commutator(),
        spin_hamiltonian_commutator(),
        angular_momentum_rate_reduction(),
        defining_time_facts(),
        time_function_commutator(),
        conservation_defining_route(),
        conservation_calculating_route(),
        square_identity_suite(&taus),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(algebra_err)?;

    let mut out = Artifacts::default();
    let mut rows = Vec::new();
    for ledger in &suite {
        println!("{:<34} {}", ledger.name, ledger.status());
        if !ledger.verified() {
            out.fail(format!("{} not verified", ledger.name));
        }
        rows.push(vec![
            ledger.name.clone(),
            ledger.status().to_string(),
            ledger.obligations.len().to_string(),
            ledger.step_count().to_string(),
        ]);
        out.add(format!("ledgers/{}.txt", ledger.name), ledger.to_text());
    }

    // The full [T, H] - i keeps a mass-dependent residual; it must vanish only at m = 0, theta1 = 0.
    let disclosure = full_time_function_residual().map_err(algebra_err)?;
    let general = &disclosure.obligations[0];
    let massless = &disclosure.obligations[1];
    if general.verified() || !general.residual.mentions(Generator::Mass) {
        out.fail("full time-function residual should be nonzero and contain m");
    }
    if !massless.verified() {
        out.fail("full time-function residual should vanish at m = 0, theta1 = 0");
    }
    out.notes.push(format!("residual for m != 0: {}", general.residual));
    println!("{:<34} disclosed", disclosure.name);
    out.add(format!("disclosures/{}.txt", disclosure.name), disclosure.to_text());

    for extra in &cfg.extra {
        let ledger = prove_extra(extra)?;
        println!("{:<34} {} (extra)", ledger.name, ledger.status());
        if !ledger.verified() {
            out.fail(format!("{} left residual {}", ledger.name, ledger.obligations[0].residual));
        }
        out.add(format!("extra/{}.txt", ledger.name), ledger.to_text());
    }

    out.add("algebra_summary.csv", csv_table(&["ledger", "status", "obligations", "steps"], rows));
    let verified = suite.iter().filter(|l| l.verified()).count();
    out.notes.push(format!("{verified} of {} ledgers verified", suite.len()));
    property_sweep(cfg, seed, &mut out)?;
    Ok(out)
}
