use proptest::prelude::*;

use timeop::clifford::{mat_product, DiracMatrix};
use timeop::exact::ExactComplex;
use timeop::opcalc::{
    anticommutator, commutator, normalize, parse, Expr, Generator, RuleSet, Word,
};

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

fn coeff() -> impl Strategy<Value = ExactComplex> {
    (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(re, im, den)| {
        &ExactComplex::ratio(re, den) + &(&ExactComplex::ratio(im, den) * &ExactComplex::i())
    })
}

fn word(max_len: usize, letters: &'static [Generator]) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(letters), 0..=max_len).prop_map(Word)
}

fn expr(max_len: usize, max_terms: usize, letters: &'static [Generator]) -> impl Strategy<Value = Expr> {
    prop::collection::vec((word(max_len, letters), coeff()), 1..=max_terms).prop_map(|ts| {
        let mut e = Expr::zero();
        for (w, c) in ts {
            e.add_term(w, &c);
        }
        e
    })
}

fn nf(e: &Expr) -> Expr {
    normalize(e, &RuleSet::canonical()).unwrap()
}

fn comm(a: &Expr, b: &Expr) -> Expr {
    commutator(a, b, &RuleSet::canonical()).unwrap()
}

/// Evaluates a matrix-only expression in the fixed 2×2 representation.
fn evaluate(e: &Expr) -> DiracMatrix {
    let mut acc = DiracMatrix::zero();
    for (w, c) in e.terms() {
        let m = w.letters().iter().fold(DiracMatrix::identity(), |m, g| {
            let f = match g {
                Generator::Alpha1 => DiracMatrix::alpha1(),
                Generator::Beta => DiracMatrix::beta(),
                other => panic!("{other} has no 2x2 image"),
            };
            mat_product(&m, &f)
        });
        acc = acc.add(&m.scale(c));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalize_is_idempotent(e in expr(4, 4, &LETTERS)) {
        let once = nf(&e);
        prop_assert_eq!(nf(&once), once);
    }

    #[test]
    fn normalize_is_linear(a in expr(3, 3, &LETTERS), b in expr(3, 3, &LETTERS), c in coeff()) {
        prop_assert_eq!(nf(&(&a + &b)), &nf(&a) + &nf(&b));
        prop_assert_eq!(nf(&a.scale(&c)), nf(&a).scale(&c));
    }

    #[test]
    fn commutator_is_bilinear_and_antisymmetric(
        a in expr(2, 2, &LETTERS),
        b in expr(2, 2, &LETTERS),
        c in expr(2, 2, &LETTERS),
        k in coeff(),
    ) {
        prop_assert_eq!(comm(&a, &b), -comm(&b, &a));
        prop_assert_eq!(comm(&(&a + &b.scale(&k)), &c), &comm(&a, &c) + &comm(&b, &c).scale(&k));
        prop_assert_eq!(comm(&c, &(&a + &b.scale(&k))), &comm(&c, &a) + &comm(&c, &b).scale(&k));
    }

    #[test]
    fn jacobi_identity(a in expr(3, 2, &LETTERS), b in expr(3, 2, &LETTERS), c in expr(3, 2, &LETTERS)) {
        let sum = &(&comm(&a, &comm(&b, &c)) + &comm(&b, &comm(&c, &a))) + &comm(&c, &comm(&a, &b));
        prop_assert!(sum.is_zero(), "Jacobi sum = {}", sum);
    }

    #[test]
    fn leibniz_rule(a in word(2, &LETTERS), b in word(2, &LETTERS), c in word(2, &LETTERS)) {
        let (a, b, c) = (
            Expr::term(a, ExactComplex::one()),
            Expr::term(b, ExactComplex::one()),
            Expr::term(c, ExactComplex::one()),
        );
        let lhs = comm(&(&a * &b), &c);
        let rhs = nf(&(&(&a * &comm(&b, &c)) + &(&comm(&a, &c) * &b)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_words_agree_with_two_by_two(e in expr(5, 4, &[Generator::Alpha1, Generator::Beta])) {
        let reduced = nf(&e);
        prop_assert_eq!(evaluate(&reduced), evaluate(&e));
        for (w, _) in reduced.terms() {
            prop_assert!(w.len() <= 2);
        }
    }

    #[test]
    fn anticommutator_is_symmetric(a in expr(2, 2, &LETTERS), b in expr(2, 2, &LETTERS)) {
        let rules = RuleSet::canonical();
        prop_assert_eq!(anticommutator(&a, &b, &rules).unwrap(), anticommutator(&b, &a, &rules).unwrap());
    }

    #[test]
    fn display_round_trips_through_parser(e in expr(3, 4, &LETTERS)) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }
}

#[test]
fn distinct_matrix_normal_forms_are_distinct_matrices() {
    let basis = ["unit", "alpha1", "beta", "alpha1*beta"];
    for (k, a) in basis.iter().enumerate() {
        for b in &basis[k + 1..] {
            let d = &parse(a).unwrap() - &parse(b).unwrap();
            assert!(!evaluate(&nf(&d)).is_zero(), "{a} vs {b}");
        }
    }
}
