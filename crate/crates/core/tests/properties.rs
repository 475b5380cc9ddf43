//! Property tests over randomly generated formulas.

mod common;

use common::{brute_truth, random_formula};
use proptest::prelude::*;
use provability::coding::{decode_formula, encode_formula};
use provability::hierarchy::{classify, coerce_to, is_bounded, member_levels};
use provability::semantics::{eval_sigma0, BigEvaluator, Evaluator64, Fuel, Verdict};
use provability::syntax::{numeral, Formula, Ident};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn formula(seed: u64, depth: usize) -> Formula {
    random_formula(&mut ChaCha8Rng::seed_from_u64(seed), depth)
}

/// Closes `g` by bounding its free variables by small numerals.
fn close_bounded(g: Formula) -> Formula {
    g.free_vars().into_iter().fold(g, |acc, x| Formula::forall_le(x, numeral(2u32), acc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>()) {
        let g = formula(seed, 6);
        prop_assert_eq!(g.to_string().parse::<Formula>().unwrap(), g.clone());
        prop_assert_eq!(g.to_full_string().parse::<Formula>().unwrap(), g);
    }

    #[test]
    fn coding_round_trips(seed in any::<u64>()) {
        let g = formula(seed, 5);
        prop_assert_eq!(decode_formula(&encode_formula(&g).0), Some(g));
    }

    #[test]
    fn coding_is_injective(a in any::<u64>(), b in any::<u64>()) {
        let (f, g) = (formula(a, 4), formula(b, 4));
        prop_assert_eq!(f == g, encode_formula(&f) == encode_formula(&g));
    }

    #[test]
    fn classify_matches_the_definition(seed in any::<u64>()) {
        let g = formula(seed, 6);
        prop_assert_eq!(member_levels(&g, 12).map(|l| l.class()), Some(classify(&g)));
    }

    #[test]
    fn negation_dualizes_the_class(seed in any::<u64>()) {
        let g = formula(seed, 6);
        prop_assert_eq!(classify(&Formula::not(g.clone())), classify(&g).dual());
    }

    #[test]
    fn bounded_sentences_decide_like_substitution(seed in any::<u64>()) {
        let g = close_bounded(formula(seed, 4));
        prop_assume!(is_bounded(&g));
        let truth = brute_truth(&g);
        prop_assert_eq!(eval_sigma0(&g).unwrap(), truth);
        prop_assert_eq!(BigEvaluator::big().eval(&g, &Fuel::default()), Verdict::from_bool(truth));
        prop_assert_eq!(Evaluator64::new().eval(&g, &Fuel::default()), Verdict::from_bool(truth));
    }

    #[test]
    fn evaluation_respects_negation(seed in any::<u64>()) {
        let g = formula(seed, 5);
        let closed = g.free_vars().into_iter().fold(g, |acc, x: Ident| Formula::forall(x, acc));
        let fuel = Fuel::new(3, 5_000);
        let ev = BigEvaluator::big();
        prop_assert_eq!(ev.eval(&Formula::not(closed.clone()), &fuel), ev.eval(&closed, &fuel).negate());
    }

    #[test]
    fn coercion_lands_in_the_target_with_a_checked_equivalence(seed in any::<u64>()) {
        let g = formula(seed, 4);
        let class = classify(&g);
        let c = coerce_to(&g, class).unwrap();
        prop_assert!(class.contains(&c.formula));
        let report = provability::fo_proofs::check_concludes(
            &c.certificate,
            &provability::TheorySpec::q(),
            &Formula::iff(g, c.formula.clone()),
        );
        prop_assert!(report.ok, "{}", report);
    }
}
