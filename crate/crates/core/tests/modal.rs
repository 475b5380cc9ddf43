//! The GL decider against brute force, and the modal proof scripts.

mod common;

use common::{m, random_modal};
use provability::modal::{
    brute_force_countermodel, check_modal, decide, gl_decide, model_check, parse_script, script_source, Decision,
    Logic, SCRIPTS,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Decider versus brute force over at most four worlds, on 500 seeded
/// random formulas. A formula refuted only by a countermodel larger than
/// four worlds is logged, not failed: brute force is incomplete there.
#[test]
fn decider_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut logged = Vec::new();
    for _ in 0..500 {
        let g = random_modal(&mut rng, 5);
        match (gl_decide(&g), brute_force_countermodel(&g, 4)) {
            (Decision::Valid(_), Some((model, w))) => panic!("{g} decided valid but fails at w{w} of\n{model}"),
            (Decision::Invalid(c), None) => {
                assert!(c.model.worlds > 4, "{g}: missed a small countermodel");
                logged.push(g.to_string());
            }
            (Decision::Invalid(c), Some(_)) => assert!(!model_check(&c.model, c.world, &g)),
            (Decision::Valid(_), None) => {}
        }
    }
    if !logged.is_empty() {
        eprintln!("refuted only by models of more than four worlds: {logged:?}");
    }
}

#[test]
fn countermodels_are_finite_transitive_irreflexive() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let g = random_modal(&mut rng, 4);
        if let Decision::Invalid(c) = gl_decide(&g) {
            assert!(c.model.is_gl_frame());
            assert!(!model_check(&c.model, c.world, &g));
        }
    }
}

#[test]
fn gl_extends_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let g = random_modal(&mut rng, 4);
        if decide(&g, Logic::K).is_valid() {
            assert!(gl_decide(&g).is_valid(), "{g} in K but not GL");
        }
    }
}

#[test]
fn printing_then_parsing_modal_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let g = random_modal(&mut rng, 5);
        assert_eq!(g.to_string().parse::<provability::modal::ModalFormula>().unwrap(), g);
    }
}

#[test]
fn scripts_print_and_reparse() {
    for (name, _) in SCRIPTS {
        let p = parse_script(script_source(name).unwrap()).unwrap();
        let again = parse_script(&p.to_string()).unwrap();
        assert_eq!(again, p, "{name}");
        assert!(check_modal(&again).ok, "{name}");
    }
}

#[test]
fn checker_rejects_rule_misuse() {
    for (script, why) in [
        ("system K\n1. []p -> [][]p ; 4\n", "4 is not a K axiom"),
        ("system K4\n1. []([]p -> p) -> []p ; lob\n", "Loeb is not a K4 axiom"),
        ("system GL\n1. p ; taut\n", "p is not a tautology"),
        ("system GL\nhyp premise p ; given\n1. p ; hyp 1\n2. []p ; nec 1\n", "nec on a premise"),
        ("system GL\n1. p -> p ; taut\nconclusion q -> q\n", "wrong conclusion"),
    ] {
        let p = parse_script(script).unwrap_or_else(|e| panic!("{why}: {e}"));
        assert!(!check_modal(&p).ok, "{why}");
    }
}

#[test]
fn loeb_and_formalized_g2() {
    assert!(gl_decide(&m("[]([]p -> p) -> []p")).is_valid());
    assert!(gl_decide(&m("~[]bot -> ~[]~[]bot")).is_valid());
    assert!(!decide(&m("~[]bot -> ~[]~[]bot"), Logic::K).is_valid());
}
