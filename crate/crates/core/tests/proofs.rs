//! The proof checker, the proof formats, search and the theories together.

mod common;

use common::f;
use provability::fo_proofs::{
    check, check_concludes, parse_proof, prove_sigma0, prove_sigma1, search, FoProof, ProveError,
};
use provability::semantics::{BigEvaluator, Fuel, Verdict};
use provability::theories::{con_sentence, pi1_deciding_check, q_conjunction, TheorySpec};

fn sample_proof() -> FoProof {
    prove_sigma1(&f("exists y. y * S(S(0)) = S(S(S(S(0))))"), &Fuel::default()).unwrap()
}

#[test]
fn text_and_json_formats_round_trip() {
    let p = sample_proof();
    assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
    assert_eq!(FoProof::from_json(&p.to_json()).unwrap(), p);
}

#[test]
fn every_single_step_deletion_is_rejected_or_changes_the_conclusion() {
    let p = sample_proof();
    let goal = p.conclusion().unwrap().clone();
    let text = p.to_string();
    let lines: Vec<&str> = text.lines().collect();
    for k in 0..lines.len() {
        let mutated: Vec<&str> = lines.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, l)| *l).collect();
        // Later citations now point one step too far back; the file may not
        // even parse, which also counts as a rejection.
        if let Ok(q) = parse_proof(&mutated.join("\n")) {
            assert!(!check_concludes(&q, &TheorySpec::q(), &goal).ok, "deleting step {} went unnoticed", k + 1);
        }
    }
}

#[test]
fn proofs_are_checked_against_their_theory() {
    let p = sample_proof();
    assert!(check(&p, &TheorySpec::q()).ok);
    let empty = TheorySpec::finite("Empty", vec![]);
    let r = check(&p, &empty);
    assert!(!r.ok);
    assert!(r.to_string().starts_with("FAIL at step"));
}

#[test]
fn sigma0_generator_proves_and_refutes() {
    let q = TheorySpec::q();
    for (s, truth) in [
        ("forall x. (x <= S(S(S(0))) -> x * 0 = 0)", true),
        ("exists x. (x <= S(S(0)) /\\ x + x = S(S(0)))", true),
        ("S(S(0)) * S(S(0)) = S(S(S(0)))", false),
    ] {
        let s = f(s);
        let goal = if truth { s.clone() } else { provability::Formula::not(s.clone()) };
        let p = prove_sigma0(&goal).unwrap();
        assert!(check_concludes(&p, &q, &goal).ok, "{goal}");
        assert_eq!(prove_sigma0(&s).is_ok(), truth);
    }
}

#[test]
fn prove_sigma1_rejects_what_it_cannot_prove() {
    assert_eq!(prove_sigma1(&f("forall x. exists y. x = y"), &Fuel::default()), Err(ProveError::NotSigma1));
    assert_eq!(prove_sigma1(&f("exists y. x = y"), &Fuel::default()), Err(ProveError::NotClosed));
    assert_eq!(prove_sigma1(&f("exists y. S(y) = 0"), &Fuel::new(3, 1_000)), Err(ProveError::FuelExhausted));
}

#[test]
fn search_proves_q_from_itself_and_small_theorems() {
    let q = TheorySpec::q();
    let fuel = Fuel::new(3, 20_000);
    for goal in [q_conjunction(), f("0 = 0"), f("forall x. x + 0 = x"), f("~S(0) = 0 /\\ 0 + 0 = 0")] {
        let p = search(&goal, &q, &fuel).unwrap_or_else(|| panic!("no proof of {goal}"));
        assert!(check_concludes(&p, &q, &goal).ok);
    }
    let pa = TheorySpec::pa();
    let p = search(&q_conjunction(), &pa, &fuel).expect("PA contains Q");
    assert!(check(&p, &pa).ok);
}

#[test]
fn search_does_not_prove_falsehoods() {
    let q = TheorySpec::q();
    for goal in ["0 = S(0)", "bot", "forall x. x = 0"] {
        assert!(search(&f(goal), &q, &Fuel::new(3, 5_000)).is_none(), "{goal}");
    }
}

#[test]
fn consistency_sentences() {
    let toy = TheorySpec::finite("Toy", vec![f("0 = 0"), f("~0 = 0")]);
    let con = con_sentence(&toy).unwrap();
    assert!(con.is_sentence());
    assert_eq!(BigEvaluator::big().eval(&con, &Fuel::new(5, 10_000)), Verdict::False);
    let q = TheorySpec::q();
    assert!(search(&con_sentence(&q).unwrap(), &q, &Fuel::new(3, 5_000)).is_none());
}

#[test]
fn pi1_deciding_report_and_class_check() {
    let q = TheorySpec::q();
    let corpus = [f("forall x. x + 0 = x"), f("forall x. x = 0")];
    let r = pi1_deciding_check(&q, &corpus, &Fuel::new(3, 5_000)).unwrap();
    assert_eq!((r.proved.len(), r.refuted.len(), r.undecided.len()), (1, 1, 0));
    assert!(pi1_deciding_check(&q, &[f("exists x. x = 0")], &Fuel::default()).is_err());
}

#[test]
fn theory_files_load() {
    let dir = std::env::temp_dir().join(format!("provability-theory-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("toy.theory");
    std::fs::write(&path, "# a toy theory\n0 = 0\nforall x. x + 0 = x\n").unwrap();
    let t = TheorySpec::from_file(path.to_str().unwrap()).unwrap();
    assert_eq!(t.finite_axioms().unwrap().len(), 2);
    assert!(search(&f("0 + 0 = 0"), &t, &Fuel::new(3, 2_000)).is_some());
    std::fs::remove_dir_all(dir).unwrap();
}
