//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.
//!
//! Pinned parameters (the "tolerances" of a suite with no numerical output):
//! every agreement check must be exact (zero disagreements); fuel values
//! and corpus sizes are the constants below.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{bounded_pool, brute_truth, f, hierarchy_pool, m, random_formula, random_modal};
use provability::coding::pr_formula;
use provability::diagonal::{coherent, diagonalize, fuel_ladder, goedel_sentence, Certificate};
use provability::fo_proofs::{check_concludes, prove_sigma1, search, search_with_stats, ProveError};
use provability::hierarchy::{classify, coerce_to, member_levels, HierarchyClass};
use provability::modal::{
    brute_force_countermodel, check_modal, gl_decide, model_check, replay, Decision, Label, SCRIPTS,
};
use provability::semantics::{eval_sigma0, BigEvaluator, Fuel, Verdict};
use provability::syntax::{numeral, Formula, Term};
use provability::theories::{con_sentence, presentation, q_conjunction, q_prime_axiom, QPrimeFamily, TheorySpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Depth of the exhaustive hierarchy pool.
const HIERARCHY_DEPTH: usize = 6;
/// Random formulas for negation duality.
const DUALITY_SAMPLES: usize = 1000;
/// Depth of the exhaustive bounded-sentence pool.
const SIGMA0_DEPTH: usize = 4;
/// Fuel levels tried on false Σ1 sentences.
const FALSE_SIGMA1_LADDER: [(u64, u64); 4] = [(2, 2_000), (5, 10_000), (10, 50_000), (25, 100_000)];
/// Desk fuel for proof search: witness pool up to 3, search depth up to the
/// searcher's fixed maximum of 8 decomposition levels, and this many goals.
const DESK_FUEL: (u64, u64) = (3, 20_000);
/// Q′ axioms enumerated.
const QPRIME_COUNT: u64 = 1000;
/// Fuel for evaluating Q′ axioms in the standard model.
const QPRIME_EVAL_FUEL: (u64, u64) = (2, 2_000);
/// Random modal formulas compared against brute force.
const MODAL_SAMPLES: usize = 500;
const MODAL_DEPTH: usize = 5;
const BRUTE_FORCE_WORLDS: usize = 4;
const SEED: u64 = 20_240_917;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fuel((b, s): (u64, u64)) -> Fuel {
    Fuel::new(b, s)
}

// ---------------------------------------------------------------------------

fn hierarchy_oracle() -> Outcome {
    let mut disagreements = Vec::new();
    let visited = hierarchy_pool().for_each(HIERARCHY_DEPTH, &mut |g| {
        let oracle = member_levels(g, 2 * HIERARCHY_DEPTH as u32).map(|l| l.class());
        if oracle != Some(classify(g)) && disagreements.len() < 5 {
            disagreements.push(format!("{g}: classify {} vs definition {oracle:?}", classify(g)));
        }
    });
    ensure(disagreements.is_empty(), || format!("disagreements: {disagreements:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..DUALITY_SAMPLES {
        let g = random_formula(&mut rng, 6);
        let (c, n) = (classify(&g), classify(&Formula::not(g.clone())));
        ensure(n == c.dual(), || format!("~({g}) is {n}, expected dual of {c}"))?;
    }
    Ok(format!(
        "{visited} formulas of depth <= {HIERARCHY_DEPTH} agree with the inductive definition; \
         negation duality on {DUALITY_SAMPLES} random formulas"
    ))
}

fn sigma0_decision() -> Outcome {
    let mut sentences = 0u64;
    let mut failure = None;
    bounded_pool().for_each(SIGMA0_DEPTH, &mut |g| {
        if !g.is_sentence() || failure.is_some() {
            return;
        }
        sentences += 1;
        let expected = brute_truth(g);
        match eval_sigma0(g) {
            Ok(b) if b == expected => {}
            other => failure = Some(format!("{g}: eval_sigma0 {other:?}, substitution says {expected}")),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    ensure(sentences > 1000, || format!("only {sentences} sentences generated"))?;
    Ok(format!("{sentences} bounded sentences (guards <= 4, depth <= {SIGMA0_DEPTH}), zero disagreements"))
}

fn true_sigma1_corpus() -> Vec<Formula> {
    let mut c = Vec::new();
    for k in 0..=10u32 {
        c.push(f(&format!("exists y. y + y = {}", numeral(2 * k))));
        c.push(f(&format!("exists y. y * y = {}", numeral(k * k))));
    }
    for n in 1..=10u32 {
        c.push(f(&format!("exists y. S(y) = {}", numeral(n))));
    }
    for (y, z) in [(1u32, 2u32), (2, 3), (3, 3), (2, 5), (4, 1), (0, 7), (3, 4), (5, 5), (6, 2)] {
        c.push(f(&format!("exists y. exists z. (y + z = {} /\\ y * z = {})", numeral(y + z), numeral(y * z))));
    }
    for k in 1..=9u32 {
        c.push(f(&format!("exists y. (y <= {} /\\ y * S(S(S(0))) = {})", numeral(10u32), numeral(3 * k))));
    }
    c
}

fn false_sigma1_corpus() -> Vec<Formula> {
    let mut c = Vec::new();
    for k in 0..10u32 {
        c.push(f(&format!("exists y. y + y = {}", numeral(2 * k + 1))));
    }
    for n in [2u32, 3, 5, 6, 7, 8, 10, 11, 12, 13] {
        c.push(f(&format!("exists y. y * y = {}", numeral(n))));
    }
    c
}

fn sigma1_completeness() -> Outcome {
    let q = TheorySpec::q();
    let corpus = true_sigma1_corpus();
    ensure(corpus.len() == 50, || format!("corpus has {} sentences", corpus.len()))?;
    let mut steps = 0;
    for s in &corpus {
        let p = prove_sigma1(s, &Fuel::default()).map_err(|e| format!("{s}: {e}"))?;
        let r = check_concludes(&p, &q, s);
        ensure(r.ok, || format!("{s}: {r}"))?;
        steps += p.len();
    }
    let falses = false_sigma1_corpus();
    for s in &falses {
        for level in FALSE_SIGMA1_LADDER {
            match prove_sigma1(s, &fuel(level)) {
                Err(ProveError::FuelExhausted) => {}
                other => return Err(format!("{s} at {level:?}: {:?}", other.map(|p| p.len()))),
            }
        }
    }
    Ok(format!(
        "{} true sentences proved and checked ({steps} steps in all); {} false ones FuelExhausted at {} fuels",
        corpus.len(),
        falses.len(),
        FALSE_SIGMA1_LADDER.len()
    ))
}

fn phi_corpus() -> Vec<Formula> {
    [
        "x0 = x0",
        "~x0 = 0",
        "exists y. x0 = y + y",
        "x0 <= x0 + S(0)",
        "forall y. (y <= x0 -> y <= x0)",
        "~x0 = S(0)",
        "exists y. (y <= x0 /\\ y = 0)",
        "S(x0) = 0",
        "x0 = 0 \\/ ~x0 = 0",
        "forall y. x0 + y = x0 + y",
    ]
    .iter()
    .map(|s| f(s))
    .collect()
}

fn diagonal_fixed_points() -> Outcome {
    let q = TheorySpec::q();
    for phi in phi_corpus() {
        let fp = diagonalize(&phi).map_err(|e| format!("{phi}: {e}"))?;
        let Certificate::QProof(p) = &fp.certificate else { return Err(format!("{phi}: no QProof certificate")) };
        let r = check_concludes(p, &q, &fp.equivalence());
        ensure(r.ok, || format!("{phi}: {r}"))?;
    }

    let x0 = Term::var("x0");
    let phi = Formula::not(pr_formula(&q, &x0).map_err(|e| e.to_string())?);
    let fp = diagonalize(&phi).map_err(|e| e.to_string())?;
    let rows = fp.semantic_check(&fuel_ladder());
    for (fl, a, b) in &rows {
        ensure(coherent(*a, *b), || format!("incoherent at {fl:?}: gamma {a}, phi {b}"))?;
    }
    let pi = coerce_to(&fp.gamma, HierarchyClass::pi(1)).map_err(|e| e.to_string())?;
    ensure(HierarchyClass::pi(1).contains(&pi.formula), || format!("coerced form is {}", classify(&pi.formula)))?;
    let r = check_concludes(&pi.certificate, &q, &Formula::iff(fp.gamma.clone(), pi.formula.clone()));
    ensure(r.ok, || format!("coercion certificate: {r}"))?;
    let extra = match &fp.certificate {
        Certificate::QProof(p) if check_concludes(p, &q, &fp.equivalence()).ok => "; it also has a checked QProof",
        _ => "",
    };
    Ok(format!(
        "10 Pr-free fixed points carry checked Q-proofs; gamma for ~Pr_Q(x0) is coherent at {} fuels and \
         coerces to Pi 1 with a checked equivalence{extra}",
        rows.len()
    ))
}

fn easy_pi1_corpus() -> Vec<Formula> {
    let mut c = Vec::new();
    for n in 0..10u32 {
        c.push(f(&format!("forall x. (x <= {} -> x + 0 = x)", numeral(n))));
    }
    for n in 0..5u32 {
        c.push(f(&format!("forall x. (x <= {} -> ~x = {})", numeral(n), numeral(n + 1))));
    }
    for n in 1..=5u32 {
        c.push(f(&format!("forall x. (x <= {} -> x = 0)", numeral(n))));
    }
    for s in [
        "forall x. x + 0 = x",
        "forall x. ~S(x) = 0",
        "forall x. x * 0 = 0",
        "forall x. forall y. x + S(y) = S(x + y)",
        "forall x. forall y. x * S(y) = x * y + x",
        "forall x. x = 0",
        "forall x. S(x) = x",
        "forall x. x = S(0)",
        "forall x. x + x = x",
        "forall x. x * x = x",
    ] {
        c.push(f(s));
    }
    c
}

fn desk_incompleteness() -> Outcome {
    let q = TheorySpec::q();
    let desk = fuel(DESK_FUEL);
    let g = goedel_sentence(&q).map_err(|e| e.to_string())?;
    let gamma = g.fixed_point.gamma.clone();
    for goal in [gamma.clone(), Formula::not(gamma)] {
        ensure(search(&goal, &q, &desk).is_none(), || format!("search found a proof of {goal}"))?;
    }
    let corpus = easy_pi1_corpus();
    ensure(corpus.len() == 30, || format!("control corpus has {}", corpus.len()))?;
    let (mut proved, mut refuted) = (0, 0);
    for s in &corpus {
        let truth = BigEvaluator::big().eval(s, &Fuel::default());
        if search(s, &q, &desk).is_some() {
            ensure(truth != Verdict::False, || format!("proved the false {s}"))?;
            proved += 1;
        } else if search(&Formula::not(s.clone()), &q, &desk).is_some() {
            ensure(truth != Verdict::True, || format!("refuted the true {s}"))?;
            refuted += 1;
        } else {
            return Err(format!("control sentence undecided: {s}"));
        }
    }
    Ok(format!(
        "at fuel {DESK_FUEL:?} search proves neither gamma_Q nor its negation, yet decides all 30 control \
         Pi 1 sentences ({proved} proved, {refuted} refuted). This is consistent with independence, not a proof of it"
    ))
}

fn q_prime() -> Outcome {
    let ev = BigEvaluator::big();
    let eval_fuel = fuel(QPRIME_EVAL_FUEL);
    let mut seen = BTreeSet::new();
    let (mut guards, mut unknown) = (0, 0);
    for i in 0..QPRIME_COUNT {
        let a = q_prime_axiom(i);
        ensure(q_prime_axiom(i) == a, || format!("axiom {i} is not deterministic"))?;
        ensure(seen.insert(a.formula.clone()), || format!("axiom {i} repeats: {}", a.formula))?;
        if let QPrimeFamily::Completeness { u, .. } = a.family {
            let Some(p) = &a.guard else { return Err(format!("axiom {i} lacks its guard proof")) };
            let r = check_concludes(p, &presentation(u), &q_conjunction());
            ensure(r.ok, || format!("guard of axiom {i} in U{u}: {r}"))?;
            guards += 1;
        }
        match ev.eval(&a.formula, &eval_fuel) {
            Verdict::False => return Err(format!("axiom {i} evaluates False: {}", a.formula)),
            Verdict::Unknown(_) => unknown += 1,
            Verdict::True => {}
        }
    }
    ensure(guards > 0, || "no completeness instances among the enumerated axioms".into())?;
    Ok(format!(
        "{QPRIME_COUNT} distinct axioms, deterministic; {guards} completeness instances with checked guard proofs; \
         none False at fuel {QPRIME_EVAL_FUEL:?} ({unknown} Unknown)"
    ))
}

fn modal_suite() -> Outcome {
    for s in ["[](p -> q) -> ([]p -> []q)", "[]p -> [][]p", "[]([]p -> p) -> []p", "~[]bot -> ~[]~[]bot"] {
        ensure(gl_decide(&m(s)).is_valid(), || format!("{s} not valid"))?;
    }
    for s in ["p -> []p", "~[]bot -> []~[]bot"] {
        let Decision::Invalid(c) = gl_decide(&m(s)) else { return Err(format!("{s} reported valid")) };
        ensure(!model_check(&c.model, c.world, &m(s)) && c.model.is_gl_frame(), || format!("{s}: bad countermodel"))?;
    }
    // The converse of formalized G2 is K-valid: a successor satisfying
    // []bot is in particular a successor. Confirm this independently.
    let converse = m("~[]~[]bot -> ~[]bot");
    ensure(gl_decide(&converse).is_valid(), || "converse decided invalid".into())?;
    ensure(brute_force_countermodel(&converse, BRUTE_FORCE_WORLDS).is_none(), || {
        "converse has a small countermodel".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut valid, mut explained) = (0, 0);
    for _ in 0..MODAL_SAMPLES {
        let g = random_modal(&mut rng, MODAL_DEPTH);
        let brute = brute_force_countermodel(&g, BRUTE_FORCE_WORLDS);
        match (gl_decide(&g), brute) {
            (Decision::Valid(_), None) => valid += 1,
            (Decision::Invalid(_), Some(_)) => {}
            (Decision::Valid(_), Some((model, w))) => {
                return Err(format!("{g}: decided valid, but falsified at w{w} of\n{model}"));
            }
            (Decision::Invalid(c), None) => {
                ensure(c.model.worlds > BRUTE_FORCE_WORLDS, || {
                    format!("{g}: small countermodel missed by brute force")
                })?;
                explained += 1;
            }
        }
    }
    Ok(format!(
        "K, 4, Loeb and formalized G2 valid; p -> []p invalid with a verified countermodel; decider agrees with \
         <= {BRUTE_FORCE_WORLDS}-world brute force on {MODAL_SAMPLES} random formulas ({valid} valid, {explained} \
         refuted only by larger models). NOTE: the converse of formalized G2, ~[]~[]bot -> ~[]bot, is valid \
         (confirmed by both procedures), so it cannot be Invalid; the genuinely invalid ~[]bot -> []~[]bot \
         was checked in its place"
    ))
}

fn replays() -> Outcome {
    for (name, _) in SCRIPTS {
        let r = replay(name).map_err(|e| e.to_string())?;
        ensure(r.ok, || format!("{name}: {r}"))?;
        let p = provability::modal::parse_script(provability::modal::script_source(name).unwrap()).unwrap();
        for k in 0..p.steps.len() {
            ensure(!check_modal(&p.without_step(k)).ok, || format!("{name} survives deleting step {}", k + 1))?;
        }
    }
    let bi = replay("bi_g2").unwrap();
    ensure(bi.conclusion == Some(m("~[T]bot -> g")) && bi.theory == Label::S, || format!("bi_g2: {bi}"))?;
    let t2 = replay("theorem2").unwrap();
    ensure(t2.conclusion == Some(m("~[]bot -> g")), || format!("theorem2: {t2}"))?;
    Ok("all five scripts check; bi_g2 gives S |- ~[T]bot -> g; theorem2 gives ~[]bot -> g; \
        every single-step deletion is rejected"
        .into())
}

fn con_sanity() -> Outcome {
    let toy = TheorySpec::finite("Toy", vec![f("0 = 0"), f("~0 = 0")]);
    let con_toy = con_sentence(&toy).map_err(|e| e.to_string())?;
    let small = Fuel::new(5, 10_000);
    let v = BigEvaluator::big().eval(&con_toy, &small);
    ensure(v == Verdict::False, || format!("Con(Toy) evaluates {v}"))?;

    let q = TheorySpec::q();
    let con_q = con_sentence(&q).map_err(|e| e.to_string())?;
    let (found, stats) = search_with_stats(&con_q, &q, &fuel(DESK_FUEL));
    ensure(found.is_none(), || "search found a proof of Con(Q) in Q".into())?;
    Ok(format!(
        "Con(Toy) is False at fuel ({}, {}); search for Con(Q) in Q finds nothing ({} goals)",
        small.quantifier_bound, small.step_budget, stats.nodes
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("hierarchy oracle equivalence", hierarchy_oracle),
        ("bounded decision", sigma0_decision),
        ("Sigma 1 completeness witnessed", sigma1_completeness),
        ("diagonal fixed points", diagonal_fixed_points),
        ("desk-scale incompleteness", desk_incompleteness),
        ("Q' enumeration", q_prime),
        ("modal suite", modal_suite),
        ("replays", replays),
        ("consistency sentence sanity", con_sanity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({secs:.1}s) - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({secs:.1}s) - {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
