//! Hilbert-style first-order proofs: proof objects, the checker, proof
//! generation for true bounded and Σ1 sentences, and bounded proof search.
//!
//! A proof is a list of hypotheses and a flat list of steps. Each step
//! records its formula and the rule that justifies it:
//!
//! * a logical axiom (one of the [`Schema`]s),
//! * a theory axiom (with the index under the theory's presentation when it
//!   has one),
//! * a hypothesis,
//! * modus ponens from two earlier steps,
//! * generalization of an earlier step, provided the variable is not free in
//!   any hypothesis the earlier step depends on,
//! * a computation fact: a closed statement about the reflective relations
//!   that the checker verifies by running the computation (see
//!   [`crate::reflect::is_computation_fact`]).
//!
//! The proof's conclusion is its last step.

mod arith;
mod builder;
mod format;
mod schema;
mod search;
pub mod taut;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{encode_sequence, GoedelNumber};
use crate::syntax::{Formula, Ident};
use crate::theories::TheorySpec;

pub use arith::{normalize_term, prove_sigma0, prove_sigma1, q_axioms, ProveError, Q_AXIOM_COUNT};
pub use builder::ProofBuilder;
pub use format::{parse_proof, FormatError};
pub use schema::{find_instance, is_instance, leibniz_match, which_schema, Schema};
pub use search::{search, search_with_stats, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    Logical(Schema),
    Axiom(Option<usize>),
    Hyp(usize),
    Mp { imp: usize, ante: usize },
    Gen { step: usize, var: Ident },
    Computation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub formula: Formula,
    pub rule: Rule,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoProof {
    pub hypotheses: Vec<Formula>,
    pub steps: Vec<Step>,
}

impl FoProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.steps.iter().map(|s| &s.formula)
    }

    /// Code of the flat formula sequence, the object `Deriv` and `Uses` read.
    pub fn code(&self) -> GoedelNumber {
        encode_sequence(self.formulas())
    }

    /// Indices of the steps justified as theory axioms.
    pub fn axiom_steps(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().enumerate().filter(|(_, s)| matches!(s.rule, Rule::Axiom(_))).map(|(i, _)| i)
    }

    /// `u ⌢ v ⌢ [ψ]`: from a proof `u` of `φ -> ψ` and a proof `v` of `φ`,
    /// the concatenation closed by modus ponens.
    pub fn concat_mp(u: &FoProof, v: &FoProof) -> Option<FoProof> {
        let psi = match u.conclusion()? {
            Formula::Imp(a, b) if Some(&**a) == v.conclusion() => (**b).clone(),
            _ => return None,
        };
        if u.hypotheses != v.hypotheses {
            return None;
        }
        let shift = u.steps.len();
        let mut steps = u.steps.clone();
        steps.extend(v.steps.iter().map(|s| Step { formula: s.formula.clone(), rule: s.rule.shifted(shift) }));
        let imp = shift - 1;
        let ante = steps.len() - 1;
        steps.push(Step { formula: psi, rule: Rule::Mp { imp, ante } });
        Some(FoProof { hypotheses: u.hypotheses.clone(), steps })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proofs serialize")
    }

    pub fn from_json(s: &str) -> Result<FoProof, serde_json::Error> {
        serde_json::from_str(s)
    }
}

impl Rule {
    fn shifted(&self, by: usize) -> Rule {
        match self {
            Rule::Mp { imp, ante } => Rule::Mp { imp: imp + by, ante: ante + by },
            Rule::Gen { step, var } => Rule::Gen { step: step + by, var: var.clone() },
            other => other.clone(),
        }
    }
}

impl fmt::Display for FoProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format::write_proof(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum StepError {
    #[error("refers to step {0}, which is not earlier")]
    ForwardReference(usize),
    #[error("not an instance of the {} schema", .0.name())]
    SchemaMismatch(Schema),
    #[error("not an axiom of the theory")]
    NotAnAxiom,
    #[error("no hypothesis {0}")]
    NoSuchHypothesis(usize),
    #[error("does not match hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("modus ponens shape mismatch")]
    MpMismatch,
    #[error("generalization shape mismatch")]
    GenMismatch,
    #[error("generalizes {0}, which is free in a hypothesis this step depends on")]
    GenOverHypothesis(Ident),
    #[error("not a verified computation fact")]
    NotAComputationFact,
    #[error("the proof has no steps")]
    Empty,
    #[error("concludes a different formula than expected")]
    ConclusionMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub ok: bool,
    /// 0-based step index and the reason it failed.
    pub first_failure: Option<(usize, StepError)>,
    pub conclusion: Option<Formula>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.first_failure, &self.conclusion) {
            (None, Some(c)) => write!(f, "OK: {c}"),
            (None, None) => write!(f, "OK"),
            (Some((i, e)), _) => write!(f, "FAIL at step {}: {e}", i + 1),
        }
    }
}

/// Checks every step of `p` against `theory`.
pub fn check(p: &FoProof, theory: &TheorySpec) -> CheckReport {
    let fail = |i, e| CheckReport { ok: false, first_failure: Some((i, e)), conclusion: None };
    if p.steps.is_empty() {
        return fail(0, StepError::Empty);
    }
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(p.steps.len());
    for (i, step) in p.steps.iter().enumerate() {
        match check_step(p, i, step, &deps, theory) {
            Ok(d) => deps.push(d),
            Err(e) => return fail(i, e),
        }
    }
    CheckReport { ok: true, first_failure: None, conclusion: p.conclusion().cloned() }
}

/// [`check`], additionally requiring the conclusion to be `expected`.
pub fn check_concludes(p: &FoProof, theory: &TheorySpec, expected: &Formula) -> CheckReport {
    let report = check(p, theory);
    if report.ok && report.conclusion.as_ref() != Some(expected) {
        return CheckReport {
            ok: false,
            first_failure: Some((p.steps.len() - 1, StepError::ConclusionMismatch)),
            conclusion: None,
        };
    }
    report
}

fn check_step(
    p: &FoProof,
    i: usize,
    step: &Step,
    deps: &[BTreeSet<usize>],
    theory: &TheorySpec,
) -> Result<BTreeSet<usize>, StepError> {
    let earlier = |j: usize| if j < i { Ok(&p.steps[j].formula) } else { Err(StepError::ForwardReference(j)) };
    let f = &step.formula;
    match &step.rule {
        Rule::Logical(schema) => {
            if schema.matches(f) {
                Ok(BTreeSet::new())
            } else {
                Err(StepError::SchemaMismatch(*schema))
            }
        }
        Rule::Axiom(index) => {
            if theory.check_axiom(f, *index) {
                Ok(BTreeSet::new())
            } else {
                Err(StepError::NotAnAxiom)
            }
        }
        Rule::Hyp(h) => match p.hypotheses.get(*h) {
            None => Err(StepError::NoSuchHypothesis(*h)),
            Some(hf) if hf == f => Ok(BTreeSet::from([*h])),
            Some(_) => Err(StepError::HypothesisMismatch(*h)),
        },
        Rule::Mp { imp, ante } => {
            let (fi, fa) = (earlier(*imp)?, earlier(*ante)?);
            match fi {
                Formula::Imp(a, b) if **a == *fa && **b == *f => Ok(&deps[*imp] | &deps[*ante]),
                _ => Err(StepError::MpMismatch),
            }
        }
        Rule::Gen { step: j, var } => {
            let body = earlier(*j)?;
            match f {
                Formula::ForAll(v, b) if v == var && **b == *body => {
                    if deps[*j].iter().any(|&h| p.hypotheses[h].has_free(var)) {
                        Err(StepError::GenOverHypothesis(var.clone()))
                    } else {
                        Ok(deps[*j].clone())
                    }
                }
                _ => Err(StepError::GenMismatch),
            }
        }
        Rule::Computation => {
            if crate::reflect::is_computation_fact(f) {
                Ok(BTreeSet::new())
            } else {
                Err(StepError::NotAComputationFact)
            }
        }
    }
}

/// Reconstructs rules for a bare formula sequence: for each entry, whether
/// some logical rule justifies it from earlier entries. Returns the indices
/// left unjustified, i.e. the entries that must be axioms of the theory.
pub fn unjustified(seq: &[Formula]) -> Vec<usize> {
    use std::collections::{HashMap, HashSet};
    let mut seen: HashSet<&Formula> = HashSet::new();
    let mut implications: HashMap<&Formula, Vec<&Formula>> = HashMap::new();
    let mut out = Vec::new();
    for (i, f) in seq.iter().enumerate() {
        let by_mp = || implications.get(f).is_some_and(|ants| ants.iter().any(|a| seen.contains(a)));
        let by_gen = || matches!(f, Formula::ForAll(_, b) if seen.contains(&**b));
        let justified = by_mp() || by_gen() || which_schema(f).is_some() || crate::reflect::is_computation_fact(f);
        if !justified {
            out.push(i);
        }
        seen.insert(f);
        if let Formula::Imp(a, b) = f {
            implications.entry(&**b).or_default().push(&**a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::TheorySpec;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn step(s: &str, rule: Rule) -> Step {
        Step { formula: f(s), rule }
    }

    #[test]
    fn one_step_axiom_proof() {
        let q = TheorySpec::q();
        let p = FoProof {
            hypotheses: vec![],
            steps: vec![step("forall x. forall y. (S(x) = S(y) -> x = y)", Rule::Axiom(Some(1)))],
        };
        assert!(check(&p, &q).ok);
        let wrong = FoProof { hypotheses: vec![], steps: vec![step("0 = S(0)", Rule::Axiom(None))] };
        assert_eq!(check(&wrong, &q).first_failure.unwrap().1, StepError::NotAnAxiom);
    }

    #[test]
    fn generalization_respects_hypotheses() {
        let p = FoProof {
            hypotheses: vec![f("x = 0")],
            steps: vec![
                step("x = 0", Rule::Hyp(0)),
                step("forall x. x = 0", Rule::Gen { step: 0, var: Ident::from_static("x") }),
            ],
        };
        let r = check(&p, &TheorySpec::q());
        assert_eq!(r.first_failure, Some((1, StepError::GenOverHypothesis(Ident::from_static("x")))));
    }

    #[test]
    fn concatenation_closes_with_mp() {
        let u = FoProof { hypotheses: vec![], steps: vec![step("0 = 0 -> 0 = 0", Rule::Logical(Schema::Taut))] };
        let v = FoProof { hypotheses: vec![], steps: vec![step("0 = 0", Rule::Logical(Schema::Refl))] };
        let w = FoProof::concat_mp(&u, &v).unwrap();
        let r = check(&w, &TheorySpec::q());
        assert!(r.ok, "{r}");
        assert_eq!(r.conclusion, Some(f("0 = 0")));
    }

    #[test]
    fn forward_references_fail() {
        let p = FoProof {
            hypotheses: vec![],
            steps: vec![step("0 = 0", Rule::Mp { imp: 1, ante: 1 }), step("0 = 0", Rule::Logical(Schema::Refl))],
        };
        assert_eq!(check(&p, &TheorySpec::q()).first_failure, Some((0, StepError::ForwardReference(1))));
    }

    #[test]
    fn unjustified_entries_are_axiom_uses() {
        let seq = vec![f("forall x. x + 0 = x"), f("(forall x. x + 0 = x) -> 0 + 0 = 0"), f("0 + 0 = 0")];
        assert_eq!(unjustified(&seq), vec![0]);
    }
}
