//! Truth in the standard model, under a fuel budget.
//!
//! Evaluation is three-valued: bounded formulas are decided exactly,
//! unbounded quantifiers are searched up to a witness bound, and anything
//! the search cannot settle is `Unknown`. Connectives follow Kleene's strong
//! tables, so a decided verdict never depends on an undecided part and more
//! fuel can only turn `Unknown` into `True` or `False`.
//!
//! Quantifiers over arguments that a reflective atom determines are exact:
//! in `forall a. (Uses(y, a) -> ...)` only the finitely many `a` used by `y`
//! can matter, and in `exists z. (SubTrace(s, n, z, w) /\ ...)` only the one
//! computed `z`. A provability formula `Pr_T(t)` is recognized by shape and
//! evaluated by proof search in `T`; a found proof is then checked against
//! the formula's own definition.

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{decode_formula, diagonal_var, encode_sequence};
use crate::fo_proofs::search;
use crate::hierarchy::{as_bounded_exists, as_bounded_forall, classify, is_bounded, levels, HierarchyClass};
use crate::num::Natural;
use crate::reflect;
use crate::syntax::{numeral, EnumeratorId, Formula, Ident, Reflective, Term};
use crate::theories::{Presentation, TheorySpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fuel {
    /// Largest witness or counterexample tried for an unbounded quantifier.
    pub quantifier_bound: u64,
    /// Total work units: evaluation steps, and proof-search nodes.
    pub step_budget: u64,
}

impl Fuel {
    pub fn new(quantifier_bound: u64, step_budget: u64) -> Self {
        Fuel { quantifier_bound, step_budget: step_budget.max(1) }
    }

    /// The same fuel scaled up, for fuel ladders.
    pub fn scaled(&self, factor: u64) -> Self {
        Fuel::new(self.quantifier_bound.saturating_mul(factor), self.step_budget.saturating_mul(factor))
    }
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::new(25, 100_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnknownReason {
    ExhaustedFuel,
    /// A value did not fit the evaluator's number type.
    Overflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Unknown(UnknownReason),
}

impl Verdict {
    pub const UNKNOWN: Verdict = Verdict::Unknown(UnknownReason::ExhaustedFuel);

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown(_) => None,
        }
    }

    pub fn is_decided(self) -> bool {
        self.as_bool().is_some()
    }

    pub fn negate(self) -> Self {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            u => u,
        }
    }

    pub fn and(self, other: Self) -> Self {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, v) | (v, Verdict::True) => v,
            (u, _) => u,
        }
    }

    pub fn or(self, other: Self) -> Self {
        self.negate().and(other.negate()).negate()
    }

    pub fn implies(self, other: Self) -> Self {
        self.negate().or(other)
    }

    pub fn iff(self, other: Self) -> Self {
        match (self.as_bool(), other.as_bool()) {
            (Some(a), Some(b)) => Verdict::from_bool(a == b),
            (None, _) => self,
            (_, None) => other,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => write!(f, "True"),
            Verdict::False => write!(f, "False"),
            Verdict::Unknown(UnknownReason::ExhaustedFuel) => write!(f, "Unknown (fuel exhausted)"),
            Verdict::Unknown(UnknownReason::Overflow) => write!(f, "Unknown (overflow)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    Unbound(Ident),
    #[error("value does not fit the number type")]
    Overflow,
    #[error("the formula is not bounded")]
    NotBounded,
    #[error("the formula has free variables")]
    NotClosed,
    #[error("a reflective atom could not be evaluated")]
    Undetermined,
}

/// Decides designated sentences outright.
pub trait Oracle: Send + Sync {
    fn name(&self) -> &str;

    /// `Some` for the sentences this oracle designates.
    fn decide(&self, f: &Formula) -> Option<bool>;
}

/// Decides unbounded Σ1 sentences by fuel-bounded search, reading
/// "no witness found" as false. That closed-world reading is what makes it
/// total; it is only as good as its fuel.
#[derive(Clone, Debug)]
pub struct Sigma1Oracle {
    pub fuel: Fuel,
}

impl Oracle for Sigma1Oracle {
    fn name(&self) -> &str {
        "sigma1"
    }

    fn decide(&self, f: &Formula) -> Option<bool> {
        if !f.is_sentence() || is_bounded(f) || levels(f).sigma > 1 {
            return None;
        }
        Some(BigEvaluator::new().eval(f, &self.fuel) == Verdict::True)
    }
}

/// The evaluator, generic over the number type terms are computed in.
pub struct Evaluator<N: Natural> {
    oracle: Option<Arc<dyn Oracle>>,
    _n: PhantomData<fn() -> N>,
}

pub type Evaluator64 = Evaluator<u64>;
pub type BigEvaluator = Evaluator<BigUint>;

impl<N: Natural> Clone for Evaluator<N> {
    fn clone(&self) -> Self {
        Evaluator { oracle: self.oracle.clone(), _n: PhantomData }
    }
}

impl<N: Natural> Default for Evaluator<N> {
    fn default() -> Self {
        Self::new()
    }
}

impl Evaluator<BigUint> {
    pub fn big() -> Self {
        Self::new()
    }
}

impl<N: Natural> Evaluator<N> {
    pub fn new() -> Self {
        Evaluator { oracle: None, _n: PhantomData }
    }

    pub fn with_oracle(oracle: Arc<dyn Oracle>) -> Self {
        Evaluator { oracle: Some(oracle), _n: PhantomData }
    }

    /// The value of `t` with its free variables read from `env`.
    pub fn eval_term(&self, t: &Term, env: &[(Ident, N)]) -> Result<N, EvalError> {
        match t {
            Term::Zero => Ok(N::zero()),
            Term::Var(v) => env
                .iter()
                .rev()
                .find(|(w, _)| w == v)
                .map(|(_, n)| n.clone())
                .ok_or_else(|| EvalError::Unbound(v.clone())),
            Term::Succ(s) => {
                let base = self.eval_term(s.base(), env)?;
                let k = N::from_big(s.count()).ok_or(EvalError::Overflow)?;
                base.checked_add(&k).ok_or(EvalError::Overflow)
            }
            Term::Add(a, b) => self.eval_term(a, env)?.checked_add(&self.eval_term(b, env)?).ok_or(EvalError::Overflow),
            Term::Mul(a, b) => self.eval_term(a, env)?.checked_mul(&self.eval_term(b, env)?).ok_or(EvalError::Overflow),
        }
    }

    /// The verdict on a sentence.
    pub fn eval(&self, f: &Formula, fuel: &Fuel) -> Verdict {
        Run { ev: self, fuel, steps: 0 }.eval(f)
    }

    /// The verdict on `exists x. body`, with the witness that made it true.
    pub fn eval_with_witness(&self, f: &Formula, fuel: &Fuel) -> (Verdict, Option<BigUint>) {
        let mut run = Run { ev: self, fuel, steps: 0 };
        match f {
            Formula::Exists(x, body) => run.exists(x, body, None),
            _ => (run.eval(f), None),
        }
    }
}

/// Exact truth of a bounded sentence.
pub fn eval_sigma0(s: &Formula) -> Result<bool, EvalError> {
    if !is_bounded(s) {
        return Err(EvalError::NotBounded);
    }
    if !s.is_sentence() {
        return Err(EvalError::NotClosed);
    }
    match BigEvaluator::new().eval(s, &Fuel::new(0, u64::MAX)) {
        Verdict::True => Ok(true),
        Verdict::False => Ok(false),
        Verdict::Unknown(UnknownReason::Overflow) => Err(EvalError::Overflow),
        Verdict::Unknown(_) => Err(EvalError::Undetermined),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FragmentMembership {
    /// Whether the sentence is syntactically in the class.
    pub fits_class: bool,
    pub verdict: Verdict,
}

/// Membership in the true sentences of a class: the class check and the
/// verdict, reported separately.
pub fn truth_fragment_member(s: &Formula, class: HierarchyClass, fuel: &Fuel) -> FragmentMembership {
    FragmentMembership { fits_class: class.contains(s), verdict: BigEvaluator::new().eval(s, fuel) }
}

/// Recognizes `Pr_T(t)` as built by [`crate::coding::pr_formula`], returning
/// `t` and `T`.
pub fn match_pr(f: &Formula) -> Option<(Term, TheorySpec)> {
    let Formula::Exists(y, body) = f else { return None };
    let Formula::And(deriv, guarded) = &**body else { return None };
    let Formula::Reflect(Reflective::Deriv { formula: t, proof: Term::Var(y2) }) = &**deriv else { return None };
    if y2 != y || t.contains_var(y) {
        return None;
    }
    let (a, bound, inner) = as_bounded_forall(guarded)?;
    if *bound != Term::Var(y.clone()) {
        return None;
    }
    let Formula::Imp(uses, ax) = inner else { return None };
    match &**uses {
        Formula::Reflect(Reflective::Uses { proof: Term::Var(p), axiom: Term::Var(b) }) if p == y && b == a => {}
        _ => return None,
    }
    Some((t.clone(), theory_from_axiom_predicate(ax, a)?))
}

fn theory_from_axiom_predicate(ax: &Formula, a: &Ident) -> Option<TheorySpec> {
    if *ax == Formula::Bot {
        return Some(TheorySpec::finite("T", vec![]));
    }
    if let Formula::Exists(i, atom) = ax {
        if let Formula::Reflect(Reflective::EnumAt { enumerator, index: Term::Var(j), axiom: Term::Var(b) }) = &**atom {
            if j == i && b == a {
                return Some(match enumerator {
                    EnumeratorId::Pa => TheorySpec::pa(),
                    EnumeratorId::QPrime => TheorySpec::q_prime(),
                });
            }
        }
    }
    let mut codes = Vec::new();
    if collect_code_disjuncts(ax, a, &mut codes) {
        let axioms = codes.iter().map(decode_formula).collect::<Option<Vec<_>>>()?;
        return Some(TheorySpec::finite("T", axioms));
    }
    let x0 = diagonal_var();
    if a == &x0 || !ax.all_vars().contains(&x0) {
        let formula = ax.substitute(a, &Term::Var(x0));
        return Some(TheorySpec { name: "T".into(), presentation: Presentation::Defined { formula, class: None } });
    }
    None
}

fn collect_code_disjuncts(f: &Formula, a: &Ident, out: &mut Vec<BigUint>) -> bool {
    match f {
        Formula::Or(l, r) => collect_code_disjuncts(l, a, out) && collect_code_disjuncts(r, a, out),
        Formula::Eq(Term::Var(v), c) if v == a => match c.as_numeral() {
            Some(n) => {
                out.push(n);
                true
            }
            None => false,
        },
        _ => false,
    }
}

struct Run<'a, N: Natural> {
    ev: &'a Evaluator<N>,
    fuel: &'a Fuel,
    steps: u64,
}

impl<N: Natural> Run<'_, N> {
    fn tick(&mut self) -> bool {
        self.steps = self.steps.saturating_add(1);
        self.steps <= self.fuel.step_budget
    }

    fn term(&self, t: &Term) -> Result<N, UnknownReason> {
        self.ev.eval_term(t, &[]).map_err(|e| match e {
            EvalError::Overflow => UnknownReason::Overflow,
            _ => UnknownReason::ExhaustedFuel,
        })
    }

    fn eval(&mut self, f: &Formula) -> Verdict {
        if !self.tick() {
            return Verdict::UNKNOWN;
        }
        if let Some(oracle) = &self.ev.oracle {
            if matches!(f, Formula::ForAll(..) | Formula::Exists(..)) && !is_bounded(f) {
                if let Some(b) = oracle.decide(f) {
                    return Verdict::from_bool(b);
                }
            }
        }
        if let Some((t, theory)) = match_pr(f) {
            return self.provability(f, &t, &theory);
        }
        match f {
            Formula::Eq(a, b) | Formula::Le(a, b) => match (self.term(a), self.term(b)) {
                (Ok(x), Ok(y)) => Verdict::from_bool(if matches!(f, Formula::Eq(..)) { x == y } else { x <= y }),
                (Err(r), _) | (_, Err(r)) => Verdict::Unknown(r),
            },
            Formula::Bot => Verdict::False,
            Formula::Reflect(r) => {
                let vals: Result<Vec<BigUint>, _> =
                    r.args().into_iter().map(|t| self.term(t).map(|n| n.to_big())).collect();
                match vals {
                    Ok(vals) => reflect::eval_values(r, &vals).map_or(Verdict::UNKNOWN, Verdict::from_bool),
                    Err(r) => Verdict::Unknown(r),
                }
            }
            Formula::Not(a) => self.eval(a).negate(),
            Formula::And(a, b) => match self.eval(a) {
                Verdict::False => Verdict::False,
                va => va.and(self.eval(b)),
            },
            Formula::Or(a, b) => match self.eval(a) {
                Verdict::True => Verdict::True,
                va => va.or(self.eval(b)),
            },
            Formula::Imp(a, b) => match self.eval(a) {
                Verdict::False => Verdict::True,
                va => va.implies(self.eval(b)),
            },
            Formula::Iff(a, b) => {
                let va = self.eval(a);
                va.iff(self.eval(b))
            }
            Formula::ForAll(x, body) => {
                let bounded = as_bounded_forall(f).map(|(_, t, inner)| (t.clone(), inner.clone()));
                self.forall(x, body, bounded)
            }
            Formula::Exists(x, body) => {
                let bound = as_bounded_exists(f).map(|(_, t, _)| t.clone());
                self.exists(x, body, bound).0
            }
        }
    }

    /// The values a quantifier has to range over: the determined candidates
    /// when some atom fixes the variable, else `0..=limit`. The flag says
    /// whether the range is exhaustive.
    fn range(
        &self,
        candidates: Option<Vec<BigUint>>,
        bound: Option<&Term>,
    ) -> Result<(Vec<BigUint>, bool), UnknownReason> {
        let limit = match bound {
            Some(t) => Some(self.term(t)?.to_big()),
            None => None,
        };
        if let Some(mut c) = candidates {
            if let Some(l) = &limit {
                c.retain(|v| v <= l);
            }
            return Ok((c, true));
        }
        let cap = BigUint::from(self.fuel.quantifier_bound);
        match limit {
            Some(l) => {
                // a bounded range is exhaustive; the step budget stops it if it is huge
                let remaining = self.fuel.step_budget.saturating_sub(self.steps);
                if l >= BigUint::from(remaining) {
                    let upto = remaining;
                    Ok(((0..=upto).map(BigUint::from).collect(), false))
                } else {
                    Ok((range_upto(&l), true))
                }
            }
            None => Ok((range_upto(&cap), false)),
        }
    }

    fn forall(&mut self, x: &Ident, body: &Formula, bounded: Option<(Term, Formula)>) -> Verdict {
        if !body.has_free(x) {
            return self.eval(body);
        }
        let (bound, candidates) = match &bounded {
            Some((t, inner)) => (Some(t), reflect::counterexample_candidates(inner, x)),
            None => (None, reflect::counterexample_candidates(body, x)),
        };
        let (values, exhaustive) = match self.range(candidates, bound) {
            Ok(r) => r,
            Err(r) => return Verdict::Unknown(r),
        };
        let mut acc = Verdict::True;
        for n in values {
            let v = self.eval(&body.substitute(x, &numeral(n)));
            if v == Verdict::False {
                return Verdict::False;
            }
            acc = acc.and(v);
        }
        if exhaustive {
            acc
        } else {
            acc.and(Verdict::UNKNOWN)
        }
    }

    fn exists(&mut self, x: &Ident, body: &Formula, bound: Option<Term>) -> (Verdict, Option<BigUint>) {
        if !body.has_free(x) {
            return (self.eval(body), Some(BigUint::zero()));
        }
        let candidates = reflect::witness_candidates(body, x);
        let (values, exhaustive) = match self.range(candidates, bound.as_ref()) {
            Ok(r) => r,
            Err(r) => return (Verdict::Unknown(r), None),
        };
        let mut acc = Verdict::False;
        for n in values {
            let v = self.eval(&body.substitute(x, &numeral(n.clone())));
            if v == Verdict::True {
                return (Verdict::True, Some(n));
            }
            acc = acc.or(v);
        }
        if exhaustive {
            (acc, None)
        } else {
            (acc.or(Verdict::UNKNOWN), None)
        }
    }

    /// `Pr_T(t)`: false when `t` codes no formula (no sequence ends in it),
    /// true when search finds a proof that meets the definition, else unknown.
    fn provability(&mut self, f: &Formula, t: &Term, theory: &TheorySpec) -> Verdict {
        let code = match self.term(t) {
            Ok(n) => n.to_big(),
            Err(r) => return Verdict::Unknown(r),
        };
        let Some(goal) = decode_formula(&code) else { return Verdict::False };
        let budget = self.fuel.step_budget.saturating_sub(self.steps);
        let Some(proof) = search(&goal, theory, &Fuel::new(self.fuel.quantifier_bound, budget)) else {
            return Verdict::UNKNOWN;
        };
        let y = encode_sequence(proof.formulas()).0;
        let Formula::Exists(yv, body) = f else { unreachable!("matched Pr shape") };
        match self.eval(&body.substitute(yv, &numeral(y))) {
            Verdict::True => Verdict::True,
            _ => Verdict::UNKNOWN,
        }
    }
}

fn range_upto(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut i = BigUint::zero();
    while &i <= n {
        out.push(i.clone());
        i += BigUint::one();
    }
    out
}

/// The least class the sentence belongs to, alongside its verdict.
pub fn classify_and_eval(s: &Formula, fuel: &Fuel) -> (HierarchyClass, Verdict) {
    (classify(s), BigEvaluator::new().eval(s, fuel))
}
