//! Theory presentations: finite lists, built-in enumerators (PA and the
//! extension Q′ of Q), and defining formulas over codes.
//!
//! Every presentation yields the formula `Ax_T(a)` that the provability
//! predicate uses, and a membership test the proof checker uses; the two
//! agree on every axiom the enumerators can reach.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coding::{diagonal_var, encode_formula, pair, pr_formula, pr_of, unpair};
use crate::fo_proofs::{q_axioms, search, FoProof, Q_AXIOM_COUNT};
use crate::hierarchy::{classify, HierarchyClass, Kind};
use crate::semantics::{Evaluator, Fuel, Verdict};
use crate::syntax::{fresh_name, numeral, EnumeratorId, Formula, Ident, Reflective, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("unknown theory `{0}`")]
    Unknown(String),
    #[error("a defining formula must have at most the free variable x0, found {0}")]
    DefiningFormulaArity(String),
    #[error("an induction formula may only have the free variable {0}")]
    InductionArity(Ident),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}, line {line}: {message}")]
    Parse { path: String, line: usize, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Presentation {
    Finite(Vec<Formula>),
    Enumerated(EnumeratorId),
    /// `formula` has the free variable `x0`, ranging over codes.
    Defined {
        formula: Formula,
        class: Option<HierarchyClass>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheorySpec {
    pub name: String,
    pub presentation: Presentation,
}

impl fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl TheorySpec {
    pub fn finite(name: impl Into<String>, axioms: Vec<Formula>) -> Self {
        TheorySpec { name: name.into(), presentation: Presentation::Finite(axioms) }
    }

    /// Robinson's Q: eight axioms, in the order of [`q_axioms`].
    pub fn q() -> Self {
        Self::finite("Q", q_axioms())
    }

    /// Peano arithmetic: Q followed by induction over the formula pool.
    pub fn pa() -> Self {
        TheorySpec { name: "PA".into(), presentation: Presentation::Enumerated(EnumeratorId::Pa) }
    }

    pub fn q_prime() -> Self {
        TheorySpec { name: "Q'".into(), presentation: Presentation::Enumerated(EnumeratorId::QPrime) }
    }

    /// A theory given by a formula in `x0` that holds of exactly the axiom codes.
    pub fn defined(name: impl Into<String>, formula: Formula) -> Result<Self, TheoryError> {
        let free = formula.free_vars();
        if free.iter().any(|v| *v != diagonal_var()) {
            let names: Vec<String> = free.iter().map(|v| v.to_string()).collect();
            return Err(TheoryError::DefiningFormulaArity(names.join(", ")));
        }
        Ok(TheorySpec { name: name.into(), presentation: Presentation::Defined { formula, class: None } })
    }

    /// Theory registry: `q`, `pa`, `qprime`, or `file:<path>` with one
    /// axiom per line.
    pub fn by_name(name: &str) -> Result<Self, TheoryError> {
        match name.to_ascii_lowercase().as_str() {
            "q" => Ok(Self::q()),
            "pa" => Ok(Self::pa()),
            "qprime" | "q'" => Ok(Self::q_prime()),
            _ => match name.strip_prefix("file:") {
                Some(path) => Self::from_file(path),
                None => Err(TheoryError::Unknown(name.to_string())),
            },
        }
    }

    pub fn from_file(path: &str) -> Result<Self, TheoryError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TheoryError::Io { path: path.to_string(), message: e.to_string() })?;
        let mut axioms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f = line.parse().map_err(|e| TheoryError::Parse {
                path: path.to_string(),
                line: i + 1,
                message: format!("{e}"),
            })?;
            axioms.push(f);
        }
        Ok(Self::finite(path, axioms))
    }

    /// The declared complexity of the axiom set.
    pub fn class(&self) -> HierarchyClass {
        match &self.presentation {
            Presentation::Finite(_) => HierarchyClass::BOUNDED,
            Presentation::Enumerated(_) => HierarchyClass::sigma(1),
            Presentation::Defined { formula, class } => class.unwrap_or_else(|| classify(formula)),
        }
    }

    /// Whether `f` is an axiom (the `index`-th, when given).
    pub fn check_axiom(&self, f: &Formula, index: Option<usize>) -> bool {
        match (&self.presentation, index) {
            (Presentation::Finite(axs), Some(i)) => axs.get(i) == Some(f),
            (Presentation::Finite(axs), None) => axs.contains(f),
            (Presentation::Enumerated(e), Some(i)) => enumerated_axiom(*e, i as u64).as_ref() == Some(f),
            (Presentation::Enumerated(EnumeratorId::Pa), None) => pa_index_of(f).is_some(),
            (Presentation::Enumerated(EnumeratorId::QPrime), None) => q_prime_index_of(f).is_some(),
            (Presentation::Defined { formula, .. }, _) => {
                let inst = formula.substitute(&diagonal_var(), &encode_formula(f).numeral());
                Evaluator::big().eval(&inst, &Fuel::default()) == Verdict::True
            }
        }
    }

    /// The citation for `f` as an axiom: `Some(index)` under the
    /// presentation's numbering, `Some(None)` for a defining formula, and
    /// `None` when `f` is not an axiom.
    pub fn locate_axiom(&self, f: &Formula) -> Option<Option<usize>> {
        match &self.presentation {
            Presentation::Finite(axs) => axs.iter().position(|a| a == f).map(Some),
            Presentation::Enumerated(EnumeratorId::Pa) => pa_index_of(f).and_then(|i| i.to_usize()).map(Some),
            Presentation::Enumerated(EnumeratorId::QPrime) => q_prime_index_of(f).map(|i| Some(i as usize)),
            Presentation::Defined { .. } => self.check_axiom(f, None).then_some(None),
        }
    }

    /// `Ax_T(a)`.
    pub fn axiom_predicate(&self, a: &Term) -> Result<Formula, TheoryError> {
        Ok(match &self.presentation {
            Presentation::Finite(axs) => {
                if axs.is_empty() {
                    Formula::Bot
                } else {
                    Formula::disj(axs.iter().map(|f| Formula::eq(a.clone(), encode_formula(f).numeral())))
                }
            }
            Presentation::Enumerated(e) => {
                let base = Ident::from_static("i");
                let vars = a.vars();
                let i = if vars.contains(&base) { fresh_name(&base, &vars) } else { base };
                Formula::exists(
                    i.clone(),
                    Formula::Reflect(Reflective::EnumAt { enumerator: *e, index: Term::Var(i), axiom: a.clone() }),
                )
            }
            Presentation::Defined { formula, .. } => formula.substitute(&diagonal_var(), a),
        })
    }

    /// Where Q's axioms sit in this presentation, when it contains them.
    pub fn q_indices(&self) -> Option<[Option<usize>; Q_AXIOM_COUNT]> {
        let q = q_axioms();
        match &self.presentation {
            Presentation::Finite(axs) => {
                let mut out = [None; Q_AXIOM_COUNT];
                for (k, ax) in q.iter().enumerate() {
                    out[k] = Some(axs.iter().position(|f| f == ax)?);
                }
                Some(out)
            }
            Presentation::Enumerated(_) => Some(std::array::from_fn(Some)),
            Presentation::Defined { .. } => {
                q.iter().all(|ax| self.check_axiom(ax, None)).then_some([None; Q_AXIOM_COUNT])
            }
        }
    }

    /// The finite axiom list, if the presentation is one.
    pub fn finite_axioms(&self) -> Option<&[Formula]> {
        match &self.presentation {
            Presentation::Finite(axs) => Some(axs),
            _ => None,
        }
    }

    /// This theory plus finitely many axioms, as a finite list when possible.
    pub fn extend(&self, extra: &[Formula]) -> Option<TheorySpec> {
        let axs = self.finite_axioms()?;
        let mut all = axs.to_vec();
        all.extend(extra.iter().filter(|f| !axs.contains(f)).cloned());
        Some(Self::finite(format!("{}+{}", self.name, extra.len()), all))
    }
}

/// `Con_T`, i.e. `~Pr_T(⌜bot⌝)`.
pub fn con_sentence(t: &TheorySpec) -> Result<Formula, TheoryError> {
    Ok(Formula::not(pr_of(t, &Formula::Bot)?))
}

/// The conjunction of Q's axioms.
pub fn q_conjunction() -> Formula {
    Formula::conj(q_axioms())
}

// ---------------------------------------------------------------------------
// Formula pools

const POOL_VAR: &str = "x";

fn pool_base(terms: &[Term]) -> Vec<Formula> {
    let mut atoms = vec![Formula::Bot];
    for s in terms {
        for t in terms {
            atoms.push(Formula::eq(s.clone(), t.clone()));
            atoms.push(Formula::le(s.clone(), t.clone()));
        }
    }
    atoms.sort_by_cached_key(|f| encode_formula(f).0);
    atoms.dedup();
    let mut negs: Vec<Formula> = atoms.iter().cloned().map(Formula::not).collect();
    negs.sort_by_cached_key(|f| encode_formula(f).0);
    atoms.extend(negs);
    atoms
}

struct Pool {
    base: Vec<Formula>,
    index: HashMap<Formula, usize>,
}

impl Pool {
    fn new(terms: &[Term]) -> Self {
        let base = pool_base(terms);
        let index = base.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        Pool { base, index }
    }

    fn get(&self, i: &BigUint) -> Formula {
        let len = BigUint::from(self.base.len());
        match i.to_usize().filter(|&i| i < self.base.len()) {
            Some(i) => self.base[i].clone(),
            None => {
                let (a, b) = unpair(&(i - &len));
                Formula::imp(self.get(&a), Formula::not(self.get(&b)))
            }
        }
    }

    fn position(&self, f: &Formula) -> Option<BigUint> {
        if let Some(&i) = self.index.get(f) {
            return Some(BigUint::from(i));
        }
        match f {
            Formula::Imp(a, nb) => match &**nb {
                Formula::Not(b) => Some(pair(&self.position(a)?, &self.position(b)?) + BigUint::from(self.base.len())),
                _ => None,
            },
            _ => None,
        }
    }
}

fn open_pool() -> &'static Pool {
    static POOL: OnceLock<Pool> = OnceLock::new();
    POOL.get_or_init(|| {
        let x = Term::var(POOL_VAR);
        let one = numeral(1u32);
        Pool::new(&[
            Term::Zero,
            one,
            x.clone(),
            Term::succ(x.clone()),
            Term::add(x.clone(), x.clone()),
            Term::mul(x.clone(), x),
        ])
    })
}

fn closed_pool() -> &'static Pool {
    static POOL: OnceLock<Pool> = OnceLock::new();
    POOL.get_or_init(|| {
        Pool::new(&[
            Term::Zero,
            numeral(1u32),
            numeral(2u32),
            Term::add(numeral(1u32), numeral(1u32)),
            Term::mul(numeral(2u32), numeral(2u32)),
        ])
    })
}

/// The `i`-th formula of the canonical pool in the variable `x`.
pub fn formula_pool(i: u64) -> Formula {
    open_pool().get(&BigUint::from(i))
}

/// The `i`-th sentence of the canonical sentence pool.
pub fn sentence_pool(i: u64) -> Formula {
    closed_pool().get(&BigUint::from(i))
}

/// The `j`-th Σ1 sentence: pool sentences, interleaved with existential
/// closures of pool formulas.
pub fn sigma1_pool(j: u64) -> Formula {
    if j.is_multiple_of(2) {
        sentence_pool(j / 2)
    } else {
        let f = formula_pool(j / 2).substitute(&Ident::from_static(POOL_VAR), &Term::var("x0"));
        Formula::exists(diagonal_var(), f)
    }
}

// ---------------------------------------------------------------------------
// PA

/// The induction axiom for `phi` on `var`.
pub fn pa_schema(phi: &Formula, var: &Ident) -> Result<Formula, TheoryError> {
    if phi.free_vars().iter().any(|v| v != var) {
        return Err(TheoryError::InductionArity(var.clone()));
    }
    let x = Term::Var(var.clone());
    let base = phi.substitute(var, &Term::Zero);
    let step = Formula::forall(var.clone(), Formula::imp(phi.clone(), phi.substitute(var, &Term::succ(x))));
    Ok(Formula::imp(Formula::and(base, step), Formula::forall(var.clone(), phi.clone())))
}

fn pa_axiom(i: u64) -> Formula {
    match usize::try_from(i).ok().filter(|&i| i < Q_AXIOM_COUNT) {
        Some(k) => q_axioms().swap_remove(k),
        None => pa_schema(&formula_pool(i - Q_AXIOM_COUNT as u64), &Ident::from_static(POOL_VAR))
            .expect("pool formulas are unary"),
    }
}

fn pa_index_of(f: &Formula) -> Option<BigUint> {
    if let Some(k) = q_axioms().iter().position(|a| a == f) {
        return Some(BigUint::from(k));
    }
    let Formula::Imp(_, concl) = f else { return None };
    let Formula::ForAll(v, phi) = &**concl else { return None };
    if v.as_str() != POOL_VAR {
        return None;
    }
    let pos = open_pool().position(phi)?;
    let candidate = pa_schema(phi, v).ok()?;
    (candidate == *f).then(|| pos + BigUint::from(Q_AXIOM_COUNT))
}

// ---------------------------------------------------------------------------
// Q′

/// Which part of Q′ an axiom belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QPrimeFamily {
    Q,
    /// `Pr_U(⌜φ -> ψ⌝) -> (Pr_U(⌜φ⌝) -> Pr_U(⌜ψ⌝))` for presentation `u`.
    Distribution {
        u: u64,
        phi: u64,
        psi: u64,
    },
    /// `σ -> Pr_U(⌜σ⌝)`, emitted once U proves the conjunction of Q.
    Completeness {
        u: u64,
        sigma: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPrimeAxiom {
    pub formula: Formula,
    pub family: QPrimeFamily,
    /// For completeness instances: the proof of Q's conjunction in U.
    pub guard: Option<FoProof>,
}

/// The `i`-th presentation of the theory enumeration Q′ quantifies over.
pub fn presentation(i: u64) -> TheorySpec {
    match i {
        0 => TheorySpec::q(),
        1 => TheorySpec::pa(),
        _ => {
            let j = i - 2;
            if j.is_multiple_of(2) {
                let mut axs = q_axioms();
                axs.push(sentence_pool(j / 2));
                TheorySpec::finite(format!("U{i}"), axs)
            } else {
                TheorySpec::finite(format!("U{i}"), vec![sentence_pool(j / 2)])
            }
        }
    }
}

/// The proof-search fuel granted to guard searches at dovetailing stage `s`.
fn guard_fuel(s: u64) -> Fuel {
    Fuel::new(s.min(3), 40 * (s + 1))
}

#[derive(Default)]
struct QPrimeState {
    axioms: Vec<QPrimeAxiom>,
    next_stage: u64,
    /// For each presentation: the stage its guard was found at, and the proof.
    guards: Vec<Option<(u64, FoProof)>>,
}

impl QPrimeState {
    fn guard_at(&mut self, u: u64, s: u64) -> Option<u64> {
        while self.guards.len() <= u as usize {
            self.guards.push(None);
        }
        if let Some((t, _)) = &self.guards[u as usize] {
            return Some(*t);
        }
        let theory = presentation(u);
        let proof = search(&q_conjunction(), &theory, &guard_fuel(s))?;
        self.guards[u as usize] = Some((s, proof));
        Some(s)
    }

    fn run_stage(&mut self) {
        let s = self.next_stage;
        self.next_stage += 1;
        for u in 0..=s {
            for p in 0..=s {
                for r in 0..=s {
                    if u.max(p).max(r) == s {
                        self.axioms.push(distribution_axiom(u, p, r));
                    }
                }
            }
        }
        let found: Vec<Option<u64>> = (0..=s).map(|u| self.guard_at(u, s)).collect();
        for (u, g) in found.into_iter().enumerate() {
            let Some(g) = g else { continue };
            let u = u as u64;
            for j in 0..=s {
                if u.max(j).max(g) == s {
                    let guard = self.guards[u as usize].as_ref().map(|(_, p)| p.clone());
                    self.axioms.push(QPrimeAxiom {
                        formula: completeness_axiom(u, j),
                        family: QPrimeFamily::Completeness { u, sigma: j },
                        guard,
                    });
                }
            }
        }
    }
}

fn distribution_axiom(u: u64, p: u64, r: u64) -> QPrimeAxiom {
    let t = presentation(u);
    let (phi, psi) = (sentence_pool(p), sentence_pool(r));
    let pr = |f: &Formula| pr_of(&t, f).expect("registered presentations are presentable");
    let formula = Formula::imp(pr(&Formula::imp(phi.clone(), psi.clone())), Formula::imp(pr(&phi), pr(&psi)));
    QPrimeAxiom { formula, family: QPrimeFamily::Distribution { u, phi: p, psi: r }, guard: None }
}

fn completeness_axiom(u: u64, j: u64) -> Formula {
    let sigma = sigma1_pool(j);
    let pr = pr_formula(&presentation(u), &encode_formula(&sigma).numeral()).expect("presentable");
    Formula::imp(sigma, pr)
}

fn q_prime_state() -> &'static Mutex<QPrimeState> {
    static STATE: OnceLock<Mutex<QPrimeState>> = OnceLock::new();
    STATE.get_or_init(|| {
        let axioms = q_axioms()
            .into_iter()
            .map(|formula| QPrimeAxiom { formula, family: QPrimeFamily::Q, guard: None })
            .collect();
        Mutex::new(QPrimeState { axioms, ..Default::default() })
    })
}

/// The `i`-th axiom of Q′ with its provenance. The stream is generated on
/// demand and memoized; every caller sees the same sequence.
pub fn q_prime_axiom(i: u64) -> QPrimeAxiom {
    let mut st = q_prime_state().lock().unwrap_or_else(|e| e.into_inner());
    while st.axioms.len() as u64 <= i {
        st.run_stage();
    }
    st.axioms[i as usize].clone()
}

/// Indices of Q′ up to the membership horizon.
const Q_PRIME_HORIZON: u64 = 2_000;

fn q_prime_index_of(f: &Formula) -> Option<u64> {
    q_prime_axiom(Q_PRIME_HORIZON);
    let st = q_prime_state().lock().unwrap_or_else(|e| e.into_inner());
    st.axioms.iter().position(|a| a.formula == *f).map(|i| i as u64)
}

/// The `i`-th axiom of a built-in enumerator.
pub fn enumerated_axiom(e: EnumeratorId, i: u64) -> Option<Formula> {
    Some(match e {
        EnumeratorId::Pa => pa_axiom(i),
        EnumeratorId::QPrime => q_prime_axiom(i).formula,
    })
}

/// Every index at which `e` enumerates the formula coded by `a`, when that
/// set can be computed exactly.
pub fn enumerated_indices(e: EnumeratorId, a: &BigUint) -> Option<Vec<BigUint>> {
    match e {
        EnumeratorId::Pa => {
            let f = crate::coding::decode_formula(a);
            Some(f.and_then(|f| pa_index_of(&f)).into_iter().collect())
        }
        // Q′ never repeats an axiom, so one hit inside the horizon is all of them.
        EnumeratorId::QPrime => {
            let f = crate::coding::decode_formula(a)?;
            q_prime_index_of(&f).map(|i| vec![BigUint::from(i)])
        }
    }
}

// ---------------------------------------------------------------------------
// Reports

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoryFacts {
    /// Whether a proof of Q's conjunction was found.
    pub contains_q: Verdict,
    /// Truth values of the first axioms in the standard model.
    pub sound_sample: Vec<(Formula, Verdict)>,
}

pub fn theory_facts(t: &TheorySpec, sample: u64, fuel: &Fuel) -> TheoryFacts {
    let contains_q = match search(&q_conjunction(), t, fuel) {
        Some(_) => Verdict::True,
        None => Verdict::Unknown(crate::semantics::UnknownReason::ExhaustedFuel),
    };
    let axioms: Vec<Formula> = match &t.presentation {
        Presentation::Finite(axs) => axs.iter().take(sample as usize).cloned().collect(),
        Presentation::Enumerated(e) => (0..sample).filter_map(|i| enumerated_axiom(*e, i)).collect(),
        Presentation::Defined { .. } => Vec::new(),
    };
    let ev = Evaluator::big();
    let sound_sample = axioms
        .into_iter()
        .map(|f| {
            let v = ev.eval(&f, fuel);
            (f, v)
        })
        .collect();
    TheoryFacts { contains_q, sound_sample }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Pi1Report {
    pub proved: Vec<Formula>,
    pub refuted: Vec<Formula>,
    pub undecided: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a Π1 sentence: {0}")]
pub struct NotPi1(pub String);

/// For each Π1 sentence, whether search finds a proof of it or of its
/// negation in `t`.
pub fn pi1_deciding_check(t: &TheorySpec, corpus: &[Formula], fuel: &Fuel) -> Result<Pi1Report, NotPi1> {
    let mut report = Pi1Report::default();
    for f in corpus {
        let c = classify(f);
        let pi1 = f.is_sentence() && (c.level == 0 || (c.level == 1 && c.kind != Kind::Sigma));
        if !pi1 {
            return Err(NotPi1(f.to_string()));
        }
        if search(f, t, fuel).is_some() {
            report.proved.push(f.clone());
        } else if search(&Formula::not(f.clone()), t, fuel).is_some() {
            report.refuted.push(f.clone());
        } else {
            report.undecided.push(f.clone());
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_is_finite_and_indexed() {
        let q = TheorySpec::q();
        assert_eq!(q.finite_axioms().unwrap().len(), 8);
        assert!(q.check_axiom(&q_axioms()[1], Some(1)));
        assert!(!q.check_axiom(&q_axioms()[1], Some(2)));
        assert_eq!(q.q_indices().unwrap()[7], Some(7));
    }

    #[test]
    fn pa_enumerates_q_then_induction() {
        let pa = TheorySpec::pa();
        assert_eq!(enumerated_axiom(EnumeratorId::Pa, 0).unwrap(), q_axioms()[0]);
        let ind = enumerated_axiom(EnumeratorId::Pa, 20).unwrap();
        assert!(pa.check_axiom(&ind, None));
        assert!(pa.check_axiom(&ind, Some(20)));
        let code = encode_formula(&ind).0;
        assert_eq!(enumerated_indices(EnumeratorId::Pa, &code), Some(vec![BigUint::from(20u32)]));
    }

    #[test]
    fn induction_schema_shape() {
        let phi: Formula = "x0 = x0".parse().unwrap();
        let inst = pa_schema(&phi, &diagonal_var()).unwrap();
        let expected: Formula =
            "(0 = 0 /\\ forall x0. (x0 = x0 -> S(x0) = S(x0))) -> forall x0. x0 = x0".parse().unwrap();
        assert_eq!(inst, expected);
        assert!(pa_schema(&"x = y".parse().unwrap(), &Ident::from_static("x")).is_err());
    }

    #[test]
    fn pools_invert() {
        for i in [0u64, 5, 100, 145, 146, 147, 5000] {
            let f = formula_pool(i);
            assert_eq!(open_pool().position(&f), Some(BigUint::from(i)));
        }
        assert!(sentence_pool(3).is_sentence());
        assert!(sigma1_pool(7).is_sentence());
    }

    #[test]
    fn axiom_predicates() {
        let a = Term::var("a");
        assert_eq!(TheorySpec::finite("empty", vec![]).axiom_predicate(&a).unwrap(), Formula::Bot);
        let p = TheorySpec::pa().axiom_predicate(&Term::var("i")).unwrap();
        assert!(matches!(p, Formula::Exists(ref v, _) if v.as_str() == "i1"));
        assert!(TheorySpec::defined("bad", "x = 0".parse().unwrap()).is_err());
    }

    #[test]
    fn q_prime_prefix_starts_with_q() {
        for (k, ax) in q_axioms().iter().enumerate() {
            assert_eq!(q_prime_axiom(k as u64).formula, *ax);
        }
        assert!(matches!(q_prime_axiom(8).family, QPrimeFamily::Distribution { u: 0, phi: 0, psi: 0 }));
    }
}
