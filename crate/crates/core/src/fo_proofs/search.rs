//! Bounded, deterministic proof search.
//!
//! Search is goal-directed and iteratively deepened: at depth `d` a goal may
//! be split into subgoals of depth `d - 1`. At every goal the tactics run in
//! this fixed order, and the first success wins:
//!
//! 1. a step already derived;
//! 2. an axiom of the theory;
//! 3. an instance of a logical schema, or a computation fact;
//! 4. an instance of a universally quantified axiom;
//! 5. when the theory contains Q: the bounded and Σ1 proof generators, and
//!    equations whose sides normalize alike;
//! 6. propositional consequence of the finite axiom list;
//! 7. (depth > 0) decomposition: `/\`, `<->`, `\/`, `->`, `~~`, and the
//!    negated connectives; `forall` by generalization; `exists` by a witness
//!    from a small term pool (determined candidates first); `~forall` by a
//!    counterexample; `~exists` through `forall ~`;
//! 8. (depth > 0) modus ponens backwards from an implicational axiom.
//!
//! Whatever is found is re-checked before it is returned. The search is
//! honest rather than strong: it witnesses that theoremhood is semi-decidable
//! and covers the small goals the rest of the crate asks about.

use std::collections::HashMap;

use num_bigint::BigUint;

use super::arith::{Arith, Q_AXIOM_COUNT};
use super::schema::{which_schema, Schema};
use super::taut::is_tautology;
use super::{check, FoProof};
use crate::hierarchy::{is_bounded, levels};
use crate::semantics::Fuel;
use crate::syntax::{numeral, Formula, Ident, Reflective, Term};
use crate::theories::TheorySpec;

const MAX_DEPTH: u32 = 8;
const MAX_POOL_WITNESS: u64 = 3;
const MAX_PROPOSITIONAL_AXIOMS: usize = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Goals visited.
    pub nodes: u64,
    /// The deepest iteration started.
    pub depth: u32,
    pub found: bool,
}

struct Searcher<'a> {
    theory: &'a TheorySpec,
    fuel: &'a Fuel,
    arith: Arith,
    has_q: bool,
    axioms: Vec<(Formula, Option<usize>)>,
    failed: HashMap<Formula, u32>,
    nodes: u64,
}

/// A proof of `goal` in `theory` within `fuel`, if search finds one.
pub fn search(goal: &Formula, theory: &TheorySpec, fuel: &Fuel) -> Option<FoProof> {
    search_with_stats(goal, theory, fuel).0
}

pub fn search_with_stats(goal: &Formula, theory: &TheorySpec, fuel: &Fuel) -> (Option<FoProof>, SearchStats) {
    let q_index = theory.q_indices();
    let axioms = match theory.finite_axioms() {
        Some(axs) => axs.iter().cloned().enumerate().map(|(i, f)| (f, Some(i))).collect(),
        None => match &q_index {
            Some(idx) => crate::fo_proofs::q_axioms().into_iter().zip(idx.iter().copied()).collect(),
            None => Vec::new(),
        },
    };
    let mut s = Searcher {
        theory,
        fuel,
        arith: Arith::new(q_index.unwrap_or([None; Q_AXIOM_COUNT]), 200_000),
        has_q: q_index.is_some(),
        axioms,
        failed: HashMap::new(),
        nodes: 0,
    };
    let mut stats = SearchStats::default();
    for depth in 0..=MAX_DEPTH {
        stats.depth = depth;
        if let Some(i) = s.prove(goal, depth) {
            let proof = s.arith.b.finish(i);
            stats.nodes = s.nodes;
            if check(&proof, theory).ok && proof.conclusion() == Some(goal) {
                stats.found = true;
                return (Some(proof), stats);
            }
            debug_assert!(false, "search produced a proof the checker rejects:\n{proof}");
            return (None, stats);
        }
        if s.exhausted() {
            break;
        }
    }
    stats.nodes = s.nodes;
    (None, stats)
}

impl Searcher<'_> {
    fn exhausted(&self) -> bool {
        self.nodes >= self.fuel.step_budget
    }

    fn b(&mut self) -> &mut super::ProofBuilder {
        &mut self.arith.b
    }

    /// `premises => goal` by one tautology, if it is one.
    fn taut(&mut self, premises: &[usize], goal: &Formula) -> Option<usize> {
        let chain =
            premises.iter().rev().fold(goal.clone(), |acc, &p| Formula::imp(self.arith.b.formula(p).clone(), acc));
        is_tautology(&chain).then(|| self.b().taut_mp(premises, goal.clone()))
    }

    fn prove(&mut self, goal: &Formula, depth: u32) -> Option<usize> {
        if let Some(i) = self.arith.b.find(goal) {
            return Some(i);
        }
        if self.exhausted() || self.failed.get(goal).is_some_and(|&d| d >= depth) {
            return None;
        }
        self.nodes += 1;
        let found = self.shallow(goal).or_else(|| if depth > 0 { self.deep(goal, depth) } else { None });
        if found.is_none() {
            self.failed.insert(goal.clone(), depth);
        }
        found
    }

    /// Tactics 1–6.
    fn shallow(&mut self, goal: &Formula) -> Option<usize> {
        if let Some(index) = self.theory.locate_axiom(goal) {
            return Some(self.b().axiom(goal.clone(), index));
        }
        if let Some(schema) = which_schema(goal) {
            return Some(self.b().logical(schema, goal.clone()));
        }
        if crate::reflect::is_computation_fact(goal) {
            return Some(self.b().computation(goal.clone()));
        }
        for k in 0..self.axioms.len() {
            if let Some(i) = self.instance_of_axiom(k, goal) {
                return Some(i);
            }
        }
        if self.has_q {
            if let Some(i) = self.arithmetic(goal) {
                return Some(i);
            }
        }
        self.propositional(goal)
    }

    fn instance_of_axiom(&mut self, k: usize, goal: &Formula) -> Option<usize> {
        let (ax, index) = self.axioms[k].clone();
        let mut vars = Vec::new();
        let mut matrix = &ax;
        while let Formula::ForAll(v, body) = matrix {
            vars.push(v.clone());
            matrix = body;
        }
        if vars.is_empty() {
            return None;
        }
        let mut bind = HashMap::new();
        if !match_formula(matrix, goal, &vars, &mut bind) {
            return None;
        }
        let terms: Vec<Term> =
            vars.iter().map(|v| bind.get(v).cloned().unwrap_or_else(|| Term::Var(v.clone()))).collect();
        let a = self.b().axiom(ax, index);
        let i = self.b().inst_all(a, &terms);
        (self.arith.b.formula(i) == goal).then_some(i)
    }

    fn arithmetic(&mut self, goal: &Formula) -> Option<usize> {
        if goal.is_sentence() {
            if is_bounded(goal) {
                return match self.arith.decide(goal) {
                    Ok((true, i)) => Some(i),
                    _ => None,
                };
            }
            if levels(goal).sigma <= 1 {
                let mut tries = 0;
                let fuel = Fuel::new(self.fuel.quantifier_bound, self.fuel.step_budget.saturating_sub(self.nodes));
                return match self.arith.sigma1(goal, &fuel, &mut tries) {
                    Ok(Some(i)) => Some(i),
                    _ => None,
                };
            }
        }
        if let Formula::Eq(s, t) = goal {
            let (ns, es) = self.arith.norm(s).ok()?;
            let (nt, et) = self.arith.norm(t).ok()?;
            if ns == nt {
                let sym = self.b().eq_symm(et);
                return Some(self.b().eq_trans(es, sym));
            }
        }
        None
    }

    fn propositional(&mut self, goal: &Formula) -> Option<usize> {
        let axs = self.theory.finite_axioms()?;
        if axs.is_empty() || axs.len() > MAX_PROPOSITIONAL_AXIOMS {
            return None;
        }
        let chain = axs.iter().rev().fold(goal.clone(), |acc, a| Formula::imp(a.clone(), acc));
        if !is_tautology(&chain) {
            return None;
        }
        // keep only the axioms the tautology needs, dropping greedily
        let mut used: Vec<usize> = (0..axs.len()).collect();
        let mut k = 0;
        while k < used.len() {
            let trial: Vec<usize> = used.iter().copied().filter(|&j| j != used[k]).collect();
            let c = trial.iter().rev().fold(goal.clone(), |acc, &j| Formula::imp(axs[j].clone(), acc));
            if is_tautology(&c) {
                used = trial;
            } else {
                k += 1;
            }
        }
        let steps: Vec<usize> = used.iter().map(|&j| self.arith.b.axiom(axs[j].clone(), Some(j))).collect();
        self.taut(&steps, goal)
    }

    /// Witness terms for an existential: determined candidates, small
    /// numerals, and the goal's free variables.
    fn witness_pool(&self, x: &Ident, body: &Formula) -> Vec<Term> {
        if body.free_vars().iter().all(|v| v == x) {
            if let Some(c) = crate::reflect::witness_candidates(body, x) {
                return c.into_iter().map(numeral).collect();
            }
        }
        let mut pool: Vec<Term> = (0..=self.fuel.quantifier_bound.min(MAX_POOL_WITNESS)).map(numeral).collect();
        pool.extend(body.free_vars().into_iter().filter(|v| v != x).map(Term::Var));
        pool
    }

    fn counterexample_pool(&self, x: &Ident, body: &Formula) -> Vec<Term> {
        if body.free_vars().iter().all(|v| v == x) {
            if let Some(c) = crate::reflect::counterexample_candidates(body, x) {
                return c.into_iter().map(numeral).collect();
            }
        }
        self.witness_pool(x, &Formula::Bot)
            .into_iter()
            .chain(body.free_vars().into_iter().filter(|v| v != x).map(Term::Var))
            .collect()
    }

    /// Tactics 7–8.
    fn deep(&mut self, goal: &Formula, depth: u32) -> Option<usize> {
        let d = depth - 1;
        use Formula as F;
        let found = match goal {
            F::And(a, b) => {
                let pa = self.prove(a, d)?;
                let pb = self.prove(b, d)?;
                self.taut(&[pa, pb], goal)
            }
            F::Iff(a, b) => {
                let pa = self.prove(&F::imp((**a).clone(), (**b).clone()), d)?;
                let pb = self.prove(&F::imp((**b).clone(), (**a).clone()), d)?;
                self.taut(&[pa, pb], goal)
            }
            F::Or(a, b) => self.first_of(&[(**a).clone(), (**b).clone()], goal, d),
            F::Imp(a, b) => self.first_of(&[(**b).clone(), F::not((**a).clone())], goal, d),
            F::ForAll(x, body) => {
                let p = self.prove(body, d)?;
                Some(self.b().gen(p, x))
            }
            F::Exists(x, body) => {
                let mut out = None;
                for t in self.witness_pool(x, body) {
                    if let Some(p) = self.prove(&body.substitute(x, &t), d) {
                        out = Some(self.b().exists_intro(p, x, body));
                        break;
                    }
                }
                out
            }
            F::Not(inner) => match &**inner {
                F::Not(a) => {
                    let p = self.prove(a, d)?;
                    self.taut(&[p], goal)
                }
                F::And(a, b) => self.first_of(&[F::not((**a).clone()), F::not((**b).clone())], goal, d),
                F::Or(a, b) => {
                    let pa = self.prove(&F::not((**a).clone()), d)?;
                    let pb = self.prove(&F::not((**b).clone()), d)?;
                    self.taut(&[pa, pb], goal)
                }
                F::Imp(a, b) => {
                    let pa = self.prove(a, d)?;
                    let pb = self.prove(&F::not((**b).clone()), d)?;
                    self.taut(&[pa, pb], goal)
                }
                F::Iff(a, b) => {
                    let (a, b) = ((**a).clone(), (**b).clone());
                    let l = F::and(a.clone(), F::not(b.clone()));
                    let r = F::and(F::not(a), b);
                    self.first_of(&[l, r], goal, d)
                }
                F::ForAll(x, body) => {
                    let mut out = None;
                    for t in self.counterexample_pool(x, body) {
                        let inst = body.substitute(x, &t);
                        if let Some(p) = self.prove(&F::not(inst.clone()), d) {
                            let elim = self.b().logical(Schema::ForAllElim, F::imp((**inner).clone(), inst));
                            out = self.taut(&[elim, p], goal);
                            break;
                        }
                    }
                    out
                }
                F::Exists(x, body) => {
                    let all = F::forall(x.clone(), F::not((**body).clone()));
                    let p = self.prove(&all, d)?;
                    let def = self.b().exists_def(x, body);
                    self.taut(&[def, p], goal)
                }
                _ => None,
            },
            _ => None,
        };
        found.or_else(|| self.backward_mp(goal, d))
    }

    fn first_of(&mut self, options: &[Formula], goal: &Formula, d: u32) -> Option<usize> {
        for o in options {
            if let Some(p) = self.prove(o, d) {
                return self.taut(&[p], goal);
            }
        }
        None
    }

    fn backward_mp(&mut self, goal: &Formula, d: u32) -> Option<usize> {
        for k in 0..self.axioms.len() {
            let (ax, index) = self.axioms[k].clone();
            if let Formula::Imp(a, b) = &ax {
                if **b == *goal {
                    if let Some(p) = self.prove(a, d) {
                        let imp = self.b().axiom(ax.clone(), index);
                        return Some(self.b().mp(imp, p));
                    }
                }
            }
        }
        None
    }
}

fn match_term(p: &Term, t: &Term, vars: &[Ident], bind: &mut HashMap<Ident, Term>) -> bool {
    match p {
        Term::Var(v) if vars.contains(v) => match bind.get(v) {
            Some(bound) => bound == t,
            None => {
                bind.insert(v.clone(), t.clone());
                true
            }
        },
        Term::Succ(s) => {
            let (m, base) = t.split_succ();
            if m < *s.count() {
                return false;
            }
            let rest: BigUint = m - s.count();
            match_term(s.base(), &Term::succ_n(rest, base.clone()), vars, bind)
        }
        Term::Add(a, b) => matches!(t, Term::Add(c, d) if match_term(a, c, vars, bind) && match_term(b, d, vars, bind)),
        Term::Mul(a, b) => matches!(t, Term::Mul(c, d) if match_term(a, c, vars, bind) && match_term(b, d, vars, bind)),
        _ => p == t,
    }
}

/// Matches `pattern` against `target`, binding the pattern's `vars`.
/// Binders must agree by name; a binder shadows a pattern variable.
fn match_formula(p: &Formula, t: &Formula, vars: &[Ident], bind: &mut HashMap<Ident, Term>) -> bool {
    use Formula as F;
    match (p, t) {
        (F::Eq(a, b), F::Eq(c, d)) | (F::Le(a, b), F::Le(c, d)) => {
            match_term(a, c, vars, bind) && match_term(b, d, vars, bind)
        }
        (F::Bot, F::Bot) => true,
        (F::Reflect(r), F::Reflect(s)) => {
            let same_kind = match (r, s) {
                (Reflective::EnumAt { enumerator: e1, .. }, Reflective::EnumAt { enumerator: e2, .. }) => e1 == e2,
                _ => r.name() == s.name(),
            };
            same_kind && r.args().into_iter().zip(s.args()).all(|(a, b)| match_term(a, b, vars, bind))
        }
        (F::Not(a), F::Not(b)) => match_formula(a, b, vars, bind),
        (F::And(a, b), F::And(c, d))
        | (F::Or(a, b), F::Or(c, d))
        | (F::Imp(a, b), F::Imp(c, d))
        | (F::Iff(a, b), F::Iff(c, d)) => match_formula(a, c, vars, bind) && match_formula(b, d, vars, bind),
        (F::ForAll(x, a), F::ForAll(y, b)) | (F::Exists(x, a), F::Exists(y, b)) if x == y => {
            let inner: Vec<Ident> = vars.iter().filter(|v| *v != x).cloned().collect();
            match_formula(a, b, &inner, bind)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn fuel() -> Fuel {
        Fuel::new(5, 20_000)
    }

    #[test]
    fn reflexivity_is_immediate() {
        let p = search(&f("0 = 0"), &TheorySpec::q(), &fuel()).unwrap();
        assert!(p.len() <= 3);
    }

    #[test]
    fn conjunction_of_q() {
        let goal = crate::theories::q_conjunction();
        let mut axs = crate::fo_proofs::q_axioms();
        axs.push(f("0 = 0 -> 0 = 0"));
        let u = TheorySpec::finite("U", axs);
        assert!(search(&goal, &u, &fuel()).is_some());
        let weak = TheorySpec::finite("W", vec![f("0 = 0")]);
        assert!(search(&goal, &weak, &fuel()).is_none());
    }

    #[test]
    fn axiom_instances_and_arithmetic() {
        let q = TheorySpec::q();
        assert!(search(&f("S(0) + 0 = S(0)"), &q, &fuel()).is_some());
        assert!(search(&f("forall y. S(y) + 0 = S(y)"), &q, &fuel()).is_some());
        assert!(search(&f("~forall x. x = S(0)"), &q, &fuel()).is_some());
        assert!(search(&f("exists y. y * y = 4"), &q, &fuel()).is_some());
    }

    #[test]
    fn inconsistent_theories_prove_bot() {
        let t = TheorySpec::finite("bad", vec![f("0 = 0"), f("~(0 = 0)")]);
        assert!(search(&Formula::Bot, &t, &fuel()).is_some());
        assert!(search(&Formula::Bot, &TheorySpec::q(), &fuel()).is_none());
    }

    #[test]
    fn deterministic() {
        let goal = f("exists y. (y + y = 2 /\\ S(y) = 2)");
        let a = search(&goal, &TheorySpec::q(), &fuel()).unwrap();
        let b = search(&goal, &TheorySpec::q(), &fuel()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}
