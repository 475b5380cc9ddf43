//! Incremental proof construction with derived rules.
//!
//! Every method appends checker-valid steps and returns the index of the
//! step holding the derived formula. Formulas already derived are reused,
//! and [`ProofBuilder::finish`] prunes everything the goal does not depend
//! on, so generated proofs carry no dead steps.
//!
//! Methods panic on shape errors: those are bugs in the calling generator,
//! and every generated proof is re-checked independently in any case.

use std::collections::HashMap;

use super::schema::Schema;
use super::{FoProof, Rule, Step};
use crate::syntax::{fresh_name, Formula, Ident, Term};

#[derive(Clone, Debug, Default)]
pub struct ProofBuilder {
    hypotheses: Vec<Formula>,
    steps: Vec<Step>,
    index: HashMap<Formula, usize>,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_hypotheses(hypotheses: Vec<Formula>) -> Self {
        ProofBuilder { hypotheses, ..Self::default() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.steps[i].formula
    }

    /// Index of a step already deriving `f`.
    pub fn find(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn push(&mut self, formula: Formula, rule: Rule) -> usize {
        if let Some(i) = self.find(&formula) {
            return i;
        }
        let i = self.steps.len();
        self.index.insert(formula.clone(), i);
        self.steps.push(Step { formula, rule });
        i
    }

    pub fn hyp(&mut self, h: usize) -> usize {
        let f = self.hypotheses[h].clone();
        self.push(f, Rule::Hyp(h))
    }

    pub fn axiom(&mut self, f: Formula, index: Option<usize>) -> usize {
        self.push(f, Rule::Axiom(index))
    }

    pub fn logical(&mut self, schema: Schema, f: Formula) -> usize {
        debug_assert!(schema.matches(&f), "not a {} instance: {f}", schema.name());
        self.push(f, Rule::Logical(schema))
    }

    pub fn computation(&mut self, f: Formula) -> usize {
        self.push(f, Rule::Computation)
    }

    pub fn refl(&mut self, t: Term) -> usize {
        self.logical(Schema::Refl, Formula::eq(t.clone(), t))
    }

    pub fn mp(&mut self, imp: usize, ante: usize) -> usize {
        let consequent = match self.formula(imp) {
            Formula::Imp(a, b) if **a == *self.formula(ante) => (**b).clone(),
            other => panic!("modus ponens on {other} with {}", self.formula(ante)),
        };
        self.push(consequent, Rule::Mp { imp, ante })
    }

    pub fn gen(&mut self, step: usize, var: &Ident) -> usize {
        let f = Formula::forall(var.clone(), self.formula(step).clone());
        self.push(f, Rule::Gen { step, var: var.clone() })
    }

    /// Derives `conclusion` from `premises` by one tautology
    /// `p1 -> (p2 -> ... -> conclusion)` and modus ponens.
    pub fn taut_mp(&mut self, premises: &[usize], conclusion: Formula) -> usize {
        if let Some(i) = self.find(&conclusion) {
            return i;
        }
        let chain = premises.iter().rev().fold(conclusion, |acc, &p| Formula::imp(self.formula(p).clone(), acc));
        let mut cur = self.logical(Schema::Taut, chain);
        for &p in premises {
            cur = self.mp(cur, p);
        }
        cur
    }

    /// From `forall x. φ`, derives `φ[t/x]`.
    pub fn inst(&mut self, forall: usize, t: &Term) -> usize {
        let (x, body) = match self.formula(forall) {
            Formula::ForAll(x, body) => (x.clone(), (**body).clone()),
            other => panic!("instantiating non-universal {other}"),
        };
        let ax = Formula::imp(self.formula(forall).clone(), body.substitute(&x, t));
        let ax = self.logical(Schema::ForAllElim, ax);
        self.mp(ax, forall)
    }

    pub fn inst_all(&mut self, forall: usize, ts: &[Term]) -> usize {
        ts.iter().fold(forall, |acc, t| self.inst(acc, t))
    }

    /// From `φ[t/x]` (the formula at `instance`), derives `exists x. φ`.
    pub fn exists_intro(&mut self, instance: usize, x: &Ident, body: &Formula) -> usize {
        let e = Formula::exists(x.clone(), body.clone());
        let ax = self.logical(Schema::ExistsIntro, Formula::imp(self.formula(instance).clone(), e));
        self.mp(ax, instance)
    }

    /// `exists x. φ <-> ~forall x. ~φ`.
    pub fn exists_def(&mut self, x: &Ident, body: &Formula) -> usize {
        let e = Formula::exists(x.clone(), body.clone());
        let n = Formula::not(Formula::forall(x.clone(), Formula::not(body.clone())));
        self.logical(Schema::ExistsDef, Formula::iff(e, n))
    }

    /// From `A -> B` (possibly open in `x`), derives `forall x. A -> forall x. B`.
    pub fn forall_imp(&mut self, x: &Ident, imp: usize) -> usize {
        let g = self.gen(imp, x);
        let (a, b) = match self.formula(imp) {
            Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("forall_imp on {other}"),
        };
        let dist = Formula::imp(
            self.formula(g).clone(),
            Formula::imp(Formula::forall(x.clone(), a), Formula::forall(x.clone(), b)),
        );
        let dist = self.logical(Schema::ForAllDist, dist);
        self.mp(dist, g)
    }

    /// From `φ -> ψ` with `x` not free in `ψ`, derives `exists x. φ -> ψ`.
    pub fn exists_elim(&mut self, x: &Ident, imp: usize) -> usize {
        let (phi, psi) = match self.formula(imp) {
            Formula::Imp(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("exists_elim on {other}"),
        };
        assert!(!psi.has_free(x), "exists_elim: {x} free in {psi}");
        let (not_phi, not_psi) = (Formula::not(phi.clone()), Formula::not(psi.clone()));
        let contra = self.taut_mp(&[imp], Formula::imp(not_psi.clone(), not_phi));
        // forall x. ~ψ -> forall x. ~φ
        let mono = self.forall_imp(x, contra);
        let vac =
            self.logical(Schema::VacuousForAll, Formula::imp(not_psi.clone(), Formula::forall(x.clone(), not_psi)));
        let def = self.exists_def(x, &phi);
        self.taut_mp(&[vac, mono, def], Formula::imp(Formula::exists(x.clone(), phi), psi))
    }

    /// From `A -> B` (open in `x`), derives `exists x. A -> exists x. B`.
    pub fn exists_imp(&mut self, x: &Ident, imp: usize) -> usize {
        let b = match self.formula(imp) {
            Formula::Imp(_, b) => (**b).clone(),
            other => panic!("exists_imp on {other}"),
        };
        let eb = Formula::exists(x.clone(), b.clone());
        let intro = self.logical(Schema::ExistsIntro, Formula::imp(b, eb.clone()));
        let a = match self.formula(imp) {
            Formula::Imp(a, _) => (**a).clone(),
            _ => unreachable!(),
        };
        let chain = self.taut_mp(&[imp, intro], Formula::imp(a, eb));
        self.exists_elim(x, chain)
    }

    /// From `A <-> B`, derives `forall x. A <-> forall x. B`.
    pub fn iff_forall(&mut self, x: &Ident, iff: usize) -> usize {
        let (a, b) = self.iff_sides(iff);
        let ab = self.taut_mp(&[iff], Formula::imp(a.clone(), b.clone()));
        let ba = self.taut_mp(&[iff], Formula::imp(b.clone(), a.clone()));
        let fab = self.forall_imp(x, ab);
        let fba = self.forall_imp(x, ba);
        let goal = Formula::iff(Formula::forall(x.clone(), a), Formula::forall(x.clone(), b));
        self.taut_mp(&[fab, fba], goal)
    }

    /// From `A <-> B`, derives `exists x. A <-> exists x. B`.
    pub fn iff_exists(&mut self, x: &Ident, iff: usize) -> usize {
        let (a, b) = self.iff_sides(iff);
        let ab = self.taut_mp(&[iff], Formula::imp(a.clone(), b.clone()));
        let ba = self.taut_mp(&[iff], Formula::imp(b.clone(), a.clone()));
        let eab = self.exists_imp(x, ab);
        let eba = self.exists_imp(x, ba);
        let goal = Formula::iff(Formula::exists(x.clone(), a), Formula::exists(x.clone(), b));
        self.taut_mp(&[eab, eba], goal)
    }

    fn iff_sides(&self, iff: usize) -> (Formula, Formula) {
        match self.formula(iff) {
            Formula::Iff(a, b) => ((**a).clone(), (**b).clone()),
            other => panic!("expected a biconditional, got {other}"),
        }
    }

    /// `A <-> A`.
    pub fn iff_refl(&mut self, a: &Formula) -> usize {
        self.logical(Schema::Taut, Formula::iff(a.clone(), a.clone()))
    }

    /// From `s = t` and `A`, derives `B` where `B` is `A` with some free
    /// occurrences of `s` replaced by `t`.
    pub fn rewrite(&mut self, eq: usize, a: usize, b: Formula) -> usize {
        if *self.formula(a) == b {
            return a;
        }
        let l = Formula::imp(self.formula(eq).clone(), Formula::imp(self.formula(a).clone(), b));
        let l = self.logical(Schema::Leibniz, l);
        let l = self.mp(l, eq);
        self.mp(l, a)
    }

    /// `s = t -> (A -> B)` as a step, without discharging it.
    pub fn leibniz(&mut self, s: &Term, t: &Term, a: Formula, b: Formula) -> usize {
        let f = Formula::imp(Formula::eq(s.clone(), t.clone()), Formula::imp(a, b));
        self.logical(Schema::Leibniz, f)
    }

    pub fn eq_symm(&mut self, eq: usize) -> usize {
        let (s, t) = self.eq_sides(eq);
        if s == t {
            return eq;
        }
        let r = self.refl(s.clone());
        self.rewrite(eq, r, Formula::eq(t, s))
    }

    pub fn eq_trans(&mut self, st: usize, tr: usize) -> usize {
        let (s, t) = self.eq_sides(st);
        let (t2, r) = self.eq_sides(tr);
        assert_eq!(t, t2, "eq_trans middle terms differ");
        if s == t {
            return tr;
        }
        if t == r {
            return st;
        }
        self.rewrite(tr, st, Formula::eq(s, r))
    }

    /// From `a = b`, derives `c = d` where `d` is `c` with some occurrences
    /// of `a` replaced by `b`.
    pub fn congr(&mut self, eq: usize, c: Term, d: Term) -> usize {
        let r = self.refl(c.clone());
        self.rewrite(eq, r, Formula::eq(c, d))
    }

    pub fn eq_sides(&self, eq: usize) -> (Term, Term) {
        match self.formula(eq) {
            Formula::Eq(s, t) => (s.clone(), t.clone()),
            other => panic!("expected an equation, got {other}"),
        }
    }

    /// A variable name not occurring in any of `fs`.
    pub fn fresh_var(base: &str, fs: &[&Formula]) -> Ident {
        let mut avoid = std::collections::BTreeSet::new();
        for f in fs {
            avoid.extend(f.all_vars());
        }
        let b = Ident::from_static(base);
        if avoid.contains(&b) {
            fresh_name(&b, &avoid)
        } else {
            b
        }
    }

    /// The proof of the formula at `goal`, pruned to the steps it depends on.
    pub fn finish(&self, goal: usize) -> FoProof {
        let mut needed = vec![false; goal + 1];
        needed[goal] = true;
        for i in (0..=goal).rev() {
            if !needed[i] {
                continue;
            }
            match &self.steps[i].rule {
                Rule::Mp { imp, ante } => {
                    needed[*imp] = true;
                    needed[*ante] = true;
                }
                Rule::Gen { step, .. } => needed[*step] = true,
                _ => {}
            }
        }
        let mut renumber = vec![usize::MAX; goal + 1];
        let mut steps = Vec::new();
        for i in 0..=goal {
            if !needed[i] {
                continue;
            }
            renumber[i] = steps.len();
            let rule = match &self.steps[i].rule {
                Rule::Mp { imp, ante } => Rule::Mp { imp: renumber[*imp], ante: renumber[*ante] },
                Rule::Gen { step, var } => Rule::Gen { step: renumber[*step], var: var.clone() },
                other => other.clone(),
            };
            steps.push(Step { formula: self.steps[i].formula.clone(), rule });
        }
        FoProof { hypotheses: self.hypotheses.clone(), steps }
    }

    /// Copies the steps of a finished proof into this builder (hypothesis
    /// free proofs only) and returns the index of its conclusion.
    pub fn import(&mut self, p: &FoProof) -> usize {
        assert!(p.hypotheses.is_empty(), "import of a proof with hypotheses");
        let mut map = Vec::with_capacity(p.steps.len());
        for s in &p.steps {
            let rule = match &s.rule {
                Rule::Mp { imp, ante } => Rule::Mp { imp: map[*imp], ante: map[*ante] },
                Rule::Gen { step, var } => Rule::Gen { step: map[*step], var: var.clone() },
                other => other.clone(),
            };
            map.push(self.push(s.formula.clone(), rule));
        }
        *map.last().expect("nonempty proof")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo_proofs::check;
    use crate::theories::TheorySpec;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn assert_checks(b: &ProofBuilder, goal: usize, expected: &str) {
        let p = b.finish(goal);
        let r = check(&p, &TheorySpec::q());
        assert!(r.ok, "{r}\n{p}");
        assert_eq!(p.conclusion(), Some(&f(expected)));
    }

    #[test]
    fn exists_elimination() {
        let mut b = ProofBuilder::new();
        let x = Ident::from_static("x");
        let imp = b.logical(Schema::Taut, f("x = 0 /\\ 0 = 0 -> 0 = 0"));
        let e = b.exists_elim(&x, imp);
        assert_checks(&b, e, "(exists x. (x = 0 /\\ 0 = 0)) -> 0 = 0");
    }

    #[test]
    fn equality_reasoning() {
        let mut b = ProofBuilder::with_hypotheses(vec![f("x = y"), f("y = z")]);
        let (h0, h1) = (b.hyp(0), b.hyp(1));
        let s = b.eq_symm(h0);
        assert_checks(&b, s, "y = x");
        let t = b.eq_trans(h0, h1);
        assert_checks(&b, t, "x = z");
        let c = b.congr(h0, Term::succ(Term::var("x")), Term::succ(Term::var("y")));
        assert_checks(&b, c, "S(x) = S(y)");
    }

    #[test]
    fn quantifier_congruence() {
        let mut b = ProofBuilder::new();
        let x = Ident::from_static("x");
        let iff = b.logical(Schema::Taut, f("~~x = 0 <-> x = 0"));
        let fa = b.iff_forall(&x, iff);
        assert_checks(&b, fa, "(forall x. ~~x = 0) <-> forall x. x = 0");
        let ex = b.iff_exists(&x, iff);
        assert_checks(&b, ex, "(exists x. ~~x = 0) <-> exists x. x = 0");
    }

    #[test]
    fn finish_prunes_unused_steps() {
        let mut b = ProofBuilder::new();
        b.refl(Term::Zero);
        let g = b.refl(Term::succ(Term::Zero));
        assert_eq!(b.finish(g).len(), 1);
    }
}
