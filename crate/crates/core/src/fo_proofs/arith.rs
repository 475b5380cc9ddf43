//! Robinson's Q and proofs of true bounded and Σ1 sentences from it.
//!
//! The generator follows the textbook argument for Σ1-completeness:
//!
//! * closed terms are normalized to numerals with the recursion equations
//!   for `+` and `*` and congruence;
//! * `m = n` for distinct numerals is refuted by successor injectivity down
//!   to `S(t) != 0`;
//! * `m <= n` is witnessed through the `<=` axiom, and refuted by showing
//!   `z + m = S^m(z)` and cancelling successors;
//! * bounded quantifiers over `x <= n` go through the case lemma
//!   `forall x. (x <= n -> x = 0 \/ ... \/ x = n)`, proved by induction on
//!   `n` in the metatheory from the predecessor and `<=` axioms;
//! * unbounded existentials are introduced at a witness found by search.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::builder::ProofBuilder;
use super::schema::Schema;
use super::FoProof;
use crate::hierarchy::{as_bounded_exists, as_bounded_forall, is_bounded, levels};
use crate::semantics::Fuel;
use crate::syntax::{numeral, Formula, Ident, Term};

pub const Q_AXIOM_COUNT: usize = 8;

const Q_TEXT: [&str; Q_AXIOM_COUNT] = [
    "forall x. ~(S(x) = 0)",
    "forall x. forall y. (S(x) = S(y) -> x = y)",
    "forall x. exists y. (x = 0 \\/ x = S(y))",
    "forall x. x + 0 = x",
    "forall x. forall y. x + S(y) = S(x + y)",
    "forall x. x * 0 = 0",
    "forall x. forall y. x * S(y) = x * y + x",
    "forall x. forall y. (x <= y <-> exists z. z + x = y)",
];

/// Q's axioms in their fixed order.
pub fn q_axioms() -> Vec<Formula> {
    Q_TEXT.iter().map(|s| s.parse().expect("Q axioms parse")).collect()
}

const Q1: usize = 0;
const Q2: usize = 1;
const Q3: usize = 2;
const Q4: usize = 3;
const Q5: usize = 4;
const Q6: usize = 5;
const Q7: usize = 6;
const Q8: usize = 7;

/// Largest numeral a bounded quantifier may range over in generated proofs.
pub const MAX_CASE_BOUND: u64 = 400;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProveError {
    #[error("the sentence is not bounded")]
    NotBounded,
    #[error("the sentence is not Σ1")]
    NotSigma1,
    #[error("the formula has free variables")]
    NotClosed,
    #[error("the sentence is false in the standard model")]
    NotTrue,
    #[error("no proof found within the fuel")]
    FuelExhausted,
    #[error("a bounded quantifier ranges beyond {MAX_CASE_BOUND}")]
    TooLarge,
    #[error("a reflective atom could not be evaluated")]
    Undecidable,
    #[error("the proof would exceed {0} steps")]
    StepLimit(usize),
}

/// Proof generation from Q, with Q's axioms cited under a given index map.
pub(crate) struct Arith {
    pub b: ProofBuilder,
    q_index: [Option<usize>; Q_AXIOM_COUNT],
    q: Vec<Formula>,
    add_memo: HashMap<(Term, Term), (Term, usize)>,
    mul_memo: HashMap<(Term, Term), (Term, usize)>,
    cases: HashMap<u64, usize>,
    step_limit: usize,
}

impl Arith {
    pub fn new(q_index: [Option<usize>; Q_AXIOM_COUNT], step_limit: usize) -> Self {
        Arith {
            b: ProofBuilder::new(),
            q_index,
            q: q_axioms(),
            add_memo: HashMap::new(),
            mul_memo: HashMap::new(),
            cases: HashMap::new(),
            step_limit,
        }
    }

    pub fn for_q() -> Self {
        Self::new(std::array::from_fn(Some), 250_000)
    }

    fn budget(&self) -> Result<(), ProveError> {
        if self.b.len() > self.step_limit {
            Err(ProveError::StepLimit(self.step_limit))
        } else {
            Ok(())
        }
    }

    fn ax(&mut self, i: usize) -> usize {
        let f = self.q[i].clone();
        self.b.axiom(f, self.q_index[i])
    }

    fn ax_inst(&mut self, i: usize, ts: &[Term]) -> usize {
        let a = self.ax(i);
        self.b.inst_all(a, ts)
    }

    // -- terms --------------------------------------------------------------

    /// `(nf, i)` with step `i` proving `t = nf`. Closed terms normalize to
    /// numerals; open terms as far as the recursion equations reach.
    pub fn norm(&mut self, t: &Term) -> Result<(Term, usize), ProveError> {
        self.budget()?;
        Ok(match t {
            Term::Zero | Term::Var(_) => (t.clone(), self.b.refl(t.clone())),
            Term::Succ(s) => {
                let (nb, e) = self.norm(s.base())?;
                if nb == *s.base() {
                    (t.clone(), self.b.refl(t.clone()))
                } else {
                    let target = Term::succ_n(s.count().clone(), nb);
                    (target.clone(), self.b.congr(e, t.clone(), target))
                }
            }
            Term::Add(a, c) | Term::Mul(a, c) => {
                let is_add = matches!(t, Term::Add(..));
                let (na, ea) = self.norm(a)?;
                let (nc, ec) = self.norm(c)?;
                let mk = |x: Term, y: Term| if is_add { Term::add(x, y) } else { Term::mul(x, y) };
                let step1 = self.b.congr(ea, t.clone(), mk(na.clone(), (**c).clone()));
                let step2 = self.b.congr(ec, mk(na.clone(), (**c).clone()), mk(na.clone(), nc.clone()));
                let e1 = self.b.eq_trans(step1, step2);
                let (r, e2) = if is_add { self.add_nf(&na, &nc)? } else { self.mul_nf(&na, &nc)? };
                (r, self.b.eq_trans(e1, e2))
            }
        })
    }

    /// `a + b = r` for normal forms `a`, `b`.
    fn add_nf(&mut self, a: &Term, b: &Term) -> Result<(Term, usize), ProveError> {
        if let Some(hit) = self.add_memo.get(&(a.clone(), b.clone())) {
            return Ok(hit.clone());
        }
        let (k, base) = b.split_succ();
        let base = base.clone();
        let (mut r, mut e) = if base == Term::Zero {
            (a.clone(), self.ax_inst(Q4, std::slice::from_ref(a)))
        } else {
            let stuck = Term::add(a.clone(), base.clone());
            (stuck.clone(), self.b.refl(stuck))
        };
        let k = k.to_u64().ok_or(ProveError::TooLarge)?;
        for j in 1..=k {
            self.budget()?;
            let prev = Term::succ_n(BigUint::from(j - 1), base.clone());
            // a + S(prev) = S(a + prev)
            let q5 = self.ax_inst(Q5, &[a.clone(), prev.clone()]);
            let inner = Term::add(a.clone(), prev);
            let c = self.b.congr(e, Term::succ(inner), Term::succ(r.clone()));
            e = self.b.eq_trans(q5, c);
            r = Term::succ(r);
        }
        self.add_memo.insert((a.clone(), b.clone()), (r.clone(), e));
        Ok((r, e))
    }

    /// `a * b = r` for normal forms `a`, `b`.
    fn mul_nf(&mut self, a: &Term, b: &Term) -> Result<(Term, usize), ProveError> {
        if let Some(hit) = self.mul_memo.get(&(a.clone(), b.clone())) {
            return Ok(hit.clone());
        }
        let (k, base) = b.split_succ();
        let base = base.clone();
        let (mut r, mut e) = if base == Term::Zero {
            (Term::Zero, self.ax_inst(Q6, std::slice::from_ref(a)))
        } else {
            let stuck = Term::mul(a.clone(), base.clone());
            (stuck.clone(), self.b.refl(stuck))
        };
        let k = k.to_u64().ok_or(ProveError::TooLarge)?;
        for j in 1..=k {
            self.budget()?;
            let prev = Term::succ_n(BigUint::from(j - 1), base.clone());
            // a * S(prev) = a * prev + a
            let q7 = self.ax_inst(Q7, &[a.clone(), prev.clone()]);
            let prod = Term::mul(a.clone(), prev);
            let c = self.b.congr(e, Term::add(prod.clone(), a.clone()), Term::add(r.clone(), a.clone()));
            let e1 = self.b.eq_trans(q7, c);
            let (r2, e2) = self.add_nf(&r, a)?;
            e = self.b.eq_trans(e1, e2);
            r = r2;
        }
        self.mul_memo.insert((a.clone(), b.clone()), (r.clone(), e));
        Ok((r, e))
    }

    /// A closed term's value and a proof of `t = value`.
    fn value(&mut self, t: &Term) -> Result<(BigUint, usize), ProveError> {
        let (nf, e) = self.norm(t)?;
        let v = nf.as_numeral().ok_or(ProveError::NotClosed)?;
        Ok((v, e))
    }

    // -- atomic facts -------------------------------------------------------

    /// `~(0 = t)` from `~(t = 0)`.
    fn zero_neq(&mut self, t: &Term, neq: usize) -> usize {
        let l = self.b.leibniz(&Term::Zero, t, Formula::eq(Term::Zero, Term::Zero), Formula::eq(t.clone(), Term::Zero));
        let r = self.b.refl(Term::Zero);
        self.b.taut_mp(&[l, r, neq], Formula::not(Formula::eq(Term::Zero, t.clone())))
    }

    /// `~(S^d(base) = S^e(0))` where the difference makes it false:
    /// either `d > e` (any base) or `base = 0` and `d != e`.
    fn succ_neq(&mut self, base: &Term, d: u64, e: u64) -> Result<usize, ProveError> {
        let sn = |k: u64, b: &Term| Term::succ_n(BigUint::from(k), b.clone());
        let mut cur = if d > e {
            // ~(S^(d-e)(base) = 0) from Q1
            let t = sn(d - e - 1, base);
            self.ax_inst(Q1, &[t])
        } else {
            // base = 0, d < e: ~(0 = S^(e-d)(0))
            let t = sn(e - d - 1, &Term::Zero);
            let q1 = self.ax_inst(Q1, std::slice::from_ref(&t));
            self.zero_neq(&Term::succ(t), q1)
        };
        let steps = d.min(e);
        let (d0, e0) = (d - steps, e - steps);
        for j in 1..=steps {
            self.budget()?;
            let (l, r) = (sn(d0 + j - 1, base), sn(e0 + j - 1, &Term::Zero));
            let q2 = self.ax_inst(Q2, &[l.clone(), r.clone()]);
            let goal = Formula::not(Formula::eq(Term::succ(l), Term::succ(r)));
            cur = self.b.taut_mp(&[q2, cur], goal);
        }
        Ok(cur)
    }

    /// Proves `a = b` or `~(a = b)` for closed terms.
    fn decide_eq(&mut self, a: &Term, b: &Term) -> Result<(bool, usize), ProveError> {
        let (va, ea) = self.value(a)?;
        let (vb, eb) = self.value(b)?;
        let (na, nb) = (numeral(va.clone()), numeral(vb.clone()));
        if va == vb {
            let s = self.b.eq_symm(eb);
            return Ok((true, self.b.eq_trans(ea, s)));
        }
        let (da, db) = (va.to_u64().ok_or(ProveError::TooLarge)?, vb.to_u64().ok_or(ProveError::TooLarge)?);
        let neq = self.succ_neq(&Term::Zero, da, db)?;
        let l1 = self.b.leibniz(a, &na, Formula::eq(a.clone(), b.clone()), Formula::eq(na.clone(), b.clone()));
        let l2 = self.b.leibniz(b, &nb, Formula::eq(na.clone(), b.clone()), Formula::eq(na, nb.clone()));
        let goal = Formula::not(Formula::eq(a.clone(), b.clone()));
        Ok((false, self.b.taut_mp(&[l1, l2, ea, eb, neq], goal)))
    }

    /// Proves `a <= b` or `~(a <= b)` for closed terms.
    fn decide_le(&mut self, a: &Term, b: &Term) -> Result<(bool, usize), ProveError> {
        let (va, ea) = self.value(a)?;
        let (vb, eb) = self.value(b)?;
        let (na, nb) = (numeral(va.clone()), numeral(vb.clone()));
        let q8 = self.ax_inst(Q8, &[na.clone(), nb.clone()]);
        let (z, body) = match self.b.formula(q8) {
            Formula::Iff(_, r) => match &**r {
                Formula::Exists(z, body) => (z.clone(), (**body).clone()),
                _ => unreachable!("Q8 shape"),
            },
            _ => unreachable!("Q8 shape"),
        };
        if va <= vb {
            let d = numeral(&vb - &va);
            let (r, sum) = self.add_nf(&d, &na)?;
            debug_assert_eq!(r, nb);
            let ex = self.b.exists_intro(sum, &z, &body);
            let le = self.b.taut_mp(&[q8, ex], Formula::le(na.clone(), nb.clone()));
            let sa = self.b.eq_symm(ea);
            let le = self.b.rewrite(sa, le, Formula::le(a.clone(), nb.clone()));
            let sb = self.b.eq_symm(eb);
            let le = self.b.rewrite(sb, le, Formula::le(a.clone(), b.clone()));
            return Ok((true, le));
        }
        // z + a = S^a(z), then cancel successors against b
        let (da, db) = (va.to_u64().ok_or(ProveError::TooLarge)?, vb.to_u64().ok_or(ProveError::TooLarge)?);
        let zt = Term::Var(z.clone());
        let (sz, e) = self.add_nf(&zt, &na)?;
        let neq = self.succ_neq(&zt, da, db)?;
        let l =
            self.b.leibniz(&Term::add(zt.clone(), na.clone()), &sz, body.clone(), Formula::eq(sz.clone(), nb.clone()));
        let not_body = self.b.taut_mp(&[l, e, neq], Formula::not(body.clone()));
        let all = self.b.gen(not_body, &z);
        let def = self.b.exists_def(&z, &body);
        let neg = self.b.taut_mp(&[q8, def, all], Formula::not(Formula::le(na.clone(), nb.clone())));
        let l1 = self.b.leibniz(a, &na, Formula::le(a.clone(), b.clone()), Formula::le(na.clone(), b.clone()));
        let l2 = self.b.leibniz(b, &nb, Formula::le(na.clone(), b.clone()), Formula::le(na, nb.clone()));
        let goal = Formula::not(Formula::le(a.clone(), b.clone()));
        Ok((false, self.b.taut_mp(&[l1, l2, ea, eb, neg], goal)))
    }

    // -- case lemma ---------------------------------------------------------

    /// `forall x. (x <= n -> x = 0 \/ ... \/ x = n)` with the variable `x`.
    fn case_lemma(&mut self, n: u64) -> Result<usize, ProveError> {
        if n > MAX_CASE_BOUND {
            return Err(ProveError::TooLarge);
        }
        if let Some(&i) = self.cases.get(&n) {
            return Ok(i);
        }
        let start = self.cases.keys().copied().max().map_or(0, |m| m + 1);
        for k in start..=n {
            let i = self.case_lemma_step(k)?;
            self.cases.insert(k, i);
        }
        Ok(self.cases[&n])
    }

    fn case_lemma_step(&mut self, n: u64) -> Result<usize, ProveError> {
        self.budget()?;
        let (x, y, z) = (Term::var("x"), Term::var("y"), Term::var("z"));
        let (xv, yv, zv) = (Ident::from_static("x"), Ident::from_static("y"), Ident::from_static("z"));
        let nn = numeral(n);
        let disj = |v: &Term, upto: u64| Formula::disj((0..=upto).map(|i| Formula::eq(v.clone(), numeral(i))));
        let d = disj(&x, n);
        let sy = Term::succ(y.clone());
        let zx = Term::add(z.clone(), x.clone());
        let zsy = Term::add(z.clone(), sy.clone());
        let x_is_sy = Formula::eq(x.clone(), sy.clone());
        let zx_eq_n = Formula::eq(zx.clone(), nn.clone());
        // x = S(y) -> (z + x = n -> z + S(y) = n)
        let leib = self.b.leibniz(&x, &sy, zx_eq_n.clone(), Formula::eq(zsy.clone(), nn.clone()));
        // z + S(y) = S(z + y)
        let q5 = self.ax_inst(Q5, &[z.clone(), y.clone()]);
        let case_b = if n == 0 {
            let q1 = self.ax_inst(Q1, &[Term::add(z.clone(), y.clone())]);
            let l = self.b.leibniz(
                &zsy,
                &Term::succ(Term::add(z.clone(), y.clone())),
                Formula::eq(zsy.clone(), Term::Zero),
                Formula::eq(Term::succ(Term::add(z.clone(), y.clone())), Term::Zero),
            );
            self.b.taut_mp(&[leib, l, q5, q1], Formula::imp(x_is_sy.clone(), Formula::imp(zx_eq_n.clone(), d.clone())))
        } else {
            let m = n - 1;
            let mm = numeral(m);
            let zy = Term::add(z.clone(), y.clone());
            // z + S(y) = n -> S(z + y) = n -> z + y = m -> y <= m
            let l = self.b.leibniz(
                &zsy,
                &Term::succ(zy.clone()),
                Formula::eq(zsy.clone(), nn.clone()),
                Formula::eq(Term::succ(zy.clone()), nn.clone()),
            );
            let q2 = self.ax_inst(Q2, &[zy.clone(), mm.clone()]);
            let zy_eq = Formula::eq(zy.clone(), mm.clone());
            let intro =
                self.b.logical(Schema::ExistsIntro, Formula::imp(zy_eq.clone(), Formula::exists(zv.clone(), zy_eq)));
            let q8 = self.ax_inst(Q8, &[y.clone(), mm.clone()]);
            let prev = self.cases[&m];
            let prev_y = self.b.inst(prev, &y);
            let mut premises = vec![leib, q5, l, q2, intro, q8, prev_y];
            for i in 0..=m {
                let li = self.b.leibniz(&y, &numeral(i), x_is_sy.clone(), Formula::eq(x.clone(), numeral(i + 1)));
                premises.push(li);
            }
            self.b.taut_mp(&premises, Formula::imp(x_is_sy.clone(), Formula::imp(zx_eq_n.clone(), d.clone())))
        };
        let split = Formula::or(Formula::eq(x.clone(), Term::Zero), x_is_sy);
        let both = self.b.taut_mp(&[case_b], Formula::imp(split, Formula::imp(zx_eq_n.clone(), d.clone())));
        let by_y = self.b.exists_elim(&yv, both);
        let q3 = self.ax_inst(Q3, std::slice::from_ref(&x));
        let from_sum = self.b.mp(by_y, q3);
        let by_z = self.b.exists_elim(&zv, from_sum);
        let q8 = self.ax_inst(Q8, &[x.clone(), nn.clone()]);
        let body = self.b.taut_mp(&[q8, by_z], Formula::imp(Formula::le(x.clone(), nn), d));
        Ok(self.b.gen(body, &xv))
    }

    /// `v <= t -> v = 0 \/ ... \/ v = n` for the value `n` of the closed `t`.
    fn guard_cases(&mut self, v: &Ident, t: &Term) -> Result<(u64, Vec<usize>), ProveError> {
        let (n, e) = self.value(t)?;
        let n = n.to_u64().filter(|&n| n <= MAX_CASE_BOUND).ok_or(ProveError::TooLarge)?;
        let vt = Term::Var(v.clone());
        let transfer =
            self.b.leibniz(t, &numeral(n), Formula::le(vt.clone(), t.clone()), Formula::le(vt.clone(), numeral(n)));
        let lemma = self.case_lemma(n)?;
        let inst = self.b.inst(lemma, &vt);
        Ok((n, vec![transfer, e, inst]))
    }

    /// `v = i -> body` from a proof of `body[i/v]`.
    fn case_implication(&mut self, v: &Ident, i: u64, body: &Formula, proof_of_instance: usize) -> usize {
        let (vt, it) = (Term::Var(v.clone()), numeral(i));
        let sym = self.b.leibniz(&vt, &it, Formula::eq(vt.clone(), vt.clone()), Formula::eq(it.clone(), vt.clone()));
        let r = self.b.refl(vt.clone());
        let inst = self.b.formula(proof_of_instance).clone();
        let l = self.b.leibniz(&it, &vt, inst, body.clone());
        self.b.taut_mp(&[sym, r, l, proof_of_instance], Formula::imp(Formula::eq(vt, it), body.clone()))
    }

    // -- bounded sentences --------------------------------------------------

    /// Proves `f` or `~f` for a closed bounded formula; returns which.
    pub fn decide(&mut self, f: &Formula) -> Result<(bool, usize), ProveError> {
        self.budget()?;
        if let Some((x, t, body)) = as_bounded_forall(f) {
            return self.decide_bounded(f, x, t, body, true);
        }
        if let Some((x, t, body)) = as_bounded_exists(f) {
            return self.decide_bounded(f, x, t, body, false);
        }
        match f {
            Formula::Eq(a, b) => self.decide_eq(a, b),
            Formula::Le(a, b) => self.decide_le(a, b),
            Formula::Bot => Ok((false, self.b.logical(Schema::Taut, Formula::not(Formula::Bot)))),
            Formula::Reflect(r) => {
                let v = crate::reflect::eval_closed(r).ok_or(ProveError::Undecidable)?;
                let fact = if v { f.clone() } else { Formula::not(f.clone()) };
                Ok((v, self.b.computation(fact)))
            }
            Formula::Not(a) => {
                let (v, i) = self.decide(a)?;
                if v {
                    Ok((false, self.b.taut_mp(&[i], Formula::not(f.clone()))))
                } else {
                    Ok((true, i))
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                let (va, ia) = self.decide(a)?;
                let short = match f {
                    Formula::And(..) => !va,
                    Formula::Or(..) => va,
                    Formula::Imp(..) => !va,
                    _ => false,
                };
                let (v, premises) = if short {
                    (matches!(f, Formula::Or(..) | Formula::Imp(..)), vec![ia])
                } else {
                    let (vb, ib) = self.decide(b)?;
                    let v = match f {
                        Formula::And(..) => va && vb,
                        Formula::Or(..) => va || vb,
                        Formula::Imp(..) => !va || vb,
                        _ => va == vb,
                    };
                    (v, vec![ia, ib])
                };
                let goal = if v { f.clone() } else { Formula::not(f.clone()) };
                Ok((v, self.b.taut_mp(&premises, goal)))
            }
            Formula::ForAll(..) | Formula::Exists(..) => Err(ProveError::NotBounded),
        }
    }

    fn decide_bounded(
        &mut self,
        f: &Formula,
        x: &Ident,
        t: &Term,
        body: &Formula,
        universal: bool,
    ) -> Result<(bool, usize), ProveError> {
        let (n, _) = self.value(t)?;
        let n = n.to_u64().filter(|&n| n <= MAX_CASE_BOUND).ok_or(ProveError::TooLarge)?;
        // the first instance deciding the quantifier, if any
        let mut instances = Vec::new();
        for i in 0..=n {
            let (v, p) = self.decide(&body.substitute(x, &numeral(i)))?;
            if v != universal {
                // counterexample (forall) or witness (exists)
                let (_, le) = self.decide_le(&numeral(i), t)?;
                let goal = if universal { Formula::not(f.clone()) } else { f.clone() };
                let step = if universal {
                    let fe = self.b.logical(
                        Schema::ForAllElim,
                        Formula::imp(
                            f.clone(),
                            Formula::imp(Formula::le(numeral(i), t.clone()), body.substitute(x, &numeral(i))),
                        ),
                    );
                    self.b.taut_mp(&[fe, le, p], goal)
                } else {
                    let conj = self.b.taut_mp(
                        &[le, p],
                        Formula::and(Formula::le(numeral(i), t.clone()), body.substitute(x, &numeral(i))),
                    );
                    let inner = Formula::and(Formula::le(Term::Var(x.clone()), t.clone()), body.clone());
                    self.b.exists_intro(conj, x, &inner)
                };
                return Ok((!universal, step));
            }
            instances.push(p);
        }
        // every instance agrees: generalize over the case split
        let (_, mut premises) = self.guard_cases(x, t)?;
        let target_body = if universal { body.clone() } else { Formula::not(body.clone()) };
        for (i, p) in instances.into_iter().enumerate() {
            let imp = self.case_implication(x, i as u64, &target_body, p);
            premises.push(imp);
        }
        let guard = Formula::le(Term::Var(x.clone()), t.clone());
        if universal {
            let open = self.b.taut_mp(&premises, Formula::imp(guard, body.clone()));
            Ok((true, self.b.gen(open, x)))
        } else {
            let conj = Formula::and(guard, body.clone());
            let open = self.b.taut_mp(&premises, Formula::not(conj.clone()));
            let all = self.b.gen(open, x);
            let def = self.b.exists_def(x, &conj);
            Ok((false, self.b.taut_mp(&[def, all], Formula::not(f.clone()))))
        }
    }

    // -- Σ1 sentences -------------------------------------------------------

    /// Proves a true Σ1 sentence by witness search, or `None`.
    pub fn sigma1(&mut self, f: &Formula, fuel: &Fuel, tries: &mut u64) -> Result<Option<usize>, ProveError> {
        self.budget()?;
        if is_bounded(f) {
            return match self.decide(f) {
                Ok((true, i)) => Ok(Some(i)),
                Ok((false, _)) => Ok(None),
                Err(e) => Err(e),
            };
        }
        if let Some((x, t, body)) = as_bounded_forall(f) {
            let (n, _) = self.value(t)?;
            let n = n.to_u64().filter(|&n| n <= MAX_CASE_BOUND).ok_or(ProveError::TooLarge)?;
            let mut premises = Vec::new();
            let mut proofs = Vec::new();
            for i in 0..=n {
                match self.sigma1(&body.substitute(x, &numeral(i)), fuel, tries)? {
                    Some(p) => proofs.push(p),
                    None => return Ok(None),
                }
            }
            let (_, guard) = self.guard_cases(x, t)?;
            premises.extend(guard);
            for (i, p) in proofs.into_iter().enumerate() {
                premises.push(self.case_implication(x, i as u64, body, p));
            }
            let open =
                self.b.taut_mp(&premises, Formula::imp(Formula::le(Term::Var(x.clone()), t.clone()), body.clone()));
            return Ok(Some(self.b.gen(open, x)));
        }
        match f {
            Formula::Exists(x, body) => {
                let candidates: Vec<BigUint> = match crate::reflect::witness_candidates(body, x) {
                    Some(c) => c,
                    None => (0..=fuel.quantifier_bound).map(BigUint::from).collect(),
                };
                for n in candidates {
                    *tries += 1;
                    if *tries > fuel.step_budget {
                        return Ok(None);
                    }
                    let inst = body.substitute(x, &numeral(n));
                    if let Some(p) = self.sigma1(&inst, fuel, tries)? {
                        return Ok(Some(self.b.exists_intro(p, x, body)));
                    }
                }
                Ok(None)
            }
            Formula::And(a, b) => {
                let (Some(pa), Some(pb)) = (self.sigma1(a, fuel, tries)?, self.sigma1(b, fuel, tries)?) else {
                    return Ok(None);
                };
                Ok(Some(self.b.taut_mp(&[pa, pb], f.clone())))
            }
            Formula::Or(a, b) => {
                for side in [a, b] {
                    if let Some(p) = self.sigma1(side, fuel, tries)? {
                        return Ok(Some(self.b.taut_mp(&[p], f.clone())));
                    }
                }
                Ok(None)
            }
            Formula::Imp(a, b) if is_bounded(a) => {
                let (va, pa) = self.decide(a)?;
                if !va {
                    return Ok(Some(self.b.taut_mp(&[pa], f.clone())));
                }
                match self.sigma1(b, fuel, tries)? {
                    Some(pb) => Ok(Some(self.b.taut_mp(&[pb], f.clone()))),
                    None => Ok(None),
                }
            }
            _ => Ok(None),
        }
    }
}

/// A hypothesis-free Q-proof of a true bounded sentence.
pub fn prove_sigma0(s: &Formula) -> Result<FoProof, ProveError> {
    if !is_bounded(s) {
        return Err(ProveError::NotBounded);
    }
    if !s.is_sentence() {
        return Err(ProveError::NotClosed);
    }
    let mut a = Arith::for_q();
    match a.decide(s)? {
        (true, i) => Ok(a.b.finish(i)),
        (false, _) => Err(ProveError::NotTrue),
    }
}

/// A Q-proof of a true Σ1 sentence, found by witness search within `fuel`.
pub fn prove_sigma1(s: &Formula, fuel: &Fuel) -> Result<FoProof, ProveError> {
    if levels(s).sigma > 1 {
        return Err(ProveError::NotSigma1);
    }
    if !s.is_sentence() {
        return Err(ProveError::NotClosed);
    }
    let mut a = Arith::for_q();
    let mut tries = 0;
    match a.sigma1(s, fuel, &mut tries) {
        Ok(Some(i)) => Ok(a.b.finish(i)),
        Ok(None) | Err(ProveError::NotTrue) => Err(ProveError::FuelExhausted),
        Err(e) => Err(e),
    }
}

/// The normal form of `t` under Q's recursion equations, with a proof of
/// `t = nf`.
pub fn normalize_term(t: &Term) -> Result<(Term, FoProof), ProveError> {
    let mut a = Arith::for_q();
    let (nf, i) = a.norm(t)?;
    Ok((nf, a.b.finish(i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo_proofs::check_concludes;
    use crate::theories::TheorySpec;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn proves(s: &str) -> FoProof {
        let goal = f(s);
        let p = prove_sigma0(&goal).unwrap_or_else(|e| panic!("{s}: {e}"));
        let r = check_concludes(&p, &TheorySpec::q(), &goal);
        assert!(r.ok, "{s}: {r}\n{p}");
        p
    }

    #[test]
    fn q_has_eight_axioms() {
        assert_eq!(q_axioms().len(), 8);
        assert_eq!(q_axioms()[2], f("forall x. exists y. (x = 0 \\/ x = S(y))"));
    }

    #[test]
    fn numeral_arithmetic() {
        let p = proves("S(0) + S(0) = S(S(0))");
        assert!(p.len() < 40, "{} steps", p.len());
        proves("S(S(0)) * S(S(S(0))) = 6");
        proves("~(S(0) = 0)");
        proves("~(S(S(0)) = S(0) + S(S(0)))");
        proves("S(0) <= S(S(0))");
        proves("~(S(S(S(0))) <= S(0))");
    }

    #[test]
    fn bounded_quantifiers() {
        proves("forall x. (x <= S(0) -> x + 0 = x)");
        proves("exists x. (x <= 3 /\\ x * x = 4)");
        proves("~exists x. (x <= 3 /\\ x * x = 5)");
        proves("forall x. (x <= 2 -> forall y. (y <= x -> y <= 2))");
        proves("~forall x. (x <= 2 -> x = 0)");
    }

    #[test]
    fn false_sentences_are_rejected() {
        assert_eq!(prove_sigma0(&f("0 = S(0)")), Err(ProveError::NotTrue));
        assert_eq!(prove_sigma0(&f("exists y. y = 0")), Err(ProveError::NotBounded));
    }

    #[test]
    fn sigma1_witnesses() {
        let fuel = Fuel::new(10, 10_000);
        let goal = f("exists y. y + y = S(S(0))");
        let p = prove_sigma1(&goal, &fuel).unwrap();
        assert!(check_concludes(&p, &TheorySpec::q(), &goal).ok);
        assert_eq!(prove_sigma1(&f("exists y. y + y = S(0)"), &fuel), Err(ProveError::FuelExhausted));
    }

    #[test]
    fn open_terms_normalize_partially() {
        let (nf, p) = normalize_term(&"x + S(S(0))".parse().unwrap()).unwrap();
        assert_eq!(nf, "S(S(x))".parse().unwrap());
        assert!(crate::fo_proofs::check(&p, &TheorySpec::q()).ok);
    }
}
