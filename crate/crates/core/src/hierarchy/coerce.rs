//! Rewriting a formula into an equivalent one of a required class, with a
//! proof of the equivalence.
//!
//! The rewrites are the standard prenex moves plus one that uses the
//! determinacy of substitution:
//!
//! * `~~A` to `A`; `~exists x. A` to `forall x. ~A`; `~forall x. A` to
//!   `exists x. ~A`;
//! * `exists z. ((exists w. SubTrace(s, n, z, w)) /\ B)` to
//!   `forall z. forall w. (SubTrace(s, n, z, w) -> B)` when `s` and `n` are
//!   closed and the substitution is defined: both say "B holds of the one
//!   `z` the substitution computes".
//!
//! The certificate is a hypothesis-free proof of `f <-> g` from logical
//! axioms and computation facts only, so it is valid in every theory.

use thiserror::Error;

use super::{levels, HierarchyClass};
use crate::coding::substitute_code;
use crate::fo_proofs::{FoProof, ProofBuilder, Schema};
use crate::reflect::eval_closed_term;
use crate::syntax::{numeral, Formula, Ident, Reflective, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coerced {
    pub formula: Formula,
    /// A proof of `original <-> formula`.
    pub certificate: FoProof,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no rewrite of the formula lands in {target} (best reached: Σ{sigma}/Π{pi})")]
pub struct NotAttainable {
    pub target: HierarchyClass,
    pub sigma: u32,
    pub pi: u32,
}

/// An equivalent formula in `target`, with a certificate.
pub fn coerce_to(f: &Formula, target: HierarchyClass) -> Result<Coerced, NotAttainable> {
    let mut best = levels(f);
    for dualize in [false, true] {
        let mut r = Rewriter { b: ProofBuilder::new(), dualize };
        let (g, proof) = if dualize || !target.admits(levels(f)) { r.rewrite(f) } else { (f.clone(), r.b.iff_refl(f)) };
        let lv = levels(&g);
        if target.admits(lv) {
            return Ok(Coerced { formula: g, certificate: r.b.finish(proof) });
        }
        if lv.sigma.min(lv.pi) < best.sigma.min(best.pi) {
            best = lv;
        }
    }
    Err(NotAttainable { target, sigma: best.sigma, pi: best.pi })
}

struct Rewriter {
    b: ProofBuilder,
    dualize: bool,
}

impl Rewriter {
    /// `(g, i)` with step `i` proving `f <-> g`.
    fn rewrite(&mut self, f: &Formula) -> (Formula, usize) {
        use Formula as F;
        match f {
            F::Not(a) => match &**a {
                F::Not(b) => {
                    let (g, p) = self.rewrite(b);
                    (g.clone(), self.b.taut_mp(&[p], F::iff(f.clone(), g)))
                }
                F::Exists(x, b) => {
                    // ~exists x. B <-> forall x. ~B
                    let all = F::forall(x.clone(), F::not((**b).clone()));
                    let def = self.b.exists_def(x, b);
                    let step = self.b.taut_mp(&[def], F::iff(f.clone(), all.clone()));
                    self.chain(step, &all)
                }
                F::ForAll(x, b) => {
                    // ~forall x. B <-> exists x. ~B, through forall x. ~~B <-> forall x. B
                    let nb = F::not((**b).clone());
                    let some = F::exists(x.clone(), nb.clone());
                    let def = self.b.exists_def(x, &nb);
                    let dn = self.b.logical(Schema::Taut, F::iff(F::not(nb.clone()), (**b).clone()));
                    let q = self.b.iff_forall(x, dn);
                    let step = self.b.taut_mp(&[def, q], F::iff(f.clone(), some.clone()));
                    self.chain(step, &some)
                }
                _ => {
                    let (g, p) = self.rewrite(a);
                    let ng = F::not(g);
                    (ng.clone(), self.b.taut_mp(&[p], F::iff(f.clone(), ng)))
                }
            },
            F::And(a, b) | F::Or(a, b) | F::Imp(a, b) | F::Iff(a, b) => {
                let (ga, pa) = self.rewrite(a);
                let (gb, pb) = self.rewrite(b);
                let g = match f {
                    F::And(..) => F::and(ga, gb),
                    F::Or(..) => F::or(ga, gb),
                    F::Imp(..) => F::imp(ga, gb),
                    _ => F::iff(ga, gb),
                };
                (g.clone(), self.b.taut_mp(&[pa, pb], F::iff(f.clone(), g)))
            }
            F::ForAll(x, body) => {
                let (g, p) = self.rewrite(body);
                let q = self.b.iff_forall(x, p);
                (F::forall(x.clone(), g), q)
            }
            F::Exists(x, body) => {
                if self.dualize {
                    if let Some((dual, step)) = self.dualize_sub(x, body) {
                        return self.chain(step, &dual);
                    }
                }
                let (g, p) = self.rewrite(body);
                let q = self.b.iff_exists(x, p);
                (F::exists(x.clone(), g), q)
            }
            _ => (f.clone(), self.b.iff_refl(f)),
        }
    }

    /// Continues from a proof of `f <-> mid` by rewriting `mid`.
    fn chain(&mut self, step: usize, mid: &Formula) -> (Formula, usize) {
        let (g, p) = self.rewrite(mid);
        let f = match self.b.formula(step) {
            Formula::Iff(f, _) => (**f).clone(),
            _ => unreachable!("chain expects a biconditional"),
        };
        (g.clone(), self.b.taut_mp(&[step, p], Formula::iff(f, g)))
    }

    /// `forall v. A -> forall v. B` turned into `A -> forall v. B` when `v`
    /// is not free in `A`.
    fn imp_forall(&mut self, v: &Ident, imp: usize) -> usize {
        let a = match self.b.formula(imp) {
            Formula::Imp(a, _) => (**a).clone(),
            _ => unreachable!(),
        };
        let m = self.b.forall_imp(v, imp);
        let vac = self.b.logical(Schema::VacuousForAll, Formula::imp(a.clone(), Formula::forall(v.clone(), a.clone())));
        let concl = match self.b.formula(m) {
            Formula::Imp(_, r) => Formula::imp(a, (**r).clone()),
            _ => unreachable!(),
        };
        self.b.taut_mp(&[vac, m], concl)
    }

    /// The determined-existential rewrite, with a proof of the equivalence.
    fn dualize_sub(&mut self, z: &Ident, body: &Formula) -> Option<(Formula, usize)> {
        use Formula as F;
        let F::And(sub, psi) = body else { return None };
        let F::Exists(w, atom) = &**sub else { return None };
        let F::Reflect(Reflective::SubTrace { source, arg, result: Term::Var(rz), trace: Term::Var(rw) }) = &**atom
        else {
            return None;
        };
        if rz != z || rw != w || z == w || psi.has_free(w) {
            return None;
        }
        let (s, n) = (eval_closed_term(source)?, eval_closed_term(arg)?);
        let (k, j) = substitute_code(&s, &n)?;
        let (kt, jt) = (numeral(k), numeral(j));
        let (zt, wt) = (Term::Var(z.clone()), Term::Var(w.clone()));
        let st = |r: &Term, t: &Term| {
            F::Reflect(Reflective::SubTrace {
                source: source.clone(),
                arg: arg.clone(),
                result: r.clone(),
                trace: t.clone(),
            })
        };
        let psi_k = psi.substitute(z, &kt);
        let dual = F::forall(z.clone(), F::forall(w.clone(), F::imp(st(&zt, &wt), (**psi).clone())));
        let original = F::exists(z.clone(), body.clone());

        let det_fact = F::forall(
            z.clone(),
            F::forall(
                w.clone(),
                F::imp(st(&zt, &wt), F::and(F::eq(zt.clone(), kt.clone()), F::eq(wt.clone(), jt.clone()))),
            ),
        );
        let det = self.b.computation(det_fact);
        let det_zw = self.b.inst_all(det, &[zt.clone(), wt.clone()]);
        let exists_fact = self.b.computation(st(&kt, &jt));

        // original -> psi(k)
        let to_k = self.b.leibniz(&zt, &kt, (**psi).clone(), psi_k.clone());
        let st_imp = self.b.taut_mp(&[det_zw, to_k], F::imp(st(&zt, &wt), F::imp((**psi).clone(), psi_k.clone())));
        let sub_imp = self.b.exists_elim(w, st_imp);
        let conj_imp = self.b.taut_mp(&[sub_imp], F::imp(body.clone(), psi_k.clone()));
        let fwd1 = self.b.exists_elim(z, conj_imp);

        // psi(k) -> dual
        let sym = self.b.leibniz(&zt, &kt, F::eq(zt.clone(), zt.clone()), F::eq(kt.clone(), zt.clone()));
        let refl = self.b.refl(zt.clone());
        let from_k = self.b.leibniz(&kt, &zt, psi_k.clone(), (**psi).clone());
        let open =
            self.b.taut_mp(&[det_zw, sym, refl, from_k], F::imp(psi_k.clone(), F::imp(st(&zt, &wt), (**psi).clone())));
        let over_w = self.imp_forall(w, open);
        let fwd2 = self.imp_forall(z, over_w);

        // dual -> psi(k)
        let e1 = self.b.logical(
            Schema::ForAllElim,
            F::imp(dual.clone(), F::forall(w.clone(), F::imp(st(&kt, &wt), psi_k.clone()))),
        );
        let e2 = self.b.logical(
            Schema::ForAllElim,
            F::imp(F::forall(w.clone(), F::imp(st(&kt, &wt), psi_k.clone())), F::imp(st(&kt, &jt), psi_k.clone())),
        );
        // psi(k) -> original
        let some_w = self.b.exists_intro(exists_fact, w, &st(&kt, &wt));
        let intro = self.b.logical(
            Schema::ExistsIntro,
            F::imp(F::and(self.b.formula(some_w).clone(), psi_k.clone()), original.clone()),
        );
        let step = self.b.taut_mp(&[fwd1, fwd2, e1, e2, exists_fact, some_w, intro], F::iff(original, dual.clone()));
        Some((dual, step))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::encode_formula;
    use crate::fo_proofs::check;
    use crate::theories::TheorySpec;

    fn certified(f: &Formula, target: HierarchyClass) -> Formula {
        let c = coerce_to(f, target).unwrap();
        let r = check(&c.certificate, &TheorySpec::finite("empty", vec![]));
        assert!(r.ok, "{r}");
        assert_eq!(c.certificate.conclusion(), Some(&Formula::iff(f.clone(), c.formula.clone())));
        c.formula
    }

    #[test]
    fn pushes_negations_through_quantifiers() {
        let f: Formula = "~exists x. ~forall y. x = y".parse().unwrap();
        let mut r = Rewriter { b: ProofBuilder::new(), dualize: false };
        let (g, p) = r.rewrite(&f);
        assert_eq!(g, "forall x. forall y. x = y".parse().unwrap());
        let proof = r.b.finish(p);
        assert!(check(&proof, &TheorySpec::finite("empty", vec![])).ok);
        assert_eq!(proof.conclusion(), Some(&Formula::iff(f, g)));
    }

    #[test]
    fn already_in_class_is_identity() {
        let f: Formula = "exists y. y = 0".parse().unwrap();
        assert_eq!(certified(&f, HierarchyClass::sigma(1)), f);
    }

    #[test]
    fn determined_existential_becomes_universal() {
        let src = encode_formula(&"~(x0 = 0)".parse().unwrap()).numeral();
        let z = Ident::from_static("z");
        let w = Ident::from_static("w");
        let atom = Formula::Reflect(Reflective::SubTrace {
            source: src.clone(),
            arg: src,
            result: Term::Var(z.clone()),
            trace: Term::Var(w.clone()),
        });
        let psi: Formula = "~exists y. y = z".parse().unwrap();
        let f = Formula::exists(z, Formula::and(Formula::exists(w, atom), psi));
        assert!(!HierarchyClass::pi(1).contains(&f));
        let g = certified(&f, HierarchyClass::pi(1));
        assert!(HierarchyClass::pi(1).contains(&g));
    }

    #[test]
    fn unattainable_targets_are_reported() {
        let f: Formula = "forall x. exists y. x = y".parse().unwrap();
        assert!(coerce_to(&f, HierarchyClass::sigma(1)).is_err());
    }
}
