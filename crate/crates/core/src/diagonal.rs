//! The Diagonal Lemma: for `φ(x0)` a sentence `γ` with `Q ⊢ γ <-> φ(⌜γ⌝)`.
//!
//! The construction is the existential one:
//!
//! ```text
//! δ(x0) := exists z. (Sub(x0, x0, z) /\ φ(z))      γ := δ(⌜δ⌝)
//! ```
//!
//! With `m = ⌜δ⌝` and `k = ⌜γ⌝`, the certificate needs exactly two facts
//! about substitution, both checked by computation:
//!
//! * existence: `SubTrace(m, m, k, j)` for the numeral code `j`;
//! * uniqueness: `forall z. forall w. (SubTrace(m, m, z, w) -> z = k)`.
//!
//! The rest is pure logic (Leibniz, ∃-introduction and ∃-elimination), so
//! the certificate holds in every theory and in particular in Q. If the
//! proof cannot be assembled the result records a semantic check instead:
//! the verdicts of both sides along a fuel ladder.

use num_bigint::BigUint;
use thiserror::Error;

use crate::coding::{
    build_pr_formula, build_sub_formula, decode_formula, diagonal_var, encode_formula, substitute_code,
};
use crate::fo_proofs::{check_concludes, FoProof, ProofBuilder, Schema};
use crate::hierarchy::{coerce_to, Coerced, HierarchyClass};
use crate::semantics::{BigEvaluator, Fuel, Verdict};
use crate::syntax::{numeral, Formula, Ident, Reflective, Term};
use crate::theories::{TheoryError, TheorySpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagonalError {
    #[error("the formula must have exactly the free variable x0, found {0:?}")]
    Arity(Vec<String>),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

/// How `γ <-> φ(⌜γ⌝)` is evidenced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A hypothesis-free proof accepted by the checker against Q.
    QProof(FoProof),
    /// Verdicts of `γ` and `φ(⌜γ⌝)` at each fuel level tried.
    SemanticCheck(Vec<(Fuel, Verdict, Verdict)>),
}

impl Certificate {
    pub fn is_proof(&self) -> bool {
        matches!(self, Certificate::QProof(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub gamma: Formula,
    pub phi: Formula,
    /// `δ`, the formula whose code `γ` mentions.
    pub seed: Formula,
    pub certificate: Certificate,
}

impl FixedPoint {
    pub fn gamma_code(&self) -> BigUint {
        encode_formula(&self.gamma).0
    }

    /// `φ(⌜γ⌝)`, the side the certificate relates to `γ`.
    pub fn rhs(&self) -> Formula {
        self.phi.substitute(&diagonal_var(), &numeral(self.gamma_code()))
    }

    /// `γ <-> φ(⌜γ⌝)`.
    pub fn equivalence(&self) -> Formula {
        Formula::iff(self.gamma.clone(), self.rhs())
    }

    /// The code `γ` carries as its substitution source, decoded.
    pub fn embedded_seed(&self) -> Option<Formula> {
        let Formula::Exists(_, body) = &self.gamma else { return None };
        let Formula::And(sub, _) = &**body else { return None };
        let Formula::Exists(_, st) = &**sub else { return None };
        let Formula::Reflect(Reflective::SubTrace { source, .. }) = &**st else { return None };
        decode_formula(&source.as_numeral()?)
    }

    /// Verdicts of both sides along `ladder`.
    pub fn semantic_check(&self, ladder: &[Fuel]) -> Vec<(Fuel, Verdict, Verdict)> {
        let ev = BigEvaluator::big();
        let rhs = self.rhs();
        ladder.iter().map(|fuel| (*fuel, ev.eval(&self.gamma, fuel), ev.eval(&rhs, fuel))).collect()
    }
}

/// Whether two verdicts obtained at the same fuel can both be right.
pub fn coherent(a: Verdict, b: Verdict) -> bool {
    !(a.is_decided() && b.is_decided()) || a == b
}

/// The fuel levels used by the semantic fallback.
pub fn fuel_ladder() -> Vec<Fuel> {
    vec![Fuel::new(2, 2_000), Fuel::new(5, 10_000), Fuel::new(10, 50_000)]
}

pub fn diagonalize(phi: &Formula) -> Result<FixedPoint, DiagonalError> {
    let x0 = diagonal_var();
    let free = phi.free_vars();
    if free.len() != 1 || !free.contains(&x0) {
        return Err(DiagonalError::Arity(free.iter().map(|v| v.as_str().to_string()).collect()));
    }
    let sub = build_sub_formula();
    let mut avoid = phi.all_vars();
    avoid.insert(x0.clone());
    avoid.insert(sub.trace_var.clone());
    let z = fresh(&Ident::from_static("z"), &avoid);
    let x0t = Term::Var(x0.clone());
    let seed = Formula::exists(
        z.clone(),
        Formula::and(sub.instantiate(&x0t, &x0t, &Term::Var(z.clone())), phi.substitute(&x0, &Term::Var(z.clone()))),
    );
    let m = encode_formula(&seed).0;
    let gamma = seed.substitute(&x0, &numeral(m.clone()));
    let mut fp = FixedPoint { gamma, phi: phi.clone(), seed, certificate: Certificate::SemanticCheck(Vec::new()) };
    fp.certificate = match certificate(&fp, &m, &z) {
        Some(p) if check_concludes(&p, &TheorySpec::q(), &fp.equivalence()).ok => Certificate::QProof(p),
        _ => Certificate::SemanticCheck(fp.semantic_check(&fuel_ladder())),
    };
    Ok(fp)
}

fn fresh(base: &Ident, avoid: &std::collections::BTreeSet<Ident>) -> Ident {
    if avoid.contains(base) {
        crate::syntax::fresh_name(base, avoid)
    } else {
        base.clone()
    }
}

/// Assembles the proof of `γ <-> φ(⌜γ⌝)` described in the module docs.
fn certificate(fp: &FixedPoint, m: &BigUint, z: &Ident) -> Option<FoProof> {
    let (k, j) = substitute_code(m, m)?;
    let Formula::Exists(_, body) = &fp.gamma else { return None };
    let Formula::And(sub_z, phi_z) = &**body else { return None };
    let Formula::Exists(w, _) = &**sub_z else { return None };
    let (mt, kt) = (numeral(m.clone()), numeral(k.clone()));
    let trace = |result: Term, tr: Term| {
        Formula::Reflect(Reflective::SubTrace { source: mt.clone(), arg: mt.clone(), result, trace: tr })
    };
    let (zt, wt) = (Term::Var(z.clone()), Term::Var(w.clone()));
    let phi_k = fp.rhs();
    let mut b = ProofBuilder::new();

    // γ -> φ(k)
    let unique = Formula::forall(
        z.clone(),
        Formula::forall(w.clone(), Formula::imp(trace(zt.clone(), wt.clone()), Formula::eq(zt.clone(), kt.clone()))),
    );
    let unique = b.computation(unique);
    let st_eq = b.inst_all(unique, &[zt.clone(), wt.clone()]);
    let leib = b.leibniz(&zt, &kt, (**phi_z).clone(), phi_k.clone());
    let st_imp = b.taut_mp(
        &[st_eq, leib],
        Formula::imp(trace(zt.clone(), wt.clone()), Formula::imp((**phi_z).clone(), phi_k.clone())),
    );
    let sub_imp = b.exists_elim(w, st_imp);
    let body_imp = b.taut_mp(&[sub_imp], Formula::imp((**body).clone(), phi_k.clone()));
    let forward = b.exists_elim(z, body_imp);

    // φ(k) -> γ
    let exists = b.computation(trace(kt.clone(), numeral(j)));
    let sub_k = b.exists_intro(exists, w, &trace(kt.clone(), wt.clone()));
    let body_k = body.substitute(z, &kt);
    let to_body = b.taut_mp(&[sub_k], Formula::imp(phi_k.clone(), body_k.clone()));
    let intro = b.logical(Schema::ExistsIntro, Formula::imp(body_k, fp.gamma.clone()));
    let backward = b.taut_mp(&[to_body, intro], Formula::imp(phi_k, fp.gamma.clone()));

    let goal = b.taut_mp(&[forward, backward], fp.equivalence());
    Some(b.finish(goal))
}

/// A Gödel sentence for `theory` together with its Πn form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoedelSentence {
    pub fixed_point: FixedPoint,
    /// `n` with the theory's axioms Σn-definable (at least 1).
    pub level: u32,
    pub pi_form: Coerced,
}

/// `diagonalize(~Pr_T(x0))`, with the equivalent Πn sentence attached.
pub fn goedel_sentence(theory: &TheorySpec) -> Result<GoedelSentence, DiagonalError> {
    let phi = Formula::not(build_pr_formula(theory)?);
    let fixed_point = diagonalize(&phi)?;
    let level = theory.class().level.max(1);
    let pi_form = coerce_to(&fixed_point.gamma, HierarchyClass::pi(level))
        .expect("the Gödel sentence always reaches its Π level");
    Ok(GoedelSentence { fixed_point, level, pi_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo_proofs::check;
    use crate::hierarchy::classify;
    use crate::parser::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn tautological_phi_has_a_checked_certificate() {
        let fp = diagonalize(&f("x0 = x0")).unwrap();
        let Certificate::QProof(p) = &fp.certificate else { panic!("no proof") };
        assert!(check(p, &TheorySpec::q()).ok);
        assert!(fp.gamma.is_sentence());
        let ev = BigEvaluator::big();
        let fuel = Fuel::new(3, 5_000);
        assert_eq!(ev.eval(&fp.rhs(), &fuel), Verdict::True);
        assert_eq!(ev.eval(&fp.gamma, &fuel), Verdict::True);
    }

    #[test]
    fn gamma_contains_its_seed() {
        let fp = diagonalize(&f("~(x0 = x0)")).unwrap();
        assert_eq!(fp.embedded_seed().as_ref(), Some(&fp.seed));
        for (_, a, b) in fp.semantic_check(&fuel_ladder()) {
            assert!(coherent(a, b));
            assert_ne!(a, Verdict::True);
        }
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(diagonalize(&f("0 = 0")), Err(DiagonalError::Arity(_))));
        assert!(matches!(diagonalize(&f("x0 = y")), Err(DiagonalError::Arity(_))));
    }

    #[test]
    fn goedel_sentence_for_q_is_pi1() {
        let g = goedel_sentence(&TheorySpec::q()).unwrap();
        assert_eq!(g.level, 1);
        assert_eq!(classify(&g.pi_form.formula), HierarchyClass::pi(1));
        assert!(check(&g.pi_form.certificate, &TheorySpec::q()).ok);
        assert!(g.fixed_point.certificate.is_proof());
    }
}
