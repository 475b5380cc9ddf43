//! Bundled derivations and generated modal proofs.

use thiserror::Error;

use super::proof::{
    check_modal, parse_script, ModalCheckReport, ModalProof, ModalRule, ModalStep, ScriptError, System,
};
use super::{Label, ModalFormula};

/// The bundled scripts by name.
pub const SCRIPTS: [(&str, &str); 5] = [
    ("g2_classical", include_str!("../../scripts/g2_classical.mproof")),
    ("loeb_axiom", include_str!("../../scripts/loeb_axiom.mproof")),
    ("henkin", include_str!("../../scripts/henkin.mproof")),
    ("bi_g2", include_str!("../../scripts/bi_g2.mproof")),
    ("theorem2", include_str!("../../scripts/theorem2.mproof")),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("unknown script `{0}` (known: g2_classical, loeb_axiom, henkin, bi_g2, theorem2)")]
    UnknownScript(String),
    #[error("bundled script does not parse: {0}")]
    Script(#[from] ScriptError),
}

pub fn script_source(name: &str) -> Option<&'static str> {
    SCRIPTS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Result<ModalProof, ReplayError> {
    let src = script_source(name).ok_or_else(|| ReplayError::UnknownScript(name.to_string()))?;
    Ok(parse_script(src)?)
}

/// Parses and checks the named bundled script.
pub fn replay(name: &str) -> Result<ModalCheckReport, ReplayError> {
    Ok(check_modal(&load(name)?))
}

fn step(formula: ModalFormula, rule: ModalRule) -> ModalStep {
    ModalStep { formula, rule, theory: Label::T }
}

/// The formalized second incompleteness theorem `~[]bot -> ~[]~[]bot` in
/// GL: Löb's axiom at `bot`, contraposed.
pub fn derive_formalized_g2() -> ModalProof {
    use ModalFormula as M;
    let con = M::not(M::bx(M::Bot));
    let lob = M::imp(M::bx(M::imp(M::bx(M::Bot), M::Bot)), M::bx(M::Bot));
    let goal = M::imp(con.clone(), M::not(M::bx(con)));
    ModalProof {
        system: System::GL,
        hypotheses: vec![],
        steps: vec![step(lob, ModalRule::Lob), step(goal.clone(), ModalRule::Taut(vec![0]))],
        conclusion: Some(goal),
    }
}

/// `[](A -> B) -> ([](B -> C) -> [](A -> C))` in K, from two distribution
/// instances and necessitation of a tautology.
pub fn chaining_lemma(a: &ModalFormula, b: &ModalFormula, c: &ModalFormula) -> ModalProof {
    use ModalFormula as M;
    let (ab, bc, ac) = (M::imp(a.clone(), b.clone()), M::imp(b.clone(), c.clone()), M::imp(a.clone(), c.clone()));
    let taut = M::imp(ab.clone(), M::imp(bc.clone(), ac.clone()));
    let k1 = M::imp(M::bx(taut.clone()), M::imp(M::bx(ab.clone()), M::bx(M::imp(bc.clone(), ac.clone()))));
    let k2 = M::imp(M::bx(M::imp(bc.clone(), ac.clone())), M::imp(M::bx(bc.clone()), M::bx(ac.clone())));
    let goal = M::imp(M::bx(ab), M::imp(M::bx(bc), M::bx(ac)));
    ModalProof {
        system: System::K,
        hypotheses: vec![],
        steps: vec![
            step(taut.clone(), ModalRule::Taut(vec![])),
            step(M::bx(taut), ModalRule::Nec(0)),
            step(k1, ModalRule::K),
            step(k2, ModalRule::K),
            step(goal.clone(), ModalRule::Taut(vec![1, 2, 3])),
        ],
        conclusion: Some(goal),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modal::gl_decide;

    fn m(s: &str) -> ModalFormula {
        s.parse().unwrap()
    }

    #[test]
    fn all_scripts_check() {
        for (name, _) in SCRIPTS {
            let r = replay(name).unwrap();
            assert!(r.ok, "{name}: {r}");
        }
    }

    #[test]
    fn conclusions_match_the_derivations() {
        assert_eq!(replay("g2_classical").unwrap().conclusion, Some(ModalFormula::Bot));
        let bi = replay("bi_g2").unwrap();
        assert_eq!(bi.conclusion, Some(m("~[T]bot -> g")));
        assert_eq!(bi.theory, Label::S);
        assert_eq!(replay("theorem2").unwrap().conclusion, Some(m("~[]bot -> g")));
        assert_eq!(replay("loeb_axiom").unwrap().conclusion, Some(m("[]p")));
        assert_eq!(replay("henkin").unwrap().conclusion, Some(m("h")));
    }

    #[test]
    fn deleting_any_step_breaks_every_script() {
        for (name, _) in SCRIPTS {
            let p = load(name).unwrap();
            for k in 0..p.steps.len() {
                assert!(!check_modal(&p.without_step(k)).ok, "{name} survives deleting step {}", k + 1);
            }
        }
    }

    #[test]
    fn unknown_scripts_are_reported() {
        assert_eq!(replay("nope"), Err(ReplayError::UnknownScript("nope".into())));
    }

    #[test]
    fn formalized_g2_and_chaining() {
        let p = derive_formalized_g2();
        assert!(check_modal(&p).ok);
        assert!(gl_decide(p.conclusion.as_ref().unwrap()).is_valid());
        let c = chaining_lemma(&m("[]g"), &m("[]p"), &m("p"));
        assert!(check_modal(&c).ok);
    }
}
