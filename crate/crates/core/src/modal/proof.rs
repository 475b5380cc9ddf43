//! Hilbert-style modal proofs and their checker.
//!
//! Each step records a formula, the theory whose theorem it is (always `T`
//! outside the bimodal system) and its justification:
//!
//! | rule          | systems        | shape                                               |
//! |---------------|----------------|-----------------------------------------------------|
//! | `taut i j ..` | all            | follows truth-functionally from the cited steps     |
//! | `K`           | K, K4, GL      | `[](A -> B) -> ([]A -> []B)`                        |
//! | `4`           | K4             | `[]A -> [][]A`                                      |
//! | `lob`         | GL             | `[]([]A -> A) -> []A`                               |
//! | `hyp i`       | all            | the i-th hypothesis                                 |
//! | `mp i j`      | all            | from `A -> B` (step i) and `A` (step j)             |
//! | `nec i`       | K, K4, GL      | `[]A` from `A`, if `A` rests on theorems only       |
//! | `bridge Bi i` | BiModal        | `S |- [T]A` from `T |- A`, same restriction as nec  |
//! | `bridge Bii`  | BiModal        | `S |- [T](A -> B) -> ([T]A -> [T]B)`                |
//! | `bridge Biii` | BiModal        | `S |- [T]A -> [S][T]A`                              |
//! | `bridge Biv`  | BiModal        | `S |- [S]A -> [T]A`                                 |
//! | `bridge Bv`   | BiModal        | `S |- g <-> ~[T]g` for one fixed atom `g`           |
//! | `lift i`      | BiModal        | `T |- A` from `S |- A` (S is contained in T)        |
//!
//! Truth-functional validity treats atoms and boxed subformulas as
//! propositional letters and is checked by truth table.
//!
//! Hypotheses are tagged: theorems (of T, or in the bimodal system of S or
//! of T) may feed necessitation; premises block it downstream.
//!
//! Script format, one item per line, `#` starting a comment:
//!
//! ```text
//! system K4
//! hyp theorem g <-> ([]g -> bot)
//! hyp premise ~g -> []~g ; justification text
//! conclusion bot
//! 1. g <-> ([]g -> bot) ; hyp 1
//! 2. S |- [T]g -> [S][T]g ; bridge Biii
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_modal, Label, ModalFormula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum System {
    K,
    K4,
    GL,
    BiModal,
}

impl System {
    fn is_bimodal(self) -> bool {
        self == System::BiModal
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::K => "K",
            System::K4 => "K4",
            System::GL => "GL",
            System::BiModal => "BiModal",
        })
    }
}

impl FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "K" => Ok(System::K),
            "K4" => Ok(System::K4),
            "GL" => Ok(System::GL),
            "BiModal" => Ok(System::BiModal),
            other => Err(format!("unknown system `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HypTag {
    /// A theorem of T (unimodal systems).
    Theorem,
    STheorem,
    TTheorem,
    /// Assumed for the derivation, with the reason it is available.
    Premise(String),
}

impl HypTag {
    fn is_theorem(&self) -> bool {
        !matches!(self, HypTag::Premise(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BridgeKind {
    Bi,
    Bii,
    Biii,
    Biv,
    Bv,
}

impl fmt::Display for BridgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModalRule {
    Taut(Vec<usize>),
    K,
    Four,
    Lob,
    /// `Bi` cites the step it necessitates; the other bridges cite nothing.
    Bridge(BridgeKind, Option<usize>),
    Hyp(usize),
    Mp(usize, usize),
    Nec(usize),
    Lift(usize),
}

impl ModalRule {
    fn references(&self) -> Vec<usize> {
        match self {
            ModalRule::Taut(v) => v.clone(),
            ModalRule::Bridge(_, Some(i)) | ModalRule::Nec(i) | ModalRule::Lift(i) => vec![*i],
            ModalRule::Mp(i, j) => vec![*i, *j],
            _ => vec![],
        }
    }

    /// The same rule with every step reference passed through `f`.
    pub fn map_references(&self, f: impl Fn(usize) -> usize) -> ModalRule {
        match self {
            ModalRule::Taut(v) => ModalRule::Taut(v.iter().map(|&i| f(i)).collect()),
            ModalRule::Bridge(k, i) => ModalRule::Bridge(*k, i.map(&f)),
            ModalRule::Nec(i) => ModalRule::Nec(f(*i)),
            ModalRule::Lift(i) => ModalRule::Lift(f(*i)),
            ModalRule::Mp(i, j) => ModalRule::Mp(f(*i), f(*j)),
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModalStep {
    pub formula: ModalFormula,
    pub rule: ModalRule,
    /// The theory proving this line; `T` outside the bimodal system.
    pub theory: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalProof {
    pub system: System,
    pub hypotheses: Vec<(ModalFormula, HypTag)>,
    pub steps: Vec<ModalStep>,
    /// When present, the last step must prove exactly this.
    pub conclusion: Option<ModalFormula>,
}

impl ModalProof {
    /// The proof with step `k` deleted and later references shifted down.
    pub fn without_step(&self, k: usize) -> ModalProof {
        let mut p = self.clone();
        p.steps.remove(k);
        for s in &mut p.steps {
            s.rule = s.rule.map_references(|i| if i > k { i - 1 } else { i });
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum ModalError {
    #[error("the proof has no steps")]
    Empty,
    #[error("reference to step {} is not to an earlier step", .0 + 1)]
    BadReference(usize),
    #[error("no hypothesis {}", .0 + 1)]
    NoSuchHypothesis(usize),
    #[error("rule `{0}` is not available in system {1}")]
    RuleNotInSystem(String, System),
    #[error("not a truth-functional consequence of the cited steps")]
    NotTautology,
    #[error("not an instance of {0}")]
    AxiomShape(String),
    #[error("modus ponens shape mismatch")]
    MpMismatch,
    #[error("necessitation of a step that rests on a premise")]
    NecOverPremise,
    #[error("theory mismatch: line is claimed for {0}")]
    TheoryMismatch(Label),
    #[error("box labelled S outside the bimodal system")]
    LabelOutsideBimodal,
    #[error("formula differs from the cited justification")]
    FormulaMismatch,
    #[error("the fixed point atom must be the same throughout")]
    FixedPointAtom,
    #[error("the proof concludes a different formula than declared")]
    ConclusionMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModalCheckReport {
    pub ok: bool,
    /// 0-based step index and the reason it failed.
    pub first_failure: Option<(usize, ModalError)>,
    pub conclusion: Option<ModalFormula>,
    pub theory: Label,
    pub steps: usize,
}

impl fmt::Display for ModalCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.first_failure, &self.conclusion) {
            (None, Some(c)) => write!(f, "OK: {} ⊢ {} (steps: {})", self.theory, c, self.steps),
            (Some((i, e)), _) => write!(f, "FAIL at step {}: {e}", i + 1),
            (None, None) => write!(f, "OK"),
        }
    }
}

pub fn check_modal(p: &ModalProof) -> ModalCheckReport {
    let fail = |i, e| ModalCheckReport {
        ok: false,
        first_failure: Some((i, e)),
        conclusion: None,
        theory: Label::T,
        steps: p.steps.len(),
    };
    if p.steps.is_empty() {
        return fail(0, ModalError::Empty);
    }
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(p.steps.len());
    let mut fixed_atom: Option<String> = None;
    for (i, step) in p.steps.iter().enumerate() {
        match check_step(p, i, step, &deps, &mut fixed_atom) {
            Ok(d) => deps.push(d),
            Err(e) => return fail(i, e),
        }
    }
    let last = p.steps.last().expect("nonempty");
    if p.conclusion.as_ref().is_some_and(|c| *c != last.formula) {
        return fail(p.steps.len() - 1, ModalError::ConclusionMismatch);
    }
    ModalCheckReport {
        ok: true,
        first_failure: None,
        conclusion: Some(last.formula.clone()),
        theory: last.theory,
        steps: p.steps.len(),
    }
}

fn check_step(
    p: &ModalProof,
    i: usize,
    step: &ModalStep,
    deps: &[BTreeSet<usize>],
    fixed_atom: &mut Option<String>,
) -> Result<BTreeSet<usize>, ModalError> {
    use ModalFormula as M;
    let sys = p.system;
    let f = &step.formula;
    if !sys.is_bimodal() && (!f.is_unimodal() || step.theory != Label::T) {
        return Err(if f.is_unimodal() {
            ModalError::TheoryMismatch(step.theory)
        } else {
            ModalError::LabelOutsideBimodal
        });
    }
    for &r in &step.rule.references() {
        if r >= i {
            return Err(ModalError::BadReference(r));
        }
    }
    let not_in = |name: &str| ModalError::RuleNotInSystem(name.to_string(), sys);
    let shape = |name: &str| ModalError::AxiomShape(name.to_string());
    let theory_of = |j: usize| p.steps[j].theory;
    let same_theory = |js: &[usize]| match js.iter().find(|&&j| theory_of(j) != step.theory) {
        Some(_) => Err(ModalError::TheoryMismatch(step.theory)),
        None => Ok(()),
    };
    let union = |js: &[usize]| js.iter().flat_map(|&j| deps[j].iter().copied()).collect::<BTreeSet<usize>>();
    let rests_on_theorems = |j: usize| deps[j].iter().all(|&h| p.hypotheses[h].1.is_theorem());
    let require_s = || if step.theory == Label::S { Ok(()) } else { Err(ModalError::TheoryMismatch(step.theory)) };

    match &step.rule {
        ModalRule::Taut(js) => {
            same_theory(js)?;
            let premises: Vec<&ModalFormula> = js.iter().map(|&j| &p.steps[j].formula).collect();
            if !truth_functional_consequence(&premises, f) {
                return Err(ModalError::NotTautology);
            }
            Ok(union(js))
        }
        ModalRule::K => {
            if sys.is_bimodal() {
                return Err(not_in("K"));
            }
            is_k_instance(f, Label::T).then(BTreeSet::new).ok_or_else(|| shape("K"))
        }
        ModalRule::Four => {
            if sys != System::K4 {
                return Err(not_in("4"));
            }
            match f {
                M::Imp(a, b) if matches!(&**b, M::Boxed(_, inner) if inner == a) && matches!(&**a, M::Boxed(..)) => {
                    Ok(BTreeSet::new())
                }
                _ => Err(shape("4")),
            }
        }
        ModalRule::Lob => {
            if sys != System::GL {
                return Err(not_in("lob"));
            }
            let ok = match f {
                M::Imp(l, r) => match (&**l, &**r) {
                    (M::Boxed(_, inner), M::Boxed(_, a)) => **inner == M::imp(M::bx((**a).clone()), (**a).clone()),
                    _ => false,
                },
                _ => false,
            };
            ok.then(BTreeSet::new).ok_or_else(|| shape("Löb"))
        }
        ModalRule::Bridge(kind, cited) => {
            if !sys.is_bimodal() {
                return Err(not_in(&format!("bridge {kind}")));
            }
            require_s()?;
            let t = |a: &ModalFormula| M::boxed(Label::T, a.clone());
            let s = |a: &ModalFormula| M::boxed(Label::S, a.clone());
            match (kind, cited) {
                (BridgeKind::Bi, Some(j)) => {
                    if theory_of(*j) != Label::T {
                        return Err(ModalError::TheoryMismatch(theory_of(*j)));
                    }
                    if !rests_on_theorems(*j) {
                        return Err(ModalError::NecOverPremise);
                    }
                    if *f != t(&p.steps[*j].formula) {
                        return Err(ModalError::FormulaMismatch);
                    }
                    Ok(deps[*j].clone())
                }
                (BridgeKind::Bii, None) => is_k_instance(f, Label::T).then(BTreeSet::new).ok_or_else(|| shape("Bii")),
                (BridgeKind::Biii, None) => match f {
                    M::Imp(a, b) if matches!(&**a, M::Boxed(Label::T, _)) && **b == s(a) => Ok(BTreeSet::new()),
                    _ => Err(shape("Biii")),
                },
                (BridgeKind::Biv, None) => match f {
                    M::Imp(a, b) => match &**a {
                        M::Boxed(Label::S, inner) if **b == t(inner) => Ok(BTreeSet::new()),
                        _ => Err(shape("Biv")),
                    },
                    _ => Err(shape("Biv")),
                },
                (BridgeKind::Bv, None) => {
                    let g = fixed_point_atom(f).ok_or_else(|| shape("Bv"))?;
                    match fixed_atom {
                        Some(prev) if *prev != g => return Err(ModalError::FixedPointAtom),
                        _ => *fixed_atom = Some(g),
                    }
                    Ok(BTreeSet::new())
                }
                _ => Err(shape(&kind.to_string())),
            }
        }
        ModalRule::Hyp(h) => {
            let (hf, tag) = p.hypotheses.get(*h).ok_or(ModalError::NoSuchHypothesis(*h))?;
            let fits = match tag {
                HypTag::STheorem => step.theory == Label::S,
                HypTag::TTheorem => step.theory == Label::T,
                HypTag::Theorem | HypTag::Premise(_) => true,
            };
            if !fits {
                return Err(ModalError::TheoryMismatch(step.theory));
            }
            if hf != f {
                return Err(ModalError::FormulaMismatch);
            }
            Ok([*h].into_iter().collect())
        }
        ModalRule::Mp(j, k) => {
            same_theory(&[*j, *k])?;
            match &p.steps[*j].formula {
                M::Imp(a, b) if **a == p.steps[*k].formula && **b == *f => Ok(union(&[*j, *k])),
                _ => Err(ModalError::MpMismatch),
            }
        }
        ModalRule::Nec(j) => {
            if sys.is_bimodal() {
                return Err(not_in("nec"));
            }
            if !rests_on_theorems(*j) {
                return Err(ModalError::NecOverPremise);
            }
            if *f != M::bx(p.steps[*j].formula.clone()) {
                return Err(ModalError::FormulaMismatch);
            }
            Ok(deps[*j].clone())
        }
        ModalRule::Lift(j) => {
            if !sys.is_bimodal() {
                return Err(not_in("lift"));
            }
            if step.theory != Label::T || theory_of(*j) != Label::S {
                return Err(ModalError::TheoryMismatch(step.theory));
            }
            if *f != p.steps[*j].formula {
                return Err(ModalError::FormulaMismatch);
            }
            Ok(deps[*j].clone())
        }
    }
}

fn is_k_instance(f: &ModalFormula, label: Label) -> bool {
    use ModalFormula as M;
    let M::Imp(l, r) = f else { return false };
    let M::Boxed(l1, ab) = &**l else { return false };
    let M::Imp(a, b) = &**ab else { return false };
    let M::Imp(ba, bb) = &**r else { return false };
    *l1 == label && **ba == M::boxed(label, (**a).clone()) && **bb == M::boxed(label, (**b).clone())
}

/// `g` when `f` is `g <-> ~[T]g` for an atom `g`.
fn fixed_point_atom(f: &ModalFormula) -> Option<String> {
    let g = match f.as_iff()? {
        (ModalFormula::Atom(g), rhs) if *rhs == ModalFormula::not(ModalFormula::bx(ModalFormula::atom(g))) => g,
        _ => return None,
    };
    Some(g.clone())
}

/// Whether `conclusion` is true under every assignment to atoms and boxed
/// subformulas that makes all `premises` true.
fn truth_functional_consequence(premises: &[&ModalFormula], conclusion: &ModalFormula) -> bool {
    let mut letters = BTreeSet::new();
    for f in premises.iter().copied().chain([conclusion]) {
        collect_letters(f, &mut letters);
    }
    let letters: Vec<&ModalFormula> = letters.into_iter().collect();
    assert!(letters.len() <= 20, "truth table over {} letters", letters.len());
    (0u32..1 << letters.len()).all(|row| {
        let val = |f: &ModalFormula| eval_row(f, &letters, row);
        !premises.iter().all(|p| val(p)) || val(conclusion)
    })
}

fn collect_letters<'a>(f: &'a ModalFormula, out: &mut BTreeSet<&'a ModalFormula>) {
    match f {
        ModalFormula::Bot => {}
        ModalFormula::Imp(a, b) => {
            collect_letters(a, out);
            collect_letters(b, out);
        }
        letter => {
            out.insert(letter);
        }
    }
}

fn eval_row(f: &ModalFormula, letters: &[&ModalFormula], row: u32) -> bool {
    match f {
        ModalFormula::Bot => false,
        ModalFormula::Imp(a, b) => !eval_row(a, letters, row) || eval_row(b, letters, row),
        letter => {
            let i = letters.iter().position(|l| *l == letter).expect("collected letter");
            row >> i & 1 == 1
        }
    }
}

// Script format

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

pub fn parse_script(src: &str) -> Result<ModalProof, ScriptError> {
    let mut system = None;
    let mut hypotheses = Vec::new();
    let mut steps = Vec::new();
    let mut conclusion = None;
    for (n, raw) in src.lines().enumerate() {
        let line = n + 1;
        let err = |message: String| ScriptError { line, message };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let formula = |s: &str| parse_modal(s.trim()).map_err(|e| err(e.to_string()));
        if let Some(rest) = text.strip_prefix("system ") {
            system = Some(rest.trim().parse::<System>().map_err(err)?);
        } else if let Some(rest) = text.strip_prefix("hyp ") {
            let (tag, rest) = rest.trim().split_once(' ').ok_or_else(|| err("hyp needs a tag and a formula".into()))?;
            let (body, why) = match rest.split_once(';') {
                Some((b, w)) => (b, w.trim().to_string()),
                None => (rest, String::new()),
            };
            let tag = match tag {
                "theorem" => HypTag::Theorem,
                "S-theorem" => HypTag::STheorem,
                "T-theorem" => HypTag::TTheorem,
                "premise" => HypTag::Premise(why),
                other => return Err(err(format!("unknown hypothesis tag `{other}`"))),
            };
            hypotheses.push((formula(body)?, tag));
        } else if let Some(rest) = text.strip_prefix("conclusion ") {
            conclusion = Some(formula(rest)?);
        } else {
            let (num, rest) = text.split_once('.').ok_or_else(|| err("expected `k. formula ; rule`".into()))?;
            let k: usize = num.trim().parse().map_err(|_| err(format!("bad step number `{num}`")))?;
            if k != steps.len() + 1 {
                return Err(err(format!("step {k} out of sequence")));
            }
            let (body, rule) = rest.rsplit_once(';').ok_or_else(|| err("missing `; rule`".into()))?;
            let body = body.trim();
            let (theory, body) = match body.split_once("|-") {
                Some((t, b)) => match t.trim() {
                    "S" => (Label::S, b),
                    "T" => (Label::T, b),
                    other => return Err(err(format!("unknown theory `{other}`"))),
                },
                None => (Label::T, body),
            };
            steps.push(ModalStep { formula: formula(body)?, rule: parse_rule(rule.trim()).map_err(err)?, theory });
        }
    }
    let system = system.ok_or(ScriptError { line: 0, message: "missing `system` line".into() })?;
    Ok(ModalProof { system, hypotheses, steps, conclusion })
}

fn parse_rule(s: &str) -> Result<ModalRule, String> {
    let words: Vec<&str> = s.split_whitespace().collect();
    let num = |w: &str| -> Result<usize, String> {
        match w.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(format!("bad step or hypothesis number `{w}`")),
        }
    };
    let one = |ws: &[&str]| -> Result<usize, String> {
        match ws {
            [w] => num(w),
            _ => Err(format!("`{s}` takes exactly one number")),
        }
    };
    match words.as_slice() {
        ["taut", rest @ ..] => Ok(ModalRule::Taut(rest.iter().map(|w| num(w)).collect::<Result<_, _>>()?)),
        ["K"] => Ok(ModalRule::K),
        ["4"] => Ok(ModalRule::Four),
        ["lob"] => Ok(ModalRule::Lob),
        ["hyp", rest @ ..] => Ok(ModalRule::Hyp(one(rest)?)),
        ["nec", rest @ ..] => Ok(ModalRule::Nec(one(rest)?)),
        ["lift", rest @ ..] => Ok(ModalRule::Lift(one(rest)?)),
        ["mp", i, j] => Ok(ModalRule::Mp(num(i)?, num(j)?)),
        ["bridge", "Bi", rest @ ..] => Ok(ModalRule::Bridge(BridgeKind::Bi, Some(one(rest)?))),
        ["bridge", kind] => {
            let kind = match *kind {
                "Bii" => BridgeKind::Bii,
                "Biii" => BridgeKind::Biii,
                "Biv" => BridgeKind::Biv,
                "Bv" => BridgeKind::Bv,
                other => return Err(format!("unknown bridge `{other}`")),
            };
            Ok(ModalRule::Bridge(kind, None))
        }
        _ => Err(format!("unknown rule `{s}`")),
    }
}

impl fmt::Display for ModalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModalRule::Taut(js) => {
                f.write_str("taut")?;
                js.iter().try_for_each(|j| write!(f, " {}", j + 1))
            }
            ModalRule::K => f.write_str("K"),
            ModalRule::Four => f.write_str("4"),
            ModalRule::Lob => f.write_str("lob"),
            ModalRule::Bridge(k, Some(j)) => write!(f, "bridge {k} {}", j + 1),
            ModalRule::Bridge(k, None) => write!(f, "bridge {k}"),
            ModalRule::Hyp(h) => write!(f, "hyp {}", h + 1),
            ModalRule::Mp(i, j) => write!(f, "mp {} {}", i + 1, j + 1),
            ModalRule::Nec(i) => write!(f, "nec {}", i + 1),
            ModalRule::Lift(i) => write!(f, "lift {}", i + 1),
        }
    }
}

impl fmt::Display for ModalProof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system {}", self.system)?;
        for (h, tag) in &self.hypotheses {
            match tag {
                HypTag::Theorem => writeln!(f, "hyp theorem {h}")?,
                HypTag::STheorem => writeln!(f, "hyp S-theorem {h}")?,
                HypTag::TTheorem => writeln!(f, "hyp T-theorem {h}")?,
                HypTag::Premise(why) if why.is_empty() => writeln!(f, "hyp premise {h}")?,
                HypTag::Premise(why) => writeln!(f, "hyp premise {h} ; {why}")?,
            }
        }
        if let Some(c) = &self.conclusion {
            writeln!(f, "conclusion {c}")?;
        }
        for (i, s) in self.steps.iter().enumerate() {
            if self.system.is_bimodal() {
                writeln!(f, "{}. {} |- {} ; {}", i + 1, s.theory, s.formula, s.rule)?;
            } else {
                writeln!(f, "{}. {} ; {}", i + 1, s.formula, s.rule)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ModalFormula {
        s.parse().unwrap()
    }

    fn step(f: &str, rule: ModalRule) -> ModalStep {
        ModalStep { formula: m(f), rule, theory: Label::T }
    }

    fn proof(system: System, steps: Vec<ModalStep>) -> ModalProof {
        ModalProof { system, hypotheses: vec![], steps, conclusion: None }
    }

    #[test]
    fn single_k_axiom() {
        let p = proof(System::K, vec![step("[](p -> q) -> ([]p -> []q)", ModalRule::K)]);
        assert!(check_modal(&p).ok);
        let bad = proof(System::K, vec![step("[](p -> q) -> ([]q -> []p)", ModalRule::K)]);
        assert!(!check_modal(&bad).ok);
    }

    #[test]
    fn nec_is_blocked_by_premises() {
        let mut p = proof(System::K, vec![step("p", ModalRule::Hyp(0)), step("[]p", ModalRule::Nec(0))]);
        p.hypotheses.push((m("p"), HypTag::Premise("assumed".into())));
        let r = check_modal(&p);
        assert_eq!(r.first_failure, Some((1, ModalError::NecOverPremise)));
        p.hypotheses[0].1 = HypTag::Theorem;
        assert!(check_modal(&p).ok);
    }

    #[test]
    fn rules_are_gated_by_system() {
        let four = step("[]p -> [][]p", ModalRule::Four);
        assert!(check_modal(&proof(System::K4, vec![four.clone()])).ok);
        assert!(!check_modal(&proof(System::K, vec![four.clone()])).ok);
        assert!(!check_modal(&proof(System::GL, vec![four])).ok);
        let lob = step("[]([]p -> p) -> []p", ModalRule::Lob);
        assert!(check_modal(&proof(System::GL, vec![lob.clone()])).ok);
        assert!(!check_modal(&proof(System::K4, vec![lob])).ok);
        let bridge = ModalStep {
            formula: m("[T]p -> [S][T]p"),
            rule: ModalRule::Bridge(BridgeKind::Biii, None),
            theory: Label::S,
        };
        assert!(check_modal(&proof(System::BiModal, vec![bridge.clone()])).ok);
        assert!(!check_modal(&proof(System::GL, vec![bridge])).ok);
    }

    #[test]
    fn tautologies_treat_boxes_as_letters() {
        let ok = proof(System::K, vec![step("[]p -> [](p) ", ModalRule::Taut(vec![]))]);
        assert!(check_modal(&ok).ok);
        let bad = proof(System::K, vec![step("[]p -> []~~p", ModalRule::Taut(vec![]))]);
        assert_eq!(check_modal(&bad).first_failure, Some((0, ModalError::NotTautology)));
    }

    #[test]
    fn script_round_trip() {
        let src = "system K\nhyp premise p ; given\nconclusion p -> p\n1. p -> p ; taut\n";
        let p = parse_script(src).unwrap();
        assert!(check_modal(&p).ok);
        assert_eq!(parse_script(&p.to_string()).unwrap(), p);
        let e = parse_script("system K\n2. p ; taut\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn deleting_a_step_shifts_references() {
        let p = proof(
            System::K,
            vec![
                step("p -> p", ModalRule::Taut(vec![])),
                step("q -> q", ModalRule::Taut(vec![])),
                step("[](q -> q)", ModalRule::Nec(1)),
            ],
        );
        assert!(check_modal(&p).ok);
        assert_eq!(p.without_step(0).steps[1].rule, ModalRule::Nec(0));
        assert!(check_modal(&p.without_step(0)).ok);
        assert!(!check_modal(&p.without_step(1)).ok);
    }
}
