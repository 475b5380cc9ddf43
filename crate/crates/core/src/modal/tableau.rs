//! A terminating sequent calculus for GL (and for K), with countermodels.
//!
//! Sequents `Γ ⇒ Δ` are pairs of formula sets. The propositional rules are
//! invertible, so the search decomposes implications in canonical order
//! until only atoms, `bot` and boxes remain. A saturated sequent that is not
//! an axiom can only be proved by a modal rule on some `□A ∈ Δ`:
//!
//! ```text
//! GL:   Γ♭, □Γ♭, □A ⇒ A        K:   Γ♭ ⇒ A
//!       ----------------             ---------
//!       Γ ⇒ □A, Δ                    Γ ⇒ □A, Δ
//! ```
//!
//! where `Γ♭ = { B | □B ∈ Γ }`. In GL the premise gains `□A` on the left,
//! which was not there before (the sequent would be an axiom otherwise), so
//! the set of boxed antecedents grows inside the finite set of boxed
//! subformulas and the search terminates. In K the modal depth drops.
//!
//! When every modal premise fails, their countermodels become the
//! successors of a new root that makes exactly the antecedent atoms true.
//! For GL the relation is closed transitively; the result is a finite
//! irreflexive transitive model whose root falsifies the sequent. Every
//! countermodel is checked with [`model_check`] before it is returned.

use std::collections::BTreeSet;
use std::fmt;

use super::kripke::{model_check, KripkeModel};
use super::ModalFormula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Logic {
    K,
    GL,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequentRule {
    Identity,
    BotLeft,
    ImpLeft,
    ImpRight,
    BoxGl,
    BoxK,
}

/// A closed derivation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub antecedent: Vec<ModalFormula>,
    pub succedent: Vec<ModalFormula>,
    pub rule: SequentRule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let join = |v: &[ModalFormula]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        writeln!(
            f,
            "{:indent$}{} => {}   [{:?}]",
            "",
            join(&self.antecedent),
            join(&self.succedent),
            self.rule,
            indent = indent
        )?;
        self.premises.iter().try_for_each(|p| p.write(f, indent + 2))
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: KripkeModel,
    /// The world falsifying the formula.
    pub world: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Valid(Derivation),
    Invalid(Countermodel),
}

impl Decision {
    pub fn is_valid(&self) -> bool {
        matches!(self, Decision::Valid(_))
    }
}

/// A countermodel under construction: the root's atoms and its subtrees.
#[derive(Clone, Debug)]
struct Tree {
    atoms: BTreeSet<String>,
    children: Vec<Tree>,
}

type Set = BTreeSet<ModalFormula>;

pub fn gl_decide(f: &ModalFormula) -> Decision {
    decide(f, Logic::GL)
}

/// Decides `f` in `logic`.
///
/// Panics if `f` contains an `S` box: the decider is for unimodal formulas.
pub fn decide(f: &ModalFormula, logic: Logic) -> Decision {
    assert!(f.is_unimodal(), "the decider takes unimodal formulas, got {f}");
    match prove(&Set::new(), &[f.clone()].into_iter().collect(), logic) {
        Ok(d) => Decision::Valid(d),
        Err(tree) => {
            let model = flatten(&tree, logic == Logic::GL);
            assert!(!model_check(&model, 0, f), "extracted model does not falsify {f}");
            if logic == Logic::GL {
                assert!(model.is_gl_frame(), "countermodel is not a GL frame");
            }
            Decision::Invalid(Countermodel { model, world: 0 })
        }
    }
}

fn prove(ante: &Set, succ: &Set, logic: Logic) -> Result<Derivation, Tree> {
    let node = |rule, premises| Derivation {
        antecedent: ante.iter().cloned().collect(),
        succedent: succ.iter().cloned().collect(),
        rule,
        premises,
    };
    if ante.contains(&ModalFormula::Bot) {
        return Ok(node(SequentRule::BotLeft, vec![]));
    }
    if ante.intersection(succ).next().is_some() {
        return Ok(node(SequentRule::Identity, vec![]));
    }
    if let Some(imp @ ModalFormula::Imp(a, b)) = ante.iter().find(|f| matches!(f, ModalFormula::Imp(..))) {
        let mut rest = ante.clone();
        rest.remove(imp);
        let mut s1 = succ.clone();
        s1.insert((**a).clone());
        let left = prove(&rest, &s1, logic)?;
        let mut a2 = rest;
        a2.insert((**b).clone());
        let right = prove(&a2, succ, logic)?;
        return Ok(node(SequentRule::ImpLeft, vec![left, right]));
    }
    if let Some(imp @ ModalFormula::Imp(a, b)) = succ.iter().find(|f| matches!(f, ModalFormula::Imp(..))) {
        let mut a1 = ante.clone();
        a1.insert((**a).clone());
        let mut s1 = succ.clone();
        s1.remove(imp);
        s1.insert((**b).clone());
        let p = prove(&a1, &s1, logic)?;
        return Ok(node(SequentRule::ImpRight, vec![p]));
    }
    // saturated: only atoms, bot and boxes remain
    let unboxed: Vec<&ModalFormula> = ante
        .iter()
        .filter_map(|f| match f {
            ModalFormula::Boxed(_, b) => Some(&**b),
            _ => None,
        })
        .collect();
    let mut children = Vec::new();
    for f in succ {
        let ModalFormula::Boxed(_, a) = f else { continue };
        let mut premise: Set = unboxed.iter().map(|b| (*b).clone()).collect();
        let rule = match logic {
            Logic::GL => {
                premise.extend(ante.iter().filter(|g| matches!(g, ModalFormula::Boxed(..))).cloned());
                premise.insert(f.clone());
                SequentRule::BoxGl
            }
            Logic::K => SequentRule::BoxK,
        };
        match prove(&premise, &[(**a).clone()].into_iter().collect(), logic) {
            Ok(d) => return Ok(node(rule, vec![d])),
            Err(t) => children.push(t),
        }
    }
    let atoms = ante
        .iter()
        .filter_map(|f| match f {
            ModalFormula::Atom(p) => Some(p.clone()),
            _ => None,
        })
        .collect();
    Err(Tree { atoms, children })
}

/// Numbers the tree in preorder; edges go from each node to its children,
/// or to all its descendants when `transitive`.
fn flatten(tree: &Tree, transitive: bool) -> KripkeModel {
    let mut model = KripkeModel { worlds: 0, relation: BTreeSet::new(), valuation: Vec::new() };
    fn go(t: &Tree, m: &mut KripkeModel, ancestors: &mut Vec<usize>, transitive: bool) {
        let id = m.worlds;
        m.worlds += 1;
        m.valuation.push(t.atoms.clone());
        if transitive {
            m.relation.extend(ancestors.iter().map(|&a| (a, id)));
        } else if let Some(&parent) = ancestors.last() {
            m.relation.insert((parent, id));
        }
        ancestors.push(id);
        for c in &t.children {
            go(c, m, ancestors, transitive);
        }
        ancestors.pop();
    }
    go(tree, &mut model, &mut Vec::new(), transitive);
    model
}
