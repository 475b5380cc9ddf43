//! Finite Kripke models, satisfaction, and an exhaustive small-model search
//! used as an independent oracle for the GL decider.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModalFormula;

/// Worlds are `0..worlds`. All box labels are read through the one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    pub worlds: usize,
    pub relation: BTreeSet<(usize, usize)>,
    pub valuation: Vec<BTreeSet<String>>,
}

impl KripkeModel {
    pub fn successors(&self, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relation.range((w, 0)..(w + 1, 0)).map(|&(_, v)| v)
    }

    pub fn is_transitive(&self) -> bool {
        self.relation.iter().all(|&(a, b)| self.successors(b).all(|c| self.relation.contains(&(a, c))))
    }

    pub fn is_irreflexive(&self) -> bool {
        self.relation.iter().all(|&(a, b)| a != b)
    }

    /// Transitive and irreflexive: a frame of GL (finite, so conversely
    /// well-founded).
    pub fn is_gl_frame(&self) -> bool {
        self.is_transitive() && self.is_irreflexive()
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..self.worlds {
            let succ: Vec<String> = self.successors(w).map(|v| format!("w{v}")).collect();
            let atoms: Vec<&str> = self.valuation[w].iter().map(String::as_str).collect();
            writeln!(f, "w{w}: true {{{}}}, sees {{{}}}", atoms.join(", "), succ.join(", "))?;
        }
        Ok(())
    }
}

/// Standard Kripke satisfaction at world `w`.
pub fn model_check(m: &KripkeModel, w: usize, f: &ModalFormula) -> bool {
    match f {
        ModalFormula::Atom(p) => m.valuation[w].contains(p),
        ModalFormula::Bot => false,
        ModalFormula::Imp(a, b) => !model_check(m, w, a) || model_check(m, w, b),
        ModalFormula::Boxed(_, a) => m.successors(w).all(|v| model_check(m, v, a)),
    }
}

/// Searches every model on exactly `worlds` worlds whose relation is a
/// strict partial order, under every valuation of the formula's atoms, for
/// a world falsifying `f`.
///
/// Every strict partial order on at most `worlds` points is isomorphic to
/// one contained in the natural order, and isolated worlds can be added to
/// a countermodel without changing truth at its worlds, so this covers all
/// GL countermodels of size up to `worlds`. Truth values are computed for
/// all valuations at once, one bit per valuation.
pub fn brute_force_countermodel(f: &ModalFormula, worlds: usize) -> Option<(KripkeModel, usize)> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let bits = worlds * atoms.len();
    assert!(bits <= 20, "brute force over {bits} valuation bits is too large");
    let valuations = 1usize << bits;
    let words = valuations.div_ceil(64);
    let tail_mask = if valuations.is_multiple_of(64) { u64::MAX } else { (1u64 << valuations) - 1 };

    // atom_bits[w][i]: the valuations in which atom i holds at world w
    let atom_bits: Vec<Vec<Vec<u64>>> = (0..worlds)
        .map(|w| {
            (0..atoms.len())
                .map(|i| {
                    let bit = w * atoms.len() + i;
                    (0..words)
                        .map(|k| (0..64).fold(0u64, |acc, j| acc | ((((k * 64 + j) >> bit) & 1) as u64) << j))
                        .collect()
                })
                .collect()
        })
        .collect();

    let pairs: Vec<(usize, usize)> = (0..worlds).flat_map(|a| (a + 1..worlds).map(move |b| (a, b))).collect();
    for mask in 0u32..(1 << pairs.len()) {
        let relation: BTreeSet<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
        let frame = KripkeModel { worlds, relation, valuation: vec![BTreeSet::new(); worlds] };
        if !frame.is_transitive() {
            continue;
        }
        let truth: Vec<Vec<u64>> = (0..worlds).map(|w| eval_bits(&frame, w, f, &atoms, &atom_bits, words)).collect();
        for (w, t) in truth.iter().enumerate() {
            for (k, &word) in t.iter().enumerate() {
                let mask = if k + 1 == words { tail_mask } else { u64::MAX };
                let falsified = !word & mask;
                if falsified != 0 {
                    let v = k * 64 + falsified.trailing_zeros() as usize;
                    let valuation = (0..worlds)
                        .map(|u| {
                            atoms
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| v >> (u * atoms.len() + i) & 1 == 1)
                                .map(|(_, a)| a.clone())
                                .collect()
                        })
                        .collect();
                    return Some((KripkeModel { valuation, ..frame }, w));
                }
            }
        }
    }
    None
}

fn eval_bits(
    m: &KripkeModel,
    w: usize,
    f: &ModalFormula,
    atoms: &[String],
    atom_bits: &[Vec<Vec<u64>>],
    words: usize,
) -> Vec<u64> {
    match f {
        ModalFormula::Atom(p) => atom_bits[w][atoms.iter().position(|a| a == p).expect("atom of f")].clone(),
        ModalFormula::Bot => vec![0; words],
        ModalFormula::Imp(a, b) => {
            let x = eval_bits(m, w, a, atoms, atom_bits, words);
            let y = eval_bits(m, w, b, atoms, atom_bits, words);
            x.iter().zip(&y).map(|(x, y)| !x | y).collect()
        }
        ModalFormula::Boxed(_, a) => {
            let mut acc = vec![u64::MAX; words];
            for v in m.successors(w) {
                for (acc, x) in acc.iter_mut().zip(eval_bits(m, v, a, atoms, atom_bits, words)) {
                    *acc &= x;
                }
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ModalFormula {
        s.parse().unwrap()
    }

    fn two_worlds() -> KripkeModel {
        KripkeModel {
            worlds: 2,
            relation: [(0, 1)].into_iter().collect(),
            valuation: vec![["p".to_string()].into_iter().collect(), BTreeSet::new()],
        }
    }

    #[test]
    fn satisfaction_basics() {
        let k = two_worlds();
        assert!(model_check(&k, 0, &m("top")));
        assert!(model_check(&k, 1, &m("[]bot")));
        assert!(!model_check(&k, 0, &m("p -> []p")));
        assert!(k.is_gl_frame());
    }

    #[test]
    fn brute_force_finds_small_countermodels() {
        let (k, w) = brute_force_countermodel(&m("p -> []p"), 4).unwrap();
        assert!(!model_check(&k, w, &m("p -> []p")));
        assert!(k.is_gl_frame());
        assert!(brute_force_countermodel(&m("[]([]p -> p) -> []p"), 4).is_none());
        assert!(brute_force_countermodel(&m("[]p -> [][]p"), 3).is_none());
        assert!(brute_force_countermodel(&m("~[]bot"), 1).is_some());
    }
}
