//! Propositional tautology checking.
//!
//! A first-order formula is read propositionally by treating its maximal
//! non-propositional subformulas (atoms and quantified formulas) as letters,
//! identified up to syntactic equality. Validity is decided by refuting the
//! negation: a Tseitin encoding into clauses followed by DPLL with unit
//! propagation.

use std::collections::HashMap;

use crate::syntax::Formula;

type Lit = i32;

struct Encoder<'a> {
    letters: HashMap<&'a Formula, Lit>,
    next: Lit,
    clauses: Vec<Vec<Lit>>,
}

impl<'a> Encoder<'a> {
    fn fresh(&mut self) -> Lit {
        self.next += 1;
        self.next
    }

    /// A literal equivalent to `f` under the emitted clauses.
    fn encode(&mut self, f: &'a Formula) -> Lit {
        match f {
            Formula::Bot => {
                let v = self.fresh();
                self.clauses.push(vec![-v]);
                v
            }
            Formula::Not(a) => -self.encode(a),
            Formula::And(a, b) => {
                let (a, b, v) = (self.encode(a), self.encode(b), self.fresh());
                self.clauses.extend([vec![-v, a], vec![-v, b], vec![v, -a, -b]]);
                v
            }
            Formula::Or(a, b) => {
                let (a, b, v) = (self.encode(a), self.encode(b), self.fresh());
                self.clauses.extend([vec![-v, a, b], vec![v, -a], vec![v, -b]]);
                v
            }
            Formula::Imp(a, b) => {
                let (a, b, v) = (self.encode(a), self.encode(b), self.fresh());
                self.clauses.extend([vec![-v, -a, b], vec![v, a], vec![v, -b]]);
                v
            }
            Formula::Iff(a, b) => {
                let (a, b, v) = (self.encode(a), self.encode(b), self.fresh());
                self.clauses.extend([vec![-v, -a, b], vec![-v, a, -b], vec![v, a, b], vec![v, -a, -b]]);
                v
            }
            _ => {
                if let Some(&l) = self.letters.get(f) {
                    return l;
                }
                let v = self.fresh();
                self.letters.insert(f, v);
                v
            }
        }
    }
}

fn dpll(clauses: &[Vec<Lit>], assign: &mut Vec<i8>) -> bool {
    let value = |assign: &Vec<i8>, l: Lit| -> i8 {
        let v = assign[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    };
    let mut trail = Vec::new();
    loop {
        let mut changed = false;
        for c in clauses {
            let mut unassigned = None;
            let mut count = 0;
            let mut satisfied = false;
            for &l in c {
                match value(assign, l) {
                    1 => {
                        satisfied = true;
                        break;
                    }
                    0 => {
                        count += 1;
                        unassigned = Some(l);
                    }
                    _ => {}
                }
            }
            if satisfied {
                continue;
            }
            match (count, unassigned) {
                (0, _) => {
                    for v in trail {
                        assign[v] = 0;
                    }
                    return false;
                }
                (1, Some(l)) => {
                    let v = l.unsigned_abs() as usize;
                    assign[v] = if l > 0 { 1 } else { -1 };
                    trail.push(v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let branch = clauses
        .iter()
        .filter(|c| !c.iter().any(|&l| value(assign, l) == 1))
        .flat_map(|c| c.iter())
        .find(|&&l| value(assign, l) == 0)
        .copied();
    let result = match branch {
        None => true,
        Some(l) => {
            let v = l.unsigned_abs() as usize;
            [1i8, -1].into_iter().any(|val| {
                assign[v] = val;
                let ok = dpll(clauses, assign);
                if !ok {
                    assign[v] = 0;
                }
                ok
            })
        }
    };
    if !result {
        for v in trail {
            assign[v] = 0;
        }
    }
    result
}

/// Whether `f` is a propositional tautology.
pub fn is_tautology(f: &Formula) -> bool {
    let mut enc = Encoder { letters: HashMap::new(), next: 0, clauses: Vec::new() };
    let root = enc.encode(f);
    enc.clauses.push(vec![-root]);
    let mut assign = vec![0i8; enc.next as usize + 1];
    !dpll(&enc.clauses, &mut assign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taut(s: &str) -> bool {
        is_tautology(&s.parse().unwrap())
    }

    #[test]
    fn classic_tautologies() {
        assert!(taut("0 = 0 -> 0 = 0"));
        assert!(taut("x = y \\/ ~x = y"));
        assert!(taut("(0 = 0 -> x = 0) -> ((x = 0 -> bot) -> ~0 = 0)"));
        assert!(taut("~bot"));
        assert!(taut("(forall x. x = x) <-> ~~forall x. x = x"));
        assert!(taut("((x = 0 -> y = 0) -> x = 0) -> x = 0"));
    }

    #[test]
    fn non_tautologies() {
        assert!(!taut("0 = 0"));
        assert!(!taut("bot"));
        assert!(!taut("x = y -> y = x"));
        assert!(!taut("(exists x. x = 0) -> exists y. y = 0"));
    }

    #[test]
    fn wide_case_split() {
        let n = 30;
        let disj = (0..n).map(|i| format!("x = {i}")).collect::<Vec<_>>().join(" \\/ ");
        let cases = (0..n).map(|i| format!("(x = {i} -> p = 0)")).collect::<Vec<_>>().join(" -> ");
        assert!(taut(&format!("(x <= 9 -> {disj}) -> {cases} -> x <= 9 -> p = 0")));
    }
}
