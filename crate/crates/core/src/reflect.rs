//! The reflective atoms: what they mean, how the checker verifies facts
//! about them, and which of their arguments determine the others.
//!
//! Every reflective relation is a computation on codes:
//!
//! * `Deriv(x, y)`: `y` codes a nonempty formula sequence ending in the
//!   formula coded by `x`;
//! * `Uses(y, a)`: `a` codes an entry of the sequence `y` that no logical
//!   rule justifies from earlier entries;
//! * `SubTrace(s, n, z, w)`: `z` codes the formula `s` with `x0` replaced by
//!   the numeral of `n`, and `w` codes that numeral;
//! * `EnumAt(E, i, a)`: `a` codes the `i`-th axiom of enumerator `E`.
//!
//! In each relation the last arguments are functions (or, for `Uses`, a
//! finite multi-valued function) of the first, which is what makes the
//! quantifiers over them effectively bounded. The checker accepts two kinds
//! of *computation facts*: a closed atom or negated atom of the right truth
//! value, and a *determinacy fact*
//! `forall v1 ... vk. (R(...) -> C)` where the `vi` fill exactly the
//! determined argument positions of `R`, the remaining arguments are closed,
//! and the quantifier-free `C` holds at every solution.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coding::{decode_sequence, encode_formula, substitute_code};
use crate::syntax::{EnumeratorId, Formula, Ident, Reflective, Term};

/// Largest enumerator index an `EnumAt` atom may be evaluated at.
pub const ENUM_INDEX_CAP: u64 = 100_000;

/// Closed terms whose value would exceed this many bits are not evaluated.
const MAX_BITS: u64 = 1 << 22;

/// The value of a closed term, if it stays within the size limit.
pub fn eval_closed_term(t: &Term) -> Option<BigUint> {
    match t {
        Term::Zero => Some(BigUint::zero()),
        Term::Var(_) => None,
        Term::Succ(s) => Some(eval_closed_term(s.base())? + s.count()),
        Term::Add(a, b) => Some(eval_closed_term(a)? + eval_closed_term(b)?),
        Term::Mul(a, b) => {
            let (x, y) = (eval_closed_term(a)?, eval_closed_term(b)?);
            (x.bits() + y.bits() <= MAX_BITS).then(|| x * y)
        }
    }
}

struct SeqInfo {
    last: Option<BigUint>,
    used: Vec<BigUint>,
}

thread_local! {
    static SEQUENCES: RefCell<HashMap<BigUint, Option<Rc<SeqInfo>>>> = RefCell::new(HashMap::new());
}

/// Decodes a proof-sequence code once and remembers its last entry and the
/// codes of its unjustified entries.
fn sequence_info(y: &BigUint) -> Option<Rc<SeqInfo>> {
    if let Some(hit) = SEQUENCES.with(|c| c.borrow().get(y).cloned()) {
        return hit;
    }
    let info = decode_sequence(y).map(|seq| {
        let mut used: Vec<BigUint> =
            crate::fo_proofs::unjustified(&seq).into_iter().map(|i| encode_formula(&seq[i]).0).collect();
        used.sort();
        used.dedup();
        Rc::new(SeqInfo { last: seq.last().map(|f| encode_formula(f).0), used })
    });
    SEQUENCES.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 512 {
            c.clear();
        }
        c.insert(y.clone(), info.clone());
    });
    info
}

/// The code of the `i`-th axiom of `e`, within the index cap.
pub fn enumerated_axiom_code(e: EnumeratorId, i: &BigUint) -> Option<BigUint> {
    let i = i.to_u64().filter(|&i| i <= ENUM_INDEX_CAP)?;
    crate::theories::enumerated_axiom(e, i).map(|f| encode_formula(&f).0)
}

/// Values of the determined arguments given the determining ones, as
/// `(position, value)` rows. `None` when the determining arguments are
/// not all given.
fn solutions(r: &Reflective, given: &[Option<BigUint>]) -> Option<Vec<Vec<BigUint>>> {
    match r {
        Reflective::Deriv { .. } => {
            let y = given[1].as_ref()?;
            Some(sequence_info(y).and_then(|s| s.last.clone()).map(|x| vec![x]).into_iter().collect())
        }
        Reflective::Uses { .. } => {
            let y = given[0].as_ref()?;
            Some(sequence_info(y).map(|s| s.used.iter().map(|a| vec![a.clone()]).collect()).unwrap_or_default())
        }
        Reflective::SubTrace { .. } => {
            let (s, n) = (given[0].as_ref()?, given[1].as_ref()?);
            Some(substitute_code(s, n).map(|(k, j)| vec![k, j]).into_iter().collect())
        }
        Reflective::EnumAt { enumerator, .. } => {
            // beyond the cap the atom is left undetermined rather than false
            let code = enumerated_axiom_code(*enumerator, given[0].as_ref()?)?;
            Some(vec![vec![code]])
        }
    }
}

/// Argument positions (into [`Reflective::args`]) that the others determine.
pub fn determined_positions(r: &Reflective) -> &'static [usize] {
    match r {
        Reflective::Deriv { .. } => &[0],
        Reflective::Uses { .. } => &[1],
        Reflective::SubTrace { .. } => &[2, 3],
        Reflective::EnumAt { .. } => &[1],
    }
}

/// The truth value of a reflective atom with closed arguments.
pub fn eval_closed(r: &Reflective) -> Option<bool> {
    let vals: Vec<BigUint> = r.args().into_iter().map(eval_closed_term).collect::<Option<_>>()?;
    eval_values(r, &vals)
}

/// The truth value of a reflective atom at argument values.
pub fn eval_values(r: &Reflective, vals: &[BigUint]) -> Option<bool> {
    let det = determined_positions(r);
    let given: Vec<Option<BigUint>> =
        vals.iter().enumerate().map(|(i, v)| (!det.contains(&i)).then(|| v.clone())).collect();
    let rows = solutions(r, &given)?;
    let wanted: Vec<&BigUint> = det.iter().map(|&i| &vals[i]).collect();
    Some(rows.iter().any(|row| row.iter().zip(&wanted).all(|(a, b)| a == *b)))
}

/// Solutions of `r` for the variable `x` when `x` fills determined
/// positions only and every other argument is closed. Other variables in
/// determined positions (as in `exists w. SubTrace(s, n, x, w)`) are
/// projected away when they are listed in `projected`.
fn solve_for(r: &Reflective, x: &Ident, projected: &[&Ident]) -> Option<Vec<BigUint>> {
    let args = r.args();
    let det = determined_positions(r);
    let mut given = vec![None; args.len()];
    let mut x_pos = Vec::new();
    for (i, t) in args.iter().enumerate() {
        match t {
            Term::Var(v) if v == x && det.contains(&i) => x_pos.push(i),
            Term::Var(v) if projected.contains(&v) && det.contains(&i) => {}
            _ if det.contains(&i) => {
                // a closed determined argument acts as a filter below
                eval_closed_term(t)?;
            }
            _ => given[i] = Some(eval_closed_term(t)?),
        }
    }
    if x_pos.is_empty() {
        return None;
    }
    let rows = solutions(r, &given)?;
    let mut out = BTreeSet::new();
    'rows: for row in rows {
        let value = |i: usize| &row[det.iter().position(|&d| d == i).expect("determined")];
        for (i, t) in args.iter().enumerate() {
            if det.contains(&i) && !x_pos.contains(&i) {
                if let Term::Var(v) = t {
                    if projected.contains(&v) {
                        continue;
                    }
                }
                if eval_closed_term(t).as_ref() != Some(value(i)) {
                    continue 'rows;
                }
            }
        }
        let first = value(x_pos[0]).clone();
        if x_pos.iter().all(|&i| *value(i) == first) {
            out.insert(first);
        }
    }
    Some(out.into_iter().collect())
}

/// A reflective atom (possibly under existentials over other determined
/// arguments) that pins down `x`.
fn determining_atom(f: &Formula, x: &Ident) -> Option<Vec<BigUint>> {
    let mut projected = Vec::new();
    let mut g = f;
    while let Formula::Exists(v, body) = g {
        if v == x {
            return None;
        }
        projected.push(v);
        g = body;
    }
    match g {
        Formula::Reflect(Reflective::EnumAt { enumerator, index: Term::Var(v), axiom }) if v == x => {
            crate::theories::enumerated_indices(*enumerator, &eval_closed_term(axiom)?)
        }
        Formula::Reflect(r) => solve_for(r, x, &projected),
        _ => None,
    }
}

fn conjuncts(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        other => vec![other],
    }
}

/// For `exists x. body`: the only values of `x` at which `body` can hold,
/// when a conjunct of `body` is a reflective atom determining `x` from
/// closed arguments.
pub fn witness_candidates(body: &Formula, x: &Ident) -> Option<Vec<BigUint>> {
    conjuncts(body).into_iter().find_map(|c| determining_atom(c, x))
}

/// For `forall x. body` with `body = A -> B`: the only values of `x` at
/// which `body` can fail, when a conjunct of `A` determines `x`.
pub fn counterexample_candidates(body: &Formula, x: &Ident) -> Option<Vec<BigUint>> {
    match body {
        Formula::Imp(a, _) => witness_candidates(a, x),
        _ => None,
    }
}

/// Quantifier-free evaluation of a closed formula, `None` if some atom
/// cannot be evaluated.
fn eval_qf(f: &Formula) -> Option<bool> {
    Some(match f {
        Formula::Eq(a, b) => eval_closed_term(a)? == eval_closed_term(b)?,
        Formula::Le(a, b) => eval_closed_term(a)? <= eval_closed_term(b)?,
        Formula::Bot => false,
        Formula::Reflect(r) => eval_closed(r)?,
        Formula::Not(a) => !eval_qf(a)?,
        Formula::And(a, b) => eval_qf(a)? && eval_qf(b)?,
        Formula::Or(a, b) => eval_qf(a)? || eval_qf(b)?,
        Formula::Imp(a, b) => !eval_qf(a)? || eval_qf(b)?,
        Formula::Iff(a, b) => eval_qf(a)? == eval_qf(b)?,
        Formula::ForAll(..) | Formula::Exists(..) => return None,
    })
}

fn is_quantifier_free(f: &Formula) -> bool {
    match f {
        Formula::ForAll(..) | Formula::Exists(..) => false,
        Formula::Not(a) => is_quantifier_free(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            is_quantifier_free(a) && is_quantifier_free(b)
        }
        _ => true,
    }
}

/// Whether `f` is a computation fact the checker accepts without proof.
pub fn is_computation_fact(f: &Formula) -> bool {
    match f {
        Formula::Reflect(r) => eval_closed(r) == Some(true),
        Formula::Not(a) => matches!(&**a, Formula::Reflect(r) if eval_closed(r) == Some(false)),
        Formula::ForAll(..) => is_determinacy_fact(f),
        _ => false,
    }
}

fn is_determinacy_fact(f: &Formula) -> bool {
    let mut vars = Vec::new();
    let mut g = f;
    while let Formula::ForAll(v, body) = g {
        vars.push(v.clone());
        g = body;
    }
    let Formula::Imp(ante, cons) = g else { return false };
    let Formula::Reflect(r) = &**ante else { return false };
    if !is_quantifier_free(cons) || vars.iter().collect::<BTreeSet<_>>().len() != vars.len() {
        return false;
    }
    let args = r.args();
    let det = determined_positions(r);
    let mut given = vec![None; args.len()];
    let mut slots: Vec<(usize, &Ident)> = Vec::new();
    for (i, t) in args.iter().enumerate() {
        match t {
            Term::Var(v) if vars.contains(v) => {
                if !det.contains(&i) || slots.iter().any(|(_, w)| *w == v) {
                    return false;
                }
                slots.push((i, v));
            }
            _ => match eval_closed_term(t) {
                Some(n) if !det.contains(&i) => given[i] = Some(n),
                Some(_) => {}
                None => return false,
            },
        }
    }
    if slots.len() != vars.len() || !cons.free_vars().iter().all(|v| vars.contains(v)) {
        return false;
    }
    let Some(rows) = solutions(r, &given) else { return false };
    rows.iter().all(|row| {
        let value = |i: usize| row[det.iter().position(|&d| d == i).expect("determined")].clone();
        // closed determined arguments must agree for the row to be a solution
        let matches_closed = args.iter().enumerate().all(|(i, t)| {
            !det.contains(&i) || slots.iter().any(|&(j, _)| j == i) || eval_closed_term(t) == Some(value(i))
        });
        if !matches_closed {
            return true;
        }
        let inst =
            slots.iter().fold((**cons).clone(), |acc, &(i, v)| acc.substitute(v, &crate::syntax::numeral(value(i))));
        eval_qf(&inst) == Some(true)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coding::{encode_sequence, encode_term};
    use crate::syntax::numeral;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn subtrace_is_substitution() {
        let src = encode_formula(&f("x0 = 0")).0;
        let (k, j) = substitute_code(&src, &BigUint::from(1u32)).unwrap();
        let atom = Reflective::SubTrace {
            source: numeral(src.clone()),
            arg: numeral(1u32),
            result: numeral(k.clone()),
            trace: numeral(j.clone()),
        };
        assert_eq!(eval_closed(&atom), Some(true));
        assert!(is_computation_fact(&Formula::Reflect(atom)));
        let wrong = Reflective::SubTrace {
            source: numeral(src.clone()),
            arg: numeral(2u32),
            result: numeral(k.clone()),
            trace: numeral(j.clone()),
        };
        assert_eq!(eval_closed(&wrong), Some(false));
        assert!(is_computation_fact(&Formula::not(Formula::Reflect(wrong))));
        let det = Formula::forall(
            Ident::from_static("z"),
            Formula::forall(
                Ident::from_static("w"),
                Formula::imp(
                    Formula::Reflect(Reflective::SubTrace {
                        source: numeral(src.clone()),
                        arg: numeral(1u32),
                        result: Term::var("z"),
                        trace: Term::var("w"),
                    }),
                    Formula::and(
                        Formula::eq(Term::var("z"), numeral(k.clone())),
                        Formula::eq(Term::var("w"), numeral(j)),
                    ),
                ),
            ),
        );
        assert!(is_computation_fact(&det));
        let body = Formula::exists(
            Ident::from_static("w"),
            Formula::Reflect(Reflective::SubTrace {
                source: numeral(src),
                arg: numeral(1u32),
                result: Term::var("z"),
                trace: Term::var("w"),
            }),
        );
        assert_eq!(witness_candidates(&body, &Ident::from_static("z")), Some(vec![k]));
    }

    #[test]
    fn uses_lists_unjustified_entries() {
        let ax = f("forall x. x + 0 = x");
        let seq = [ax.clone(), f("(forall x. x + 0 = x) -> 0 + 0 = 0"), f("0 + 0 = 0")];
        let y = encode_sequence(seq.iter()).0;
        let a = encode_formula(&ax).0;
        let uses = Reflective::Uses { proof: numeral(y.clone()), axiom: numeral(a.clone()) };
        assert_eq!(eval_closed(&uses), Some(true));
        let body = Formula::imp(
            Formula::Reflect(Reflective::Uses { proof: numeral(y.clone()), axiom: Term::var("a") }),
            Formula::Bot,
        );
        assert_eq!(counterexample_candidates(&body, &Ident::from_static("a")), Some(vec![a.clone()]));
        let last = encode_formula(&seq[2]).0;
        let deriv = Reflective::Deriv { formula: numeral(last), proof: numeral(y) };
        assert_eq!(eval_closed(&deriv), Some(true));
        let _ = encode_term(&Term::Zero);
    }

    #[test]
    fn malformed_determinacy_facts_are_rejected() {
        let src = encode_formula(&f("x0 = 0")).0;
        let bad = Formula::forall(
            Ident::from_static("z"),
            Formula::imp(
                Formula::Reflect(Reflective::SubTrace {
                    source: numeral(src),
                    arg: numeral(1u32),
                    result: Term::var("z"),
                    trace: Term::var("w"),
                }),
                Formula::eq(Term::var("z"), Term::Zero),
            ),
        );
        assert!(!is_computation_fact(&bad));
    }
}
