//! The logical axiom schemas of the Hilbert calculus.
//!
//! | name            | shape                                                  |
//! |-----------------|--------------------------------------------------------|
//! | `taut`          | any propositional tautology                            |
//! | `forall-elim`   | `forall x. φ -> φ[t/x]`                                |
//! | `exists-intro`  | `φ[t/x] -> exists x. φ`                                |
//! | `forall-dist`   | `forall x. (φ -> ψ) -> (forall x. φ -> forall x. ψ)`   |
//! | `vacuous`       | `φ -> forall x. φ` with `x` not free in `φ`            |
//! | `exists-def`    | `exists x. φ <-> ~forall x. ~φ`                        |
//! | `refl`          | `t = t`                                                |
//! | `leibniz`       | `s = t -> (A -> B)`, `B` is `A` with some free `s` made `t` |
//!
//! Substitution in `forall-elim` and `exists-intro` is the capture-avoiding
//! [`Formula::substitute`]; the instance term is recovered from the two
//! formulas and the substitution is then recomputed and compared.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::taut::is_tautology;
use crate::syntax::{Formula, Ident, Reflective, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Schema {
    Taut,
    ForAllElim,
    ExistsIntro,
    ForAllDist,
    VacuousForAll,
    ExistsDef,
    Refl,
    Leibniz,
}

impl Schema {
    pub const ALL: [Schema; 8] = [
        Schema::Refl,
        Schema::ForAllElim,
        Schema::ExistsIntro,
        Schema::ForAllDist,
        Schema::VacuousForAll,
        Schema::ExistsDef,
        Schema::Leibniz,
        Schema::Taut,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Taut => "taut",
            Schema::ForAllElim => "forall-elim",
            Schema::ExistsIntro => "exists-intro",
            Schema::ForAllDist => "forall-dist",
            Schema::VacuousForAll => "vacuous",
            Schema::ExistsDef => "exists-def",
            Schema::Refl => "refl",
            Schema::Leibniz => "leibniz",
        }
    }

    pub fn from_name(name: &str) -> Option<Schema> {
        Schema::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Whether `f` is an instance of this schema.
    pub fn matches(self, f: &Formula) -> bool {
        match self {
            Schema::Taut => is_tautology(f),
            Schema::ForAllElim => match f {
                Formula::Imp(a, inst) => match &**a {
                    Formula::ForAll(x, body) => is_instance(body, x, inst),
                    _ => false,
                },
                _ => false,
            },
            Schema::ExistsIntro => match f {
                Formula::Imp(inst, e) => match &**e {
                    Formula::Exists(x, body) => is_instance(body, x, inst),
                    _ => false,
                },
                _ => false,
            },
            Schema::ForAllDist => match f {
                Formula::Imp(l, r) => match (&**l, &**r) {
                    (Formula::ForAll(x, imp), Formula::Imp(fa, fb)) => match (&**imp, &**fa, &**fb) {
                        (Formula::Imp(a, b), Formula::ForAll(y, a2), Formula::ForAll(z, b2)) => {
                            x == y && x == z && a == a2 && b == b2
                        }
                        _ => false,
                    },
                    _ => false,
                },
                _ => false,
            },
            Schema::VacuousForAll => match f {
                Formula::Imp(a, r) => match &**r {
                    Formula::ForAll(x, a2) => a == a2 && !a.has_free(x),
                    _ => false,
                },
                _ => false,
            },
            Schema::ExistsDef => match f {
                Formula::Iff(e, r) => match (&**e, &**r) {
                    (Formula::Exists(x, a), Formula::Not(n)) => match &**n {
                        Formula::ForAll(y, na) => x == y && **na == Formula::not((**a).clone()),
                        _ => false,
                    },
                    _ => false,
                },
                _ => false,
            },
            Schema::Refl => matches!(f, Formula::Eq(a, b) if a == b),
            Schema::Leibniz => match f {
                Formula::Imp(eq, r) => match (&**eq, &**r) {
                    (Formula::Eq(s, t), Formula::Imp(a, b)) => leibniz_match(a, b, s, t),
                    _ => false,
                },
                _ => false,
            },
        }
    }
}

/// The first schema (in [`Schema::ALL`] order) that `f` instantiates.
pub fn which_schema(f: &Formula) -> Option<Schema> {
    Schema::ALL.into_iter().find(|s| s.matches(f))
}

/// Whether `target` is `pattern[t/x]` for some term `t`.
pub fn is_instance(pattern: &Formula, x: &Ident, target: &Formula) -> bool {
    match find_instance(pattern, x, target) {
        Some(t) => pattern.substitute(x, &t) == *target,
        None => false,
    }
}

/// A term `t` with `pattern[t/x] == target`, if the shapes allow one.
///
/// When `x` does not occur free in `pattern` the variable itself is
/// returned, so that the caller's comparison reduces to equality.
pub fn find_instance(pattern: &Formula, x: &Ident, target: &Formula) -> Option<Term> {
    if !pattern.has_free(x) {
        return Some(Term::Var(x.clone()));
    }
    walk_formula(pattern, x, target)
}

fn walk_formula(p: &Formula, x: &Ident, q: &Formula) -> Option<Term> {
    match (p, q) {
        (Formula::Eq(a, b), Formula::Eq(c, d)) | (Formula::Le(a, b), Formula::Le(c, d)) => {
            walk_term(a, x, c).or_else(|| walk_term(b, x, d))
        }
        (Formula::Reflect(r), Formula::Reflect(s)) => {
            if std::mem::discriminant(r) != std::mem::discriminant(s) {
                return None;
            }
            r.args().into_iter().zip(s.args()).find_map(|(a, c)| walk_term(a, x, c))
        }
        (Formula::Not(a), Formula::Not(c)) => walk_formula(a, x, c),
        (Formula::And(a, b), Formula::And(c, d))
        | (Formula::Or(a, b), Formula::Or(c, d))
        | (Formula::Imp(a, b), Formula::Imp(c, d))
        | (Formula::Iff(a, b), Formula::Iff(c, d)) => walk_formula(a, x, c).or_else(|| walk_formula(b, x, d)),
        (Formula::ForAll(v, a), Formula::ForAll(_, c)) | (Formula::Exists(v, a), Formula::Exists(_, c)) => {
            if v == x {
                None
            } else {
                walk_formula(a, x, c)
            }
        }
        _ => None,
    }
}

fn walk_term(p: &Term, x: &Ident, q: &Term) -> Option<Term> {
    match p {
        Term::Var(v) if v == x => Some(q.clone()),
        Term::Succ(s) => {
            if !s.base().contains_var(x) {
                return None;
            }
            let (kq, bq) = q.split_succ();
            if kq < *s.count() {
                return None;
            }
            let rest = Term::succ_n(kq - s.count(), bq.clone());
            walk_term(s.base(), x, &rest)
        }
        Term::Add(a, b) => match q {
            Term::Add(c, d) => walk_term(a, x, c).or_else(|| walk_term(b, x, d)),
            _ => None,
        },
        Term::Mul(a, b) => match q {
            Term::Mul(c, d) => walk_term(a, x, c).or_else(|| walk_term(b, x, d)),
            _ => None,
        },
        _ => None,
    }
}

/// Whether `b` arises from `a` by replacing some free occurrences of `s`
/// with `t`, none of them inside a binder of a variable of `s` or `t`.
pub fn leibniz_match(a: &Formula, b: &Formula, s: &Term, t: &Term) -> bool {
    let mut blocked = s.vars();
    blocked.extend(t.vars());
    lf(a, b, s, t, &blocked)
}

fn lf(a: &Formula, b: &Formula, s: &Term, t: &Term, blocked: &BTreeSet<Ident>) -> bool {
    if a == b {
        return true;
    }
    match (a, b) {
        (Formula::Eq(a1, a2), Formula::Eq(b1, b2)) | (Formula::Le(a1, a2), Formula::Le(b1, b2)) => {
            lt(a1, b1, s, t) && lt(a2, b2, s, t)
        }
        (Formula::Reflect(r), Formula::Reflect(q)) => {
            let same_head = match (r, q) {
                (Reflective::EnumAt { enumerator: e1, .. }, Reflective::EnumAt { enumerator: e2, .. }) => e1 == e2,
                _ => std::mem::discriminant(r) == std::mem::discriminant(q),
            };
            same_head && r.args().into_iter().zip(q.args()).all(|(x, y)| lt(x, y, s, t))
        }
        (Formula::Not(x), Formula::Not(y)) => lf(x, y, s, t, blocked),
        (Formula::And(a1, a2), Formula::And(b1, b2))
        | (Formula::Or(a1, a2), Formula::Or(b1, b2))
        | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
        | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => lf(a1, b1, s, t, blocked) && lf(a2, b2, s, t, blocked),
        (Formula::ForAll(x, a1), Formula::ForAll(y, b1)) | (Formula::Exists(x, a1), Formula::Exists(y, b1)) => {
            x == y && !blocked.contains(x) && lf(a1, b1, s, t, blocked)
        }
        _ => false,
    }
}

fn lt(a: &Term, b: &Term, s: &Term, t: &Term) -> bool {
    if a == b || (a == s && b == t) {
        return true;
    }
    match (a, b) {
        (Term::Succ(sa), _) => {
            let (ka, ba) = (sa.count(), sa.base());
            // replace the suffix S^m(c) of the chain that equals s
            let (m, c) = s.split_succ();
            if ba == c && m < *ka {
                let j = ka - &m;
                if *b == Term::succ_n(j, t.clone()) {
                    return true;
                }
            }
            // keep the chain, replace inside its base
            let (kb, bb) = b.split_succ();
            if kb < *ka {
                return false;
            }
            let rest = if kb == *ka { bb.clone() } else { Term::succ_n(kb - ka, bb.clone()) };
            lt(ba, &rest, s, t)
        }
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            lt(a1, b1, s, t) && lt(a2, b2, s, t)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn is(schema: Schema, s: &str) -> bool {
        schema.matches(&f(s))
    }

    #[test]
    fn quantifier_schemas() {
        assert!(is(Schema::ForAllElim, "(forall x. x + 0 = x) -> S(0) + 0 = S(0)"));
        assert!(is(Schema::ForAllElim, "(forall x. S(x) = y) -> S(S(S(0))) = y"));
        assert!(!is(Schema::ForAllElim, "(forall x. x = x) -> 0 = S(0)"));
        assert!(is(Schema::ForAllElim, "(forall x. exists y. x = y) -> exists y1. y = y1"));
        assert!(!is(Schema::ForAllElim, "(forall x. exists y. x = y) -> exists y. y = y"));
        assert!(is(Schema::ExistsIntro, "S(0) + S(0) = S(S(0)) -> exists y. y + y = S(S(0))"));
        assert!(is(Schema::ForAllDist, "(forall x. (x = 0 -> x = x)) -> ((forall x. x = 0) -> forall x. x = x)"));
        assert!(is(Schema::VacuousForAll, "0 = 0 -> forall x. 0 = 0"));
        assert!(!is(Schema::VacuousForAll, "x = 0 -> forall x. x = 0"));
        assert!(is(Schema::ExistsDef, "(exists x. x = 0) <-> ~forall x. ~x = 0"));
        assert!(is(Schema::Refl, "S(x) = S(x)"));
    }

    #[test]
    fn leibniz_replaces_some_occurrences() {
        assert!(is(Schema::Leibniz, "x = 0 -> (x = x -> x = 0)"));
        assert!(is(Schema::Leibniz, "x = 0 -> (S(x) = x -> S(0) = 0)"));
        assert!(is(Schema::Leibniz, "x = S(0) -> (S(S(x)) = 0 -> S(S(S(0))) = 0)"));
        assert!(is(Schema::Leibniz, "S(x) = y -> (S(S(x)) = 0 -> S(y) = 0)"));
        assert!(is(Schema::Leibniz, "x = y -> ((exists z. z = x) -> exists z. z = y)"));
        assert!(!is(Schema::Leibniz, "x = y -> ((exists y. y = x) -> exists y. y = y)"));
        assert!(!is(Schema::Leibniz, "x = 0 -> (x = x -> 0 = S(0))"));
        assert!(is(Schema::Leibniz, "0 + 0 = 0 -> (S(0 + 0) = 0 -> S(0) = 0)"));
    }

    #[test]
    fn schema_names_round_trip() {
        for s in Schema::ALL {
            assert_eq!(Schema::from_name(s.name()), Some(s));
        }
    }
}
