//! Terms and formulas of first-order arithmetic over `{0, S, +, *, <=, =}`.
//!
//! Successor chains are kept in a compressed normal form: `S(S(S(t)))` is a
//! single [`Succ`] node with count 3 over a base that is never itself a
//! successor. Numerals of very large values (Goedel codes of formulas) stay
//! small in memory this way, while remaining the terms `S...S(0)` logically.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::parser;

/// A variable name over `[a-z][a-z0-9_]*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ident(String);

impl Ident {
    pub fn new(name: impl Into<String>) -> Option<Ident> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some('a'..='z')) && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'));
        ok.then_some(Ident(name))
    }

    /// Panics on an invalid name; meant for literals in code.
    pub fn from_static(name: &str) -> Ident {
        Ident::new(name).unwrap_or_else(|| panic!("invalid identifier {name:?}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `count` applications of the successor symbol to `base`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Succ {
    count: BigUint,
    base: Box<Term>,
}

impl Succ {
    pub fn count(&self) -> &BigUint {
        &self.count
    }

    pub fn base(&self) -> &Term {
        &self.base
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Var(Ident),
    Succ(Succ),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Ident::from_static(name))
    }

    /// `S(t)`.
    pub fn succ(t: Term) -> Term {
        Term::succ_n(BigUint::one(), t)
    }

    /// `S^n(t)`, normalized.
    pub fn succ_n(n: BigUint, t: Term) -> Term {
        if n.is_zero() {
            return t;
        }
        match t {
            Term::Succ(Succ { count, base }) => Term::Succ(Succ { count: count + n, base }),
            other => Term::Succ(Succ { count: n, base: Box::new(other) }),
        }
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    /// Splits off the outer successor chain: `S^k(b)` gives `(k, b)`.
    pub fn split_succ(&self) -> (BigUint, &Term) {
        match self {
            Term::Succ(s) => (s.count.clone(), &s.base),
            other => (BigUint::zero(), other),
        }
    }

    /// The value `n` when this term is the numeral `S^n(0)`.
    pub fn as_numeral(&self) -> Option<BigUint> {
        match self {
            Term::Zero => Some(BigUint::zero()),
            Term::Succ(s) if *s.base == Term::Zero => Some(s.count.clone()),
            _ => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(s) => s.base.is_closed(),
            Term::Add(a, b) | Term::Mul(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Succ(s) => s.base.collect_vars(out),
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, v: &Ident) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(x) => x == v,
            Term::Succ(s) => s.base.contains_var(v),
            Term::Add(a, b) | Term::Mul(a, b) => a.contains_var(v) || b.contains_var(v),
        }
    }

    /// Replaces every occurrence of `v` by `t`.
    pub fn substitute(&self, v: &Ident, t: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(x) if x == v => t.clone(),
            Term::Var(_) => self.clone(),
            Term::Succ(s) => Term::succ_n(s.count.clone(), s.base.substitute(v, t)),
            Term::Add(a, b) => Term::add(a.substitute(v, t), b.substitute(v, t)),
            Term::Mul(a, b) => Term::mul(a.substitute(v, t), b.substitute(v, t)),
        }
    }

    /// Number of symbol occurrences, counting each `S` of a chain.
    pub fn size(&self) -> BigUint {
        match self {
            Term::Zero | Term::Var(_) => BigUint::one(),
            Term::Succ(s) => &s.count + s.base.size(),
            Term::Add(a, b) | Term::Mul(a, b) => BigUint::one() + a.size() + b.size(),
        }
    }
}

/// The numeral `S^n(0)`.
pub fn numeral(n: impl Into<BigUint>) -> Term {
    Term::succ_n(n.into(), Term::Zero)
}

/// Built-in axiom enumerators that formulas may refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EnumeratorId {
    Pa,
    QPrime,
}

impl EnumeratorId {
    pub fn code(self) -> u32 {
        match self {
            EnumeratorId::Pa => 0,
            EnumeratorId::QPrime => 1,
        }
    }

    pub fn from_code(code: u32) -> Option<EnumeratorId> {
        match code {
            0 => Some(EnumeratorId::Pa),
            1 => Some(EnumeratorId::QPrime),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EnumeratorId::Pa => "pa",
            EnumeratorId::QPrime => "qprime",
        }
    }

    pub fn from_name(name: &str) -> Option<EnumeratorId> {
        match name {
            "pa" => Some(EnumeratorId::Pa),
            "qprime" => Some(EnumeratorId::QPrime),
            _ => None,
        }
    }
}

/// Atomic relations whose truth is decided by computing on codes rather
/// than by arithmetic. These are the only non-arithmetic atoms; every
/// evaluation rule for them lives in [`crate::reflect`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflective {
    /// `proof` codes a nonempty formula sequence whose last entry is coded by `formula`.
    Deriv { formula: Term, proof: Term },
    /// `axiom` codes a formula of the sequence `proof` that no logical rule justifies.
    Uses { proof: Term, axiom: Term },
    /// `result` codes the formula coded by `source` with `x0` replaced by the
    /// numeral of `arg`, and `trace` codes that numeral.
    SubTrace { source: Term, arg: Term, result: Term, trace: Term },
    /// `axiom` codes the `index`-th axiom of a built-in enumerator.
    EnumAt { enumerator: EnumeratorId, index: Term, axiom: Term },
}

impl Reflective {
    pub fn args(&self) -> Vec<&Term> {
        match self {
            Reflective::Deriv { formula, proof } => vec![formula, proof],
            Reflective::Uses { proof, axiom } => vec![proof, axiom],
            Reflective::SubTrace { source, arg, result, trace } => vec![source, arg, result, trace],
            Reflective::EnumAt { index, axiom, .. } => vec![index, axiom],
        }
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Reflective {
        match self {
            Reflective::Deriv { formula, proof } => Reflective::Deriv { formula: f(formula), proof: f(proof) },
            Reflective::Uses { proof, axiom } => Reflective::Uses { proof: f(proof), axiom: f(axiom) },
            Reflective::SubTrace { source, arg, result, trace } => {
                Reflective::SubTrace { source: f(source), arg: f(arg), result: f(result), trace: f(trace) }
            }
            Reflective::EnumAt { enumerator, index, axiom } => {
                Reflective::EnumAt { enumerator: *enumerator, index: f(index), axiom: f(axiom) }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Reflective::Deriv { .. } => "Deriv",
            Reflective::Uses { .. } => "Uses",
            Reflective::SubTrace { .. } => "SubTrace",
            Reflective::EnumAt { .. } => "EnumAt",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ForAll(Ident, Box<Formula>),
    Exists(Ident, Box<Formula>),
    Reflect(Reflective),
}

/// A formula with no free variables.
pub type Sentence = Formula;

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn le(a: Term, b: Term) -> Formula {
        Formula::Le(a, b)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Ident, body: Formula) -> Formula {
        Formula::ForAll(v, Box::new(body))
    }

    pub fn exists(v: Ident, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    /// `forall v. (v <= bound -> body)`.
    pub fn forall_le(v: Ident, bound: Term, body: Formula) -> Formula {
        let guard = Formula::le(Term::Var(v.clone()), bound);
        Formula::forall(v, Formula::imp(guard, body))
    }

    /// `exists v. (v <= bound /\ body)`.
    pub fn exists_le(v: Ident, bound: Term, body: Formula) -> Formula {
        let guard = Formula::le(Term::Var(v.clone()), bound);
        Formula::exists(v, Formula::and(guard, body))
    }

    /// Right-nested conjunction; the empty conjunction is `~bot`.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::not(Formula::Bot),
            Some(last) => parts.into_iter().rev().fold(last, |acc, f| Formula::and(f, acc)),
        }
    }

    /// Right-nested disjunction; the empty disjunction is `bot`.
    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut parts: Vec<Formula> = parts.into_iter().collect();
        match parts.pop() {
            None => Formula::Bot,
            Some(last) => parts.into_iter().rev().fold(last, |acc, f| Formula::or(f, acc)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Ident>, out: &mut BTreeSet<Ident>) {
        let mut add_term = |t: &Term, bound: &Vec<Ident>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                add_term(a, bound);
                add_term(b, bound);
            }
            Formula::Bot => {}
            Formula::Reflect(r) => {
                for t in r.args() {
                    add_term(t, bound);
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::ForAll(v, body) | Formula::Exists(v, body) => {
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: &Ident) -> bool {
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => a.contains_var(v) || b.contains_var(v),
            Formula::Bot => false,
            Formula::Reflect(r) => r.args().iter().any(|t| t.contains_var(v)),
            Formula::Not(a) => a.has_free(v),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.has_free(v) || b.has_free(v)
            }
            Formula::ForAll(x, body) | Formula::Exists(x, body) => x != v && body.has_free(v),
        }
    }

    /// All variable names occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Ident> {
        let mut out = BTreeSet::new();
        self.collect_all_vars(&mut out);
        out
    }

    fn collect_all_vars(&self, out: &mut BTreeSet<Ident>) {
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Bot => {}
            Formula::Reflect(r) => r.args().into_iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(a) => a.collect_all_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.collect_all_vars(out);
                b.collect_all_vars(out);
            }
            Formula::ForAll(x, body) | Formula::Exists(x, body) => {
                out.insert(x.clone());
                body.collect_all_vars(out);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    ///
    /// A bound variable that would capture a variable of `t` is renamed to
    /// the least unused `name<k>`, `k >= 1`.
    pub fn substitute(&self, v: &Ident, t: &Term) -> Formula {
        let tvars = t.vars();
        self.subst_inner(v, t, &tvars)
    }

    fn subst_inner(&self, v: &Ident, t: &Term, tvars: &BTreeSet<Ident>) -> Formula {
        match self {
            Formula::Eq(a, b) => Formula::Eq(a.substitute(v, t), b.substitute(v, t)),
            Formula::Le(a, b) => Formula::Le(a.substitute(v, t), b.substitute(v, t)),
            Formula::Bot => Formula::Bot,
            Formula::Reflect(r) => Formula::Reflect(r.map_terms(|a| a.substitute(v, t))),
            Formula::Not(a) => Formula::not(a.subst_inner(v, t, tvars)),
            Formula::And(a, b) => Formula::and(a.subst_inner(v, t, tvars), b.subst_inner(v, t, tvars)),
            Formula::Or(a, b) => Formula::or(a.subst_inner(v, t, tvars), b.subst_inner(v, t, tvars)),
            Formula::Imp(a, b) => Formula::imp(a.subst_inner(v, t, tvars), b.subst_inner(v, t, tvars)),
            Formula::Iff(a, b) => Formula::iff(a.subst_inner(v, t, tvars), b.subst_inner(v, t, tvars)),
            Formula::ForAll(x, body) | Formula::Exists(x, body) => {
                if x == v || !body.has_free(v) {
                    return self.clone();
                }
                let (x2, body2) = if tvars.contains(x) {
                    let mut avoid = body.all_vars();
                    avoid.extend(tvars.iter().cloned());
                    avoid.insert(v.clone());
                    let fresh = fresh_name(x, &avoid);
                    let renamed = body.substitute(x, &Term::Var(fresh.clone()));
                    (fresh, renamed)
                } else {
                    (x.clone(), (**body).clone())
                };
                let new_body = body2.subst_inner(v, t, tvars);
                match self {
                    Formula::ForAll(..) => Formula::forall(x2, new_body),
                    _ => Formula::exists(x2, new_body),
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Le(..) | Formula::Bot | Formula::Reflect(_) => 0,
            Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    pub fn contains_reflective(&self) -> bool {
        match self {
            Formula::Reflect(_) => true,
            Formula::Eq(..) | Formula::Le(..) | Formula::Bot => false,
            Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => a.contains_reflective(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.contains_reflective() || b.contains_reflective()
            }
        }
    }

    /// Canonical printing with every compound parenthesized.
    pub fn to_full_string(&self) -> String {
        let mut s = String::new();
        write_formula_full(&mut s, self);
        s
    }
}

/// Least `name<k>` (k >= 1) not in `avoid`.
pub fn fresh_name(base: &Ident, avoid: &BTreeSet<Ident>) -> Ident {
    (1u64..)
        .map(|k| Ident(format!("{}{}", base.0, k)))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded suffix search")
}

impl std::str::FromStr for Formula {
    type Err = parser::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parser::parse_formula(s)
    }
}

impl std::str::FromStr for Term {
    type Err = parser::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parser::parse_term(s)
    }
}

/// Terms, formulas and identifiers serialize as their canonical text.
macro_rules! serde_via_text {
    ($ty:ty, $parse:expr) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                $parse(&text).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_text!(Formula, parser::parse_formula);
serde_via_text!(Term, parser::parse_term);
serde_via_text!(Ident, |t: &str| Ident::new(t).ok_or_else(|| format!("invalid identifier {t:?}")));

// ---------------------------------------------------------------------------
// Printing

const INLINE_SUCC: u32 = 3;

fn write_term(out: &mut String, t: &Term, prec: u8, full: bool) {
    use std::fmt::Write;
    match t {
        Term::Zero => out.push('0'),
        Term::Var(v) => out.push_str(v.as_str()),
        Term::Succ(s) => {
            let small = s.count.to_u32().filter(|&k| k <= INLINE_SUCC);
            match (small, &*s.base) {
                (None, Term::Zero) => {
                    let _ = write!(out, "{}", s.count);
                }
                (None, base) => {
                    let _ = write!(out, "S^{}(", s.count);
                    write_term(out, base, 0, full);
                    out.push(')');
                }
                (Some(k), base) => {
                    for _ in 0..k {
                        out.push_str("S(");
                    }
                    write_term(out, base, 0, full);
                    for _ in 0..k {
                        out.push(')');
                    }
                }
            }
        }
        Term::Add(a, b) | Term::Mul(a, b) => {
            let (op, my) = if matches!(t, Term::Add(..)) { (" + ", 1) } else { (" * ", 2) };
            let paren = full || prec > my;
            if paren {
                out.push('(');
            }
            // left-associative: the right operand binds tighter
            write_term(out, a, my, full);
            out.push_str(op);
            write_term(out, b, my + 1, full);
            if paren {
                out.push(')');
            }
        }
    }
}

fn write_reflective(out: &mut String, r: &Reflective, full: bool) {
    out.push_str(r.name());
    if let Reflective::EnumAt { enumerator, .. } = r {
        out.push('[');
        out.push_str(enumerator.name());
        out.push(']');
    }
    out.push('(');
    for (i, t) in r.args().into_iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(out, t, 0, full);
    }
    out.push(')');
}

fn write_formula_full(out: &mut String, f: &Formula) {
    match f {
        Formula::Eq(a, b) | Formula::Le(a, b) => {
            write_term(out, a, 0, true);
            out.push_str(if matches!(f, Formula::Eq(..)) { " = " } else { " <= " });
            write_term(out, b, 0, true);
        }
        Formula::Bot => out.push_str("bot"),
        Formula::Reflect(r) => write_reflective(out, r, true),
        Formula::Not(a) => {
            out.push_str("~(");
            write_formula_full(out, a);
            out.push(')');
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            out.push('(');
            write_formula_full(out, a);
            out.push_str(binop_symbol(f));
            write_formula_full(out, b);
            out.push(')');
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            out.push('(');
            out.push_str(if matches!(f, Formula::ForAll(..)) { "forall " } else { "exists " });
            out.push_str(v.as_str());
            out.push_str(". ");
            write_formula_full(out, body);
            out.push(')');
        }
    }
}

fn binop_symbol(f: &Formula) -> &'static str {
    match f {
        Formula::And(..) => " /\\ ",
        Formula::Or(..) => " \\/ ",
        Formula::Imp(..) => " -> ",
        Formula::Iff(..) => " <-> ",
        _ => unreachable!("not a binary connective"),
    }
}

// Precedences: iff 1, imp 2, or 3, and 4, prefix 5.
fn write_formula_pretty(out: &mut String, f: &Formula, prec: u8) {
    match f {
        Formula::Eq(a, b) | Formula::Le(a, b) => {
            write_term(out, a, 0, false);
            out.push_str(if matches!(f, Formula::Eq(..)) { " = " } else { " <= " });
            write_term(out, b, 0, false);
        }
        Formula::Bot => out.push_str("bot"),
        Formula::Reflect(r) => write_reflective(out, r, false),
        Formula::Not(a) => {
            out.push('~');
            write_formula_pretty(out, a, 5);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            let my = match f {
                Formula::Iff(..) => 1,
                Formula::Imp(..) => 2,
                Formula::Or(..) => 3,
                _ => 4,
            };
            let paren = prec > my;
            if paren {
                out.push('(');
            }
            // right-associative; iff does not associate at all
            write_formula_pretty(out, a, my + 1);
            out.push_str(binop_symbol(f));
            write_formula_pretty(out, b, if my == 1 { 2 } else { my });
            if paren {
                out.push(')');
            }
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            // a quantifier body extends as far right as possible
            let paren = prec > 0;
            if paren {
                out.push('(');
            }
            out.push_str(if matches!(f, Formula::ForAll(..)) { "forall " } else { "exists " });
            out.push_str(v.as_str());
            out.push_str(". ");
            write_formula_pretty(out, body, 0);
            if paren {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(&mut s, self, 0, false);
        f.write_str(&s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula_pretty(&mut s, self, 0);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn parses_addition_fact() {
        let one = Term::succ(Term::Zero);
        let expected = Formula::eq(Term::add(one.clone(), one), numeral(2u32));
        assert_eq!(p("S(0) + S(0) = S(S(0))"), expected);
    }

    #[test]
    fn parses_q3_shape() {
        let x = Term::var("x");
        let y = Term::var("y");
        let expected = Formula::forall(
            Ident::from_static("x"),
            Formula::exists(
                Ident::from_static("y"),
                Formula::or(Formula::eq(x.clone(), Term::Zero), Formula::eq(x, Term::succ(y))),
            ),
        );
        assert_eq!(p("forall x. exists y. (x = 0 \\/ x = S(y))"), expected);
    }

    #[test]
    fn reports_column_of_missing_term() {
        let err = "0 =".parse::<Formula>().unwrap_err();
        assert_eq!(err.column, 4);
    }

    #[test]
    fn substitution_examples() {
        let x = Ident::from_static("x");
        assert_eq!(p("x = x").substitute(&x, &numeral(2u32)), p("S(S(0)) = S(S(0))"));
        assert_eq!(p("exists y. x = y").substitute(&x, &Term::var("y")), p("exists y1. y = y1"));
        assert_eq!(p("forall x. x = 0").substitute(&x, &numeral(1u32)), p("forall x. x = 0"));
    }

    #[test]
    fn fresh_suffix_skips_used_names() {
        let x = Ident::from_static("x");
        let f = p("exists y. (x = y /\\ y1 = 0)");
        assert_eq!(f.substitute(&x, &Term::var("y")), p("exists y2. (y = y2 /\\ y1 = 0)"));
    }

    #[test]
    fn numerals() {
        assert_eq!(numeral(0u32), Term::Zero);
        assert_eq!(numeral(3u32), Term::succ(Term::succ(Term::succ(Term::Zero))));
        for n in [0u32, 1, 7, 10_000] {
            let t = numeral(n);
            assert_eq!(t.size(), BigUint::from(n + 1));
            assert!(t.is_closed());
        }
    }

    #[test]
    fn large_numerals_print_in_decimal() {
        let t = numeral(12345u32);
        assert_eq!(t.to_string(), "12345");
        assert_eq!("12345".parse::<Term>().unwrap(), t);
        let u = Term::succ_n(BigUint::from(9u32), Term::var("x"));
        assert_eq!(u.to_string(), "S^9(x)");
        assert_eq!(u.to_string().parse::<Term>().unwrap(), u);
    }

    #[test]
    fn succ_chains_normalize() {
        let t = Term::succ(Term::succ(Term::var("x")));
        assert_eq!(t, Term::succ_n(BigUint::from(2u32), Term::var("x")));
        assert_eq!(t.to_string(), "S(S(x))");
    }

    #[test]
    fn pretty_printing_is_minimal() {
        let f = p("((forall x. (x <= S(0) -> x = x)) /\\ ~(0 = 0))");
        assert_eq!(f.to_string(), "(forall x. x <= S(0) -> x = x) /\\ ~0 = 0");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(p(&f.to_full_string()), f);
    }

    #[test]
    fn reflective_atoms_round_trip() {
        let f = p("Deriv(x, y) /\\ EnumAt[qprime](3, a) /\\ SubTrace(1, 2, z, w) /\\ Uses(y, 0)");
        assert_eq!(p(&f.to_string()), f);
        assert_eq!(f.free_vars().len(), 5);
    }
}
