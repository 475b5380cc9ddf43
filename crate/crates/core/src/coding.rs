//! Goedel numbering of terms, formulas and formula sequences.
//!
//! Every code is `pair(tag, payload)` with Cantor's pairing function. The
//! tag names the outermost symbol:
//!
//! | tag | object        | tag | object   |
//! |-----|---------------|-----|----------|
//! | 0   | sequence      | 10  | `/\`     |
//! | 1   | `0`           | 11  | `\/`     |
//! | 2   | variable      | 12  | `->`     |
//! | 3   | `S`-chain     | 13  | `<->`    |
//! | 4   | `+`           | 14  | `forall` |
//! | 5   | `*`           | 15  | `exists` |
//! | 6   | `=`           | 16  | `Deriv`  |
//! | 7   | `<=`          | 17  | `Uses`   |
//! | 8   | `bot`         | 18  | `SubTrace` |
//! | 9   | `~`           | 19  | `EnumAt` |
//!
//! The payload is the prefix serialization of the immediate subobjects as a
//! stream of 32-bit tokens, read as a bijective base-2^32 numeral (first
//! token least significant). Pairing is applied once per code rather than
//! once per node, so a code has roughly twice as many bits as its
//! serialization; nested pairing would square the code at every level of
//! nesting and codes of formulas mentioning other codes would not fit in
//! memory.
//!
//! Sequences are `pair(0, payload)` where the payload tokens are the length
//! followed by each element's serialization; the empty sequence is `0` and a
//! zero length header is never produced, so `1` codes nothing.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{EnumeratorId, Formula, Ident, Reflective, Succ, Term};

/// An arbitrary-precision Goedel number.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoedelNumber(pub BigUint);

impl GoedelNumber {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }

    pub fn numeral(&self) -> Term {
        crate::syntax::numeral(self.0.clone())
    }
}

impl From<BigUint> for GoedelNumber {
    fn from(n: BigUint) -> Self {
        GoedelNumber(n)
    }
}

impl From<u64> for GoedelNumber {
    fn from(n: u64) -> Self {
        GoedelNumber(BigUint::from(n))
    }
}

impl fmt::Display for GoedelNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for GoedelNumber {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(GoedelNumber(s.trim().parse()?))
    }
}

impl Serialize for GoedelNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for GoedelNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("{0} is not the code of any term, formula or sequence")]
    NotACode(GoedelNumber),
}

/// A decoded object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Term(Term),
    Formula(Formula),
    Sequence(Vec<Decoded>),
}

impl Decoded {
    pub fn into_formula(self) -> Option<Formula> {
        match self {
            Decoded::Formula(f) => Some(f),
            _ => None,
        }
    }

    pub fn into_term(self) -> Option<Term> {
        match self {
            Decoded::Term(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Decoded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoded::Term(t) => write!(f, "{t}"),
            Decoded::Formula(x) => write!(f, "{x}"),
            Decoded::Sequence(items) => {
                f.write_str("[")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str("]")
            }
        }
    }
}

pub mod tag {
    pub const SEQUENCE: u32 = 0;
    pub const ZERO: u32 = 1;
    pub const VAR: u32 = 2;
    pub const SUCC: u32 = 3;
    pub const ADD: u32 = 4;
    pub const MUL: u32 = 5;
    pub const EQ: u32 = 6;
    pub const LE: u32 = 7;
    pub const BOT: u32 = 8;
    pub const NOT: u32 = 9;
    pub const AND: u32 = 10;
    pub const OR: u32 = 11;
    pub const IMP: u32 = 12;
    pub const IFF: u32 = 13;
    pub const FORALL: u32 = 14;
    pub const EXISTS: u32 = 15;
    pub const DERIV: u32 = 16;
    pub const USES: u32 = 17;
    pub const SUBTRACE: u32 = 18;
    pub const ENUMAT: u32 = 19;
}

/// Cantor pairing `(a + b)(a + b + 1) / 2 + a`.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + a
}

/// Inverse of [`pair`].
pub fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let a = z - t;
    let b = w - &a;
    (a, b)
}

// ---------------------------------------------------------------------------
// Token streams

const BASE_BITS: u32 = 32;

/// Bijective base-2^32 value of a token stream (first token least significant).
fn tokens_to_nat(tokens: &[u32]) -> BigUint {
    // digit_i = token_i + 1 lies in 1..=2^32; carry into the next limb.
    let mut limbs: Vec<u32> = Vec::with_capacity(tokens.len() + 1);
    let mut carry = 0u64;
    for &t in tokens {
        let v = t as u64 + 1 + carry;
        limbs.push(v as u32);
        carry = v >> BASE_BITS;
    }
    if carry > 0 {
        limbs.push(carry as u32);
    }
    BigUint::from_slice(&limbs)
}

fn nat_to_tokens(n: &BigUint) -> Vec<u32> {
    let mut limbs: Vec<u32> = n.to_u32_digits();
    let mut out = Vec::with_capacity(limbs.len());
    let mut i = 0;
    loop {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        if i >= limbs.len() {
            break;
        }
        let low = limbs[i];
        if low == 0 {
            // digit is 2^32: borrow one from the limbs above
            out.push(u32::MAX);
            let mut j = i + 1;
            while limbs[j] == 0 {
                limbs[j] = u32::MAX;
                j += 1;
            }
            limbs[j] -= 1;
        } else {
            out.push(low - 1);
        }
        i += 1;
    }
    out
}

fn push_name(out: &mut Vec<u32>, name: &Ident) {
    let bytes = name.as_str().as_bytes();
    out.push(bytes.len() as u32);
    out.extend(bytes.iter().map(|&b| b as u32));
}

fn push_nat(out: &mut Vec<u32>, n: &BigUint) {
    let limbs = n.to_u32_digits();
    out.push(limbs.len() as u32);
    out.extend(limbs);
}

fn ser_term(out: &mut Vec<u32>, t: &Term) {
    match t {
        Term::Zero => out.push(tag::ZERO),
        Term::Var(v) => {
            out.push(tag::VAR);
            push_name(out, v);
        }
        Term::Succ(s) => {
            out.push(tag::SUCC);
            push_nat(out, s.count());
            ser_term(out, s.base());
        }
        Term::Add(a, b) => {
            out.push(tag::ADD);
            ser_term(out, a);
            ser_term(out, b);
        }
        Term::Mul(a, b) => {
            out.push(tag::MUL);
            ser_term(out, a);
            ser_term(out, b);
        }
    }
}

fn ser_formula(out: &mut Vec<u32>, f: &Formula) {
    match f {
        Formula::Eq(a, b) | Formula::Le(a, b) => {
            out.push(if matches!(f, Formula::Eq(..)) { tag::EQ } else { tag::LE });
            ser_term(out, a);
            ser_term(out, b);
        }
        Formula::Bot => out.push(tag::BOT),
        Formula::Not(a) => {
            out.push(tag::NOT);
            ser_formula(out, a);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            out.push(match f {
                Formula::And(..) => tag::AND,
                Formula::Or(..) => tag::OR,
                Formula::Imp(..) => tag::IMP,
                _ => tag::IFF,
            });
            ser_formula(out, a);
            ser_formula(out, b);
        }
        Formula::ForAll(v, body) | Formula::Exists(v, body) => {
            out.push(if matches!(f, Formula::ForAll(..)) { tag::FORALL } else { tag::EXISTS });
            push_name(out, v);
            ser_formula(out, body);
        }
        Formula::Reflect(r) => {
            out.push(match r {
                Reflective::Deriv { .. } => tag::DERIV,
                Reflective::Uses { .. } => tag::USES,
                Reflective::SubTrace { .. } => tag::SUBTRACE,
                Reflective::EnumAt { .. } => tag::ENUMAT,
            });
            if let Reflective::EnumAt { enumerator, .. } = r {
                out.push(enumerator.code());
            }
            for t in r.args() {
                ser_term(out, t);
            }
        }
    }
}

fn code_of(tokens: &[u32]) -> BigUint {
    let (tag, rest) = tokens.split_first().expect("serialization starts with a tag");
    pair(&BigUint::from(*tag), &tokens_to_nat(rest))
}

pub fn encode_term(t: &Term) -> GoedelNumber {
    let mut toks = Vec::new();
    ser_term(&mut toks, t);
    GoedelNumber(code_of(&toks))
}

pub fn encode_formula(f: &Formula) -> GoedelNumber {
    let mut toks = Vec::new();
    ser_formula(&mut toks, f);
    GoedelNumber(code_of(&toks))
}

/// Code of a formula sequence (a proof in the flat reading).
pub fn encode_sequence<'a>(items: impl IntoIterator<Item = &'a Formula>) -> GoedelNumber {
    let mut body = vec![0u32];
    let mut n = 0u32;
    for f in items {
        ser_formula(&mut body, f);
        n += 1;
    }
    if n == 0 {
        return GoedelNumber(BigUint::zero());
    }
    body[0] = n;
    GoedelNumber(pair(&BigUint::zero(), &tokens_to_nat(&body)))
}

pub fn encode_decoded(d: &Decoded) -> GoedelNumber {
    match d {
        Decoded::Term(t) => encode_term(t),
        Decoded::Formula(f) => encode_formula(f),
        Decoded::Sequence(items) => {
            let formulas: Option<Vec<&Formula>> = items
                .iter()
                .map(|i| match i {
                    Decoded::Formula(f) => Some(f),
                    _ => None,
                })
                .collect();
            encode_sequence(formulas.expect("sequences hold formulas"))
        }
    }
}

// ---------------------------------------------------------------------------
// Decoding

struct Reader<'a> {
    toks: &'a [u32],
    pos: usize,
}

impl Reader<'_> {
    fn next(&mut self) -> Option<u32> {
        let t = self.toks.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn name(&mut self) -> Option<Ident> {
        let len = self.next()? as usize;
        let mut s = String::with_capacity(len);
        for _ in 0..len {
            s.push(char::from(u8::try_from(self.next()?).ok()?));
        }
        Ident::new(s)
    }

    fn nat(&mut self) -> Option<BigUint> {
        let len = self.next()? as usize;
        if len > self.toks.len() {
            return None;
        }
        let mut limbs = Vec::with_capacity(len);
        for _ in 0..len {
            limbs.push(self.next()?);
        }
        if limbs.last() == Some(&0) {
            return None;
        }
        Some(BigUint::from_slice(&limbs))
    }

    fn term_after(&mut self, tag: u32) -> Option<Term> {
        Some(match tag {
            tag::ZERO => Term::Zero,
            tag::VAR => Term::Var(self.name()?),
            tag::SUCC => {
                let count = self.nat()?;
                let base = self.term()?;
                if count.is_zero() || matches!(base, Term::Succ(_)) {
                    return None;
                }
                Term::succ_n(count, base)
            }
            tag::ADD => Term::add(self.term()?, self.term()?),
            tag::MUL => Term::mul(self.term()?, self.term()?),
            _ => return None,
        })
    }

    fn term(&mut self) -> Option<Term> {
        let t = self.next()?;
        self.term_after(t)
    }

    fn formula_after(&mut self, tag: u32) -> Option<Formula> {
        Some(match tag {
            tag::EQ => Formula::eq(self.term()?, self.term()?),
            tag::LE => Formula::le(self.term()?, self.term()?),
            tag::BOT => Formula::Bot,
            tag::NOT => Formula::not(self.formula()?),
            tag::AND => Formula::and(self.formula()?, self.formula()?),
            tag::OR => Formula::or(self.formula()?, self.formula()?),
            tag::IMP => Formula::imp(self.formula()?, self.formula()?),
            tag::IFF => Formula::iff(self.formula()?, self.formula()?),
            tag::FORALL => Formula::forall(self.name()?, self.formula()?),
            tag::EXISTS => Formula::exists(self.name()?, self.formula()?),
            tag::DERIV => Formula::Reflect(Reflective::Deriv { formula: self.term()?, proof: self.term()? }),
            tag::USES => Formula::Reflect(Reflective::Uses { proof: self.term()?, axiom: self.term()? }),
            tag::SUBTRACE => Formula::Reflect(Reflective::SubTrace {
                source: self.term()?,
                arg: self.term()?,
                result: self.term()?,
                trace: self.term()?,
            }),
            tag::ENUMAT => {
                let enumerator = EnumeratorId::from_code(self.next()?)?;
                Formula::Reflect(Reflective::EnumAt { enumerator, index: self.term()?, axiom: self.term()? })
            }
            _ => return None,
        })
    }

    fn formula(&mut self) -> Option<Formula> {
        let t = self.next()?;
        self.formula_after(t)
    }

    fn object_after(&mut self, tag: u32) -> Option<Decoded> {
        match tag {
            tag::ZERO..=tag::MUL => self.term_after(tag).map(Decoded::Term),
            tag::EQ..=tag::ENUMAT => self.formula_after(tag).map(Decoded::Formula),
            _ => None,
        }
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }
}

pub fn decode(g: &GoedelNumber) -> Result<Decoded, CodingError> {
    decode_inner(&g.0).ok_or_else(|| CodingError::NotACode(g.clone()))
}

fn decode_inner(z: &BigUint) -> Option<Decoded> {
    let (tag, payload) = unpair(z);
    let tag = tag.to_u32()?;
    let toks = nat_to_tokens(&payload);
    let mut r = Reader { toks: &toks, pos: 0 };
    let out = if tag == tag::SEQUENCE {
        if toks.is_empty() {
            return Some(Decoded::Sequence(Vec::new()));
        }
        let n = r.next()?;
        if n == 0 {
            return None;
        }
        let mut items = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let t = r.next()?;
            match r.object_after(t)? {
                f @ Decoded::Formula(_) => items.push(f),
                _ => return None,
            }
        }
        Decoded::Sequence(items)
    } else {
        r.object_after(tag)?
    };
    r.done().then_some(out)
}

pub fn decode_formula(g: &BigUint) -> Option<Formula> {
    decode_inner(g)?.into_formula()
}

pub fn decode_term(g: &BigUint) -> Option<Term> {
    decode_inner(g)?.into_term()
}

/// Elements of a sequence code, or `None` when `g` codes no sequence.
pub fn decode_sequence(g: &BigUint) -> Option<Vec<Formula>> {
    match decode_inner(g)? {
        Decoded::Sequence(items) => items.into_iter().map(Decoded::into_formula).collect(),
        _ => None,
    }
}

/// `u ⌢ v` on sequence codes.
pub fn concat(u: &GoedelNumber, v: &GoedelNumber) -> Result<GoedelNumber, CodingError> {
    let a = decode_sequence(&u.0).ok_or_else(|| CodingError::NotACode(u.clone()))?;
    let b = decode_sequence(&v.0).ok_or_else(|| CodingError::NotACode(v.clone()))?;
    Ok(encode_sequence(a.iter().chain(b.iter())))
}

/// `u ⌢ ⌜f⌝`: appends one formula to a sequence code.
pub fn append(u: &GoedelNumber, f: &Formula) -> Result<GoedelNumber, CodingError> {
    let a = decode_sequence(&u.0).ok_or_else(|| CodingError::NotACode(u.clone()))?;
    Ok(encode_sequence(a.iter().chain(std::iter::once(f))))
}

// ---------------------------------------------------------------------------
// Arithmetized substitution and provability

/// The variable every diagonal construction substitutes into.
pub fn diagonal_var() -> Ident {
    Ident::from_static("x0")
}

/// The substitution formula `Sub(x, y, z)` and what its use obliges.
#[derive(Clone, Debug)]
pub struct SubFormulaBundle {
    /// `exists w. SubTrace(x, y, z, w)`, free in `x`, `y`, `z`.
    pub sub: Formula,
    pub source_var: Ident,
    pub arg_var: Ident,
    pub result_var: Ident,
    pub trace_var: Ident,
    /// Closed instances the proof generator has to discharge.
    pub certificate_hooks: Vec<String>,
}

impl SubFormulaBundle {
    /// `Sub(s, a, r)` for arbitrary terms, renaming the trace variable away
    /// from the arguments.
    pub fn instantiate(&self, source: &Term, arg: &Term, result: &Term) -> Formula {
        let mut avoid = source.vars();
        avoid.extend(arg.vars());
        avoid.extend(result.vars());
        let w = if avoid.contains(&self.trace_var) {
            crate::syntax::fresh_name(&self.trace_var, &avoid)
        } else {
            self.trace_var.clone()
        };
        Formula::exists(
            w.clone(),
            Formula::Reflect(Reflective::SubTrace {
                source: source.clone(),
                arg: arg.clone(),
                result: result.clone(),
                trace: Term::Var(w),
            }),
        )
    }
}

pub fn build_sub_formula() -> SubFormulaBundle {
    let (x, y, z, w) = ["x", "y", "z", "w"].map(Ident::from_static).into();
    let sub = Formula::exists(
        w.clone(),
        Formula::Reflect(Reflective::SubTrace {
            source: Term::Var(x.clone()),
            arg: Term::Var(y.clone()),
            result: Term::Var(z.clone()),
            trace: Term::Var(w.clone()),
        }),
    );
    SubFormulaBundle {
        sub,
        source_var: x,
        arg_var: y,
        result_var: z,
        trace_var: w,
        certificate_hooks: vec![
            "existence: SubTrace(m, n, k, j) for the computed k and j".to_string(),
            "determinacy: forall z. forall w. (SubTrace(m, n, z, w) -> z = k /\\ w = j)".to_string(),
        ],
    }
}

/// Meta-level substitution on codes: `(k, j)` with `k` the code of the
/// formula coded by `source` after replacing `x0` by the numeral of `arg`,
/// and `j` the code of that numeral.
pub fn substitute_code(source: &BigUint, arg: &BigUint) -> Option<(BigUint, BigUint)> {
    let f = decode_formula(source)?;
    let num = crate::syntax::numeral(arg.clone());
    let result = f.substitute(&diagonal_var(), &num);
    Some((encode_formula(&result).0, encode_term(&num).0))
}

/// `Pr_T(t)`: `exists y. (Deriv(t, y) /\ forall a. (a <= y -> (Uses(y, a) -> Ax_T(a))))`.
///
/// The quantifier skeleton is genuine; `Deriv` and `Uses` are the
/// reflective atoms that read proof codes.
pub fn pr_formula(theory: &crate::theories::TheorySpec, t: &Term) -> Result<Formula, crate::theories::TheoryError> {
    let mut avoid = t.vars();
    let y = pick_var("y", &avoid);
    avoid.insert(y.clone());
    let a = pick_var("a", &avoid);
    let ax = theory.axiom_predicate(&Term::Var(a.clone()))?;
    let uses = Formula::Reflect(Reflective::Uses { proof: Term::Var(y.clone()), axiom: Term::Var(a.clone()) });
    let guarded = Formula::forall_le(a, Term::Var(y.clone()), Formula::imp(uses, ax));
    let deriv = Formula::Reflect(Reflective::Deriv { formula: t.clone(), proof: Term::Var(y.clone()) });
    Ok(Formula::exists(y, Formula::and(deriv, guarded)))
}

/// `Pr_T(x0)`.
pub fn build_pr_formula(theory: &crate::theories::TheorySpec) -> Result<Formula, crate::theories::TheoryError> {
    pr_formula(theory, &Term::Var(diagonal_var()))
}

/// `Pr_T(⌜f⌝)`.
pub fn pr_of(theory: &crate::theories::TheorySpec, f: &Formula) -> Result<Formula, crate::theories::TheoryError> {
    pr_formula(theory, &encode_formula(f).numeral())
}

fn pick_var(base: &str, avoid: &std::collections::BTreeSet<Ident>) -> Ident {
    let v = Ident::from_static(base);
    if avoid.contains(&v) {
        crate::syntax::fresh_name(&v, avoid)
    } else {
        v
    }
}

/// Splits `S^k(b)` the way the coder sees it.
pub fn succ_parts(s: &Succ) -> (&BigUint, &Term) {
    (s.count(), s.base())
}
