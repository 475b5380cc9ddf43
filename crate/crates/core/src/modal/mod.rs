//! Propositional provability logic.
//!
//! Formulas have atoms, `bot`, `->` and boxes labelled `T` (the provability
//! of the theory under study, written `[]` or `[T]`) or `S` (a second,
//! representing theory, only in bimodal proofs). Negation, conjunction,
//! disjunction and the biconditional are abbreviations:
//!
//! ```text
//! ~A      := A -> bot
//! A \/ B  := ~A -> B
//! A /\ B  := ~(A -> ~B)
//! A <-> B := (A -> B) /\ (B -> A)
//! ```
//!
//! so a fixed point such as `g <-> ([]g -> bot)` is one formula built from
//! the four primitives. The printer shows `~` and `/\` (and `<->` when a
//! conjunction has that shape) but never `\/`, which would also swallow
//! every `~A -> B`.
//!
//! Concrete syntax (ASCII, with Unicode alternatives):
//!
//! ```text
//! formula ::= imp ( "<->" imp )?
//! imp     ::= or ( "->" imp )?
//! or      ::= and ( "\/" and )*
//! and     ::= unary ( "/\" unary )*
//! unary   ::= "~" unary | box unary | "bot" | "top" | atom | "(" formula ")"
//! box     ::= "[]" | "[T]" | "[S]" | "□"
//! atom    ::= [a-z][a-z0-9_]*
//! ```

mod kripke;
mod proof;
mod replay;
mod tableau;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use kripke::{brute_force_countermodel, model_check, KripkeModel};
pub use proof::{
    check_modal, parse_script, BridgeKind, HypTag, ModalCheckReport, ModalError, ModalProof, ModalRule, ModalStep,
    ScriptError, System,
};
pub use replay::{chaining_lemma, derive_formalized_g2, replay, script_source, ReplayError, SCRIPTS};
pub use tableau::{decide, gl_decide, Countermodel, Decision, Derivation, Logic, SequentRule};

/// Which theory a box speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    T,
    S,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::T => "T",
            Label::S => "S",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModalFormula {
    Atom(String),
    Bot,
    Imp(Box<ModalFormula>, Box<ModalFormula>),
    Boxed(Label, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn atom(name: &str) -> Self {
        ModalFormula::Atom(name.to_string())
    }

    pub fn imp(a: Self, b: Self) -> Self {
        ModalFormula::Imp(Box::new(a), Box::new(b))
    }

    pub fn not(a: Self) -> Self {
        Self::imp(a, ModalFormula::Bot)
    }

    pub fn top() -> Self {
        Self::not(ModalFormula::Bot)
    }

    pub fn and(a: Self, b: Self) -> Self {
        Self::not(Self::imp(a, Self::not(b)))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Self::imp(Self::not(a), b)
    }

    pub fn iff(a: Self, b: Self) -> Self {
        Self::and(Self::imp(a.clone(), b.clone()), Self::imp(b, a))
    }

    /// `[]a`, the box of the theory under study.
    pub fn bx(a: Self) -> Self {
        Self::boxed(Label::T, a)
    }

    pub fn boxed(label: Label, a: Self) -> Self {
        ModalFormula::Boxed(label, Box::new(a))
    }

    /// Whether every box is labelled `T`.
    pub fn is_unimodal(&self) -> bool {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bot => true,
            ModalFormula::Imp(a, b) => a.is_unimodal() && b.is_unimodal(),
            ModalFormula::Boxed(l, a) => *l == Label::T && a.is_unimodal(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            ModalFormula::Atom(p) => {
                out.insert(p.clone());
            }
            ModalFormula::Bot => {}
            ModalFormula::Imp(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            ModalFormula::Boxed(_, a) => a.collect_atoms(out),
        }
    }

    /// Nesting depth of connectives and boxes (atoms and `bot` have depth 0).
    pub fn depth(&self) -> usize {
        match self {
            ModalFormula::Atom(_) | ModalFormula::Bot => 0,
            ModalFormula::Imp(a, b) => 1 + a.depth().max(b.depth()),
            ModalFormula::Boxed(_, a) => 1 + a.depth(),
        }
    }

    /// All subformulas, each once, in a canonical order.
    pub fn subformulas(&self) -> BTreeSet<ModalFormula> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if out.insert(f.clone()) {
                match f {
                    ModalFormula::Imp(a, b) => {
                        stack.push(a);
                        stack.push(b);
                    }
                    ModalFormula::Boxed(_, a) => stack.push(a),
                    _ => {}
                }
            }
        }
        out
    }

    fn as_not(&self) -> Option<&ModalFormula> {
        match self {
            ModalFormula::Imp(a, b) if **b == ModalFormula::Bot => Some(a),
            _ => None,
        }
    }

    fn as_and(&self) -> Option<(&ModalFormula, &ModalFormula)> {
        let ModalFormula::Imp(a, nb) = self.as_not()? else { return None };
        Some((a, nb.as_not()?))
    }

    fn as_iff(&self) -> Option<(&ModalFormula, &ModalFormula)> {
        let (l, r) = self.as_and()?;
        match (l, r) {
            (ModalFormula::Imp(a, b), ModalFormula::Imp(c, d)) if a == d && b == c => Some((a, b)),
            _ => None,
        }
    }
}

// Printing

const P_IFF: u8 = 1;
const P_IMP: u8 = 2;
const P_AND: u8 = 4;
const P_UNARY: u8 = 5;

fn write_modal(out: &mut String, f: &ModalFormula, ctx: u8) {
    let (prec, body) = render(f);
    if prec < ctx {
        out.push('(');
        out.push_str(&body);
        out.push(')');
    } else {
        out.push_str(&body);
    }
}

fn render(f: &ModalFormula) -> (u8, String) {
    let mut s = String::new();
    if let Some((a, b)) = f.as_iff() {
        write_modal(&mut s, a, P_IFF + 1);
        s.push_str(" <-> ");
        write_modal(&mut s, b, P_IFF + 1);
        return (P_IFF, s);
    }
    if let Some((a, b)) = f.as_and() {
        write_modal(&mut s, a, P_AND);
        s.push_str(" /\\ ");
        write_modal(&mut s, b, P_AND + 1);
        return (P_AND, s);
    }
    if let Some(a) = f.as_not() {
        s.push('~');
        write_modal(&mut s, a, P_UNARY);
        return (P_UNARY, s);
    }
    match f {
        ModalFormula::Atom(p) => (P_UNARY, p.clone()),
        ModalFormula::Bot => (P_UNARY, "bot".to_string()),
        ModalFormula::Imp(a, b) => {
            write_modal(&mut s, a, P_IMP + 1);
            s.push_str(" -> ");
            write_modal(&mut s, b, P_IMP);
            (P_IMP, s)
        }
        ModalFormula::Boxed(l, a) => {
            s.push_str(match l {
                Label::T => "[]",
                Label::S => "[S]",
            });
            write_modal(&mut s, a, P_UNARY);
            (P_UNARY, s)
        }
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_modal(&mut s, self, 0);
        f.write_str(&s)
    }
}

// Parsing

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("modal syntax error at column {column}: {message}")]
pub struct ModalParseError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Box(Label),
    Not,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Eof,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ModalParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |column: usize, message: String| ModalParseError { column, message };
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if c.is_whitespace() {
            i += 1;
            continue;
        } else if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else if rest.starts_with("[]") {
            (Tok::Box(Label::T), 2)
        } else if rest.starts_with("[T]") {
            (Tok::Box(Label::T), 3)
        } else if rest.starts_with("[S]") {
            (Tok::Box(Label::S), 3)
        } else {
            match c {
                '□' => (Tok::Box(Label::T), 1),
                '~' | '¬' => (Tok::Not, 1),
                '∧' => (Tok::And, 1),
                '∨' => (Tok::Or, 1),
                '→' => (Tok::Imp, 1),
                '↔' => (Tok::Iff, 1),
                '⊥' => (Tok::Ident("bot".to_string()), 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                c if c.is_ascii_lowercase() => {
                    let mut j = i;
                    while j < chars.len()
                        && (chars[j].is_ascii_lowercase() || chars[j].is_ascii_digit() || chars[j] == '_')
                    {
                        j += 1;
                    }
                    (Tok::Ident(chars[i..j].iter().collect()), j - i)
                }
                other => return Err(err(col, format!("unexpected character `{other}`"))),
            }
        };
        out.push((col, tok));
        i += len;
    }
    out.push((chars.len() + 1, Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ModalParseError {
        ModalParseError { column: self.toks[self.pos].0, message: message.into() }
    }

    fn formula(&mut self) -> Result<ModalFormula, ModalParseError> {
        let a = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.next();
            let b = self.imp()?;
            return Ok(ModalFormula::iff(a, b));
        }
        Ok(a)
    }

    fn imp(&mut self) -> Result<ModalFormula, ModalParseError> {
        let a = self.or()?;
        if *self.peek() == Tok::Imp {
            self.next();
            let b = self.imp()?;
            return Ok(ModalFormula::imp(a, b));
        }
        Ok(a)
    }

    fn or(&mut self) -> Result<ModalFormula, ModalParseError> {
        let mut a = self.and()?;
        while *self.peek() == Tok::Or {
            self.next();
            a = ModalFormula::or(a, self.and()?);
        }
        Ok(a)
    }

    fn and(&mut self) -> Result<ModalFormula, ModalParseError> {
        let mut a = self.unary()?;
        while *self.peek() == Tok::And {
            self.next();
            a = ModalFormula::and(a, self.unary()?);
        }
        Ok(a)
    }

    fn unary(&mut self) -> Result<ModalFormula, ModalParseError> {
        match self.next() {
            Tok::Not => Ok(ModalFormula::not(self.unary()?)),
            Tok::Box(l) => Ok(ModalFormula::boxed(l, self.unary()?)),
            Tok::Ident(s) if s == "bot" => Ok(ModalFormula::Bot),
            Tok::Ident(s) if s == "top" => Ok(ModalFormula::top()),
            Tok::Ident(s) => Ok(ModalFormula::Atom(s)),
            Tok::LParen => {
                let f = self.formula()?;
                if self.next() != Tok::RParen {
                    self.pos -= 1;
                    return Err(self.error("expected `)`"));
                }
                Ok(f)
            }
            Tok::Eof => Err(self.error("unexpected end of input")),
            other => {
                self.pos -= 1;
                Err(self.error(format!("unexpected {other:?}")))
            }
        }
    }
}

pub fn parse_modal(src: &str) -> Result<ModalFormula, ModalParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

impl FromStr for ModalFormula {
    type Err = ModalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_modal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> ModalFormula {
        s.parse().unwrap()
    }

    #[test]
    fn abbreviations_unfold() {
        assert_eq!(m("~p"), ModalFormula::imp(m("p"), ModalFormula::Bot));
        assert_eq!(m("p \\/ q"), m("~p -> q"));
        assert_eq!(m("p /\\ q"), m("~(p -> ~q)"));
        assert_eq!(m("top"), m("~bot"));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "[](p -> q) -> []p -> []q",
            "g <-> ([]g -> bot)",
            "~[]bot -> ~[]~[]bot",
            "[S][]p -> []p",
            "(p -> q) -> p",
            "p /\\ q /\\ r",
            "~~p",
            "[]([]p -> p) -> []p",
        ] {
            let f = m(s);
            let printed = f.to_string();
            assert_eq!(m(&printed), f, "{s} printed as {printed}");
        }
        assert_eq!(m("[]bot -> bot").to_string(), "~[]bot");
        assert_eq!(m("g <-> ([]g -> bot)").to_string(), "g <-> ~[]g");
    }

    #[test]
    fn unicode_and_labels() {
        assert_eq!(m("□p → ⊥"), m("[]p -> bot"));
        assert_eq!(m("[T]p"), m("[]p"));
        assert!(!m("[S]p").is_unimodal());
        assert!(m("[]p").is_unimodal());
    }

    #[test]
    fn errors_have_columns() {
        let e = parse_modal("p -> ").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(parse_modal("p q").is_err());
        assert!(parse_modal("P").is_err());
    }
}
