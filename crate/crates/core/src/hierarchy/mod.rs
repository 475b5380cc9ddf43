//! Syntactic classification into the arithmetical hierarchy.
//!
//! Bounded (Σ0 = Π0) formulas are those whose quantifiers all have the
//! guarded shapes `forall x. (x <= t -> ...)` and `exists x. (x <= t /\ ...)`
//! with `x` not occurring in `t`. Σ(n+1) contains Πn and is closed under
//! `/\`, `\/`, `exists` and bounded `forall`; Π(n+1) dually. Negation swaps
//! the two sides; `->` and `<->` are read through `~`, `/\`, `\/`.
//!
//! [`classify`] computes, for every formula, the least Σ level and the least
//! Π level containing it, and reports the smaller side. When both are equal
//! at `n >= 1` the formula sits syntactically in Σn ∩ Πn and is reported as
//! `Delta n`, so that negation duality holds without exception.

mod coerce;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{Formula, Ident, Term};

pub use coerce::{coerce_to, Coerced};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Sigma,
    Pi,
    Delta,
}

impl Kind {
    pub fn dual(self) -> Kind {
        match self {
            Kind::Sigma => Kind::Pi,
            Kind::Pi => Kind::Sigma,
            Kind::Delta => Kind::Delta,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HierarchyClass {
    pub kind: Kind,
    pub level: u32,
}

impl HierarchyClass {
    pub const BOUNDED: HierarchyClass = HierarchyClass { kind: Kind::Delta, level: 0 };

    pub fn sigma(level: u32) -> Self {
        HierarchyClass { kind: Kind::Sigma, level }
    }

    pub fn pi(level: u32) -> Self {
        HierarchyClass { kind: Kind::Pi, level }
    }

    pub fn delta(level: u32) -> Self {
        HierarchyClass { kind: Kind::Delta, level }
    }

    pub fn dual(self) -> Self {
        HierarchyClass { kind: self.kind.dual(), level: self.level }
    }

    /// Whether a formula with the given least levels belongs to this class.
    pub fn admits(self, levels: Levels) -> bool {
        match self.kind {
            Kind::Sigma => levels.sigma <= self.level,
            Kind::Pi => levels.pi <= self.level,
            Kind::Delta => levels.sigma <= self.level && levels.pi <= self.level,
        }
    }

    pub fn contains(self, f: &Formula) -> bool {
        self.admits(levels(f))
    }
}

impl fmt::Display for HierarchyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Sigma => "Sigma",
            Kind::Pi => "Pi",
            Kind::Delta => "Delta",
        };
        write!(f, "{kind} {}", self.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unrecognized hierarchy class {0:?} (expected e.g. \"Sigma 1\", \"pi2\", \"Delta 0\")")]
pub struct ClassParseError(pub String);

impl FromStr for HierarchyClass {
    type Err = ClassParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let split = compact.find(|c: char| c.is_ascii_digit()).ok_or_else(|| ClassParseError(s.to_string()))?;
        let (name, digits) = compact.split_at(split);
        let kind = match name {
            "sigma" | "s" | "σ" => Kind::Sigma,
            "pi" | "p" | "π" => Kind::Pi,
            "delta" | "d" | "δ" => Kind::Delta,
            _ => return Err(ClassParseError(s.to_string())),
        };
        let level = digits.parse().map_err(|_| ClassParseError(s.to_string()))?;
        Ok(HierarchyClass { kind, level })
    }
}

/// Least Σ level and least Π level of a formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Levels {
    pub sigma: u32,
    pub pi: u32,
}

impl Levels {
    const BOUNDED: Levels = Levels { sigma: 0, pi: 0 };

    fn swap(self) -> Levels {
        Levels { sigma: self.pi, pi: self.sigma }
    }

    fn join(self, other: Levels) -> Levels {
        Levels { sigma: self.sigma.max(other.sigma), pi: self.pi.max(other.pi) }.normalized()
    }

    /// Πn ⊆ Σ(n+1) and Σn ⊆ Π(n+1).
    fn normalized(self) -> Levels {
        Levels { sigma: self.sigma.min(self.pi + 1), pi: self.pi.min(self.sigma + 1) }
    }

    fn exists(self) -> Levels {
        let sigma = self.sigma.min(self.pi + 1).max(1);
        Levels { sigma, pi: sigma + 1 }
    }

    fn forall(self) -> Levels {
        self.swap().exists().swap()
    }

    pub fn class(self) -> HierarchyClass {
        use std::cmp::Ordering::*;
        match self.sigma.cmp(&self.pi) {
            Less => HierarchyClass::sigma(self.sigma),
            Greater => HierarchyClass::pi(self.pi),
            Equal => HierarchyClass::delta(self.sigma),
        }
    }
}

/// `forall x. (x <= t -> body)` with `x` not in `t`.
pub fn as_bounded_forall(f: &Formula) -> Option<(&Ident, &Term, &Formula)> {
    if let Formula::ForAll(x, inner) = f {
        if let Formula::Imp(guard, body) = &**inner {
            if let Some(t) = guard_bound(x, guard) {
                return Some((x, t, body));
            }
        }
    }
    None
}

/// `exists x. (x <= t /\ body)` with `x` not in `t`.
pub fn as_bounded_exists(f: &Formula) -> Option<(&Ident, &Term, &Formula)> {
    if let Formula::Exists(x, inner) = f {
        if let Formula::And(guard, body) = &**inner {
            if let Some(t) = guard_bound(x, guard) {
                return Some((x, t, body));
            }
        }
    }
    None
}

fn guard_bound<'a>(x: &Ident, guard: &'a Formula) -> Option<&'a Term> {
    match guard {
        Formula::Le(Term::Var(v), t) if v == x && !t.contains_var(x) => Some(t),
        _ => None,
    }
}

/// Whether every quantifier of `f` is bounded.
pub fn is_bounded(f: &Formula) -> bool {
    if let Some((_, _, body)) = as_bounded_forall(f).or_else(|| as_bounded_exists(f)) {
        return is_bounded(body);
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) | Formula::Bot | Formula::Reflect(_) => true,
        Formula::Not(a) => is_bounded(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            is_bounded(a) && is_bounded(b)
        }
        Formula::ForAll(..) | Formula::Exists(..) => false,
    }
}

/// Least Σ and Π levels of `f`.
pub fn levels(f: &Formula) -> Levels {
    if let Some((_, _, body)) = as_bounded_forall(f).or_else(|| as_bounded_exists(f)) {
        return levels(body);
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) | Formula::Bot | Formula::Reflect(_) => Levels::BOUNDED,
        Formula::Not(a) => levels(a).swap(),
        Formula::And(a, b) | Formula::Or(a, b) => levels(a).join(levels(b)),
        Formula::Imp(a, b) => levels(a).swap().join(levels(b)),
        Formula::Iff(a, b) => {
            let (la, lb) = (levels(a), levels(b));
            la.swap().join(lb).join(lb.swap().join(la))
        }
        Formula::Exists(_, a) => levels(a).exists(),
        Formula::ForAll(_, a) => levels(a).forall(),
    }
}

/// The least class containing `f`.
pub fn classify(f: &Formula) -> HierarchyClass {
    levels(f).class()
}

/// Membership of `f` in Σn (`sigma = true`) or Πn, checked by direct
/// recursion on the inductive definition rather than by level arithmetic.
pub fn member(f: &Formula, sigma: bool, n: u32) -> bool {
    if n == 0 {
        return is_bounded(f);
    }
    if member(f, !sigma, n - 1) {
        return true;
    }
    // bounded quantifier of the closure clause for this side
    let bounded = if sigma { as_bounded_forall(f) } else { as_bounded_exists(f) };
    if let Some((_, _, body)) = bounded {
        if member(body, sigma, n) {
            return true;
        }
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) | Formula::Bot | Formula::Reflect(_) => true,
        Formula::Not(a) => member(a, !sigma, n),
        Formula::And(a, b) | Formula::Or(a, b) => member(a, sigma, n) && member(b, sigma, n),
        Formula::Imp(a, b) => member(a, !sigma, n) && member(b, sigma, n),
        Formula::Iff(a, b) => {
            member(a, !sigma, n) && member(b, sigma, n) && member(b, !sigma, n) && member(a, sigma, n)
        }
        Formula::Exists(_, a) => sigma && member(a, sigma, n),
        Formula::ForAll(_, a) => !sigma && member(a, sigma, n),
    }
}

/// Least levels found by [`member`], searching up to `max_level`.
pub fn member_levels(f: &Formula, max_level: u32) -> Option<Levels> {
    let least = |sigma| (0..=max_level).find(|&n| member(f, sigma, n));
    Some(Levels { sigma: least(true)?, pi: least(false)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn bounded_examples() {
        assert!(is_bounded(&f("forall x. (x <= S(0) -> x = x)")));
        assert!(!is_bounded(&f("exists y. x = y + y")));
        assert!(!is_bounded(&f("exists y. (y <= y /\\ 0 = 0)")));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&f("forall x. exists y. (x = 0 \\/ x = S(y))")), HierarchyClass::pi(2));
        assert_eq!(classify(&f("exists y. x = y + y")), HierarchyClass::sigma(1));
        assert_eq!(classify(&f("0 = 0")), HierarchyClass::BOUNDED);
        assert_eq!(classify(&f("~exists y. x = y")), HierarchyClass::pi(1));
        assert_eq!(classify(&f("(exists y. x = y) /\\ forall y. x = y")), HierarchyClass::delta(2));
        assert_eq!(classify(&f("forall a. (a <= y -> exists i. a = i)")), HierarchyClass::sigma(1));
    }

    #[test]
    fn iff_takes_both_polarities() {
        assert_eq!(classify(&f("(exists y. x = y) <-> 0 = 0")), HierarchyClass::delta(2));
    }

    #[test]
    fn member_agrees_on_examples() {
        for s in [
            "forall x. exists y. (x = 0 \\/ x = S(y))",
            "exists y. x = y + y",
            "~(forall x. exists y. x = y -> exists z. z = z)",
            "forall x. (x <= S(0) -> exists y. y = x)",
            "exists x. (x <= 0 /\\ forall y. y = x)",
        ] {
            assert_eq!(member_levels(&f(s), 6), Some(levels(&f(s))), "{s}");
        }
    }

    #[test]
    fn class_names_round_trip() {
        for c in [HierarchyClass::sigma(1), HierarchyClass::pi(3), HierarchyClass::BOUNDED] {
            assert_eq!(c.to_string().parse::<HierarchyClass>().unwrap(), c);
        }
        assert_eq!("pi1".parse::<HierarchyClass>().unwrap(), HierarchyClass::pi(1));
        assert!("omega 1".parse::<HierarchyClass>().is_err());
    }
}
