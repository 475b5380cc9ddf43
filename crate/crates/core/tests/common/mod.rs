//! Formula generators and reference oracles shared by the integration and
//! acceptance suites.

#![allow(dead_code)]

use provability::modal::ModalFormula;
use provability::syntax::{numeral, Formula, Ident, Term};
use rand::Rng;

pub fn f(s: &str) -> Formula {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn m(s: &str) -> ModalFormula {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn v(name: &str) -> Ident {
    Ident::from_static(name)
}

fn var(name: &str) -> Term {
    Term::var(name)
}

// ---------------------------------------------------------------------------
// Exhaustive pools

/// One constructor layer over a formula: unary wrappers and binary
/// connectives whose other side comes from a fixed side pool.
pub struct Layers {
    pub atoms: Vec<Formula>,
    pub unary: Vec<Box<dyn Fn(Formula) -> Formula>>,
    pub sides: Vec<Formula>,
}

impl Layers {
    /// Calls `visit` on every formula of depth `1..=depth` (atoms have depth
    /// 1, each constructor adds one) and returns how many were visited.
    pub fn for_each(&self, depth: usize, visit: &mut dyn FnMut(&Formula)) -> u64 {
        let mut count = 0;
        for a in &self.atoms {
            self.grow(a.clone(), depth - 1, visit, &mut count);
        }
        count
    }

    fn grow(&self, f: Formula, fuel: usize, visit: &mut dyn FnMut(&Formula), count: &mut u64) {
        visit(&f);
        *count += 1;
        if fuel == 0 {
            return;
        }
        for u in &self.unary {
            self.grow(u(f.clone()), fuel - 1, visit, count);
        }
        for s in &self.sides {
            for g in [
                Formula::and(f.clone(), s.clone()),
                Formula::or(s.clone(), f.clone()),
                Formula::imp(f.clone(), s.clone()),
                Formula::imp(s.clone(), f.clone()),
                Formula::iff(f.clone(), s.clone()),
            ] {
                self.grow(g, fuel - 1, visit, count);
            }
        }
    }
}

/// Formulas over the variables `x` and `y` for the hierarchy oracle.
pub fn hierarchy_pool() -> Layers {
    let unary: Vec<Box<dyn Fn(Formula) -> Formula>> = vec![
        Box::new(Formula::not),
        Box::new(|a| Formula::exists(v("x"), a)),
        Box::new(|a| Formula::forall(v("x"), a)),
        Box::new(|a| Formula::exists(v("y"), a)),
        Box::new(|a| Formula::forall(v("y"), a)),
        Box::new(|a| Formula::forall_le(v("x"), var("y"), a)),
        Box::new(|a| Formula::exists_le(v("y"), var("x"), a)),
    ];
    Layers { atoms: vec![f("x = y"), f("x <= S(y)")], unary, sides: vec![f("x = y"), f("exists x. x = y")] }
}

/// Bounded formulas over `x` and `y` with numeral guards up to 4.
pub fn bounded_pool() -> Layers {
    let mut unary: Vec<Box<dyn Fn(Formula) -> Formula>> = vec![Box::new(Formula::not)];
    for name in ["x", "y"] {
        let other = if name == "x" { "y" } else { "x" };
        let mut bounds: Vec<Term> = (0..=4u32).map(numeral).collect();
        bounds.push(var(other));
        for b in bounds {
            let b2 = b.clone();
            unary.push(Box::new(move |a| Formula::forall_le(v(name), b.clone(), a)));
            unary.push(Box::new(move |a| Formula::exists_le(v(name), b2.clone(), a)));
        }
    }
    Layers {
        atoms: vec![f("x + y = S(S(0))"), f("x * y <= x"), f("y = S(x)"), f("x <= y")],
        unary,
        sides: vec![f("x = S(0)"), f("y <= x + x")],
    }
}

// ---------------------------------------------------------------------------
// Reference semantics for bounded sentences, by substitution

pub fn term_value(t: &Term) -> u64 {
    match t {
        Term::Zero => 0,
        Term::Var(x) => panic!("free variable {}", x.as_str()),
        Term::Succ(s) => {
            let n: u64 = s.count().try_into().expect("small successor count");
            n + term_value(s.base())
        }
        Term::Add(a, b) => term_value(a) + term_value(b),
        Term::Mul(a, b) => term_value(a) * term_value(b),
    }
}

/// Truth of a closed bounded sentence, substituting numerals for bound
/// variables one value at a time.
pub fn brute_truth(s: &Formula) -> bool {
    use provability::hierarchy::{as_bounded_exists, as_bounded_forall};
    if let Some((x, t, body)) = as_bounded_forall(s) {
        return (0..=term_value(t)).all(|n| brute_truth(&body.substitute(x, &numeral(n))));
    }
    if let Some((x, t, body)) = as_bounded_exists(s) {
        return (0..=term_value(t)).any(|n| brute_truth(&body.substitute(x, &numeral(n))));
    }
    match s {
        Formula::Eq(a, b) => term_value(a) == term_value(b),
        Formula::Le(a, b) => term_value(a) <= term_value(b),
        Formula::Bot => false,
        Formula::Not(a) => !brute_truth(a),
        Formula::And(a, b) => brute_truth(a) && brute_truth(b),
        Formula::Or(a, b) => brute_truth(a) || brute_truth(b),
        Formula::Imp(a, b) => !brute_truth(a) || brute_truth(b),
        Formula::Iff(a, b) => brute_truth(a) == brute_truth(b),
        other => panic!("not a bounded sentence: {other}"),
    }
}

// ---------------------------------------------------------------------------
// Random formulas

/// A random arithmetic formula of depth at most `depth` over `x`, `y`.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    let atoms = ["x = y", "x <= y", "S(x) = y + y", "x * y = 0", "bot"];
    if depth <= 1 || rng.gen_bool(0.2) {
        return f(atoms[rng.gen_range(0..atoms.len())]);
    }
    let d = depth - 1;
    let name = if rng.gen_bool(0.5) { "x" } else { "y" };
    let other = if name == "x" { "y" } else { "x" };
    match rng.gen_range(0..10) {
        0 => Formula::not(random_formula(rng, d)),
        1 => Formula::and(random_formula(rng, d), random_formula(rng, d)),
        2 => Formula::or(random_formula(rng, d), random_formula(rng, d)),
        3 => Formula::imp(random_formula(rng, d), random_formula(rng, d)),
        4 => Formula::iff(random_formula(rng, d), random_formula(rng, d)),
        5 => Formula::forall(v(name), random_formula(rng, d)),
        6 => Formula::exists(v(name), random_formula(rng, d)),
        7 => Formula::forall_le(v(name), var(other), random_formula(rng, d)),
        8 => Formula::exists_le(v(name), numeral(2u32), random_formula(rng, d)),
        _ => Formula::not(Formula::not(random_formula(rng, d))),
    }
}

/// A random unimodal formula of depth at most `depth` over `p`, `q`, `r`.
pub fn random_modal(rng: &mut impl Rng, depth: usize) -> ModalFormula {
    if depth <= 1 || rng.gen_bool(0.15) {
        return match rng.gen_range(0..4) {
            0 => ModalFormula::Bot,
            i => ModalFormula::atom(["p", "q", "r"][i - 1]),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 | 1 => ModalFormula::bx(random_modal(rng, d)),
        2 => ModalFormula::not(random_modal(rng, d)),
        3 => ModalFormula::and(random_modal(rng, d), random_modal(rng, d)),
        4 => ModalFormula::or(random_modal(rng, d), random_modal(rng, d)),
        _ => ModalFormula::imp(random_modal(rng, d), random_modal(rng, d)),
    }
}
