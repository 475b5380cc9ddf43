//! Arithmetic, provability and the incompleteness theorems, executably.
//!
//! The crate covers the first-order language of arithmetic, Gödel coding,
//! the arithmetical hierarchy, fuel-bounded truth in the standard model,
//! Hilbert-style proofs with a checker and a bounded prover, the diagonal
//! lemma with certificates, theory presentations (Q, PA and the extension
//! Q′), and the provability logic GL with replayed derivations.

// `Formula::not`, `Term::add` and friends are smart constructors, not
// operator overloads.
#![allow(clippy::should_implement_trait)]

pub mod coding;
pub mod diagonal;
pub mod fo_proofs;
pub mod hierarchy;
pub mod modal;
pub mod num;
pub mod parser;
pub mod reflect;
pub mod semantics;
pub mod syntax;
pub mod theories;

pub use coding::{decode, encode_formula, encode_term, GoedelNumber};
pub use fo_proofs::{check, search, FoProof};
pub use hierarchy::{classify, HierarchyClass};
pub use num::Natural;
pub use semantics::{BigEvaluator, Evaluator, Evaluator64, Fuel, Verdict};
pub use syntax::{numeral, Formula, Ident, Sentence, Term};
pub use theories::TheorySpec;
