//! The line-oriented text format for proofs.
//!
//! ```text
//! hyp x = 0
//! 1. forall x. x + 0 = x ; axiom 4
//! 2. (forall x. x + 0 = x) -> 0 + 0 = 0 ; forall-elim
//! 3. 0 + 0 = 0 ; mp 2 1
//! ```
//!
//! Hypotheses come first, one per `hyp` line. Steps are numbered from 1 and
//! must appear in order. A justification is one of `axiom [i]`, `hyp i`,
//! `mp i j` (implication first), `gen i x`, `computation`, or a logical
//! schema name. Axiom and hypothesis indices are 1-based as well. Blank lines
//! and lines starting with `#` are ignored.

use std::fmt;

use thiserror::Error;

use super::{FoProof, Rule, Schema, Step};
use crate::syntax::{Formula, Ident};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

fn index(line: usize, word: Option<&str>) -> Result<usize, FormatError> {
    let w = word.ok_or_else(|| err(line, "missing step number"))?;
    match w.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n - 1),
        _ => Err(err(line, format!("bad index `{w}`"))),
    }
}

fn parse_rule(line: usize, text: &str) -> Result<Rule, FormatError> {
    let mut words = text.split_whitespace();
    let head = words.next().ok_or_else(|| err(line, "missing justification"))?;
    let rule = match head {
        "axiom" => Rule::Axiom(words.next().map(|w| index(line, Some(w))).transpose()?),
        "hyp" => Rule::Hyp(index(line, words.next())?),
        "mp" => Rule::Mp { imp: index(line, words.next())?, ante: index(line, words.next())? },
        "gen" => {
            let step = index(line, words.next())?;
            let name = words.next().ok_or_else(|| err(line, "gen needs a variable"))?;
            let var = Ident::new(name).ok_or_else(|| err(line, format!("bad variable `{name}`")))?;
            Rule::Gen { step, var }
        }
        "computation" => Rule::Computation,
        other => Rule::Logical(Schema::from_name(other).ok_or_else(|| err(line, format!("unknown rule `{other}`")))?),
    };
    if let Some(extra) = words.next() {
        return Err(err(line, format!("unexpected `{extra}`")));
    }
    Ok(rule)
}

/// Parses the text format.
pub fn parse_proof(src: &str) -> Result<FoProof, FormatError> {
    let mut proof = FoProof::default();
    for (n, raw) in src.lines().enumerate() {
        let line = n + 1;
        let text = raw.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        if let Some(rest) = text.strip_prefix("hyp ") {
            if !proof.steps.is_empty() {
                return Err(err(line, "hypotheses must precede the steps"));
            }
            let f: Formula = rest.trim().parse().map_err(|e| err(line, format!("{e}")))?;
            proof.hypotheses.push(f);
            continue;
        }
        let (num, rest) = text.split_once('.').ok_or_else(|| err(line, "expected `k. formula ; rule`"))?;
        let k: usize = num.trim().parse().map_err(|_| err(line, format!("bad step number `{num}`")))?;
        if k != proof.steps.len() + 1 {
            return Err(err(line, format!("expected step {}, found {k}", proof.steps.len() + 1)));
        }
        let (formula, just) = rest.rsplit_once(';').ok_or_else(|| err(line, "missing `; rule`"))?;
        let formula: Formula = formula.trim().parse().map_err(|e| err(line, format!("{e}")))?;
        let rule = parse_rule(line, just)?;
        proof.steps.push(Step { formula, rule });
    }
    Ok(proof)
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Logical(s) => write!(f, "{}", s.name()),
            Rule::Axiom(None) => write!(f, "axiom"),
            Rule::Axiom(Some(i)) => write!(f, "axiom {}", i + 1),
            Rule::Hyp(i) => write!(f, "hyp {}", i + 1),
            Rule::Mp { imp, ante } => write!(f, "mp {} {}", imp + 1, ante + 1),
            Rule::Gen { step, var } => write!(f, "gen {} {var}", step + 1),
            Rule::Computation => write!(f, "computation"),
        }
    }
}

/// Writes the text format; [`parse_proof`] reads it back unchanged.
pub fn write_proof(p: &FoProof, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for h in &p.hypotheses {
        writeln!(f, "hyp {}", h.to_full_string())?;
    }
    for (i, s) in p.steps.iter().enumerate() {
        writeln!(f, "{}. {} ; {}", i + 1, s.formula.to_full_string(), s.rule)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo_proofs::check;
    use crate::theories::TheorySpec;

    const SAMPLE: &str = "\
# 0 + 0 = 0 from Q
1. forall x. x + 0 = x ; axiom 4
2. (forall x. x + 0 = x) -> 0 + 0 = 0 ; forall-elim
3. 0 + 0 = 0 ; mp 2 1
";

    #[test]
    fn parses_and_checks() {
        let p = parse_proof(SAMPLE).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.steps[2].rule, Rule::Mp { imp: 1, ante: 0 });
        assert!(check(&p, &TheorySpec::q()).ok);
    }

    #[test]
    fn round_trips() {
        let p = parse_proof(SAMPLE).unwrap();
        let text = p.to_string();
        assert_eq!(parse_proof(&text).unwrap(), p);
        let h = parse_proof("hyp x = 0\n1. x = 0 ; hyp 1\n2. forall y. x = 0 ; gen 1 y\n").unwrap();
        assert_eq!(parse_proof(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_proof("1. 0 = 0 ; refl\n3. 0 = 0 ; refl\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_proof("1. 0 = 0 ; frobnicate\n").unwrap_err();
        assert!(e.message.contains("frobnicate"));
        assert!(parse_proof("1. 0 = ; refl").is_err());
    }
}
