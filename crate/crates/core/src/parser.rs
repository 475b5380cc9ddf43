//! Recursive-descent parser for the ASCII concrete syntax.
//!
//! ```text
//! formula  ::= imp ( "<->" imp )?
//! imp      ::= or ( "->" imp )?
//! or       ::= and ( "\/" or )?
//! and      ::= unary ( "/\" and )?
//! unary    ::= "~" unary | ("forall" | "exists") ident "." formula | primary
//! primary  ::= "bot" | reflect | term ("=" | "<=") term | "(" formula ")"
//! reflect  ::= ("Deriv" | "Uses" | "SubTrace") "(" term ("," term)* ")"
//!            | "EnumAt" "[" ident "]" "(" term "," term ")"
//! term     ::= prod ( "+" prod )*
//! prod     ::= atom ( "*" atom )*
//! atom     ::= "0" | digits | ident | "S" "(" term ")" | "S^" digits "(" term ")" | "(" term ")"
//! ident    ::= [a-z][a-z0-9_]*
//! ```

use num_bigint::BigUint;
use thiserror::Error;

use crate::syntax::{numeral, EnumeratorId, Formula, Ident, Reflective, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column; `len + 1` for end of input.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Upper(String),
    Num(BigUint),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Dot,
    Caret,
    Eq,
    Le,
    Plus,
    Star,
    Tilde,
    And,
    Or,
    Imp,
    Iff,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Upper(s) => format!("`{s}`"),
        Tok::Num(n) => format!("`{n}`"),
        Tok::Eof => "end of input".to_string(),
        other => format!("{other:?}"),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if rest.starts_with("<->") {
            (Tok::Iff, 3)
        } else if rest.starts_with("<=") {
            (Tok::Le, 2)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else {
            match c {
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '[' => (Tok::LBrack, 1),
                ']' => (Tok::RBrack, 1),
                ',' => (Tok::Comma, 1),
                '.' => (Tok::Dot, 1),
                '^' => (Tok::Caret, 1),
                '=' => (Tok::Eq, 1),
                '+' => (Tok::Plus, 1),
                '*' => (Tok::Star, 1),
                '~' => (Tok::Tilde, 1),
                '0'..='9' => {
                    let end = (i..chars.len()).find(|&j| !chars[j].is_ascii_digit()).unwrap_or(chars.len());
                    let digits: String = chars[i..end].iter().collect();
                    let n: BigUint = digits.parse().expect("ascii digits");
                    (Tok::Num(n), end - i)
                }
                'a'..='z' | 'A'..='Z' => {
                    let end = (i..chars.len())
                        .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                        .unwrap_or(chars.len());
                    let word: String = chars[i..end].iter().collect();
                    let tok = if c.is_ascii_lowercase() { Tok::Ident(word) } else { Tok::Upper(word) };
                    (tok, end - i)
                }
                other => return Err(ParseError { column: col, message: format!("unexpected character {other:?}") }),
            }
        };
        out.push((tok, col));
        i += len;
    }
    out.push((Tok::Eof, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(ParseError { column: self.col(), message: format!("expected {what}, found {}", describe(self.peek())) })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(what)
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ident::new(name).map_or_else(|| self.error("identifier"), Ok)
            }
            _ => self.error("variable name"),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let lhs = self.imp()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> PResult<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> PResult<Formula> {
        let lhs = self.and()?;
        if *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> PResult<Formula> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::And {
            self.bump();
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let v = self.ident()?;
                self.expect(Tok::Dot, "`.` after quantified variable")?;
                let body = self.formula()?;
                Ok(if kw == "forall" { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            Tok::Ident(kw) if kw == "bot" => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Upper(name) if name != "S" => self.reflective(&name),
            Tok::LParen => {
                let save = self.pos;
                match self.relation() {
                    Ok(f) => Ok(f),
                    Err(rel_err) => {
                        self.pos = save;
                        self.bump();
                        let inner = self.formula().and_then(|f| {
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(f)
                        });
                        inner.map_err(|e| if e.column >= rel_err.column { e } else { rel_err })
                    }
                }
            }
            _ => self.relation(),
        }
    }

    fn reflective(&mut self, name: &str) -> PResult<Formula> {
        self.bump();
        let enumerator = if name == "EnumAt" {
            self.expect(Tok::LBrack, "`[`")?;
            let id = self.ident()?;
            let e = EnumeratorId::from_name(id.as_str());
            let Some(e) = e else { return self.error("enumerator name `pa` or `qprime`") };
            self.expect(Tok::RBrack, "`]`")?;
            Some(e)
        } else {
            None
        };
        let arity = match name {
            "Deriv" | "Uses" | "EnumAt" => 2,
            "SubTrace" => 4,
            _ => {
                return Err(ParseError {
                    column: self.toks[self.pos - 1].1,
                    message: format!("unknown relation `{name}`"),
                })
            }
        };
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::with_capacity(arity);
        for k in 0..arity {
            if k > 0 {
                self.expect(Tok::Comma, "`,`")?;
            }
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        let r = match name {
            "Deriv" => Reflective::Deriv { formula: next(), proof: next() },
            "Uses" => Reflective::Uses { proof: next(), axiom: next() },
            "SubTrace" => Reflective::SubTrace { source: next(), arg: next(), result: next(), trace: next() },
            _ => Reflective::EnumAt { enumerator: enumerator.expect("parsed above"), index: next(), axiom: next() },
        };
        Ok(Formula::Reflect(r))
    }

    fn relation(&mut self) -> PResult<Formula> {
        let lhs = self.term()?;
        let op = self.peek().clone();
        match op {
            Tok::Eq | Tok::Le => {
                self.bump();
                let rhs = self.term()?;
                Ok(if op == Tok::Eq { Formula::eq(lhs, rhs) } else { Formula::le(lhs, rhs) })
            }
            _ => self.error("`=` or `<=`"),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.prod()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.prod()?;
            acc = Term::add(acc, rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> PResult<Term> {
        let mut acc = self.term_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.term_atom()?;
            acc = Term::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn term_atom(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(numeral(n))
            }
            Tok::Ident(name) if !matches!(name.as_str(), "forall" | "exists" | "bot") => {
                let v = self.ident()?;
                Ok(Term::Var(v))
            }
            Tok::Upper(name) if name == "S" => {
                self.bump();
                let count = if *self.peek() == Tok::Caret {
                    self.bump();
                    match self.bump() {
                        Tok::Num(n) => n,
                        _ => {
                            self.pos -= 1;
                            return self.error("successor count");
                        }
                    }
                } else {
                    BigUint::from(1u32)
                };
                self.expect(Tok::LParen, "`(` after S")?;
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::succ_n(count, inner))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.error("term"),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parenthesized_terms_and_formulas() {
        let a = parse_formula("(x + y) * z = 0").unwrap();
        assert_eq!(a.to_string(), "(x + y) * z = 0");
        let b = parse_formula("((x = y))").unwrap();
        assert_eq!(b, parse_formula("x = y").unwrap());
        let c = parse_formula("(x + y = 0 /\\ bot)").unwrap();
        assert_eq!(c.to_string(), "x + y = 0 /\\ bot");
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~a = b /\\ c = d -> e = f \\/ bot").unwrap();
        assert_eq!(f.to_full_string(), "((~(a = b) /\\ c = d) -> (e = f \\/ bot))");
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse_formula("x = ").unwrap_err().column, 5);
        assert_eq!(parse_formula("forall 1. x = x").unwrap_err().column, 8);
        assert_eq!(parse_formula("x = y )").unwrap_err().column, 7);
        assert_eq!(parse_formula("x # y").unwrap_err().column, 3);
        assert!(parse_formula("(x = y").is_err());
    }
}
