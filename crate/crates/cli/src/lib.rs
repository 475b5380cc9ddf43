//! The `provability` command line.
//!
//! Every subcommand prints a text result, or with `--format machine` one
//! JSON object carrying `"format_version": 1`. Exit status is 0 on success,
//! 1 when the input is well formed but the request fails on its merits
//! (a proof that does not check, a sentence that is not Σ1, ...), and 2 on
//! usage errors: bad arguments, unparsable formulas, unknown theories or
//! scripts, unreadable files.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use provability::coding::{decode, encode_formula, GoedelNumber};
use provability::diagonal::{diagonalize, goedel_sentence, Certificate, FixedPoint};
use provability::fo_proofs::{check, parse_proof, prove_sigma1, search_with_stats, FoProof};
use provability::hierarchy::classify;
use provability::modal::{self, check_modal, decide, parse_modal, parse_script, replay, Decision, Logic};
use provability::parser::parse_formula;
use provability::semantics::{BigEvaluator, Fuel, Sigma1Oracle};
use provability::syntax::{numeral, EnumeratorId, Formula};
use provability::theories::{
    con_sentence, enumerated_axiom, pi1_deciding_check, q_prime_axiom, Presentation, TheorySpec,
};
use serde_json::json;

use config::{Config, OutputFormat, FUEL_ENV};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "provability", version, about = "Arithmetic, provability and incompleteness, executably")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = "PROVABILITY_CONFIG")]
    pub config: Option<PathBuf>,
    /// Output format (overrides the configuration).
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Copy)]
pub struct FuelArgs {
    /// Largest witness tried for an unbounded quantifier.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Work budget: evaluation steps or search nodes.
    #[arg(long)]
    pub steps: Option<u64>,
}

impl FuelArgs {
    fn resolve(&self, default: Fuel) -> Fuel {
        Fuel::new(self.bound.unwrap_or(default.quantifier_bound), self.steps.unwrap_or(default.step_budget))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleChoice {
    Sigma1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicChoice {
    Gl,
    K,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print its canonical form.
    Parse { formula: String },
    /// The least arithmetical-hierarchy class of a formula.
    Classify { formula: String },
    /// Truth of a sentence in the standard model, within fuel.
    Eval {
        formula: String,
        #[command(flatten)]
        fuel: FuelArgs,
        #[arg(long, value_enum)]
        oracle: Option<OracleChoice>,
    },
    /// The numeral for a natural number.
    Numeral {
        n: BigUint,
        /// Print with an `S^n` prefix instead of nested `S(...)`.
        #[arg(long)]
        compact: bool,
    },
    /// The Gödel number of a formula.
    Encode { formula: String },
    /// The term, formula or sequence a number codes.
    Decode { number: String },
    /// A checked Q-proof of a true Σ1 sentence.
    ProveSigma1 {
        formula: String,
        #[command(flatten)]
        fuel: FuelArgs,
        /// Write the proof here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a proof file (text format, or JSON) against a theory.
    CheckProof {
        file: PathBuf,
        #[arg(long, default_value = "q")]
        theory: String,
    },
    /// Bounded proof search.
    Search {
        formula: String,
        #[arg(long, default_value = "q")]
        theory: String,
        #[command(flatten)]
        fuel: FuelArgs,
    },
    /// A fixed point of a formula in the variable x0.
    Diagonalize {
        #[arg(long)]
        phi: String,
    },
    /// The Gödel sentence of a theory and its Πn form.
    GoedelSentence {
        #[arg(long, default_value = "q")]
        theory: String,
    },
    /// The first axioms of a theory presentation.
    Enumerate {
        #[arg(long, default_value = "qprime")]
        theory: String,
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
    /// The consistency sentence of a theory, with its verdict within fuel.
    Con {
        #[arg(long, default_value = "q")]
        theory: String,
        #[command(flatten)]
        fuel: FuelArgs,
    },
    /// Which Π1 sentences of a corpus file (one per line) search decides.
    Pi1Deciding {
        corpus: PathBuf,
        #[arg(long, default_value = "q")]
        theory: String,
        #[command(flatten)]
        fuel: FuelArgs,
    },
    /// Provability logic.
    Gl {
        #[command(subcommand)]
        command: GlCommand,
    },
    /// Check one of the bundled modal derivations.
    Replay { name: String },
}

#[derive(Subcommand, Debug)]
pub enum GlCommand {
    /// Decide a unimodal formula; print a derivation size or a countermodel.
    Decide {
        formula: String,
        #[arg(long, value_enum, default_value = "gl")]
        logic: LogicChoice,
    },
    /// Check a modal proof script.
    Check { file: PathBuf },
}

/// Why a command failed, which decides the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Domain(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

type Outcome = Result<(), Failure>;

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn domain(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Domain(e.into())
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let fuel_env = std::env::var(FUEL_ENV).ok();
    let config = match Config::load(cli.config.as_deref(), fuel_env.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return 2;
        }
    };
    let format = cli.format.unwrap_or(config.output_format);
    let mut ctx = Ctx { config, format, out };
    match ctx.dispatch(&cli.command) {
        Ok(()) => 0,
        Err(f) => {
            let (Failure::Usage(e) | Failure::Domain(e)) = &f;
            let _ = writeln!(err, "error: {e:#}");
            f.exit_code()
        }
    }
}

struct Ctx<'a> {
    config: Config,
    format: OutputFormat,
    out: &'a mut dyn Write,
}

fn formula_arg(s: &str) -> Result<Formula, Failure> {
    parse_formula(s).map_err(usage)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(usage)
}

fn certificate_status(fp: &FixedPoint) -> String {
    match &fp.certificate {
        Certificate::QProof(p) => format!("QProof ({} steps, checked)", p.len()),
        Certificate::SemanticCheck(rows) => {
            let cells: Vec<String> =
                rows.iter().map(|(f, a, b)| format!("({},{}): {a} / {b}", f.quantifier_bound, f.step_budget)).collect();
            format!("SemanticCheck [{}]", cells.join("; "))
        }
    }
}

impl Ctx<'_> {
    fn fuel(&self, args: &FuelArgs) -> Fuel {
        args.resolve(self.config.default_fuel)
    }

    fn theory(&self, name: &str) -> Result<TheorySpec, Failure> {
        match TheorySpec::by_name(name) {
            Ok(t) => Ok(t),
            Err(e) => {
                for dir in &self.config.theory_registry_paths {
                    let path = dir.join(format!("{name}.theory"));
                    if path.is_file() {
                        return TheorySpec::from_file(&path.to_string_lossy()).map_err(usage);
                    }
                }
                Err(usage(e))
            }
        }
    }

    /// Writes `text` or, in machine mode, `json` with the format version.
    fn emit(&mut self, text: &str, mut json: serde_json::Value) -> Outcome {
        let r = match self.format {
            OutputFormat::Text => writeln!(self.out, "{text}"),
            OutputFormat::Machine => {
                json["format_version"] = FORMAT_VERSION.into();
                writeln!(self.out, "{json}")
            }
        };
        match r {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => r.map_err(domain),
        }
    }

    fn dispatch(&mut self, cmd: &Command) -> Outcome {
        match cmd {
            Command::Parse { formula } => {
                let f = formula_arg(formula)?;
                self.emit(&f.to_string(), json!({ "formula": f.to_string(), "full": f.to_full_string() }))
            }
            Command::Classify { formula } => {
                let c = classify(&formula_arg(formula)?);
                self.emit(&c.to_string(), json!({ "class": c.to_string() }))
            }
            Command::Eval { formula, fuel, oracle } => {
                let f = formula_arg(formula)?;
                if !f.is_sentence() {
                    let free: Vec<String> = f.free_vars().iter().map(|v| v.as_str().to_string()).collect();
                    return Err(domain(anyhow!("not a sentence: free variables {}", free.join(", "))));
                }
                let fuel = self.fuel(fuel);
                let ev = match oracle {
                    Some(OracleChoice::Sigma1) => BigEvaluator::with_oracle(std::sync::Arc::new(Sigma1Oracle { fuel })),
                    None => BigEvaluator::big(),
                };
                let v = ev.eval(&f, &fuel);
                self.emit(&v.to_string(), json!({ "verdict": v.to_string(), "decided": v.is_decided() }))
            }
            Command::Numeral { n, compact } => {
                let t = numeral(n.clone());
                let text = if *compact || *n > BigUint::from(1000u32) {
                    format!("S^{n}(0)")
                } else {
                    (0..n.to_u64_digits().first().copied().unwrap_or(0))
                        .fold("0".to_string(), |acc, _| format!("S({acc})"))
                };
                self.emit(&text, json!({ "numeral": text, "value": t.to_string() }))
            }
            Command::Encode { formula } => {
                let g = encode_formula(&formula_arg(formula)?);
                self.emit(&g.to_string(), json!({ "code": g.to_string() }))
            }
            Command::Decode { number } => {
                let g: GoedelNumber =
                    number.trim().parse().map_err(|_| usage(anyhow!("not a natural number: {number:?}")))?;
                let d = decode(&g).map_err(domain)?;
                self.emit(&d.to_string(), json!({ "decoded": d.to_string() }))
            }
            Command::ProveSigma1 { formula, fuel, out } => {
                let f = formula_arg(formula)?;
                let p = prove_sigma1(&f, &self.fuel(fuel)).map_err(domain)?;
                let report = check(&p, &TheorySpec::q());
                if !report.ok {
                    return Err(domain(anyhow!("generated proof failed to check: {report}")));
                }
                match out {
                    Some(path) => {
                        std::fs::write(path, p.to_string())
                            .with_context(|| format!("writing {}", path.display()))
                            .map_err(usage)?;
                        let text = format!("wrote {} steps to {}", p.len(), path.display());
                        self.emit(&text, json!({ "steps": p.len(), "path": path.display().to_string() }))
                    }
                    None => self.emit(
                        p.to_string().trim_end(),
                        json!({ "steps": p.len(), "proof": serde_json::to_value(&p).map_err(domain)? }),
                    ),
                }
            }
            Command::CheckProof { file, theory } => {
                let t = self.theory(theory)?;
                let text = read_file(file)?;
                let p: FoProof = if text.trim_start().starts_with('{') {
                    FoProof::from_json(&text).map_err(usage)?
                } else {
                    parse_proof(&text).map_err(usage)?
                };
                let report = check(&p, &t);
                self.emit(&report.to_string(), serde_json::to_value(&report).map_err(domain)?)?;
                if report.ok {
                    Ok(())
                } else {
                    Err(domain(anyhow!("the proof does not check")))
                }
            }
            Command::Search { formula, theory, fuel } => {
                let f = formula_arg(formula)?;
                let t = self.theory(theory)?;
                let (found, stats) = search_with_stats(&f, &t, &self.fuel(fuel));
                match found {
                    Some(p) => self.emit(
                        &format!("FOUND ({} steps, {} nodes)\n{}", p.len(), stats.nodes, p.to_string().trim_end()),
                        json!({ "found": true, "nodes": stats.nodes, "proof": serde_json::to_value(&p).map_err(domain)? }),
                    ),
                    None => self.emit(
                        &format!("NOT FOUND ({} nodes, depth {})", stats.nodes, stats.depth),
                        json!({ "found": false, "nodes": stats.nodes, "depth": stats.depth }),
                    ),
                }
            }
            Command::Diagonalize { phi } => {
                let fp = diagonalize(&formula_arg(phi)?).map_err(domain)?;
                let status = certificate_status(&fp);
                let text = format!(
                    "gamma: {}\ncode: {}\nequivalent to: {}\ncertificate: {status}",
                    fp.gamma,
                    fp.gamma_code(),
                    fp.rhs()
                );
                self.emit(
                    &text,
                    json!({ "gamma": fp.gamma.to_string(), "code": fp.gamma_code().to_string(), "rhs": fp.rhs().to_string(), "certificate": status }),
                )
            }
            Command::GoedelSentence { theory } => {
                let t = self.theory(theory)?;
                let g = goedel_sentence(&t).map_err(domain)?;
                let fp = &g.fixed_point;
                let status = certificate_status(fp);
                let class = classify(&g.pi_form.formula);
                let text = format!(
                    "gamma: {}\nPi{} form ({class}): {}\ncertificate: {status}\nPi form certificate: {} steps",
                    fp.gamma,
                    g.level,
                    g.pi_form.formula,
                    g.pi_form.certificate.len()
                );
                self.emit(
                    &text,
                    json!({ "gamma": fp.gamma.to_string(), "pi_form": g.pi_form.formula.to_string(), "class": class.to_string(), "certificate": status }),
                )
            }
            Command::Enumerate { theory, count, start } => {
                let t = self.theory(theory)?;
                let qprime = matches!(t.presentation, Presentation::Enumerated(EnumeratorId::QPrime));
                let mut rows = Vec::new();
                for i in *start..start + count {
                    let (f, family) = if qprime {
                        let a = q_prime_axiom(i);
                        (a.formula, format!("{:?}", a.family))
                    } else {
                        let f = enumerate_axiom(&t, i)
                            .ok_or_else(|| domain(anyhow!("{} does not list its axioms past index {i}", t.name)))?;
                        (f, String::new())
                    };
                    rows.push((i, f, family));
                }
                let text: Vec<String> = rows
                    .iter()
                    .map(|(i, f, fam)| if fam.is_empty() { format!("{i}. {f}") } else { format!("{i}. {f}   [{fam}]") })
                    .collect();
                let json_rows: Vec<_> = rows
                    .iter()
                    .map(|(i, f, fam)| json!({ "index": i, "axiom": f.to_string(), "family": fam }))
                    .collect();
                self.emit(&text.join("\n"), json!({ "axioms": json_rows }))
            }
            Command::Con { theory, fuel } => {
                let t = self.theory(theory)?;
                let con = con_sentence(&t).map_err(domain)?;
                let v = BigEvaluator::big().eval(&con, &self.fuel(fuel));
                self.emit(
                    &format!("{con}\nverdict: {v}"),
                    json!({ "sentence": con.to_string(), "verdict": v.to_string() }),
                )
            }
            Command::Pi1Deciding { corpus, theory, fuel } => {
                let t = self.theory(theory)?;
                let sentences = read_file(corpus)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(formula_arg)
                    .collect::<Result<Vec<_>, _>>()?;
                let r = pi1_deciding_check(&t, &sentences, &self.fuel(fuel)).map_err(domain)?;
                let list = |v: &[Formula]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
                let mut text = format!(
                    "proved: {}\nrefuted: {}\nundecided: {}",
                    r.proved.len(),
                    r.refuted.len(),
                    r.undecided.len()
                );
                for f in &r.undecided {
                    text.push_str(&format!("\n  undecided: {f}"));
                }
                self.emit(
                    &text,
                    json!({ "proved": list(&r.proved), "refuted": list(&r.refuted), "undecided": list(&r.undecided) }),
                )
            }
            Command::Gl { command: GlCommand::Decide { formula, logic } } => {
                let f = parse_modal(formula).map_err(usage)?;
                if !f.is_unimodal() {
                    return Err(usage(anyhow!("the decider takes unimodal formulas; found an [S] box")));
                }
                let logic = match logic {
                    LogicChoice::Gl => Logic::GL,
                    LogicChoice::K => Logic::K,
                };
                match decide(&f, logic) {
                    Decision::Valid(d) => self.emit(&format!("Valid (derivation of {} sequents)", d.size()), json!({ "valid": true, "derivation_size": d.size() })),
                    Decision::Invalid(c) => self.emit(
                        &format!("Invalid: falsified at w{} in\n{}", c.world, c.model.to_string().trim_end()),
                        json!({ "valid": false, "world": c.world, "model": serde_json::to_value(&c.model).map_err(domain)? }),
                    ),
                }
            }
            Command::Gl { command: GlCommand::Check { file } } => {
                let p = parse_script(&read_file(file)?).map_err(usage)?;
                self.modal_report(check_modal(&p))
            }
            Command::Replay { name } => {
                let report = replay(name).map_err(|e| match e {
                    modal::ReplayError::UnknownScript(_) => usage(e),
                    other => domain(other),
                })?;
                self.modal_report(report)
            }
        }
    }

    fn modal_report(&mut self, report: modal::ModalCheckReport) -> Outcome {
        self.emit(&report.to_string(), serde_json::to_value(&report).map_err(domain)?)?;
        if report.ok {
            Ok(())
        } else {
            Err(domain(anyhow!("the modal proof does not check")))
        }
    }
}

/// The `i`-th axiom of a presentation that can list its axioms.
fn enumerate_axiom(t: &TheorySpec, i: u64) -> Option<Formula> {
    match &t.presentation {
        Presentation::Finite(axioms) => axioms.get(usize::try_from(i).ok()?).cloned(),
        Presentation::Enumerated(e) => enumerated_axiom(*e, i),
        Presentation::Defined { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("provability").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_and_eval() {
        assert_eq!(run_str(&["classify", "exists y. x = y + y"]), (0, "Sigma 1\n".into(), String::new()));
        assert_eq!(run_str(&["eval", "bot"]).1, "False\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["eval", "x = 0"]).0, 1);
        assert_eq!(run_str(&["eval", "x = "]).0, 2);
        assert_eq!(run_str(&["no-such-command"]).0, 2);
        assert_eq!(run_str(&["replay", "nope"]).0, 2);
        assert_eq!(run_str(&["prove-sigma1", "forall x. x = x"]).0, 1);
    }
}
