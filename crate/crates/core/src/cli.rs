//! The `dblcat` command line.
//!
//! Exit codes: 0 success, 1 failed check or `Distinct`, 2 usage error,
//! 3 `Unknown`.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::adjunction::{check_naturality, check_triangle_h, check_triangle_q};
use crate::corpus::{FunctorFile, Loader, QuotientFile};
use crate::error::{Error, Result};
use crate::freegg::{self, check_double_axioms_with, Boundary, Rules, Verdict};
use crate::functor::{map_cell, FreeFunctor};
use crate::presentation::{identity_spec, validate_functor, validate_presentation, Presentation};
use crate::projection::ProjectionHandle;
use crate::quotient::{check_verticalization, QuotientSpec};
use crate::report::ValidationReport;

pub use crate::syntax::parse_expr;

/// Budget used when neither `--budget` nor `DBLCAT_BUDGET` is given.
pub const DEFAULT_BUDGET: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "dblcat", version, about = "Compute in free globularly generated double categories")]
struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Closure budget in leaves (default: $DBLCAT_BUDGET or 10).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Pres {
    /// Presentation: a bundled name or a file path.
    #[arg(short = 'p', long = "presentation")]
    presentation: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a presentation, quotient or functor file.
    Validate { file: String },
    /// Print the normal form of an expression under the oriented rules.
    Normalize {
        #[command(flatten)]
        p: Pres,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Decide equality of two expressions.
    Equal {
        #[command(flatten)]
        p: Pres,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Print the filtration level of an expression.
    Level {
        #[command(flatten)]
        p: Pres,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Print the frame (d, c, s, t) of an expression.
    Boundary {
        #[command(flatten)]
        p: Pres,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// List the classes of cells with a given frame.
    Enumerate {
        #[command(flatten)]
        p: Pres,
        /// Frame as d,c,s,t.
        #[arg(long)]
        frame: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Project a cell onto a quotient.
    Project {
        /// Quotient: a bundled name or a file path.
        #[arg(short = 'q', long = "quotient")]
        quotient: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply the free functor of a decorated bifunctor.
    Map {
        /// Functor: a bundled name or a file path.
        #[arg(short = 'f', long = "functor")]
        functor: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the double category laws.
    CheckAxioms {
        #[command(flatten)]
        p: Pres,
    },
    /// Check the triangle identities (and naturality, for a quotient).
    CheckAdjunction {
        #[arg(short = 'p', long = "presentation", conflicts_with = "quotient", required_unless_present = "quotient")]
        presentation: Option<String>,
        #[arg(short = 'q', long = "quotient")]
        quotient: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Normalize { .. } => "normalize",
            Command::Equal { .. } => "equal",
            Command::Level { .. } => "level",
            Command::Boundary { .. } => "boundary",
            Command::Enumerate { .. } => "enumerate",
            Command::Project { .. } => "project",
            Command::Map { .. } => "map",
            Command::CheckAxioms { .. } => "check-axioms",
            Command::CheckAdjunction { .. } => "check-adjunction",
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Loaded artifacts and settings for one invocation.
pub struct Session {
    pub loader: Loader,
    pub budget: usize,
    pub seed: u64,
    presentations: BTreeMap<String, Presentation>,
}

impl Session {
    pub fn new(budget: usize, seed: u64) -> Self {
        Session { loader: Loader::default(), budget, seed, presentations: BTreeMap::new() }
    }

    pub fn presentation(&mut self, reference: &str) -> Result<Presentation> {
        if let Some(p) = self.presentations.get(reference) {
            return Ok(p.clone());
        }
        let p = self.loader.presentation(reference)?;
        self.presentations.insert(reference.to_string(), p.clone());
        Ok(p)
    }
}

/// What a command produced: text for humans, a JSON payload, a witness and
/// an exit code.
struct Reply {
    code: i32,
    text: String,
    key: &'static str,
    value: Value,
    witness: Value,
}

impl Reply {
    fn result(text: String, value: Value) -> Self {
        Reply { code: 0, text, key: "result", value, witness: Value::Null }
    }

    fn report(r: &ValidationReport) -> Self {
        let witness = r.violations.iter().find_map(|v| v.witness.clone()).map(Value::String).unwrap_or(Value::Null);
        Reply {
            code: if r.is_empty() { 0 } else { 1 },
            text: r.to_string(),
            key: "result",
            value: json!({ "ok": r.is_empty(), "violations": r.violations, "incomplete": r.incomplete }),
            witness,
        }
    }
}

fn budget_from_env(var: Option<String>) -> Result<usize> {
    match var {
        None => Ok(DEFAULT_BUDGET),
        Some(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("DBLCAT_BUDGET must be a positive integer, got `{v}`"))),
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(args, std::env::var("DBLCAT_BUDGET").ok())
}

/// Like [`run`], with the value of `DBLCAT_BUDGET` passed in.
pub fn run_with_env<I, T>(args: I, budget_env: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Outcome { code, stdout: text, stderr: String::new() } } else { Outcome { code, stdout: String::new(), stderr: text } };
        }
    };
    let budget = match cli.budget.map(Ok).unwrap_or_else(|| budget_from_env(budget_env)) {
        Ok(b) => b,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut session = Session::new(budget, cli.seed);
    let name = cli.command.name();
    match execute(&mut session, cli.command) {
        Ok(reply) => {
            let stdout = if cli.json {
                let mut obj = serde_json::Map::new();
                obj.insert("command".into(), Value::String(name.into()));
                obj.insert(reply.key.into(), reply.value);
                obj.insert("budget".into(), json!(budget));
                obj.insert("witness".into(), reply.witness);
                format!("{}\n", Value::Object(obj))
            } else {
                format!("{}\n", reply.text)
            };
            Outcome { code: reply.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if cli.json {
                format!("{}\n", json!({ "command": name, "error": e.to_string(), "budget": budget, "witness": Value::Null }))
            } else {
                String::new()
            };
            Outcome { code: 2, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn verdict_reply(v: &Verdict) -> Reply {
    let (code, witness, text) = match v {
        Verdict::Equal(proof) => {
            let steps: Vec<Value> = proof.steps.iter().map(|s| json!({ "expr": s.expr, "rule": s.rule })).collect();
            let text = if proof.steps.len() > 1 { format!("Equal\n{proof}") } else { "Equal".to_string() };
            (0, Value::Array(steps), text)
        }
        Verdict::Distinct(_) => (1, Value::Null, v.label()),
        Verdict::Unknown(_) => (3, Value::Null, v.label()),
    };
    Reply { code, text, key: "verdict", value: Value::String(v.label()), witness }
}

fn execute(s: &mut Session, cmd: Command) -> Result<Reply> {
    let budget = s.budget;
    match cmd {
        Command::Validate { file } => validate(s, &file),
        Command::Normalize { p, expr } => {
            let b = s.presentation(&p.presentation)?;
            let n = freegg::prenormalize(&b, &parse_expr(&expr)?)?;
            Ok(Reply::result(n.to_string(), json!(n.to_string())))
        }
        Command::Equal { p, left, right } => {
            let b = s.presentation(&p.presentation)?;
            let v = freegg::equal(&b, &parse_expr(&left)?, &parse_expr(&right)?, budget)?;
            Ok(verdict_reply(&v))
        }
        Command::Level { p, expr } => {
            let b = s.presentation(&p.presentation)?;
            let k = freegg::level(&b, &parse_expr(&expr)?)?;
            Ok(Reply::result(k.to_string(), json!(k)))
        }
        Command::Boundary { p, expr } => {
            let b = s.presentation(&p.presentation)?;
            let f = freegg::boundary(&b, &parse_expr(&expr)?)?;
            Ok(Reply::result(f.to_string(), json!(f)))
        }
        Command::Enumerate { p, frame, max_size, max_level } => {
            let b = s.presentation(&p.presentation)?;
            let frame = Boundary::parse(&frame)?;
            let en = freegg::enumerate(&b, &frame, max_size, max_level.unwrap_or(usize::MAX))?;
            let mut text: Vec<String> = en
                .classes
                .iter()
                .map(|c| format!("{}\tsize {}\tlevel {}\tmembers {}", c.representative, c.size, c.level, c.members))
                .collect();
            text.push(format!("{} classes{}", en.classes.len(), if en.truncated { " (truncated)" } else { "" }));
            let code = if en.truncated { 3 } else { 0 };
            let mut r = Reply::result(text.join("\n"), json!(en));
            r.code = code;
            Ok(r)
        }
        Command::Project { quotient, expr } => {
            let q = s.loader.quotient(&quotient)?;
            let mut h = ProjectionHandle::new(q, budget)?;
            let p = h.project(&parse_expr(&expr)?)?;
            let mut r = Reply::result(p.representative.to_string(), json!(p.representative.to_string()));
            if p.truncated {
                r.code = 3;
            }
            Ok(r)
        }
        Command::Map { functor, expr } => {
            let f = FreeFunctor::new(s.loader.functor(&functor)?)?;
            let img = map_cell(&f, &parse_expr(&expr)?)?;
            Ok(Reply::result(img.to_string(), json!(img.to_string())))
        }
        Command::CheckAxioms { p } => {
            let b = s.presentation(&p.presentation)?;
            Ok(Reply::report(&check_double_axioms_with(&b, budget, Rules::default(), s.seed)?))
        }
        Command::CheckAdjunction { presentation, quotient } => {
            let report = if let Some(q) = quotient {
                let q = s.loader.quotient(&q)?;
                let mut r = check_triangle_h(&q, budget)?;
                let free = QuotientSpec::free(q.base.clone());
                r.extend(check_naturality(&free, &q, &identity_spec(&q.base), budget)?);
                r
            } else {
                let b = s.presentation(presentation.as_deref().expect("clap requires one of -p, -q"))?;
                check_triangle_q(&b, budget)?
            };
            Ok(Reply::report(&report))
        }
    }
}

fn validate(s: &mut Session, file: &str) -> Result<Reply> {
    let text = s.loader.text(file)?;
    let value: Value = serde_json::from_str(&text)?;
    let report = if value.get("relations").is_some() {
        let f: QuotientFile = serde_json::from_value(value)?;
        let q = s.loader.child(file).quotient_file(&f)?;
        check_verticalization(&q, s.budget)?
    } else if value.get("cells2").is_some() {
        let f: FunctorFile = serde_json::from_value(value)?;
        let l = s.loader.child(file);
        let spec = crate::presentation::DecoratedFunctorSpec {
            source: l.presentation_ref(&f.source)?,
            target: l.presentation_ref(&f.target)?,
            objects: f.objects,
            vertical: f.vertical,
            cells1: f.cells1,
            cells2: f.cells2,
        };
        validate_functor(&spec)?
    } else {
        validate_presentation(&Presentation::from_json(&text)?)?
    };
    Ok(Reply::report(&report))
}
