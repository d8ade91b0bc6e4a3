//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on I/O failure or failed verification, 2 on
//! bad input (unknown type, malformed element, wrong grading).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::chevalley::ConstantEntry;
use crate::classify::{decompose_rank4, rank_classify, ClassifyError};
use crate::fts::{FtsContext, G1Element, G1Json};
use crate::rootsys::{DynkinType, RootTable};
use crate::sampling::Coverage;
use crate::scalar::Rational;
use crate::suite::{run_suite, Suite, DEFAULT_COUNT};

#[derive(Debug, Parser)]
#[command(name = "lie-fts", version, about = "Exact Freudenthal triple systems inside split simple Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root table and structure constants.
    Table(TableArgs),
    /// Evaluate q(x), <x, y> and xyz on elements of g_1.
    Eval(EvalArgs),
    /// Rank of an element of g_1, with its strictly regular decomposition at rank 4.
    Rank(RankArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Dynkin type: b4..bn, d4..dn, e6, e7, e8, f4.
    #[arg(long = "type", value_name = "TYPE")]
    pub dynkin: String,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Element files (`-` for stdin): x, then optionally y and z.
    #[arg(required = true, num_args = 1..=3, value_name = "ELEMENT")]
    pub elements: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub common: Common,
    /// Element file (`-` for stdin).
    pub element: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// forms, fts or stab.
    #[arg(long)]
    pub suite: String,
    /// Visit every tuple (downgraded to sampling on large types).
    #[arg(long)]
    pub exhaustive: bool,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_COUNT)]
    pub count: usize,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn io(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Rank(a) => cmd_rank(a),
        Command::Verify(a) => cmd_verify(a),
    };
    let common = match &cli.command {
        Command::Table(a) => &a.common,
        Command::Eval(a) => &a.common,
        Command::Rank(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    match result {
        Ok((text, code)) => match emit(common.out.as_deref(), &text, out) {
            Ok(()) => code,
            Err(f) => {
                let _ = writeln!(err, "error: {}", f.message);
                f.code
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::io(format!("writing {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::io(format!("writing output: {e}"))),
    }
}

fn parse_type(label: &str) -> Result<DynkinType, Failure> {
    label.parse().map_err(|e| Failure::input(format!("{e}")))
}

fn context(label: &str) -> Result<FtsContext, Failure> {
    FtsContext::for_type(parse_type(label)?).map_err(|e| Failure::input(e.to_string()))
}

fn read_element(ctx: &FtsContext, path: &Path) -> Result<G1Element<Rational>, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::io(format!("reading stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(format!("reading {}: {e}", path.display())))?
    };
    let j: G1Json =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    ctx.from_json(&j).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn rat(v: &Rational) -> String {
    v.to_string()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct FullTable {
    #[serde(flatten)]
    roots: RootTable,
    structure_constants: Vec<ConstantEntry>,
}

fn cmd_table(a: &TableArgs) -> Result<(String, i32), Failure> {
    let ctx = context(&a.common.dynkin)?;
    let table = FullTable {
        roots: ctx.root_system().to_table(),
        structure_constants: ctx.basis().to_table(),
    };
    Ok((pretty(&table), 0))
}

fn cmd_eval(a: &EvalArgs) -> Result<(String, i32), Failure> {
    let ctx = context(&a.common.dynkin)?;
    let els = a.elements.iter().map(|p| read_element(&ctx, p)).collect::<Result<Vec<_>, _>>()?;
    let q = ctx.quartic(&els[0]).map_err(|e| Failure::io(e.to_string()))?;
    let bil = els.get(1).map(|y| ctx.bilinear(&els[0], y));
    let triple = (els.len() == 3).then(|| ctx.triple_product(&els[0], &els[1], &els[2]));
    if a.common.json {
        let mut v = json!({ "type": ctx.dynkin().label(), "q": rat(&q) });
        if let Some(b) = &bil {
            v["bilinear"] = json!(rat(b));
        }
        if let Some(t) = &triple {
            v["triple_product"] = serde_json::to_value(ctx.to_json(t)).expect("serializable");
        }
        return Ok((pretty(&v), 0));
    }
    let mut s = format!("q(x) = {}\n", rat(&q));
    if let Some(b) = &bil {
        s += &format!("<x, y> = {}\n", rat(b));
    }
    if let Some(t) = &triple {
        s += &format!("xyz = {}\n", ctx.describe(t));
    }
    Ok((s, 0))
}

fn cmd_rank(a: &RankArgs) -> Result<(String, i32), Failure> {
    let ctx = context(&a.common.dynkin)?;
    let x = read_element(&ctx, &a.element)?;
    let r = rank_classify(&ctx, &x).map_err(|e| Failure::io(e.to_string()))?;
    let (decomposition, note) = if r.rank == 4 {
        match decompose_rank4(&ctx, &x) {
            Ok((u, v)) => (Some((u, v)), None),
            Err(e @ ClassifyError::NotASquare(_)) => (None, Some(e.to_string())),
            Err(e) => return Err(Failure::io(e.to_string())),
        }
    } else {
        (None, None)
    };
    if a.common.json {
        let mut v = json!({
            "rank": r.rank,
            "q_value": rat(&r.q_value),
            "xxx_nonzero": r.xxx_nonzero,
            "strictly_regular": r.strictly_regular,
        });
        if r.level2_ambiguous {
            v["level2_ambiguous"] = json!(true);
        }
        if let Some((u, w)) = &decomposition {
            v["decomposition"] = json!([ctx.to_json(u), ctx.to_json(w)]);
        }
        if let Some(n) = &note {
            v["decomposition_note"] = json!(n);
        }
        return Ok((pretty(&v), 0));
    }
    let mut s = format!(
        "rank {}\nq(x) = {}\nxxx nonzero: {}\nstrictly regular: {}\n",
        r.rank,
        rat(&r.q_value),
        r.xxx_nonzero,
        r.strictly_regular
    );
    if r.level2_ambiguous {
        s += "rank 2 in type D may cover several orbits\n";
    }
    if let Some((u, w)) = &decomposition {
        s += &format!("u = {}\nv = {}\n", ctx.describe(u), ctx.describe(w));
    }
    if let Some(n) = &note {
        s += &format!("no decomposition over Q: {n}\n");
    }
    Ok((s, 0))
}

fn cmd_verify(a: &VerifyArgs) -> Result<(String, i32), Failure> {
    let dt = parse_type(&a.common.dynkin)?;
    let suite: Suite = a.suite.parse().map_err(|e| Failure::input(format!("{e}")))?;
    let requested = if a.exhaustive { Coverage::Exhaustive } else { Coverage::sampled(a.seed, a.count) };
    let report = run_suite(suite, dt, requested, a.seed, a.count).map_err(|e| Failure::input(e.to_string()))?;
    let code = if report.passed() { 0 } else { 1 };
    if a.common.json {
        return Ok((report.to_json() + "\n", code));
    }
    let mut s = format!("suite {} on {} ({})\n", report.suite, report.dynkin, report.mode);
    if let Some(n) = &report.note {
        s += &format!("note: {n}\n");
    }
    for c in &report.checks {
        let status = if c.failure_count == 0 { "ok  " } else { "FAIL" };
        s += &format!("{status} {:<28} {:>8} tuples  {}\n", c.check_id, c.tuples_checked, c.identity);
        for f in &c.failures {
            s += &format!("       {f}\n");
        }
    }
    s += if report.passed() { "all checks passed\n" } else { "some checks failed\n" };
    Ok((s, code))
}
