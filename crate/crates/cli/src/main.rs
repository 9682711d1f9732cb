use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use ncsing::calculus::{cyclic_derivative, split, Potential};
use ncsing::commslice::parse_comm;
use ncsing::freealg::{parse_poly_checked, Alphabet};
use ncsing::invariants::{analyze, Analysis, Dimension, Jdim};
use ncsing::report::{dimension_text, Report};
use ncsing::stdbasis::Certificate;

#[derive(Parser)]
#[command(name = "ncsing", version, about = "Jacobi algebras of noncommutative potentials")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Comma-separated variable names, in order.
    #[arg(long, global = true, default_value = "x,y")]
    vars: String,
    /// Terms of degree above the cap are dropped.
    #[arg(long, global = true, default_value_t = 20)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit with status 4 on a truncated standard basis or an inconclusive verdict.
    #[arg(long, global = true)]
    require_exact: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Cyclic derivative of an expression.
    Derive {
        #[arg(long)]
        wrt: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Jacobi generators and their completed standard basis.
    Jacobi {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coranks, dimension and J-dimension.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Coarse type, candidate families and situation.
    Classify {
        #[arg(required_unless_present = "batch", allow_hyphen_values = true)]
        expr: Option<String>,
        /// File with one potential per line.
        #[arg(long, conflicts_with = "expr")]
        batch: Option<PathBuf>,
        /// Worker threads for --batch.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Commutative slice by a coordinate hyperplane.
    Slice {
        /// Variable set to zero.
        #[arg(long)]
        at: String,
        /// Expected result; a mismatch exits with status 3.
        #[arg(long)]
        expect: Option<String>,
        /// Expression, or a file containing one.
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Splits off squares of the quadratic part.
    Split {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// A failure with its exit status.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(String),
    Mismatch(String),
    Inexact(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Domain(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Inexact(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::Mismatch(m) | Failure::Inexact(m) => m,
        }
    }
}

impl From<ncsing::Error> for Failure {
    fn from(e: ncsing::Error) -> Failure {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let vars = Alphabet::parse_list(&g.vars).map_err(|e| Failure::Parse(e.to_string()))?;
    if g.cap == 0 {
        return Err(ncsing::Error::InvalidCap.into());
    }
    match &cli.command {
        Command::Derive { wrt, expr } => derive(g, &vars, wrt, expr),
        Command::Jacobi { expr } => pipeline(g, &vars, expr, View::Jacobi),
        Command::Invariants { expr } => pipeline(g, &vars, expr, View::Invariants),
        Command::Classify { expr: Some(expr), .. } => pipeline(g, &vars, expr, View::Classify),
        Command::Classify { batch: Some(path), jobs, .. } => batch(g, &vars, path, *jobs),
        Command::Classify { .. } => Err(Failure::Parse("nothing to classify".into())),
        Command::Slice { at, expect, input } => slice(g, &vars, at, expect.as_deref(), input),
        Command::Split { expr } => split_cmd(g, &vars, expr),
    }
}

fn parse_potential(g: &Global, vars: &Arc<Alphabet>, expr: &str) -> Result<Potential, Failure> {
    let (jet, truncated) = parse_poly_checked(expr, vars, g.cap)?;
    if truncated {
        eprintln!("warning: terms of degree above {} were dropped from the input", g.cap);
    }
    Ok(Potential::new(jet)?)
}

fn derive(g: &Global, vars: &Arc<Alphabet>, wrt: &str, expr: &str) -> Outcome {
    let (jet, truncated) = parse_poly_checked(expr, vars, g.cap)?;
    if truncated {
        eprintln!("warning: terms of degree above {} were dropped from the input", g.cap);
    }
    let d = cyclic_derivative(&jet, wrt)?;
    Ok(match g.format {
        Format::Text => format!("{d}\n"),
        Format::Json => json_line(json!({
            "input": jet.to_string(),
            "vars": vars.names(),
            "cap": g.cap,
            "wrt": wrt,
            "derivative": d.to_string(),
        })),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum View {
    Jacobi,
    Invariants,
    Classify,
}

fn analysis_report(g: &Global, f: &Potential, view: View) -> Result<(Analysis, Report), Failure> {
    if view == View::Classify && f.alphabet().len() != 2 {
        return Err(ncsing::Error::VariableCount(f.alphabet().len()).into());
    }
    let start = Instant::now();
    let analysis = analyze(f, g.cap)?;
    let report = Report::new(&analysis)?;
    let millis = start.elapsed().as_millis() as u64;
    Ok((analysis, report.with_millis(millis)))
}

fn require_exact(g: &Global, report: &Report) -> Result<(), Failure> {
    if !g.require_exact {
        return Ok(());
    }
    if report.certificate != Certificate::Exact {
        return Err(Failure::Inexact(format!(
            "standard basis is truncated at cap {}; raise --cap or drop --require-exact",
            report.cap
        )));
    }
    if report.dimension == Dimension::Inconclusive || report.jdim == Jdim::Inconclusive {
        return Err(Failure::Inexact("verdict is inconclusive".into()));
    }
    Ok(())
}

fn pipeline(g: &Global, vars: &Arc<Alphabet>, expr: &str, view: View) -> Outcome {
    let f = parse_potential(g, vars, expr)?;
    let (_, report) = analysis_report(g, &f, view)?;
    let out = match g.format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text => render(&report, view),
    };
    // the report is still printed before failing the exactness requirement
    if let Err(f) = require_exact(g, &report) {
        print!("{out}");
        return Err(f);
    }
    Ok(out)
}

fn render(r: &Report, view: View) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input:       {}", r.input);
    let _ = writeln!(s, "vars:        {}", r.vars.join(","));
    let _ = writeln!(s, "cap:         {}", r.cap);
    let _ = writeln!(s, "certificate: {}", r.certificate.as_str());
    match view {
        View::Jacobi => {
            let _ = writeln!(s, "generators:");
            for (v, gen) in r.vars.iter().zip(&r.generators) {
                let _ = writeln!(s, "  d{v}: {gen}");
            }
            let _ = writeln!(s, "basis:");
            for rule in &r.rules {
                let _ = writeln!(s, "  {rule}");
            }
            let more = if r.standard_words.len() == Report::WORD_LIMIT { ", ..." } else { "" };
            let _ = writeln!(s, "standard words: {}{more}", r.standard_words.join(", "));
            let _ = writeln!(s, "dimension:   {}", dimension_text(r.dimension));
        }
        View::Invariants => {
            let coranks: Vec<String> = r.coranks.iter().map(u64::to_string).collect();
            let _ = writeln!(s, "coranks:     {}", coranks.join(","));
            let _ = writeln!(s, "exact up to: degree {}", r.safe_degree);
            let _ = writeln!(s, "dimension:   {}", dimension_text(r.dimension));
            let _ = writeln!(s, "jdim:        {}", r.jdim.as_str());
        }
        View::Classify => {
            let c = r.class.as_ref().expect("two variables");
            let candidates: Vec<String> = c.candidates.iter().map(|t| t.to_string()).collect();
            let coranks: Vec<String> = r.coranks.iter().take(4).map(u64::to_string).collect();
            let _ = writeln!(s, "coranks:     {},...", coranks.join(","));
            let _ = writeln!(s, "type:        {}", c.coarse);
            let _ = writeln!(
                s,
                "candidates:  {}",
                if candidates.is_empty() { "none".into() } else { candidates.join(", ") }
            );
            let _ = writeln!(s, "situation:   {}", c.situation);
        }
    }
    s
}

fn batch(g: &Global, vars: &Arc<Alphabet>, path: &Path, jobs: usize) -> Outcome {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let results: Vec<Result<Report, Failure>> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(_, expr)| {
                let f = parse_potential(g, vars, expr)?;
                let (_, report) = analysis_report(g, &f, View::Classify)?;
                require_exact(g, &report)?;
                Ok(report)
            })
            .collect()
    });

    let mut worst: Option<Failure> = None;
    let mut out = String::new();
    let mut entries = Vec::new();
    for ((line, expr), result) in lines.iter().zip(results) {
        match result {
            Ok(report) => match g.format {
                Format::Text => {
                    let _ = writeln!(out, "[line {line}]");
                    out += &render(&report, View::Classify);
                }
                Format::Json => entries.push(json!({"line": line, "report": report})),
            },
            Err(f) => {
                eprintln!("line {line}: {expr}: {}", f.message());
                if g.format == Format::Json {
                    entries.push(json!({"line": line, "error": f.message(), "status": f.code()}));
                }
                if worst.as_ref().map_or(true, |w| f.code() > w.code()) {
                    worst = Some(f);
                }
            }
        }
    }
    if g.format == Format::Json {
        out = json_line(serde_json::Value::Array(entries));
    }
    match worst {
        None => Ok(out),
        Some(f) => {
            print!("{out}");
            Err(f)
        }
    }
}

fn slice(g: &Global, vars: &Arc<Alphabet>, at: &str, expect: Option<&str>, input: &str) -> Outcome {
    let text = if Path::new(input).is_file() {
        std::fs::read_to_string(input).map_err(|e| Failure::Parse(format!("{input}: {e}")))?
    } else {
        input.to_string()
    };
    let p = parse_comm(text.trim(), vars)?;
    let sliced = p.substitute_zero(at)?;
    let matched = match expect {
        Some(e) => Some(parse_comm(e, vars)? == sliced),
        None => None,
    };
    let out = match g.format {
        Format::Text => match matched {
            None => format!("{sliced}\n"),
            Some(true) => format!("{sliced}\nmatch\n"),
            Some(false) => format!("{sliced}\nmismatch\n"),
        },
        Format::Json => json_line(json!({
            "vars": vars.names(),
            "at": at,
            "terms": p.len(),
            "slice": sliced.to_string(),
            "match": matched,
        })),
    };
    if matched == Some(false) {
        print!("{out}");
        return Err(Failure::Mismatch(format!("slice at {at} = 0 differs from the expected polynomial")));
    }
    Ok(out)
}

fn split_cmd(g: &Global, vars: &Arc<Alphabet>, expr: &str) -> Outcome {
    let f = parse_potential(g, vars, expr)?;
    let s = split(&f)?;
    let name = |v: u8| vars.name(v).to_string();
    let squares: Vec<(String, String)> =
        s.squares.iter().map(|(v, a)| (name(*v), a.to_string())).collect();
    let remaining: Vec<String> = s.remaining.iter().map(|&v| name(v)).collect();
    let change: Vec<(String, String)> = s
        .change
        .images()
        .iter()
        .enumerate()
        .map(|(i, img)| (name(i as u8), img.to_string()))
        .collect();
    Ok(match g.format {
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "input:     {}", f.jet());
            let _ = writeln!(out, "rank:      {}", s.r);
            let sq: Vec<String> = squares.iter().map(|(v, a)| format!("{a}*{v}^2")).collect();
            let _ = writeln!(out, "squares:   {}", if sq.is_empty() { "none".into() } else { sq.join(" + ") });
            let _ = writeln!(out, "remaining: {}", if remaining.is_empty() { "none".into() } else { remaining.join(",") });
            let _ = writeln!(out, "g:         {}", s.g);
            let _ = writeln!(out, "change:");
            for (v, img) in &change {
                let _ = writeln!(out, "  {v} -> {img}");
            }
            out
        }
        Format::Json => json_line(json!({
            "input": f.jet().to_string(),
            "vars": vars.names(),
            "cap": g.cap,
            "r": s.r,
            "squares": squares.iter().map(|(v, a)| json!({"var": v, "coeff": a})).collect::<Vec<_>>(),
            "remaining": remaining,
            "g": s.g.to_string(),
            "change": change.into_iter().map(|(v, img)| (v, json!(img))).collect::<serde_json::Map<_, _>>(),
        })),
    })
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json value"))
}
