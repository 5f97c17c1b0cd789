//! Argument handling and the four subcommands.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use inv231::verify::{self, VerifyConfig};
use inv231::{
    enumerate_redblue, tiling_to_involution, Error, Permutation, DEFAULT_INVOLUTION_CAP,
    DEFAULT_TRUNC,
};

use crate::output::{Format, Table};
use crate::spec::{spec_help, SeqSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Longest table `table` will print.
pub const MAX_ROWS: usize = 5000;
/// Highest truncation order `gf` and `verify` accept.
pub const MAX_TRUNC: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "inv231",
    version,
    about = "Exact counts for involutions restricted by 231",
    after_help = "Sequence specs:\n  fib k=2\n  one231\n  A_r_k21 k=4 r=1\n  C_layered pat=[1,4]   (or pat=15432)\nRun `inv231 table --help` for the full list."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a sequence for n = 0..=n-max
    #[command(after_help = table_after_help())]
    Table {
        /// Sequence spec, e.g. `A_r_k21 k=4 r=1`
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Dump generating-function coefficients up to x^trunc
    Gf {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Check every identity against brute force up to n-max
    Verify {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        /// Restrict to these suites (repeatable or comma-separated)
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// List red/blue tilings of size n with their involutions
    Bijection {
        n: Option<usize>,
        /// Same as the positional size
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
}

fn table_after_help() -> String {
    format!("Sequence specs:\n{}", indent(&spec_help()))
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}\n")).collect()
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `stdout` unless `--out` is given; notes and
/// errors go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let (result, output) = match cli.command {
        Command::Table {
            spec,
            n_max,
            output,
        } => (cmd_table(&spec.join(" "), n_max, &output), output),
        Command::Gf {
            spec,
            trunc,
            output,
        } => (cmd_gf(&spec.join(" "), trunc, &output), output),
        Command::Verify {
            n_max,
            trunc,
            only,
            output,
        } => (cmd_verify(n_max, trunc, &only, &output, stderr), output),
        Command::Bijection { n, n_max, output } => {
            (cmd_bijection(n, n_max, &output, stderr), output)
        }
    };
    let (text, code) = match result {
        Ok(text) => (text, EXIT_OK),
        Err((Failure::Verification, text)) => (text, EXIT_VERIFY_FAILED),
        Err((Failure::Usage(msg), _)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let written = match &output.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

type CmdResult = Result<String, (Failure, String)>;

fn usage<T>(r: Result<T, impl Into<Failure>>) -> Result<T, (Failure, String)> {
    r.map_err(|e| (e.into(), String::new()))
}

fn cmd_table(spec: &str, n_max: usize, output: &Output) -> CmdResult {
    if n_max > MAX_ROWS {
        return Err((
            Failure::Usage(format!("--n-max {n_max} exceeds {MAX_ROWS}")),
            String::new(),
        ));
    }
    let spec = usage(SeqSpec::parse(spec))?;
    let values = usage(spec.table(n_max))?;
    let mut t = Table::new(&["n", "value"]);
    for (n, v) in values.iter().enumerate() {
        t.push(vec![json!(n), json!(v.to_string())]);
    }
    Ok(t.render(output.format.unwrap_or(Format::Csv)))
}

fn cmd_gf(spec: &str, trunc: usize, output: &Output) -> CmdResult {
    if trunc > MAX_TRUNC {
        return Err((
            Failure::Usage(format!("--trunc {trunc} exceeds {MAX_TRUNC}")),
            String::new(),
        ));
    }
    let spec = usage(SeqSpec::parse(spec))?;
    let t = if spec.is_bivariate() {
        let s = usage(spec.bivariate(trunc))?;
        let mut t = Table::new(&["n", "y_exp", "coeff"]);
        for (n, r, c) in s.terms() {
            t.push(vec![json!(n), json!(r.to_string()), json!(c.to_string())]);
        }
        t
    } else {
        let s = usage(spec.univariate(trunc))?;
        let mut t = Table::new(&["n", "value"]);
        for (n, c) in s.coeffs().iter().enumerate() {
            t.push(vec![json!(n), json!(c.to_string())]);
        }
        t
    };
    Ok(t.render(output.format.unwrap_or(Format::Csv)))
}

fn cmd_verify(
    n_max: usize,
    trunc: usize,
    only: &[String],
    output: &Output,
    stderr: &mut dyn Write,
) -> CmdResult {
    if trunc > MAX_TRUNC {
        return Err((
            Failure::Usage(format!("--trunc {trunc} exceeds {MAX_TRUNC}")),
            String::new(),
        ));
    }
    let cfg = usage(VerifyConfig::new(n_max, trunc))?;
    let reports = usage(verify::run(&cfg, only))?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    let text = match output.format {
        None => {
            let mut s = String::new();
            for r in &reports {
                let status = if r.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status} {:<26} {} [{}] checks={}",
                    r.suite, r.identity, r.range, r.checks
                ));
                if let Some(c) = &r.counterexample {
                    s.push_str(&format!("\n     first counterexample: {c}"));
                }
                s.push('\n');
            }
            s.push_str(&format!("{} identities, {failed} failed\n", reports.len()));
            s
        }
        Some(f) => {
            let mut t = Table::new(&[
                "suite",
                "identity",
                "range",
                "checks",
                "passed",
                "counterexample",
            ]);
            for r in &reports {
                t.push(vec![
                    json!(r.suite),
                    json!(r.identity),
                    json!(r.range),
                    json!(r.checks),
                    json!(r.passed),
                    r.counterexample.as_ref().map_or(Value::Null, |c| json!(c)),
                ]);
            }
            t.render(f)
        }
    };
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} of {} identities failed", reports.len());
        return Err((Failure::Verification, text));
    }
    Ok(text)
}

fn cmd_bijection(
    n: Option<usize>,
    n_max: Option<usize>,
    output: &Output,
    stderr: &mut dyn Write,
) -> CmdResult {
    let n = match (n, n_max) {
        (Some(a), Some(b)) if a != b => {
            return Err((
                Failure::Usage(format!("size given twice ({a} and {b})")),
                String::new(),
            ))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            return Err((
                Failure::Usage("bijection needs a size n".into()),
                String::new(),
            ))
        }
    };
    if n > DEFAULT_INVOLUTION_CAP {
        return Err((
            Failure::Usage(format!("n = {n} exceeds the cap {DEFAULT_INVOLUTION_CAP}")),
            String::new(),
        ));
    }
    if n < 4 {
        let _ = writeln!(
            stderr,
            "note: no tilings of size {n}; the red tile alone has length 4"
        );
    }
    let pattern = Permutation::new(vec![2, 3, 1]).expect("231 is a permutation");
    let mut rows = Vec::new();
    for tiling in enumerate_redblue(n) {
        let p = tiling_to_involution(&tiling);
        let pos = p
            .first_occurrence(&pattern)
            .expect("every image holds exactly one 231");
        let vals: Vec<usize> = pos.iter().map(|&i| p.at(i)).collect();
        rows.push((tiling.to_string(), p.to_string(), join(&pos), join(&vals)));
    }
    Ok(match output.format {
        None => rows
            .iter()
            .map(|(t, p, pos, vals)| format!("{t} → {p}  231 at {pos}: {vals}\n"))
            .collect(),
        Some(f) => {
            let mut t = Table::new(&[
                "tiling",
                "involution",
                "witness_positions",
                "witness_values",
            ]);
            for (a, b, c, d) in rows {
                t.push(vec![json!(a), json!(b), json!(c), json!(d)]);
            }
            t.render(f)
        }
    })
}

fn join(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
