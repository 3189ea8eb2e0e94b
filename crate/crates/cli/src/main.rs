use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ehall::fock::FockSpace;
use ehall::hall::LatticePoint;
use ehall::trace::{dimension_table, TraceSpace, DEFAULT_AMBIENT_CAP};
use ehall::Scalar;
use ehall_cli::expr::{evaluate, Context, Value};
use ehall_cli::suites::{run_suite, Bounds, Report, Suite};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ehall", version, about = "Exact Hecke, trace, Hall algebra and Fock space computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Rank n of H_n / AH_n, or the largest rank for tables and suites
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// x-degree, or the largest degree for tables and suites
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Truncation degree N of symmetric functions
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Output format; plain text when omitted
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest ambient dimension a trace computation may build
    #[arg(long, global = true, default_value_t = DEFAULT_AMBIENT_CAP)]
    max_ambient_dim: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Hecke,
    Affine,
    Hall,
    Sym,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form of an expression
    Normalize {
        expr: String,
        #[arg(long, value_enum, default_value = "affine")]
        algebra: Algebra,
    },
    /// Reduce a homogeneous element of AH_n^+ to its trace class
    TraceReduce { expr: String },
    /// Table of computed and expected trace dimensions
    Dims,
    /// Normal form of [x, y] in the Hall algebra
    HallBracket { x: String, y: String },
    /// Block matrices of rho(w_{a,b}) on truncated symmetric functions
    FockMatrix {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        #[arg(long, allow_hyphen_values = true)]
        max_a: Option<i64>,
        #[arg(long)]
        max_b: Option<i64>,
        /// Seed for randomized cases
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include wall_time in the report
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Verification,
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn context(cli: &Cli, algebra: Algebra) -> Result<Context, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")));
    Ok(match algebra {
        Algebra::Hecke => Context::Hecke(need(cli.rank, "rank")?),
        Algebra::Affine => Context::Affine(need(cli.rank, "rank")?),
        Algebra::Hall => Context::Hall,
        Algebra::Sym => Context::Sym(need(cli.truncation, "truncation")?),
    })
}

fn eval(src: &str, ctx: Context) -> Result<Value, Failure> {
    evaluate(src, ctx).map_err(|e| Failure::Usage(e.render(src)))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable")
}

fn normalize(cli: &Cli, expr: &str, algebra: Algebra) -> Outcome {
    let ctx = context(cli, algebra)?;
    let v = eval(expr, ctx)?;
    Ok(match cli.format {
        Some(Format::Json) => pretty(json!({ "algebra": ctx.to_string(), "input": expr, "normal_form": v.to_string() })),
        Some(Format::Csv) => format!("algebra,input,normal_form\n{},{},{}", ctx, csv_field(expr), csv_field(&v.to_string())),
        None => v.to_string(),
    })
}

fn trace_reduce(cli: &Cli, expr: &str) -> Outcome {
    let ctx = context(cli, Algebra::Affine)?;
    let Value::Affine(e) = eval(expr, ctx)? else { unreachable!("affine context") };
    let space = TraceSpace::<Scalar>::new(cli.max_ambient_dim);
    let degree = cli.degree.map(|d| d as u32);
    let class = space.reduce(&e, degree).map_err(|e| Failure::Usage(e.to_string()))?;
    let piece = space.piece(class.rank(), class.degree()).map_err(|e| Failure::Usage(e.to_string()))?;
    let basis: Vec<String> = piece.quotient_basis().iter().map(|m| m.to_string()).collect();
    let coords: Vec<String> = class.coords().iter().map(|c| c.to_string()).collect();
    Ok(match cli.format {
        Some(Format::Json) => pretty(json!({
            "rank": class.rank(),
            "degree": class.degree(),
            "quotient_dim": basis.len(),
            "basis": basis,
            "coords": coords,
            "representative": class.lift().to_string(),
        })),
        Some(Format::Csv) => {
            let rows: Vec<String> = basis.iter().zip(&coords).map(|(b, c)| format!("{},{}", csv_field(b), csv_field(c))).collect();
            format!("basis,coord\n{}", rows.join("\n"))
        }
        None => class.lift().to_string(),
    })
}

fn dims(cli: &Cli) -> Outcome {
    let rows = dimension_table::<Scalar>(cli.rank.unwrap_or(3), cli.degree.unwrap_or(4) as u32, cli.max_ambient_dim)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let out = match cli.format {
        Some(Format::Json) => serde_json::to_string_pretty(&rows).expect("serializable"),
        Some(Format::Csv) => {
            let mut s = String::from("n,d,ambient,computed,expected,matches");
            for r in &rows {
                s += &format!("\n{},{},{},{},{},{}", r.n, r.d, r.ambient, r.computed, r.expected, r.matches);
            }
            s
        }
        None => {
            let mut s = format!("{:>3} {:>3} {:>8} {:>9} {:>9}", "n", "d", "ambient", "computed", "expected");
            for r in &rows {
                s += &format!("\n{:>3} {:>3} {:>8} {:>9} {:>9}", r.n, r.d, r.ambient, r.computed, r.expected);
            }
            s
        }
    };
    if rows.iter().all(|r| r.matches) {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Verification)
    }
}

fn hall_bracket(cli: &Cli, x: &str, y: &str) -> Outcome {
    let (Value::Hall(a), Value::Hall(b)) = (eval(x, Context::Hall)?, eval(y, Context::Hall)?) else {
        unreachable!("hall context")
    };
    let v = a.commutator(&b);
    Ok(match cli.format {
        Some(Format::Json) => pretty(json!({ "x": x, "y": y, "bracket": v.to_string() })),
        Some(Format::Csv) => format!("x,y,bracket\n{},{},{}", csv_field(x), csv_field(y), csv_field(&v.to_string())),
        None => v.to_string(),
    })
}

fn fock_matrix(cli: &Cli, a: i64, b: i64) -> Outcome {
    let n = cli.truncation.unwrap_or(6);
    let p = LatticePoint::new(a, b).map_err(|e| Failure::Usage(e.to_string()))?;
    let op = FockSpace::<Scalar>::new(n).rho(p).map_err(|e| Failure::Usage(e.to_string()))?;
    let export = op.export();
    Ok(match cli.format {
        Some(Format::Csv) => {
            let mut s = String::from("source_degree,row,col,entry");
            for blk in &export.blocks {
                for (i, row) in blk.entries.iter().enumerate() {
                    for (j, e) in row.iter().enumerate() {
                        s += &format!(
                            "\n{},{},{},{}",
                            blk.source_degree,
                            csv_field(&blk.rows[i].to_string()),
                            csv_field(&blk.cols[j].to_string()),
                            csv_field(e)
                        );
                    }
                }
            }
            s
        }
        _ => serde_json::to_string_pretty(&export).expect("serializable"),
    })
}

fn verify(cli: &Cli, suite: &str, max_a: Option<i64>, max_b: Option<i64>, seed: u64, timing: bool) -> Outcome {
    let suite: Suite = suite.parse().map_err(Failure::Usage)?;
    let bounds = Bounds {
        rank: cli.rank,
        degree: cli.degree,
        max_a,
        max_b,
        truncation: cli.truncation,
        max_ambient_dim: cli.max_ambient_dim,
        seed,
    };
    let start = Instant::now();
    let mut report: Report = run_suite(suite, &bounds);
    if timing {
        report.wall_time = Some(start.elapsed().as_secs_f64());
    }
    let out = match cli.format {
        Some(Format::Csv) => {
            let mut s = String::from("case,detail");
            for f in &report.failures {
                s += &format!("\n{},{}", csv_field(&f.case), csv_field(&f.detail));
            }
            s
        }
        _ => serde_json::to_string_pretty(&report).expect("serializable"),
    };
    if report.failures.is_empty() {
        Ok(out)
    } else {
        println!("{out}");
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Normalize { expr, algebra } => normalize(&cli, expr, *algebra),
        Command::TraceReduce { expr } => trace_reduce(&cli, expr),
        Command::Dims => dims(&cli),
        Command::HallBracket { x, y } => hall_bracket(&cli, x, y),
        Command::FockMatrix { a, b } => fock_matrix(&cli, *a, *b),
        Command::Verify { suite, max_a, max_b, seed, timing } => verify(&cli, suite, *max_a, *max_b, *seed, *timing),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout();
            let _ = writeln!(stdout, "{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
