//! Command-line front end.
//!
//! Exit codes: 0 on success (or a valid input), 1 when the input is invalid or the
//! requested computation does not apply to it, 2 on I/O, parse or usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use ybe_core::braces::{self, SkewBrace};
use ybe_core::catalog;
use ybe_core::enumerate::{self, EnumerationTask, Filters, Mode, CHECKPOINT_ENV};
use ybe_core::format::{self, Record, SolutionRecord};
use ybe_core::perm::Perm;
use ybe_core::solutions::{self, Solution};
use ybe_core::structgroup::{self, GroupWord};
use ybe_core::Error;

#[derive(Parser)]
#[command(
    name = "ybe",
    version,
    about = "Solutions of the Yang-Baxter equation and skew braces"
)]
struct Cli {
    /// Output style; `structured` prints one JSON object per line.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a solution or brace file.
    Verify { path: PathBuf },
    /// Report the invariants of a solution or brace file.
    Analyze { path: PathBuf },
    /// Enumerate solutions up to isomorphism.
    Enumerate(EnumerateArgs),
    /// Print the affine matrices of the structure group generators.
    Repr { path: PathBuf },
    /// Ball sizes in the Cayley graph of the structure group.
    Growth {
        path: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Stop (and mark the result truncated) beyond this many elements.
        #[arg(long, default_value_t = 5_000_000)]
        max_elements: usize,
    },
    /// Run the unique-product falsifier on the Promislow set of two words.
    Upp {
        path: PathBuf,
        /// Word such as "1 2'" (1-based, ' for inverse).
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Skew brace operations.
    #[command(subcommand)]
    Brace(BraceCommand),
    /// Write a solution file from cycles (1-based) or a catalog name.
    Build(BuildArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    size: usize,
    /// Only involutive solutions.
    #[arg(long)]
    involutive: bool,
    /// Print counts instead of the solutions.
    #[arg(long)]
    count_only: bool,
    /// Print per-size statistics of the involutive classes.
    #[arg(long)]
    report: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for resumable progress; defaults to the YBE_CHECKPOINT_DIR variable.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Seconds before the run stops with a partial-result error.
    #[arg(long)]
    time_budget: Option<u64>,
    /// Recorded in stream headers; does not affect the output otherwise.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    indecomposable: bool,
    #[arg(long)]
    multipermutation: bool,
    /// Raise the default size cap.
    #[arg(long)]
    max_size: Option<usize>,
    /// Write the stream here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BraceCommand {
    Verify {
        path: PathBuf,
    },
    Analyze {
        path: PathBuf,
    },
    /// Write the solution of the brace.
    Solution {
        path: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the radical ring of a two-sided brace of abelian type.
    Ring {
        path: PathBuf,
    },
    /// Enumerate skew braces up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Catalog entry; see `--list`.
    #[arg(long, conflicts_with_all = ["size", "sigma", "tau"])]
    name: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    size: Option<usize>,
    /// One cycle string per point, e.g. --sigma "(12)" --sigma "(1324)".
    #[arg(long)]
    sigma: Vec<String>,
    #[arg(long)]
    tau: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

struct Out {
    format: OutputFormat,
}

impl Out {
    /// Prints `text` lines, or `value` as one JSON line.
    fn emit(&self, text: &[String], value: Value) {
        match self.format {
            OutputFormat::Text => {
                for line in text {
                    println!("{line}");
                }
            }
            OutputFormat::Structured => {
                let mut v = value;
                if let Value::Object(m) = &mut v {
                    m.insert("format_version".into(), json!(format::FORMAT_VERSION));
                }
                println!("{v}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { format: cli.format };
    match run(cli.command, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match out.format {
                OutputFormat::Text => eprintln!("error: {}", f.message),
                OutputFormat::Structured => {
                    println!(
                        "{}",
                        json!({"format_version": format::FORMAT_VERSION, "error": f.message, "exit_code": f.code})
                    )
                }
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command, out: &Out) -> CliResult {
    match cmd {
        Command::Verify { path } => verify(&path, out),
        Command::Analyze { path } => analyze(&path, out),
        Command::Enumerate(args) => enumerate_cmd(args, out),
        Command::Repr { path } => repr(&path, out),
        Command::Growth {
            path,
            radius,
            jobs,
            max_elements,
        } => growth(&path, radius, jobs, max_elements, out),
        Command::Upp { path, x, y } => upp(&path, &x, &y, out),
        Command::Brace(b) => brace_cmd(b, out),
        Command::Build(args) => build(args, out),
    }
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

fn load(path: &Path) -> Result<Record, Failure> {
    format::read_record(path).map_err(in_file(path))
}

fn load_solution(path: &Path) -> Result<Solution, Failure> {
    match load(path)? {
        Record::Solution(r) => Ok(r.to_solution()?),
        other => Err(Failure {
            code: 1,
            message: format!("expected a solution file, found kind {}", other.kind()),
        }),
    }
}

fn load_brace(path: &Path) -> Result<SkewBrace, Failure> {
    match load(path)? {
        Record::Brace(r) => Ok(r.to_brace()?),
        other => Err(Failure {
            code: 1,
            message: format!("expected a brace file, found kind {}", other.kind()),
        }),
    }
}

fn write_or_print(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::from(Error::Io(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(path: &Path, out: &Out) -> CliResult {
    let text = fs::read_to_string(path).map_err(|e| in_file(path)(Error::Io(e)))?;
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    let record = match format::parse_record(first) {
        Ok(r @ Record::EnumerationStream(_)) => r,
        _ => format::parse_record(&text).map_err(in_file(path))?,
    };
    match record {
        Record::Solution(r) => {
            let s = r.to_solution()?;
            let inv = solutions::is_involutive(&s);
            out.emit(
                &[
                    "valid: true".into(),
                    format!("size: {}", s.size()),
                    format!("involutive: {inv}"),
                ],
                json!({"command": "verify", "kind": "solution", "valid": true, "size": s.size(), "involutive": inv}),
            );
            Ok(())
        }
        Record::Brace(r) => {
            let b = r.to_brace()?;
            let abelian = b.is_abelian_type();
            out.emit(
                &[
                    "valid: true".into(),
                    format!("size: {}", b.size()),
                    format!("abelian_type: {abelian}"),
                ],
                json!({"command": "verify", "kind": "brace", "valid": true, "size": b.size(), "abelian_type": abelian}),
            );
            Ok(())
        }
        Record::EnumerationStream(_) => {
            let (header, items) = format::parse_stream(&text).map_err(in_file(path))?;
            for item in &items {
                match item {
                    Record::Solution(s) => {
                        s.to_solution()?;
                    }
                    Record::Brace(b) => {
                        b.to_brace()?;
                    }
                    Record::EnumerationStream(_) => {
                        return Err(Failure {
                            code: 2,
                            message: "nested stream header".into(),
                        })
                    }
                }
            }
            out.emit(
                &["valid: true".into(), format!("records: {}", header.count)],
                json!({"command": "verify", "kind": "enumeration-stream", "valid": true, "records": header.count}),
            );
            Ok(())
        }
    }
}

fn opt_text<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "n/a".into(), ToString::to_string)
}

fn analyze(path: &Path, out: &Out) -> CliResult {
    match load(path)? {
        Record::Solution(r) => {
            let s = r.to_solution()?;
            let rep = solutions::analyze(&s)?;
            let sizes = if rep.involutive {
                solutions::retraction_sizes(&s).ok()
            } else {
                None
            };
            let sizes_text = sizes.as_ref().map_or_else(
                || "n/a".into(),
                |v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> "),
            );
            out.emit(
                &[
                    format!("size: {}", rep.size),
                    format!("involutive: {}", rep.involutive),
                    format!("indecomposable: {}", rep.indecomposable),
                    format!("multipermutation_level: {}", opt_text(&rep.multipermutation_level)),
                    format!("retraction_sizes: {sizes_text}"),
                    format!("permutation_group_order: {}", rep.perm_group_order),
                    format!("t_full_cycle: {}", opt_text(&rep.t_is_full_cycle)),
                    format!("cyclic_sylows: {}", rep.perm_group_cyclic_sylows),
                    format!("canonical_form: {}", solutions::canonical_form(&s)),
                ],
                json!({"command": "analyze", "kind": "solution", "report": rep, "retraction_sizes": sizes,
                       "canonical_form": solutions::canonical_form(&s).to_hex()}),
            );
            Ok(())
        }
        Record::Brace(r) => brace_analyze(&r.to_brace()?, out),
        Record::EnumerationStream(_) => Err(Failure {
            code: 1,
            message: "analyze expects a single solution or brace".into(),
        }),
    }
}

fn brace_analyze(b: &SkewBrace, out: &Out) -> CliResult {
    let rep = braces::analyze(b);
    let r_order = match rep.r_order {
        Some((m, p)) => format!("r_A order: {m} (predicted {p})"),
        None => "r_A order: n/a".into(),
    };
    out.emit(
        &[
            format!("size: {}", rep.size),
            format!("abelian_type: {}", rep.abelian_type),
            format!("two_sided: {}", rep.two_sided),
            format!("star_associative: {}", rep.star_associative),
            format!(
                "right_nilpotency: {}",
                rep.right_nilpotency.map_or_else(|| "none".into(), |k| k.to_string())
            ),
            format!("socle_size: {}", rep.socle_size),
            format!("annihilator_size: {}", rep.annihilator_size),
            r_order,
            format!("multiplicative_solvable: {}", rep.multiplicative_solvable),
            format!("solution_involutive: {}", rep.solution_involutive),
        ],
        json!({"command": "analyze", "kind": "brace", "report": rep}),
    );
    Ok(())
}

fn enumerate_cmd(args: EnumerateArgs, out: &Out) -> CliResult {
    let mode = if args.involutive { Mode::Involutive } else { Mode::All };
    let mut task = EnumerationTask::new(args.size, mode);
    task.jobs = args.jobs;
    task.size_cap = args.max_size;
    task.time_budget = args.time_budget.map(Duration::from_secs);
    task.checkpoint_dir = args
        .checkpoint
        .or_else(|| std::env::var_os(CHECKPOINT_ENV).map(PathBuf::from));
    task.filters = Filters {
        indecomposable: args.indecomposable.then_some(true),
        multipermutation: args.multipermutation.then_some(true),
    };
    let result = enumerate::enumerate_solutions(&task)?;
    let notes = result.table_discrepancies();
    if args.report {
        let rows = enumerate::corpus_report(result.solutions());
        let text: Vec<String> = rows
            .iter()
            .map(|r| {
                format!(
                    "size {}: {} classes, {} multipermutation ({:.1}%), {} indecomposable, {} T full cycle, {} cyclic Sylow",
                    r.size,
                    r.total,
                    r.multipermutation,
                    100.0 * r.multipermutation_fraction,
                    r.indecomposable,
                    r.t_full_cycle,
                    r.cyclic_sylow
                )
            })
            .collect();
        out.emit(&text, json!({"command": "enumerate", "report": rows}));
        return Ok(());
    }
    if args.count_only {
        let mut text = if mode == Mode::Involutive {
            vec![result.involutive.to_string()]
        } else {
            vec![
                format!("involutive: {}", result.involutive),
                format!("non-involutive: {}", result.non_involutive),
                format!("total: {}", result.total()),
            ]
        };
        text.extend(notes.iter().map(|n| format!("note: {n}")));
        out.emit(
            &text,
            json!({"command": "enumerate", "size": result.n, "mode": mode, "involutive": result.involutive,
                   "non_involutive": result.non_involutive, "total": result.total(),
                   "table_discrepancies": notes, "seed": args.seed}),
        );
        for n in &notes {
            if out.format == OutputFormat::Text && mode == Mode::Involutive {
                eprintln!("note: {n}");
            }
        }
        return Ok(());
    }
    for n in &notes {
        eprintln!("note: {n}");
    }
    write_or_print(args.output.as_deref(), &format::solution_stream(&result, args.seed))
}

fn repr(path: &Path, out: &Out) -> CliResult {
    let s = load_solution(path)?;
    let gens = structgroup::affine_rep(&s)?;
    let mut text = Vec::new();
    let mut mats = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        text.push(format!("x{} =", i + 1));
        text.extend(g.to_string().lines().map(|l| format!("  {l}")));
        let m: Vec<Vec<String>> = g
            .to_matrix()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        mats.push(m);
    }
    out.emit(&text, json!({"command": "repr", "matrices": mats}));
    Ok(())
}

fn growth(path: &Path, radius: usize, jobs: usize, max_elements: usize, out: &Out) -> CliResult {
    let s = load_solution(path)?;
    let balls = structgroup::ball_sizes(&s, radius, max_elements, jobs)?;
    let values: Vec<BigInt> = balls.gamma.iter().map(|&v| BigInt::from(v)).collect();
    let guess = structgroup::guess_rational_series(&values);
    let mut text = vec![format!(
        "gamma: {}",
        balls
            .gamma
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    )];
    if balls.truncated {
        text.push(format!(
            "truncated: element cap reached after radius {}",
            balls.gamma.len() - 1
        ));
    }
    text.push(match &guess {
        Some(g) => format!("series (conjecture): {g}"),
        None if values.len() < 5 => "series: need at least 5 values".into(),
        None => "series: no short recurrence fits".into(),
    });
    out.emit(
        &text,
        json!({"command": "growth", "gamma": balls.gamma, "truncated": balls.truncated, "series": guess}),
    );
    Ok(())
}

fn upp(path: &Path, x: &str, y: &str, out: &Out) -> CliResult {
    let s = load_solution(path)?;
    let gens = structgroup::affine_rep(&s)?;
    let wx: GroupWord = x.parse()?;
    let wy: GroupWord = y.parse()?;
    let ex = structgroup::eval_affine(&gens, &wx)?;
    let ey = structgroup::eval_affine(&gens, &wy)?;
    let relations = structgroup::check_promislow_relations(&ex, &ey);
    let report = structgroup::upp_falsify(&structgroup::promislow_set(&ex, &ey));
    let mut text = vec![format!("promislow relations hold: {relations}")];
    text.extend(report.to_string().lines().map(String::from));
    out.emit(
        &text,
        json!({"command": "upp", "relations_hold": relations, "falsified": report.falsified(), "report": report}),
    );
    Ok(())
}

fn brace_cmd(cmd: BraceCommand, out: &Out) -> CliResult {
    match cmd {
        BraceCommand::Verify { path } => {
            let b = load_brace(&path)?;
            let violations = braces::identity_violations(&b);
            out.emit(
                &[
                    "valid: true".into(),
                    format!("size: {}", b.size()),
                    format!("identity_violations: {}", violations.len()),
                ],
                json!({"command": "brace verify", "valid": true, "size": b.size(), "identity_violations": violations}),
            );
            Ok(())
        }
        BraceCommand::Analyze { path } => brace_analyze(&load_brace(&path)?, out),
        BraceCommand::Solution { path, output } => {
            let s = braces::solution_of(&load_brace(&path)?);
            let text = format::to_json(&Record::Solution(SolutionRecord::from_solution(&s)));
            write_or_print(output.as_deref(), &format!("{text}\n"))
        }
        BraceCommand::Ring { path } => {
            let b = load_brace(&path)?;
            let ring = braces::ring_from_two_sided(&b)?;
            let back = braces::brace_from_radical_ring(&ring)?;
            let round_trip = back == b;
            let mut text = vec![format!("radical ring on {} elements; product table:", ring.size())];
            text.extend(
                ring.prod_table()
                    .iter()
                    .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")),
            );
            text.push(format!(
                "round trip: {}",
                if round_trip { "identical" } else { "differs" }
            ));
            out.emit(
                &text,
                json!({"command": "brace ring", "add": ring.add_table(), "product": ring.prod_table(), "round_trip": round_trip}),
            );
            Ok(())
        }
        BraceCommand::Enumerate {
            size,
            count_only,
            seed,
            output,
        } => {
            let found = enumerate::enumerate_braces(size)?;
            if count_only {
                out.emit(
                    &[found.len().to_string()],
                    json!({"command": "brace enumerate", "size": size, "count": found.len()}),
                );
                return Ok(());
            }
            write_or_print(output.as_deref(), &format::brace_stream(size, &found, seed))
        }
    }
}

fn build(args: BuildArgs, out: &Out) -> CliResult {
    if args.list {
        out.emit(
            &catalog::NAMES.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            json!({"command": "build", "names": catalog::NAMES}),
        );
        return Ok(());
    }
    let (solution, name) = match args.name {
        Some(name) => match catalog::by_name(&name) {
            Some(s) => (s, Some(name)),
            None => {
                return Err(Failure {
                    code: 2,
                    message: format!("unknown catalog name {name}; try --list"),
                })
            }
        },
        None => {
            let n = args.size.ok_or_else(|| Failure {
                code: 2,
                message: "give --name or --size with --sigma and --tau".into(),
            })?;
            let parse = |rows: &[String]| -> Result<Vec<Perm>, Failure> {
                rows.iter()
                    .map(|c| Perm::parse_cycles(n, c).map_err(Failure::from))
                    .collect()
            };
            let sigma = parse(&args.sigma)?;
            let tau = parse(&args.tau)?;
            (Solution::from_perms(sigma, tau)?, None)
        }
    };
    let mut rec = SolutionRecord::from_solution(&solution);
    rec.name = name;
    write_or_print(
        args.output.as_deref(),
        &format!("{}\n", format::to_json(&Record::Solution(rec))),
    )
}
