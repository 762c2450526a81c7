use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use halflog::curves::{ap_report, ApReport, CurveData};
use halflog::decompose::{decompose, LambdaPair, LambdaPairRepr, KERNEL_COSET_NOTE};
use halflog::identities::{run_suite, SuiteConfig, CHECK_NAMES};
use halflog::report::CheckReport;
use halflog::series::Cap;
use halflog::theta::{half_logs, half_logs_from_indices, ladder, ladder_infinity, HalfLogPair, LadderMatrix, LimitOptions, MAX_STEPS_ENV};
use halflog::trace::{check_supersingular, delta_table, DeltaTable};
use halflog::Error;

#[derive(Parser)]
#[command(name = "halflog", version, about = "Trace ladders, half-logarithms and Λ_n decompositions for supersingular primes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Table,
    Ladder,
    Halflog,
    Pair,
    Ap,
    Report,
}

#[derive(Subcommand)]
enum Cmd {
    /// δ-coefficients y_i, y_i′ for imin ≤ i ≤ imax.
    Table {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -2)]
        imin: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 7)]
        imax: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Ladder rows at a finite level or at infinity.
    Ladder {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: i64,
        /// A positive level, or "infinity".
        #[arg(long)]
        level: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        index: i64,
        /// Truncation X^cap; exact when omitted at finite level.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 10)]
        prec: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The half-logarithm pair.
    Halflog {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: i64,
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[arg(long, default_value_t = 10)]
        prec: i64,
        /// Index pair i,j to build from instead of the default (0, 1).
        #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
        pair: Option<Vec<i64>>,
    },
    /// (ϑ, υ) with φ_n^1(ϑ, υ) equal to the input pair.
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        ap: i64,
        #[arg(long)]
        level: u32,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Point count and trace of Frobenius.
    Ap {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        a1: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        a2: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        a3: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        a4: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        a6: i64,
        #[arg(long)]
        p: u64,
    },
    /// Runs the identity suite; exit status 3 if any check fails.
    Verify {
        /// Every check (the default when no --check is given).
        #[arg(long)]
        all: bool,
        /// Restrict to checks with this name; repeatable.
        #[arg(long)]
        check: Vec<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true, requires = "p")]
        ap: Option<i64>,
        #[arg(long, default_value_t = 2)]
        level: u32,
        #[arg(long, default_value_t = 30)]
        cap: usize,
        #[arg(long, default_value_t = 8)]
        prec: i64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_parity: bool,
    },
    /// Reads a JSON artifact written by another subcommand and writes it back.
    Validate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            let dbg = format!("{e:?}");
            let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string();
            Failure::Domain(format!("{kind}: {e}"))
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn limit_options() -> Result<LimitOptions, Failure> {
    match std::env::var(MAX_STEPS_ENV) {
        Ok(v) => {
            let n = v.trim().parse().map_err(|_| usage(format!("{MAX_STEPS_ENV} must be a positive integer, got {v:?}")))?;
            Ok(LimitOptions { max_level: Some(n) })
        }
        Err(_) => Ok(LimitOptions::default()),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn ladder_csv(m: &LadderMatrix) -> String {
    let mut out = String::from("entry,degree,numerator,den_pow,absprec,den_unit\n");
    let i = m.index;
    let entries = [
        (format!("theta_{i}"), &m.top[0]),
        (format!("upsilon_{i}"), &m.top[1]),
        (format!("theta_{}", i - 1), &m.bottom[0]),
        (format!("upsilon_{}", i - 1), &m.bottom[1]),
    ];
    for (name, f) in entries {
        for line in f.to_csv().lines().skip(1) {
            out.push_str(&format!("{name},{line}\n"));
        }
    }
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.cmd {
        Cmd::Table { p, ap, imin, imax, format } => {
            if imin > imax {
                return Err(usage("imin must not exceed imax"));
            }
            let t = delta_table(p, ap, imin, imax)?;
            Ok(match format {
                Format::Json => to_json(&t),
                Format::Csv => t.to_csv(),
            })
        }
        Cmd::Ladder { p, ap, level, index, cap, prec, format } => {
            check_supersingular(p, ap)?;
            let m = if level == "infinity" || level == "inf" {
                let cap = cap.ok_or_else(|| usage("--cap is required at infinity"))?;
                ladder_infinity(p, ap, index, cap, prec, limit_options()?)?
            } else {
                let n: u32 = level.parse().map_err(|_| usage(format!("bad level {level:?}")))?;
                ladder(p, ap, n, index, cap.map_or(Cap::Exact, Cap::Finite))?
            };
            Ok(match format {
                Format::Json => to_json(&m),
                Format::Csv => ladder_csv(&m),
            })
        }
        Cmd::Halflog { p, ap, cap, prec, pair } => {
            let opts = limit_options()?;
            let h = match pair.as_deref() {
                Some([i, j]) => half_logs_from_indices(p, ap, *i, *j, cap, prec, opts)?,
                Some(_) => return Err(usage("--pair takes two indices")),
                None => half_logs(p, ap, cap, prec, opts)?,
            };
            Ok(to_json(&h))
        }
        Cmd::Decompose { p, ap, level, input } => {
            check_supersingular(p, ap)?;
            let mut v: Value = read_json(&input)?;
            let obj = v.as_object_mut().ok_or_else(|| usage("the pair must be a JSON object"))?;
            obj.entry("p").or_insert(p.into());
            obj.entry("level").or_insert(level.into());
            let repr: LambdaPairRepr = serde_json::from_value(v).map_err(|e| usage(e.to_string()))?;
            if (repr.p, repr.level) != (p, level) {
                return Err(usage(format!("input pair is at p = {}, level {}", repr.p, repr.level)));
            }
            let pair = LambdaPair::from_repr(&repr)?;
            let out = decompose(p, ap, level, &pair.first, &pair.second)?;
            let mut r = out.to_repr();
            r.kernel_coset_note = Some(KERNEL_COSET_NOTE.into());
            Ok(to_json(&r))
        }
        Cmd::Ap { a1, a2, a3, a4, a6, p } => Ok(to_json(&ap_report(&CurveData::new(a1, a2, a3, a4, a6), p)?)),
        Cmd::Verify { all, check, p, ap, level, cap, prec, samples, seed, corrupt_parity } => {
            for c in &check {
                if !CHECK_NAMES.contains(&c.as_str()) {
                    return Err(usage(format!("unknown check {c:?}; known: {}", CHECK_NAMES.join(", "))));
                }
            }
            if all && !check.is_empty() {
                return Err(usage("--all and --check are exclusive"));
            }
            let mut cfg = match (p, ap) {
                (Some(p), Some(ap)) => {
                    check_supersingular(p, ap)?;
                    SuiteConfig::for_pairs(vec![(p, ap)])
                }
                (Some(p), None) => {
                    SuiteConfig::for_pairs(halflog::trace::supersingular_pairs(&[p]))
                }
                _ => SuiteConfig::default(),
            };
            cfg.max_level = level;
            cfg.cap = cap;
            cfg.prec = prec;
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.corrupt_parity = corrupt_parity;
            cfg.limit = limit_options()?;
            let mut reports = run_suite(&cfg);
            if !check.is_empty() {
                reports.retain(|r| check.contains(&r.name));
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let text = to_json(&reports);
            if failed > 0 {
                write_out(cli.out.as_ref(), &text)?;
                return Err(Failure::Verify(format!("{failed} of {} checks failed", reports.len())));
            }
            Ok(text)
        }
        Cmd::Validate { kind, input } => Ok(match kind {
            Kind::Table => to_json(&read_json::<DeltaTable>(&input)?),
            Kind::Ladder => to_json(&read_json::<LadderMatrix>(&input)?),
            Kind::Halflog => to_json(&read_json::<HalfLogPair>(&input)?),
            Kind::Pair => {
                let r: LambdaPairRepr = read_json(&input)?;
                let mut back = LambdaPair::from_repr(&r)?.to_repr();
                back.kernel_coset_note = r.kernel_coset_note;
                to_json(&back)
            }
            Kind::Ap => to_json(&read_json::<ApReport>(&input)?),
            Kind::Report => to_json(&read_json::<Vec<CheckReport>>(&input)?),
        }),
    }
}

fn write_out(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    let result = run(cli).and_then(|text| write_out(out.as_ref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(3)
        }
    }
}
