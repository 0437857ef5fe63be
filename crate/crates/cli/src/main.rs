use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use ukr::homology::{all_presets, homology_dims, specialize, HomologyTable, Specialization};
use ukr::verify::{self, CheckResult, Faults};
use ukr::{cube, skein, LinkDiagram};

/// sl(2) link cohomology over Q[a,h] and its matrix factorizations.
#[derive(Parser, Debug)]
#[command(name = "ukr", version)]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, short = 'j', global = true)]
    jobs: Option<usize>,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the bracket polynomial of a PD code.
    Bracket {
        /// PD-code file, or `-` for stdin.
        input: PathBuf,
    },
    /// Homology dimensions at one or all specializations of (a, h).
    Homology {
        input: PathBuf,
        /// A preset (khovanov, distinct1, distinct2, double) or `a,h`.
        #[arg(long, default_value = "khovanov", conflicts_with = "all")]
        spec: String,
        /// One table per preset.
        #[arg(long)]
        all: bool,
        /// Keep the quantum grading (only at a = h = 0).
        #[arg(long)]
        bigraded: bool,
        /// Print the unspecialized complex as JSON instead.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Identity and replay checks for the matrix-factorization calculus.
    MfVerify,
    /// The full check suite.
    Verify {
        /// Run only checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Fault {
    CorruptU0,
}

enum Failure {
    Usage(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read_diagram(path: &PathBuf) -> anyhow::Result<LinkDiagram> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    text.parse().map_err(|e| anyhow!("{e}"))
}

fn table_text(t: &HomologyTable) -> String {
    let rows: Vec<Vec<String>> = match &t.bigraded {
        Some(b) => std::iter::once(vec!["i".into(), "j".into(), "dim".into()])
            .chain(b.iter().map(|(&(i, j), d)| vec![i.to_string(), j.to_string(), d.to_string()]))
            .collect(),
        None => std::iter::once(vec!["i".into(), "dim".into()])
            .chain(t.totals.iter().map(|(i, d)| vec![i.to_string(), d.to_string()]))
            .collect(),
    };
    let widths: Vec<usize> = (0..rows[0].len()).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn cmd_bracket(input: &PathBuf, format: Format) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let b = skein::link_bracket(&d);
    match format {
        Format::Json => println!("{}", json!({ "bracket": b.to_string() })),
        _ => println!("{b}"),
    }
    Ok(())
}

fn cmd_homology(
    input: &PathBuf,
    spec: &str,
    all: bool,
    bigraded: bool,
    dump_complex: bool,
    format: Format,
) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    if dump_complex {
        println!("{}", serde_json::to_string_pretty(&cube::complex_of(&d).to_json()).expect("json"));
        return Ok(());
    }
    let results = if all {
        all_presets(&d, bigraded)
    } else {
        let s: Specialization = spec.parse().map_err(|e| anyhow!("{e}"))?;
        if bigraded && !s.is_graded() {
            return Err(anyhow!("--bigraded needs a = h = 0, got {s}").into());
        }
        let t = homology_dims(&specialize(&cube::complex_of(&d), &s), bigraded);
        vec![(s, t)]
    };
    let many = results.len() > 1;
    match format {
        Format::Json => {
            let v: Vec<_> = results
                .iter()
                .map(|(s, t)| json!({ "spec": s.name, "a": ukr::poly::fmt_rational(&s.a), "h": ukr::poly::fmt_rational(&s.h), "table": t }))
                .collect();
            let v = if many { json!(v) } else { v[0].clone() };
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        Format::Tsv | Format::Text => {
            for (k, (s, t)) in results.iter().enumerate() {
                if many {
                    if k > 0 {
                        println!();
                    }
                    println!("# {s}");
                }
                let body = if format == Format::Tsv { t.to_tsv() } else { table_text(t) };
                print!("{body}");
            }
        }
    }
    Ok(())
}

fn report(results: &[CheckResult], format: Format) -> Result<(), Failure> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(results).expect("json")),
        _ => {
            let w = results.iter().map(|r| r.name.len()).max().unwrap_or(0);
            for r in results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                println!("{tag} {:<w$}  {}", r.name, r.detail.replace('\n', " "));
            }
        }
    }
    if let Some(first) = results.iter().find(|r| !r.passed) {
        eprintln!("first failing check: {}", first.name);
        return Err(Failure::Verification);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(anyhow!("--jobs must be at least 1").into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("starting the worker pool")?;
    }
    match cli.command {
        Command::Bracket { input } => cmd_bracket(&input, cli.format.unwrap_or(Format::Text)),
        Command::Homology {
            input,
            spec,
            all,
            bigraded,
            dump_complex,
        } => cmd_homology(&input, &spec, all, bigraded, dump_complex, cli.format.unwrap_or(Format::Tsv)),
        Command::MfVerify => report(&verify::run(None, true, Faults::default()), cli.format.unwrap_or(Format::Text)),
        Command::Verify { filter, inject_fault } => {
            let faults = Faults {
                corrupt_u0: inject_fault == Some(Fault::CorruptU0),
            };
            let results = verify::run(filter.as_deref(), false, faults);
            if results.is_empty() {
                return Err(anyhow!("no check matches {:?}", filter.unwrap_or_default()).into());
            }
            report(&results, cli.format.unwrap_or(Format::Text))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
