//! Command-line front end: `gen`, `verify`, `classify`, `census`, `iso`.

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use atlas::autgroup::are_isomorphic;
use atlas::classify::{census, classify, verify_instance};
use atlas::families::{self, FamilyInstance};
use atlas::graph::to_graph6;
use atlas::predicates::DEFAULT_BUDGET;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "atlas", version, about = "Census, verifier and classifier for 2-arc-transitive bicirculants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Automorphisms a witness search may examine [default: $ATLAS_BUDGET or 2000000]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a family member
    Gen {
        family: String,
        params: Vec<String>,
    },
    /// Verify connectivity, 2-arc-transitivity and the bicirculant property
    Verify(Input),
    /// Classify a graph against the census of its order
    Classify(Input),
    /// Print the deduplicated census up to an order
    Census {
        #[arg(long)]
        max_vertices: usize,
    },
    /// Test two graphs for isomorphism
    Iso {
        #[arg(long = "g6", num_args = 1, required = true)]
        g6: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct Input {
    family: Option<String>,
    params: Vec<String>,
    /// Graph in graph6; read from stdin when no family is given either
    #[arg(long, conflicts_with = "family")]
    g6: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Graph6,
    Dot,
    Json,
}

#[derive(Serialize)]
struct GraphJson<'a> {
    family_id: &'a str,
    params: &'a [String],
    label: &'a str,
    order: usize,
    graph6: String,
    edges: Vec<(usize, usize)>,
    witness: Option<String>,
}

#[derive(Serialize)]
struct IsoJson {
    isomorphic: bool,
    mapping: Option<Vec<usize>>,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let mut text = String::new();
    let code = match execute(&cli, stdin, &mut text) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

fn budget(cli: &Cli) -> Result<u64, Failure> {
    if let Some(b) = cli.budget {
        return Ok(b);
    }
    match std::env::var("ATLAS_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| usage(format!("ATLAS_BUDGET must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut String) -> Result<i32, Failure> {
    match &cli.command {
        Command::Gen { family, params } => {
            let fi = families::build(family, params).map_err(usage)?;
            out.push_str(&render(&fi, cli.format)?);
            Ok(EXIT_OK)
        }
        Command::Verify(input) => {
            let fi = resolve(input, stdin)?;
            let entry = verify_instance(&fi, budget(cli)?);
            out.push_str(&json(&entry));
            Ok(if entry.verification.passed() { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Classify(input) => {
            let fi = resolve(input, stdin)?;
            let report = classify(&fi.graph, budget(cli)?);
            out.push_str(&json(&report));
            Ok(if report.matched().is_some() { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Census { max_vertices } => {
            let entries = census(*max_vertices, budget(cli)?).map_err(usage)?;
            out.push_str(&json(&entries));
            Ok(if entries.iter().all(|e| e.verification.passed()) { EXIT_OK } else { EXIT_REJECTED })
        }
        Command::Iso { g6 } => {
            let [a, b] = g6.as_slice() else {
                return Err(usage(format!("iso takes exactly two --g6 graphs, got {}", g6.len())));
            };
            let a = families::graph6_input(a).map_err(usage)?.graph;
            let b = families::graph6_input(b).map_err(usage)?.graph;
            let mapping = are_isomorphic(&a, &b).map(|p| p.images().to_vec());
            match cli.format {
                Format::Json => out.push_str(&json(&IsoJson { isomorphic: mapping.is_some(), mapping: mapping.clone() })),
                _ => match &mapping {
                    Some(m) => {
                        let pairs: Vec<String> = m.iter().enumerate().map(|(i, j)| format!("{i}->{j}")).collect();
                        out.push_str(&pairs.join(" "));
                        out.push('\n');
                    }
                    None => out.push_str("non-isomorphic\n"),
                },
            }
            Ok(if mapping.is_some() { EXIT_OK } else { EXIT_REJECTED })
        }
    }
}

fn resolve(input: &Input, stdin: &mut dyn BufRead) -> Result<FamilyInstance, Failure> {
    if let Some(s) = &input.g6 {
        return families::graph6_input(s).map_err(usage);
    }
    if let Some(family) = &input.family {
        return families::build(family, &input.params).map_err(usage);
    }
    let mut line = String::new();
    stdin.read_line(&mut line).map_err(|e| usage(format!("cannot read stdin: {e}")))?;
    if line.trim().is_empty() {
        return Err(usage("no input: give a family, --g6 S, or graph6 on stdin"));
    }
    families::graph6_input(&line).map_err(usage)
}

fn render(fi: &FamilyInstance, format: Format) -> Result<String, Failure> {
    let g6 = to_graph6(&fi.graph).map_err(usage)?;
    Ok(match format {
        Format::Graph6 => g6 + "\n",
        Format::Dot => fi.graph.to_dot(),
        Format::Json => json(&GraphJson {
            family_id: fi.family.name(),
            params: &fi.params,
            label: &fi.label,
            order: fi.graph.order(),
            graph6: g6,
            edges: fi.graph.edges().collect(),
            witness: fi.witness.as_ref().map(|p| p.to_string()),
        }),
    })
}

/// Runs the CLI against the process's standard streams.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    run(std::env::args_os(), &mut stdin, &mut stdout, &mut stderr)
}
