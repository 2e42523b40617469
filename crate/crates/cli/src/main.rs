use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planar_intervals::builder::{build_depth2, build_with, BuildOptions};
use planar_intervals::corpus::run_corpus;
use planar_intervals::decompose::{decompose_inner, Outer};
use planar_intervals::embedding::{is_four_connected, planar_embed, triangulate_induced, Triangulation};
use planar_intervals::format::{parse_graph, parse_graph_as, write_graph, GraphFormat};
use planar_intervals::generate::{gen_triangulation, GeneratorConfig};
use planar_intervals::render::{render, RenderFormat};
use planar_intervals::split::peel;
use planar_intervals::verify::{displayed, verify, Limits};
use planar_intervals::{Error, Graph, Representation};

/// Three-interval representations of planar graphs.
#[derive(Parser)]
#[command(name = "intrep", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a certified representation of a planar graph.
    Represent {
        /// Graph file, or `-` for stdin.
        input: String,
        /// Input format: auto, edges, g6 or json.
        #[arg(long, default_value = "auto")]
        format: String,
        /// Depth-2 construction (4-connected triangulations only).
        #[arg(long)]
        depth2: bool,
        /// Print a drawing (ascii or svg) instead of the JSON.
        #[arg(long)]
        render: Option<String>,
        /// Map endpoints onto consecutive even integers.
        #[arg(long)]
        normalize: bool,
        /// Write the representation JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a representation against a graph and print the report.
    Verify {
        graph: String,
        representation: String,
        #[arg(long, default_value = "auto")]
        format: String,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 3)]
        max_intervals: usize,
    },
    /// Decompose a 4-connected triangulation, or print a peeling schedule.
    Decompose {
        input: String,
        #[arg(long, default_value = "auto")]
        format: String,
        /// Print the peeling schedule of any planar graph instead.
        #[arg(long)]
        schedule: bool,
        /// Outer triangle labels `x,y,z`; must bound a face.
        #[arg(long)]
        outer: Option<String>,
    },
    /// Generate a seeded random triangulation.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        /// Output format: edges, g6 or json.
        #[arg(long, default_value = "edges")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a representation.
    Render {
        representation: String,
        /// ascii or svg.
        #[arg(long, default_value = "ascii")]
        render: String,
        /// Mark displayed vertex portions.
        #[arg(long)]
        highlight: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify the whole test corpus.
    Selftest {
        /// Number of generated triangulations.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Also check the display invariants after every step.
        #[arg(long)]
        trace: bool,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    /// Report already printed; exit as a verification failure.
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_NONPLANAR: u8 = 4;
const EXIT_VERIFY: u8 = 5;
const EXIT_SEARCH: u8 = 6;
const EXIT_INVALID: u8 = 7;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Graph6 { .. } | Error::Json(_) => EXIT_PARSE,
        Error::NonPlanar => EXIT_NONPLANAR,
        Error::Certification(_) | Error::InvariantViolation(_) => EXIT_VERIFY,
        Error::SearchExhausted(_) => EXIT_SEARCH,
        Error::SelfLoop(_)
        | Error::Validation(_)
        | Error::NotFourConnected(_)
        | Error::NoSeparator
        | Error::MinimalityViolation(_) => EXIT_INVALID,
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn read_graph(path: &str, format: &str) -> Result<Graph, Failure> {
    let source = read_source(path)?;
    Ok(match format {
        "auto" => parse_graph(&source)?,
        f => parse_graph_as(&source, f.parse()?)?,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => match io::stdout().write_all(text.as_bytes()) {
            // a closed pipe (`| head`) is not an error
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
            other => Ok(other?),
        },
    }
}

fn four_connected_triangulation(g: &Graph) -> Result<Triangulation, Failure> {
    let n = g.n();
    if n < 4 || g.m() != 3 * n - 6 {
        return Err(Error::Validation("input is not a triangulation on at least 4 vertices".into()).into());
    }
    let t = Triangulation::new(planar_embed(g)?, n)?;
    if !is_four_connected(g)? {
        let tri = planar_intervals::embedding::separating_triangle(g).unwrap_or([0, 0, 0]);
        return Err(Error::NotFourConnected(tri).into());
    }
    Ok(t)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Represent { input, format, depth2, render: style, normalize, out } => {
            let g = read_graph(&input, &format)?;
            let mut rep = if depth2 {
                build_depth2(&g)?
            } else {
                build_with(&g, &BuildOptions::default())?.representation
            };
            if normalize {
                rep = rep.normalize();
            }
            let report = verify(&rep, &g, None);
            eprintln!("OK depth={} max_intervals={}", report.depth, report.max_intervals_per_vertex);
            match style {
                Some(style) => {
                    let style: RenderFormat = style.parse()?;
                    if let Some(p) = &out {
                        emit(Some(p), &rep.to_json())?;
                    }
                    emit(None, &render(&rep, style, None))
                }
                None => emit(out.as_deref(), &rep.to_json()),
            }
        }
        Command::Verify { graph, representation, format, max_depth, max_intervals } => {
            let g = read_graph(&graph, &format)?;
            let rep = Representation::from_json(&read_source(&representation)?)?;
            let report = verify(&rep, &g, None);
            emit(None, &(report.to_json() + "\n"))?;
            let limits = Limits { max_intervals, max_depth };
            if report.passes(limits) {
                eprintln!("OK depth={} max_intervals={}", report.depth, report.max_intervals_per_vertex);
                Ok(())
            } else {
                Err(Failure::Rejected(report.failures(limits).join("\n")))
            }
        }
        Command::Decompose { input, format, schedule, outer } => {
            let g = read_graph(&input, &format)?;
            if schedule {
                let t = triangulate_induced(&planar_embed(&g)?)?;
                return emit(None, &(peel(&t)?.to_json() + "\n"));
            }
            let mut t = four_connected_triangulation(&g)?;
            let [x, y, z] = match outer {
                Some(arg) => {
                    let ids: Vec<usize> = arg
                        .split(',')
                        .map(|s| s.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| Error::Validation(format!("--outer expects x,y,z, got `{arg}`")))?;
                    let [x, y, z] = ids[..] else {
                        return Err(Error::Validation(format!("--outer expects three ids, got `{arg}`")).into());
                    };
                    let all: Vec<usize> = (0..g.n()).collect();
                    t = t.restrict(&all, [x, y, z])?.0;
                    [x, y, z]
                }
                None => t.outer(),
            };
            let d = decompose_inner(&t, Outer::new(x, y, z))?;
            emit(None, &(d.to_json(|v| v) + "\n"))
        }
        Command::Gen { seed, n, flips, format, out } => {
            let format: GraphFormat = format.parse()?;
            let t = gen_triangulation(GeneratorConfig { seed, n, flips })?;
            emit(out.as_deref(), &write_graph(t.graph(), format))
        }
        Command::Render { representation, render: style, highlight, out } => {
            let rep = Representation::from_json(&read_source(&representation)?)?;
            let shown = highlight.then(|| displayed(&rep));
            emit(out.as_deref(), &render(&rep, style.parse()?, shown.as_ref()))
        }
        Command::Selftest { count, trace } => {
            let results = run_corpus(count, trace)?;
            let mut failed = 0;
            let mut text = String::new();
            for r in &results {
                let status = if r.ok { "PASS" } else { "FAIL" };
                let detail = if r.ok { String::new() } else { format!(": {}", r.detail) };
                text.push_str(&format!("{status} {} ({:.1?}){detail}\n", r.name, r.elapsed));
                failed += usize::from(!r.ok);
            }
            text.push_str(&format!("{} of {} cases passed\n", results.len() - failed, results.len()));
            emit(None, &text)?;
            if failed > 0 {
                return Err(Failure::Rejected(format!("{failed} corpus cases failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
