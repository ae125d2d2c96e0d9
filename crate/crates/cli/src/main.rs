//! triedge: counting and minimising triangular edges from the command line.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;
use triedge::compress::{compress_with_trace, is_compressed, CompressionCheck};
use triedge::family::{construct, g_formula, t_formula, FormulaResult, Triple};
use triedge::graph::{classify, Graph};
use triedge::io;
use triedge::search::{
    brute_min_triangular, pareto_frontier, verify_range, SearchOptions, VerificationReport,
    DEFAULT_MAX_N, REPORT_CSV_HEADER,
};
use triedge::weighted::{check_good, reduce_to_triple_free, round_to_family, weighted_profile};
use triedge::WeightedGraph;

#[derive(Parser)]
#[command(name = "triedge", version, about = "triangular edge minimisation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    G6,
    El,
    Wg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    G6,
    El,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    G,
    T,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the edges of a graph and print e, t and the triangular count
    Count {
        /// Input file ("-" for stdin)
        file: String,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
    /// Construct G(a,b,c) and write it to stdout
    Construct {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value = "g6")]
        out: OutFormat,
    },
    /// Evaluate g(n,e) or t(n,e) with all optimising triples
    Formula {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: u64,
        #[arg(long, value_enum, default_value = "g")]
        kind: Kind,
    },
    /// Reduce a weighted graph until no independent triple remains
    Reduce {
        /// Weighted-graph file ("-" for stdin)
        file: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
    /// Compress a graph without decreasing e or t
    Compress {
        /// Input file ("-" for stdin)
        file: String,
        #[arg(long, value_enum, default_value = "g6")]
        out: OutFormat,
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
    /// Brute-force verification of the formula at small orders (CSV)
    Verify {
        #[arg(long)]
        n: usize,
        /// Verify a single edge count instead of the whole range
        #[arg(long)]
        e: Option<usize>,
        /// Worker count (0 = all cores); any value gives identical output
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write minimiser certificates (canonical graph6, one per line)
        #[arg(long)]
        certificates: Option<String>,
    },
    /// Pareto frontier of (e, t) over all n-vertex graphs (CSV)
    Frontier {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Formula values g(n,e) and t(n,e) for every e (CSV)
    Table {
        #[arg(long)]
        n: usize,
        /// Write to a file instead of stdout
        #[arg(long)]
        csv: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's help/version go to stdout with success.
            if err.use_stderr() {
                eprintln!("{err}");
                return ExitCode::from(1);
            }
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(file: &str) -> Result<String> {
    if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {file}"))
    }
}

fn detect_format(file: &str, explicit: Option<GraphFormat>) -> GraphFormat {
    if let Some(f) = explicit {
        return f;
    }
    match Path::new(file).extension().and_then(|e| e.to_str()) {
        Some("el") => GraphFormat::El,
        Some("wg") => GraphFormat::Wg,
        _ => GraphFormat::G6,
    }
}

fn load_graph(file: &str, explicit: Option<GraphFormat>) -> Result<Graph> {
    let text = read_input(file)?;
    match detect_format(file, explicit) {
        GraphFormat::G6 => Ok(io::from_graph6(&text)?),
        GraphFormat::El => Ok(io::from_edge_list(&text)?),
        GraphFormat::Wg => bail!("expected an unweighted graph, got weighted format"),
    }
}

fn load_weighted(file: &str, explicit: Option<GraphFormat>) -> Result<WeightedGraph> {
    let text = read_input(file)?;
    match detect_format(file, explicit) {
        GraphFormat::Wg => Ok(io::from_weighted_text(&text)?),
        GraphFormat::G6 => Ok(WeightedGraph::unit(io::from_graph6(&text)?)),
        GraphFormat::El => Ok(WeightedGraph::unit(io::from_edge_list(&text)?)),
    }
}

fn write_graph(g: &Graph, out: OutFormat) {
    match out {
        OutFormat::G6 => println!("{}", io::to_graph6(g)),
        OutFormat::El => print!("{}", io::to_edge_list(g)),
    }
}

fn format_result(n: usize, e: u64, r: &FormulaResult) -> String {
    let argmins = r
        .argmins
        .iter()
        .map(Triple::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("{}({},{})={} argmin={}", r.kind, n, e, r.value, argmins)
}

fn search_options(jobs: usize) -> SearchOptions {
    let max_n = std::env::var("TRIEDGE_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N);
    SearchOptions { jobs, max_n }
}

fn quoted_argmins(r: &FormulaResult) -> String {
    let joined = r
        .argmins
        .iter()
        .map(Triple::csv)
        .collect::<Vec<_>>()
        .join(";");
    format!("\"{joined}\"")
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count { file, format } => {
            let g = load_graph(&file, format)?;
            let c = classify(&g);
            println!("e={} t={} triangular={}", c.e(), c.t(), c.triangular.len());
        }
        Command::Construct { a, b, c, out } => {
            write_graph(&construct(&Triple { a, b, c }), out);
        }
        Command::Formula { n, e, kind } => {
            let r = match kind {
                Kind::G => g_formula(n, e)?,
                Kind::T => t_formula(n, e)?,
            };
            println!("{}", format_result(n, e, &r));
        }
        Command::Reduce { file, trace, format } => {
            let wg = load_weighted(&file, format)?;
            let (reduced, steps) = reduce_to_triple_free(&wg);
            if trace {
                for step in &steps {
                    println!("{step}");
                }
            }
            let p = weighted_profile(&reduced);
            let good = check_good(&reduced);
            let good_str = match &good {
                Some(d) => format!(
                    "good=yes K={{{}}} u={} v={}",
                    d.clique
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    d.u,
                    d.v
                ),
                None => "good=no".to_string(),
            };
            println!(
                "vertices={} total={} e={} t={} steps={} {}",
                reduced.order(),
                p.total,
                p.e,
                p.t,
                steps.len(),
                good_str
            );
            if good.is_some() {
                match round_to_family(&reduced) {
                    Ok(t) => println!("family a={} b={} c={}", t.a, t.b, t.c),
                    Err(e) => println!("family unavailable: {e}"),
                }
            }
        }
        Command::Compress {
            file,
            out,
            trace,
            format,
        } => {
            let g = load_graph(&file, format)?;
            let outcome = compress_with_trace(&g);
            if trace {
                for line in &outcome.trace {
                    eprintln!("{line}");
                }
                if let CompressionCheck::Compressed(cert) = is_compressed(&outcome.graph) {
                    eprintln!(
                        "checked_sets={} exhaustive={} weighted_order={}",
                        cert.checked_sets.len(),
                        cert.exhaustive,
                        outcome.weighted_order
                    );
                }
            }
            write_graph(&outcome.graph, out);
        }
        Command::Verify {
            n,
            e,
            jobs,
            certificates,
        } => {
            let opts = search_options(jobs);
            let reports: Vec<VerificationReport> = match e {
                Some(e) => vec![brute_min_triangular(n, e, &opts)?],
                None => verify_range(n, &opts)?,
            };
            println!("{REPORT_CSV_HEADER}");
            for r in &reports {
                println!("{}", r.csv_row());
            }
            if let Some(path) = certificates {
                let mut lines = String::new();
                for r in &reports {
                    for m in &r.minimizers {
                        lines.push_str(m);
                        lines.push('\n');
                    }
                }
                std::fs::write(&path, lines).with_context(|| format!("writing {path}"))?;
            }
            if reports.iter().any(|r| !r.matches) {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Frontier { n, jobs } => {
            let opts = search_options(jobs);
            println!("e,t,witness");
            for p in pareto_frontier(n, &opts)? {
                println!("{},{},{}", p.e, p.t, p.witness);
            }
        }
        Command::Table { n, csv } => {
            let mut out = String::from("n,e,kind,value,argmins\n");
            let quarter = (n * n / 4) as u64;
            let hi = (n * n.saturating_sub(1) / 2) as u64;
            for e in quarter + 1..=hi {
                let r = g_formula(n, e)?;
                out.push_str(&format!("{n},{e},g,{},{}\n", r.value, quoted_argmins(&r)));
            }
            for e in 0..=hi {
                let r = t_formula(n, e)?;
                out.push_str(&format!("{n},{e},t,{},{}\n", r.value, quoted_argmins(&r)));
            }
            match csv {
                Some(path) => {
                    std::fs::write(&path, out).with_context(|| format!("writing {path}"))?
                }
                None => print!("{out}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
