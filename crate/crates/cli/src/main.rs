use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use forcing_core::generators::{
    gen_complete_multipartite, gen_h_k, gen_knn_plus, gen_minimal_from_signature, gen_non_2_extendable,
    gen_random, LabeledGraph, Non2ExtFamily, Non2ExtOptions, PairSignature, Probability,
};
use forcing_core::report::{analyze, spectrum_csv, AnalysisRequest};
use forcing_core::verify::{select_blocks, verify_corpus, Corpus, VerifyOptions};
use forcing_core::{load_graph, write_graph, Error, Format, Graph, Limits};

/// Exact forcing numbers of perfect matchings.
///
/// Exit codes: 0 success, 1 parse error or invalid input, 2 no perfect
/// matching, 3 enumeration cap exceeded, 4 verification found a failing block.
#[derive(Parser)]
#[command(name = "forcing", version)]
struct Cli {
    /// Maximum perfect matchings enumerated per graph.
    #[arg(long, global = true, env = "FORCING_MATCHING_CAP")]
    matching_cap: Option<usize>,
    /// Maximum alternating cycles enumerated for a packing bound.
    #[arg(long, global = true, env = "FORCING_CYCLE_CAP")]
    cycle_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one graph. With no section flags, --profile is implied.
    Analyze(AnalyzeArgs),
    /// Print one graph from a generator family.
    Generate(GenerateArgs),
    /// Check the structural theorems over a corpus and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// graph6 or edge-list; detected from the first line when absent.
    #[arg(long)]
    format: Option<Format>,
    /// Forcing number of every perfect matching, plus classification.
    #[arg(long)]
    profile: bool,
    /// Minimum-forcing classification.
    #[arg(long)]
    classify: bool,
    /// Extendability predicates and witnesses.
    #[arg(long)]
    extend: bool,
    /// 2-switch graph summary.
    #[arg(long)]
    switch: bool,
    /// Print the spectrum as CSV instead of JSON (implies --profile).
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct GenerateArgs {
    /// Output format.
    #[arg(long, global = true, default_value = "graph6")]
    output: Format,
    #[command(subcommand)]
    family: Family,
}

#[derive(Subcommand)]
enum Family {
    /// Complete multipartite graph.
    Multipartite {
        /// Part sizes, e.g. 2,2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// K_(n,n) on sides 0..n and n..2n plus edges inside the second side.
    Knnplus {
        #[arg(long)]
        n: usize,
        /// Extra edges such as 3-4,4-5.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        extra: Vec<(usize, usize)>,
    },
    /// Minimal graph with k parallel pairs.
    Hk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Minimal graph from a pair signature: listed pairs parallel, others crossed.
    Signature {
        #[arg(long)]
        n: usize,
        /// Parallel matching-edge pairs such as 0-1,2-3.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        parallel: Vec<(usize, usize)>,
    },
    /// 1-extendable but not 2-extendable graph with maximum forcing n-1.
    Non2ext {
        /// `i` (triangle) or `ii` (pendant).
        #[arg(long = "case")]
        family: Non2ExtFamily,
        #[arg(long)]
        n: usize,
        /// Triangle positions such as 0,1,2.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        triangle: Option<Vec<usize>>,
        /// u-side edges as position pairs such as 0-1,2-3.
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        u_edges: Option<Vec<(usize, usize)>>,
        /// Positions i,j of the edges v_i v_last and v_j u_last.
        #[arg(long, value_delimiter = ',')]
        partners: Option<Vec<usize>>,
    },
    /// Seeded random graph.
    Random {
        #[arg(long)]
        order: usize,
        /// Edge probability as a/b or a decimal.
        #[arg(long, default_value = "1/2")]
        p: Probability,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in corpus (exhaustive-N, families-10, random-8, random-8:COUNT)
    /// or a graph6 file with one graph per line.
    #[arg(long, default_value = "exhaustive-6")]
    corpus: String,
    /// `all` or a comma-separated list of block ids.
    #[arg(long, default_value = "all")]
    theorems: String,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Add summed per-block compute time to the report.
    #[arg(long)]
    timings: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['-', ':'])
        .ok_or_else(|| format!("expected a pair like 0-1, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
    Ok((a, b))
}

enum Failure {
    Core(Error),
    Input(String),
    VerificationFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(Error::NoPerfectMatching) => 2,
            Failure::Core(Error::MatchingOverflow { .. } | Error::CycleOverflow { .. }) => 3,
            Failure::Core(_) | Failure::Input(_) => 1,
            Failure::VerificationFailed => 4,
        }
    }
}

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(cap) = cli.matching_cap {
        l.matching_cap = cap;
    }
    if let Some(cap) = cli.cycle_cap {
        l.cycle_cap = cap;
    }
    l
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Edge lists start with a two-number header; graph6 lines have no spaces.
fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().count() > 1 {
        Format::EdgeList
    } else {
        Format::Graph6
    }
}

fn cmd_analyze(args: &AnalyzeArgs, limits: &Limits) -> Result<String, Failure> {
    let text = read_input(args.input.as_ref())?;
    let format = args.format.unwrap_or_else(|| detect_format(&text));
    let g = load_graph(&text, format)?;
    let mut req = AnalysisRequest {
        profile: args.profile || args.csv,
        classify: args.classify,
        extend: args.extend,
        switch: args.switch,
    };
    if req == AnalysisRequest::default() {
        req.profile = true;
    }
    let report = analyze(&g, &req, limits)?;
    if args.csv {
        Ok(spectrum_csv(report.profile.as_ref().expect("profile requested")))
    } else {
        Ok(report.to_json() + "\n")
    }
}

fn generate(family: &Family) -> Result<(Graph, Option<LabeledGraph>), Error> {
    let labeled = |lg: LabeledGraph| (lg.graph.clone(), Some(lg));
    Ok(match family {
        Family::Multipartite { sizes } => (gen_complete_multipartite(sizes)?, None),
        Family::Knnplus { n, extra } => (gen_knn_plus(*n, extra)?, None),
        Family::Hk { n, k } => labeled(gen_h_k(*n, *k)?),
        Family::Signature { n, parallel } => labeled(gen_minimal_from_signature(&PairSignature::with_parallel(
            *n, parallel,
        )?)?),
        Family::Non2ext {
            family,
            n,
            triangle,
            u_edges,
            partners,
        } => {
            let triangle = match triangle.as_deref() {
                None => None,
                Some(&[a, b, c]) => Some([a, b, c]),
                Some(_) => return Err(Error::Domain("--triangle takes exactly three positions".into())),
            };
            let partners = match partners.as_deref() {
                None => None,
                Some(&[i, j]) => Some((i, j)),
                Some(_) => return Err(Error::Domain("--partners takes exactly two positions".into())),
            };
            let opts = Non2ExtOptions {
                triangle,
                u_edges: u_edges.clone(),
                partners,
            };
            labeled(gen_non_2_extendable(*family, *n, &opts)?)
        }
        Family::Random { order, p, seed } => (gen_random(*order, *p, *seed)?, None),
    })
}

fn cmd_generate(args: &GenerateArgs) -> Result<String, Failure> {
    let (g, labeled) = generate(&args.family)?;
    let mut out = String::new();
    if let Some(lg) = labeled {
        out.push_str(&format!("# m0: {}\n", lg.m0));
    }
    out.push_str(&write_graph(&g, args.output)?);
    Ok(out)
}

fn cmd_verify(args: &VerifyArgs, limits: &Limits) -> Result<(String, bool), Failure> {
    let corpus = match Corpus::builtin(&args.corpus) {
        Some(c) => c?,
        None => {
            let text = std::fs::read_to_string(&args.corpus)
                .map_err(|e| Failure::Input(format!("cannot read corpus {}: {e}", args.corpus)))?;
            Corpus::from_graph6(&args.corpus, &text)?
        }
    };
    let blocks = select_blocks(&args.theorems)?;
    let opts = VerifyOptions {
        workers: args.workers,
        timings: args.timings,
        limits: *limits,
    };
    let report = verify_corpus(&corpus, &blocks, &opts)?;
    Ok((report.to_json() + "\n", report.all_passed()))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limits = limits(cli);
    match &cli.command {
        Command::Analyze(args) => cmd_analyze(args, &limits),
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => {
            let (text, passed) = cmd_verify(args, &limits)?;
            print!("{text}");
            if passed {
                Ok(String::new())
            } else {
                Err(Failure::VerificationFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(text) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::VerificationFailed => eprintln!("verification failed"),
            }
            ExitCode::from(f.code())
        }
    }
}
