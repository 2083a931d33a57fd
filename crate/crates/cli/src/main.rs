//! `depsyn`: treebank analysis, CoNLL-U conversion, tree generation, baselines
//! and isomorphism checks from the command line.
//!
//! Exit status: 0 on success, 1 on I/O or data errors, 2 on usage errors,
//! 3 when `isomorphic` finds a pair of non-isomorphic trees.

use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use depsyn::baselines::{
    estimate_over_arrangements, estimate_over_trees, EstimationMode, EstimationResult,
};
use depsyn::conllu::{convert, PreprocessOptions};
use depsyn::generate::{
    exhaustive_trees, random_tree, seeded_rng, Constraint, GeneratedTree, TreeKind,
};
use depsyn::io::{
    feature_names, process_collection, process_treebank, read_head_vectors, CollectionOutput,
    ErrorPolicy, FeatureSpec, ProcessOptions, ProcessingReport, RationalFormat,
};
use depsyn::linarr::{
    min_sum_edge_lengths_planar, min_sum_edge_lengths_projective,
    min_sum_edge_lengths_unconstrained, DminPlanar, DminProjective, DminUnconstrained,
    MinArrangementResult,
};
use depsyn::properties::{expected_num_crossings, expected_sum_edge_lengths};
use depsyn::utilities::{are_isomorphic, IsomorphismMode};
use depsyn::{HeadVector, Tree};

const EXIT_IO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_ISOMORPHIC: u8 = 3;

#[derive(Parser)]
#[command(name = "depsyn", version, about, propagate_version = true)]
struct Cli {
    /// Worker threads (default: all available cores). 1 runs sequentially.
    #[arg(long, global = true, env = "DEPSYN_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute per-sentence features of a head-vector treebank into a CSV file.
    Analyze {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        common: AnalysisArgs,
    },
    /// Analyze every treebank listed in a collection file.
    Collection {
        list: PathBuf,
        /// Write one `<name>.csv` per treebank into this directory.
        #[arg(
            long,
            conflicts_with = "merge_out",
            required_unless_present = "merge_out"
        )]
        outdir: Option<PathBuf>,
        /// Write a single CSV with a leading `treebank` column.
        #[arg(long)]
        merge_out: Option<PathBuf>,
        #[command(flatten)]
        common: AnalysisArgs,
    },
    /// Convert CoNLL-U into head vectors, one sentence per line.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        remove_punct: bool,
        #[arg(long)]
        remove_function_words: bool,
        /// Comma-separated UPOS tags counted as function words.
        #[arg(long, value_delimiter = ',')]
        function_upos: Option<Vec<String>>,
        #[arg(long)]
        min_len: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Print trees: head vectors for rooted kinds, edge lists (`u-v ...`) for free kinds.
    Generate {
        #[arg(long, value_parser = parse_kind)]
        kind: TreeKind,
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Every tree of the kind.
        #[arg(long, conflicts_with_all = ["count", "seed"], required_unless_present = "count")]
        exhaustive: bool,
        /// Number of uniformly random trees.
        #[arg(long)]
        count: Option<u64>,
        /// Seed for random trees; drawn from system entropy and reported on stderr if absent.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Minima, closed-form expectations, or estimates of a metric.
    Baseline(BaselineArgs),
    /// Compare the trees on corresponding lines of two head-vector files.
    Isomorphic {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Free)]
        mode: Mode,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    /// Comma-separated feature names (default: every default feature).
    #[arg(long, value_parser = parse_features)]
    features: Option<FeatureSpec>,
    #[arg(long, value_enum, default_value_t = Policy::FailFast)]
    policy: Policy,
    /// Print ratios as exact `p/q` instead of decimals.
    #[arg(long)]
    exact_rationals: bool,
}

#[derive(Args)]
struct BaselineArgs {
    /// Head vector of the tree, e.g. "0 1 1".
    #[arg(long, value_parser = parse_head_vector)]
    tree: Option<HeadVector>,
    #[arg(long, value_enum)]
    what: What,
    /// Metric to estimate (with `--what estimate`).
    #[arg(long, required_if_eq("what", "estimate"))]
    metric: Option<String>,
    /// Arrangement ensemble for `estimate` over a tree's arrangements.
    #[arg(long, default_value = "unconstrained", value_parser = parse_constraint)]
    constraint: Constraint,
    /// Estimate over all trees of this kind instead of one tree's arrangements.
    #[arg(long, value_parser = parse_kind, requires = "n", conflicts_with = "tree")]
    kind: Option<TreeKind>,
    #[arg(short)]
    n: Option<usize>,
    /// Monte Carlo sample count; exact enumeration if absent.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Policy {
    FailFast,
    Skip,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rooted,
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[allow(non_camel_case_types)]
#[value(rename_all = "verbatim")]
enum What {
    Dmin_unconstrained,
    Dmin_planar,
    Dmin_projective,
    ED_unconstrained,
    EC_unconstrained,
    #[value(name = "estimate")]
    Estimate,
}

fn parse_kind(s: &str) -> Result<TreeKind, String> {
    s.parse()
}

fn parse_constraint(s: &str) -> Result<Constraint, String> {
    s.parse()
}

fn parse_head_vector(s: &str) -> Result<HeadVector, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_features(s: &str) -> Result<FeatureSpec, String> {
    s.parse().map_err(|e| {
        let names: Vec<&str> = feature_names().collect();
        format!("{e}; registered features: {}", names.join(", "))
    })
}

/// A failure and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_IO,
        message: e.to_string(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(EXIT_IO);
        }
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Analyze {
            input,
            output,
            common,
        } => {
            let (features, options) = common.resolve();
            let report =
                process_treebank(&input, &output, &features, &options).map_err(io_failure)?;
            print_report(&report);
            Ok(0)
        }
        Command::Collection {
            list,
            outdir,
            merge_out,
            common,
        } => {
            let (features, options) = common.resolve();
            let target = match (outdir, merge_out) {
                (Some(dir), None) => CollectionOutput::Directory(dir),
                (None, Some(file)) => CollectionOutput::Merged(file),
                _ => return Err(usage("give exactly one of --outdir and --merge-out")),
            };
            let report =
                process_collection(&list, &target, &features, &options).map_err(io_failure)?;
            eprintln!("{} treebanks processed", report.treebanks.len());
            for r in &report.treebanks {
                print_report(r);
            }
            for m in &report.missing {
                eprintln!("missing treebank: {}", m.display());
            }
            Ok(0)
        }
        Command::Convert {
            input,
            output,
            remove_punct,
            remove_function_words,
            function_upos,
            min_len,
            max_len,
        } => {
            let mut opts = PreprocessOptions {
                remove_punct,
                remove_function_words,
                min_len,
                max_len,
                ..Default::default()
            };
            if let Some(tags) = function_upos {
                opts.function_upos = tags;
            }
            opts.validate().map_err(|e| usage(e.to_string()))?;
            let report = convert(&input, &output, &opts).map_err(io_failure)?;
            eprintln!(
                "{} sentences: {} written, {} filtered, {} errors",
                report.sentences,
                report.written,
                report.filtered,
                report.errors.len()
            );
            for e in &report.errors {
                eprintln!("  {e}");
            }
            Ok(0)
        }
        Command::Generate {
            kind,
            n,
            exhaustive,
            count,
            seed,
        } => generate(kind, n as usize, exhaustive, count, seed),
        Command::Baseline(args) => baseline(args),
        Command::Isomorphic { a, b, mode } => isomorphic(&a, &b, mode),
    }
}

impl AnalysisArgs {
    fn resolve(self) -> (FeatureSpec, ProcessOptions) {
        let options = ProcessOptions {
            policy: match self.policy {
                Policy::FailFast => ErrorPolicy::FailFast,
                Policy::Skip => ErrorPolicy::SkipAndReport,
            },
            rationals: if self.exact_rationals {
                RationalFormat::Exact
            } else {
                RationalFormat::Decimal
            },
            threads: None,
        };
        (
            self.features.unwrap_or_else(FeatureSpec::default_set),
            options,
        )
    }
}

fn print_report(r: &ProcessingReport) {
    eprintln!(
        "{}: {} sentences processed, {} skipped in {:.3}s -> {}",
        r.input.display(),
        r.processed,
        r.skipped.len(),
        r.elapsed.as_secs_f64(),
        r.output.display()
    );
    for s in &r.skipped {
        eprintln!("  line {}: {}", s.line, s.reason);
    }
}

fn write_tree(out: &mut impl Write, t: &GeneratedTree) -> io::Result<()> {
    match t {
        GeneratedTree::Rooted(r) => writeln!(out, "{}", r.to_head_vector()),
        GeneratedTree::Free(f) => {
            let edges: Vec<String> = f.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
            writeln!(out, "{}", edges.join(" "))
        }
    }
}

fn generate(
    kind: TreeKind,
    n: usize,
    exhaustive: bool,
    count: Option<u64>,
    seed: Option<u64>,
) -> Result<u8, Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if exhaustive {
        for t in exhaustive_trees(kind, n) {
            write_tree(&mut out, &t).map_err(io_failure)?;
        }
    } else {
        let count = count.ok_or_else(|| usage("give --exhaustive or --count"))?;
        let seed = seed.unwrap_or_else(|| {
            let s = rand::random();
            eprintln!("seed: {s}");
            s
        });
        let mut rng = seeded_rng(seed);
        for _ in 0..count {
            write_tree(&mut out, &random_tree(kind, n, &mut rng)).map_err(io_failure)?;
        }
    }
    out.flush().map_err(io_failure)?;
    Ok(0)
}

fn print_minimum(r: &MinArrangementResult) {
    println!("{}", r.value);
    let positions: Vec<String> = r
        .arrangement
        .positions()
        .iter()
        .map(|p| p.to_string())
        .collect();
    println!("{}", positions.join(" "));
}

fn print_estimate(r: &EstimationResult) {
    println!("mean {}", r.mean);
    println!("variance {}", r.variance);
    if let Some(se) = r.std_error {
        println!("std_error {se}");
    }
    println!("samples {}", r.samples);
}

fn baseline(args: BaselineArgs) -> Result<u8, Failure> {
    let metric_error = |e: depsyn::MetricError| usage(e.to_string());
    if args.what == What::Estimate {
        let metric = args.metric.as_deref().expect("required by clap");
        if let Some(kind) = args.kind {
            let n = args.n.expect("required by clap");
            if n == 0 {
                return Err(usage("-n must be at least 1"));
            }
            let mode = match args.samples {
                Some(samples) => EstimationMode::MonteCarlo {
                    samples,
                    seed: args.seed,
                },
                None => EstimationMode::exact_trees(),
            };
            print_estimate(&estimate_over_trees(kind, n, metric, mode).map_err(metric_error)?);
            return Ok(0);
        }
        let hv = args
            .tree
            .ok_or_else(|| usage("give --tree or --kind with -n"))?;
        let mode = match args.samples {
            Some(samples) => EstimationMode::MonteCarlo {
                samples,
                seed: args.seed,
            },
            None => EstimationMode::exact_arrangements(),
        };
        let t = hv.to_tree();
        let r =
            estimate_over_arrangements(&t, metric, args.constraint, mode).map_err(metric_error)?;
        print_estimate(&r);
        return Ok(0);
    }
    let hv = args.tree.ok_or_else(|| usage("--tree is required"))?;
    let t = hv.to_tree();
    match args.what {
        What::Dmin_unconstrained => print_minimum(
            &min_sum_edge_lengths_unconstrained(t.as_free(), DminUnconstrained::Chung2)
                .map_err(metric_error)?,
        ),
        What::Dmin_planar => print_minimum(
            &min_sum_edge_lengths_planar(t.as_free(), DminPlanar::HsAlemany)
                .map_err(metric_error)?,
        ),
        What::Dmin_projective => print_minimum(
            &min_sum_edge_lengths_projective(&t, DminProjective::GtAlemany)
                .map_err(metric_error)?,
        ),
        What::ED_unconstrained => {
            println!("{}", expected_sum_edge_lengths(&t).map_err(metric_error)?)
        }
        What::EC_unconstrained => println!("{}", expected_num_crossings(&t).map_err(metric_error)?),
        What::Estimate => unreachable!("handled above"),
    }
    Ok(0)
}

fn read_all(path: &Path) -> Result<Vec<HeadVector>, Failure> {
    read_head_vectors(path, ErrorPolicy::FailFast)
        .map_err(io_failure)?
        .map(|r| r.map(|rec| rec.head_vector.expect("fail-fast yields valid vectors")))
        .collect::<Result<_, _>>()
        .map_err(io_failure)
}

fn isomorphic(a: &Path, b: &Path, mode: Mode) -> Result<u8, Failure> {
    let xs = read_all(a)?;
    let ys = read_all(b)?;
    if xs.len() != ys.len() {
        return Err(io_failure(format!(
            "{} has {} trees but {} has {}",
            a.display(),
            xs.len(),
            b.display(),
            ys.len()
        )));
    }
    let mode = match mode {
        Mode::Rooted => IsomorphismMode::Rooted,
        Mode::Free => IsomorphismMode::Free,
    };
    let mut all = true;
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        let same = are_isomorphic(&x.to_tree(), &y.to_tree(), mode);
        all &= same;
        println!("{}\t{}", i + 1, same);
    }
    Ok(if all { 0 } else { EXIT_NOT_ISOMORPHIC })
}
