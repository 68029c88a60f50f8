//! Command-line frontend: `hash`, `compare`, `attack` and `bench`.
//!
//! Exit codes: 0 success, 2 usage, 3 I/O, 4 unknown algorithm.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::attacks::{apply_attack, default_grid, parse_grid, AttackSpec};
use crate::bench::{
    default_thresholds, estimate_threshold, inter_test, intra_test, render_csv, render_markdown, render_roc_csv, roc,
    Corpus, DatasetManifest,
};
use crate::hashes::Algorithm;
use crate::raster::{load_image, save_image};
use crate::similarity::{correlation, DecisionThreshold};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_UNKNOWN_ALGORITHM: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "percepthash",
    version,
    about = "Perceptual image hashing and robustness benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hash one image and print `algorithm:length:values`.
    Hash(HashArgs),
    /// Correlation score between two images' hashes.
    Compare(CompareArgs),
    /// Apply one content-preserving operation to an image.
    Attack(AttackArgs),
    /// Run the intra-test over a corpus and write report tables.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct HashArgs {
    /// phash, ring, block or cslbp
    #[arg(long)]
    algo: String,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    algo: String,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    /// Decision threshold in (-1, 1); similar when S > T.
    #[arg(long, allow_hyphen_values = true)]
    threshold: Option<f64>,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Spec line, e.g. "rotation theta=5".
    #[arg(long)]
    spec: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["manifest", "synthetic"])))]
struct BenchArgs {
    /// Tab-separated `id<TAB>path` list.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Use N generated images instead of a manifest.
    #[arg(long)]
    synthetic: Option<usize>,
    /// Comma-separated algorithm names.
    #[arg(long, default_value = "phash,ring,block,cslbp")]
    algos: String,
    /// Attack manifest; defaults to the built-in 88-operation grid.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "out-csv")]
    out_csv: PathBuf,
    #[arg(long = "out-md")]
    out_md: Option<PathBuf>,
    /// Also run the inter-test and write the threshold sweep here.
    #[arg(long)]
    roc: Option<PathBuf>,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn parse_algorithm(name: &str) -> Result<Algorithm, Failure> {
    name.parse().map_err(|e: crate::hashes::UnknownAlgorithm| Failure {
        code: EXIT_UNKNOWN_ALGORITHM,
        message: e.to_string(),
    })
}

fn read(path: &PathBuf) -> Result<crate::raster::RasterImage, Failure> {
    load_image(path).map_err(|e| Failure::io(e.to_string()))
}

fn write_file(path: &PathBuf, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, text: &str) -> CmdResult {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| Failure::io(format!("stdout: {e}")))
}

fn cmd_hash(args: HashArgs, stdout: &mut dyn Write) -> CmdResult {
    let algorithm = parse_algorithm(&args.algo)?;
    let img = read(&args.input)?;
    let line = format!("{}\n", algorithm.hash(&img));
    match &args.out {
        Some(path) => write_file(path, &line),
        None => emit(stdout, &line),
    }
}

fn cmd_compare(args: CompareArgs, stdout: &mut dyn Write) -> CmdResult {
    let algorithm = parse_algorithm(&args.algo)?;
    let threshold = args
        .threshold
        .map(DecisionThreshold::new)
        .transpose()
        .map_err(|e| Failure::usage(e.to_string()))?;
    let a = algorithm.hash(&read(&args.a)?);
    let b = algorithm.hash(&read(&args.b)?);
    let s = correlation(&a, &b).map_err(|e| Failure::usage(e.to_string()))?;
    let mut text = format!("S={s}\n");
    if let Some(t) = threshold {
        text.push_str(&format!("similar={}\n", s.value() > t.value()));
    }
    emit(stdout, &text)
}

fn cmd_attack(args: AttackArgs) -> CmdResult {
    let spec: AttackSpec = args
        .spec
        .parse()
        .map_err(|e: crate::attacks::AttackError| Failure::usage(e.to_string()))?;
    let img = read(&args.input)?;
    let out = apply_attack(&img, &spec, args.seed).map_err(|e| Failure::usage(e.to_string()))?;
    save_image(&out, &args.out).map_err(|e| Failure::io(e.to_string()))
}

fn cmd_bench(args: BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let algorithms = args
        .algos
        .split(',')
        .map(|a| parse_algorithm(a.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = match &args.grid {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
            parse_grid(&text).map_err(|e| Failure::usage(e.to_string()))?
        }
        None => default_grid(),
    };
    let corpus = match (&args.manifest, args.synthetic) {
        (Some(path), _) => {
            let manifest = DatasetManifest::load(path).map_err(|e| Failure::io(e.to_string()))?;
            Corpus::from_manifest(&manifest)
        }
        (None, Some(n)) if n >= 2 => Corpus::synthetic(n, args.seed),
        (None, Some(n)) => return Err(Failure::usage(format!("--synthetic needs at least 2 images, got {n}"))),
        (None, None) => unreachable!("clap enforces the source group"),
    };
    for (id, err) in &corpus.failures {
        let _ = writeln!(stderr, "skipping {id}: {err}");
    }
    if corpus.images.is_empty() {
        return Err(Failure::io("no readable images in the manifest"));
    }

    let report = intra_test(&corpus, &algorithms, &grid, args.seed).map_err(|e| Failure::usage(e.to_string()))?;
    let markdown = render_markdown(&report);
    write_file(&args.out_csv, &render_csv(&report))?;
    if let Some(path) = &args.out_md {
        write_file(path, &markdown)?;
    }
    let _ = writeln!(
        stderr,
        "records={} images={} failures={} grid={}",
        report.records.len(),
        corpus.images.len(),
        report.failures.len(),
        report.grid.len()
    );

    if let Some(path) = &args.roc {
        let inter = inter_test(&corpus, &algorithms).map_err(|e| Failure::usage(e.to_string()))?;
        let mut curves = Vec::new();
        for &alg in &algorithms {
            let points = roc(&report.scores(alg, &[]), &inter.scores(alg), &default_thresholds())
                .map_err(|e| Failure::usage(e.to_string()))?;
            if let Some(best) = estimate_threshold(&points) {
                let _ = writeln!(
                    stderr,
                    "{alg}: best T={:.2} tpr={:.4} fpr={:.4}",
                    best.threshold, best.true_positive_rate, best.false_positive_rate
                );
            }
            curves.push((alg, points));
        }
        write_file(path, &render_roc_csv(&curves))?;
    }
    emit(stdout, &markdown)
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Hash(a) => cmd_hash(a, stdout),
        Command::Compare(a) => cmd_compare(a, stdout),
        Command::Attack(a) => cmd_attack(a),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
