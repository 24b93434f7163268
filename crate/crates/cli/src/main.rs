use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use kldesign::bench::{run_bench, BenchConfig};
use kldesign::design::to_csv_string;
use kldesign::entropy::{bandwidth, entropy_mc, entropy_nn, KernelSpec};
use kldesign::{evaluate_all, generate, read_design, write_design, Design64, GeneratorSpec, Method, OptimizerConfig, SeededRng};

#[derive(Parser)]
#[command(name = "kldesign", version, about = "Entropy-maximizing space-filling designs in the unit hypercube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a design and write it as CSV.
    Generate(GenerateArgs),
    /// Print the quality criteria of a design file.
    Eval(EvalArgs),
    /// Print an entropy estimate for a design file.
    Entropy(EntropyArgs),
    /// Replicated comparison of generators.
    Bench(BenchArgs),
}

fn method_parser() -> impl clap::builder::TypedValueParser<Value = Method> {
    PossibleValuesParser::new(Method::ALL.map(Method::name)).map(|s| s.parse::<Method>().expect("listed name"))
}

#[derive(clap::Args)]
struct OptimizerArgs {
    /// Independent restarts of the exchange algorithm [default: 5].
    #[arg(long)]
    restarts: Option<usize>,
    /// Maximum number of tested exchanges [default: 1000 d].
    #[arg(long)]
    max_proposals: Option<usize>,
    /// Stop after this many consecutive rejected exchanges [default: 100 d].
    #[arg(long)]
    max_stale: Option<usize>,
}

impl OptimizerArgs {
    fn any(&self) -> bool {
        self.restarts.is_some() || self.max_proposals.is_some() || self.max_stale.is_some()
    }

    fn config(&self, d: usize, seed: u64) -> OptimizerConfig {
        let mut c = OptimizerConfig::for_dim(d, seed);
        if let Some(r) = self.restarts {
            c.restarts = r;
        }
        if let Some(p) = self.max_proposals {
            c.max_proposals = p;
        }
        if let Some(s) = self.max_stale {
            c.max_consecutive_rejects = s;
        }
        c
    }

    fn check(&self) -> Result<(), String> {
        for (name, v) in [
            ("--restarts", self.restarts),
            ("--max-proposals", self.max_proposals),
            ("--max-stale", self.max_stale),
        ] {
            if v == Some(0) {
                return Err(format!("{name} must be at least 1"));
            }
        }
        Ok(())
    }
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_parser = method_parser())]
    method: Method,
    /// Number of points [default: 10 d].
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    optimizer: OptimizerArgs,
    /// Output design file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace of the best restart (optimized methods only).
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct EvalArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    McGauss,
    McEpan,
    Nn,
}

fn positive_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("bandwidth must be positive, got {s}"))
    }
}

#[derive(clap::Args)]
struct EntropyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    estimator: Estimator,
    /// Kernel bandwidth [default: n^(-1/(d+4)) / sqrt(12)].
    #[arg(long, value_parser = positive_real)]
    bandwidth: Option<f64>,
    /// Seed for the Monte-Carlo Epanechnikov constant (d >= 4).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Comma-separated methods.
    #[arg(long, value_delimiter = ',', required = true, value_parser = method_parser())]
    methods: Vec<Method>,
    /// Number of points [default: 10 d].
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 20)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    optimizer: OptimizerArgs,
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn check_size(n: usize, d: usize) {
    if d < 1 {
        usage_error(ErrorKind::ValueValidation, "--d must be at least 1");
    }
    if n < 2 {
        usage_error(ErrorKind::ValueValidation, "--n must be at least 2");
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), String> {
    let n = args.n.unwrap_or(10 * args.d);
    check_size(n, args.d);
    if !args.method.is_optimized() && (args.optimizer.any() || args.trace.is_some()) {
        usage_error(
            ErrorKind::ArgumentConflict,
            format!("--restarts/--max-proposals/--max-stale/--trace only apply to mcgauss, ppv and maximin, not {}", args.method),
        );
    }
    if let Err(msg) = args.optimizer.check() {
        usage_error(ErrorKind::ValueValidation, msg);
    }
    let spec = GeneratorSpec {
        method: args.method,
        n,
        d: args.d,
        seed: args.seed,
        optimizer: args.optimizer.config(args.d, args.seed),
    };
    let generated = generate::<f64>(&spec).map_err(|e| e.to_string())?;
    match &args.out {
        Some(path) => write_design(&generated.design, path).map_err(|e| e.to_string())?,
        None => print!("{}", to_csv_string(&generated.design)),
    }
    if let (Some(path), Some(run)) = (&args.trace, &generated.run) {
        run.traces[run.best_restart].write_csv(path).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<Design64, String> {
    read_design(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_eval(args: EvalArgs) -> Result<(), String> {
    let design = load(&args.input)?;
    let report = evaluate_all(&design).map_err(|e| e.to_string())?;
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?),
        Format::Csv => {
            println!("{}", kldesign::CriteriaReport64::CSV_HEADER);
            println!("{}", report.to_csv_row());
        }
    }
    Ok(())
}

fn cmd_entropy(args: EntropyArgs) -> Result<(), String> {
    let design = load(&args.input)?;
    let (n, d) = (design.n(), design.d());
    let h = match args.bandwidth {
        Some(h) => h,
        None => bandwidth(n, d).map_err(|e| e.to_string())?,
    };
    let value = match args.estimator {
        Estimator::Nn => entropy_nn(&design).map(|r| r.0),
        Estimator::McGauss => KernelSpec::gaussian(d, h).and_then(|k| entropy_mc(&design, &k)).map(|r| r.0),
        Estimator::McEpan => {
            let mut rng = SeededRng::new(args.seed, 0);
            KernelSpec::epanechnikov_spherical(d, h, &mut rng)
                .and_then(|k| entropy_mc(&design, &k))
                .map(|r| r.0)
        }
    }
    .map_err(|e| e.to_string())?;
    println!("{value:.6}");
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), String> {
    let n = args.n.unwrap_or(10 * args.d);
    check_size(n, args.d);
    if args.reps == 0 {
        usage_error(ErrorKind::ValueValidation, "--reps must be at least 1");
    }
    if let Err(msg) = args.optimizer.check() {
        usage_error(ErrorKind::ValueValidation, msg);
    }
    let mut config = BenchConfig::new(args.methods, n, args.d, args.reps, args.seed);
    config.optimizer = args.optimizer.config(args.d, args.seed);
    let report = run_bench(&config).map_err(|e| e.to_string())?;
    report.write(&args.out_dir).map_err(|e| e.to_string())?;
    print!("{}", report.summary_csv());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Entropy(a) => cmd_entropy(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
