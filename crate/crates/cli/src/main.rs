use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirac_cli::{execute, Command, JobSpec, OutputFormat, EXIT_ERROR};

#[derive(Parser)]
#[command(name = "dirac-kernel", version, about = "Exact kernels of cubic and noncubic Dirac operators")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Print the job specification as JSON instead of running it.
    #[arg(long, global = true)]
    print_job: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct WeightArgs {
    /// Root system code such as A3, B2, G2, F4.
    root_system: String,
    /// Comma-separated rationals in ε-coordinates.
    #[arg(allow_hyphen_values = true)]
    weight: String,
    /// Read the weight as coefficients of fundamental weights.
    #[arg(long)]
    fundamental: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weights of an irreducible module with multiplicities.
    Weights(WeightArgs),
    /// Weights of the spin module.
    SpinWeights {
        root_system: String,
        /// `;`-separated roots generating the root system of h.
        #[arg(long, allow_hyphen_values = true)]
        subalgebra: Option<String>,
        #[arg(long)]
        dominant_only: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Kernel of D^t on V ⊗ S.
    Kernel {
        #[command(flatten)]
        w: WeightArgs,
        /// cubic, noncubic or t=<rational>.
        #[arg(long, default_value = "cubic")]
        operator: String,
        #[arg(long, allow_hyphen_values = true)]
        subalgebra: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
        /// a-lambda or property-star.
        #[arg(long)]
        method: Option<String>,
        /// Use the property-(*) count without verifying the hypothesis.
        #[arg(long)]
        assume_property_star: bool,
    },
    /// Kernel dimensions for standard modules of a classical family.
    DimsTable {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
        #[arg(long)]
        min_rank: Option<usize>,
    },
    /// Dominant spin weights of B3 inside F4.
    F4Table,
    /// Matrix-oracle verifications.
    Oracle {
        #[command(subcommand)]
        action: OracleCmd,
    },
    /// Multiplicities in kernels of geometric Dirac operators on G/H.
    Geom {
        #[command(flatten)]
        w: WeightArgs,
        /// cubic or noncubic.
        #[arg(long, default_value = "cubic")]
        operator: String,
        #[arg(long, allow_hyphen_values = true)]
        subalgebra: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a job specification read from a JSON file, or stdin for `-`.
    RunJob { path: String },
}

#[derive(Subcommand)]
enum OracleCmd {
    Verify {
        /// table1, nonpolyn, square-identity, t-family, intersection or weyl-probe.
        case: String,
    },
}

fn job_from(cmd: Cmd, format: OutputFormat) -> Result<JobSpec, String> {
    let base = |c, rs: &str| JobSpec::new(c, rs, format);
    Ok(match cmd {
        Cmd::Weights(w) => base(Command::Weights, &w.root_system).with("lambda", w.weight).with_flag("fundamental", w.fundamental),
        Cmd::SpinWeights { root_system, subalgebra, dominant_only, budget } => base(Command::SpinWeights, &root_system)
            .with_opt("subalgebra", subalgebra)
            .with_flag("dominant_only", dominant_only)
            .with_opt("budget", budget.map(|b| b.to_string())),
        Cmd::Kernel { w, operator, subalgebra, budget, method, assume_property_star } => base(Command::Kernel, &w.root_system)
            .with("lambda", w.weight)
            .with_flag("fundamental", w.fundamental)
            .with("operator", operator)
            .with_opt("subalgebra", subalgebra)
            .with_opt("budget", budget.map(|b| b.to_string()))
            .with_opt("method", method)
            .with_flag("assume_property_star", assume_property_star),
        Cmd::DimsTable { family, max_rank, min_rank } => base(Command::DimsTable, &family)
            .with("family", family.clone())
            .with("max_rank", max_rank.to_string())
            .with_opt("min_rank", min_rank.map(|r| r.to_string())),
        Cmd::F4Table => base(Command::F4Table, "F4"),
        Cmd::Oracle { action: OracleCmd::Verify { case } } => base(Command::OracleVerify, "").with("case", case),
        Cmd::Geom { w, operator, subalgebra, budget } => base(Command::Geom, &w.root_system)
            .with("mu", w.weight)
            .with_flag("fundamental", w.fundamental)
            .with("operator", operator)
            .with_opt("subalgebra", subalgebra)
            .with_opt("budget", budget.map(|b| b.to_string())),
        Cmd::RunJob { path } => {
            let mut text = String::new();
            if path == "-" {
                std::io::stdin().read_to_string(&mut text).map_err(|e| format!("reading stdin: {e}"))?;
            } else {
                text = std::fs::read_to_string(&path).map_err(|e| format!("reading {path}: {e}"))?;
            }
            serde_json::from_str(&text).map_err(|e| format!("invalid job specification: {e}"))?
        }
    })
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("DIRAC_KERNEL_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        format!("DIRAC_KERNEL_THREADS={v:?} is not a positive integer")
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn usage_failure(msg: &str) -> ExitCode {
    let body = serde_json::json!({ "error": { "code": "usage_error", "message": msg } });
    eprintln!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
    ExitCode::from(EXIT_ERROR as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return usage_failure(&e);
    }
    let job = match job_from(cli.command, cli.format) {
        Ok(j) => j,
        Err(e) => return usage_failure(&e),
    };
    if cli.print_job {
        println!("{}", serde_json::to_string_pretty(&job).expect("serializable"));
        return ExitCode::SUCCESS;
    }
    let out = execute(&job);
    std::io::stdout().write_all(out.stdout.as_bytes()).ok();
    std::io::stderr().write_all(out.stderr.as_bytes()).ok();
    ExitCode::from(out.exit_code as u8)
}
