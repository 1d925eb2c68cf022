use std::path::PathBuf;
use std::process::ExitCode;

use c5cone::oracle::OracleConfig;
use c5cone_cli::{kernel, report, run, CliError, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Whitney C5-cones and bi-Lipschitz invariants of complex curve germs.
#[derive(Parser)]
#[command(name = "c5cone", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cone planes, auxiliary multiplicities and plane-count bounds.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Decide bi-Lipschitz equivalence of two curves.
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Test a projection for genericity, or search for a generic one.
    Project(ProjectArgs),
    /// Cross-check the cone against sampled secant directions.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ProjectArgs {
    file: PathBuf,
    /// Kernel rows, e.g. "(0,0,1)" or "1,0,0; 0,1,-1".
    #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
    kernel: Option<String>,
    #[arg(long)]
    auto: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, num_args = 1..)]
    radii: Option<Vec<f64>>,
    /// Secants per radius and branch combination.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Check against a deliberately wrong plane list.
    #[arg(long, hide = true)]
    corrupt_planes: bool,
    #[arg(long)]
    json: bool,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("C5CONE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Threads(format!("expected an integer >= 1, found {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Threads(e.to_string()))
}

fn emit(value: &Value, json: bool, render: fn(&Value) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        print!("{}", render(value));
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let verdict = |ok: bool| if ok { EXIT_OK } else { EXIT_NEGATIVE };
    match cli.command {
        Command::Analyze { file, json } => {
            let r = run::analyze(&run::load(&file)?)?;
            emit(&r, json, report::analyze_text);
            Ok(EXIT_OK)
        }
        Command::Compare { left, right, json } => {
            let (r, eq) = run::compare(&run::load(&left)?, &run::load(&right)?)?;
            emit(&r, json, report::compare_text);
            Ok(verdict(eq))
        }
        Command::Project(a) => {
            let c = run::load(&a.file)?;
            let (r, ok) = match a.kernel {
                Some(k) => run::project_kernel(&c, kernel::parse_matrix(&k)?)?,
                None => run::project_auto(&c)?,
            };
            emit(&r, a.json, report::project_text);
            Ok(verdict(ok))
        }
        Command::Verify(a) => {
            let c = run::load(&a.file)?;
            let mut cfg = OracleConfig::for_curve(&c);
            cfg.seed = a.seed;
            cfg.samples = a.samples;
            cfg.corrupt = a.corrupt_planes;
            if let Some(r) = a.radii {
                cfg.radii = r;
            }
            if let Some(t) = a.tolerance {
                cfg.tolerance = t;
            }
            let (r, ok) = run::verify(&c, &cfg)?;
            emit(&r, a.json, report::verify_text);
            Ok(verdict(ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            EXIT_ERROR
        }
    };
    ExitCode::from(code as u8)
}
