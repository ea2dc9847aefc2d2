use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sgcert_cli::commands::{self, CliError, Settings, Target};
use sgcert_cli::expr::{Kind, Shape};
use sgcert_cli::format::parse_field;
use sgcert_cli::render::render;
use sgcert_cli::Report;

/// Certified homological computations for quiver algebras.
///
/// Exit codes: 0 decisive, 1 some verdict unknown at the bound, 2 input error,
/// 3 internal consistency failure.
#[derive(Parser)]
#[command(name = "sgcert", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Number of syzygies examined before answering unknown.
    #[arg(long, global = true, default_value_t = 20)]
    bound: usize,
    /// Seed for the randomized isomorphism searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Override the field of every input: 0, Q, p or F_p.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<sgcert::exactla::Field>,
    /// Print the JSON report instead of a summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the algebra axioms and list a basis.
    Check { algebra: String },
    /// Minimal projective resolution and projective dimension of a module.
    Resolve {
        algebra: String,
        /// A module file.
        module: Option<String>,
        #[arg(long, value_name = "VERTEX", conflicts_with_all = ["projective", "injective", "module"])]
        simple: Option<String>,
        #[arg(long, value_name = "VERTEX", conflicts_with_all = ["injective", "module"])]
        projective: Option<String>,
        #[arg(long, value_name = "VERTEX", conflicts_with = "module")]
        injective: Option<String>,
    },
    /// Decide whether an algebra is Gorenstein.
    Gorenstein { algebra: String },
    /// Corner algebra report for an idempotent.
    Schur {
        algebra: String,
        /// Vertices of the idempotent, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        idempotent: Vec<String>,
        /// An algebra file to certify isomorphic to the corner.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Gorenstein criterion and report for a triangular matrix algebra.
    Triangular {
        #[arg(long, conflicts_with = "lower", required_unless_present = "lower")]
        upper: bool,
        #[arg(long)]
        lower: bool,
        r: String,
        s: String,
        bimodule: String,
        /// An algebra file to certify isomorphic to the triangular algebra.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Re-check every certificate in a saved JSON report.
    Verify { report: PathBuf },
}

fn emit(report: &Report, json: bool) -> i32 {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", render(report));
    }
    report.outcome.exit_code()
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let g = cli.global;
    let settings = Settings {
        field: g.field,
        bound: g.bound,
        seed: g.seed,
        ..Settings::default()
    };
    let report = match cli.command {
        Command::Check { algebra } => commands::check(&settings, &algebra)?,
        Command::Resolve {
            algebra,
            module,
            simple,
            projective,
            injective,
        } => {
            let target = match (module, simple, projective, injective) {
                (Some(m), ..) => Target::File(m),
                (_, Some(v), ..) => Target::Standard(Kind::Simple, v),
                (_, _, Some(v), _) => Target::Standard(Kind::Projective, v),
                (_, _, _, Some(v)) => Target::Standard(Kind::Injective, v),
                _ => return Err(CliError::Input("give a module file or one of --simple, --projective, --injective".into())),
            };
            commands::resolve_cmd(&settings, &algebra, &target)?
        }
        Command::Gorenstein { algebra } => commands::gorenstein_cmd(&settings, &algebra)?,
        Command::Schur {
            algebra,
            idempotent,
            compare,
        } => commands::schur_cmd(&settings, &algebra, &idempotent, compare.as_deref())?,
        Command::Triangular {
            upper: _,
            lower,
            r,
            s,
            bimodule,
            compare,
        } => {
            let shape = if lower { Shape::Lower } else { Shape::Upper };
            commands::triangular_cmd(&settings, shape, &r, &s, &bimodule, compare.as_deref())?
        }
        Command::Verify { report } => {
            let (saved, result) = commands::verify_cmd(&report)?;
            if g.json {
                let summary = serde_json::json!({
                    "command": saved.command,
                    "checked": result.checked,
                    "failures": result.failures,
                });
                println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
            } else {
                println!("{} certificates re-checked, {} failed", result.checked, result.failures.len());
                for f in &result.failures {
                    println!("  {f}");
                }
            }
            return Ok(if result.passed() { 0 } else { 3 });
        }
    };
    Ok(emit(&report, g.json))
}

fn main() -> ExitCode {
    let code = match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
