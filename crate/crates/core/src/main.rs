use clap::{Parser, Subcommand};
use nullray::diffops::Helicity;
use nullray::eigenmodes::{eval_u, eval_w, eval_w_reduced, WaveMode};
use nullray::field::Point3;
use nullray::grid::{emit_grid, Plane, Quantity};
use nullray::harness::{run_suite, Profile, SuiteConfig};
use nullray::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nullray", version, about = "Identity checks and field grids for massless Poincaré operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a JSON report.
    Check {
        /// Suite name or `all`; may be repeated or comma separated.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        /// strict, default or fast.
        #[arg(long, default_value = "default")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report path; the report is printed to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a CSV grid of w_{s,(0,0,k)}.
    Grid {
        /// Twice the helicity.
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        k: f64,
        /// xz or xy.
        #[arg(long, default_value = "xz")]
        plane: String,
        #[arg(long)]
        extent: f64,
        #[arg(long)]
        n: usize,
        /// re, im, abs or phase.
        #[arg(long, default_value = "abs")]
        quantity: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print u_{s,k}(r), and w_{s,k}(r) when k is along +z.
    Eval {
        /// Twice the helicity.
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, allow_negative_numbers = true)]
        kx: f64,
        #[arg(long, allow_negative_numbers = true)]
        ky: f64,
        #[arg(long, allow_negative_numbers = true)]
        kz: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ConfigError(_) => 2,
        Error::IoError(_) => 3,
        _ => 4,
    }
}

fn format_complex(v: num_complex::Complex64) -> String {
    format!("{:.16e} {:+.16e}i", v.re, v.im)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Check { suite, profile, seed, out } => {
            let cfg = SuiteConfig { suites: suite, profile: profile.parse::<Profile>()?, seed, output_path: out.clone() };
            let report = run_suite(&cfg)?;
            for rec in &report.records {
                eprintln!(
                    "{:<4} {:<11} {:<60} residual {:.3e} tol {:.1e} ({:.0} ms)",
                    if rec.status == nullray::harness::Status::Pass { "ok" } else { "FAIL" },
                    rec.suite,
                    rec.name,
                    rec.max_residual,
                    rec.tolerance,
                    rec.wall_time_ms
                );
            }
            eprintln!(
                "passed {} failed {} skipped {}",
                report.summary.passed, report.summary.failed, report.summary.skipped
            );
            if out.is_none() {
                println!("{}", report.to_json());
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Grid { s, k, plane, extent, n, quantity, out } => {
            let s = Helicity::from_two_s(s)?;
            emit_grid(s, k, plane.parse::<Plane>()?, extent, n, quantity.parse::<Quantity>()?, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { s, kx, ky, kz, x, y, z } => {
            let h = Helicity::from_two_s(s)?;
            let mode = WaveMode::new(h, Point3::new(kx, ky, kz))?;
            let p = Point3::new(x, y, z);
            println!("u = {}", format_complex(eval_u(&mode, p)?));
            if kx == 0.0 && ky == 0.0 && kz > 0.0 {
                match eval_w(h, kz, p) {
                    Ok(w) => println!("w = {}", format_complex(w)),
                    Err(Error::DomainError(_)) => {
                        println!("|w| = {:.16e} (phase undefined on the z axis)", eval_w_reduced(h, kz, p)?.norm())
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
