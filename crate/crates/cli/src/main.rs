use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use galois_cli::analyze::{self, error_exit_code, AnalyzeConfig};
use galois_cli::{exit, lemmas, parse_polynomial};
use galois_core::number_field::PrecisionPolicy;
use galois_core::Execution;

#[derive(Parser)]
#[command(name = "galois", version, about = "Exact Galois correspondence for polynomials over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the splitting field of a polynomial and verify the correspondence.
    Analyze {
        /// Polynomial in x, e.g. "x^3 - 2".
        poly: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Cap on the splitting field degree.
        #[arg(long, default_value_t = AnalyzeConfig::default().max_field_degree)]
        max_degree: usize,
        /// Cap on the input degree after squarefree reduction.
        #[arg(long, default_value_t = AnalyzeConfig::default().max_input_degree)]
        max_input_degree: usize,
        /// Largest working precision for numerical root isolation.
        #[arg(long, env = "GALOIS_PRECISION_CAP", default_value_t = PrecisionPolicy::default().cap_bits)]
        precision_cap: u32,
        #[arg(long, default_value_t = PrecisionPolicy::default().start_bits)]
        precision_start: u32,
        /// Run per-subgroup work on one thread.
        #[arg(long)]
        sequential: bool,
        /// Include measured wall-clock time in the report.
        #[arg(long)]
        wall_clock: bool,
    },
    /// Exhaustively check the finite field lemmas.
    VerifyLemmas {
        /// Largest field order p^n in the sweep.
        #[arg(long, default_value_t = 1024)]
        pmax: usize,
        /// Largest q for the plane cover check.
        #[arg(long, default_value_t = 5)]
        qmax: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        sequential: bool,
    },
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Analyze {
            poly,
            format,
            max_degree,
            max_input_degree,
            precision_cap,
            precision_start,
            sequential,
            wall_clock,
        } => {
            let f = match parse_polynomial(&poly) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: {e}");
                    eprintln!("  {poly}\n  {:>width$}", "^", width = e.column);
                    return exit::USAGE;
                }
            };
            let precision = match PrecisionPolicy::new(precision_start, precision_cap) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit::USAGE;
                }
            };
            let cfg = AnalyzeConfig {
                max_input_degree,
                max_field_degree: max_degree,
                precision,
                execution: execution(sequential),
                wall_clock,
            };
            match analyze::analyze(&f, &cfg) {
                Ok(a) => {
                    let text = match format {
                        Format::Text => analyze::render_text(&a),
                        Format::Json => analyze::render_json(&a) + "\n",
                        Format::Dot => analyze::render_dot(&a),
                    };
                    print!("{text}");
                    a.exit_code()
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    error_exit_code(&e)
                }
            }
        }
        Command::VerifyLemmas {
            pmax,
            qmax,
            format,
            sequential,
        } => match lemmas::run(pmax, qmax, execution(sequential)) {
            Ok(s) => {
                match format {
                    Format::Json => println!("{}", lemmas::render_json(&s)),
                    _ => print!("{}", lemmas::render_text(&s)),
                }
                if s.passed() {
                    exit::PASS
                } else {
                    exit::VERIFICATION_FAILED
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                error_exit_code(&e)
            }
        },
    }
}

fn main() -> ExitCode {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors; clap's own usage
            // code (2) would collide with verification failure
            if e.use_stderr() {
                exit::USAGE
            } else {
                exit::PASS
            }
        }
    };
    ExitCode::from(code as u8)
}
