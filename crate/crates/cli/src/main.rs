use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use selberg_cli::bench::{bench, render};
use selberg_cli::exit;
use selberg_cli::exit_code_for;
use selberg_cli::output::OutputRecord;
use selberg_cli::verify::{self, Suite, VerifyOptions};
use selberg_core::arith::parse_rational;
use selberg_core::{moment_polynomial, MomentRequest, Rational};

/// Exact moments of characteristic polynomials in the Jacobi β-ensemble.
#[derive(Parser, Debug)]
#[command(name = "selberg", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute <prod_j (x - z_j)^mu> at weight z^(a-1) (1-z)^(b-1) |Δ(z)|^(2 tau).
    Compute {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        tau: Rational,
        /// Exponent a of the weight z^(a-1).
        #[arg(long, value_parser = rational)]
        alpha: Rational,
        /// Exponent b of the weight (1-z)^(b-1).
        #[arg(long, value_parser = rational)]
        beta: Rational,
        #[arg(long)]
        mu: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run exact verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the moment computation for several n.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "5,10,20")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        mu: usize,
        #[arg(long, value_parser = rational, default_value = "1")]
        tau: Rational,
        #[arg(long, value_parser = rational, default_value = "2")]
        alpha: Rational,
        #[arg(long, value_parser = rational, default_value = "2")]
        beta: Rational,
        #[arg(long, default_value_t = 1)]
        repeat: usize,
    },
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            });
        }
    };
    ExitCode::from(match cli.command {
        Command::Compute {
            n,
            tau,
            alpha,
            beta,
            mu,
            format,
        } => compute(n, tau, alpha, beta, mu, format),
        Command::Verify { suite, max_n, seed } => run_verify(suite, VerifyOptions { max_n, seed }),
        Command::Bench {
            n_list,
            mu,
            tau,
            alpha,
            beta,
            repeat,
        } => match bench(&n_list, mu, &tau, &alpha, &beta, repeat) {
            Ok(rows) => {
                print!("{}", render(&rows));
                exit::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
    })
}

fn compute(n: usize, tau: Rational, a: Rational, b: Rational, mu: usize, format: Format) -> u8 {
    let result = MomentRequest::new(n, tau, a, b, mu).and_then(|req| moment_polynomial(&req));
    match result {
        Ok(result) => {
            let record = OutputRecord::from(&result);
            match format {
                Format::Json => println!("{}", record.to_json()),
                Format::Plain => print!("{}", record.to_plain()),
            }
            exit::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn run_verify(suite: Suite, opts: VerifyOptions) -> u8 {
    match verify::run(suite, &opts) {
        Ok(reports) => {
            for r in reports {
                println!("{r}");
            }
            exit::SUCCESS
        }
        Err(failure) => {
            println!("{failure}");
            exit::VERIFY_FAILED
        }
    }
}
