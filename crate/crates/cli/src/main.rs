use std::process::ExitCode;

use clap::{Parser, Subcommand};
use riordan_cli::commands::{self, CmdError, Output};
use riordan_cli::oeis::{default_fixture_dir, OeisSource};

/// Exact Riordan-array calculator and reproduction suite.
#[derive(Parser)]
#[command(name = "riordan", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Leading block of a Riordan array.
    Show {
        pair: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Product of two arrays.
    Mul {
        a: String,
        b: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Inverse array.
    Inv {
        pair: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Apply an array to a series: `g * h(f)`.
    Apply {
        pair: String,
        series: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Check `M^2 = I` at size n.
    Involution {
        pair: String,
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Moment polynomials of a parameterized family.
    Moments {
        family: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
        /// Specialize the parameter.
        #[arg(long)]
        y: Option<String>,
    },
    /// Hankel transform h_0..h_n of a sequence expression.
    Hankel {
        seq: String,
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// J-fraction of a sequence, with tail detection.
    Jfrac {
        seq: String,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Production matrix.
    Prodmat {
        pair: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Compute as `M^{-1} M-bar` instead of from the A and Z sequences.
        #[arg(long)]
        matrices: bool,
    },
    /// A named family, e.g. `general:3,2`, `rna`, `chebyshev-t`.
    Family {
        name: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Compare a b-file against a sequence expression.
    OeisCheck {
        anumber: String,
        #[arg(long)]
        against: String,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Drop this many leading b-file terms first.
        #[arg(long, default_value_t = 0)]
        skip: usize,
        /// Download and cache missing b-files.
        #[arg(long)]
        fetch: bool,
    },
    /// Run the reproduction suite.
    VerifyPaper {
        /// Restrict to these criteria (1-10).
        #[arg(long = "criterion", short = 'c')]
        criteria: Vec<u8>,
        #[arg(long)]
        fetch: bool,
    },
}

fn source(fetch: bool) -> OeisSource {
    if fetch {
        OeisSource::with_fetch(default_fixture_dir())
    } else {
        OeisSource::fixtures_only(default_fixture_dir())
    }
}

fn dispatch(cmd: Cmd) -> Result<Output, CmdError> {
    let fixtures = source(false);
    match cmd {
        Cmd::Show { pair, n } => commands::show(&pair, n),
        Cmd::Mul { a, b, n } => commands::mul(&a, &b, n),
        Cmd::Inv { pair, n } => commands::inv(&pair, n),
        Cmd::Apply { pair, series, n } => commands::apply(&pair, &series, n),
        Cmd::Involution { pair, n } => commands::involution(&pair, n),
        Cmd::Moments { family, count, y } => commands::moments(&family, count, y.as_deref()),
        Cmd::Hankel { seq, n } => commands::hankel_cmd(&seq, n, &fixtures),
        Cmd::Jfrac { seq, depth } => commands::jfrac(&seq, depth, &fixtures),
        Cmd::Prodmat { pair, n, matrices } => commands::prodmat(&pair, n, matrices),
        Cmd::Family { name, n } => commands::family(&name, n),
        Cmd::OeisCheck { anumber, against, terms, skip, fetch } => {
            commands::oeis_check(&anumber, &against, terms, skip, &source(fetch))
        }
        Cmd::VerifyPaper { criteria, fetch } => commands::verify_paper(&criteria, source(fetch)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match dispatch(cli.cmd) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
                if !out.text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({"error": e.to_string()}));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
