//! `twobridge` command-line front end.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twobridge::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "twobridge", version, about = "Parabolic representations of 2-bridge knots and links")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Working precision in bits; rounded up to one of 53, 128, 256, 512, 1024.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Root selector: `#N` / `idx:N` (index into the sorted root list) or a complex number.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub root: Option<String>,
    /// Worker threads for `census`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the output (or the census file) here.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Schubert fraction of a descriptor.
    Slope {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Canonical all-same-sign Conway word.
    Canon {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// All-even Conway expansion.
    Even {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Rep-polynomial (both orientation classes for links).
    Reppoly {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// u_i-sequence of the diagram.
    Uiseq {
        #[arg(allow_hyphen_values = true)]
        desc: String,
        /// Reverse the orientation of the first component.
        #[arg(long)]
        twist: bool,
    },
    /// Riley polynomial and its identity with the rep-polynomial.
    Riley {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Integral splitting `P = unit * u * g * g^` of a knot rep-polynomial.
    Split {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Roots of the rep-polynomial.
    Roots {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Meridian images of the parabolic representations.
    Reps {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Cusp shape at one or all roots.
    Cusp {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Complex volume at one or all roots.
    Volume {
        #[arg(allow_hyphen_values = true)]
        desc: String,
    },
    /// Does P_{K2} divide a member of K1's rep-polynomial set?
    Epi {
        #[arg(allow_hyphen_values = true)]
        k1: String,
        #[arg(allow_hyphen_values = true)]
        k2: String,
    },
    /// Build an ORS expansion and certify the seed factor.
    Ors {
        /// Seed entries, e.g. `2,-2`.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Values c_1..c_{n-1}; empty for type 1.
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        c: String,
        /// Signs e_1..e_n (default all +1).
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
    },
    /// Extend the JSONL census up to the given alpha.
    Census {
        #[arg(long)]
        max_alpha: i64,
        /// Skip roots and geometry.
        #[arg(long)]
        no_geometry: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidInput(_) | Error::Degenerate(_) => 2,
        Error::Numeric(_) => 3,
        Error::Engine(_) | Error::Io(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => out.text,
            };
            let written = match (&cli.out, &cli.cmd) {
                (Some(p), cmd) if !matches!(cmd, Cmd::Census { .. }) => std::fs::write(p, body).map_err(Error::from),
                _ => std::io::stdout().write_all(body.as_bytes()).map_err(Error::from),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
