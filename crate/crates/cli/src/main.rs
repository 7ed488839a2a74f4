//! `heis`: classify kernels, list automorphism generators, count orbits and
//! check the ω table from the command line.

mod commands;
mod error;
mod input;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heis_core::with_field;
use serde_json::{json, Value};

use commands::Config;
use error::CliError;

const SCHEMA_VERSION: &str = "v1";

#[derive(Parser, Debug)]
#[command(name = "heis", version, about = "Reduced Heisenberg algebras with four-dimensional abelianization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Field spec: q, gf:p, gf:p^k[:modulus], fp_t:p.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// JSON object inline, or a path to a file holding one.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Size limit for group generation and witness searches; HEIS_BUDGET overrides it.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples for the membership-test check of `aut`.
    #[arg(long, global = true, default_value_t = 200)]
    sample: u64,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Orbit label of a subspace of Λ²(K⁴).
    Classify,
    /// Generators of the stabilizer of a kernel.
    Aut,
    /// Automorphism orbit counts of the algebra with a given kernel.
    Orbits,
    /// Recompute every ω table row over GF(2), GF(3) or GF(4).
    VerifyTable,
    /// Conjugating element in a quaternion division algebra.
    Conj,
    /// Arf invariants, char-2 binary form equivalence, hermitian classes.
    Forms,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Aut => "aut",
            Command::Orbits => "orbits",
            Command::VerifyTable => "verify-table",
            Command::Conj => "conj",
            Command::Forms => "forms",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Output {
    Text,
    Json,
}

fn budget(cli: &Cli) -> Result<u64, CliError> {
    match std::env::var("HEIS_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::parse(format!("HEIS_BUDGET={v} is not a number"))),
        Err(_) => Ok(cli.budget),
    }
}

fn run(cli: &Cli) -> Result<(Value, Option<CliError>), CliError> {
    let cfg = Config { budget: budget(cli)?, seed: cli.seed, sample: cli.sample };
    let any = input::field(&cli.field)?;
    let data = match cli.command {
        Command::VerifyTable => None,
        _ => Some(input::load(cli.input.as_deref())?),
    };
    let data_ref = data.as_ref().unwrap_or(&Value::Null);
    let (body, err) = with_field!(&any, f => match cli.command {
        Command::Classify => commands::classify(f, &cfg, data_ref),
        Command::Aut => commands::aut(f, &cfg, data_ref),
        Command::Orbits => commands::orbits(f, &cfg, data_ref),
        Command::VerifyTable => commands::verify(f, &cfg),
        Command::Conj => commands::conj(f, &cfg, data_ref),
        Command::Forms => commands::forms(f, &cfg, data_ref),
    })?;
    let field_name = with_field!(&any, f => heis_core::Field::name(f));
    let report = json!({
        "schema": format!("heis/{SCHEMA_VERSION}/{}", cli.command.name()),
        "field": field_name,
        "config": {"budget": cfg.budget, "seed": cfg.seed, "sample": cfg.sample},
        "input": data,
        "result": body,
    });
    Ok((report, err))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, err)) => {
            match cli.output {
                Output::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Output::Text => print!("{}", render::text(&report)),
            }
            match err {
                Some(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.code)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
