mod commands;
mod render;
mod selftest;

use std::{path::PathBuf, process::ExitCode};

use clap::{Parser, Subcommand, ValueEnum};
use posheaf::{
  corpus::DEFAULT_SEED,
  field::{FieldSpec, PrimeField, Rationals},
  Error,
};
use serde_json::Value;

/// Exact sheaf cohomology, interaction decompositions and marginal-problem invariants on finite posets.
#[derive(Parser, Debug)]
#[command(name = "posheaf", version)]
pub struct Cli {
  #[command(subcommand)]
  pub command:    Command,
  /// `rat` or `fp:<p>`.
  #[arg(long, global = true, default_value = "rat")]
  pub field:      String,
  /// Highest cochain degree built; cohomology is reported below it.
  #[arg(long, global = true)]
  pub max_degree: Option<usize>,
  #[arg(long, global = true, value_enum, default_value_t = Mode::Alt)]
  pub mode:       Mode,
  #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
  pub format:     Format,
  #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
  pub seed:       u64,
  /// Run the invariant suite of the command on the built-in corpus.
  #[arg(long, global = true)]
  pub self_test:  bool,
  /// Functor built from a hypergraph or poset input.
  #[arg(long, global = true, value_enum)]
  pub functor:    Option<FunctorKind>,
  /// Include the cochain complex in the output of `cech` and `nerve`.
  #[arg(long, global = true)]
  pub emit_complex: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
  /// Möbius function of a poset or hypergraph.
  Mobius { input: Option<PathBuf> },
  /// Euler characteristic by Möbius inversion and by chain counting.
  Euler { input: Option<PathBuf> },
  /// Conditional (co)products, dimensions and intersection properties.
  Predicates { input: Option<PathBuf> },
  /// Condition G on a presheaf.
  CheckG { input: Option<PathBuf> },
  /// Interaction decomposition of a presheaf.
  Decompose { input: Option<PathBuf> },
  /// Čech cohomology on the canonical cover.
  Cech { input: Option<PathBuf> },
  /// Cohomology of the nerve complex.
  Nerve { input: Option<PathBuf> },
  /// Čech versus nerve cohomology through the comparison map.
  Compare { input: Option<PathBuf> },
  /// Chain homotopies between the covering nerve and the poset nerve.
  VerifyHomotopy { input: Option<PathBuf> },
  /// Dimension, Euler characteristic and index formula of a marginal problem.
  Marginal { input: Option<PathBuf> },
  /// Restriction of pseudo-marginals from hypergraph B to a sub-hypergraph A.
  Surjectivity { a: Option<PathBuf>, b: Option<PathBuf> },
  /// Global sections against a configuration-level linear system.
  Oracle { input: Option<PathBuf> },
}

impl Command {
  pub fn name(&self) -> &'static str {
    match self {
      Command::Mobius { .. } => "mobius",
      Command::Euler { .. } => "euler",
      Command::Predicates { .. } => "predicates",
      Command::CheckG { .. } => "check-g",
      Command::Decompose { .. } => "decompose",
      Command::Cech { .. } => "cech",
      Command::Nerve { .. } => "nerve",
      Command::Compare { .. } => "compare",
      Command::VerifyHomotopy { .. } => "verify-homotopy",
      Command::Marginal { .. } => "marginal",
      Command::Surjectivity { .. } => "surjectivity",
      Command::Oracle { .. } => "oracle",
    }
  }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
  Full,
  Alt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
  Json,
  Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorKind {
  /// Free presheaf on the upper space.
  Free,
  /// Sum-zero presheaf on the upper space.
  Reduced,
  /// Constant presheaf on the upper space.
  Constant,
  /// Free copresheaf on the lower space.
  Cofree,
  /// Restricted copresheaf on the lower space.
  Restricted,
  /// Constant copresheaf on the lower space.
  Coconstant,
}

/// Result of a command: `ok = false` is a failed mathematical check.
pub struct Outcome {
  pub ok:    bool,
  pub value: Value,
  /// Plain-text rendering overriding the generic table.
  pub text:  Option<String>,
}

impl Outcome {
  pub fn new(ok: bool, value: Value) -> Self { Outcome { ok, value, text: None } }
}

fn exit_code(e: &Error) -> u8 {
  match e {
    Error::NoConditionalProduct(..) | Error::Identity(_) => 1,
    _ => 2,
  }
}

fn main() -> ExitCode {
  let cli = Cli::parse();
  let result = FieldSpec::parse(&cli.field).and_then(|spec| {
    if cli.self_test {
      return Ok(selftest::run(&cli));
    }
    match spec {
      FieldSpec::Rationals => commands::run(&cli, Rationals),
      FieldSpec::Prime(p) => commands::run(&cli, PrimeField::new(p)?),
    }
  });
  match result {
    Ok(out) => {
      match (cli.format, &out.text) {
        (Format::Table, Some(t)) => println!("{t}"),
        (Format::Table, None) => print!("{}", render::table(&out.value)),
        (Format::Json, _) => println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable")),
      }
      ExitCode::from(if out.ok { 0 } else { 1 })
    },
    Err(e) => {
      eprintln!("error: {e}");
      if cli.format == Format::Json {
        println!("{}", serde_json::json!({ "error": e.to_string() }));
      }
      ExitCode::from(exit_code(&e))
    },
  }
}
