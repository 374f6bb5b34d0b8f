//! `plactic`: command-line access to the plactic monoid algebra engine.
//!
//! Every command prints a deterministic JSON document by default. Exit code 0
//! means every requested verification passed, 1 a verification failure and 2
//! a usage error.

mod commands;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use plactic_core::anick::Mode;
use plactic_core::rewrite::Coeff;
use plactic_core::Rationals;

use commands::{DiffArgs, Failure, Outcome, Report, DEFAULT_EPS};
use parse::FieldSpec;

#[derive(Parser)]
#[command(name = "plactic", version, about = "Column calculus, Anick resolution and cohomology of plactic monoid algebras")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Alphabet size.
    #[arg(short, long, default_value_t = 3, global = true, value_parser = clap::value_parser!(u16).range(1..=16))]
    n: u16,
    /// Coefficient field: `rational` or `gfp:<prime>`.
    #[arg(long, default_value = "gfp:32003", global = true)]
    field: FieldSpec,
    /// Repeat field-dependent computations over the rationals and compare.
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Tableau normal form of a letter word such as `3121`.
    NormalForm { word: String },
    /// Normal form of the product of two column words such as `21.2`.
    Product { left: String, right: String },
    /// `a ∨ b`.
    Vee { a: String, b: String },
    /// `a ∧ b`.
    Wedge { a: String, b: String },
    /// Check the column identities on all triples.
    VerifyIdentities,
    /// Check that the column presentation is a Gröbner–Shirshov basis.
    GsbCheck,
    /// List the Anick chains of a homological degree.
    Chains {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        degree: u16,
    },
    /// Differential of one chain, e.g. `--chain "[1|21]"`.
    Diff {
        #[arg(long)]
        chain: String,
        /// Use the closed column formula.
        #[arg(long, conflicts_with = "admt")]
        closed: bool,
        /// Use the Morse path sum (default).
        #[arg(long)]
        admt: bool,
        /// Two-sided resolution instead of the left one.
        #[arg(long)]
        bimodule: bool,
    },
    /// Check `d∘d = 0` for both implementations and both modes.
    D2Check {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..))]
        max: u16,
    },
    /// Dimensions of Ext in degrees `0..=max`.
    ExtBetti {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..))]
        max: u16,
    },
    /// Degree-one generators and their cup products.
    ExtRing {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(2..))]
        max: u16,
    },
    /// Degree-zero Hochschild cohomology in content `(k, ..., k)`, `k <= window`.
    HhCenter {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u16).range(1..))]
        window: u16,
    },
    /// Check whether the letter-deleting maps are Hochschild cocycles.
    HhDerivations,
    /// Check the cup-product identities on the Hochschild side.
    HhCup,
    /// Which columns commute, decided on letters.
    CommutationGraph,
    /// Fixtures for the algebra `k<x, y>/(x² − y²)`.
    Example15 {
        /// Augmentation `ε(x),ε(y)` with `ε(x)² = ε(y)²`; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        eps: Vec<String>,
    },
}

/// Runs a field-generic command over the configured field.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(pf) => {
                let $f = pf;
                $body
            }
        }
    };
}

/// Runs a field-generic command and, with `--exact`, repeats it over the
/// rationals and compares the field-independent summaries.
macro_rules! generic {
    ($config:expr, $f:ident => $body:expr) => {{
        let mut report: Report = with_field!($config.field, $f => $body)?;
        report.json["field"] = json!($config.field.label());
        if $config.exact && $config.field != FieldSpec::Rational {
            let $f = Rationals;
            let exact: Report = $body?;
            confirm(report, exact)
        } else {
            Ok(report)
        }
    }};
}

fn confirm(mut report: Report, exact: Report) -> Outcome {
    let agrees = report.summary == exact.summary;
    report.json["exact_confirmation"] = json!({ "field": "rational", "agrees": agrees });
    report.passed = Some(report.passed.unwrap_or(true) && agrees);
    Ok(report)
}

fn usage(e: String) -> Failure {
    Failure::Usage(e)
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.config;
    let n = c.n as usize;
    match &cli.command {
        Command::NormalForm { word } => commands::normal_form(n, &parse::letter_word(word).map_err(usage)?),
        Command::Product { left, right } => {
            let u = parse::column_word(left, n).map_err(usage)?;
            let v = parse::column_word(right, n).map_err(usage)?;
            commands::product(n, &u, &v)
        }
        Command::Vee { a, b } | Command::Wedge { a, b } => {
            let a = parse::column(a, n).map_err(usage)?;
            let b = parse::column(b, n).map_err(usage)?;
            commands::vee_or_wedge(a, b, matches!(cli.command, Command::Vee { .. }))
        }
        Command::VerifyIdentities => commands::identities(n),
        Command::GsbCheck => commands::gsb_check(n),
        Command::Chains { degree } => commands::chains(n, *degree as usize),
        Command::Diff { chain, closed, admt: _, bimodule } => {
            let p = commands::presentation(n)?;
            let chain = parse::chain(chain, &p, n).map_err(usage)?;
            let mode = if *bimodule { Mode::Bimodule } else { Mode::Left };
            let args = || DiffArgs { chain: &chain, closed: *closed, mode, dot: c.format == Format::Dot };
            generic!(c, f => commands::diff(&p, f, args()))
        }
        Command::D2Check { max } => {
            let p = commands::presentation(n)?;
            generic!(c, f => commands::d2_check(&p, f, *max as usize))
        }
        Command::ExtBetti { max } => {
            let p = commands::presentation(n)?;
            generic!(c, f => commands::ext_betti(&p, f, *max as usize))
        }
        Command::ExtRing { max } => {
            let p = commands::presentation(n)?;
            generic!(c, f => commands::ext_ring(&p, f, n, *max as usize))
        }
        Command::HhCenter { window } => {
            let p = commands::presentation(n)?;
            generic!(c, f => commands::hh_center(&p, f, n, *window as usize))
        }
        Command::HhDerivations => {
            let p = commands::presentation(n)?;
            generic!(c, f => commands::hh_derivations(&p, f, n))
        }
        Command::HhCup => commands::hh_cup(n),
        Command::CommutationGraph => commands::graph(n),
        Command::Example15 { eps } => {
            let eps: Vec<(Coeff, Coeff)> = if eps.is_empty() {
                DEFAULT_EPS.iter().map(|&(a, b)| (Coeff::from_integer(a), Coeff::from_integer(b))).collect()
            } else {
                eps.iter().map(|s| parse::eps_pair(s)).collect::<Result<_, _>>().map_err(usage)?
            };
            commands::example15(&eps)
        }
    }
}

/// Generic text rendering: one `key: value` line per top-level field.
fn render_text(v: &Value) -> String {
    match v {
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join("\n"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            println!("{}", json!({ "passed": false, "error": msg }));
            return ExitCode::from(1);
        }
    };
    let mut json = report.json;
    if let (Some(passed), Value::Object(map)) = (report.passed, &mut json) {
        map.insert("passed".to_string(), json!(passed));
    }
    let out = match cli.config.format {
        Format::Json => serde_json::to_string_pretty(&json).expect("JSON values serialize"),
        Format::Text => {
            let mut s = report.text.unwrap_or_else(|| render_text(&json));
            if let Some(p) = report.passed {
                s.push_str(if p { "\nPASS" } else { "\nFAIL" });
            }
            s
        }
        Format::Dot => match report.dot {
            Some(d) => d.trim_end().to_string(),
            None => {
                eprintln!("error: this command has no DOT output");
                return ExitCode::from(2);
            }
        },
    };
    println!("{out}");
    match report.passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
