use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use toml::{Table, Value};

use dgtwist_cli::prelude::{with_tasks, CATALOGUE};
use dgtwist_cli::scenario::parse_field;
use dgtwist_cli::{emit_report, exit, parse_scenario, run, Format, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "dgtwist", version, about = "Exact checks of spherical twists on glued dg-categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// `rational` or `prime:p`; overrides the scenario.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<dgtwist_core::Field>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Random attempts per quasi-isomorphism search.
    #[arg(long, global = true)]
    attempts: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Definitions to use instead of the built-in catalogue.
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task of a scenario file.
    Run { file: PathBuf },
    /// Homology of a module (End, or Hom into --target) or hom table of a category.
    Homology {
        #[arg(long, conflicts_with = "category")]
        module: Option<String>,
        #[arg(long, requires = "module")]
        target: Option<String>,
        #[arg(long)]
        category: Option<String>,
    },
    /// Glue a pair and tabulate the glued category.
    Glue {
        #[arg(long)]
        pair: String,
    },
    /// A spherical object (--module) or the spherical certificates of a pair.
    VerifySpherical {
        #[arg(long, conflicts_with = "pair")]
        module: Option<String>,
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        d: Option<i64>,
        /// Known cotwist shift of the constituents.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// The glued twist by three routes.
    VerifyComposition {
        #[arg(long)]
        pair: String,
    },
    /// The cotwist matrix and the Serre-dual description of the cotwist.
    VerifyCotwistSerre {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        d: Option<i64>,
    },
    /// T_M ⊗ T_N ≃ T_N ⊗ T_{t_N(M)}.
    VerifyCommutativity {
        #[arg(long)]
        pair: String,
    },
    /// A P^n-object and the cotwist of its P' model.
    VerifyPobject {
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: usize,
    },
}

fn task(check: &str, args: &[(&str, Value)]) -> Table {
    let mut t = Table::new();
    t.insert("check".into(), Value::String(check.into()));
    for (k, v) in args {
        t.insert((*k).into(), v.clone());
    }
    t
}

fn s(v: &str) -> Value {
    Value::String(v.into())
}

fn opt_int(k: &'static str, v: Option<i64>) -> Option<(&'static str, Value)> {
    v.map(|v| (k, Value::Integer(v)))
}

fn tasks_for(cmd: &Command) -> Vec<Table> {
    match cmd {
        Command::Run { .. } => Vec::new(),
        Command::Homology { module, target, category } => {
            let mut a = Vec::new();
            a.extend(module.as_deref().map(|m| ("module", s(m))));
            a.extend(target.as_deref().map(|m| ("target", s(m))));
            a.extend(category.as_deref().map(|m| ("category", s(m))));
            vec![task("homology", &a)]
        }
        Command::Glue { pair } => vec![task("glue", &[("pair", s(pair))])],
        Command::VerifySpherical { module, pair, d, shift } => {
            let mut a: Vec<(&str, Value)> = [opt_int("d", *d), opt_int("shift", *shift)].into_iter().flatten().collect();
            match (module, pair) {
                (Some(m), _) => {
                    a.push(("module", s(m)));
                    vec![task("spherical-object", &a)]
                }
                (None, Some(p)) => {
                    a.push(("pair", s(p)));
                    vec![task("certificates", &a)]
                }
                (None, None) => vec![task("certificates", &a)],
            }
        }
        Command::VerifyComposition { pair } => vec![task("composition", &[("pair", s(pair))])],
        Command::VerifyCotwistSerre { pair, d } => {
            let mut a = vec![("pair", s(pair))];
            a.extend(opt_int("d", *d));
            vec![task("cotwist-matrix", &[("pair", s(pair))]), task("cotwist-serre", &a)]
        }
        Command::VerifyCommutativity { pair } => vec![task("commutativity", &[("pair", s(pair))])],
        Command::VerifyPobject { module, n } => {
            let a = [("module", s(module)), ("n", Value::Integer(*n as i64))];
            vec![task("p-object", &a), task("p-prime-cotwist", &a)]
        }
    }
}

fn load(path: &std::path::Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_scenario(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let scenario = match &cli.command {
        Command::Run { file } => load(file),
        cmd => {
            let base = match &cli.global.scenario {
                Some(p) => load(p),
                None => parse_scenario(CATALOGUE).map_err(|e| format!("catalogue: {e}")),
            };
            base.and_then(|b| {
                let mut doc = Table::new();
                doc.insert("tasks".into(), Value::Array(tasks_for(cmd).into_iter().map(Value::Table).collect()));
                let snippet = toml::to_string(&doc).expect("task tables serialize");
                with_tasks(&b, &snippet).map_err(|e| e.message)
            })
        }
    };
    let scenario = match scenario {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    let opts = RunOptions { field: cli.global.field, seed: cli.global.seed, attempts: cli.global.attempts };
    let report = match run(&scenario, opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit::USAGE as u8);
        }
    };
    let format = match cli.global.format {
        FormatArg::Json => Format::Json,
        FormatArg::Table => Format::Table,
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", emit_report(&report, format).trim_end());
    ExitCode::from(report.exit_code() as u8)
}
