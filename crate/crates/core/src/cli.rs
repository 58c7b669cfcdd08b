//! Command-line front end. Exit codes: 0 success (verdicts are data),
//! 2 usage error, 3 invalid dataset, 4 search or enumeration bound exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::classify::{classify_models, Analysis, ModelId};
use crate::error::Error;
use crate::oracle::{census, containment_census, run_suite, CensusSource, SUITES};
use crate::parse::load_dataset;
use crate::report;
use crate::revealed::{relation_direct, relation_models_with};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATASET: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "choicelens",
    version,
    about = "Limited-consideration analysis of choice datasets"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run model deciders and attach explanations to positive verdicts.
    Classify {
        file: PathBuf,
        /// Comma-separated model names (default: all).
        #[arg(long)]
        models: Option<String>,
    },
    /// Produce a verified explanation for one model.
    Elicit {
        file: PathBuf,
        #[arg(long)]
        model: String,
    },
    /// List switches and switch sets.
    Switches { file: PathBuf },
    /// Print every revealed relation with its properties.
    Relations { file: PathBuf },
    /// Count model members over all functions or a sample.
    Census(CensusArgs),
    /// Run equivalence suites over every function on n items.
    Verify {
        #[arg(long)]
        n: usize,
        /// Suite name or `all`.
        #[arg(long)]
        suite: String,
    },
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub models: Option<String>,
    /// Count isomorphism classes instead of labelled functions.
    #[arg(long)]
    pub up_to_iso: bool,
    /// Draw this many functions uniformly instead of enumerating.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "sample")]
    pub seed: u64,
    /// Report containment violations only.
    #[arg(long)]
    pub containments: bool,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_dataset_error() {
        EXIT_DATASET
    } else if e.is_bound_error() {
        EXIT_BOUND
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: String) -> Result<(), Error> {
    let rendered = if json {
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        text
    };
    out.write_all(rendered.as_bytes()).map_err(|e| Error::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    })
}

fn model_list(spec: Option<&str>, n: usize) -> Result<Vec<ModelId>, Error> {
    match spec {
        Some(s) => ModelId::parse_list(s),
        None => Ok(ModelId::standard_list(n)),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Error> {
    let json = cli.json;
    match &cli.command {
        Command::Classify { file, models } => {
            let c = load_dataset(file)?;
            let models = model_list(models.as_deref(), c.n())?;
            let report = classify_models(&c, &models)?;
            let g = c.ground();
            emit(
                out,
                json,
                report::classification_json(g, &report),
                report::classification_text(g, &report),
            )
        }
        Command::Elicit { file, model } => {
            let c = load_dataset(file)?;
            let m: ModelId = model.parse()?;
            match Analysis::new(&c).elicit(m) {
                Ok(e) => emit(
                    out,
                    json,
                    report::explanation_json(&e),
                    report::explanation_text(&e),
                ),
                Err(Error::NotInModel { model, reason }) => emit(
                    out,
                    json,
                    json!({ "model": model, "holds": false, "reason": reason }),
                    format!("{model}: not in model ({reason})\n"),
                ),
                Err(e) => Err(e),
            }
        }
        Command::Switches { file } => {
            let c = load_dataset(file)?;
            let a = Analysis::new(&c);
            let sw = a.switches();
            emit(
                out,
                json,
                report::switches_json(&c, sw),
                report::switches_text(&c, sw),
            )
        }
        Command::Relations { file } => {
            let c = load_dataset(file)?;
            let a = Analysis::new(&c);
            let named = [
                ("P", a.p().clone()),
                ("F", a.f().clone()),
                ("related_to", a.related_to().clone()),
                ("models", relation_models_with(&c, a.switches())),
                ("rev", a.rev().clone()),
                ("R", a.r().clone()),
                ("direct", relation_direct(&c)),
            ];
            emit(
                out,
                json,
                report::relations_json(&named),
                report::relations_text(&named),
            )
        }
        Command::Census(args) => run_census(args, json, out),
        Command::Verify { n, suite } => run_verify(*n, suite, json, out),
    }
}

fn run_census(args: &CensusArgs, json: bool, out: &mut dyn Write) -> Result<(), Error> {
    let source = match args.sample {
        Some(count) => CensusSource::Sample {
            count,
            seed: args.seed,
        },
        None => CensusSource::Exhaustive,
    };
    if args.containments {
        let population: Vec<_> = match source {
            CensusSource::Exhaustive => {
                crate::oracle::enumerate_choice_functions(args.n)?.collect()
            }
            CensusSource::Sample { count, seed } => {
                crate::oracle::sample_choice_functions(args.n, count, seed)?.collect()
            }
        };
        let cs = containment_census(&population);
        let value = json!({
            "n": args.n,
            "sample_size": population.len(),
            "containment_violations": cs.iter().map(|(r, v)| (r.clone(), json!(v))).collect::<serde_json::Map<_, _>>(),
        });
        let mut text = format!("n={} functions={}\n", args.n, population.len());
        for (rule, v) in &cs {
            text.push_str(&format!("{rule}: {v} violations\n"));
        }
        return emit(out, json, value, text);
    }
    let models = model_list(args.models.as_deref(), args.n)?;
    let rows = census(args.n, &models, args.up_to_iso, source)?;
    emit(
        out,
        json,
        report::census_json(&rows, None),
        report::census_text(&rows, None),
    )
}

fn run_verify(n: usize, suite: &str, json: bool, out: &mut dyn Write) -> Result<(), Error> {
    let names: Vec<(&str, usize)> = if suite == "all" {
        SUITES.to_vec()
    } else {
        let found = SUITES
            .iter()
            .find(|(s, _)| *s == suite)
            .ok_or_else(|| Error::UnknownSuite(suite.to_string()))?;
        vec![*found]
    };
    let mut values = Vec::new();
    let mut text = String::new();
    for (name, max) in names {
        if suite == "all" && n > max {
            values.push(json!({ "suite": name, "n": n, "skipped": true, "max_n": max }));
            text.push_str(&format!("SKIP {name} n={n} (supports n <= {max})\n"));
            continue;
        }
        let r = run_suite(name, n)?;
        text.push_str(&report::suite_text(&r));
        values.push(report::suite_json(&r));
    }
    emit(out, json, Value::Array(values), text)
}
