//! Command-line interface: argument definitions and the dispatch loop.
//!
//! Exit codes: 0 on success, 1 when the input fails validation or a
//! computation cannot be carried out on the given model, 2 for malformed
//! invocations and unreadable or syntactically invalid input files.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cohomology::Theory;
use crate::deformation::model_at;
use crate::manifest::{load_model, ManifestError, Model};
use crate::rational::parse_rational;
use crate::report::{
    betti_section, cohomology_section, deform_section, delta_section, harmonic_section,
    hlc_section, inclusion_section, jdecomp_section, lefschetz_section, full_report,
    validate_section, vspace_section, Section,
};

#[derive(Parser)]
#[command(
    name = "nilsym",
    version,
    about = "Exact symplectic cohomology calculator for nilmanifold models"
)]
pub struct Cli {
    /// Path to the JSON model description.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Evaluate the model's first deformation family at this parameter
    /// value and run the command on the deformed structure.
    #[arg(long, global = true)]
    pub t: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check that the input file describes a valid model.
    Validate,
    /// de Rham dimensions in every degree.
    Betti,
    /// Cohomology dimensions, optionally with class representatives.
    Cohomology {
        /// de_rham, d_lambda, bott_chern, aeppli, or all.
        #[arg(long, default_value = "all")]
        theory: String,
        /// A single degree, or all.
        #[arg(long, default_value = "all")]
        degree: String,
    },
    /// Harmonic-space dimensions (needs a metric), optionally with bases.
    Harmonic {
        #[arg(long, default_value = "all")]
        theory: String,
        #[arg(long, default_value = "all")]
        degree: String,
    },
    /// Hard Lefschetz: rank of every power of the Lefschetz map.
    Hlc,
    /// Gap between Bott-Chern-type and de Rham dimensions.
    Delta,
    /// Lefschetz decomposition of cohomology by primitivity type.
    Lefschetz {
        /// Include class coordinates for each subgroup.
        #[arg(long)]
        groups: bool,
        /// Print only the overall decomposition verdict.
        #[arg(long)]
        check: bool,
    },
    /// Splitting of degree-2 classes by the almost-complex structure.
    Jdecomp,
    /// Harmonic 2-forms of the mixed theory that are exact.
    Vspace,
    /// Whether d-harmonic forms are harmonic for the mixed theory.
    Inclusion {
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Dimension sweep along the model's deformation families.
    Deform,
    /// Every supported section in one document.
    Report,
}

pub fn run(cli: &Cli) -> i32 {
    let Some(input) = &cli.input else {
        eprintln!("error: --input <FILE> is required");
        return 2;
    };
    let src = match std::fs::read_to_string(input) {
        Ok(src) => src,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return 2;
        }
    };
    let model = match load_model(&src) {
        Ok(model) => model,
        Err(e) => {
            let code = match &e {
                ManifestError::Json(_) => 2,
                _ => 1,
            };
            eprintln!("error: {e}");
            return code;
        }
    };
    let model = match rebase(model, cli) {
        Ok(model) => model,
        Err(code) => return code,
    };
    let rendered = match render(cli, &model) {
        Ok(rendered) => rendered,
        Err(code) => return code,
    };
    match &cli.output {
        None => {
            print!("{rendered}");
            0
        }
        Some(path) => match std::fs::write(path, rendered.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                1
            }
        },
    }
}

/// Apply --t by re-basing the model at the deformed structure.
fn rebase(model: Model, cli: &Cli) -> Result<Model, i32> {
    let Some(tstr) = &cli.t else {
        return Ok(model);
    };
    if matches!(cli.command, Command::Deform) {
        eprintln!("error: --t cannot be combined with deform; adjust t_samples instead");
        return Err(2);
    }
    let t = match parse_rational(tstr) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: bad value for --t: {e}");
            return Err(2);
        }
    };
    let Some(family) = model.deformations.first() else {
        eprintln!("error: --t was given but the model has no deformation family");
        return Err(1);
    };
    let algebra = model.context.algebra().clone();
    let omega = model.context.symplectic().omega().clone();
    match model_at(&algebra, &omega, family, &t) {
        Ok(context) => Ok(Model { context, ..model }),
        Err(reason) => {
            eprintln!("error: the deformed structure at t = {tstr} is invalid: {reason}");
            Err(1)
        }
    }
}

fn parse_theories(arg: &str) -> Result<Vec<Theory>, i32> {
    if arg == "all" {
        return Ok(Theory::all().to_vec());
    }
    match arg.parse::<Theory>() {
        Ok(theory) => Ok(vec![theory]),
        Err(e) => {
            eprintln!("error: {e}");
            Err(2)
        }
    }
}

fn parse_degree(arg: &str) -> Result<Option<usize>, i32> {
    if arg == "all" {
        return Ok(None);
    }
    match arg.parse::<usize>() {
        Ok(k) => Ok(Some(k)),
        Err(_) => {
            eprintln!("error: --degree expects a number or `all`, got `{arg}`");
            Err(2)
        }
    }
}

fn need_metric(model: &Model) -> Result<(), i32> {
    if model.context.has_metric() {
        Ok(())
    } else {
        eprintln!(
            "error: this computation needs a metric; add a \"j\" or \"metric\" entry to the model"
        );
        Err(1)
    }
}

fn need_j(model: &Model) -> Result<(), i32> {
    if model.context.j().is_some() {
        Ok(())
    } else {
        eprintln!(
            "error: this computation needs an almost-complex structure; add a \"j\" entry to the model"
        );
        Err(1)
    }
}

fn render(cli: &Cli, model: &Model) -> Result<String, i32> {
    let ctx = &model.context;
    let section: Section = match &cli.command {
        Command::Validate => validate_section(model),
        Command::Betti => betti_section(ctx),
        Command::Cohomology { theory, degree } => {
            let theories = parse_theories(theory)?;
            let degree = parse_degree(degree)?;
            cohomology_section(ctx, &theories, degree)
        }
        Command::Harmonic { theory, degree } => {
            need_metric(model)?;
            let theories = parse_theories(theory)?;
            let degree = parse_degree(degree)?;
            harmonic_section(ctx, &theories, degree)
        }
        Command::Hlc => hlc_section(ctx),
        Command::Delta => delta_section(ctx),
        Command::Lefschetz { groups, check } => {
            let section = lefschetz_section(ctx, *groups);
            if *check && !groups {
                let verdict = section.json["decomposes"].clone();
                let line = section
                    .text
                    .lines()
                    .last()
                    .unwrap_or_default()
                    .to_string();
                Section {
                    key: "lefschetz",
                    json: serde_json::json!({ "decomposes": verdict }),
                    text: line,
                }
            } else {
                section
            }
        }
        Command::Jdecomp => {
            need_j(model)?;
            jdecomp_section(ctx)
        }
        Command::Vspace => {
            need_metric(model)?;
            vspace_section(ctx)
        }
        Command::Inclusion { degree } => {
            need_metric(model)?;
            inclusion_section(ctx, *degree)
        }
        Command::Deform => {
            if model.deformations.is_empty() {
                eprintln!("error: the model has no deformation families");
                return Err(1);
            }
            match deform_section(ctx, &model.deformations) {
                Ok(section) => section,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(1);
                }
            }
        }
        Command::Report => {
            let (json, text) = match full_report(model) {
                Ok(pair) => pair,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Err(1);
                }
            };
            return Ok(finish(cli.json, &json, &text));
        }
    };
    Ok(finish(cli.json, &section.json, &section.text))
}

fn finish(as_json: bool, json: &serde_json::Value, text: &str) -> String {
    if as_json {
        let mut out = serde_json::to_string_pretty(json).expect("serializable");
        out.push('\n');
        out
    } else {
        let mut out = text.to_string();
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out
    }
}
