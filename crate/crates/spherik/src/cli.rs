//! Command-line front end. Exit codes: 0 for EXISTS or plain success, 1 for
//! NOT_EXISTS, 2 for INDETERMINATE, 64 for usage errors, 65 for input
//! errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num::Signed;

use crate::criteria::{
    check_csck, check_fano_ke, hilbert_series_oracle, search_destabilizer,
    toric_surface::DEFAULT_TOL, SearchParams,
};
use crate::error::Error;
use crate::functional::{
    eval_l, linearity_domains, parse_pl_function, weighted_barycenter, FunctionalData,
    PLFunction,
};
use crate::model::{load_spherical_data, normalize, NormalizedModel};
use crate::rational::{rat_i64, rat_str, vec_str};
use crate::report::{
    emit_json, emit_text, exit_code_for, provenance_for, search_report, verdict_report, Report,
};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;

#[derive(Parser)]
#[command(
    name = "spherik",
    about = "Exact cscK / Kähler–Einstein existence verdicts for polarized spherical varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the derived combinatorial data of a model.
    Describe {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Barycenter criterion for anticanonically polarized Fano models.
    CheckFano {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide cscK existence via the applicable criterion, falling back to
    /// a (non-conclusive) destabilizer search.
    CheckCsck {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate the functional L on a PL test function.
    #[command(name = "eval-L", alias = "eval-l")]
    EvalL {
        input: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for a destabilizing PL test function.
    Search {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Hilbert-series cross check of the functional on a test function.
    Hilbert {
        input: PathBuf,
        /// PL function file; defaults to the zero function.
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long, default_value_t = 20)]
        kmax: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Parses argv and runs; returns the process exit code and prints the
/// report to stdout (errors to stderr).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // Help and version are successful terminations.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok((mut report, code, format)) => {
            report.timing_ms = Some(start.elapsed().as_millis() as u64);
            let text = match format {
                Format::Json => format!("{}\n", emit_json(&report)),
                Format::Text => emit_text(&report),
            };
            // Ignore broken pipes so `spherik ... | head` exits cleanly.
            use std::io::Write;
            let _ = std::io::stdout().write_all(text.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn load_model(path: &Path) -> Result<NormalizedModel, Error> {
    normalize(&load_spherical_data(path)?)
}

fn load_pl(path: &Path) -> Result<PLFunction, Error> {
    parse_pl_function(&std::fs::read_to_string(path)?)
}

fn dispatch(cmd: Command) -> Result<(Report, i32, Format), Error> {
    match cmd {
        Command::Describe { input, format } => {
            let model = load_model(&input)?;
            Ok((describe(&model)?, 0, format))
        }
        Command::CheckFano { input, format } => {
            let model = load_model(&input)?;
            let verdict = check_fano_ke(&model)?;
            let code = exit_code_for(Some(verdict.outcome));
            Ok((verdict_report("check-fano", &verdict), code, format))
        }
        Command::CheckCsck { input, tol, m, budget, seed, format } => {
            let model = load_model(&input)?;
            let params = SearchParams { m, budget, seed };
            let verdict = check_csck(&model, tol, &params)?;
            let code = exit_code_for(Some(verdict.outcome));
            Ok((verdict_report("check-csck", &verdict), code, format))
        }
        Command::EvalL { input, f, format } => {
            let model = load_model(&input)?;
            let func = load_pl(&f)?;
            let fd = FunctionalData::build(&model)?;
            let value = eval_l(&model, &fd, &func)?;
            let nld = linearity_domains(&model, &func)?.nld();
            let report = Report {
                command: "eval-L".into(),
                outcome: None,
                witness: Some(crate::report::witness_report(&func, &value)),
                facts: vec![
                    ("L".into(), rat_str(&value)),
                    ("a".into(), rat_str(&fd.a)),
                    ("nld".into(), nld.to_string()),
                ],
                provenance: provenance_for("functional"),
                timing_ms: None,
            };
            Ok((report, 0, format))
        }
        Command::Search { input, m, budget, seed, format } => {
            let model = load_model(&input)?;
            let result = search_destabilizer(&model, &SearchParams { m, budget, seed })?;
            let code = if result.best_value.is_negative() { 1 } else { 0 };
            Ok((search_report(&result), code, format))
        }
        Command::Hilbert { input, f, kmax, format } => {
            let model = load_model(&input)?;
            let func = match f {
                Some(p) => load_pl(&p)?,
                None => PLFunction::constant(model.rank, rat_i64(0)),
            };
            let fit = hilbert_series_oracle(&model, &func, kmax)?;
            let report = Report {
                command: "hilbert".into(),
                outcome: None,
                witness: None,
                facts: vec![
                    ("k_max".into(), fit.k_max.to_string()),
                    ("fit_from".into(), fit.fit_from.to_string()),
                    ("F0".into(), format!("{:.9e}", fit.f0)),
                    ("F1".into(), format!("{:.9e}", fit.f1)),
                    ("residual".into(), format!("{:.3e}", fit.residual)),
                ],
                provenance: provenance_for("hilbert"),
                timing_ms: None,
            };
            Ok((report, 0, format))
        }
    }
}

fn describe(model: &NormalizedModel) -> Result<Report, Error> {
    let fd = FunctionalData::build(model)?;
    let barycenter = weighted_barycenter(model, &fd)?;
    let roots: Vec<String> = model
        .active_roots
        .iter()
        .map(|&k| format!("{:?}", vec_str(&model.positive_roots[k])))
        .collect();
    let facts = vec![
        ("rank".into(), model.rank.to_string()),
        ("toric".into(), model.is_toric().to_string()),
        ("horospherical".into(), model.is_horospherical().to_string()),
        ("active_roots".into(), format!("[{}]", roots.join(", "))),
        ("P".into(), fd.p.to_string()),
        ("Q".into(), fd.q.to_string()),
        ("a".into(), rat_str(&fd.a)),
        ("volume_P".into(), rat_str(&fd.vol_p)),
        ("boundary_P".into(), rat_str(&fd.boundary_p)),
        ("barycenter".into(), format!("{:?}", vec_str(&barycenter))),
        ("two_varpi_x".into(), format!("{:?}", vec_str(&model.two_varpi_x))),
    ];
    Ok(Report {
        command: "describe".into(),
        outcome: None,
        witness: None,
        facts,
        provenance: provenance_for("describe"),
        timing_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_error_code() {
        assert_eq!(run(["spherik", "no-such-command"]), EXIT_USAGE);
        assert_eq!(run(["spherik"]), EXIT_USAGE);
    }

    #[test]
    fn missing_file_is_input_error() {
        assert_eq!(run(["spherik", "describe", "/nonexistent/x.json"]), EXIT_INPUT);
    }
}
