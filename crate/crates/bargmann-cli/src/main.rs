//! Command-line front end: membership checks, witness synthesis, invariant
//! evaluation, boundary export, sampling campaigns, and witness verification.
//!
//! Exit codes: 0 success, 1 domain-negative result (outside the region, a
//! closure violation, a failed verification), 2 usage or parse error.

mod files;
mod output;
mod svg;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bargmann::geometry::{boundary_radius, region_contains, BoundaryCurve, NGon};
use bargmann::oracle::{region_closure_test, sampled_invariants};
use bargmann::realize::{realize_qubit_boundary, realize_qubit_general, realize_qutrit_circulant};
use bargmann::states::{
    bargmann_invariant, geometric_phase, gram_of, multivariate_trace, MixedTuple, StateTuple,
};
use bargmann::Complex64;

use files::{
    LoadedTuple, TupleFile, WitnessFile, FORM_QUBIT_BOUNDARY, FORM_QUBIT_GENERAL,
    FORM_QUTRIT_CIRCULANT,
};
use output::{csv_cell, to_json};

/// Residual accepted from the circulant constructions.
const CIRCULANT_RESIDUAL_TOL: f64 = 1e-9;
/// Residual accepted from the general qubit construction.
const GENERAL_RESIDUAL_TOL: f64 = 1e-6;
/// Circulancy defect accepted when re-validating circulant witnesses.
const CIRCULANT_DEFECT_TOL: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "bargmann",
    about = "Bargmann invariants: evaluate, test realizability, synthesize witnesses",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessForm {
    QutritCirculant,
    QubitBoundary,
    QubitGeneral,
}

impl WitnessForm {
    fn as_str(self) -> &'static str {
        match self {
            WitnessForm::QutritCirculant => FORM_QUTRIT_CIRCULANT,
            WitnessForm::QubitBoundary => FORM_QUBIT_BOUNDARY,
            WitnessForm::QubitGeneral => FORM_QUBIT_GENERAL,
        }
    }

    fn residual_tol(self) -> f64 {
        match self {
            WitnessForm::QubitGeneral => GENERAL_RESIDUAL_TOL,
            _ => CIRCULANT_RESIDUAL_TOL,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryFormat {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complex value against the order-n invariant region.
    Check {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        re: f64,
        #[arg(allow_negative_numbers = true)]
        im: f64,
        /// Relative boundary tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Synthesize an explicit state tuple realizing a target invariant.
    Realize {
        n: usize,
        #[arg(allow_negative_numbers = true)]
        re: f64,
        #[arg(allow_negative_numbers = true)]
        im: f64,
        #[arg(long, value_enum)]
        form: WitnessForm,
        /// Write the witness here instead of standard output.
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate the invariant of a tuple file.
    Invariant {
        file: String,
        /// Evaluate in this cyclic order (1-based indices, e.g. 3,2,1).
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Export the region boundary as CSV samples or an SVG figure.
    Boundary {
        n: usize,
        samples: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: BoundaryFormat,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample Haar-random tuples and count region violations.
    Sample {
        n: usize,
        d: usize,
        count: usize,
        seed: u64,
        /// Also dump the sampled invariants as CSV here.
        #[arg(long)]
        deltas: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-check a witness file against its stored target.
    Verify {
        file: String,
        /// Residual tolerance; defaults to the form's threshold.
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Failures carrying their process exit code.
enum Failure {
    /// Domain-negative outcome (exit 1).
    Domain(String),
    /// Usage or parse problem (exit 2).
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { n, re, im, tol } => cmd_check(n, re, im, tol),
        Command::Realize {
            n,
            re,
            im,
            form,
            out,
        } => cmd_realize(n, re, im, form, out),
        Command::Invariant { file, order } => cmd_invariant(&file, order),
        Command::Boundary {
            n,
            samples,
            format,
            out,
        } => cmd_boundary(n, samples, format, out),
        Command::Sample {
            n,
            d,
            count,
            seed,
            deltas,
            out,
        } => cmd_sample(n, d, count, seed, deltas, out),
        Command::Verify { file, tol } => cmd_verify(&file, tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn emit(text: &str, out: Option<&str>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckOutput {
    classification: &'static str,
    margin: f64,
    boundary_radius_at_arg: Option<f64>,
}

fn cmd_check(n: usize, re: f64, im: f64, tol: f64) -> Result<(), Failure> {
    let delta = Complex64::new(re, im);
    let verdict = region_contains(delta, n, tol).map_err(|e| Failure::Usage(e.to_string()))?;
    let payload = CheckOutput {
        classification: verdict.classification.as_str(),
        margin: verdict.margin,
        boundary_radius_at_arg: boundary_radius(delta.arg(), n).ok(),
    };
    print!("{}", to_json(&payload));
    if verdict.is_inside() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "value is outside the order-{n} region (margin {:.3e})",
            verdict.margin
        )))
    }
}

fn cmd_realize(
    n: usize,
    re: f64,
    im: f64,
    form: WitnessForm,
    out: Option<String>,
) -> Result<(), Failure> {
    let target = Complex64::new(re, im);
    let verdict = region_contains(target, n, 1e-9).map_err(|e| Failure::Usage(e.to_string()))?;
    if !verdict.is_inside() {
        let radius = boundary_radius(target.arg(), n)
            .map(|r| format!("{r:.17}"))
            .unwrap_or_else(|_| "n/a".into());
        return Err(Failure::Domain(format!(
            "target is not realizable at order {n}: |target| = {:.17}, boundary radius at this argument = {radius}",
            target.norm()
        )));
    }

    let tuple = match form {
        WitnessForm::QutritCirculant => {
            realize_qutrit_circulant(target, n)
                .map_err(|e| Failure::Domain(e.to_string()))?
                .tuple
        }
        WitnessForm::QubitBoundary => {
            realize_qubit_boundary(target.arg(), n)
                .map_err(|e| Failure::Domain(e.to_string()))?
                .tuple
        }
        WitnessForm::QubitGeneral => {
            realize_qubit_general(target, n)
                .map_err(|e| Failure::Domain(e.to_string()))?
                .tuple
        }
    };

    let delta = bargmann_invariant(&tuple);
    let residual = (delta - target).norm();
    if residual > form.residual_tol() {
        let radius = boundary_radius(target.arg(), n).unwrap_or(f64::NAN);
        return Err(Failure::Domain(format!(
            "{} witness misses the target by {residual:.3e}; this form realizes boundary \
             values only (boundary radius at this argument: {radius:.17})",
            form.as_str()
        )));
    }

    let witness = WitnessFile {
        target: [target.re, target.im],
        n,
        form: form.as_str().into(),
        tuple: TupleFile::from_tuple(&tuple),
        residual,
        seed: None,
    };
    emit(&to_json(&witness), out.as_deref())
}

#[derive(Serialize)]
struct InvariantOutput {
    delta: [f64; 2],
    probability: f64,
    phase: Option<f64>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("cannot parse {path}: {e}")))
}

fn permuted<T: Clone>(items: &[T], order: &[usize]) -> Result<Vec<T>, Failure> {
    let n = items.len();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Failure::Usage(format!(
            "order must list all {n} indices, got {}",
            order.len()
        )));
    }
    let mut out = Vec::with_capacity(n);
    for &idx in order {
        if idx == 0 || idx > n || seen[idx - 1] {
            return Err(Failure::Usage(format!(
                "order is not a permutation of 1..={n}"
            )));
        }
        seen[idx - 1] = true;
        out.push(items[idx - 1].clone());
    }
    Ok(out)
}

fn cmd_invariant(path: &str, order: Option<Vec<usize>>) -> Result<(), Failure> {
    let file: TupleFile = read_json(path)?;
    let loaded = file.load().map_err(Failure::Usage)?;
    let delta = match loaded {
        LoadedTuple::Pure(tuple) => {
            let tuple = match &order {
                Some(order) => StateTuple::new(permuted(tuple.vectors(), order)?)
                    .map_err(|e| Failure::Usage(e.to_string()))?,
                None => tuple,
            };
            bargmann_invariant(&tuple)
        }
        LoadedTuple::Mixed(tuple) => {
            let tuple = match &order {
                Some(order) => {
                    let matrices: Vec<Vec<Complex64>> = (0..tuple.count())
                        .map(|i| tuple.matrix(i).to_vec())
                        .collect();
                    MixedTuple::new(permuted(&matrices, order)?, tuple.dim())
                        .map_err(|e| Failure::Usage(e.to_string()))?
                }
                None => tuple,
            };
            multivariate_trace(&tuple)
        }
    };
    let payload = InvariantOutput {
        delta: [delta.re, delta.im],
        probability: delta.norm_sqr(),
        phase: if delta.norm() <= 1e-12 {
            None
        } else {
            Some(delta.arg())
        },
    };
    print!("{}", to_json(&payload));
    Ok(())
}

fn cmd_boundary(
    n: usize,
    samples: usize,
    format: BoundaryFormat,
    out: Option<String>,
) -> Result<(), Failure> {
    let curve = BoundaryCurve::new(n).map_err(|e| Failure::Usage(e.to_string()))?;
    if samples < 3 {
        return Err(Failure::Usage(format!(
            "need at least 3 samples, got {samples}"
        )));
    }
    let thetas: Vec<f64> = (0..samples)
        .map(|i| {
            -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / (samples - 1) as f64
        })
        .collect();
    match format {
        BoundaryFormat::Csv => {
            let mut text = String::from("theta,root_re,root_im,delta_re,delta_im\n");
            for &theta in &thetas {
                let root = curve.root_at(theta);
                let delta = curve.invariant_at(theta);
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_cell(theta),
                    csv_cell(root.re),
                    csv_cell(root.im),
                    csv_cell(delta.re),
                    csv_cell(delta.im)
                ));
            }
            emit(&text, out.as_deref())
        }
        BoundaryFormat::Svg => {
            let region: Vec<Complex64> = thetas.iter().map(|&t| curve.invariant_at(t)).collect();
            let ngon = NGon::new(n).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(
                &svg::region_figure(&region, ngon.vertices()),
                out.as_deref(),
            )
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SampleOutput {
    n: usize,
    d: usize,
    count: usize,
    violations: usize,
    worst_margin: f64,
    seed: u64,
}

fn cmd_sample(
    n: usize,
    d: usize,
    count: usize,
    seed: u64,
    deltas: Option<String>,
    out: Option<String>,
) -> Result<(), Failure> {
    if n == 0 || d == 0 || count == 0 {
        return Err(Failure::Usage("n, d and count must be positive".into()));
    }
    let report = region_closure_test(n, d, count, seed);
    if let Some(path) = deltas {
        let mut text = String::from("delta_re,delta_im\n");
        for delta in sampled_invariants(n, d, count, seed) {
            text.push_str(&format!("{},{}\n", csv_cell(delta.re), csv_cell(delta.im)));
        }
        fs::write(&path, text).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
    }
    let payload = SampleOutput {
        n: report.n,
        d: report.d,
        count: report.count,
        violations: report.violations,
        worst_margin: report.worst_margin,
        seed: report.seed,
    };
    emit(&to_json(&payload), out.as_deref())?;
    if report.violations > 0 {
        return Err(Failure::Domain(format!(
            "{} of {} sampled invariants fell outside the region",
            report.violations, report.count
        )));
    }
    Ok(())
}

fn cmd_verify(path: &str, tol: Option<f64>) -> Result<(), Failure> {
    let witness: WitnessFile = read_json(path)?;
    let target = Complex64::new(witness.target[0], witness.target[1]);
    let tol = tol.unwrap_or(match witness.form.as_str() {
        FORM_QUBIT_GENERAL => GENERAL_RESIDUAL_TOL,
        _ => CIRCULANT_RESIDUAL_TOL,
    });

    // Tuple defects (bad norms, bad shapes) mean a tampered witness.
    let tuple = match witness.tuple.load().map_err(Failure::Domain)? {
        LoadedTuple::Pure(tuple) => tuple,
        LoadedTuple::Mixed(_) => {
            return Err(Failure::Domain(
                "witness tuples must be pure-state tuples".into(),
            ))
        }
    };
    if tuple.count() != witness.n {
        return Err(Failure::Domain(format!(
            "witness declares order {} but carries {} states",
            witness.n,
            tuple.count()
        )));
    }

    let delta = bargmann_invariant(&tuple);
    let residual = (delta - target).norm();
    if residual > tol {
        return Err(Failure::Domain(format!(
            "recomputed invariant misses the target by {residual:.3e} (tolerance {tol:.1e})"
        )));
    }

    match witness.form.as_str() {
        FORM_QUTRIT_CIRCULANT | FORM_QUBIT_BOUNDARY => {
            let g = gram_of(&tuple);
            let defect = g.circulant_defect();
            if defect > CIRCULANT_DEFECT_TOL {
                return Err(Failure::Domain(format!(
                    "witness Gram matrix is not circulant (defect {defect:.3e})"
                )));
            }
            let report = bargmann::gram::validate_gram(&g, 1e-9);
            if !report.pass {
                return Err(Failure::Domain(format!(
                    "witness Gram matrix is not PSD (min eigenvalue {:.3e})",
                    report.min_eigenvalue
                )));
            }
        }
        FORM_QUBIT_GENERAL => {
            if tuple.dim() != 2 {
                return Err(Failure::Domain(format!(
                    "qubit-general witness has dimension {}",
                    tuple.dim()
                )));
            }
        }
        other => {
            return Err(Failure::Usage(format!("unknown witness form `{other}`")));
        }
    }

    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct VerifyOutput {
        form: String,
        residual: f64,
        probability: f64,
        phase: Option<f64>,
    }
    let gp = geometric_phase(&tuple);
    print!(
        "{}",
        to_json(&VerifyOutput {
            form: witness.form,
            residual,
            probability: gp.probability,
            phase: gp.phase,
        })
    );
    Ok(())
}
