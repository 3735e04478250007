//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 usage or configuration, 3 internal consistency,
//! 4 no consistent eigenvalue, 5 invariant failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::eigenfunctions::{sample_grid, Eigenfunction};
use crate::error::{Error, Result};
use crate::nu_engine::{resolve_branches, solve_eigenvalue, BranchSelector, NUProblem};
use crate::params::ParamSet;
use crate::poly::QuadPoly;
use crate::potential::{evaluate_potential, to_dimensionless, PotentialSpec, UnitsConfig, Variant};
use crate::report::{
    complex_cells, spectrum_cells, spectrum_table, wavefunction_table, Cell, Format, Table,
    SPECTRUM_COLUMNS,
};
use crate::spectra::{
    consistent_branch, consistent_epsilon, spectrum_report, Case, SpectrumReport, CLOSURE_TOL,
};
use crate::verifier::{verify, Tolerances, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;
pub const EXIT_NO_EIGENVALUE: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

/// Largest number of parameter points a sweep may visit.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "ws-spectra",
    version,
    about = "Nikiforov-Uvarov spectra and eigenfunctions of generalized Woods-Saxon potentials"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// key=value parameter file; flags override its entries
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// text, csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// hermitian, pt or nonpt
    #[arg(long, global = true)]
    pub variant: Option<String>,
    #[arg(long = "V0R", global = true, allow_negative_numbers = true)]
    pub v0r: Option<f64>,
    #[arg(long = "V0I", global = true, allow_negative_numbers = true)]
    pub v0i: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long = "alphaI", global = true)]
    pub alpha_i: Option<f64>,
    #[arg(long = "R0", global = true, allow_negative_numbers = true)]
    pub r0: Option<f64>,
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long = "C", global = true, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true)]
    pub mass: Option<f64>,
    /// tolerance on min |lambda - lambda_n| (default 1e-10)
    #[arg(long = "tol-residual", global = true)]
    pub tol_residual: Option<f64>,
    /// root-finder start, `re` or `re,im`
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub seed: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Closed-form levels with admissibility
    Spectrum {
        #[arg(long = "n-max", default_value_t = 5)]
        n_max: usize,
    },
    /// Sample a normalized eigenfunction on an x grid
    Wavefunction {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long = "x-min", allow_negative_numbers = true)]
        x_min: Option<f64>,
        #[arg(long = "x-max", allow_negative_numbers = true)]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 512)]
        points: usize,
        /// dimensionless level to use instead of the computed one, `re` or `re,im`
        #[arg(long = "epsilon-override", allow_hyphen_values = true)]
        epsilon_override: Option<String>,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
        #[arg(long = "epsilon-override", allow_hyphen_values = true)]
        epsilon_override: Option<String>,
    },
    /// Resolve NU branches and eigenvalues of a user-supplied problem
    NuSolve {
        /// `c0,c1,c2`
        #[arg(long, allow_hyphen_values = true)]
        sigma: String,
        /// `c0,c1`
        #[arg(long = "tau-tilde", allow_hyphen_values = true)]
        tau_tilde: String,
        /// `c0,c1,c2`; at most one coefficient may contain `eps`
        #[arg(long = "sigma-tilde", allow_hyphen_values = true)]
        sigma_tilde: String,
        #[arg(long = "n-min", default_value_t = 0)]
        n_min: usize,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
        /// `admissible` or a branch index
        #[arg(long, default_value = "admissible")]
        branch: String,
    },
    /// Cartesian sweep over dimensionless parameters
    Sweep {
        /// `lo:hi:count`, a comma list, or one value
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        delta: String,
        #[arg(long = "q-grid", default_value = "1")]
        q_grid: String,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: usize,
    },
    /// Compare V(x) with conj(V(-x)) on a symmetric grid
    CheckSymmetry {
        #[arg(long = "x-max")]
        x_max: Option<f64>,
        #[arg(long, default_value_t = 257)]
        points: usize,
    },
}

/// Result of one command before it is written anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(output: String, diagnostics: Vec<String>) -> Self {
        Self {
            code: EXIT_OK,
            output,
            diagnostics,
        }
    }
}

pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::InvalidParameter(_)
        | Error::Argument(_)
        | Error::Parse { .. }
        | Error::Io(_)
        | Error::DegreeTooHigh { .. }
        | Error::Domain(_)
        | Error::Resolution(_)
        | Error::BranchIndex { .. }
        | Error::PoleProximity { .. } => EXIT_USAGE,
        Error::NoConsistentBranch { .. } | Error::Convergence { .. } => EXIT_NO_EIGENVALUE,
        _ => EXIT_CONSISTENCY,
    }
}

/// Parses `args` (program name first), runs the command and writes its output.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    for d in &outcome.diagnostics {
        let _ = writeln!(err, "{d}");
    }
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => out.write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let format = match &g.format {
        Some(f) => f.parse()?,
        None => Format::Text,
    };
    match &cli.command {
        Command::Spectrum { n_max } => cmd_spectrum(g, format, *n_max),
        Command::Wavefunction {
            n,
            x_min,
            x_max,
            points,
            epsilon_override,
        } => cmd_wavefunction(
            g,
            format,
            *n,
            (*x_min, *x_max),
            *points,
            epsilon_override.as_deref(),
        ),
        Command::Verify {
            n_max,
            epsilon_override,
        } => cmd_verify(g, format, *n_max, epsilon_override.as_deref()),
        Command::NuSolve {
            sigma,
            tau_tilde,
            sigma_tilde,
            n_min,
            n_max,
            branch,
        } => cmd_nu_solve(
            g,
            format,
            [sigma, tau_tilde, sigma_tilde],
            (*n_min, *n_max),
            branch,
        ),
        Command::Sweep {
            beta,
            gamma,
            delta,
            q_grid,
            n_max,
        } => cmd_sweep(g, format, [beta, gamma, delta, q_grid], *n_max),
        Command::CheckSymmetry { x_max, points } => cmd_check_symmetry(g, format, *x_max, *points),
    }
}

fn flag_params(g: &GlobalArgs) -> Result<ParamSet> {
    Ok(ParamSet {
        variant: g.variant.as_deref().map(str::parse).transpose()?,
        v0r: g.v0r,
        v0i: g.v0i,
        alpha: g.alpha,
        alpha_i: g.alpha_i,
        r0: g.r0,
        q: g.q,
        c: g.c,
        hbar: g.hbar,
        mass: g.mass,
    })
}

fn param_set(g: &GlobalArgs) -> Result<ParamSet> {
    let flags = flag_params(g)?;
    match &g.config {
        Some(path) => Ok(ParamSet::read(path)?.merged_with(&flags)),
        None => Ok(flags),
    }
}

fn resolve(g: &GlobalArgs) -> Result<(PotentialSpec, UnitsConfig)> {
    param_set(g)?.resolve()
}

fn closure_tol(g: &GlobalArgs) -> Result<f64> {
    match g.tol_residual {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(Error::Argument(format!(
            "--tol-residual must be positive, got {t}"
        ))),
        Some(t) => Ok(t),
        None => Ok(CLOSURE_TOL),
    }
}

/// `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let bad = || Error::Argument(format!("expected 're' or 're,im', got '{text}'"));
    let mut parts = text.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn render_all(tables: &[Table], format: Format, comments: &[String]) -> String {
    let mut out = String::new();
    for t in tables {
        out.push_str(&t.render(format));
    }
    if format == Format::Text {
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
    }
    out
}

fn spectrum_findings(report: &SpectrumReport) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(bound) = report.printed_level_bound {
        out.push(format!("printed level bound: {bound}"));
    }
    if report.empty_by_amgm {
        out.push("empty_by_amgm=true: no level can have epsilon > 0 (informational)".into());
    }
    for (level, d) in report.levels.iter().zip(&report.diagnostics) {
        if let Some(verdict) = d.printed_inequality {
            out.push(format!("n={}: printed inequality {}", level.n, verdict));
        }
        if (d.consistent_epsilon - level.epsilon).norm() > 0.0 {
            out.push(format!(
                "n={}: printed epsilon {} differs from the quantization-consistent {} (residual {:.3e}, informational)",
                level.n, level.epsilon, d.consistent_epsilon, d.min_residual
            ));
        }
    }
    out
}

pub fn cmd_spectrum(g: &GlobalArgs, format: Format, n_max: usize) -> Result<Outcome> {
    let (spec, units) = resolve(g)?;
    let tol = closure_tol(g)?;
    let report = spectrum_report(&spec, &units, n_max)?;
    let base = to_dimensionless(&spec, &units, Complex64::new(0.0, 0.0));
    let case = Case::of(spec.variant);
    let mut code = EXIT_OK;
    let mut diagnostics = spectrum_findings(&report);
    for (level, d) in report.levels.iter().zip(&report.diagnostics) {
        let params = base.with_epsilon(d.consistent_epsilon);
        let residual = crate::spectra::crosscheck_quantization(case, level.n, &params)?
            .iter()
            .map(|r| r.norm())
            .fold(f64::INFINITY, f64::min);
        if residual > tol * d.consistent_epsilon.norm().max(1.0) {
            code = EXIT_CONSISTENCY;
            diagnostics.push(format!(
                "error: quantization closure fails at n={} (min residual {residual:.3e})",
                level.n
            ));
        }
    }
    let output = render_all(&[spectrum_table(&report)], format, &[]);
    Ok(Outcome {
        code,
        output,
        diagnostics,
    })
}

pub fn cmd_wavefunction(
    g: &GlobalArgs,
    format: Format,
    n: usize,
    window: (Option<f64>, Option<f64>),
    points: usize,
    epsilon_override: Option<&str>,
) -> Result<Outcome> {
    let (spec, units) = resolve(g)?;
    if points < crate::eigenfunctions::MIN_NORMALIZATION_POINTS {
        return Err(Error::Argument(format!(
            "--points must be at least 64, got {points}"
        )));
    }
    let base = to_dimensionless(&spec, &units, Complex64::new(0.0, 0.0));
    let case = Case::of(spec.variant);
    let eps = match epsilon_override {
        Some(text) => parse_complex(text)?,
        None => consistent_epsilon(case, n, &base)?,
    };
    let params = base.with_epsilon(eps);
    let (index, branch) = consistent_branch(case, n, &params).and_then(|(i, b)| {
        let tol = closure_tol(g)?;
        let p = crate::spectra::ws_problem(case, &params)?;
        let r = (b.lambda - crate::nu_engine::lambda_n(&p, &b, n)).norm();
        if r > tol * eps.norm().max(1.0) {
            Err(Error::NoConsistentBranch { residual: r })
        } else {
            Ok((i, b))
        }
    })?;
    let f = Eigenfunction::from_branch(spec.variant, n, &params, &branch, spec.steepness())?;
    let default = f.default_window();
    let window = (window.0.unwrap_or(default.0), window.1.unwrap_or(default.1));
    let f = f.normalized(window, points)?;
    let samples = sample_grid(&f, window, points)?;
    let diagnostics = vec![format!(
        "n={n}: epsilon {eps} on branch {index}; scale {}",
        f.scale.re
    )];
    Ok(Outcome::ok(
        render_all(&[wavefunction_table(&samples)], format, &[]),
        diagnostics,
    ))
}

fn verify_tables(report: &VerifyReport) -> Vec<Table> {
    let mut checks = Table::new("verify", &["check", "value", "threshold", "passed"]);
    for c in &report.checks {
        checks.push(vec![
            c.name.clone().into(),
            c.value.into(),
            c.threshold.into(),
            c.passed.into(),
        ]);
    }
    let mut tables = vec![checks];
    if let Some(d) = &report.divergence {
        let mut t = Table::new(
            "divergence",
            &[
                "n",
                "closed_re",
                "closed_im",
                "oracle",
                "abs_deviation",
                "rel_deviation",
                "matched",
            ],
        );
        for r in &d.rows {
            let [re, im] = complex_cells(r.closed_form);
            t.push(vec![
                r.n.into(),
                re,
                im,
                r.oracle.into(),
                r.abs_deviation.into(),
                r.rel_deviation.into(),
                r.matched.into(),
            ]);
        }
        tables.push(t);
    }
    tables
}

pub fn cmd_verify(
    g: &GlobalArgs,
    format: Format,
    n_max: usize,
    epsilon_override: Option<&str>,
) -> Result<Outcome> {
    let (spec, units) = resolve(g)?;
    let tol = Tolerances {
        closure: closure_tol(g)?,
        ..Tolerances::default()
    };
    let eps = epsilon_override.map(parse_complex).transpose()?;
    let report = verify(&spec, &units, n_max, &tol, eps)?;
    let mut comments: Vec<String> = report
        .findings
        .iter()
        .map(|f| format!("finding: {f}"))
        .collect();
    if let Some(d) = &report.divergence {
        comments.push(d.label.to_string());
    }
    let mut diagnostics = comments.clone();
    let code = match report.first_failure() {
        Some(c) => {
            diagnostics.push(format!(
                "invariant failed: {} (value {:.3e} > threshold {:.3e})",
                c.name, c.value, c.threshold
            ));
            EXIT_INVARIANT
        }
        None => EXIT_OK,
    };
    Ok(Outcome {
        code,
        output: render_all(&verify_tables(&report), format, &comments),
        diagnostics,
    })
}

/// `constant + slope * eps` parsed from one coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub constant: Complex64,
    pub slope: Complex64,
}

impl Affine {
    pub fn has_eps(&self) -> bool {
        self.slope != Complex64::new(0.0, 0.0)
    }

    pub fn at(&self, eps: Complex64) -> Complex64 {
        self.constant + self.slope * eps
    }
}

/// Grammar: terms joined by `+`/`-`; a term is a real number, a number with
/// an `i` suffix, `eps`, or `<number>*eps`.
pub fn parse_affine(text: &str) -> Result<Affine> {
    let bad = |why: &str| Error::Argument(format!("bad coefficient '{text}': {why}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for (i, &ch) in bytes.iter().enumerate() {
        let exponent_sign =
            i > 0 && matches!(bytes[i - 1], b'e' | b'E') && i >= 2 && bytes[i - 2].is_ascii_digit();
        if (ch == b'+' || ch == b'-') && i > start && !exponent_sign {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    let mut out = Affine {
        constant: Complex64::new(0.0, 0.0),
        slope: Complex64::new(0.0, 0.0),
    };
    for term in terms {
        let (sign, body) = match term.as_bytes()[0] {
            b'-' => (-1.0, &term[1..]),
            b'+' => (1.0, &term[1..]),
            _ => (1.0, term),
        };
        let number = |s: &str| -> Result<Complex64> {
            if let Some(im) = s.strip_suffix('i') {
                let v = if im.is_empty() {
                    1.0
                } else {
                    im.parse::<f64>().map_err(|_| bad(s))?
                };
                Ok(Complex64::new(0.0, v))
            } else {
                Ok(Complex64::new(s.parse::<f64>().map_err(|_| bad(s))?, 0.0))
            }
        };
        if body == "eps" {
            out.slope += sign;
        } else if let Some(factor) = body.strip_suffix("*eps") {
            out.slope += sign * number(factor)?;
        } else if body.contains("eps") {
            return Err(bad("eps must appear as 'eps' or '<number>*eps'"));
        } else {
            out.constant += sign * number(body)?;
        }
    }
    Ok(out)
}

fn parse_coefficients(text: &str, expected: usize) -> Result<Vec<Affine>> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != expected {
        return Err(Error::Argument(format!(
            "expected {expected} comma-separated coefficients, got '{text}'"
        )));
    }
    parts.into_iter().map(parse_affine).collect()
}

fn parse_selector(text: &str) -> Result<BranchSelector> {
    if text == "admissible" {
        return Ok(BranchSelector::FirstAdmissible);
    }
    text.parse::<usize>()
        .map(BranchSelector::Index)
        .map_err(|_| {
            Error::Argument(format!(
                "--branch expects 'admissible' or an index, got '{text}'"
            ))
        })
}

fn branch_table(problem: &NUProblem) -> Result<Table> {
    let mut t = Table::new(
        "nu-branches",
        &[
            "index",
            "k_sign",
            "pi_sign",
            "k_re",
            "k_im",
            "pi_c0_re",
            "pi_c0_im",
            "pi_c1_re",
            "pi_c1_im",
            "tau_c0_re",
            "tau_c0_im",
            "tau_c1_re",
            "tau_c1_im",
            "lambda_re",
            "lambda_im",
            "admissible",
        ],
    );
    for (i, b) in resolve_branches(problem)?.iter().enumerate() {
        let mut row: Vec<Cell> = vec![
            i.into(),
            (b.k_sign.as_i8() as i64).into(),
            (b.pi_sign.as_i8() as i64).into(),
        ];
        for z in [b.k, b.pi.c0, b.pi.c1, b.tau.c0, b.tau.c1, b.lambda] {
            row.extend(complex_cells(z));
        }
        row.push(b.admissible.into());
        t.push(row);
    }
    Ok(t)
}

pub fn cmd_nu_solve(
    g: &GlobalArgs,
    format: Format,
    polys: [&String; 3],
    n_range: (usize, usize),
    branch: &str,
) -> Result<Outcome> {
    let sigma = parse_coefficients(polys[0], 3)?;
    let tau = parse_coefficients(polys[1], 2)?;
    let sigma_tilde = parse_coefficients(polys[2], 3)?;
    let selector = parse_selector(branch)?;
    let seed = match &g.seed {
        Some(s) => parse_complex(s)?,
        None => Complex64::new(1.0, 0.0),
    };
    let all: Vec<&Affine> = sigma.iter().chain(&tau).chain(&sigma_tilde).collect();
    let with_eps = all.iter().filter(|a| a.has_eps()).count();
    if with_eps > 1 {
        return Err(Error::Argument(format!(
            "eps appears in {with_eps} coefficients; the family must be affine in exactly one"
        )));
    }
    let family = |eps: Complex64| {
        let q = |c: &[Affine]| {
            QuadPoly::new(
                c[0].at(eps),
                c[1].at(eps),
                c.get(2).map_or(Complex64::new(0.0, 0.0), |a| a.at(eps)),
            )
        };
        NUProblem::new(q(&sigma), q(&tau), q(&sigma_tilde))
    };
    let mut tables = vec![branch_table(&family(seed)?)?];
    let mut diagnostics = Vec::new();
    if with_eps == 1 {
        let (n_min, n_max) = n_range;
        if n_min > n_max {
            return Err(Error::Argument(format!(
                "--n-min {n_min} exceeds --n-max {n_max}"
            )));
        }
        let mut t = Table::new(
            "nu-eigen",
            &["n", "eps_re", "eps_im", "residual", "iterations"],
        );
        for n in n_min..=n_max {
            let sol = solve_eigenvalue(family, selector, n, seed)?;
            let [re, im] = complex_cells(sol.epsilon);
            t.push(vec![
                n.into(),
                re,
                im,
                sol.residual.into(),
                sol.iterations.into(),
            ]);
        }
        tables.push(t);
    } else {
        diagnostics.push("no eps placeholder: branch report only".to_string());
    }
    Ok(Outcome::ok(render_all(&tables, format, &[]), diagnostics))
}

/// `lo:hi:count`, `a,b,c`, or a single number.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || {
        Error::Argument(format!(
            "bad grid '{text}' (use lo:hi:count, a,b,c or a number)"
        ))
    };
    let num = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| bad()).and_then(|v| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad())
            }
        })
    };
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let (lo, hi) = (num(parts[0])?, num(parts[1])?);
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if count == 0 {
            return Err(bad());
        }
        if count == 1 {
            return Ok(vec![lo]);
        }
        let step = (hi - lo) / (count - 1) as f64;
        return Ok((0..count)
            .map(|j| {
                if j + 1 == count {
                    hi
                } else {
                    lo + j as f64 * step
                }
            })
            .collect());
    }
    text.split(',').map(num).collect()
}

pub const SWEEP_TAGS: [&str; 4] = ["beta", "gamma", "delta", "q"];

pub fn cmd_sweep(
    g: &GlobalArgs,
    format: Format,
    grids: [&String; 4],
    n_max: usize,
) -> Result<Outcome> {
    let set = param_set(g)?;
    let variant = set.variant.unwrap_or(Variant::PtSymmetric);
    let units = set.resolve_units()?;
    let steepness = match variant {
        Variant::PtSymmetric => set.alpha_i.unwrap_or(0.5),
        _ => set.alpha.unwrap_or(0.5),
    };
    let axes = grids
        .iter()
        .map(|t| parse_grid(t))
        .collect::<Result<Vec<_>>>()?;
    let total = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.len()))
        .unwrap_or(usize::MAX);
    if total > MAX_SWEEP_POINTS {
        return Err(Error::Argument(format!(
            "sweep has {total} points; the limit is {MAX_SWEEP_POINTS}"
        )));
    }
    if n_max > crate::spectra::MAX_LEVELS {
        return Err(Error::Argument(format!(
            "--n-max {n_max} exceeds {}",
            crate::spectra::MAX_LEVELS
        )));
    }
    let mut points = Vec::with_capacity(total);
    for &b in &axes[0] {
        for &c in &axes[1] {
            for &d in &axes[2] {
                for &q in &axes[3] {
                    points.push([b, c, d, q]);
                }
            }
        }
    }
    let blocks: Vec<Result<Vec<Vec<Cell>>>> = points
        .par_iter()
        .map(|&[beta, gamma, delta, q]| {
            let spec = PotentialSpec::from_dimensionless(
                variant, beta, gamma, delta, q, steepness, units,
            )?;
            let report = spectrum_report(&spec, &units, n_max)?;
            Ok(spectrum_cells(&report)
                .into_iter()
                .map(|row| {
                    let mut full: Vec<Cell> =
                        vec![beta.into(), gamma.into(), delta.into(), q.into()];
                    full.extend(row);
                    full.push(report.empty_by_amgm.into());
                    full
                })
                .collect())
        })
        .collect();
    let columns: Vec<&str> = SWEEP_TAGS
        .iter()
        .chain(SPECTRUM_COLUMNS.iter())
        .chain(std::iter::once(&"empty_by_amgm"))
        .copied()
        .collect();
    let mut t = Table::new("sweep", &columns);
    for block in blocks {
        for row in block? {
            t.push(row);
        }
    }
    Ok(Outcome::ok(render_all(&[t], format, &[]), Vec::new()))
}

pub fn cmd_check_symmetry(
    g: &GlobalArgs,
    format: Format,
    x_max: Option<f64>,
    points: usize,
) -> Result<Outcome> {
    let (spec, _) = resolve(g)?;
    // inside one period the PT grid stays clear of the q = 1 poles at +-P/2
    let x_max = x_max.unwrap_or(match spec.period() {
        Some(p) => 0.45 * p,
        None => 10.0 * spec.diffuseness(),
    });
    let grid = crate::verifier::Grid1D::new(-x_max, x_max, points)?;
    let mut t = Table::new(
        "symmetry",
        &["x", "v_re", "v_im", "mirror_re", "mirror_im", "defect"],
    );
    let mut worst: f64 = 0.0;
    for x in grid.nodes() {
        let v = evaluate_potential(&spec, x)?;
        let mirror = evaluate_potential(&spec, -x)?.conj();
        let defect = (mirror - v).norm();
        worst = worst.max(defect);
        let [vr, vi] = complex_cells(v);
        let [mr, mi] = complex_cells(mirror);
        t.push(vec![x.into(), vr, vi, mr, mi, defect.into()]);
    }
    let tol = Tolerances::default().pt_defect;
    let mut diagnostics = vec![format!("max |conj(V(-x)) - V(x)| = {worst:.3e}")];
    let code = if spec.variant == Variant::PtSymmetric && worst > tol {
        diagnostics.push(format!(
            "invariant failed: pt symmetry (defect {worst:.3e} > {tol:.0e})"
        ));
        EXIT_INVARIANT
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        code,
        output: render_all(&[t], format, &[format!("max defect {worst:e}")]),
        diagnostics,
    })
}
