//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ws_spectra::eigenfunctions::{
    jacobi, jacobi_derivative, jacobi_second_derivative, Eigenfunction, JacobiParams,
};
use ws_spectra::nu_engine::{
    rodrigues_polynomial, solve_eigenvalue, BranchSelector, NUBranch, NUProblem, Sign,
};
use ws_spectra::poly::QuadPoly;
use ws_spectra::potential::{
    evaluate_potential, from_dimensionless, pt_potential_expanded, pt_symmetry_defect,
    DimensionlessParams, PotentialSpec, UnitsConfig, Variant,
};
use ws_spectra::spectra::{crosscheck_quantization, nonpt_energy, pt_energy, pt_epsilon, Case};
use ws_spectra::verifier::{
    convergence_study_with, ode_residual_s, ode_residual_x, potential_oracle, random_s_points,
    residual_window, verify, Grid1D, Tolerances,
};
use ws_spectra::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:?} (limit {limit:?})")
    })
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// beta in [0.5, 10], gamma in [0, q/4), q in {0.5, 1, 2}.
fn pt_draws(count: usize, seed: u64) -> Vec<(f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
            (rng.gen_range(0.5..=10.0), rng.gen_range(0.0..q / 4.0), q)
        })
        .collect()
}

fn nonpt_draws(count: usize, seed: u64) -> Vec<(f64, f64, f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
            (
                rng.gen_range(0.5..=10.0),
                rng.gen_range(0.0..2.0),
                rng.gen_range(-2.0..2.0),
                q,
            )
        })
        .collect()
}

fn min_residual(case: Case, n: usize, p: &DimensionlessParams) -> Result<f64, String> {
    Ok(crosscheck_quantization(case, n, p)
        .map_err(s)?
        .iter()
        .map(|r| r.norm())
        .fold(f64::INFINITY, f64::min))
}

fn oscillator(eps: Complex64) -> ws_spectra::Result<NUProblem> {
    NUProblem::new(
        QuadPoly::real(1.0, 0.0, 0.0),
        QuadPoly::ZERO,
        QuadPoly::new(eps, c(0.0, 0.0), c(-1.0, 0.0)),
    )
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in 0..4 {
        let sol = solve_eigenvalue(oscillator, BranchSelector::FirstAdmissible, n, c(1.0, 0.0))
            .map_err(s)?;
        let err = (sol.epsilon - c((2 * n + 1) as f64, 0.0)).norm();
        ensure(err <= 1e-9, || format!("n={n}: eps = {}", sol.epsilon))?;
        worst = worst.max(err);
    }
    within(start.elapsed(), Duration::from_secs(1), "oscillator solve")?;
    Ok(format!("max |eps_n - (2n+1)| = {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (beta, gamma, q) in pt_draws(10, 2) {
        for n in 0..4 {
            let eps = pt_epsilon(n, beta, gamma, q).map_err(s)?;
            let r = min_residual(
                Case::Pt,
                n,
                &DimensionlessParams::new(eps, beta, gamma, 0.0, q),
            )?;
            ensure(r <= 1e-10, || {
                format!("beta={beta} gamma={gamma} q={q} n={n}: residual {r:e}")
            })?;
            worst = worst.max(r);
        }
    }
    within(start.elapsed(), Duration::from_secs(1), "closure check")?;
    Ok(format!("40 levels, max residual {worst:.1e}"))
}

fn criterion_3() -> Outcome {
    let units = UnitsConfig::default();
    let mut count = 0;
    for (beta, gamma, q) in pt_draws(50, 3) {
        let spec = PotentialSpec::from_dimensionless(
            Variant::PtSymmetric,
            beta,
            gamma,
            0.0,
            q,
            0.5,
            units,
        )
        .map_err(s)?;
        for n in 0..6 {
            let eps = pt_epsilon(n, beta, gamma, q).map_err(s)?;
            let level = pt_energy(n, &spec, &units).map_err(s)?;
            ensure(eps.im == 0.0 && level.energy.im == 0.0, || {
                format!(
                    "beta={beta} gamma={gamma} q={q} n={n}: eps {eps}, E {}",
                    level.energy
                )
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} levels with Im eps = Im E = 0 exactly"))
}

fn criterion_4() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for (beta, gamma, q) in pt_draws(100, 4) {
        for n in 0..4 {
            let eps = pt_epsilon(n, beta, gamma, q).map_err(s)?.re;
            let b = 1.0 + 2.0 * n as f64 + (1.0 - 4.0 * gamma / q).sqrt();
            let gap = (b * b - 4.0 * beta).abs() / (4.0 * beta);
            ensure(eps <= 0.0, || {
                format!("beta={beta} gamma={gamma} q={q} n={n}: eps {eps} > 0")
            })?;
            ensure(gap < 1e-6 || eps < 0.0, || {
                format!("eps = 0 with b^2 != 4 beta at n={n}")
            })?;
            worst = worst.max(eps);
        }
    }
    let equality = pt_epsilon(0, 1.0, 0.0, 1.0).map_err(s)?;
    ensure(equality.norm() <= 1e-14, || {
        format!("beta=1 gamma=0 q=1 n=0: eps = {equality}")
    })?;

    let units = UnitsConfig::default();
    let spec =
        PotentialSpec::from_dimensionless(Variant::PtSymmetric, 1.0, 0.0, 0.0, 1.0, 0.5, units)
            .map_err(s)?;
    let report = verify(&spec, &units, 3, &Tolerances::default(), None).map_err(s)?;
    ensure(report.passed(), || {
        "verify failed on the equality spec".into()
    })?;
    ensure(
        report
            .findings
            .iter()
            .any(|f| f.contains("empty_by_amgm=true")),
        || {
            format!(
                "no unsatisfiable-inequality finding in {:?}",
                report.findings
            )
        },
    )?;
    Ok(format!(
        "max eps over 400 levels {worst:.3e}; equality case eps = {}; inequality flagged",
        equality.re
    ))
}

fn criterion_5() -> Outcome {
    let units = UnitsConfig::default();
    let spec = PotentialSpec::non_pt(1.0, 0.0, 0.5, 0.0)
        .and_then(|p| p.with_c(0.0))
        .map_err(s)?;
    let e0 = nonpt_energy(0, &spec, &units).map_err(s)?.energy;
    ensure(
        (e0 - c(-0.625, 0.0)).norm() <= 1e-14 && e0.im == 0.0,
        || format!("E0 = {e0}"),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let spec = PotentialSpec::non_pt(
            rng.gen_range(0.1..20.0),
            0.0,
            rng.gen_range(0.2..2.0),
            rng.gen_range(0.0..8.0),
        )
        .map_err(s)?;
        for n in 0..4 {
            let e = nonpt_energy(n, &spec, &units).map_err(s)?.energy;
            ensure(e.im == 0.0, || format!("{spec:?} n={n}: E = {e}"))?;
        }
    }
    Ok(format!("E0 = {}; 200 V0I = 0 levels real", e0.re))
}

fn criterion_6() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut check =
        |variant: Variant, params: DimensionlessParams, seed: u64| -> Result<(), String> {
            for n in 0..4 {
                let f = Eigenfunction::consistent(variant, n, &params, 0.5).map_err(s)?;
                let points = random_s_points(50, params.q, seed + n as u64);
                let r = ode_residual_s(&f, &points).map_err(s)?;
                ensure(r <= 1e-10, || {
                    format!("{variant} {params:?} n={n}: residual {r:e}")
                })?;
                worst = worst.max(r);
            }
            Ok(())
        };
    for (i, (beta, gamma, q)) in pt_draws(10, 6).into_iter().enumerate() {
        let p = DimensionlessParams::new(c(0.0, 0.0), beta, gamma, 0.0, q);
        check(Variant::PtSymmetric, p, i as u64 * 10)?;
    }
    for (i, (beta, gamma, delta, q)) in nonpt_draws(10, 7).into_iter().enumerate() {
        let p = DimensionlessParams::new(c(0.0, 0.0), beta, gamma, delta, q);
        check(Variant::NonPtComplex, p, 500 + i as u64 * 10)?;
    }
    Ok(format!(
        "80 eigenpairs x 50 points, max relative residual {worst:.1e}"
    ))
}

fn x_residual(spec: &PotentialSpec, units: &UnitsConfig, n: usize) -> Result<f64, String> {
    let f = Eigenfunction::for_spec(spec, units, n).map_err(s)?;
    let energy = from_dimensionless(f.params.epsilon, spec, units);
    let (lo, hi) = residual_window(spec);
    let grid = Grid1D::with_step(lo, hi, 1e-3).map_err(s)?;
    Ok(
        ode_residual_x(spec, units, energy, |x| f.sample(x).map(|w| w.psi), &grid)
            .map_err(s)?
            .rel_residual_norm,
    )
}

fn criterion_7() -> Outcome {
    let units = UnitsConfig::default();
    let mut worst: f64 = 0.0;
    let mut specs = Vec::new();
    for (beta, gamma, q) in pt_draws(4, 8) {
        specs.push(PotentialSpec::from_dimensionless(
            Variant::PtSymmetric,
            beta,
            gamma,
            0.0,
            q,
            0.5,
            units,
        ));
    }
    for (beta, gamma, delta, q) in nonpt_draws(4, 9) {
        specs.push(PotentialSpec::from_dimensionless(
            Variant::NonPtComplex,
            beta,
            gamma,
            delta,
            q,
            0.5,
            units,
        ));
    }
    for spec in specs {
        let spec = spec.map_err(s)?;
        for n in 0..4 {
            let r = x_residual(&spec, &units, n)?;
            ensure(r <= 1e-6, || format!("{spec:?} n={n}: residual {r:e}"))?;
            worst = worst.max(r);
        }
    }
    Ok(format!(
        "32 eigenpairs, h = 1e-3, max relative residual {worst:.1e}"
    ))
}

fn criterion_8() -> Outcome {
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(1e-300);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut worst_dual, mut worst_fd): (f64, f64) = (0.0, 0.0);
    for _ in 0..5 {
        let a = c(rng.gen_range(-0.5..3.0), rng.gen_range(-2.0..2.0));
        let b = c(rng.gen_range(-0.5..3.0), rng.gen_range(-2.0..2.0));
        // sigma = s(1 - s), weight s^a (1 - s)^b, x = 1 - 2s
        let problem = NUProblem::new(
            QuadPoly::real(0.0, 1.0, -1.0),
            QuadPoly::new(a + 1.0, -(a + b + 2.0), c(0.0, 0.0)),
            QuadPoly::ZERO,
        )
        .map_err(s)?;
        let branch = NUBranch {
            k: c(0.0, 0.0),
            pi: QuadPoly::ZERO,
            tau: problem.tau_tilde,
            lambda: c(0.0, 0.0),
            k_sign: Sign::Minus,
            pi_sign: Sign::Minus,
            admissible: true,
        };
        for n in 0..=5 {
            let y = rodrigues_polynomial(&branch, &problem, n).map_err(s)?;
            let p = JacobiParams::new(n, a, b).map_err(s)?;
            for _ in 0..20 {
                let x = c(rng.gen_range(-0.9..0.9), rng.gen_range(-0.5..0.5));
                let direct = jacobi(&p, x).map_err(s)?;
                let r = rel(y.eval((c(1.0, 0.0) - x) / 2.0), direct);
                ensure(r <= 1e-9, || format!("n={n} a={a} b={b} x={x}: {r:e}"))?;
                worst_dual = worst_dual.max(r);

                if n == 0 {
                    continue;
                }
                let h = 1e-6;
                let p0 = |z| jacobi(&p, z).map_err(s);
                let p1 = |z| jacobi_derivative(&p, z).map_err(s);
                let fd = (p0(x + h)? - p0(x - h)?) / (2.0 * h);
                let mut r = rel(fd, p1(x)?);
                if n > 1 {
                    let fd2 = (p1(x + h)? - p1(x - h)?) / (2.0 * h);
                    r = r.max(rel(fd2, jacobi_second_derivative(&p, x).map_err(s)?));
                }
                ensure(r <= 1e-6, || format!("derivative n={n} x={x}: {r:e}"))?;
                worst_fd = worst_fd.max(r);
            }
        }
    }
    Ok(format!(
        "recurrence vs Rodrigues {worst_dual:.1e}; derivatives vs differences {worst_fd:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let units = UnitsConfig::default();
    let length = 1.0;
    let exact = std::f64::consts::PI.powi(2) / (2.0 * length * length);
    let grid = Grid1D::new(0.0, length, 2000).map_err(s)?;
    let e1 = potential_oracle(|_| Ok(0.0), &units, &grid, 1)
        .map_err(s)?
        .eigenvalues[0];
    let box_err = ((e1 - exact) / exact).abs();
    ensure(box_err <= 1e-3, || format!("box E1 = {e1}, exact {exact}"))?;

    let grid = Grid1D::new(-10.0, 10.0, 2000).map_err(s)?;
    let e0 = potential_oracle(|x| Ok(0.5 * x * x), &units, &grid, 1)
        .map_err(s)?
        .eigenvalues[0];
    ensure((e0 - 0.5).abs() <= 1e-4, || format!("oscillator E0 = {e0}"))?;

    let grids = [101, 201, 401, 801]
        .iter()
        .map(|&p| Grid1D::new(0.0, length, p))
        .collect::<ws_spectra::Result<Vec<_>>>()
        .map_err(s)?;
    let study = convergence_study_with(|_| Ok(0.0), &units, &grids, 0).map_err(s)?;
    ensure((study.order - 2.0).abs() <= 0.2, || {
        format!("order {}", study.order)
    })?;
    within(start.elapsed(), Duration::from_secs(30), "oracle suite")?;
    Ok(format!(
        "box E1 rel err {box_err:.1e}; oscillator E0 {e0:.7}; order {:.3}",
        study.order
    ))
}

fn criterion_10() -> Outcome {
    let units = UnitsConfig::default();
    let (mut worst_pt, mut worst_forms): (f64, f64) = (0.0, 0.0);
    for (beta, gamma, q) in pt_draws(10, 11) {
        let spec = PotentialSpec::from_dimensionless(
            Variant::PtSymmetric,
            beta,
            gamma,
            0.0,
            q,
            0.5,
            units,
        )
        .map_err(s)?;
        let p = spec.period().ok_or("PT spec without a period")?;
        let xs: Vec<f64> = (0..=200)
            .map(|j| -0.4 * p + 0.8 * p * j as f64 / 200.0)
            .collect();
        let d = pt_symmetry_defect(&spec, &xs).map_err(s)?;
        ensure(d <= 1e-12, || format!("PT defect {d:e}"))?;
        worst_pt = worst_pt.max(d);
        for &x in &xs {
            let a = evaluate_potential(&spec, x).map_err(s)?;
            let b = pt_potential_expanded(&spec, x).map_err(s)?;
            let r = (a - b).norm() / a.norm().max(1.0);
            ensure(r <= 1e-12, || {
                format!("compact vs expanded at x={x}: {r:e}")
            })?;
            worst_forms = worst_forms.max(r);
        }
    }
    let spec = PotentialSpec::non_pt(1.0, 0.5, 0.5, 1.0).map_err(s)?;
    let xs: Vec<f64> = (0..=200).map(|j| -4.0 + 8.0 * j as f64 / 200.0).collect();
    let d = pt_symmetry_defect(&spec, &xs).map_err(s)?;
    ensure(d > 1e-2, || format!("non-PT defect only {d:e}"))?;
    Ok(format!(
        "PT defect {worst_pt:.1e}; non-PT defect {d:.3}; compact vs expanded {worst_forms:.1e}"
    ))
}

fn run_sweep(out: &std::path::Path) -> Result<Vec<u8>, String> {
    let mut argv: Vec<String> = [
        "ws-spectra",
        "sweep",
        "--variant",
        "pt",
        "--beta",
        "0.5:10:40",
        "--gamma",
        "0:0.2:5",
        "--q-grid",
        "0.5,1,2",
        "--n-max",
        "3",
        "--format",
        "csv",
        "--out",
    ]
    .iter()
    .map(|a| a.to_string())
    .collect();
    argv.push(out.display().to_string());
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = ws_spectra::cli::run_with(argv, &mut stdout, &mut stderr);
    ensure(code == 0, || {
        format!("sweep exited {code}: {}", String::from_utf8_lossy(&stderr))
    })?;
    std::fs::read(out).map_err(s)
}

fn criterion_11() -> Outcome {
    let dir = tempfile::tempdir().map_err(s)?;
    let first = run_sweep(&dir.path().join("a.csv"))?;
    let second = run_sweep(&dir.path().join("b.csv"))?;
    ensure(!first.is_empty(), || "empty sweep output".into())?;
    ensure(first == second, || "sweep outputs differ".into())?;
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{} bytes, {lines} lines, identical", first.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("NU engine sanity", criterion_1),
        ("PT quantization closure", criterion_2),
        ("PT spectrum reality", criterion_3),
        ("AM-GM diagnostic", criterion_4),
        ("non-PT structural reality", criterion_5),
        ("s-domain residual", criterion_6),
        ("x-domain residual", criterion_7),
        ("Jacobi dual route", criterion_8),
        ("oracle validity", criterion_9),
        ("symmetry gates", criterion_10),
        ("sweep determinism", criterion_11),
    ];
    // panics are reported as FAIL lines below
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|m| m.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
