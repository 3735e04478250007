//! Independent numerical checks: a finite-difference oracle for Hermitian
//! bound states, x- and s-domain residuals of constructed eigenpairs, grid
//! convergence, and the combined invariant suite.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eigenfunctions::Eigenfunction;
use crate::error::{Error, Result};
use crate::potential::{
    evaluate_potential, from_dimensionless, pt_symmetry_defect, to_dimensionless, PotentialSpec,
    UnitsConfig, Variant,
};
use crate::spectra::{
    consistent_epsilon, crosscheck_quantization, nonpt_energy, pt_energy_literal, spectrum_report,
    Case, EnergyLevel,
};

pub const DIAGNOSTIC_LABEL: &str = "diagnostic: closed forms are under test, not assumed correct";

/// Every tolerance the checks use, in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `min |lambda - lambda_n|` over branches.
    pub closure: f64,
    /// Relative residual of the transformed equation in `s`.
    pub s_residual: f64,
    /// Relative residual of the Schrodinger equation on an `x` grid.
    pub x_residual: f64,
    /// Step of the 5-point stencil.
    pub x_step: f64,
    pub pt_defect: f64,
    /// Bisection width, relative to the spectral scale.
    pub sturm: f64,
    /// Agreement of bisection and QL eigenvalues, relative to the scale.
    pub ql_agreement: f64,
    /// Relative deviation under which a divergence-table row counts as matched.
    pub matching: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            closure: 1e-10,
            s_residual: 1e-10,
            x_residual: 1e-6,
            x_step: 1e-3,
            pt_defect: 1e-12,
            sturm: 1e-12,
            ql_agreement: 1e-10,
            matching: 1e-3,
        }
    }
}

/// Uniform grid including both end points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n_points: usize,
}

impl Grid1D {
    pub fn new(x_lo: f64, x_hi: f64, n_points: usize) -> Result<Self> {
        if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
            return Err(Error::Argument(format!("invalid grid [{x_lo}, {x_hi}]")));
        }
        if n_points < 16 {
            return Err(Error::Argument(format!(
                "grid needs >= 16 points, got {n_points}"
            )));
        }
        Ok(Self {
            x_lo,
            x_hi,
            n_points,
        })
    }

    /// Grid over `[x_lo, x_hi]` whose spacing is as close to `h` as possible.
    pub fn with_step(x_lo: f64, x_hi: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::Argument(format!("step must be positive, got {h}")));
        }
        let n = ((x_hi - x_lo) / h).round() as usize + 1;
        Self::new(x_lo, x_hi, n)
    }

    pub fn h(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.n_points - 1) as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        if j + 1 == self.n_points {
            self.x_hi
        } else {
            self.x_lo + j as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.node(j)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Dirichlet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub eigenvalues: Vec<f64>,
    pub grid: Grid1D,
    pub boundary: Boundary,
    pub convergence_order: Option<f64>,
}

/// Symmetric tridiagonal matrix given by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// `-(hbar^2/2m) D2 + V` on the interior nodes, Dirichlet walls at the ends.
    pub fn hamiltonian<V>(potential: V, units: &UnitsConfig, grid: &Grid1D) -> Result<Self>
    where
        V: Fn(f64) -> Result<f64>,
    {
        let h = grid.h();
        let kinetic = units.hbar * units.hbar / (2.0 * units.mass * h * h);
        let diag = (1..grid.n_points - 1)
            .map(|j| Ok(2.0 * kinetic + potential(grid.node(j))?))
            .collect::<Result<Vec<_>>>()?;
        let off = vec![-kinetic; diag.len() - 1];
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.len() {
            let coupling = if i > 0 {
                self.off[i - 1] * self.off[i - 1]
            } else {
                0.0
            };
            d = self.diag[i] - x - if i > 0 { coupling / d } else { 0.0 };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` smallest eigenvalues by bisection on the Sturm count.
    pub fn lowest_by_bisection(&self, k: usize, rel_tol: f64) -> Vec<f64> {
        let (lo, hi) = self.bounds();
        let scale = lo.abs().max(hi.abs()).max(1.0);
        (0..k.min(self.len()))
            .map(|index| {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..200 {
                    if b - a <= rel_tol * scale {
                        break;
                    }
                    let mid = 0.5 * (a + b);
                    if self.count_below(mid) > index {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }

    /// All eigenvalues by the implicit QL iteration, ascending.
    pub fn eigenvalues_ql(&self) -> Result<Vec<f64>> {
        let n = self.len();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        for l in 0..n {
            let mut iterations = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iterations += 1;
                if iterations > 60 {
                    return Err(Error::Convergence {
                        last: Complex64::new(d[l], 0.0),
                        residual: e[l].abs(),
                        iterations,
                    });
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut i = m;
                let mut underflow = false;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        Ok(d)
    }
}

fn check_levels(k_lowest: usize, grid: &Grid1D) -> Result<()> {
    if k_lowest == 0 {
        return Err(Error::Argument("k_lowest must be at least 1".into()));
    }
    if 4 * k_lowest >= grid.n_points {
        return Err(Error::Resolution(format!(
            "{k_lowest} levels need more than {} grid points",
            grid.n_points
        )));
    }
    Ok(())
}

/// Lowest `k_lowest` Dirichlet eigenvalues of `-(hbar^2/2m) d^2/dx^2 + V`.
pub fn potential_oracle<V>(
    potential: V,
    units: &UnitsConfig,
    grid: &Grid1D,
    k_lowest: usize,
) -> Result<OracleResult>
where
    V: Fn(f64) -> Result<f64>,
{
    check_levels(k_lowest, grid)?;
    let h = Tridiagonal::hamiltonian(potential, units, grid)?;
    Ok(OracleResult {
        eigenvalues: h.lowest_by_bisection(k_lowest, Tolerances::default().sturm),
        grid: *grid,
        boundary: Boundary::Dirichlet,
        convergence_order: None,
    })
}

fn hermitian_potential(spec: &PotentialSpec) -> Result<impl Fn(f64) -> Result<f64> + '_> {
    if spec.variant != Variant::Hermitian {
        return Err(Error::Argument(format!(
            "the oracle needs the hermitian variant, got {}",
            spec.variant
        )));
    }
    Ok(move |x| evaluate_potential(spec, x).map(|v| v.re))
}

pub fn hermitian_oracle(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    grid: &Grid1D,
    k_lowest: usize,
) -> Result<OracleResult> {
    potential_oracle(hermitian_potential(spec)?, units, grid, k_lowest)
}

/// Default oracle box `[R0 - 20a, R0 + 20a]`, `a = 1/(2 alpha)`.
pub fn default_oracle_grid(spec: &PotentialSpec, n_points: usize) -> Result<Grid1D> {
    let a = spec.diffuseness();
    Grid1D::new(spec.r0 - 20.0 * a, spec.r0 + 20.0 * a, n_points)
}

/// Observed order `p` of `E(h) = E* + c h^p` from the three finest grids,
/// the matching limit `E*`, and the least-squares slope over all grids.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub order: f64,
    pub limit: f64,
    pub three_grid_order: f64,
    pub steps: Vec<f64>,
    pub values: Vec<f64>,
}

pub fn convergence_study_with<V>(
    potential: V,
    units: &UnitsConfig,
    grids: &[Grid1D],
    level: usize,
) -> Result<ConvergenceStudy>
where
    V: Fn(f64) -> Result<f64>,
{
    if grids.len() < 3 {
        return Err(Error::Argument(
            "a convergence study needs at least 3 grids".into(),
        ));
    }
    let steps: Vec<f64> = grids.iter().map(Grid1D::h).collect();
    if steps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Argument(
            "grids must be strictly refined in order".into(),
        ));
    }
    let values = grids
        .iter()
        .map(|g| Ok(potential_oracle(&potential, units, g, level + 1)?.eigenvalues[level]))
        .collect::<Result<Vec<f64>>>()?;
    let k = grids.len();
    let (h1, h2, h3) = (steps[k - 3], steps[k - 2], steps[k - 1]);
    let (e1, e2, e3) = (values[k - 3], values[k - 2], values[k - 1]);
    let ratio = (e1 - e2) / (e2 - e3);
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(Error::Argument(format!(
            "level {level} is not converging monotonically (difference ratio {ratio})"
        )));
    }
    let model = |p: f64| (h1.powf(p) - h2.powf(p)) / (h2.powf(p) - h3.powf(p));
    let (mut lo, mut hi) = (0.05, 12.0);
    if !((model(lo) - ratio) * (model(hi) - ratio) <= 0.0) {
        return Err(Error::Argument(format!(
            "observed difference ratio {ratio} is outside the range of any order in [{lo}, {hi}]"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (model(lo) - ratio) * (model(mid) - ratio) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let p = 0.5 * (lo + hi);
    let limit = e3 - (e2 - e3) * h3.powf(p) / (h2.powf(p) - h3.powf(p));
    let pts: Vec<(f64, f64)> = steps
        .iter()
        .zip(&values)
        .filter(|(_, e)| (*e - limit).abs() > 0.0)
        .map(|(h, e)| (h.ln(), (e - limit).abs().ln()))
        .collect();
    let order = least_squares_slope(&pts).unwrap_or(p);
    Ok(ConvergenceStudy {
        order,
        limit,
        three_grid_order: p,
        steps,
        values,
    })
}

pub fn convergence_study(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    grids: &[Grid1D],
    level: usize,
) -> Result<ConvergenceStudy> {
    convergence_study_with(hermitian_potential(spec)?, units, grids, level)
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub rel_residual_norm: f64,
    /// `r(x)` at the grid nodes `2..n_points-2`.
    pub pointwise: Vec<Complex64>,
}

/// `r = psi'' + (2m/hbar^2)(E - V) psi` with a 5-point `psi''`, normalised by
/// `||(2m/hbar^2)(|E| + max|V|) psi||`.
pub fn ode_residual_x_with<V, S>(
    potential: V,
    units: &UnitsConfig,
    energy: Complex64,
    psi: S,
    grid: &Grid1D,
) -> Result<ResidualReport>
where
    V: Fn(f64) -> Result<Complex64>,
    S: Fn(f64) -> Result<Complex64>,
{
    let n = grid.n_points;
    let h = grid.h();
    let values = (0..n)
        .map(|j| psi(grid.node(j)))
        .collect::<Result<Vec<_>>>()?;
    let pot = (2..n - 2)
        .map(|j| potential(grid.node(j)))
        .collect::<Result<Vec<_>>>()?;
    let two_m = 2.0 * units.mass / (units.hbar * units.hbar);
    let vmax = pot.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut pointwise = Vec::with_capacity(n - 4);
    let (mut num, mut den) = (0.0, 0.0);
    for j in 2..n - 2 {
        let second = (-values[j - 2] + 16.0 * values[j - 1] - 30.0 * values[j]
            + 16.0 * values[j + 1]
            - values[j + 2])
            / (12.0 * h * h);
        let r = second + two_m * (energy - pot[j - 2]) * values[j];
        num += r.norm_sqr();
        den += (two_m * (energy.norm() + vmax) * values[j].norm()).powi(2);
        pointwise.push(r);
    }
    if !(den > 1e-280) {
        return Err(Error::Degenerate("psi vanishes on the grid".into()));
    }
    Ok(ResidualReport {
        rel_residual_norm: (num / den).sqrt(),
        pointwise,
    })
}

pub fn ode_residual_x<S>(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    energy: Complex64,
    psi: S,
    grid: &Grid1D,
) -> Result<ResidualReport>
where
    S: Fn(f64) -> Result<Complex64>,
{
    ode_residual_x_with(|x| evaluate_potential(spec, x), units, energy, psi, grid)
}

/// `(x_lo, x_hi)` on which `x -> s` is analytic and clear of `s = 1/q`:
/// `[0.1, 0.4]` of a period for PT, `[-1/alpha, 1/alpha]` otherwise.
pub fn residual_window(spec: &PotentialSpec) -> (f64, f64) {
    match spec.period() {
        Some(p) => (0.1 * p, 0.4 * p),
        None => (-1.0 / spec.alpha, 1.0 / spec.alpha),
    }
}

/// Largest relative residual of the transformed equation
/// `s^2 psi'' + s psi' + Q(s) psi = 0` over `points`, with
/// `Q = eps - beta/(1-qs) + gamma s/(1-qs)^2` (PT) or
/// `Q = -eps + (beta + i delta)/(1-qs) - gamma s/(1-qs)^2` (non-PT).
///
/// Each point is scaled by `|s^2 psi''| + |s psi'| + |Q psi|`.
pub fn ode_residual_s(f: &Eigenfunction, points: &[Complex64]) -> Result<f64> {
    let p = &f.params;
    let q = p.q;
    let one = Complex64::new(1.0, 0.0);
    let mut worst: f64 = 0.0;
    for &s in points {
        let tail = one - q * s;
        if s.norm() < 1e-12 || tail.norm() < 1e-12 {
            return Err(Error::Domain(format!("sample at singular point s = {s}")));
        }
        let coupling = match Case::of(f.variant) {
            Case::Pt => p.epsilon - p.beta / tail + p.gamma * s / (tail * tail),
            Case::NonPt => -p.epsilon + p.depth() / tail - p.gamma * s / (tail * tail),
        };
        let [psi, d1, d2] = f.derivatives_s(s)?;
        let terms = [s * s * d2, s * d1, coupling * psi];
        let scale: f64 = terms.iter().map(|t| t.norm()).sum();
        let r = (terms[0] + terms[1] + terms[2]).norm();
        worst = worst.max(if scale > 0.0 { r / scale } else { r });
    }
    Ok(worst)
}

/// `count` points in the upper half plane with `|s|` in `[0.2, 3]`, kept at
/// least 0.1 away from `s = 1/q`.
pub fn random_s_points(count: usize, q: f64, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = rng.gen_range(0.2..3.0);
        let theta = rng.gen_range(0.05..PI - 0.05);
        let s = Complex64::from_polar(r, theta);
        if (Complex64::new(1.0, 0.0) - q * s).norm() > 0.1 {
            out.push(s);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceRow {
    pub n: usize,
    pub closed_form: Complex64,
    pub oracle: Option<f64>,
    pub abs_deviation: Option<f64>,
    pub rel_deviation: Option<f64>,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceTable {
    pub label: &'static str,
    pub rows: Vec<DivergenceRow>,
}

/// Greedy nearest matching of closed-form energies to oracle eigenvalues.
pub fn compare_report(
    closed_form: &[EnergyLevel],
    oracle: &OracleResult,
    tolerance: f64,
) -> DivergenceTable {
    let mut used = vec![false; oracle.eigenvalues.len()];
    let rows = closed_form
        .iter()
        .map(|level| {
            let e = level.energy;
            let best = oracle
                .eigenvalues
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .min_by(|a, b| (e - a.1).norm().total_cmp(&(e - b.1).norm()));
            match best {
                Some((i, &value)) => {
                    used[i] = true;
                    let abs = (e - value).norm();
                    let rel = abs / value.abs().max(f64::MIN_POSITIVE);
                    DivergenceRow {
                        n: level.n,
                        closed_form: e,
                        oracle: Some(value),
                        abs_deviation: Some(abs),
                        rel_deviation: Some(rel),
                        matched: rel <= tolerance,
                    }
                }
                None => DivergenceRow {
                    n: level.n,
                    closed_form: e,
                    oracle: None,
                    abs_deviation: None,
                    rel_deviation: None,
                    matched: false,
                },
            }
        })
        .collect();
    DivergenceTable {
        label: DIAGNOSTIC_LABEL,
        rows,
    }
}

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantCheck {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<InvariantCheck>,
    /// Informational findings; never failures.
    pub findings: Vec<String>,
    pub divergence: Option<DivergenceTable>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

fn check(name: &str, value: f64, threshold: f64) -> InvariantCheck {
    InvariantCheck {
        name: name.to_string(),
        value,
        threshold,
        passed: value <= threshold,
    }
}

pub const QUANTIZATION_CLOSURE: &str = "quantization closure";
pub const S_RESIDUAL: &str = "s-domain residual";
pub const X_RESIDUAL: &str = "x-domain residual";
pub const PT_SYMMETRY: &str = "pt symmetry";
pub const ORACLE_SELF_CHECK: &str = "oracle self-check";

/// Runs every assertable invariant for levels `0..=n_max`. With
/// `epsilon_override` the given dimensionless level replaces the computed one
/// for every `n`.
pub fn verify(
    spec: &PotentialSpec,
    units: &UnitsConfig,
    n_max: usize,
    tol: &Tolerances,
    epsilon_override: Option<Complex64>,
) -> Result<VerifyReport> {
    let case = Case::of(spec.variant);
    let base = to_dimensionless(spec, units, Complex64::new(0.0, 0.0));
    let mut checks = Vec::new();
    let mut findings = Vec::new();
    let s_points = random_s_points(50, base.q, 0x5eed);
    let (lo, hi) = residual_window(spec);
    let grid = Grid1D::with_step(lo, hi, tol.x_step)?;

    for n in 0..=n_max {
        let eps = match epsilon_override {
            Some(e) => e,
            None => consistent_epsilon(case, n, &base)?,
        };
        let params = base.with_epsilon(eps);
        let residuals = crosscheck_quantization(case, n, &params)?;
        let (best, closure) = residuals
            .iter()
            .map(|r| r.norm())
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((0, f64::INFINITY));
        checks.push(check(
            &format!("{QUANTIZATION_CLOSURE} n={n}"),
            closure,
            tol.closure,
        ));

        let problem = crate::spectra::ws_problem(case, &params)?;
        let branch = crate::nu_engine::resolve_branches(&problem)?[best];
        let f = Eigenfunction::from_branch(spec.variant, n, &params, &branch, spec.steepness())?;
        checks.push(check(
            &format!("{S_RESIDUAL} n={n}"),
            ode_residual_s(&f, &s_points)?,
            tol.s_residual,
        ));
        let energy = from_dimensionless(eps, spec, units);
        let x_res = ode_residual_x(spec, units, energy, |x| f.sample(x).map(|p| p.psi), &grid)?;
        checks.push(check(
            &format!("{X_RESIDUAL} n={n}"),
            x_res.rel_residual_norm,
            tol.x_residual,
        ));
    }

    let sym_grid: Vec<f64> =
        Grid1D::new(-lo.abs().max(hi.abs()), lo.abs().max(hi.abs()), 257)?.nodes();
    let defect = pt_symmetry_defect(spec, &sym_grid)?;
    match spec.variant {
        Variant::PtSymmetric => checks.push(check(PT_SYMMETRY, defect, tol.pt_defect)),
        _ => findings.push(format!(
            "pt symmetry defect {defect:.3e} (not required for {})",
            spec.variant
        )),
    }

    let report = spectrum_report(spec, units, n_max)?;
    match case {
        Case::Pt => {
            if report.empty_by_amgm {
                findings.push(
                    "empty_by_amgm=true: the printed level inequality (b/4)^2 + (beta/b)^2 < beta/2 \
                     is unsatisfiable; printed-formula inconsistency: informational"
                        .to_string(),
                );
            } else if 4.0 * base.gamma > base.q {
                findings.push(format!(
                    "empty_by_amgm=false: 1 - 4 gamma/q = {} < 0 makes b complex, so every level is \
                     complex and the epsilon > 0 set is empty; informational",
                    1.0 - 4.0 * base.gamma / base.q
                ));
            }
            if let Some(bound) = report.printed_level_bound {
                let claimed = report
                    .diagnostics
                    .iter()
                    .filter(|d| d.below_printed_bound == Some(true))
                    .count();
                findings.push(format!(
                    "printed level bound {bound:.6} admits {claimed} level(s); epsilon > 0 scan admits {}",
                    report.admissible_count()
                ));
            }
            let lit = pt_energy_literal(0, spec, units);
            let canon = report.levels[0].energy + Complex64::new(0.0, 0.0);
            findings.push(format!(
                "literal printed energy formula at n=0: {lit} vs canonical {canon} (|difference| {:.3e})",
                (lit - canon).norm()
            ));
        }
        Case::NonPt => {
            for (level, diag) in report.levels.iter().zip(&report.diagnostics) {
                findings.push(format!(
                    "n={}: printed epsilon {} leaves residual {:.3e}; consistent epsilon {}",
                    level.n, level.epsilon, diag.min_residual, diag.consistent_epsilon
                ));
            }
        }
    }

    let divergence = if spec.variant == Variant::Hermitian {
        let grid = default_oracle_grid(spec, 2000)?;
        let k = n_max + 1;
        let h = Tridiagonal::hamiltonian(hermitian_potential(spec)?, units, &grid)?;
        let bisect = h.lowest_by_bisection(k.clamp(1, 5), tol.sturm);
        let ql = h.eigenvalues_ql()?;
        let (a, b) = h.bounds();
        let scale = a.abs().max(b.abs()).max(1.0);
        let gap = bisect
            .iter()
            .zip(&ql)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        checks.push(check(ORACLE_SELF_CHECK, gap / scale, tol.ql_agreement));
        let oracle = hermitian_oracle(spec, units, &grid, k)?;
        let closed = (0..=n_max)
            .map(|n| nonpt_energy(n, spec, units))
            .collect::<Result<Vec<_>>>()?;
        Some(compare_report(&closed, &oracle, tol.matching))
    } else {
        None
    };

    Ok(VerifyReport {
        checks,
        findings,
        divergence,
    })
}
