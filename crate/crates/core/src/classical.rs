//! Time-local classical master equations `dT/dt = L(t) T(t)`.
//!
//! A generator with zero column sums conserves probability; its propagators
//! `V(t, s)` are pseudo-stochastic. They are stochastic for every `t >= s`
//! (the map is divisible) iff every `L(t)` is a Kolmogorov generator, i.e.
//! additionally has nonnegative off-diagonal entries. K-divisibility asks only
//! for `V(t, s)` in `PS(K)`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::matrix::{in_ps_k, matrix_from_rows, PSMatrix};
use crate::ode::rk4;
use crate::quadrature;
use crate::rates::RateFn;
use crate::simplex::ConvexRegion;
use crate::{Error, Result, DEFAULT_TOL};

/// Largest state-space dimension handled by the classical routines.
pub const MAX_DIM: usize = 8;

const QUAD_TOL: f64 = 1e-13;

/// A time-dependent generator `L(t)` with zero column sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSchedule {
    /// Time-independent generator, row-major.
    Constant { matrix: Vec<Vec<f64>> },
    /// `L(t) = [[-x, y], [x, -y]]`.
    TwoLevel { x: RateFn, y: RateFn },
    /// Transition rates: `rates[i][j]` is the rate of `j -> i` (`i != j`);
    /// diagonal entries are ignored and set so columns sum to zero.
    Rates { rates: Vec<Vec<Option<RateFn>>> },
    /// Piecewise-linear interpolation of generator matrices.
    Table {
        times: Vec<f64>,
        matrices: Vec<Vec<Vec<f64>>>,
    },
}

impl GeneratorSchedule {
    pub fn constant(l: &DMatrix<f64>) -> Self {
        GeneratorSchedule::Constant {
            matrix: crate::matrix::matrix_to_rows(l),
        }
    }

    pub fn two_level(x: RateFn, y: RateFn) -> Self {
        GeneratorSchedule::TwoLevel { x, y }
    }

    pub fn dim(&self) -> usize {
        match self {
            GeneratorSchedule::Constant { matrix } => matrix.len(),
            GeneratorSchedule::TwoLevel { .. } => 2,
            GeneratorSchedule::Rates { rates } => rates.len(),
            GeneratorSchedule::Table { matrices, .. } => matrices.first().map_or(0, Vec::len),
        }
    }

    /// Checks shapes and the zero-column-sum condition at every stored node.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let n = self.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidSchedule(format!(
                "dimension {n} outside 1..={MAX_DIM}"
            )));
        }
        let check = |rows: &[Vec<f64>]| -> Result<()> {
            let m = matrix_from_rows(rows).map_err(|e| Error::InvalidSchedule(e.to_string()))?;
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::InvalidSchedule(format!("generator must be {n}x{n}")));
            }
            if m.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidSchedule("non-finite generator entry".into()));
            }
            if let Some(dev) = m.column_iter().map(|c| c.sum().abs()).reduce(f64::max) {
                if dev > tol {
                    return Err(Error::InvalidSchedule(format!(
                        "generator column sums deviate from 0 by {dev:e}"
                    )));
                }
            }
            Ok(())
        };
        match self {
            GeneratorSchedule::Constant { matrix } => check(matrix),
            GeneratorSchedule::TwoLevel { x, y } => {
                x.validate()?;
                y.validate()
            }
            GeneratorSchedule::Rates { rates } => {
                if rates.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidSchedule(format!("rates must be {n}x{n}")));
                }
                rates
                    .iter()
                    .flatten()
                    .flatten()
                    .try_for_each(RateFn::validate)
            }
            GeneratorSchedule::Table { times, matrices } => {
                if times.is_empty() || times.len() != matrices.len() {
                    return Err(Error::InvalidSchedule(
                        "table needs one matrix per time node".into(),
                    ));
                }
                if times.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::InvalidSchedule(
                        "table times must be strictly increasing".into(),
                    ));
                }
                matrices.iter().try_for_each(|m| check(m))
            }
        }
    }

    /// `L(t)`.
    pub fn generator_at(&self, t: f64) -> DMatrix<f64> {
        match self {
            GeneratorSchedule::Constant { matrix } => {
                DMatrix::from_fn(matrix.len(), matrix.len(), |i, j| matrix[i][j])
            }
            GeneratorSchedule::TwoLevel { x, y } => {
                let (x, y) = (x.eval(t), y.eval(t));
                DMatrix::from_row_slice(2, 2, &[-x, y, x, -y])
            }
            GeneratorSchedule::Rates { rates } => {
                let n = rates.len();
                let mut l = DMatrix::zeros(n, n);
                for j in 0..n {
                    for i in (0..n).filter(|&i| i != j) {
                        if let Some(r) = &rates[i][j] {
                            let v = r.eval(t);
                            l[(i, j)] = v;
                            l[(j, j)] -= v;
                        }
                    }
                }
                l
            }
            GeneratorSchedule::Table { times, matrices } => {
                let n = matrices[0].len();
                let at = |k: usize| DMatrix::from_fn(n, n, |i, j| matrices[k][i][j]);
                let last = times.len() - 1;
                if t <= times[0] {
                    return at(0);
                }
                if t >= times[last] {
                    return at(last);
                }
                let k = times.partition_point(|&x| x <= t) - 1;
                let w = (t - times[k]) / (times[k + 1] - times[k]);
                at(k) * (1.0 - w) + at(k + 1) * w
            }
        }
    }
}

/// Zero column sums and nonnegative off-diagonal entries, within `tol`.
pub fn is_kolmogorov(l: &DMatrix<f64>, tol: f64) -> bool {
    if !l.is_square() {
        return false;
    }
    let off_diag_ok = (0..l.nrows())
        .flat_map(|i| (0..l.ncols()).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .all(|(i, j)| l[(i, j)] >= -tol);
    off_diag_ok && l.column_iter().all(|c| c.sum().abs() <= tol)
}

/// `V(t, s)`, the solution of `dV/dt = L(t) V` with `V(s, s) = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Propagator {
    pub matrix: PSMatrix,
    pub s: f64,
    pub t: f64,
}

fn validated(schedule: &GeneratorSchedule) -> Result<()> {
    schedule.validate(DEFAULT_TOL)
}

/// Integrates `dp/dt = L(t) p` from 0 to `t` with `steps` RK4 steps. The
/// output is a pseudo-probability vector: entries sum to one but may be
/// negative when the generator is not Kolmogorov.
pub fn evolve(
    schedule: &GeneratorSchedule,
    p0: &[f64],
    t: f64,
    steps: usize,
) -> Result<DVector<f64>> {
    validated(schedule)?;
    if p0.len() != schedule.dim() {
        return Err(Error::DimensionMismatch {
            expected: schedule.dim(),
            got: p0.len(),
        });
    }
    if t < 0.0 || steps == 0 {
        return Err(Error::InvalidInput("need t >= 0 and steps >= 1".into()));
    }
    Ok(rk4(
        |u, p: &DVector<f64>| schedule.generator_at(u) * p,
        DVector::from_column_slice(p0),
        0.0,
        t,
        steps,
    ))
}

/// [`evolve`] plus a Richardson estimate of the global error, from a second
/// run at twice the step count.
pub fn evolve_checked(
    schedule: &GeneratorSchedule,
    p0: &[f64],
    t: f64,
    steps: usize,
) -> Result<(DVector<f64>, f64)> {
    let coarse = evolve(schedule, p0, t, steps)?;
    let fine = evolve(schedule, p0, t, 2 * steps)?;
    let err = (&fine - &coarse).amax() / 15.0;
    Ok((fine, err))
}

fn integrate_matrix(
    schedule: &GeneratorSchedule,
    v: DMatrix<f64>,
    s: f64,
    t: f64,
    steps: usize,
) -> DMatrix<f64> {
    rk4(
        |u, v: &DMatrix<f64>| schedule.generator_at(u) * v,
        v,
        s,
        t,
        steps,
    )
}

/// Time-ordered exponential `V(t, s)` by RK4 on the matrix equation.
pub fn propagator(
    schedule: &GeneratorSchedule,
    s: f64,
    t: f64,
    steps: usize,
) -> Result<Propagator> {
    validated(schedule)?;
    if t < s {
        return Err(Error::InvalidInput(format!(
            "need t >= s, got s={s}, t={t}"
        )));
    }
    let n = schedule.dim();
    let v = if t == s {
        DMatrix::identity(n, n)
    } else {
        integrate_matrix(schedule, DMatrix::identity(n, n), s, t, steps.max(1))
    };
    Ok(Propagator {
        matrix: PSMatrix::new_unchecked(v),
        s,
        t,
    })
}

fn steps_for(dt: f64, max_step: f64) -> usize {
    ((dt / max_step).ceil() as usize).max(1)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.windows(2).any(|w| w[1] < w[0]) || grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidInput(
            "grid must be sorted, finite and nonnegative".into(),
        ));
    }
    Ok(())
}

fn max_spacing(grid: &[f64]) -> f64 {
    grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

/// Propagators `V(grid[j], grid[i])` for all `i < j`, row `i` holding
/// `j = i+1, ...`. Each interval uses steps of at most `max_step`.
pub fn grid_propagators(
    schedule: &GeneratorSchedule,
    grid: &[f64],
    max_step: f64,
) -> Result<Vec<Vec<Propagator>>> {
    validated(schedule)?;
    check_grid(grid)?;
    if !(max_step > 0.0) {
        return Err(Error::InvalidInput("max_step must be positive".into()));
    }
    let n = schedule.dim();
    Ok((0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut v = DMatrix::identity(n, n);
            let mut out = Vec::with_capacity(grid.len() - i - 1);
            for j in i + 1..grid.len() {
                let (a, b) = (grid[j - 1], grid[j]);
                if b > a {
                    v = integrate_matrix(schedule, v, a, b, steps_for(b - a, max_step));
                }
                out.push(Propagator {
                    matrix: PSMatrix::new_unchecked(v.clone()),
                    s: grid[i],
                    t: b,
                });
            }
            out
        })
        .collect())
}

/// Pointwise divisibility verdict on a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivisibilityReport {
    pub holds: bool,
    /// Earliest grid time at which `L(t)` is not Kolmogorov.
    pub first_violation: Option<f64>,
    /// Largest gap between consecutive grid nodes; conditions are checked at
    /// the nodes only.
    pub grid_spacing: f64,
}

/// Divisible iff `L(t)` is Kolmogorov at every grid node.
pub fn is_divisible(
    schedule: &GeneratorSchedule,
    grid: &[f64],
    tol: f64,
) -> Result<DivisibilityReport> {
    validated(schedule)?;
    check_grid(grid)?;
    let first_violation = grid
        .iter()
        .copied()
        .find(|&t| !is_kolmogorov(&schedule.generator_at(t), tol));
    Ok(DivisibilityReport {
        holds: first_violation.is_none(),
        first_violation,
        grid_spacing: max_spacing(grid),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KDivisibilityReport {
    pub holds: bool,
    /// First violating `(s, t)`, ordered by `t` then `s`.
    pub first_violation: Option<(f64, f64)>,
    pub pairs_checked: usize,
    pub grid_spacing: f64,
}

/// Checks `V(t, s)` in `PS(K)` for every grid pair `s < t`.
pub fn is_k_divisible(
    schedule: &GeneratorSchedule,
    k: &ConvexRegion,
    grid: &[f64],
    tol: f64,
    max_step: f64,
) -> Result<KDivisibilityReport> {
    if k.dim() != schedule.dim() {
        return Err(Error::DimensionMismatch {
            expected: schedule.dim(),
            got: k.dim(),
        });
    }
    let props = grid_propagators(schedule, grid, max_step)?;
    let mut first: Option<(usize, usize)> = None;
    let mut pairs = 0;
    for (i, row) in props.iter().enumerate() {
        for (off, v) in row.iter().enumerate() {
            pairs += 1;
            let j = i + 1 + off;
            if !in_ps_k(&v.matrix, k, tol)? && first.is_none_or(|(fi, fj)| (j, i) < (fj, fi)) {
                first = Some((i, j));
            }
        }
    }
    Ok(KDivisibilityReport {
        holds: first.is_none(),
        first_violation: first.map(|(i, j)| (grid[i], grid[j])),
        pairs_checked: pairs,
        grid_spacing: max_spacing(grid),
    })
}

/// The instantaneous invariant vector `q(t) = (y, x) / (x + y)`, when
/// `x + y != 0`. It satisfies `L(t) q(t) = 0`.
pub fn two_level_invariant(x: &RateFn, y: &RateFn, t: f64) -> Option<[f64; 2]> {
    let (xv, yv) = (x.eval(t), y.eval(t));
    let gamma = xv + yv;
    (gamma != 0.0).then(|| [yv / gamma, xv / gamma])
}

/// Closed-form two-level propagator and the quantities it is built from.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLevelSolution {
    pub propagator: Propagator,
    /// `Gamma(t, s) = int_s^t (x + y)`.
    pub gamma: f64,
    /// `(R_1, R_2) = (1 - e^{-Gamma}) (Q_1, Q_2)`, computed directly.
    pub weighted_q: [f64; 2],
    /// `(Q_1, Q_2)`; undefined when `Gamma(t, s) = 0`.
    pub q: Option<[f64; 2]>,
    /// `Q_1 + e^{-Gamma} Q_2 >= 0` and `Q_2 + e^{-Gamma} Q_1 >= 0`.
    pub cc_holds: bool,
    /// `Gamma >= 0`, `Q_1 >= 0`, `Q_2 >= 0`.
    pub ccc_holds: bool,
}

/// `T(t) = V(t, 0)` of the two-level generator in closed form.
pub fn two_level_map(x: &RateFn, y: &RateFn, t: f64) -> Result<TwoLevelSolution> {
    two_level_propagator(x, y, 0.0, t)
}

/// Closed-form two-level propagator
/// `V(t, s) = e^{-Gamma} I + (1 - e^{-Gamma}) [[Q_1, Q_1], [Q_2, Q_2]]`.
///
/// Solving `dp/dt = gamma (q - p)` gives
/// `(1 - e^{-Gamma(t,s)}) Q_k(t, s) = int_s^t gamma(u) q_k(u) e^{-Gamma(t,u)} du`,
/// with `gamma q_1 = y` and `gamma q_2 = x`.
pub fn two_level_propagator(x: &RateFn, y: &RateFn, s: f64, t: f64) -> Result<TwoLevelSolution> {
    x.validate()?;
    y.validate()?;
    if t < s {
        return Err(Error::InvalidInput(format!(
            "need t >= s, got s={s}, t={t}"
        )));
    }
    let decay_from = |u: f64| x.integral(u, t) + y.integral(u, t);
    let gamma = decay_from(s);
    let decay = (-gamma).exp();
    let mut breaks: Vec<f64> = x
        .breakpoints()
        .iter()
        .chain(y.breakpoints())
        .copied()
        .collect();
    breaks.sort_by(f64::total_cmp);
    let r1 = quadrature::integrate(
        |u| y.eval(u) * (-decay_from(u)).exp(),
        s,
        t,
        QUAD_TOL,
        &breaks,
    )?;
    let r2 = quadrature::integrate(
        |u| x.eval(u) * (-decay_from(u)).exp(),
        s,
        t,
        QUAD_TOL,
        &breaks,
    )?;
    let m = DMatrix::from_row_slice(2, 2, &[decay + r1, r1, r2, decay + r2]);

    let norm = -(-gamma).exp_m1();
    let q = (norm.abs() > 1e-12).then(|| [r1 / norm, r2 / norm]);
    let tol = DEFAULT_TOL;
    let cc_holds = m[(0, 0)] >= -tol && m[(1, 1)] >= -tol;
    let ccc_holds = gamma >= -tol && q.is_none_or(|[q1, q2]| q1 >= -tol && q2 >= -tol);
    Ok(TwoLevelSolution {
        propagator: Propagator {
            matrix: PSMatrix::new_unchecked(m),
            s,
            t,
        },
        gamma,
        weighted_q: [r1, r2],
        q,
        cc_holds,
        ccc_holds,
    })
}
