//! Pauli-channel qubit dynamics with time-dependent decoherence rates.
//!
//! The generator `L_t[rho] = 1/2 sum_k gamma_k(t) (sigma_k rho sigma_k - rho)`
//! is diagonal in the Pauli basis, so the dynamical map is fixed by its
//! eigenvalues `lambda_k(t) = exp(-Gamma_i(t,0) - Gamma_j(t,0))` with
//! `{i, j, k} = {1, 2, 3}` and `Gamma_k(t,s) = int_s^t gamma_k`.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::ode::rk4;
use crate::quantum::QubitState;
use crate::rates::RateFn;
use crate::{Error, Result};

pub const HADAMARD: [[f64; 4]; 4] = [
    [1.0, 1.0, 1.0, 1.0],
    [1.0, 1.0, -1.0, -1.0],
    [1.0, -1.0, 1.0, -1.0],
    [1.0, -1.0, -1.0, 1.0],
];

/// The two rates that damp Bloch component `k` (0-based).
const PAIRS: [[usize; 2]; 3] = [[1, 2], [2, 0], [0, 1]];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateSchedule3 {
    pub gamma: [RateFn; 3],
}

impl RateSchedule3 {
    pub fn new(g1: RateFn, g2: RateFn, g3: RateFn) -> Self {
        Self {
            gamma: [g1, g2, g3],
        }
    }

    pub fn constant(g1: f64, g2: f64, g3: f64) -> Self {
        Self::new(
            RateFn::constant(g1),
            RateFn::constant(g2),
            RateFn::constant(g3),
        )
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.gamma {
            g.validate()
                .map_err(|e| Error::InvalidSchedule(e.to_string()))?;
        }
        Ok(())
    }

    /// `gamma_i(t) + gamma_j(t)` for the pair damping component `k`.
    fn pair_rate(&self, k: usize, t: f64) -> f64 {
        let [i, j] = PAIRS[k];
        self.gamma[i].eval(t) + self.gamma[j].eval(t)
    }

    fn pair_integral(&self, k: usize, s: f64, t: f64) -> f64 {
        let [i, j] = PAIRS[k];
        self.gamma[i].integral(s, t) + self.gamma[j].integral(s, t)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.gamma
            .iter()
            .flat_map(|g| g.breakpoints().iter().copied())
            .collect()
    }
}

/// `(lambda_0, ..., lambda_3)` at time `t`.
pub fn lambdas(schedule: &RateSchedule3, t: f64) -> Result<[f64; 4]> {
    if !(t >= 0.0) {
        return Err(Error::InvalidInput(format!("t = {t} must be >= 0")));
    }
    schedule.validate()?;
    let mut out = [1.0; 4];
    for k in 0..3 {
        out[k + 1] = (-schedule.pair_integral(k, 0.0, t)).exp();
    }
    Ok(out)
}

fn hadamard_apply(v: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|a| (0..4).map(|b| HADAMARD[a][b] * v[b]).sum())
}

/// `p = H lambda / 4`.
pub fn lambdas_to_p(lambda: &[f64; 4]) -> [f64; 4] {
    hadamard_apply(lambda).map(|x| 0.25 * x)
}

/// `lambda = H p`.
pub fn p_to_lambdas(p: &[f64; 4]) -> [f64; 4] {
    hadamard_apply(p)
}

/// `rho -> sum_a p_a sigma_a rho sigma_a`, in Bloch form.
pub fn apply_channel(p: &[f64; 4], state: &QubitState) -> Vector3<f64> {
    let lambda = p_to_lambdas(p);
    let x = state.bloch();
    Vector3::new(lambda[1] * x[0], lambda[2] * x[1], lambda[3] * x[2])
}

/// RK4 integration of `dx_k/dt = -(gamma_i + gamma_j) x_k` from 0 to `t`.
pub fn evolve_qubit(
    schedule: &RateSchedule3,
    x0: &QubitState,
    t: f64,
    steps: usize,
) -> Result<Vector3<f64>> {
    schedule.validate()?;
    if !(t >= 0.0) {
        return Err(Error::InvalidInput(format!("t = {t} must be >= 0")));
    }
    if steps == 0 {
        return Err(Error::InvalidInput("steps must be positive".into()));
    }
    let f = |s: f64, x: &Vector3<f64>| Vector3::from_fn(|k, _| -schedule.pair_rate(k, s) * x[k]);
    Ok(rk4(f, x0.bloch(), 0.0, t, steps))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DivisibilityClass {
    #[serde(rename = "CP")]
    Cp,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "K_eps")]
    KEps,
    #[serde(rename = "none")]
    None,
}

/// Where a condition fails. `rates` are 1-based labels; `s` is set for
/// window conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub s: Option<f64>,
    pub t: f64,
    pub rates: Vec<usize>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCheck {
    pub holds: bool,
    /// Minimum of the checked quantity over the scan.
    pub min_value: f64,
    pub first_violation: Option<Violation>,
}

impl LevelCheck {
    fn from_scan(threshold: f64, tol: f64, items: impl Iterator<Item = Violation>) -> Self {
        let mut min_value = f64::INFINITY;
        let mut first: Option<Violation> = None;
        for v in items {
            min_value = min_value.min(v.value);
            if v.value < threshold - tol && first.is_none() {
                first = Some(v);
            }
        }
        Self {
            holds: first.is_none(),
            min_value,
            first_violation: first,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QubitDivisibilityReport {
    pub class: DivisibilityClass,
    pub eps: f64,
    pub cp: LevelCheck,
    pub p: LevelCheck,
    /// Window condition `Gamma_i(t,s) + Gamma_j(t,s) >= ln(1 - eps)`; at
    /// `eps = 0` it also includes the pointwise pair check.
    pub k_eps: LevelCheck,
    pub window_threshold: f64,
}

/// Time points where rates are sampled: the grid plus any table breakpoints
/// inside it, sorted.
fn sample_points(schedule: &RateSchedule3, grid: &[f64]) -> Vec<f64> {
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    let mut pts: Vec<f64> = grid.to_vec();
    pts.extend(
        schedule
            .breakpoints()
            .into_iter()
            .filter(|&b| b > lo && b < hi),
    );
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Strongest of CP, P, `K_eps` divisibility satisfied on the grid.
///
/// Pointwise rate conditions are evaluated on the grid and at table
/// breakpoints, where piecewise-linear rates attain their extrema. The window
/// condition is evaluated on every grid pair `s < t`.
pub fn classify_divisibility(
    schedule: &RateSchedule3,
    eps: f64,
    grid: &[f64],
    tol: f64,
) -> Result<QubitDivisibilityReport> {
    schedule.validate()?;
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1)")));
    }
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[0] < w[1])) || grid[0] < 0.0 {
        return Err(Error::InvalidInput(
            "grid must be strictly increasing, >= 0, length >= 2".into(),
        ));
    }
    let pts = sample_points(schedule, grid);

    let cp = LevelCheck::from_scan(
        0.0,
        tol,
        pts.iter().flat_map(|&t| {
            (0..3).map(move |k| Violation {
                s: None,
                t,
                rates: vec![k + 1],
                value: schedule.gamma[k].eval(t),
            })
        }),
    );
    let pair_scan = || {
        pts.iter().flat_map(|&t| {
            (0..3).map(move |k| Violation {
                s: None,
                t,
                rates: PAIRS[k].iter().map(|i| i + 1).collect(),
                value: schedule.pair_rate(k, t),
            })
        })
    };
    let p = LevelCheck::from_scan(0.0, tol, pair_scan());

    // Cumulative pair integrals from grid[0]; windows are differences.
    let mut cumulative = vec![[0.0; 3]; grid.len()];
    for j in 1..grid.len() {
        for k in 0..3 {
            cumulative[j][k] =
                cumulative[j - 1][k] + schedule.pair_integral(k, grid[j - 1], grid[j]);
        }
    }
    let threshold = (1.0 - eps).ln();
    let windows = (1..grid.len()).flat_map(|j| {
        let cumulative = &cumulative;
        (0..j).flat_map(move |i| {
            (0..3).map(move |k| Violation {
                s: Some(grid[i]),
                t: grid[j],
                rates: PAIRS[k].iter().map(|r| r + 1).collect(),
                value: cumulative[j][k] - cumulative[i][k],
            })
        })
    });
    let mut k_eps = LevelCheck::from_scan(threshold, tol, windows);
    if eps == 0.0 && k_eps.holds && !p.holds {
        // The window condition at eps = 0 is its infinitesimal-window limit.
        k_eps.holds = false;
        k_eps.first_violation = p.first_violation.clone();
    }

    let class = if cp.holds {
        DivisibilityClass::Cp
    } else if p.holds {
        DivisibilityClass::P
    } else if k_eps.holds {
        DivisibilityClass::KEps
    } else {
        DivisibilityClass::None
    };
    Ok(QubitDivisibilityReport {
        class,
        eps,
        cp,
        p,
        k_eps,
        window_threshold: threshold,
    })
}

/// `gamma_1 = gamma_2 = 0`, `gamma_3` dipping to `-1` on `[1, 1.2]`, flanked by
/// linear ramps from `+1`. Every window integral stays above `ln(1/2)`, so the
/// map is `K_{1/2}`-divisible, but `gamma_2 + gamma_3 < 0` on the dip.
pub fn dip_schedule() -> RateSchedule3 {
    let g3 = RateFn::table(
        vec![0.0, 0.9, 1.0, 1.2, 1.3, 5.0],
        vec![1.0, 1.0, -1.0, -1.0, 1.0, 1.0],
    )
    .expect("valid table");
    RateSchedule3::new(RateFn::constant(0.0), RateFn::constant(0.0), g3)
}
