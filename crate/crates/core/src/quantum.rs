//! Density matrices and Hermitian trace-preserving maps.
//!
//! A Hermitian trace-preserving map is positive iff the matrix
//! `T_ij = tr(E_ii Phi[E_jj])` is stochastic for every orthonormal basis; for
//! merely Hermitian trace-preserving ("pseudo-PTP") maps it is
//! pseudo-stochastic. A pseudo-PTP map that is positive on a convex set `K` of
//! states but not on all states witnesses non-membership in `K`: a negative
//! eigenvalue of `Phi[rho]` certifies `rho` outside `K`.
//!
//! Qubit maps are handled in their affine Bloch form, general dimensions
//! through the [`HermitianMap`] trait.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use crate::matrix::PSMatrix;
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Eigenvalues below this are treated as negative.
pub const PSD_TOL: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The Pauli matrices `sigma_0 = I`, `sigma_1`, `sigma_2`, `sigma_3`.
pub fn pauli(alpha: usize) -> CMatrix {
    let c = |re: f64| Complex64::new(re, 0.0);
    match alpha {
        0 => CMatrix::identity(2, 2),
        1 => CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]),
        2 => CMatrix::from_row_slice(2, 2, &[c(0.0), -I, I, c(0.0)]),
        3 => CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
        _ => panic!("Pauli index {alpha} out of range"),
    }
}

fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().sum()
}

fn hermitian_deviation(m: &CMatrix) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)[0]
}

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        let tr = trace(&m);
        if (tr - Complex64::new(1.0, 0.0)).norm() > tol {
            return Err(Error::InvalidInput(format!("trace {tr} is not 1")));
        }
        if hermitian_deviation(&m) > tol {
            return Err(Error::InvalidInput("matrix is not Hermitian".into()));
        }
        let lo = min_eigenvalue(&m);
        if lo < -tol {
            return Err(Error::InvalidInput(format!("negative eigenvalue {lo:e}")));
        }
        Ok(Self(m))
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = DVector::from_column_slice(psi);
        let norm2 = v.norm_squared();
        if norm2 == 0.0 {
            return Err(Error::InvalidInput("zero state vector".into()));
        }
        Ok(Self(&v * v.adjoint() / Complex64::new(norm2, 0.0)))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        Self(CMatrix::identity(d, d) / Complex64::new(d as f64, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }
}

/// `tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    (&rho.0 * &rho.0).diagonal().sum().re
}

/// `-sum lambda ln lambda` (natural log, `0 ln 0 = 0`).
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    hermitian_eigenvalues(&rho.0)
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum()
}

/// Purity of a qubit state on the sphere `|x| = 1 - eps`.
pub fn purity_bound(eps: f64) -> f64 {
    0.5 * (1.0 + (1.0 - eps).powi(2))
}

/// Entropy of a qubit state on the sphere `|x| = 1 - eps`; states inside
/// the ball have at least this entropy.
pub fn entropy_bound(eps: f64) -> f64 {
    let xlnx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
    std::f64::consts::LN_2 - 0.5 * (xlnx(2.0 - eps) + xlnx(eps))
}

/// A qubit state given by its Bloch vector, `rho = (I + x . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    bloch: Vector3<f64>,
}

impl QubitState {
    pub fn new(bloch: Vector3<f64>, tol: f64) -> Result<Self> {
        if !bloch.iter().all(|x| x.is_finite()) || bloch.norm() > 1.0 + tol {
            return Err(Error::InvalidInput(format!(
                "|x| = {} exceeds 1",
                bloch.norm()
            )));
        }
        Ok(Self { bloch })
    }

    pub fn bloch(&self) -> Vector3<f64> {
        self.bloch
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(bloch_to_matrix(&self.bloch))
    }

    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: rho.dim(),
            });
        }
        Ok(Self {
            bloch: matrix_to_bloch(&rho.0),
        })
    }
}

/// `(I + x . sigma) / 2`, for any real `x`.
pub fn bloch_to_matrix(x: &Vector3<f64>) -> CMatrix {
    (1..=3).fold(pauli(0), |acc, k| {
        acc + pauli(k) * Complex64::new(x[k - 1], 0.0)
    }) * Complex64::new(0.5, 0.0)
}

/// `x_k = tr(rho sigma_k)` for a unit-trace Hermitian `rho`.
pub fn matrix_to_bloch(rho: &CMatrix) -> Vector3<f64> {
    Vector3::from_fn(|k, _| trace(&(rho * pauli(k + 1))).re)
}

/// `|x| <= 1 - eps + tol`.
pub fn in_k_eps(state: &QubitState, eps: f64, tol: f64) -> bool {
    state.bloch.norm() <= 1.0 - eps + tol
}

/// Bloch ball of radius `1 - eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochBallRegion {
    pub eps: f64,
}

impl BlochBallRegion {
    pub fn new(eps: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1]")));
        }
        Ok(Self { eps })
    }

    pub fn radius(&self) -> f64 {
        1.0 - self.eps
    }

    pub fn contains(&self, state: &QubitState, tol: f64) -> bool {
        in_k_eps(state, self.eps, tol)
    }
}

/// A linear map on `d x d` matrices.
pub trait HermitianMap {
    fn dim(&self) -> usize;
    fn apply(&self, x: &CMatrix) -> CMatrix;
}

impl<M: HermitianMap + ?Sized> HermitianMap for &M {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        (**self).apply(x)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityMap(pub usize);

impl HermitianMap for IdentityMap {
    fn dim(&self) -> usize {
        self.0
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        x.clone()
    }
}

/// `Phi_*[X] = (I / d) tr X`.
#[derive(Debug, Clone, Copy)]
pub struct MaximallyMixingMap(pub usize);

impl HermitianMap for MaximallyMixingMap {
    fn dim(&self) -> usize {
        self.0
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        CMatrix::identity(self.0, self.0) * (trace(x) / Complex64::new(self.0 as f64, 0.0))
    }
}

/// `Phi_mu[X] = (I tr X - mu X) / (d - mu)`; for `d = 2` and `mu = 1` this is
/// the reduction map.
#[derive(Debug, Clone, Copy)]
pub struct ReductionFamily {
    mu: f64,
    d: usize,
}

impl ReductionFamily {
    pub fn new(mu: f64, d: usize) -> Result<Self> {
        if !(1.0..2.0).contains(&mu) {
            return Err(Error::InvalidMu(mu));
        }
        if d < 2 {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(Self { mu, d })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Factor `c` in the qubit Bloch action `x -> -c x`.
    pub fn bloch_contraction(&self) -> f64 {
        self.mu / (2.0 - self.mu)
    }
}

impl HermitianMap for ReductionFamily {
    fn dim(&self) -> usize {
        self.d
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        let id = CMatrix::identity(self.d, self.d);
        (id * trace(x) - x * Complex64::new(self.mu, 0.0))
            / Complex64::new(self.d as f64 - self.mu, 0.0)
    }
}

/// `Phi_mu[rho]` for `mu in [1, 2)`.
pub fn reduction_family(mu: f64, rho: &CMatrix, d: usize) -> Result<CMatrix> {
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: rho.nrows(),
        });
    }
    Ok(ReductionFamily::new(mu, d)?.apply(rho))
}

/// The reduction map in dimension `n`, `X -> (I tr X - X) / (n - 1)`.
pub fn reduction_map(x: &CMatrix, n: usize) -> CMatrix {
    (CMatrix::identity(n, n) * trace(x) - x) / Complex64::new(n as f64 - 1.0, 0.0)
}

/// Inverse of [`reduction_map`], `X -> I tr X - (n - 1) X`. Trace preserving
/// and Hermitian, but not positive for `n > 2`.
pub fn inverse_reduction(x: &CMatrix, n: usize) -> CMatrix {
    CMatrix::identity(n, n) * trace(x) - x * Complex64::new(n as f64 - 1.0, 0.0)
}

/// Qubit map in Bloch form, `x -> A x + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMapAffine {
    pub a: Matrix3<f64>,
    pub shift: Vector3<f64>,
}

impl QubitMapAffine {
    pub fn unital(a: Matrix3<f64>) -> Self {
        Self {
            a,
            shift: Vector3::zeros(),
        }
    }

    pub fn apply_bloch(&self, x: &Vector3<f64>) -> Vector3<f64> {
        self.a * x + self.shift
    }

    pub fn is_unital(&self) -> bool {
        self.shift == Vector3::zeros()
    }

    /// Composition `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a,
            shift: self.a * other.shift + self.shift,
        }
    }
}

impl HermitianMap for QubitMapAffine {
    fn dim(&self) -> usize {
        2
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        // Linear extension: X = (t I + y . sigma) / 2 with t = tr X, y_k = tr(X sigma_k).
        let t = trace(x);
        let y: Vec<Complex64> = (1..=3).map(|k| trace(&(x * pauli(k)))).collect();
        let mut out = pauli(0) * t;
        for k in 0..3 {
            let mut yk = self.shift[k] * t;
            for l in 0..3 {
                yk += y[l] * self.a[(k, l)];
            }
            out += pauli(k + 1) * yk;
        }
        out * Complex64::new(0.5, 0.0)
    }
}

/// Composition of two maps, `outer o inner`.
pub struct Composed<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: HermitianMap, B: HermitianMap> HermitianMap for Composed<A, B> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn apply(&self, x: &CMatrix) -> CMatrix {
        self.outer.apply(&self.inner.apply(x))
    }
}

fn matrix_unit(d: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    m[(i, j)] = Complex64::new(1.0, 0.0);
    m
}

/// Checks Hermiticity-preservation and trace preservation on the matrix units.
pub fn is_pseudo_ptp(map: &impl HermitianMap, tol: f64) -> bool {
    let d = map.dim();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let e = matrix_unit(d, i, j);
            let out = map.apply(&e);
            let herm = (map.apply(&e.adjoint()) - out.adjoint())
                .iter()
                .all(|z| z.norm() <= tol);
            let tp = (trace(&out) - trace(&e)).norm() <= tol;
            herm && tp
        })
    })
}

/// `T_ij = <e_i| Phi[|e_j><e_j|] |e_i>` for the orthonormal basis given by the
/// columns of `basis`.
pub fn induced_matrix(map: &impl HermitianMap, basis: &CMatrix, tol: f64) -> Result<PSMatrix> {
    let d = map.dim();
    if basis.nrows() != d || basis.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: basis.nrows(),
        });
    }
    let gram = basis.adjoint() * basis;
    if (gram - CMatrix::identity(d, d))
        .iter()
        .any(|z| z.norm() > tol)
    {
        return Err(Error::InvalidInput("basis is not orthonormal".into()));
    }
    let mut t = DMatrix::zeros(d, d);
    for j in 0..d {
        let ej = basis.column(j);
        let out = map.apply(&(ej * ej.adjoint()));
        for i in 0..d {
            let ei = basis.column(i);
            t[(i, j)] = (ei.adjoint() * &out * ei)[(0, 0)].re;
        }
    }
    let dev = t
        .column_iter()
        .map(|c| (c.sum() - 1.0).abs())
        .fold(0.0, f64::max);
    if dev > tol {
        return Err(Error::NotTracePreserving(dev));
    }
    PSMatrix::new(t, tol)
}

/// Largest singular value of a unital qubit map is at most `1 / (1 - eps)`,
/// i.e. the ball of radius `1 - eps` is mapped into the Bloch ball.
pub fn unital_in_pp_k(map: &QubitMapAffine, eps: f64) -> Result<bool> {
    if !map.is_unital() {
        return Err(Error::NotUnital(map.shift.norm()));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1]")));
    }
    if eps == 1.0 {
        return Ok(true);
    }
    let s_max = map.a.singular_values().max();
    Ok(s_max * (1.0 - eps) <= 1.0 + 1e-12)
}

/// `n` nearly uniform points on the unit sphere (Fibonacci lattice).
pub fn fibonacci_sphere(n: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = 1.0 - 2.0 * (k as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Minimal eigenvalue of `Phi[rho]`. Negative values certify `rho` outside
/// every region on which `Phi` is positive.
pub fn witness_violation(map: &impl HermitianMap, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            got: rho.dim(),
        });
    }
    Ok(min_eigenvalue(&map.apply(rho.matrix())))
}

/// Smallest eigenvalue of `Phi[rho]` over states on the sphere of radius
/// `1 - eps`, sampled at `samples` Fibonacci points.
pub fn sampled_min_eigenvalue(map: &impl HermitianMap, eps: f64, samples: usize) -> f64 {
    let r = 1.0 - eps;
    fibonacci_sphere(samples)
        .iter()
        .map(|u| min_eigenvalue(&map.apply(&bloch_to_matrix(&(u * r)))))
        .fold(f64::INFINITY, f64::min)
}

/// Result of the reduction-family threshold search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionThreshold {
    pub eps: f64,
    /// Largest `mu` found by bisection with `Phi_mu` positive on `K_eps`.
    pub mu_oracle: f64,
    /// `2 / (2 - eps)`, from `mu (1 - eps) / (2 - mu) <= 1`.
    pub mu_closed_form: f64,
    /// The commonly quoted bound `1 / (1 + (1 - eps)^2)`, kept for comparison.
    pub quoted_bound: f64,
    /// True when `1 < mu <= quoted_bound` is empty; it always is, since the
    /// quoted bound never exceeds 1.
    pub quoted_interval_empty: bool,
}

const SPHERE_SAMPLES: usize = 200;

/// Bisection for the largest `mu in [1, 2)` such that `Phi_mu[rho] >= 0` for
/// every qubit state with `|x| <= 1 - eps`. Positivity is tested on sampled
/// boundary states plus the radial worst case along the z axis; the family is
/// isotropic, so the boundary suffices.
pub fn reduction_threshold(eps: f64, resolution: f64) -> Result<ReductionThreshold> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1)")));
    }
    if !(resolution > 0.0) {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let positive = |mu: f64| -> bool {
        let map = ReductionFamily { mu, d: 2 };
        let r = 1.0 - eps;
        let radial = min_eigenvalue(&map.apply(&bloch_to_matrix(&Vector3::new(0.0, 0.0, r))));
        radial >= -PSD_TOL && sampled_min_eigenvalue(&map, eps, SPHERE_SAMPLES) >= -PSD_TOL
    };
    let (mut lo, mut hi) = (1.0, 2.0);
    if !positive(lo) {
        return Err(Error::InvalidInput(
            "reduction map not positive on region".into(),
        ));
    }
    while hi - lo > resolution {
        let mid = 0.5 * (lo + hi);
        if positive(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let quoted = 1.0 / (1.0 + (1.0 - eps).powi(2));
    Ok(ReductionThreshold {
        eps,
        mu_oracle: lo,
        mu_closed_form: 2.0 / (2.0 - eps),
        quoted_bound: quoted,
        quoted_interval_empty: quoted <= 1.0,
    })
}
