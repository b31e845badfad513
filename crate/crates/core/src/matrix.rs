//! Pseudo-stochastic matrices: unit column sums, entries of either sign.
//!
//! Stochastic matrices form a semigroup; dropping entrywise nonnegativity
//! gives the larger semigroup of pseudo-stochastic matrices, whose invertible
//! elements form a group. Relative to a convex region `K` of the simplex we
//! distinguish three sets:
//!
//! - `S0(K)`: stochastic `T` with `T(Sigma_n)` inside `K`,
//! - `S(K)`: stochastic `T` with `T(K)` inside `K`,
//! - `PS(K)`: pseudo-stochastic `T` with `T(K)` inside `Sigma_n`.
//!
//! An element of `PS(K)` that is not stochastic can push a point outside the
//! simplex only if that point lies outside `K`, which is what
//! [`witness_search`] exploits.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::simplex::{is_probability, ConvexRegion, ProbVector};
use crate::{Error, Result};

/// Largest dimension accepted by [`birkhoff_decompose`].
pub const MAX_BIRKHOFF_DIM: usize = 8;

/// Real square matrix whose columns each sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PSMatrix(DMatrix<f64>);

impl PSMatrix {
    pub fn new(m: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        if let Some(dev) = max_column_sum_deviation(&m, 1.0) {
            if dev > tol {
                return Err(Error::InvalidInput(format!(
                    "column sums deviate from 1 by {dev:e}"
                )));
            }
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        Self::new(matrix_from_rows(rows)?, tol)
    }

    /// The 2x2 matrix `[[a, 1-b], [1-a, b]]`.
    pub fn from_ab(a: f64, b: f64) -> Self {
        Self(DMatrix::from_row_slice(2, 2, &[a, 1.0 - b, 1.0 - a, b]))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    /// Permutation matrix sending basis vector `j` to `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        Self(permutation_matrix(perm))
    }

    /// `T_*` with every entry `1/n`.
    pub fn maximally_mixing(n: usize) -> Self {
        Self(DMatrix::from_element(n, n, 1.0 / n as f64))
    }

    pub(crate) fn new_unchecked(m: DMatrix<f64>) -> Self {
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn apply(&self, p: &[f64]) -> Result<DVector<f64>> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(&self.0 * DVector::from_column_slice(p))
    }

    pub fn classify(&self, tol: f64) -> ClassReport {
        classify_square(&self.0, tol)
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        matrix_to_rows(&self.0)
    }
}

pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let m = rows[0].len();
    if let Some(r) = rows.iter().find(|r| r.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: r.len(),
        });
    }
    Ok(DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn permutation_matrix(perm: &[usize]) -> DMatrix<f64> {
    let n = perm.len();
    let mut m = DMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = 1.0;
    }
    m
}

fn max_column_sum_deviation(m: &DMatrix<f64>, target: f64) -> Option<f64> {
    m.column_iter()
        .map(|c| (c.sum() - target).abs())
        .reduce(f64::max)
}

fn max_row_sum_deviation(m: &DMatrix<f64>, target: f64) -> Option<f64> {
    m.row_iter()
        .map(|r| (r.sum() - target).abs())
        .reduce(f64::max)
}

/// Membership flags of a square real matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassReport {
    pub is_pseudo_stochastic: bool,
    pub is_stochastic: bool,
    pub is_bistochastic: bool,
    pub is_pseudo_bistochastic: bool,
    pub is_permutation: bool,
    pub is_invertible: bool,
    pub det: f64,
    /// Sum of the negative parts of the entries.
    pub negativity: f64,
}

pub fn classify(t: &DMatrix<f64>, tol: f64) -> Result<ClassReport> {
    if !t.is_square() {
        return Err(Error::NotSquare(t.nrows(), t.ncols()));
    }
    Ok(classify_square(t, tol))
}

fn classify_square(t: &DMatrix<f64>, tol: f64) -> ClassReport {
    let pseudo = max_column_sum_deviation(t, 1.0).is_some_and(|d| d <= tol);
    let rows_unit = max_row_sum_deviation(t, 1.0).is_some_and(|d| d <= tol);
    let nonneg = t.iter().all(|&x| x >= -tol);
    let stochastic = pseudo && nonneg;
    let bistochastic = stochastic && rows_unit;
    let zero_one = t.iter().all(|&x| x.abs() <= tol || (x - 1.0).abs() <= tol);
    let det = t.determinant();
    ClassReport {
        is_pseudo_stochastic: pseudo,
        is_stochastic: stochastic,
        is_bistochastic: bistochastic,
        is_pseudo_bistochastic: pseudo && rows_unit,
        is_permutation: bistochastic && zero_one,
        is_invertible: det.abs() > tol,
        det,
        negativity: t.iter().map(|&x| (-x).max(0.0)).sum(),
    }
}

pub fn compose(t1: &PSMatrix, t2: &PSMatrix) -> Result<PSMatrix> {
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch {
            expected: t1.dim(),
            got: t2.dim(),
        });
    }
    Ok(PSMatrix(&t1.0 * &t2.0))
}

/// Inverse of an invertible pseudo-stochastic matrix, itself pseudo-stochastic.
pub fn inverse(t: &PSMatrix, tol: f64) -> Result<PSMatrix> {
    let det = t.0.determinant();
    if det.abs() <= tol {
        return Err(Error::SingularMatrix(det.abs()));
    }
    t.0.clone()
        .try_inverse()
        .map(PSMatrix)
        .ok_or(Error::SingularMatrix(det.abs()))
}

fn check_region_dim(t: &PSMatrix, k: &ConvexRegion) -> Result<()> {
    if t.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: t.dim(),
        });
    }
    Ok(())
}

/// `T(K)` inside the simplex. Affinity reduces this to the extreme points.
pub fn in_ps_k(t: &PSMatrix, k: &ConvexRegion, tol: f64) -> Result<bool> {
    check_region_dim(t, k)?;
    for e in k.extreme_points() {
        if !is_probability(t.apply(e.as_slice())?.as_slice(), tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T` stochastic and `T(K)` inside `K`.
pub fn in_s_k(t: &PSMatrix, k: &ConvexRegion, tol: f64) -> Result<bool> {
    check_region_dim(t, k)?;
    if !t.classify(tol).is_stochastic {
        return Ok(false);
    }
    for e in k.extreme_points() {
        if !k.contains(t.apply(e.as_slice())?.as_slice(), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T(Sigma_n)` inside `K`, i.e. every column of `T` lies in `K`.
pub fn in_s0_k(t: &PSMatrix, k: &ConvexRegion, tol: f64) -> Result<bool> {
    check_region_dim(t, k)?;
    for col in t.0.column_iter() {
        if !k.contains(col.as_slice(), tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertices of the diamond sets in the `(a, b)` plane of
/// `T = [[a, 1-b], [1-a, b]]`: `A`, `B` bound `PS(K_eps)` and `C`, `D` bound
/// `S(K_eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiamondVertices {
    pub a: (f64, f64),
    pub b: (f64, f64),
    pub c: (f64, f64),
    pub d: (f64, f64),
}

pub fn diamond_vertices(eps: f64) -> Result<DiamondVertices> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1/2)")));
    }
    let denom = 1.0 - 2.0 * eps;
    let a = (1.0 - eps) / denom;
    // Written as a difference so that eps = 0 gives +0, not -0.
    let b = (0.0 - eps) / denom;
    Ok(DiamondVertices {
        a: (a, a),
        b: (b, b),
        c: (eps, 1.0 - eps),
        d: (1.0 - eps, eps),
    })
}

fn is_witness(t: &PSMatrix, p: &ProbVector, k: &ConvexRegion, tol: f64) -> Result<bool> {
    Ok(!t.classify(tol).is_stochastic
        && in_ps_k(t, k, tol)?
        && !is_probability(t.apply(p.as_slice())?.as_slice(), tol))
}

/// Looks for `T` in `PS(K)` minus the stochastic matrices with `T p` outside
/// the simplex. Such `T` exists iff `p` is not in `K`.
///
/// For the two-level diamond the analytic vertex matrices `A` and `B` are
/// tried first, followed by `budget` random points on the boundary of the
/// `PS(K_eps)` diamond. For other regions, random directions with zero column
/// sums are pushed from the identity to the boundary of `PS(K)`.
pub fn witness_search(
    p: &ProbVector,
    k: &ConvexRegion,
    budget: usize,
    seed: u64,
    tol: f64,
) -> Result<Option<PSMatrix>> {
    if p.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: k.dim(),
            got: p.dim(),
        });
    }
    if !is_probability(p.as_slice(), tol) {
        return Err(Error::InvalidInput("p is not a probability vector".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    if let ConvexRegion::DiamondK { eps } = *k {
        if eps < 0.5 {
            let v = diamond_vertices(eps)?;
            for (a, b) in [v.a, v.b] {
                let t = PSMatrix::from_ab(a, b);
                if is_witness(&t, p, k, tol)? {
                    return Ok(Some(t));
                }
            }
            // Boundary of PS(K_eps): edges joining A and B to (1, 0), (0, 1).
            let corners = [(1.0, 0.0), (0.0, 1.0)];
            for _ in 0..budget {
                let from = if rng.random::<bool>() { v.a } else { v.b };
                let to = corners[rng.random_range(0..2)];
                let s: f64 = rng.random();
                let t =
                    PSMatrix::from_ab(from.0 + s * (to.0 - from.0), from.1 + s * (to.1 - from.1));
                if is_witness(&t, p, k, tol)? {
                    return Ok(Some(t));
                }
            }
            return Ok(None);
        }
    }

    let n = p.dim();
    let extremes = k.extreme_points();
    for _ in 0..budget {
        let dir = random_zero_column_sum(n, &mut rng);
        let Some(scale) = max_scale_in_ps_k(&dir, &extremes) else {
            continue;
        };
        if scale <= tol {
            continue;
        }
        let t = PSMatrix(DMatrix::identity(n, n) + dir * scale);
        if is_witness(&t, p, k, tol)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn random_zero_column_sum(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let mut m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
    for mut col in m.column_iter_mut() {
        let mean = col.sum() / n as f64;
        col.add_scalar_mut(-mean);
    }
    m
}

/// Largest `s` with `(I + s D) e` in the simplex for every extreme point `e`,
/// or `None` when unbounded.
fn max_scale_in_ps_k(dir: &DMatrix<f64>, extremes: &[ProbVector]) -> Option<f64> {
    let mut best = f64::INFINITY;
    for e in extremes {
        let de = dir * e.as_dvector();
        for (ei, dei) in e.as_slice().iter().zip(de.iter()) {
            if *dei < 0.0 {
                best = best.min(ei / -dei);
            }
        }
    }
    best.is_finite().then_some(best)
}

/// One term `weight * P` of a Birkhoff decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BirkhoffTerm {
    pub weight: f64,
    /// `perm[j]` is the row of the unit entry in column `j`.
    pub perm: Vec<usize>,
}

impl BirkhoffTerm {
    pub fn matrix(&self) -> DMatrix<f64> {
        permutation_matrix(&self.perm)
    }
}

/// Writes a bistochastic `T` as a convex combination of permutation matrices
/// by repeatedly removing the permutation with the largest bottleneck entry.
pub fn birkhoff_decompose(t: &PSMatrix, tol: f64) -> Result<Vec<BirkhoffTerm>> {
    let n = t.dim();
    if n > MAX_BIRKHOFF_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    if !t.classify(tol).is_bistochastic {
        return Err(Error::NotBistochastic);
    }
    let mut residual = t.0.clone();
    let mut terms = Vec::new();
    let max_steps = n * n - 2 * n + 2;
    for _ in 0..max_steps {
        if residual.amax() <= tol {
            break;
        }
        let found = if n <= 5 {
            bottleneck_exhaustive(&residual, tol)
        } else {
            bottleneck_matching(&residual, tol)
        };
        let Some((perm, weight)) = found else {
            break;
        };
        for (j, &i) in perm.iter().enumerate() {
            residual[(i, j)] -= weight;
        }
        residual.apply(|x| {
            if x.abs() <= tol {
                *x = 0.0;
            }
        });
        terms.push(BirkhoffTerm { weight, perm });
    }
    let left = residual.amax();
    if left > tol {
        return Err(Error::DecompositionFailed(left));
    }
    Ok(terms)
}

fn bottleneck_exhaustive(m: &DMatrix<f64>, tol: f64) -> Option<(Vec<usize>, f64)> {
    let n = m.nrows();
    let mut best: Option<(Vec<usize>, f64)> = None;
    for perm in (0..n).permutations(n) {
        let w = perm
            .iter()
            .enumerate()
            .map(|(j, &i)| m[(i, j)])
            .fold(f64::INFINITY, f64::min);
        if w > tol && best.as_ref().is_none_or(|(_, bw)| w > *bw) {
            best = Some((perm, w));
        }
    }
    best
}

/// Maximum-bottleneck perfect matching: the largest threshold for which the
/// entries above it still admit a perfect matching (Kuhn's augmenting paths).
fn bottleneck_matching(m: &DMatrix<f64>, tol: f64) -> Option<(Vec<usize>, f64)> {
    let n = m.nrows();
    let mut levels: Vec<f64> = m.iter().copied().filter(|&x| x > tol).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let (mut lo, mut hi) = (0usize, levels.len());
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let theta = levels[mid];
        match perfect_matching(n, |i, j| m[(i, j)] >= theta) {
            Some(perm) => {
                best = Some((perm, theta));
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    best.map(|(perm, _)| {
        let w = perm
            .iter()
            .enumerate()
            .map(|(j, &i)| m[(i, j)])
            .fold(f64::INFINITY, f64::min);
        (perm, w)
    })
}

/// Column-to-row perfect matching on the bipartite graph `edge(i, j)`.
fn perfect_matching(n: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        j: usize,
        n: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        row_owner: &mut [Option<usize>],
    ) -> bool {
        for i in 0..n {
            if edge(i, j) && !seen[i] {
                seen[i] = true;
                if row_owner[i].is_none_or(|other| augment(other, n, edge, seen, row_owner)) {
                    row_owner[i] = Some(j);
                    return true;
                }
            }
        }
        false
    }
    let mut row_owner = vec![None; n];
    for j in 0..n {
        let mut seen = vec![false; n];
        if !augment(j, n, &edge, &mut seen, &mut row_owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (i, owner) in row_owner.iter().enumerate() {
        perm[owner.expect("perfect matching covers every row")] = i;
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn ab(a: f64, b: f64) -> PSMatrix {
        PSMatrix::from_ab(a, b)
    }

    #[test]
    fn classify_identity() {
        let r = PSMatrix::identity(2).classify(TOL);
        assert!(r.is_stochastic && r.is_bistochastic && r.is_permutation);
        assert_eq!(r.det, 1.0);
        assert_eq!(r.negativity, 0.0);
    }

    #[test]
    fn classify_vertex_a() {
        let r = ab(2.0, 2.0).classify(TOL);
        assert!(r.is_pseudo_stochastic);
        assert!(!r.is_stochastic);
        assert!(r.is_pseudo_bistochastic);
        assert_eq!(r.negativity, 2.0);
    }

    #[test]
    fn classify_bad_column() {
        let m = DMatrix::from_row_slice(3, 3, &[0.5, 0.2, 0.1, 0.2, 0.3, 0.1, 0.2, 0.5, 0.8]);
        let r = classify(&m, TOL).unwrap();
        assert!(!r.is_pseudo_stochastic);
        assert!(PSMatrix::new(m, TOL).is_err());
    }

    #[test]
    fn classify_non_square() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert_eq!(classify(&m, TOL), Err(Error::NotSquare(2, 3)));
    }

    #[test]
    fn compose_vertex_square() {
        let t = ab(2.0, 2.0);
        let sq = compose(&t, &t).unwrap();
        assert_eq!(
            sq.matrix(),
            &DMatrix::from_row_slice(2, 2, &[5.0, -4.0, -4.0, 5.0])
        );
        let id = compose(&t, &PSMatrix::identity(2)).unwrap();
        assert_eq!(id, t);
        assert!(compose(&t, &PSMatrix::identity(3)).is_err());
    }

    #[test]
    fn inverse_cases() {
        let sx = PSMatrix::permutation(&[1, 0]);
        assert_eq!(inverse(&sx, 1e-12).unwrap(), sx);

        let t = PSMatrix::from_rows(&[vec![0.9, 0.2], vec![0.1, 0.8]], TOL).unwrap();
        let inv = inverse(&t, 1e-12).unwrap();
        let r = inv.classify(TOL);
        assert!(r.is_pseudo_stochastic && !r.is_stochastic);
        // Closed-form 2x2 inverse: det = 0.7.
        let expect = [0.8 / 0.7, -0.2 / 0.7, -0.1 / 0.7, 0.9 / 0.7];
        for (x, y) in inv.matrix().transpose().iter().zip(expect) {
            assert!((x - y).abs() < 1e-12);
        }

        // tr T = 1 means det T = 0.
        assert!(matches!(
            inverse(&ab(0.3, 0.7), 1e-12),
            Err(Error::SingularMatrix(_))
        ));
    }

    #[test]
    fn ps_k_membership() {
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        assert!(in_ps_k(&ab(2.0, 2.0), &k, TOL).unwrap());
        assert!(!in_ps_k(&ab(3.0, 3.0), &k, TOL).unwrap());
        assert!(in_ps_k(&ab(0.3, 0.9), &k, TOL).unwrap());
    }

    #[test]
    fn s_k_membership() {
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        assert!(in_s_k(&ab(1.0 / 3.0, 2.0 / 3.0), &k, TOL).unwrap());
        assert!(!in_s_k(&ab(2.0, 2.0), &k, TOL).unwrap());
        assert!(in_s_k(&PSMatrix::identity(2), &k, TOL).unwrap());
    }

    #[test]
    fn s0_k_membership() {
        let center = ConvexRegion::SinglePoint(ProbVector::uniform(3));
        assert!(in_s0_k(&PSMatrix::maximally_mixing(3), &center, TOL).unwrap());
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        assert!(in_s0_k(&ab(0.5, 0.5), &k, TOL).unwrap());
        assert!(!in_s0_k(&PSMatrix::identity(2), &k, TOL).unwrap());
    }

    #[test]
    fn vertices_at_one_third() {
        let v = diamond_vertices(1.0 / 3.0).unwrap();
        assert!((v.a.0 - 2.0).abs() < 1e-12 && (v.a.1 - 2.0).abs() < 1e-12);
        assert!((v.b.0 + 1.0).abs() < 1e-12 && (v.b.1 + 1.0).abs() < 1e-12);
        assert!(diamond_vertices(0.5).is_err());
    }

    #[test]
    fn witness_for_vertex_state() {
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        let p = ProbVector::new(vec![1.0, 0.0], TOL).unwrap();
        let t = witness_search(&p, &k, 100, 0, TOL).unwrap().unwrap();
        let a = t.matrix()[(0, 0)];
        let b = t.matrix()[(1, 1)];
        assert!((a - 2.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
        let tp = t.apply(p.as_slice()).unwrap();
        assert!((tp[0] - 2.0).abs() < 1e-12 && (tp[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn no_witness_inside_k() {
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        for p in [[0.5, 0.5], [0.4, 0.6]] {
            let p = ProbVector::new(p.to_vec(), TOL).unwrap();
            assert!(witness_search(&p, &k, 1000, 7, TOL).unwrap().is_none());
        }
    }

    #[test]
    fn witness_for_general_hull() {
        let k = ConvexRegion::hull(vec![
            ProbVector::new(vec![0.5, 0.25, 0.25], TOL).unwrap(),
            ProbVector::new(vec![0.25, 0.5, 0.25], TOL).unwrap(),
            ProbVector::new(vec![0.25, 0.25, 0.5], TOL).unwrap(),
        ])
        .unwrap();
        let outside = ProbVector::new(vec![0.9, 0.05, 0.05], TOL).unwrap();
        let t = witness_search(&outside, &k, 5000, 3, TOL).unwrap().unwrap();
        assert!(in_ps_k(&t, &k, TOL).unwrap());
        assert!(!t.classify(TOL).is_stochastic);
        assert!(!is_probability(
            t.apply(outside.as_slice()).unwrap().as_slice(),
            TOL
        ));

        let inside = ProbVector::uniform(3);
        assert!(witness_search(&inside, &k, 2000, 3, TOL).unwrap().is_none());
    }

    #[test]
    fn witness_dimension_mismatch() {
        let k = ConvexRegion::diamond(0.2).unwrap();
        let p = ProbVector::uniform(3);
        assert!(witness_search(&p, &k, 10, 0, TOL).is_err());
    }

    #[test]
    fn birkhoff_permutation() {
        let p = PSMatrix::permutation(&[2, 0, 1]);
        let terms = birkhoff_decompose(&p, TOL).unwrap();
        assert_eq!(
            terms,
            vec![BirkhoffTerm {
                weight: 1.0,
                perm: vec![2, 0, 1]
            }]
        );
    }

    #[test]
    fn birkhoff_maximally_mixing_2() {
        let terms = birkhoff_decompose(&PSMatrix::maximally_mixing(2), TOL).unwrap();
        assert_eq!(
            terms,
            vec![
                BirkhoffTerm {
                    weight: 0.5,
                    perm: vec![0, 1]
                },
                BirkhoffTerm {
                    weight: 0.5,
                    perm: vec![1, 0]
                },
            ]
        );
    }

    fn reconstruct(terms: &[BirkhoffTerm], n: usize) -> DMatrix<f64> {
        terms
            .iter()
            .fold(DMatrix::zeros(n, n), |acc, t| acc + t.matrix() * t.weight)
    }

    #[test]
    fn birkhoff_round_trip_n4() {
        let perms = [vec![1, 2, 3, 0], vec![0, 1, 2, 3], vec![3, 1, 0, 2]];
        let weights = [0.2, 0.5, 0.3];
        let m = perms
            .iter()
            .zip(weights)
            .fold(DMatrix::zeros(4, 4), |acc, (p, w)| {
                acc + permutation_matrix(p) * w
            });
        let t = PSMatrix::new(m.clone(), TOL).unwrap();
        let terms = birkhoff_decompose(&t, 1e-12).unwrap();
        assert!((reconstruct(&terms, 4) - m).amax() <= 1e-9);
        assert!((terms.iter().map(|t| t.weight).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn birkhoff_round_trip_n7_matching_path() {
        let perms = [
            vec![1, 2, 3, 4, 5, 6, 0],
            vec![6, 5, 4, 3, 2, 1, 0],
            vec![0, 2, 4, 6, 1, 3, 5],
            vec![3, 0, 6, 1, 5, 2, 4],
        ];
        let weights = [0.1, 0.4, 0.3, 0.2];
        let m = perms
            .iter()
            .zip(weights)
            .fold(DMatrix::zeros(7, 7), |acc, (p, w)| {
                acc + permutation_matrix(p) * w
            });
        let t = PSMatrix::new(m.clone(), TOL).unwrap();
        let terms = birkhoff_decompose(&t, 1e-12).unwrap();
        assert!(terms.iter().all(|t| t.weight > 0.0));
        assert!((reconstruct(&terms, 7) - m).amax() <= 1e-9);
    }

    #[test]
    fn birkhoff_rejects_non_bistochastic() {
        let t = PSMatrix::from_rows(&[vec![0.9, 0.2], vec![0.1, 0.8]], TOL).unwrap();
        assert_eq!(birkhoff_decompose(&t, TOL), Err(Error::NotBistochastic));
        assert_eq!(
            birkhoff_decompose(&PSMatrix::identity(9), TOL),
            Err(Error::UnsupportedDimension(9))
        );
    }
}
