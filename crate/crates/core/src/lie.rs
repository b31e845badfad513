//! Lie algebra of the pseudo-stochastic group: matrices with zero column sums.
//!
//! For `n = 2` the algebra is spanned by `L_a`, `L_b`; for `n = 3` by the six
//! elementary generators `L_1..L_6`, each moving weight from one state to
//! another. Commutator tables are treated as data and checked against direct
//! matrix arithmetic.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::matrix::PSMatrix;
use crate::{Error, Result};

/// Singular values below this count as zero in span computations.
pub const RANK_TOL: f64 = 1e-10;

/// Square matrix with zero column sums.
#[derive(Debug, Clone, PartialEq)]
pub struct LieElement(DMatrix<f64>);

impl LieElement {
    pub fn new(m: DMatrix<f64>, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("non-finite entry".into()));
        }
        if let Some((j, s)) = m
            .column_iter()
            .map(|c| c.sum())
            .enumerate()
            .find(|(_, s)| s.abs() > tol)
        {
            return Err(Error::InvalidInput(format!(
                "column {j} sums to {s}, expected 0"
            )));
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        Self::new(crate::matrix::matrix_from_rows(rows)?, tol)
    }

    pub fn zero(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// `sum_k c_k X_k`; zero-column-sum matrices form a vector space.
    pub fn combination(elems: &[LieElement], coeffs: &[f64]) -> Result<Self> {
        let Some(first) = elems.first() else {
            return Err(Error::InvalidInput("empty generator list".into()));
        };
        if coeffs.len() != elems.len() {
            return Err(Error::DimensionMismatch {
                expected: elems.len(),
                got: coeffs.len(),
            });
        }
        let n = first.dim();
        let mut out = DMatrix::zeros(n, n);
        for (e, &c) in elems.iter().zip(coeffs) {
            if e.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.dim(),
                });
            }
            out += &e.0 * c;
        }
        Ok(Self(out))
    }
}

/// `[X, Y] = XY - YX`.
pub fn commutator(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(LieElement(&x.0 * &y.0 - &y.0 * &x.0))
}

/// Elementary generator moving weight from state `from` to state `to`.
fn transfer(n: usize, from: usize, to: usize) -> LieElement {
    let mut m = DMatrix::zeros(n, n);
    m[(from, from)] = -1.0;
    m[(to, from)] = 1.0;
    LieElement(m)
}

/// `[L_a, L_b]` for `n = 2`; `[L_1, ..., L_6]` for `n = 3`.
pub fn standard_generators(n: usize) -> Result<Vec<LieElement>> {
    match n {
        2 => Ok(vec![transfer(2, 0, 1), transfer(2, 1, 0)]),
        3 => Ok(vec![
            transfer(3, 0, 1),
            transfer(3, 0, 2),
            transfer(3, 1, 0),
            transfer(3, 1, 2),
            transfer(3, 2, 0),
            transfer(3, 2, 1),
        ]),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

/// Claimed relation `[L_i, L_j] = sum_k coeffs[k] L_k` (0-based indices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<f64>,
}

impl Relation {
    fn sparse(len: usize, i: usize, j: usize, terms: &[(usize, f64)]) -> Self {
        let mut coeffs = vec![0.0; len];
        for &(k, c) in terms {
            coeffs[k] = c;
        }
        Self { i, j, coeffs }
    }
}

/// `[L_a, L_b] = L_a - L_b`.
pub fn relation_table_n2() -> Vec<Relation> {
    vec![Relation {
        i: 0,
        j: 1,
        coeffs: vec![1.0, -1.0],
    }]
}

/// The fifteen tabulated commutators of `L_1..L_6`, transcribed as stated.
pub fn relation_table_n3() -> Vec<Relation> {
    // (i, j, [(k, c)]) with 1-based labels as usually written.
    type Entry = (usize, usize, &'static [(usize, f64)]);
    let raw: [Entry; 15] = [
        (1, 2, &[(2, 1.0), (1, -1.0)]),
        (1, 3, &[(1, 1.0), (3, -1.0)]),
        (1, 4, &[(1, 1.0), (2, -1.0)]),
        (1, 5, &[(6, 1.0), (5, -1.0)]),
        (1, 6, &[]),
        (2, 3, &[(4, 1.0), (3, -1.0)]),
        (2, 4, &[]),
        (2, 5, &[(2, 1.0), (5, -1.0)]),
        (2, 6, &[(2, 1.0), (1, -1.0)]),
        (3, 4, &[(4, 1.0), (3, -1.0)]),
        (3, 5, &[]),
        (3, 6, &[(5, 1.0), (6, -1.0)]),
        (4, 5, &[(4, 1.0), (3, -1.0)]),
        (4, 6, &[(4, 1.0), (6, -1.0)]),
        (5, 6, &[(6, 1.0), (5, -1.0)]),
    ];
    raw.iter()
        .map(|(i, j, terms)| {
            let terms: Vec<(usize, f64)> = terms.iter().map(|&(k, c)| (k - 1, c)).collect();
            Relation::sparse(6, i - 1, j - 1, &terms)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub i: usize,
    pub j: usize,
    pub claimed: Vec<f64>,
    /// Coefficients of the computed commutator in the generator basis, when
    /// it lies in their span.
    pub computed: Option<Vec<f64>>,
    /// Max-entry distance between the computed commutator and the claim.
    pub residual: f64,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub mismatches: usize,
}

/// Compares every claimed relation against direct matrix arithmetic. A
/// relation is confirmed when the residual is at most `tol`.
pub fn verify_relation_table(
    gens: &[LieElement],
    table: &[Relation],
    tol: f64,
) -> Result<RelationReport> {
    let basis = SpanBasis::new(gens)?;
    let mut checks = Vec::with_capacity(table.len());
    for rel in table {
        if rel.i >= gens.len() || rel.j >= gens.len() {
            return Err(Error::InvalidInput(format!(
                "relation index ({}, {}) out of range",
                rel.i, rel.j
            )));
        }
        let c = commutator(&gens[rel.i], &gens[rel.j])?;
        let claim = LieElement::combination(gens, &rel.coeffs)?;
        let residual = (&c.0 - &claim.0).amax();
        let computed = basis.coordinates(&c);
        checks.push(RelationCheck {
            i: rel.i,
            j: rel.j,
            claimed: rel.coeffs.clone(),
            computed,
            residual,
            confirmed: residual <= tol,
        });
    }
    let mismatches = checks.iter().filter(|c| !c.confirmed).count();
    Ok(RelationReport { checks, mismatches })
}

fn vectorize(x: &LieElement) -> DVector<f64> {
    DVector::from_column_slice(x.0.as_slice())
}

/// Generators stacked as columns, with their SVD for least-squares
/// coordinates.
struct SpanBasis {
    n: usize,
    a: DMatrix<f64>,
    svd: nalgebra::SVD<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl SpanBasis {
    fn new(gens: &[LieElement]) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidInput("empty generator list".into()));
        };
        let n = first.dim();
        if let Some(bad) = gens.iter().find(|g| g.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.dim(),
            });
        }
        let cols: Vec<DVector<f64>> = gens.iter().map(vectorize).collect();
        let a = DMatrix::from_columns(&cols);
        let svd = a.clone().svd(true, true);
        Ok(Self { n, a, svd })
    }

    fn rank(&self) -> usize {
        self.svd.rank(RANK_TOL)
    }

    /// Least-squares coordinates and residual of `x` in the span.
    fn solve(&self, x: &LieElement) -> (Vec<f64>, f64) {
        let b = vectorize(x);
        let c = self
            .svd
            .solve(&b, RANK_TOL)
            .expect("SVD computed with U and V");
        let residual = (&self.a * &c - b).amax();
        (c.iter().copied().collect(), residual)
    }

    fn coordinates(&self, x: &LieElement) -> Option<Vec<f64>> {
        if x.dim() != self.n {
            return None;
        }
        let (c, residual) = self.solve(x);
        (residual <= RANK_TOL).then_some(c)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructureConstants {
    /// `c[i][j][k]` with `[L_i, L_j] = sum_k c[i][j][k] L_k`.
    pub c: Vec<Vec<Vec<f64>>>,
    pub closed: bool,
    pub max_residual: f64,
}

/// Least-squares structure constants; `closed` iff every commutator lies in
/// the span within `tol`.
pub fn structure_constants(gens: &[LieElement], tol: f64) -> Result<StructureConstants> {
    let basis = SpanBasis::new(gens)?;
    let rank = basis.rank();
    if rank < gens.len() {
        return Err(Error::DependentGenerators {
            rank,
            count: gens.len(),
        });
    }
    let m = gens.len();
    let mut c = vec![vec![vec![0.0; m]; m]; m];
    let mut max_residual: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let (coeffs, residual) = basis.solve(&commutator(&gens[i], &gens[j])?);
            c[i][j] = coeffs;
            max_residual = max_residual.max(residual);
        }
    }
    Ok(StructureConstants {
        c,
        closed: max_residual <= tol,
        max_residual,
    })
}

/// Orthonormal basis (as elements) of the span of `elems`.
fn span_basis(elems: &[LieElement], n: usize) -> Vec<LieElement> {
    if elems.is_empty() {
        return Vec::new();
    }
    let cols: Vec<DVector<f64>> = elems.iter().map(vectorize).collect();
    let svd = DMatrix::from_columns(&cols).svd(true, false);
    let u = svd.u.expect("requested U");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > RANK_TOL)
        .map(|(k, _)| LieElement(DMatrix::from_column_slice(n, n, u.column(k).as_slice())))
        .collect()
}

/// Dimensions of `g, [g,g], [[g,g],[g,g]], ...` for `depth` steps, stopping
/// early at zero or when the series stabilises.
pub fn derived_series_dims(gens: &[LieElement], max_depth: usize, tol: f64) -> Result<Vec<usize>> {
    let sc = structure_constants(gens, tol)?;
    if !sc.closed {
        return Err(Error::NotClosed(sc.max_residual));
    }
    let n = gens[0].dim();
    let mut current = span_basis(gens, n);
    let mut dims = vec![current.len()];
    for _ in 0..max_depth {
        if current.is_empty() {
            break;
        }
        let mut brackets = Vec::new();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                brackets.push(commutator(&current[i], &current[j])?);
            }
        }
        let next = span_basis(&brackets, n);
        let stalled = next.len() == current.len();
        dims.push(next.len());
        current = next;
        if stalled {
            break;
        }
    }
    Ok(dims)
}

/// True iff the derived series reaches `{0}` within `max_depth` steps.
pub fn is_solvable(gens: &[LieElement], max_depth: usize, tol: f64) -> Result<bool> {
    Ok(derived_series_dims(gens, max_depth, tol)?.last() == Some(&0))
}

/// `exp(tX)`, a pseudo-stochastic matrix with determinant `exp(t tr X)`.
pub fn exp_generator(x: &LieElement, t: f64) -> Result<PSMatrix> {
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!("t = {t} is not finite")));
    }
    let m = (&x.0 * t).exp();
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("exponential overflowed".into()));
    }
    let n = x.dim() as f64;
    PSMatrix::new(m, 1e-10 * n.max(1.0) * (1.0 + (t * x.0.amax()).abs()))
}

/// True iff all pairwise commutators of the selected generators lie in their
/// span within `tol`.
pub fn subalgebra_closed(gens: &[LieElement], indices: &[usize], tol: f64) -> Result<bool> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= gens.len()) {
        return Err(Error::InvalidInput(format!(
            "generator index {bad} out of range"
        )));
    }
    let sub: Vec<LieElement> = indices.iter().map(|&i| gens[i].clone()).collect();
    let Some(first) = sub.first() else {
        return Ok(true);
    };
    let span = span_basis(&sub, first.dim());
    if span.is_empty() {
        return Ok(true);
    }
    let basis = SpanBasis::new(&span)?;
    for i in 0..sub.len() {
        for j in i + 1..sub.len() {
            let (_, residual) = basis.solve(&commutator(&sub[i], &sub[j])?);
            if residual > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Indices of the generators of upper-triangular matrices with first column
/// `e_1` (parameters `b_1, c_1, c_2`).
pub const UPPER_TRIANGULAR_N3: [usize; 3] = [2, 4, 5];

/// Indices of the generators fixing the first two states (parameters
/// `c_1, c_2`).
pub const LAST_COLUMN_N3: [usize; 2] = [4, 5];

/// The two generators of circulant bistochastic `3 x 3` matrices:
/// `L_1 + L_4 + L_5` and `L_2 + L_3 + L_6`.
pub fn circulant_generators() -> Vec<LieElement> {
    let g = standard_generators(3).expect("n = 3 supported");
    let sum = |ks: [usize; 3]| LieElement(ks.iter().map(|&k| g[k].0.clone()).sum());
    vec![sum([0, 3, 4]), sum([1, 2, 5])]
}
