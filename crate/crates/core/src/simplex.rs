//! Probability vectors and convex regions of the simplex.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Largest number of listed extreme points accepted by the exhaustive
/// convex-hull membership test.
pub const MAX_EXTREME_POINTS: usize = 8;

/// A probability vector: nonnegative entries summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(DVector<f64>);

impl ProbVector {
    pub fn new(entries: Vec<f64>, tol: f64) -> Result<Self> {
        let v = DVector::from_vec(entries);
        if !is_probability(v.as_slice(), tol) {
            return Err(Error::InvalidInput(format!(
                "not a probability vector: {:?}",
                v.as_slice()
            )));
        }
        Ok(Self(v))
    }

    pub fn from_dvector(v: DVector<f64>, tol: f64) -> Result<Self> {
        Self::new(v.as_slice().to_vec(), tol)
    }

    /// Unit vector `e_k` in dimension `n`.
    pub fn vertex(n: usize, k: usize) -> Self {
        let mut v = DVector::zeros(n);
        v[k] = 1.0;
        Self(v)
    }

    /// The maximally mixed vector `(1/n, ..., 1/n)`.
    pub fn uniform(n: usize) -> Self {
        Self(DVector::from_element(n, 1.0 / n as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }
}

/// True iff every entry is `>= -tol` and the entries sum to `1 +- tol`.
pub fn is_probability(v: &[f64], tol: f64) -> bool {
    !v.is_empty()
        && v.iter().all(|x| x.is_finite() && *x >= -tol)
        && (v.iter().sum::<f64>() - 1.0).abs() <= tol
}

/// A convex subset of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexRegion {
    /// The whole simplex in dimension `n`.
    FullSimplex(usize),
    /// `{ p in Sigma_2 : eps <= p_1, p_2 <= 1 - eps }`, `eps in [0, 1/2]`.
    DiamondK {
        eps: f64,
    },
    /// Convex hull of the listed points.
    ExtremePoints(Vec<ProbVector>),
    SinglePoint(ProbVector),
}

impl ConvexRegion {
    pub fn diamond(eps: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&eps) {
            return Err(Error::InvalidInput(format!("eps = {eps} outside [0, 1/2]")));
        }
        Ok(ConvexRegion::DiamondK { eps })
    }

    pub fn hull(points: Vec<ProbVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("empty point list".into()));
        };
        let n = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.dim(),
            });
        }
        if points.len() > MAX_EXTREME_POINTS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_EXTREME_POINTS} extreme points supported"
            )));
        }
        Ok(ConvexRegion::ExtremePoints(points))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexRegion::FullSimplex(n) => *n,
            ConvexRegion::DiamondK { .. } => 2,
            ConvexRegion::ExtremePoints(pts) => pts.first().map_or(0, ProbVector::dim),
            ConvexRegion::SinglePoint(p) => p.dim(),
        }
    }

    /// Membership test within `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> Result<bool> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(match self {
            ConvexRegion::FullSimplex(_) => is_probability(p, tol),
            ConvexRegion::DiamondK { eps } => {
                is_probability(p, tol) && p.iter().all(|&x| x >= eps - tol && x <= 1.0 - eps + tol)
            }
            ConvexRegion::SinglePoint(q) => q
                .as_slice()
                .iter()
                .zip(p)
                .all(|(a, b)| (a - b).abs() <= tol),
            ConvexRegion::ExtremePoints(pts) => in_convex_hull(pts, p, tol),
        })
    }

    /// Extreme points of the region. Any affine map sends the region into a
    /// convex set iff it sends these points there.
    pub fn extreme_points(&self) -> Vec<ProbVector> {
        match self {
            ConvexRegion::FullSimplex(n) => (0..*n).map(|k| ProbVector::vertex(*n, k)).collect(),
            ConvexRegion::DiamondK { eps } => {
                let a = ProbVector(DVector::from_vec(vec![*eps, 1.0 - eps]));
                let b = ProbVector(DVector::from_vec(vec![1.0 - eps, *eps]));
                if a == b {
                    vec![a]
                } else {
                    vec![a, b]
                }
            }
            ConvexRegion::ExtremePoints(pts) => pts.clone(),
            ConvexRegion::SinglePoint(p) => vec![p.clone()],
        }
    }
}

/// Exhaustive search over subsets of `pts` for nonnegative weights `w` with
/// `sum w = 1` and `sum w_k pts_k = p`.
fn in_convex_hull(pts: &[ProbVector], p: &[f64], tol: f64) -> bool {
    let n = p.len();
    let target = DVector::from_column_slice(p);
    (1..=pts.len()).any(|size| {
        pts.iter().combinations(size).any(|subset| {
            // Rows: coordinates plus the normalisation constraint.
            let mut a = DMatrix::zeros(n + 1, size);
            for (col, q) in subset.iter().enumerate() {
                for row in 0..n {
                    a[(row, col)] = q.as_slice()[row];
                }
                a[(n, col)] = 1.0;
            }
            let mut b = DVector::zeros(n + 1);
            b.rows_mut(0, n).copy_from(&target);
            b[n] = 1.0;
            let svd = a.clone().svd(true, true);
            let Ok(w) = svd.solve(&b, 1e-12) else {
                return false;
            };
            let residual = (&a * &w - &b).amax();
            residual <= tol && w.iter().all(|&x| x >= -tol)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec(), 1e-12).unwrap()
    }

    #[test]
    fn diamond_membership() {
        let k = ConvexRegion::diamond(1.0 / 3.0).unwrap();
        assert!(k.contains(&[0.5, 0.5], 1e-9).unwrap());
        assert!(!k.contains(&[1.0, 0.0], 1e-9).unwrap());
        assert!(k.contains(&[1.0 / 3.0, 2.0 / 3.0], 1e-9).unwrap());
        assert!(!k.contains(&[0.33, 0.67], 1e-9).unwrap());
    }

    #[test]
    fn full_simplex_membership() {
        let k = ConvexRegion::FullSimplex(3);
        assert!(k.contains(&[0.2, 0.3, 0.5], 1e-9).unwrap());
        assert!(!k.contains(&[-0.1, 0.6, 0.5], 1e-9).unwrap());
        assert!(matches!(
            k.contains(&[0.5, 0.5], 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn diamond_extreme_points() {
        let pts = ConvexRegion::diamond(0.0).unwrap().extreme_points();
        assert_eq!(pts, vec![pv(&[0.0, 1.0]), pv(&[1.0, 0.0])]);
        let center = ConvexRegion::diamond(0.5).unwrap().extreme_points();
        assert_eq!(center, vec![pv(&[0.5, 0.5])]);
        assert_eq!(
            ConvexRegion::FullSimplex(2).extreme_points(),
            vec![pv(&[1.0, 0.0]), pv(&[0.0, 1.0])]
        );
    }

    #[test]
    fn diamond_eps_out_of_range() {
        assert!(ConvexRegion::diamond(0.6).is_err());
        assert!(ConvexRegion::diamond(-0.1).is_err());
    }

    #[test]
    fn hull_membership_triangle() {
        let k = ConvexRegion::hull(vec![
            pv(&[0.6, 0.2, 0.2]),
            pv(&[0.2, 0.6, 0.2]),
            pv(&[0.2, 0.2, 0.6]),
        ])
        .unwrap();
        assert!(k
            .contains(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 1e-9)
            .unwrap());
        assert!(k.contains(&[0.4, 0.4, 0.2], 1e-9).unwrap());
        assert!(!k.contains(&[0.8, 0.1, 0.1], 1e-9).unwrap());
        assert!(!k.contains(&[0.1, 0.45, 0.45], 1e-9).unwrap());
    }

    #[test]
    fn hull_with_redundant_points() {
        // Square in the 2-simplex embedded in R^4 plus its center.
        let k = ConvexRegion::hull(vec![
            pv(&[0.5, 0.5, 0.0, 0.0]),
            pv(&[0.0, 0.5, 0.5, 0.0]),
            pv(&[0.0, 0.0, 0.5, 0.5]),
            pv(&[0.5, 0.0, 0.0, 0.5]),
            pv(&[0.25, 0.25, 0.25, 0.25]),
        ])
        .unwrap();
        assert!(k.contains(&[0.25, 0.5, 0.25, 0.0], 1e-9).unwrap());
        assert!(!k.contains(&[1.0, 0.0, 0.0, 0.0], 1e-9).unwrap());
    }

    #[test]
    fn too_many_hull_points() {
        let pts = (0..9).map(|_| ProbVector::uniform(2)).collect();
        assert!(ConvexRegion::hull(pts).is_err());
    }
}
