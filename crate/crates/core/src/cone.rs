//! Index sets, cone points, polyhedral cones and the gauge `M(x/y)`.

use std::collections::HashSet;

use minilp::{ComparisonOp, OptimizationDirection, Problem};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::TOL;

/// The finite set `K` the cone lives over. Iteration order is the label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct IndexSet {
    labels: Vec<String>,
}

impl IndexSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidIndexSet("an index set needs at least one label".into()));
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidIndexSet(format!("duplicate label {l:?}")));
            }
        }
        Ok(Self { labels })
    }

    /// Labels `k0, k1, ..., k{n-1}`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("k{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl TryFrom<Vec<String>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<String> {
    fn from(k: IndexSet) -> Self {
        k.labels
    }
}

/// A point of the open positive orthant: every coordinate finite and `> 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConePoint {
    coords: Vec<f64>,
}

impl ConePoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidIndexSet("a cone point needs at least one coordinate".into()));
        }
        for (index, &value) in coords.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NotPositive { index, value });
            }
        }
        Ok(Self { coords })
    }

    /// The basepoint `b = 1` in dimension `n`.
    pub fn ones(n: usize) -> Self {
        assert!(n >= 1);
        Self { coords: vec![1.0; n] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `alpha * x` for `alpha > 0`.
    pub fn scale(&self, alpha: f64) -> Result<Self> {
        Self::new(self.coords.iter().map(|c| c * alpha).collect())
    }
}

impl<'de> Deserialize<'de> for ConePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coords = Vec::<f64>::deserialize(d)?;
        ConePoint::new(coords).map_err(serde::de::Error::custom)
    }
}

/// The all-ones basepoint of `C+(K)`.
pub fn basepoint(k: &IndexSet) -> ConePoint {
    ConePoint::ones(k.len())
}

/// `M(x/y) = inf{ l > 0 : x <= l y } = max_k x_k / y_k`.
pub fn gauge(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(gauge_raw(x.coords(), y.coords()).0)
}

/// Gauge together with the first index attaining the maximum.
pub fn gauge_argmax(x: &ConePoint, y: &ConePoint) -> Result<(f64, usize)> {
    check_dim(x.len(), y.len())?;
    Ok(gauge_raw(x.coords(), y.coords()))
}

pub(crate) fn gauge_raw(x: &[f64], y: &[f64]) -> (f64, usize) {
    let mut best = x[0] / y[0];
    let mut arg = 0;
    for (k, (a, b)) in x.iter().zip(y).enumerate().skip(1) {
        let r = a / b;
        if r > best {
            best = r;
            arg = k;
        }
    }
    (best, arg)
}

/// A cone `{x : (A x)_i > 0 for all i}` given by its dual generators (rows of `A`).
///
/// The orthant is `A = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralCone {
    rows: Vec<Vec<f64>>,
    index_set: IndexSet,
    witness: Vec<f64>,
}

impl PolyhedralCone {
    /// Builds the cone, finding a strictly feasible point with a small LP.
    pub fn new(rows: Vec<Vec<f64>>, index_set: IndexSet) -> Result<Self> {
        Self::check_rows(&rows, &index_set)?;
        let witness = strictly_feasible_point(&rows, index_set.len())?;
        Ok(Self { rows, index_set, witness })
    }

    /// Builds the cone from a user-supplied interior point.
    pub fn with_witness(rows: Vec<Vec<f64>>, index_set: IndexSet, witness: Vec<f64>) -> Result<Self> {
        Self::check_rows(&rows, &index_set)?;
        check_dim(index_set.len(), witness.len())?;
        let cone = Self { rows, index_set, witness };
        cone.apply_interior(&cone.witness)?;
        Ok(cone)
    }

    /// The positive orthant over `k`.
    pub fn orthant(k: IndexSet) -> Self {
        let n = k.len();
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        Self { rows, index_set: k, witness: vec![1.0; n] }
    }

    fn check_rows(rows: &[Vec<f64>], k: &IndexSet) -> Result<()> {
        let n = k.len();
        if rows.len() < n {
            return Err(Error::InvalidCone(format!("need at least {n} dual generators, got {}", rows.len())));
        }
        for (i, r) in rows.iter().enumerate() {
            check_dim(n, r.len())?;
            if r.iter().any(|a| !a.is_finite()) {
                return Err(Error::InvalidCone(format!("row {i} has a non-finite entry")));
            }
            if r.iter().all(|&a| a == 0.0) {
                return Err(Error::InvalidCone(format!("row {i} is zero")));
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index_set
    }

    pub fn dim(&self) -> usize {
        self.index_set.len()
    }

    /// A point with `A x > 0`.
    pub fn witness(&self) -> &[f64] {
        &self.witness
    }

    /// `A x`, checking that every entry is positive.
    pub fn apply_interior(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        self.rows
            .iter()
            .enumerate()
            .map(|(row, r)| {
                let value: f64 = r.iter().zip(x).map(|(a, b)| a * b).sum();
                if value > 0.0 && value.is_finite() {
                    Ok(value)
                } else {
                    Err(Error::NotInterior { row, value })
                }
            })
            .collect()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.apply_interior(x).is_ok()
    }
}

/// Maximizes `t` subject to `A x >= t 1`, `-1 <= x <= 1`, `t <= 1`.
fn strictly_feasible_point(rows: &[Vec<f64>], n: usize) -> Result<Vec<f64>> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (-1.0, 1.0))).collect();
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    for r in rows {
        let mut expr: Vec<_> = xs.iter().zip(r).map(|(&v, &a)| (v, a)).collect();
        expr.push((t, -1.0));
        lp.add_constraint(&expr[..], ComparisonOp::Ge, 0.0);
    }
    let sol = lp.solve().map_err(|e| Error::InvalidCone(format!("feasibility LP failed: {e}")))?;
    if sol.objective() <= TOL {
        return Err(Error::InvalidCone("the cone has empty interior".into()));
    }
    Ok(xs.iter().map(|&v| sol[v]).collect())
}

/// `max_i (A x)_i / (A y)_i`, the gauge of the cone described by `A`.
pub fn gauge_polyhedral(cone: &PolyhedralCone, x: &[f64], y: &[f64]) -> Result<f64> {
    let ax = cone.apply_interior(x)?;
    let ay = cone.apply_interior(y)?;
    Ok(gauge_raw(&ax, &ay).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[f64]) -> ConePoint {
        ConePoint::new(v.to_vec()).unwrap()
    }

    // smallest grid value l with x <= l y
    fn gauge_by_scan(x: &[f64], y: &[f64]) -> f64 {
        (1..=100_000).map(|i| i as f64 * 1e-4).find(|l| x.iter().zip(y).all(|(a, b)| *a <= l * b + 1e-15)).unwrap()
    }

    #[test]
    fn gauge_examples() {
        let x = p(&[0.3, 7.0, 2.0]);
        assert_eq!(gauge(&x, &x).unwrap(), 1.0);
        assert_eq!(gauge(&p(&[2.0, 1.0]), &p(&[1.0, 1.0])).unwrap(), 2.0);
        let g = gauge(&p(&[1.0, 4.0]), &p(&[2.0, 2.0])).unwrap();
        assert!((g - gauge_by_scan(&[1.0, 4.0], &[2.0, 2.0])).abs() < 1e-4);
        assert_eq!(g, 2.0);
    }

    #[test]
    fn gauge_dimension_mismatch() {
        assert_eq!(gauge(&p(&[1.0]), &p(&[1.0, 2.0])), Err(Error::DimensionMismatch { expected: 1, got: 2 }));
    }

    #[test]
    fn argmax_ties_go_to_first_index() {
        let (g, k) = gauge_argmax(&p(&[2.0, 4.0, 4.0]), &p(&[2.0, 2.0, 2.0])).unwrap();
        assert_eq!((g, k), (2.0, 1));
    }

    #[test]
    fn cone_point_rejects_nonpositive() {
        assert!(matches!(ConePoint::new(vec![1.0, 0.0]), Err(Error::NotPositive { index: 1, .. })));
        assert!(ConePoint::new(vec![f64::INFINITY]).is_err());
        assert!(ConePoint::new(vec![]).is_err());
    }

    #[test]
    fn basepoint_is_ones() {
        let k = IndexSet::with_size(3).unwrap();
        assert_eq!(basepoint(&k).coords(), &[1.0, 1.0, 1.0]);
        let b1 = basepoint(&IndexSet::with_size(1).unwrap());
        assert_eq!(b1.coords(), &[1.0]);
        assert_eq!(gauge(&b1, &b1).unwrap(), 1.0);
    }

    #[test]
    fn index_set_rejects_duplicates_and_empty() {
        assert!(IndexSet::new(vec![]).is_err());
        assert!(IndexSet::new(vec!["a".into(), "a".into()]).is_err());
        let k = IndexSet::new(vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(k.position("b"), Some(1));
    }

    #[test]
    fn polyhedral_orthant_matches_gauge() {
        let k = IndexSet::with_size(3).unwrap();
        let cone = PolyhedralCone::orthant(k.clone());
        let x = [1.0, 5.0, 0.2];
        let y = [3.0, 1.0, 0.7];
        let direct = gauge(&p(&x), &p(&y)).unwrap();
        assert_eq!(gauge_polyhedral(&cone, &x, &y).unwrap(), direct);
        let solved = PolyhedralCone::new(cone.rows().to_vec(), k).unwrap();
        assert!(solved.contains(solved.witness()));
        assert_eq!(gauge_polyhedral(&solved, &x, &y).unwrap(), direct);
    }

    #[test]
    fn polyhedral_two_dimensional_example() {
        let k = IndexSet::with_size(2).unwrap();
        let cone = PolyhedralCone::new(vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]], k).unwrap();
        let x = [1.0, 2.0];
        let y = [2.0, 1.0];
        let g = gauge_polyhedral(&cone, &x, &y).unwrap();
        assert_eq!(g, 2.0);
        // inf{l : l A y - A x >= 0} by a linear scan
        let ax = cone.apply_interior(&x).unwrap();
        let ay = cone.apply_interior(&y).unwrap();
        let scan = (1..=40_000)
            .map(|i| i as f64 * 1e-4)
            .find(|l| ax.iter().zip(&ay).all(|(a, b)| l * b - a >= -1e-12))
            .unwrap();
        assert!((scan - g).abs() < 1e-4);
        assert_eq!(gauge_polyhedral(&cone, &x, &x).unwrap(), 1.0);
    }

    #[test]
    fn polyhedral_rejects_bad_input() {
        let k = IndexSet::with_size(2).unwrap();
        assert!(PolyhedralCone::new(vec![vec![1.0, 0.0], vec![0.0, 0.0]], k.clone()).is_err());
        // x1 > 0 and -x1 > 0 has no solution
        let r = PolyhedralCone::new(vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0]], k.clone());
        assert!(matches!(r, Err(Error::InvalidCone(_))));
        assert!(PolyhedralCone::new(vec![vec![1.0, 0.0]], k.clone()).is_err());
        let cone = PolyhedralCone::orthant(k);
        assert!(matches!(gauge_polyhedral(&cone, &[1.0, -1.0], &[1.0, 1.0]), Err(Error::NotInterior { row: 1, .. })));
    }

    #[test]
    fn polyhedral_witness_is_checked() {
        let k = IndexSet::with_size(2).unwrap();
        let rows = vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(PolyhedralCone::with_witness(rows.clone(), k.clone(), vec![1.0, 1.0]).is_ok());
        assert!(PolyhedralCone::with_witness(rows, k, vec![-1.0, 1.0]).is_err());
    }
}
