//! The sup-norm space `(R^n, ||.||_inf)` and its horofunction boundary.
//!
//! Busemann points are parameterized by `u, v : K -> [0, inf]` with
//! `min(min u, min v) = 0` and `max(u_k, v_k) = inf` for every `k`:
//!
//! ```text
//! Phi(g) = max_k (-u_k - g_k)  v  max_k (-v_k + g_k)
//! ```
//!
//! Its Legendre–Fenchel transform on the dual space `(R^n, ||.||_1)` is
//! `Xi(mu) = sum u mu^- + sum v mu^+` on the unit sphere and `+inf` elsewhere.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::ext::ExtReal;
use crate::horo::{Horofunction, Violation};
use crate::{DIVERGENCE_CAP, TOL};

pub fn validate_uv(u: &[ExtReal], v: &[ExtReal], tol: f64) -> Vec<Violation> {
    let mut out = validate_uv_interior(u, v, tol);
    if out.is_empty() {
        for (index, (a, b)) in u.iter().zip(v).enumerate() {
            if a.is_finite() && b.is_finite() {
                out.push(Violation::UvBothFinite { index });
            }
        }
    }
    out
}

fn validate_uv_interior(u: &[ExtReal], v: &[ExtReal], tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if u.is_empty() {
        out.push(Violation::Empty);
        return out;
    }
    if u.len() != v.len() {
        out.push(Violation::DimensionMismatch { expected: u.len(), got: v.len() });
        return out;
    }
    for (index, (a, b)) in u.iter().zip(v).enumerate() {
        if *a < ExtReal::ZERO || *b < ExtReal::ZERO {
            out.push(Violation::UvNegative { index });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let min = finite_min(u.iter().chain(v));
    match min {
        Some(m) if m.abs() <= tol => {}
        other => out.push(Violation::UvInfimumNotZero { min: other }),
    }
    out
}

fn finite_min<'a>(it: impl Iterator<Item = &'a ExtReal>) -> Option<f64> {
    it.filter_map(|e| e.finite()).fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.min(x))))
}

/// A Busemann point (or, via [`SupNormBoundary::interior_limit`], an interior
/// point of the compactification) of the sup-norm space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupNormBoundary {
    u: Vec<ExtReal>,
    v: Vec<ExtReal>,
    #[serde(skip)]
    boundary: bool,
}

impl SupNormBoundary {
    pub fn new(u: Vec<ExtReal>, v: Vec<ExtReal>) -> Result<Self> {
        Self::with_tolerance(u, v, TOL)
    }

    pub fn with_tolerance(u: Vec<ExtReal>, v: Vec<ExtReal>, tol: f64) -> Result<Self> {
        let violations = validate_uv(&u, &v, tol);
        if !violations.is_empty() {
            return Err(Error::InvalidDescriptor(violations));
        }
        Ok(Self::canonical(u, v, true))
    }

    /// Accepts `(u, v)` with `u_k, v_k` both finite somewhere. Such a function is
    /// the transform of a continuous affine function, i.e. it comes from a point
    /// of the space, and is never classified as a boundary point.
    pub fn interior_limit(u: Vec<ExtReal>, v: Vec<ExtReal>) -> Result<Self> {
        let violations = validate_uv_interior(&u, &v, TOL);
        if !violations.is_empty() {
            return Err(Error::InvalidDescriptor(violations));
        }
        let boundary = u.iter().zip(&v).all(|(a, b)| a.is_pos_inf() || b.is_pos_inf());
        Ok(Self::canonical(u, v, boundary))
    }

    fn canonical(u: Vec<ExtReal>, v: Vec<ExtReal>, boundary: bool) -> Self {
        let m = finite_min(u.iter().chain(&v)).unwrap_or(0.0);
        let shift = |e: &ExtReal| match e {
            ExtReal::Finite(x) => ExtReal::Finite((x - m).max(0.0)),
            other => *other,
        };
        Self { u: u.iter().map(shift).collect(), v: v.iter().map(shift).collect(), boundary }
    }

    /// No validation or normalization; for oracles that need functions outside
    /// the normalized class.
    #[doc(hidden)]
    pub fn unchecked(u: Vec<ExtReal>, v: Vec<ExtReal>) -> Self {
        let boundary = u.iter().zip(&v).all(|(a, b)| a.is_pos_inf() || b.is_pos_inf());
        Self { u, v, boundary }
    }

    pub fn from_f64(u: &[f64], v: &[f64]) -> Result<Self> {
        let conv = |w: &[f64]| -> Result<Vec<ExtReal>> {
            w.iter()
                .enumerate()
                .map(|(index, &x)| {
                    if x.is_nan() {
                        Err(Error::InvalidDescriptor(vec![Violation::NotANumber { index }]))
                    } else {
                        Ok(ExtReal::new(x))
                    }
                })
                .collect()
        };
        Self::new(conv(u)?, conv(v)?)
    }

    pub fn u(&self) -> &[ExtReal] {
        &self.u
    }

    pub fn v(&self) -> &[ExtReal] {
        &self.v
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    /// Transform values at the `2n` extreme points of the dual ball, in the
    /// order `-delta_0, ..., -delta_{n-1}, +delta_0, ..., +delta_{n-1}`.
    pub fn vertex_values(&self) -> impl Iterator<Item = ExtReal> + '_ {
        self.u.iter().chain(&self.v).copied()
    }

    /// Smallest `c` with `Xi_1 - c <= Xi_2 <= Xi_1 + c` on the dual ball, if any.
    pub fn bounded_difference(&self, other: &SupNormBoundary) -> Option<f64> {
        if self.u.len() != other.u.len() {
            return None;
        }
        let mut c = 0.0_f64;
        for (a, b) in self.vertex_values().zip(other.vertex_values()) {
            match (a, b) {
                (ExtReal::Finite(x), ExtReal::Finite(y)) => c = c.max((x - y).abs()),
                (ExtReal::PosInf, ExtReal::PosInf) => {}
                _ => return None,
            }
        }
        Some(c)
    }
}

impl Horofunction for SupNormBoundary {
    fn dim(&self) -> usize {
        self.u.len()
    }

    fn value(&self, g: &[f64]) -> f64 {
        let neg = self.u.iter().zip(g).filter_map(|(u, gk)| u.finite().map(|u| -u - gk));
        let pos = self.v.iter().zip(g).filter_map(|(v, gk)| v.finite().map(|v| -v + gk));
        neg.chain(pos).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `Phi(g)` for the descriptor `(u, v)`.
pub fn eval_supnorm_horofn(xi: &SupNormBoundary, g: &[f64]) -> Result<f64> {
    xi.eval_at(g)
}

/// A signed measure on finite `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignedVector {
    entries: Vec<f64>,
}

impl SignedVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(index) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("entry {index} of a signed vector is not finite")));
        }
        Ok(Self { entries })
    }

    /// `sign * delta_k` in dimension `n`.
    pub fn dirac(n: usize, k: usize, sign: f64) -> Self {
        let mut entries = vec![0.0; n];
        entries[k] = sign.signum();
        Self { entries }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn positive_part(&self) -> Vec<f64> {
        self.entries.iter().map(|x| x.max(0.0)).collect()
    }

    pub fn negative_part(&self) -> Vec<f64> {
        self.entries.iter().map(|x| (-x).max(0.0)).collect()
    }

    /// `||mu|| = ||mu^+|| + ||mu^-||`.
    pub fn total_variation(&self) -> f64 {
        self.entries.iter().map(|x| x.abs()).sum()
    }
}

/// `Xi(mu) = sum_k u_k mu^-_k + v_k mu^+_k` when `||mu|| = 1`, `+inf` otherwise.
pub fn eval_dual_functional(xi: &SupNormBoundary, mu: &SignedVector) -> Result<ExtReal> {
    check_dim(xi.dim(), mu.len())?;
    if (mu.total_variation() - 1.0).abs() > TOL {
        return Ok(ExtReal::PosInf);
    }
    let neg = mu.negative_part();
    let pos = mu.positive_part();
    let mut acc = ExtReal::ZERO;
    for k in 0..xi.dim() {
        acc = acc + xi.u[k].mul_measure(ExtReal::Finite(neg[k]));
        acc = acc + xi.v[k].mul_measure(ExtReal::Finite(pos[k]));
    }
    Ok(acc)
}

/// Conjugate values at each dual point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugateTable {
    pub dual_points: Vec<Vec<f64>>,
    pub values: Vec<ExtReal>,
}

/// `f*(y) = max_{x in grid} <y, x> - f(x)` at every dual point.
///
/// Values above [`DIVERGENCE_CAP`] are reported as `+inf`.
pub fn legendre_fenchel<F>(f: F, grid: &[Vec<f64>], dual_points: &[SignedVector]) -> Result<ConjugateTable>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let values: Vec<ExtReal> = grid.iter().map(|x| ExtReal::new(f(x))).collect();
    let duals: Vec<Vec<f64>> = dual_points.iter().map(|d| d.entries.clone()).collect();
    let conj = conjugate_sampled(grid, &values, &duals)?;
    Ok(ConjugateTable { dual_points: duals, values: conj })
}

/// Conjugate of a function given by its values on a grid. `+inf` values are
/// treated as outside the domain.
pub fn conjugate_sampled(grid: &[Vec<f64>], values: &[ExtReal], duals: &[Vec<f64>]) -> Result<Vec<ExtReal>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    check_dim(grid.len(), values.len())?;
    let n = grid[0].len();
    for x in grid.iter().chain(duals) {
        check_dim(n, x.len())?;
    }
    Ok(duals
        .par_iter()
        .map(|y| {
            let mut best = ExtReal::NegInf;
            for (x, fx) in grid.iter().zip(values) {
                let ip: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                best = best.max(ExtReal::Finite(ip) - *fx);
            }
            best.capped(DIVERGENCE_CAP)
        })
        .collect())
}

/// `f**` on `grid`, conjugating through `dual_grid`.
pub fn biconjugate(grid: &[Vec<f64>], values: &[ExtReal], dual_grid: &[Vec<f64>]) -> Result<Vec<ExtReal>> {
    let star = conjugate_sampled(grid, values, dual_grid)?;
    conjugate_sampled(dual_grid, &star, grid)
}

/// All points of `axis^n` in lexicographic order.
pub fn cartesian_grid(axis: &[f64], n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// The `2n` singleton Busemann points, `Phi = -g_k` (from `u = 0` at `k`) for
/// every `k`, then `Phi = g_k` (from `v = 0` at `k`).
pub fn normed_singletons(n: usize) -> Vec<SupNormBoundary> {
    let one_zero = |k: usize| {
        let mut w = vec![ExtReal::PosInf; n];
        w[k] = ExtReal::ZERO;
        w
    };
    let all_inf = vec![ExtReal::PosInf; n];
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        out.push(SupNormBoundary { u: one_zero(k), v: all_inf.clone(), boundary: true });
    }
    for k in 0..n {
        out.push(SupNormBoundary { u: all_inf.clone(), v: one_zero(k), boundary: true });
    }
    out
}

/// Result of [`affinity_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffinityReport {
    pub checked: usize,
    pub max_violation: f64,
    pub worst_index: Option<usize>,
    pub affine_within_tol: bool,
}

/// Measures `||L((1-t)x + t y) - ((1-t) L x + t L y)||_inf` on sampled triples.
pub fn affinity_check<L>(map: L, triples: &[(Vec<f64>, Vec<f64>, f64)], tol: f64) -> Result<AffinityReport>
where
    L: Fn(&[f64]) -> Vec<f64>,
{
    let mut max_violation = 0.0_f64;
    let mut worst_index = None;
    for (i, (x, y, t)) in triples.iter().enumerate() {
        check_dim(x.len(), y.len())?;
        let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| (1.0 - t) * a + t * b).collect();
        let (lm, lx, ly) = (map(&mid), map(x), map(y));
        check_dim(lx.len(), ly.len())?;
        check_dim(lx.len(), lm.len())?;
        let gap = lm
            .iter()
            .zip(lx.iter().zip(&ly))
            .map(|(m, (a, b))| (m - ((1.0 - t) * a + t * b)).abs())
            .fold(0.0_f64, f64::max);
        if gap > max_violation {
            max_violation = gap;
            worst_index = Some(i);
        }
    }
    Ok(AffinityReport { checked: triples.len(), max_violation, worst_index, affine_within_tol: max_violation <= tol })
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn sn(u: &[f64], v: &[f64]) -> SupNormBoundary {
        SupNormBoundary::from_f64(u, v).unwrap()
    }

    #[test]
    fn phi_examples() {
        let xi = sn(&[0.0, INF], &[INF, INF]);
        assert_eq!(eval_supnorm_horofn(&xi, &[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(eval_supnorm_horofn(&xi, &[2.5, -7.0]).unwrap(), -2.5);
        let xi = sn(&[0.0, INF, 3.0], &[INF, 1.0, INF]);
        assert_eq!(eval_supnorm_horofn(&xi, &[0.0; 3]).unwrap(), 0.0);
        // translation by c 1 moves the u-terms down by c and the v-terms up by c
        let g = [0.3, -1.2, 2.0];
        for c in [-2.0, 0.5, 4.0] {
            let gc: Vec<f64> = g.iter().map(|x| x + c).collect();
            let neg = (-0.0 - g[0]).max(-3.0 - g[2]);
            let pos = -1.0 + g[1];
            let expect = (neg - c).max(pos + c);
            assert!((eval_supnorm_horofn(&xi, &gc).unwrap() - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn dual_functional_examples() {
        let xi = sn(&[0.0, INF, 3.0], &[INF, 1.0, INF]);
        let d = |k, s| eval_dual_functional(&xi, &SignedVector::dirac(3, k, s)).unwrap();
        assert_eq!(d(1, 1.0), ExtReal::Finite(1.0));
        assert_eq!(d(2, -1.0), ExtReal::Finite(3.0));
        assert_eq!(d(0, 1.0), ExtReal::PosInf);
        let half = SignedVector::new(vec![0.25, -0.25, 0.0]).unwrap();
        assert_eq!(eval_dual_functional(&xi, &half).unwrap(), ExtReal::PosInf);
        let mix = SignedVector::new(vec![-0.5, 0.5, 0.0]).unwrap();
        assert_eq!(eval_dual_functional(&xi, &mix).unwrap(), ExtReal::Finite(0.5));
    }

    #[test]
    fn validation() {
        assert!(SupNormBoundary::from_f64(&[0.0, 1.0], &[INF, INF]).is_ok());
        let e = SupNormBoundary::from_f64(&[0.0, 1.0], &[INF, 2.0]).unwrap_err();
        assert_eq!(e, Error::InvalidDescriptor(vec![Violation::UvBothFinite { index: 1 }]));
        assert!(SupNormBoundary::from_f64(&[1.0, INF], &[INF, INF]).is_err());
        let interior =
            SupNormBoundary::interior_limit(vec![ExtReal::ZERO, ExtReal::ONE], vec![ExtReal::PosInf, ExtReal::ONE])
                .unwrap();
        assert!(!interior.is_boundary());
    }

    #[test]
    fn singletons() {
        assert_eq!(normed_singletons(1).len(), 2);
        let s = normed_singletons(3);
        assert_eq!(s.len(), 6);
        for xi in &s {
            let d = Descriptor::SupNorm { u: xi.u().to_vec(), v: xi.v().to_vec() };
            assert!(crate::horo::validate(&d).is_empty());
        }
        let g = [0.5, -2.0, 1.5];
        assert_eq!(eval_supnorm_horofn(&s[1], &g).unwrap(), 2.0);
        assert_eq!(eval_supnorm_horofn(&s[4], &g).unwrap(), -2.0);
    }

    use crate::horo::Descriptor;

    #[test]
    fn conjugate_of_zero_and_norm() {
        let axis: Vec<f64> = (-10..=10).map(|i| i as f64 / 10.0).collect();
        let grid = cartesian_grid(&axis, 2);
        let t = legendre_fenchel(|_| 0.0, &grid, &[SignedVector::new(vec![0.0, 0.0]).unwrap()]).unwrap();
        assert_eq!(t.values, vec![ExtReal::ZERO]);

        // f = ||x||_inf: f* = 0 on the l1 ball, grows like (||y||_1 - 1) R outside
        let norm = |x: &[f64]| crate::metrics::sup_norm(x);
        for r in [1.0, 10.0, 100.0] {
            let axis: Vec<f64> = (-10..=10).map(|i| r * i as f64 / 10.0).collect();
            let grid = cartesian_grid(&axis, 2);
            let inside = SignedVector::new(vec![0.5, -0.3]).unwrap();
            let outside = SignedVector::new(vec![1.0, 1.0]).unwrap();
            let t = legendre_fenchel(norm, &grid, &[inside, outside]).unwrap();
            assert!(t.values[0].approx_eq(ExtReal::ZERO, 1e-12));
            assert!(t.values[1].approx_eq(ExtReal::Finite(r), 1e-9));
        }
    }

    #[test]
    fn empty_grid_is_an_error() {
        assert_eq!(conjugate_sampled(&[], &[], &[vec![0.0]]), Err(Error::EmptyGrid));
    }

    #[test]
    fn affinity_reports() {
        let triples: Vec<(Vec<f64>, Vec<f64>, f64)> =
            vec![(vec![0.0, 1.0], vec![2.0, -1.0], 0.3), (vec![5.0, 1.0], vec![-2.0, 4.0], 0.5)];
        let id = affinity_check(|x| x.to_vec(), &triples, 1e-12).unwrap();
        assert_eq!(id.max_violation, 0.0);
        let perm = affinity_check(|x| vec![x[1], x[0]], &triples, 1e-12).unwrap();
        assert!(perm.affine_within_tol);
        let bent = affinity_check(|x| vec![x[0] + x[1].abs(), x[1]], &triples, 1e-12).unwrap();
        assert!(!bent.affine_within_tol);
        assert!(bent.max_violation > 0.5);
    }

    #[test]
    fn bounded_difference_matches_pattern() {
        let a = sn(&[0.0, INF], &[INF, 2.0]);
        let b = sn(&[1.0, INF], &[INF, 0.0]);
        assert_eq!(a.bounded_difference(&b), Some(2.0));
        let c = sn(&[0.0, INF], &[INF, INF]);
        assert_eq!(a.bounded_difference(&c), None);
    }
}
