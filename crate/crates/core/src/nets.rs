//! Finite nets: almost-geodesic checks, approach sequences toward boundary
//! points, net-based detour costs and the discretized non-Busemann example.
//!
//! A net is almost geodesic when, for `burn_in <= i <= j`,
//!
//! ```text
//! d(b, z_j) >= d(b, z_i) + d(z_i, z_j) - eps
//! ```
//!
//! and the detour cost of its limit `xi` to `eta` is `lim d(b, z_j) + eta(z_j)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::ext::ExtReal;
use crate::horo::{
    compatible_profiles, AnyBoundary, FunkBoundary, HilbertBoundary, Horofunction, RevFunkBoundary, ThompsonBoundary,
};
use crate::metrics::{funk_raw, hilbert_raw, reverse_funk_raw, sup_distance_raw, thompson_raw};
use crate::normed::SupNormBoundary;
use crate::{DIVERGENCE_CAP, TOL};

/// Which of the five distances a net lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricTag {
    Funk,
    #[serde(rename = "revfunk")]
    ReverseFunk,
    Hilbert,
    Thompson,
    #[serde(rename = "supnorm")]
    SupNorm,
}

impl MetricTag {
    pub const ALL: [MetricTag; 5] =
        [MetricTag::Funk, MetricTag::ReverseFunk, MetricTag::Hilbert, MetricTag::Thompson, MetricTag::SupNorm];

    pub fn name(self) -> &'static str {
        match self {
            MetricTag::Funk => "funk",
            MetricTag::ReverseFunk => "revfunk",
            MetricTag::Hilbert => "hilbert",
            MetricTag::Thompson => "thompson",
            MetricTag::SupNorm => "supnorm",
        }
    }

    /// Distance between raw coordinate vectors (positive for cone metrics).
    pub fn distance(self, x: &[f64], y: &[f64]) -> f64 {
        match self {
            MetricTag::Funk => funk_raw(x, y),
            MetricTag::ReverseFunk => reverse_funk_raw(x, y),
            MetricTag::Hilbert => hilbert_raw(x, y),
            MetricTag::Thompson => thompson_raw(x, y),
            MetricTag::SupNorm => sup_distance_raw(x, y),
        }
    }

    /// `1` for the cone metrics, `0` for the sup-norm.
    pub fn basepoint(self, n: usize) -> Vec<f64> {
        match self {
            MetricTag::SupNorm => vec![0.0; n],
            _ => vec![1.0; n],
        }
    }

    pub fn is_cone(self) -> bool {
        self != MetricTag::SupNorm
    }
}

/// A finite prefix `z_1, ..., z_m` of a net, with the index from which
/// almost-geodesic inequalities are required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteNet {
    points: Vec<Vec<f64>>,
    metric: MetricTag,
    #[serde(default)]
    burn_in: usize,
}

impl FiniteNet {
    pub fn new(points: Vec<Vec<f64>>, metric: MetricTag) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::InvalidArgument("a net needs at least one point".into()))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidArgument("net points must be non-empty".into()));
        }
        for p in &points {
            check_dim(n, p.len())?;
            for (index, &v) in p.iter().enumerate() {
                if !v.is_finite() || (metric.is_cone() && v <= 0.0) {
                    return Err(Error::NotPositive { index, value: v });
                }
            }
        }
        Ok(Self { points, metric, burn_in: 0 })
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    /// Validation for nets read from documents.
    pub fn validated(self) -> Result<Self> {
        let burn_in = self.burn_in;
        Ok(Self::new(self.points, self.metric)?.with_burn_in(burn_in))
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn metric(&self) -> MetricTag {
        self.metric
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    /// `d(x, z_j) - d(b, z_j)`.
    pub fn horofunction_at(&self, j: usize, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        let z = self.points.get(j).ok_or_else(|| Error::InvalidArgument(format!("net index {j} out of range")))?;
        let b = self.metric.basepoint(self.dim());
        Ok(self.metric.distance(x, z) - self.metric.distance(&b, z))
    }
}

/// Outcome of [`check_almost_geodesic`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicReport {
    pub metric: MetricTag,
    pub epsilon: f64,
    pub burn_in: usize,
    pub pairs_checked: u64,
    pub holds: bool,
    /// Largest `d(b, z_i) + d(z_i, z_j) - d(b, z_j)` over checked pairs.
    pub worst_defect: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// First pair, in lexicographic order, breaking the inequality.
    pub violating_pair: Option<(usize, usize)>,
}

/// Checks every pair `burn_in <= i <= j` (0-based indices).
pub fn check_almost_geodesic(net: &FiniteNet, eps: f64) -> Result<GeodesicReport> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidArgument(format!("epsilon must be positive (got {eps})")));
    }
    let metric = net.metric;
    let b = metric.basepoint(net.dim());
    let from_b: Vec<f64> = net.points.par_iter().map(|z| metric.distance(&b, z)).collect();
    let start = net.burn_in.min(net.len());
    let rows: Vec<(f64, usize, Option<usize>)> = (start..net.len())
        .into_par_iter()
        .map(|i| {
            let mut worst = (f64::NEG_INFINITY, i);
            let mut first_bad = None;
            for j in i..net.len() {
                let defect = from_b[i] + metric.distance(&net.points[i], &net.points[j]) - from_b[j];
                if defect > worst.0 {
                    worst = (defect, j);
                }
                if first_bad.is_none() && defect > eps + TOL {
                    first_bad = Some(j);
                }
            }
            (worst.0, worst.1, first_bad)
        })
        .collect();
    let mut worst_defect = f64::NEG_INFINITY;
    let mut worst_pair = None;
    let mut violating_pair = None;
    for (k, (d, j, bad)) in rows.iter().enumerate() {
        let i = start + k;
        if *d > worst_defect {
            worst_defect = *d;
            worst_pair = Some((i, *j));
        }
        if violating_pair.is_none() {
            violating_pair = bad.map(|j| (i, j));
        }
    }
    let m = (net.len() - start) as u64;
    Ok(GeodesicReport {
        metric,
        epsilon: eps,
        burn_in: net.burn_in,
        pairs_checked: m * (m + 1) / 2,
        holds: violating_pair.is_none(),
        worst_defect: if worst_pair.is_some() { worst_defect } else { 0.0 },
        worst_pair,
        violating_pair,
    })
}

pub fn is_almost_geodesic(net: &FiniteNet, eps: f64) -> Result<bool> {
    Ok(check_almost_geodesic(net, eps)?.holds)
}

fn check_steps(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::InvalidArgument("a net needs at least one step".into()))
    } else {
        Ok(())
    }
}

fn recip(j: usize) -> f64 {
    1.0 / j as f64
}

fn truncate(f: &[ExtReal], j: usize) -> impl Iterator<Item = f64> + '_ {
    f.iter().map(move |v| v.to_f64().min(j as f64))
}

/// `z_j = g + (1/j) 1`, `j = 1..m`, in the reverse-Funk metric.
pub fn approach_revfunk(xi: &RevFunkBoundary, m: usize) -> Result<FiniteNet> {
    check_steps(m)?;
    let points = (1..=m).map(|j| xi.g().iter().map(|g| g + recip(j)).collect()).collect();
    FiniteNet::new(points, MetricTag::ReverseFunk)
}

/// `z_j = min(f, j)`, `j = 1..m`, in the Funk metric.
pub fn approach_funk(xi: &FunkBoundary, m: usize) -> Result<FiniteNet> {
    check_steps(m)?;
    let points = (1..=m).map(|j| truncate(xi.f(), j).collect()).collect();
    FiniteNet::new(points, MetricTag::Funk)
}

fn hilbert_point(g: &[f64], f: &[ExtReal], j: usize) -> Vec<f64> {
    let jj = (j * j) as f64;
    g.iter().zip(truncate(f, j)).map(|(g, f)| jj * g + f).collect()
}

/// `z_j = j^2 g + min(f, j)`, `j = 1..m`, in the Hilbert metric.
///
/// On `supp g` (where `f = inf`) the points grow like `j^2 g`, elsewhere they
/// follow the truncation of `f`, so the sequence is a geodesic in both the Funk
/// and the reverse-Funk metric.
pub fn approach_hilbert(xi: &HilbertBoundary, m: usize) -> Result<FiniteNet> {
    check_steps(m)?;
    let points = (1..=m).map(|j| hilbert_point(xi.rev().g(), xi.fun().f(), j)).collect();
    FiniteNet::new(points, MetricTag::Hilbert)
}

/// Rescales `w` so that `log max z + log min z = c`.
fn with_balance(w: Vec<f64>, c: f64) -> Vec<f64> {
    let max = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let t = (0.5 * (c - max.ln() - min.ln())).exp();
    w.into_iter().map(|v| t * v).collect()
}

/// A Thompson net for each variant:
///
/// - `RevInterior(x)`: `z_j = j x`; `FunkInterior(x)`: `z_j = x / j`;
/// - `Mixed(g, f, c)`: the Hilbert net rescaled so `log max z + log min z = c`;
/// - `Rev(g)`, `Funk(f)`: the one-sided nets with the balance `c_j = +-2 log(1 + j)`.
pub fn approach_thompson(xi: &ThompsonBoundary, m: usize) -> Result<FiniteNet> {
    check_steps(m)?;
    let balance = |j: usize| 2.0 * (1.0 + j as f64).ln();
    let points = (1..=m)
        .map(|j| match xi {
            ThompsonBoundary::RevInterior { z } => z.coords().iter().map(|v| v * j as f64).collect(),
            ThompsonBoundary::FunkInterior { z } => z.coords().iter().map(|v| v / j as f64).collect(),
            ThompsonBoundary::Mixed { rev, fun, c } => with_balance(hilbert_point(rev.g(), fun.f(), j), *c),
            ThompsonBoundary::Rev { rev } => with_balance(rev.g().iter().map(|g| g + recip(j)).collect(), balance(j)),
            ThompsonBoundary::Funk { fun } => with_balance(truncate(fun.f(), j).collect(), -balance(j)),
        })
        .collect();
    FiniteNet::new(points, MetricTag::Thompson)
}

/// The approach net of any boundary point, in its own geometry.
pub fn approach(xi: &AnyBoundary, m: usize) -> Result<FiniteNet> {
    match xi {
        AnyBoundary::RevFunk(b) => approach_revfunk(b, m),
        AnyBoundary::Funk(b) => approach_funk(b, m),
        AnyBoundary::Hilbert(b) => approach_hilbert(b, m),
        AnyBoundary::Thompson(b) => approach_thompson(b, m),
        AnyBoundary::SupNorm(b) => approach_supnorm(b, m),
    }
}

/// `z_{j,k} = j - u_k` where `u_k < inf`, `-(j - v_k)` where `v_k < inf`, and
/// `0` elsewhere; a geodesic ray once `j` exceeds every finite entry.
pub fn approach_supnorm(xi: &SupNormBoundary, m: usize) -> Result<FiniteNet> {
    check_steps(m)?;
    let points = (1..=m)
        .map(|j| {
            let j = j as f64;
            xi.u()
                .iter()
                .zip(xi.v())
                .map(|(u, v)| match (u.finite(), v.finite()) {
                    (Some(u), _) => j - u,
                    (None, Some(v)) => -(j - v),
                    (None, None) => 0.0,
                })
                .collect()
        })
        .collect();
    let burn_in = xi.vertex_values().filter_map(|e| e.finite()).fold(0.0_f64, f64::max).ceil() as usize;
    Ok(FiniteNet::new(points, MetricTag::SupNorm)?.with_burn_in(burn_in.min(m - 1)))
}

/// Outcome of [`detour_cost_along_net`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetDetour {
    /// The last value, or `+inf` when the sequence was found to diverge.
    pub value: ExtReal,
    /// `d(b, z_j) + eta(z_j)` at `j = m / 100, m / 10, m` (1-based, at least 1).
    pub trace: Vec<(usize, f64)>,
    pub diverged: bool,
}

/// `d(b, z_m) + eta(z_m)`, with growth over the last two decades of the net
/// taken as divergence: the increment from `m/10` to `m` exceeds `0.1` and at
/// least half the increment from `m/100` to `m/10`.
pub fn detour_cost_along_net<E: Horofunction + ?Sized>(net: &FiniteNet, eta: &E) -> Result<NetDetour> {
    check_dim(net.dim(), eta.dim())?;
    let m = net.len();
    let b = net.metric.basepoint(net.dim());
    let at = |j: usize| {
        let z = &net.points[j - 1];
        net.metric.distance(&b, z) + eta.value(z)
    };
    let idx = [(m / 100).max(1), (m / 10).max(1), m];
    let trace: Vec<(usize, f64)> = idx.iter().map(|&j| (j, at(j))).collect();
    let (v0, v1, v2) = (trace[0].1, trace[1].1, trace[2].1);
    let (d1, d2) = (v1 - v0, v2 - v1);
    let diverged = v2.is_nan() || v2 > DIVERGENCE_CAP || (m >= 100 && d2 > 0.1 && d2 >= 0.5 * d1);
    let value = if diverged { ExtReal::PosInf } else { ExtReal::new(v2) };
    Ok(NetDetour { value, trace, diverged })
}

/// Outcome of [`counterexample_harness`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub steps: usize,
    pub grid: Vec<f64>,
    pub g: Vec<f64>,
    pub f: Vec<f64>,
    pub compatible: bool,
    pub revfunk: GeodesicReport,
    pub funk: GeodesicReport,
    pub hilbert_limit: LimitReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitReport {
    pub samples: usize,
    /// Spread of `d_H(x, h_j) - d_H(b, h_j)` over the last half of the net,
    /// maximized over sample points.
    pub tail_oscillation: f64,
    pub exists: bool,
    pub values: Vec<f64>,
}

/// Parameters of [`counterexample_harness`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CounterexampleParams {
    pub n: usize,
    pub steps: usize,
    pub burn_in: usize,
    pub eps_revfunk: f64,
    pub eps_funk: f64,
}

impl Default for CounterexampleParams {
    fn default() -> Self {
        Self { n: 8, steps: 100, burn_in: 10, eps_revfunk: 1e-6, eps_funk: 1e-3 }
    }
}

/// The profiles `g = 1/2` on `[0, 1/2)`, `1` on `[1/2, 1]` and `f = 1` on
/// `[0, 1/2]`, `2` on `(1/2, 1]`, sampled on `t_i = i / (n - 1)`, with the net
/// `h_j = max(g, ramp_j)` decreasing to `g`, where `ramp_j` is `1/2` up to
/// `1/2 - 1/j` and rises linearly to `1` at `1/2`.
pub fn counterexample_harness(p: &CounterexampleParams) -> Result<CounterexampleReport> {
    if p.n < 2 {
        return Err(Error::InvalidArgument(format!("grid size must be at least 2 (got {})", p.n)));
    }
    check_steps(p.steps)?;
    let n = p.n;
    let grid: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let g: Vec<f64> = grid.iter().map(|&t| if t < 0.5 { 0.5 } else { 1.0 }).collect();
    let f: Vec<f64> = grid.iter().map(|&t| if t <= 0.5 { 1.0 } else { 2.0 }).collect();
    let f_ext: Vec<ExtReal> = f.iter().map(|&v| ExtReal::Finite(v)).collect();
    let compatible = compatible_profiles(&g, &f_ext)?;

    let ramp = |j: usize, t: f64| {
        let w = 1.0 / j as f64;
        0.5 + 0.5 * ((t - (0.5 - w)) / w).clamp(0.0, 1.0)
    };
    let points: Vec<Vec<f64>> =
        (1..=p.steps).map(|j| grid.iter().zip(&g).map(|(&t, &gk)| gk.max(ramp(j, t))).collect()).collect();
    let rev_net = FiniteNet::new(points.clone(), MetricTag::ReverseFunk)?.with_burn_in(p.burn_in);
    let funk_net = FiniteNet::new(points.clone(), MetricTag::Funk)?.with_burn_in(p.burn_in);
    let hil_net = FiniteNet::new(points, MetricTag::Hilbert)?;

    let samples = counterexample_samples(n);
    let tail = p.steps / 2;
    let mut tail_oscillation = 0.0_f64;
    let mut values = Vec::with_capacity(samples.len());
    for x in &samples {
        let vals: Vec<f64> = (tail..p.steps).map(|j| hil_net.horofunction_at(j, x)).collect::<Result<_>>()?;
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        tail_oscillation = tail_oscillation.max(hi - lo);
        values.push(*vals.last().unwrap());
    }
    Ok(CounterexampleReport {
        n,
        steps: p.steps,
        grid,
        g,
        f,
        compatible,
        revfunk: check_almost_geodesic(&rev_net, p.eps_revfunk)?,
        funk: check_almost_geodesic(&funk_net, p.eps_funk)?,
        hilbert_limit: LimitReport {
            samples: samples.len(),
            tail_oscillation,
            exists: tail_oscillation <= TOL,
            values,
        },
    })
}

/// The basepoint, each coordinate bumped to 2 in turn, and a fixed ramp.
fn counterexample_samples(n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![1.0; n]];
    for k in 0..n {
        let mut x = vec![1.0; n];
        x[k] = 2.0;
        out.push(x);
    }
    out.push((0..n).map(|i| 1.0 + i as f64).collect());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::Busemann;
    use crate::horo::eval_revfunk;
    use crate::ConePoint;

    const INF: f64 = f64::INFINITY;
    const LN2: f64 = std::f64::consts::LN_2;

    fn g(v: &[f64]) -> RevFunkBoundary {
        RevFunkBoundary::new(v.to_vec()).unwrap()
    }

    fn f(v: &[f64]) -> FunkBoundary {
        FunkBoundary::from_f64(v).unwrap()
    }

    #[test]
    fn constant_net_is_geodesic() {
        for metric in MetricTag::ALL {
            let net = FiniteNet::new(vec![metric.basepoint(3); 5], metric).unwrap();
            let r = check_almost_geodesic(&net, 1e-12).unwrap();
            assert!(r.holds);
            assert_eq!(r.worst_defect, 0.0);
        }
    }

    #[test]
    fn thompson_log_linear_ray() {
        let w = [0.3, -1.2, 0.7];
        let points = (0..200).map(|m| w.iter().map(|x| (m as f64 * 0.05 * x).exp()).collect()).collect();
        let net = FiniteNet::new(points, MetricTag::Thompson).unwrap();
        assert!(is_almost_geodesic(&net, 1e-12).unwrap());
    }

    #[test]
    fn reversed_net_is_not_geodesic() {
        let xi = g(&[1.0, 0.0]);
        let mut points = approach_revfunk(&xi, 50).unwrap().points().to_vec();
        points.reverse();
        let net = FiniteNet::new(points, MetricTag::ReverseFunk).unwrap();
        let r = check_almost_geodesic(&net, 1e-3).unwrap();
        assert!(!r.holds);
        assert!(r.violating_pair.is_some());
    }

    #[test]
    fn revfunk_net_converges() {
        let xi = g(&[1.0, 0.0]);
        let net = approach_revfunk(&xi, 1000).unwrap();
        let x = [2.0, 1.0];
        let last = net.horofunction_at(999, &x).unwrap();
        // the gap shrinks like 1/m
        assert!((last + LN2).abs() < 2e-3);
        for j in [0, 10, 999] {
            assert!(net.horofunction_at(j, &[1.0, 1.0]).unwrap().abs() < 1e-15);
        }
        assert!(is_almost_geodesic(&net.clone().with_burn_in(500), 1e-6).unwrap());
        let expect = eval_revfunk(&xi, &ConePoint::new(x.to_vec()).unwrap()).unwrap();
        assert!((last - expect).abs() < 2e-3);
    }

    #[test]
    fn funk_net_converges() {
        let xi = f(&[1.0, INF]);
        let net = approach_funk(&xi, 1000).unwrap();
        let last = net.horofunction_at(999, &[2.0, 1.0]).unwrap();
        assert!((last - LN2).abs() < 2e-3);
        assert!(is_almost_geodesic(&net.with_burn_in(500), 1e-6).unwrap());
    }

    #[test]
    fn hilbert_net_is_geodesic_in_both_halves() {
        let xi = HilbertBoundary::new(g(&[1.0, 0.0, 0.0]), f(&[INF, 1.0, 3.0])).unwrap();
        let net = approach_hilbert(&xi, 400).unwrap();
        assert!(is_almost_geodesic(&net, 1e-9).unwrap());
        for metric in [MetricTag::Funk, MetricTag::ReverseFunk] {
            let other = FiniteNet::new(net.points().to_vec(), metric).unwrap();
            assert!(is_almost_geodesic(&other, 1e-9).unwrap());
        }
        let x = [0.5, 2.0, 4.0];
        let gap = (net.horofunction_at(399, &x).unwrap() - xi.value(&x)).abs();
        assert!(gap < 1e-2);
    }

    #[test]
    fn thompson_nets_reach_their_limits() {
        let x = ConePoint::new(vec![2.0, 0.5, 1.0]).unwrap();
        let gr = g(&[1.0, 0.0, 0.0]);
        let ff = f(&[INF, 1.0, 2.0]);
        let cases = [
            ThompsonBoundary::rev_interior(&x),
            ThompsonBoundary::funk_interior(&x),
            ThompsonBoundary::Rev { rev: gr.clone() },
            ThompsonBoundary::Funk { fun: ff.clone() },
            ThompsonBoundary::mixed(gr, ff, ExtReal::Finite(0.7)).unwrap(),
        ];
        for xi in &cases {
            let net = approach_thompson(xi, 2000).unwrap();
            assert!(is_almost_geodesic(&net.clone().with_burn_in(1000), 1e-3).unwrap(), "{xi:?}");
            let h = [0.3, 1.7, 2.2];
            let gap = (net.horofunction_at(1999, &h).unwrap() - xi.value(&h)).abs();
            assert!(gap < 1e-2, "{} gap {gap}", xi.variant_name());
            let own = detour_cost_along_net(&net, xi).unwrap();
            assert!(own.value.approx_eq(ExtReal::ZERO, 1e-2), "{own:?}");
        }
    }

    #[test]
    fn supnorm_net() {
        let xi = SupNormBoundary::from_f64(&[0.0, INF, 2.0], &[INF, 1.0, INF]).unwrap();
        let net = approach_supnorm(&xi, 100).unwrap();
        assert!(is_almost_geodesic(&net, 1e-12).unwrap());
        let x = [0.4, -2.0, 1.1];
        assert!((net.horofunction_at(99, &x).unwrap() - xi.value(&x)).abs() < 1e-12);
    }

    #[test]
    fn net_detour_matches_closed_form() {
        let a = g(&[1.0, 0.5, 0.0]);
        let b = g(&[1.0, 0.25, 0.0]);
        let net = approach_revfunk(&b, 10_000).unwrap();
        let r = detour_cost_along_net(&net, &a).unwrap();
        assert!(!r.diverged);
        assert!(r.value.approx_eq(b.detour_cost(&a), 1e-3), "{r:?}");
        let own = detour_cost_along_net(&net, &b).unwrap();
        assert!(own.value.approx_eq(ExtReal::ZERO, 1e-3));
        let c = g(&[0.0, 0.0, 1.0]);
        let cross = detour_cost_along_net(&net, &c).unwrap();
        assert!(cross.diverged);
        assert_eq!(cross.value, ExtReal::PosInf);
        let trace: Vec<f64> = cross.trace.iter().map(|t| t.1).collect();
        assert!(trace.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn counterexample_n8() {
        let r = counterexample_harness(&CounterexampleParams::default()).unwrap();
        assert!(!r.compatible);
        assert!(r.revfunk.holds);
        assert!(!r.funk.holds);
        let (i, j) = r.funk.violating_pair.unwrap();
        assert!(i >= 10 && j > i);
        assert!(r.funk.worst_defect > 0.1);
        assert!(r.hilbert_limit.exists);
        assert!(counterexample_harness(&CounterexampleParams { n: 1, ..Default::default() }).is_err());
    }

    #[test]
    fn net_document_round_trip() {
        let net = approach_funk(&f(&[1.0, INF]), 3).unwrap().with_burn_in(1);
        let s = serde_json::to_string(&net).unwrap();
        assert_eq!(s, r#"{"points":[[1.0,1.0],[1.0,2.0],[1.0,3.0]],"metric":"funk","burn_in":1}"#);
        let back: FiniteNet = serde_json::from_str(&s).unwrap();
        assert_eq!(back.validated().unwrap(), net);
    }
}
