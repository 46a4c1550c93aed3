//! Detour costs `H(xi, eta) = sup_x eta(x) - xi(x)`, the detour metric
//! `delta = H(xi, eta) + H(eta, xi)`, parts and singletons.
//!
//! On a simplex, the supremum of a quotient of non-negative affine functions is
//! attained at a vertex, so the cone geometries reduce to coordinatewise
//! ratios; the sup-norm space reduces to the `2n` extreme points of the dual
//! ball.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::ext::ExtReal;
use crate::horo::{AnyBoundary, FunkBoundary, HilbertBoundary, Horofunction, RevFunkBoundary, ThompsonBoundary};
use crate::normed::SupNormBoundary;
use crate::DIVERGENCE_CAP;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetourResult {
    pub cost_forward: ExtReal,
    pub cost_backward: ExtReal,
    pub metric: ExtReal,
}

impl DetourResult {
    pub fn new(cost_forward: ExtReal, cost_backward: ExtReal) -> Self {
        Self { cost_forward, cost_backward, metric: cost_forward + cost_backward }
    }

    fn sum(a: DetourResult, b: DetourResult) -> Self {
        Self::new(a.cost_forward + b.cost_forward, a.cost_backward + b.cost_backward)
    }
}

/// Closed-form detour cost and singleton test for one geometry.
pub trait Busemann: Horofunction + Sized {
    /// `H(self, other)`.
    fn detour_cost(&self, other: &Self) -> ExtReal;

    fn is_singleton(&self) -> bool;

    fn detour(&self, other: &Self) -> Result<DetourResult> {
        check_dim(self.dim(), other.dim())?;
        Ok(DetourResult::new(self.detour_cost(other), other.detour_cost(self)))
    }

    /// Same part iff the detour metric is finite.
    fn same_part(&self, other: &Self) -> Result<bool> {
        Ok(self.detour(other)?.metric.is_finite())
    }
}

/// `log max_k g2_k / g1_k` over indices where the ratio is defined.
pub(crate) fn h_rev(g1: &[f64], g2: &[f64]) -> ExtReal {
    let mut best = ExtReal::NegInf;
    for (a, b) in g1.iter().zip(g2) {
        if let Some(r) = ExtReal::ratio(ExtReal::Finite(*b), ExtReal::Finite(*a)) {
            best = best.max(r);
        }
    }
    log_ext(best)
}

/// `log max_k f1_k / f2_k` over indices where the ratio is defined.
pub(crate) fn h_funk(f1: &[ExtReal], f2: &[ExtReal]) -> ExtReal {
    let mut best = ExtReal::NegInf;
    for (a, b) in f1.iter().zip(f2) {
        if let Some(r) = ExtReal::ratio(*a, *b) {
            best = best.max(r);
        }
    }
    log_ext(best)
}

fn log_ext(ratio: ExtReal) -> ExtReal {
    match ratio {
        ExtReal::NegInf => ExtReal::NegInf,
        r => r.ln(),
    }
}

impl Busemann for RevFunkBoundary {
    fn detour_cost(&self, other: &Self) -> ExtReal {
        h_rev(self.g(), other.g())
    }

    fn is_singleton(&self) -> bool {
        self.support().count() == 1
    }
}

impl Busemann for FunkBoundary {
    fn detour_cost(&self, other: &Self) -> ExtReal {
        h_funk(self.f(), other.f())
    }

    fn is_singleton(&self) -> bool {
        self.finite_support().count() == 1
    }
}

impl Busemann for HilbertBoundary {
    fn detour_cost(&self, other: &Self) -> ExtReal {
        self.rev().detour_cost(other.rev()) + self.fun().detour_cost(other.fun())
    }

    fn is_singleton(&self) -> bool {
        self.rev().is_singleton() && self.fun().is_singleton()
    }

    fn detour(&self, other: &Self) -> Result<DetourResult> {
        Ok(DetourResult::sum(self.rev().detour(other.rev())?, self.fun().detour(other.fun())?))
    }
}

/// A Thompson function written as `max(H_R + s_R, H_F + s_F)` with shifts in
/// `[-inf, 0]`; a missing part carries shift `-inf`.
struct Shifted {
    rev: Option<Vec<f64>>,
    s_rev: ExtReal,
    fun: Option<Vec<ExtReal>>,
    s_fun: ExtReal,
}

impl Shifted {
    fn of(xi: &ThompsonBoundary) -> Self {
        let none_r = (None, ExtReal::NegInf);
        let none_f = (None, ExtReal::NegInf);
        // r_x = log M(x/.) with max x = 1 has the reverse-Funk form with profile
        // x, and f_x the Funk form with profile x
        let ((rev, s_rev), (fun, s_fun)) = match xi {
            ThompsonBoundary::RevInterior { z } => ((Some(z.coords().to_vec()), ExtReal::ZERO), none_f),
            ThompsonBoundary::FunkInterior { z } => {
                (none_r, (Some(z.coords().iter().map(|v| ExtReal::Finite(*v)).collect()), ExtReal::ZERO))
            }
            ThompsonBoundary::Rev { rev } => ((Some(rev.g().to_vec()), ExtReal::ZERO), none_f),
            ThompsonBoundary::Funk { fun } => (none_r, (Some(fun.f().to_vec()), ExtReal::ZERO)),
            ThompsonBoundary::Mixed { rev, fun, c } => (
                (Some(rev.g().to_vec()), ExtReal::Finite(c.min(0.0))),
                (Some(fun.f().to_vec()), ExtReal::Finite(-c.max(0.0))),
            ),
        };
        Self { rev, s_rev, fun, s_fun }
    }
}

/// `H(xi + u, eta + v) = H(xi, eta) + v - u`, with `-inf` shifts absorbing.
fn shifted_cost(h: impl FnOnce() -> ExtReal, u: ExtReal, v: ExtReal) -> ExtReal {
    if v == ExtReal::NegInf {
        ExtReal::NegInf
    } else if u == ExtReal::NegInf {
        ExtReal::PosInf
    } else {
        h() + v - u
    }
}

fn thompson_cost(a: &Shifted, b: &Shifted) -> ExtReal {
    let hr = shifted_cost(
        || match (&a.rev, &b.rev) {
            (Some(g1), Some(g2)) => h_rev(g1, g2),
            _ => ExtReal::NegInf,
        },
        a.s_rev,
        b.s_rev,
    );
    let hf = shifted_cost(
        || match (&a.fun, &b.fun) {
            (Some(f1), Some(f2)) => h_funk(f1, f2),
            _ => ExtReal::NegInf,
        },
        a.s_fun,
        b.s_fun,
    );
    hr.max(hf)
}

impl Busemann for ThompsonBoundary {
    fn detour_cost(&self, other: &Self) -> ExtReal {
        thompson_cost(&Shifted::of(self), &Shifted::of(other))
    }

    fn is_singleton(&self) -> bool {
        match self {
            ThompsonBoundary::Rev { rev } => rev.is_singleton(),
            ThompsonBoundary::Funk { fun } => fun.is_singleton(),
            _ => false,
        }
    }
}

impl Busemann for SupNormBoundary {
    /// `max(0, max over the dual-ball vertices of Xi_self - Xi_other)`.
    ///
    /// The clamp at 0 is the `H >= 0` bound that holds for Busemann points
    /// normalized at the basepoint.
    fn detour_cost(&self, other: &Self) -> ExtReal {
        self.vertex_values().zip(other.vertex_values()).map(|(a, b)| a - b).fold(ExtReal::ZERO, ExtReal::max)
    }

    fn is_singleton(&self) -> bool {
        self.is_boundary() && self.vertex_values().filter(|e| e.is_finite()).count() == 1
    }
}

pub fn detour_revfunk(a: &RevFunkBoundary, b: &RevFunkBoundary) -> Result<DetourResult> {
    a.detour(b)
}

pub fn detour_funk(a: &FunkBoundary, b: &FunkBoundary) -> Result<DetourResult> {
    a.detour(b)
}

pub fn detour_hilbert(a: &HilbertBoundary, b: &HilbertBoundary) -> Result<DetourResult> {
    a.detour(b)
}

pub fn detour_thompson(a: &ThompsonBoundary, b: &ThompsonBoundary) -> Result<DetourResult> {
    a.detour(b)
}

pub fn detour_supnorm(a: &SupNormBoundary, b: &SupNormBoundary) -> Result<DetourResult> {
    a.detour(b)
}

/// `g2 / lambda <= g1 <= lambda g2` for some finite `lambda`: equal supports.
pub fn revfunk_ratio_bounded(a: &RevFunkBoundary, b: &RevFunkBoundary) -> bool {
    a.g().iter().zip(b.g()).all(|(x, y)| (*x > 0.0) == (*y > 0.0))
}

/// `f2 / lambda <= f1 <= lambda f2` for some finite `lambda`: equal finite supports.
pub fn funk_ratio_bounded(a: &FunkBoundary, b: &FunkBoundary) -> bool {
    a.f().iter().zip(b.f()).all(|(x, y)| x.is_finite() == y.is_finite())
}

impl AnyBoundary {
    pub fn detour(&self, other: &AnyBoundary) -> Result<DetourResult> {
        match (self, other) {
            (AnyBoundary::RevFunk(a), AnyBoundary::RevFunk(b)) => a.detour(b),
            (AnyBoundary::Funk(a), AnyBoundary::Funk(b)) => a.detour(b),
            (AnyBoundary::Hilbert(a), AnyBoundary::Hilbert(b)) => a.detour(b),
            (AnyBoundary::Thompson(a), AnyBoundary::Thompson(b)) => a.detour(b),
            (AnyBoundary::SupNorm(a), AnyBoundary::SupNorm(b)) => a.detour(b),
            (a, b) => Err(Error::InvalidArgument(format!(
                "cannot compare a {} descriptor with a {} descriptor",
                a.kind(),
                b.kind()
            ))),
        }
    }

    pub fn is_singleton(&self) -> bool {
        match self {
            AnyBoundary::RevFunk(a) => a.is_singleton(),
            AnyBoundary::Funk(a) => a.is_singleton(),
            AnyBoundary::Hilbert(a) => a.is_singleton(),
            AnyBoundary::Thompson(a) => a.is_singleton(),
            AnyBoundary::SupNorm(a) => a.is_singleton(),
        }
    }
}

/// `max_{x in samples} eta(x) - xi(x)`: a lower bound on `H(xi, eta)`.
///
/// Values beyond [`DIVERGENCE_CAP`] are reported as `+inf`.
pub fn detour_cost_generic<A, B>(xi: &A, eta: &B, samples: &[Vec<f64>]) -> Result<ExtReal>
where
    A: Horofunction + ?Sized,
    B: Horofunction + ?Sized,
{
    check_dim(xi.dim(), eta.dim())?;
    let mut best = ExtReal::NegInf;
    for x in samples {
        check_dim(xi.dim(), x.len())?;
        let d = eta.value(x) - xi.value(x);
        if !d.is_nan() {
            best = best.max(ExtReal::new(d));
        }
    }
    Ok(best.capped(DIVERGENCE_CAP))
}

/// Positive sample points `exp(t)` with every coordinate `t` on the grid
/// `{-r, -r + r/levels, ..., r}`, `(2 levels + 1)^n` points in total.
pub fn log_grid_samples(n: usize, radius: f64, levels: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> =
        (0..=2 * levels).map(|i| (radius * (i as f64 - levels as f64) / levels as f64).exp()).collect();
    crate::normed::cartesian_grid(&axis, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::ConePoint;
    use crate::metrics::hilbert;
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;
    const INF: f64 = f64::INFINITY;

    fn g(v: &[f64]) -> RevFunkBoundary {
        RevFunkBoundary::new(v.to_vec()).unwrap()
    }

    fn f(v: &[f64]) -> FunkBoundary {
        FunkBoundary::from_f64(v).unwrap()
    }

    fn fin(x: f64) -> ExtReal {
        ExtReal::Finite(x)
    }

    /// Maximizes `<num, mu> / <den, mu>` over a simplex grid of step `1/steps`.
    fn simplex_ratio_oracle(num: &[f64], den: &[f64], steps: usize) -> f64 {
        let n = num.len();
        let mut best = f64::NEG_INFINITY;
        let mut mu = vec![0usize; n];
        fn rec(k: usize, left: usize, mu: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
            if k + 1 == mu.len() {
                mu[k] = left;
                f(mu);
                return;
            }
            for i in 0..=left {
                mu[k] = i;
                rec(k + 1, left - i, mu, f);
            }
        }
        rec(0, steps, &mut mu, &mut |m: &[usize]| {
            let a: f64 = m.iter().zip(num).map(|(w, x)| *w as f64 * x).sum();
            let b: f64 = m.iter().zip(den).map(|(w, x)| *w as f64 * x).sum();
            if b > 0.0 {
                best = best.max(a / b);
            } else if a > 0.0 {
                best = INF;
            }
        });
        best
    }

    #[test]
    fn revfunk_examples() {
        let a = g(&[1.0, 0.5, 0.0]);
        let b = g(&[1.0, 0.25, 0.0]);
        let r = detour_revfunk(&a, &b).unwrap();
        assert_eq!(r.cost_forward, fin(0.0));
        assert!(r.cost_backward.approx_eq(fin(LN2), 1e-15));
        assert!(r.metric.approx_eq(fin(LN2), 1e-15));
        // the closed form agrees with the simplex oracle of the affine ratio
        assert!((simplex_ratio_oracle(b.g(), a.g(), 1000).ln() - 0.0).abs() < 1e-12);
        assert!((simplex_ratio_oracle(a.g(), b.g(), 1000).ln() - LN2).abs() < 1e-12);

        assert_eq!(detour_revfunk(&a, &a).unwrap().metric, ExtReal::ZERO);
        let d = detour_revfunk(&g(&[1.0, 0.0]), &g(&[0.0, 1.0])).unwrap();
        assert_eq!((d.cost_forward, d.cost_backward), (ExtReal::PosInf, ExtReal::PosInf));
        assert!(a.same_part(&b).unwrap());
        assert!(!g(&[1.0, 0.0]).same_part(&g(&[0.0, 1.0])).unwrap());
    }

    #[test]
    fn funk_examples() {
        let a = f(&[1.0, 2.0, INF]);
        let b = f(&[1.0, 4.0, INF]);
        let r = detour_funk(&a, &b).unwrap();
        assert_eq!(r.cost_forward, fin(0.0));
        assert!(r.metric.approx_eq(fin(LN2), 1e-15));
        assert_eq!(detour_funk(&a, &a).unwrap().metric, ExtReal::ZERO);
        let c = f(&[1.0, INF, INF]);
        assert_eq!(detour_funk(&a, &c).unwrap().metric, ExtReal::PosInf);
        // oracle on 1/f, where f = inf contributes 0
        let inv = |x: &FunkBoundary| -> Vec<f64> { x.f().iter().map(|v| 1.0 / v.to_f64()).collect() };
        let fwd = simplex_ratio_oracle(&inv(&b), &inv(&a), 1000).ln();
        let bwd = simplex_ratio_oracle(&inv(&a), &inv(&b), 1000).ln();
        assert!(r.cost_forward.approx_eq(fin(fwd), 1e-12));
        assert!(r.cost_backward.approx_eq(fin(bwd), 1e-12));
    }

    #[test]
    fn hilbert_examples() {
        let x = HilbertBoundary::new(g(&[1.0, 0.0, 0.0]), f(&[INF, 1.0, 2.0])).unwrap();
        let y = HilbertBoundary::new(g(&[1.0, 0.0, 0.0]), f(&[INF, 1.0, 4.0])).unwrap();
        assert_eq!(detour_hilbert(&x, &x).unwrap().metric, ExtReal::ZERO);
        assert!(detour_hilbert(&x, &y).unwrap().metric.approx_eq(fin(LN2), 1e-15));
        let z = HilbertBoundary::new(g(&[0.0, 1.0, 0.0]), f(&[1.0, INF, 2.0])).unwrap();
        assert_eq!(detour_hilbert(&x, &z).unwrap().metric, ExtReal::PosInf);
        assert!(HilbertBoundary::new(g(&[1.0, 0.0, 0.0]), f(&[INF, 1.0, INF])).unwrap().is_singleton());
        assert!(!x.is_singleton());
    }

    #[test]
    fn thompson_examples() {
        let x = ConePoint::new(vec![1.0, 3.0, 0.5]).unwrap();
        let y = ConePoint::new(vec![2.0, 1.0, 0.7]).unwrap();
        let dh = hilbert(&x, &y).unwrap();
        let r = detour_thompson(&ThompsonBoundary::rev_interior(&x), &ThompsonBoundary::rev_interior(&y)).unwrap();
        assert!(r.metric.approx_eq(fin(dh), 1e-14));
        let r = detour_thompson(&ThompsonBoundary::funk_interior(&x), &ThompsonBoundary::funk_interior(&y)).unwrap();
        assert!(r.metric.approx_eq(fin(dh), 1e-14));
        let r = detour_thompson(&ThompsonBoundary::rev_interior(&x), &ThompsonBoundary::funk_interior(&x)).unwrap();
        assert_eq!(r.metric, ExtReal::PosInf);

        let gr = g(&[1.0, 0.0, 0.0]);
        let ff = f(&[INF, 1.0, 3.0]);
        let rev = ThompsonBoundary::Rev { rev: gr.clone() };
        let fun = ThompsonBoundary::Funk { fun: ff.clone() };
        assert_eq!(detour_thompson(&rev, &fun).unwrap().metric, ExtReal::PosInf);
        assert_eq!(detour_thompson(&rev, &rev).unwrap().metric, ExtReal::ZERO);

        let m0 = ThompsonBoundary::mixed(gr.clone(), ff.clone(), ExtReal::ZERO).unwrap();
        for c in [0.5, 2.0] {
            let mc = ThompsonBoundary::mixed(gr.clone(), ff.clone(), fin(c)).unwrap();
            let r = detour_thompson(&m0, &mc).unwrap();
            assert_eq!(r.cost_forward, ExtReal::ZERO);
            assert!(r.metric.approx_eq(fin(c), 1e-15));
            let mn = ThompsonBoundary::mixed(gr.clone(), ff.clone(), fin(-c)).unwrap();
            assert!(detour_thompson(&mn, &mc).unwrap().metric.approx_eq(fin(2.0 * c), 1e-15));
        }
        assert_eq!(detour_thompson(&m0, &rev).unwrap().metric, ExtReal::PosInf);
        assert!(rev.is_singleton());
        assert!(!m0.is_singleton());
    }

    #[test]
    fn supnorm_examples() {
        let a = SupNormBoundary::from_f64(&[0.0, INF], &[INF, INF]).unwrap();
        let b = SupNormBoundary::interior_limit(vec![fin(1.0), ExtReal::PosInf], vec![ExtReal::PosInf; 2]);
        // (1, inf) has no zero entry, so it is not a valid descriptor
        assert!(b.is_err());
        let c = SupNormBoundary::from_f64(&[0.0, INF], &[INF, 1.0]).unwrap();
        let r = detour_supnorm(&a, &c).unwrap();
        assert_eq!(r.cost_forward, ExtReal::PosInf);
        assert_eq!(r.cost_backward, ExtReal::ZERO);
        assert_eq!(detour_supnorm(&c, &c).unwrap().metric, ExtReal::ZERO);
    }

    #[test]
    fn supnorm_unnormalized_pair() {
        // the second function is the first shifted down by 1, outside the
        // normalized descriptors; H is clamped at 0 in the forward direction
        let a = SupNormBoundary::from_f64(&[0.0, INF], &[INF, INF]).unwrap();
        let shifted = unnormalized(vec![fin(1.0), ExtReal::PosInf], vec![ExtReal::PosInf; 2]);
        let r = detour_supnorm(&a, &shifted).unwrap();
        assert_eq!(r.cost_forward, ExtReal::ZERO);
        assert_eq!(r.cost_backward, fin(1.0));
        assert_eq!(r.metric, fin(1.0));
    }

    fn unnormalized(u: Vec<ExtReal>, v: Vec<ExtReal>) -> SupNormBoundary {
        SupNormBoundary::unchecked(u, v)
    }

    #[test]
    fn generic_cost_is_a_lower_bound() {
        let a = g(&[1.0, 0.5, 0.0]);
        let b = g(&[1.0, 0.25, 0.0]);
        let samples = log_grid_samples(3, 6.0, 12);
        let lo = detour_cost_generic(&b, &a, &samples).unwrap();
        let hi = b.detour_cost(&a);
        assert!(lo <= hi + ExtReal::Finite(1e-12));
        assert!(lo.approx_eq(hi, 1e-12));
        assert!(detour_cost_generic(&a, &a, &samples).unwrap().approx_eq(ExtReal::ZERO, 0.0));
        // disjoint supports: sampled sup grows with the sample radius
        let c = g(&[0.0, 0.0, 1.0]);
        let small = detour_cost_generic(&a, &c, &log_grid_samples(3, 2.0, 4)).unwrap();
        let large = detour_cost_generic(&a, &c, &log_grid_samples(3, 8.0, 4)).unwrap();
        assert!(large.to_f64() > small.to_f64() + 5.0);
    }

    fn arb_g(n: usize) -> impl Strategy<Value = RevFunkBoundary> {
        (prop::collection::vec(prop_oneof![Just(0.0), 0.05f64..1.0], n), 0..n, 0..n).prop_filter_map(
            "needs a zero",
            |(mut v, top, zero)| {
                v[top] = 1.0;
                if top == zero {
                    return None;
                }
                v[zero] = 0.0;
                RevFunkBoundary::new(v).ok()
            },
        )
    }

    proptest! {
        #[test]
        fn revfunk_detour_is_an_extended_metric(
            (a, b, c) in (2usize..=6).prop_flat_map(|n| (arb_g(n), arb_g(n), arb_g(n)))
        ) {
            let d = |x: &RevFunkBoundary, y: &RevFunkBoundary| x.detour(y).unwrap().metric;
            prop_assert_eq!(d(&a, &b), d(&b, &a));
            prop_assert_eq!(d(&a, &a), ExtReal::ZERO);
            prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + ExtReal::Finite(1e-12));
            prop_assert_eq!(d(&a, &b) == ExtReal::ZERO, a == b);
            prop_assert!(a.detour_cost(&b) >= ExtReal::ZERO);
            prop_assert_eq!(a.same_part(&b).unwrap(), revfunk_ratio_bounded(&a, &b));
        }
    }
}
