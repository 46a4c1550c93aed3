//! The coordinatewise logarithm as an isometry, and the linear cone maps that
//! preserve the cone geometries.
//!
//! `log : C+(K) -> R^n` carries the Thompson metric to the sup-norm distance
//! and the Hilbert metric to the seminorm `max z - min z`, which is a norm on
//! `R^n / R 1`.

use serde::{Deserialize, Serialize};

use crate::cone::ConePoint;
use crate::error::{check_dim, Error, Result};
use crate::ext::ExtReal;
use crate::horo::{FunkBoundary, RevFunkBoundary};
use crate::metrics::{funk_raw, hilbert_raw, hilbert_seminorm, reverse_funk_raw, sup_norm, thompson_raw};

pub fn log_map(x: &ConePoint) -> Vec<f64> {
    x.coords().iter().map(|v| v.ln()).collect()
}

pub fn exp_map(z: &[f64]) -> Result<ConePoint> {
    ConePoint::new(z.iter().map(|v| v.exp()).collect())
}

fn log_difference(x: &ConePoint, y: &ConePoint) -> Result<Vec<f64>> {
    check_dim(x.len(), y.len())?;
    Ok(x.coords().iter().zip(y.coords()).map(|(a, b)| a.ln() - b.ln()).collect())
}

/// `max |d_H(x, y) - ||log x - log y||_H|` over the pairs.
pub fn verify_hilbert_isometry(pairs: &[(ConePoint, ConePoint)]) -> Result<f64> {
    pairs.iter().try_fold(0.0_f64, |m, (x, y)| {
        let lhs = hilbert_raw(x.coords(), y.coords());
        Ok(m.max((lhs - hilbert_seminorm(&log_difference(x, y)?)).abs()))
    })
}

/// `max |d_T(x, y) - ||log x - log y||_inf|` over the pairs.
pub fn verify_thompson_isometry(pairs: &[(ConePoint, ConePoint)]) -> Result<f64> {
    pairs.iter().try_fold(0.0_f64, |m, (x, y)| {
        let lhs = thompson_raw(x.coords(), y.coords());
        Ok(m.max((lhs - sup_norm(&log_difference(x, y)?)).abs()))
    })
}

/// The linear cone automorphism `Theta(x)_i = s_i x_{pi(i)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTransform")]
pub struct ConeTransform {
    permutation: Vec<usize>,
    scaling: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTransform {
    permutation: Vec<usize>,
    scaling: Option<Vec<f64>>,
}

impl TryFrom<RawTransform> for ConeTransform {
    type Error = Error;

    fn try_from(raw: RawTransform) -> Result<Self> {
        let n = raw.permutation.len();
        ConeTransform::new(raw.permutation, raw.scaling.unwrap_or_else(|| vec![1.0; n]))
    }
}

impl ConeTransform {
    pub fn new(permutation: Vec<usize>, scaling: Vec<f64>) -> Result<Self> {
        let n = permutation.len();
        if n == 0 {
            return Err(Error::InvalidTransform("empty permutation".into()));
        }
        if scaling.len() != n {
            return Err(Error::InvalidTransform(format!("scaling has {} entries, permutation has {n}", scaling.len())));
        }
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || seen[p] {
                return Err(Error::InvalidTransform(format!("{permutation:?} is not a permutation of 0..{n}")));
            }
            seen[p] = true;
        }
        if let Some(s) = scaling.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidTransform(format!("scaling entry {s} must be finite and > 0")));
        }
        Ok(Self { permutation, scaling })
    }

    pub fn identity(n: usize) -> Self {
        Self { permutation: (0..n).collect(), scaling: vec![1.0; n] }
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn scaling(&self) -> &[f64] {
        &self.scaling
    }

    pub fn dim(&self) -> usize {
        self.permutation.len()
    }

    fn apply_raw(&self, x: &[f64]) -> Vec<f64> {
        self.permutation.iter().zip(&self.scaling).map(|(&p, s)| s * x[p]).collect()
    }

    /// `pi^{-1}`.
    fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.dim()];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// The reverse-Funk Busemann point `xi o Theta`, renormalized at the
    /// basepoint: `g'_k = g_{pi^{-1} k} / s_{pi^{-1} k}` divided by its maximum.
    pub fn pullback_revfunk(&self, xi: &RevFunkBoundary) -> Result<RevFunkBoundary> {
        check_dim(self.dim(), xi.g().len())?;
        let inv = self.inverse();
        let raw: Vec<f64> = inv.iter().map(|&i| xi.g()[i] / self.scaling[i]).collect();
        let max = raw.iter().cloned().fold(0.0_f64, f64::max);
        RevFunkBoundary::new(raw.iter().map(|v| v / max).collect())
    }

    /// The Funk Busemann point `xi o Theta`, renormalized at the basepoint:
    /// `f'_k = f_{pi^{-1} k} / s_{pi^{-1} k}` divided by its finite minimum.
    pub fn pullback_funk(&self, xi: &FunkBoundary) -> Result<FunkBoundary> {
        check_dim(self.dim(), xi.f().len())?;
        let inv = self.inverse();
        let raw: Vec<ExtReal> = inv
            .iter()
            .map(|&i| match xi.f()[i] {
                ExtReal::Finite(v) => ExtReal::Finite(v / self.scaling[i]),
                other => other,
            })
            .collect();
        let min = raw.iter().filter_map(|v| v.finite()).fold(f64::INFINITY, f64::min);
        FunkBoundary::new(
            raw.iter()
                .map(|v| match v {
                    ExtReal::Finite(x) => ExtReal::Finite(x / min),
                    other => *other,
                })
                .collect(),
        )
    }
}

pub fn theta_map(x: &ConePoint, t: &ConeTransform) -> Result<ConePoint> {
    check_dim(t.dim(), x.len())?;
    ConePoint::new(t.apply_raw(x.coords()))
}

/// Largest change of each distance under a transform, over sampled pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distortion {
    pub funk: f64,
    pub revfunk: f64,
    pub hilbert: f64,
    pub thompson: f64,
}

pub fn distortion(t: &ConeTransform, pairs: &[(ConePoint, ConePoint)]) -> Result<Distortion> {
    let mut out = Distortion { funk: 0.0, revfunk: 0.0, hilbert: 0.0, thompson: 0.0 };
    for (x, y) in pairs {
        let (tx, ty) = (theta_map(x, t)?, theta_map(y, t)?);
        let (a, b) = (x.coords(), y.coords());
        let (c, d) = (tx.coords(), ty.coords());
        out.funk = out.funk.max((funk_raw(a, b) - funk_raw(c, d)).abs());
        out.revfunk = out.revfunk.max((reverse_funk_raw(a, b) - reverse_funk_raw(c, d)).abs());
        out.hilbert = out.hilbert.max((hilbert_raw(a, b) - hilbert_raw(c, d)).abs());
        out.thompson = out.thompson.max((thompson_raw(a, b) - thompson_raw(c, d)).abs());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::Busemann;
    use crate::horo::Horofunction;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: &[f64]) -> ConePoint {
        ConePoint::new(v.to_vec()).unwrap()
    }

    fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(ConePoint, ConePoint)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let point = |rng: &mut ChaCha8Rng| p(&(0..n).map(|_| rng.gen_range(-5.0f64..5.0).exp()).collect::<Vec<_>>());
        (0..count).map(|_| (point(&mut rng), point(&mut rng))).collect()
    }

    #[test]
    fn log_map_examples() {
        assert_eq!(log_map(&ConePoint::ones(3)), vec![0.0; 3]);
        let z = log_map(&p(&[1.0, 2.0, 4.0]));
        assert_eq!(z, vec![0.0, 2f64.ln(), 4f64.ln()]);
        let x = p(&[0.3, 7.0, 1e-4]);
        let back = exp_map(&log_map(&x)).unwrap();
        for (a, b) in back.coords().iter().zip(x.coords()) {
            assert!((a - b).abs() <= 1e-15 * b);
        }
    }

    #[test]
    fn isometries_hold_on_random_pairs() {
        for n in [1, 2, 3, 8, 64] {
            let pairs = random_pairs(n, 500, n as u64);
            assert!(verify_hilbert_isometry(&pairs).unwrap() <= 1e-12);
            assert!(verify_thompson_isometry(&pairs).unwrap() <= 1e-12);
        }
        let x = p(&[1.0, 2.0, 3.0]);
        let prop = vec![(x.clone(), x.scale(5.0).unwrap())];
        assert!(verify_hilbert_isometry(&prop).unwrap() < 1e-15);
        let d = thompson_raw(x.coords(), x.scale(5.0).unwrap().coords());
        assert!((d - 5f64.ln()).abs() < 1e-15);
        assert!(verify_thompson_isometry(&prop).unwrap() < 1e-15);
    }

    #[test]
    fn transforms() {
        let pairs = random_pairs(4, 200, 7);
        let id = distortion(&ConeTransform::identity(4), &pairs).unwrap();
        assert_eq!(id, Distortion { funk: 0.0, revfunk: 0.0, hilbert: 0.0, thompson: 0.0 });
        let perm = ConeTransform::new(vec![2, 0, 3, 1], vec![1.0; 4]).unwrap();
        let d = distortion(&perm, &pairs).unwrap();
        assert!(d.hilbert <= 1e-12 && d.thompson <= 1e-12);
        let scale = ConeTransform::new(vec![0, 1, 2, 3], vec![1.0, 2.0, 0.5, 3.0]).unwrap();
        // positive diagonal scalings shift log x and log y by the same vector
        let d = distortion(&scale, &pairs).unwrap();
        assert!(d.hilbert <= 1e-12 && d.thompson <= 1e-12);
        assert!(d.funk <= 1e-12 && d.revfunk <= 1e-12);
        assert!(ConeTransform::new(vec![0, 0], vec![1.0, 1.0]).is_err());
        assert!(ConeTransform::new(vec![1, 0], vec![1.0, -1.0]).is_err());
    }

    #[test]
    fn pullbacks_of_singletons_are_singletons() {
        let t = ConeTransform::new(vec![2, 0, 1], vec![3.0, 0.5, 2.0]).unwrap();
        for k in 0..3 {
            let g = t.pullback_revfunk(&RevFunkBoundary::one_hot(3, k)).unwrap();
            assert!(g.is_singleton());
            let f = t.pullback_funk(&FunkBoundary::one_finite(3, k)).unwrap();
            assert!(f.is_singleton());
        }
    }

    #[test]
    fn pullback_is_the_composition() {
        let t = ConeTransform::new(vec![2, 0, 1], vec![3.0, 0.5, 2.0]).unwrap();
        let xi = RevFunkBoundary::new(vec![1.0, 0.4, 0.0]).unwrap();
        let pb = t.pullback_revfunk(&xi).unwrap();
        let b = ConePoint::ones(3);
        let shift = xi.value(theta_map(&b, &t).unwrap().coords());
        for h in [[0.3, 1.0, 2.0], [5.0, 0.2, 0.9]] {
            let th = theta_map(&p(&h), &t).unwrap();
            assert!((pb.value(&h) - (xi.value(th.coords()) - shift)).abs() < 1e-14);
        }
        let xf = FunkBoundary::from_f64(&[1.0, 2.5, f64::INFINITY]).unwrap();
        let pf = t.pullback_funk(&xf).unwrap();
        let shift = xf.value(theta_map(&b, &t).unwrap().coords());
        for h in [[0.3, 1.0, 2.0], [5.0, 0.2, 0.9]] {
            let th = theta_map(&p(&h), &t).unwrap();
            assert!((pf.value(&h) - (xf.value(th.coords()) - shift)).abs() < 1e-14);
        }
    }
}
