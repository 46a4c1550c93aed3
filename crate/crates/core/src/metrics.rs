//! The four cone distances and the `H`-seminorm.
//!
//! On the orthant, with `M(x/y) = max_k x_k / y_k`:
//!
//! - Funk: `d_F(x, y) = log M(x/y)` (may be negative);
//! - reverse-Funk: `d_R(x, y) = d_F(y, x)`;
//! - Hilbert: `d_H(x, y) = log M(x/y) M(y/x) = d_F + d_R`;
//! - Thompson: `d_T(x, y) = max(d_F(x, y), d_R(x, y))`.
//!
//! The Thompson distance is computed as the maximum of the two Funk values. The
//! closed form `log max(M(x/y), M(y/x))` is the same quantity.

use crate::cone::{gauge_polyhedral, gauge_raw, ConePoint, PolyhedralCone};
use crate::error::{check_dim, Result};

pub fn funk(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(funk_raw(x.coords(), y.coords()))
}

pub fn reverse_funk(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    funk(y, x)
}

pub fn hilbert(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(hilbert_raw(x.coords(), y.coords()))
}

pub fn thompson(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(thompson_raw(x.coords(), y.coords()))
}

/// `||z||_H = max z - min z`.
pub fn hilbert_seminorm(z: &[f64]) -> f64 {
    let (lo, hi) = z.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if z.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// `||z||_inf`.
pub fn sup_norm(z: &[f64]) -> f64 {
    z.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `||x - y||_inf`.
pub fn sup_norm_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(x.len(), y.len())?;
    Ok(sup_distance_raw(x, y))
}

pub(crate) fn funk_raw(x: &[f64], y: &[f64]) -> f64 {
    gauge_raw(x, y).0.ln()
}

pub(crate) fn reverse_funk_raw(x: &[f64], y: &[f64]) -> f64 {
    gauge_raw(y, x).0.ln()
}

pub(crate) fn hilbert_raw(x: &[f64], y: &[f64]) -> f64 {
    combine_gauges(gauge_raw(x, y).0, gauge_raw(y, x).0)
}

pub(crate) fn thompson_raw(x: &[f64], y: &[f64]) -> f64 {
    funk_raw(x, y).max(reverse_funk_raw(x, y))
}

pub(crate) fn sup_distance_raw(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
}

fn combine_gauges(a: f64, b: f64) -> f64 {
    let prod = a * b;
    if prod.is_finite() && prod > 0.0 {
        prod.ln()
    } else {
        a.ln() + b.ln()
    }
}

/// The same four distances on a general polyhedral cone, through its gauge.
impl PolyhedralCone {
    pub fn funk(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(gauge_polyhedral(self, x, y)?.ln())
    }

    pub fn reverse_funk(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.funk(y, x)
    }

    pub fn hilbert(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(combine_gauges(gauge_polyhedral(self, x, y)?, gauge_polyhedral(self, y, x)?))
    }

    pub fn thompson(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        Ok(self.funk(x, y)?.max(self.reverse_funk(x, y)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{gauge, IndexSet};
    use proptest::prelude::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn p(v: &[f64]) -> ConePoint {
        ConePoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn funk_examples() {
        let x = p(&[0.5, 3.0]);
        assert_eq!(funk(&x, &x).unwrap(), 0.0);
        let a = 2.5;
        assert!((funk(&x.scale(a).unwrap(), &x).unwrap() - a.ln()).abs() < 1e-15);
        assert!((funk(&p(&[1.0, 4.0]), &p(&[2.0, 2.0])).unwrap() - LN2).abs() < 1e-15);
        // may be negative
        assert!(funk(&p(&[1.0, 1.0]), &p(&[2.0, 2.0])).unwrap() < 0.0);
    }

    #[test]
    fn reverse_funk_examples() {
        let x = p(&[0.5, 3.0]);
        assert_eq!(reverse_funk(&x, &x).unwrap(), 0.0);
        assert!((reverse_funk(&p(&[2.0, 2.0]), &p(&[1.0, 4.0])).unwrap() - LN2).abs() < 1e-15);
        assert!((reverse_funk(&x, &x.scale(3.0).unwrap()).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn hilbert_examples() {
        let x = p(&[1.0, 2.0]);
        let y = p(&[2.0, 1.0]);
        assert!(hilbert(&x, &x.scale(7.0).unwrap()).unwrap().abs() < 1e-15);
        let oracle = (gauge(&x, &y).unwrap() * gauge(&y, &x).unwrap()).ln();
        assert_eq!(hilbert(&x, &y).unwrap(), oracle);
        assert!((hilbert(&x, &y).unwrap() - 4f64.ln()).abs() < 1e-15);
        let scaled = hilbert(&x.scale(3.0).unwrap(), &y.scale(0.1).unwrap()).unwrap();
        assert!((scaled - 4f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn thompson_examples() {
        let x = p(&[1.0, 2.0]);
        let y = p(&[2.0, 1.0]);
        assert_eq!(thompson(&x, &x).unwrap(), 0.0);
        assert!((thompson(&x, &y).unwrap() - LN2).abs() < 1e-15);
        assert!((thompson(&x, &x.scale(0.25).unwrap()).unwrap() - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn seminorm_examples() {
        assert_eq!(hilbert_seminorm(&[3.0, 3.0, 3.0]), 0.0);
        let z = [0.0, LN2, 4f64.ln()];
        assert!((hilbert_seminorm(&z) - 4f64.ln()).abs() < 1e-15);
        let shifted: Vec<f64> = z.iter().map(|v| v + 5.0).collect();
        assert!((hilbert_seminorm(&shifted) - hilbert_seminorm(&z)).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(funk(&p(&[1.0]), &p(&[1.0, 1.0])).is_err());
        assert!(hilbert(&p(&[1.0]), &p(&[1.0, 1.0])).is_err());
        assert!(thompson(&p(&[1.0]), &p(&[1.0, 1.0])).is_err());
        assert!(sup_norm_distance(&[1.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn polyhedral_metrics_reduce_to_orthant() {
        let cone = PolyhedralCone::orthant(IndexSet::with_size(3).unwrap());
        let x = [1.0, 2.0, 0.5];
        let y = [0.3, 1.0, 4.0];
        let (px, py) = (p(&x), p(&y));
        assert_eq!(cone.funk(&x, &y).unwrap(), funk(&px, &py).unwrap());
        assert_eq!(cone.reverse_funk(&x, &y).unwrap(), reverse_funk(&px, &py).unwrap());
        assert_eq!(cone.hilbert(&x, &y).unwrap(), hilbert(&px, &py).unwrap());
        assert_eq!(cone.thompson(&x, &y).unwrap(), thompson(&px, &py).unwrap());
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>)> {
        (1usize..=8).prop_flat_map(|n| {
            let c = || prop::collection::vec(-5.0f64..5.0, n).prop_map(|v| v.iter().map(|t| t.exp()).collect());
            (c(), c(), c())
        })
    }

    proptest! {
        #[test]
        fn gauge_submultiplicative((x, y, z) in arb_pair()) {
            let (x, y, z) = (p(&x), p(&y), p(&z));
            let lhs = gauge(&x, &z).unwrap();
            let rhs = gauge(&x, &y).unwrap() * gauge(&y, &z).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }

        #[test]
        fn gauge_homogeneous((x, y, _z) in arb_pair(), a in 0.01f64..100.0, b in 0.01f64..100.0) {
            let (x, y) = (p(&x), p(&y));
            let lhs = gauge(&x.scale(a).unwrap(), &y.scale(b).unwrap()).unwrap();
            let rhs = a / b * gauge(&x, &y).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }

        #[test]
        fn gauge_product_at_least_one((x, y, _z) in arb_pair(), a in 0.01f64..100.0) {
            let (x, y) = (p(&x), p(&y));
            prop_assert!(gauge(&x, &y).unwrap() * gauge(&y, &x).unwrap() >= 1.0 - 1e-12);
            let xa = x.scale(a).unwrap();
            let prod = gauge(&x, &xa).unwrap() * gauge(&xa, &x).unwrap();
            prop_assert!((prod - 1.0).abs() < 1e-12);
        }

        #[test]
        fn funk_triangle((x, y, z) in arb_pair()) {
            let (x, y, z) = (p(&x), p(&y), p(&z));
            prop_assert!(funk(&x, &z).unwrap() <= funk(&x, &y).unwrap() + funk(&y, &z).unwrap() + 1e-12);
        }

        #[test]
        fn symmetrisation_identities((x, y, _z) in arb_pair()) {
            let (x, y) = (p(&x), p(&y));
            let (df, dr) = (funk(&x, &y).unwrap(), reverse_funk(&x, &y).unwrap());
            prop_assert!((hilbert(&x, &y).unwrap() - (df + dr)).abs() <= 1e-12);
            prop_assert_eq!(thompson(&x, &y).unwrap(), df.max(dr));
            prop_assert_eq!(hilbert(&x, &y).unwrap(), hilbert(&y, &x).unwrap());
        }
    }
}
