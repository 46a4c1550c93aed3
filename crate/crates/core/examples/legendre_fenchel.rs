//! The sup-norm horofunction as the conjugate of an affine function on the
//! dual ball: sampling its conjugate at the extreme points recovers (u, v).
//!
//! cargo run --example legendre_fenchel

use horocone::cli::supnorm_conjugate;
use horocone::normed::{biconjugate, cartesian_grid, eval_dual_functional};
use horocone::{ExtReal, SignedVector, SupNormBoundary};

fn main() -> horocone::Result<()> {
    let xi = SupNormBoundary::from_f64(&[0.0, f64::INFINITY, 3.0], &[f64::INFINITY, 1.5, f64::INFINITY])?;
    let n = 3;
    let duals: Vec<SignedVector> =
        [-1.0, 1.0].iter().flat_map(|&s| (0..n).map(move |k| SignedVector::dirac(n, k, s))).collect();
    let conj = supnorm_conjugate(&xi, &duals, 1e3)?;
    for (d, c) in duals.iter().zip(&conj) {
        println!("mu = {:?}: conjugate {c}, Xi {}", d.entries(), eval_dual_functional(&xi, d)?);
    }

    // a convex piecewise-linear function is its own biconjugate on the grid
    let axis: Vec<f64> = (0..=10).map(|i| -1.0 + 0.2 * i as f64).collect();
    let grid = cartesian_grid(&axis, 2);
    let f = |x: &[f64]| (x[0] - x[1]).abs().max(2.0 * x[0] - 0.5);
    let values: Vec<ExtReal> = grid.iter().map(|x| ExtReal::new(f(x))).collect();
    let slopes = cartesian_grid(&[-2.0, -1.0, 0.0, 1.0, 2.0], 2);
    let back = biconjugate(&grid, &values, &slopes)?;
    let gap = values.iter().zip(&back).map(|(a, b)| (a.to_f64() - b.to_f64()).abs()).fold(0.0, f64::max);
    println!("max |f** - f| on the grid: {gap:.1e}");
    Ok(())
}
