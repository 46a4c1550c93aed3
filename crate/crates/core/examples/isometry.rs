//! Linear automorphisms of the orthant act isometrically on all four
//! distances, and carry singleton Busemann points to singleton Busemann points.
//!
//! cargo run --example isometry

use horocone::cli::random_pairs;
use horocone::isometry::{distortion, theta_map, verify_hilbert_isometry, verify_thompson_isometry, ConeTransform};
use horocone::{metrics, Busemann, ConePoint, FunkBoundary, RevFunkBoundary};

fn main() -> horocone::Result<()> {
    let pairs = random_pairs(4, 1000, 42);
    println!("hilbert log-map deviation  {:.1e}", verify_hilbert_isometry(&pairs)?);
    println!("thompson log-map deviation {:.1e}", verify_thompson_isometry(&pairs)?);

    let t = ConeTransform::new(vec![2, 0, 3, 1], vec![5.0, 0.5, 1.0, 3.0])?;
    let d = distortion(&t, &pairs)?;
    println!(
        "distortion funk {:.1e} revfunk {:.1e} hilbert {:.1e} thompson {:.1e}",
        d.funk, d.revfunk, d.hilbert, d.thompson
    );

    let x = ConePoint::new(vec![1.0, 2.0, 3.0, 4.0])?;
    let y = ConePoint::new(vec![4.0, 1.0, 1.0, 2.0])?;
    let (tx, ty) = (theta_map(&x, &t)?, theta_map(&y, &t)?);
    println!("thompson(x, y) = {:.6}, after the map {:.6}", metrics::thompson(&x, &y)?, metrics::thompson(&tx, &ty)?);

    for k in 0..4 {
        let g = t.pullback_revfunk(&RevFunkBoundary::one_hot(4, k))?;
        let f = t.pullback_funk(&FunkBoundary::one_finite(4, k))?;
        let f_text: Vec<String> = f.f().iter().map(ToString::to_string).collect();
        println!(
            "pullback of e{k}: {:?} (singleton {}), [{}] (singleton {})",
            g.g(),
            g.is_singleton(),
            f_text.join(", "),
            f.is_singleton()
        );
    }
    Ok(())
}
