//! The four cone distances between two points, and the log map that turns
//! the Hilbert and Thompson distances into seminorms of a difference.
//!
//! cargo run --example distances

use horocone::isometry::log_map;
use horocone::{metrics, ConePoint};

fn main() -> horocone::Result<()> {
    let x = ConePoint::new(vec![1.0, 2.0, 4.0])?;
    let y = ConePoint::new(vec![3.0, 1.0, 1.0])?;

    println!("funk     {:.6}", metrics::funk(&x, &y)?);
    println!("revfunk  {:.6}", metrics::reverse_funk(&x, &y)?);
    println!("hilbert  {:.6}", metrics::hilbert(&x, &y)?);
    println!("thompson {:.6}", metrics::thompson(&x, &y)?);

    let w: Vec<f64> = log_map(&x).iter().zip(log_map(&y)).map(|(a, b)| a - b).collect();
    println!("|log x - log y|_H   {:.6}", metrics::hilbert_seminorm(&w));
    println!("|log x - log y|_inf {:.6}", metrics::sup_norm(&w));

    // the Hilbert distance ignores scaling, the Thompson distance does not
    let x2 = x.scale(10.0)?;
    println!("hilbert(10x, y)  {:.6}", metrics::hilbert(&x2, &y)?);
    println!("thompson(10x, y) {:.6}", metrics::thompson(&x2, &y)?);
    Ok(())
}
