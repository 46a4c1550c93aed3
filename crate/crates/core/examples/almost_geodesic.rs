//! Nets converging to a Hilbert Busemann point: the almost-geodesic check in
//! each geometry, and the detour cost read off along the net.
//!
//! cargo run --example almost_geodesic

use horocone::detour::detour_hilbert;
use horocone::nets::{approach_hilbert, check_almost_geodesic, detour_cost_along_net};
use horocone::{ExtReal, FiniteNet, HilbertBoundary, MetricTag};

const INF: f64 = f64::INFINITY;

fn ext(v: &[f64]) -> Vec<ExtReal> {
    v.iter().map(|&x| ExtReal::new(x)).collect()
}

fn main() -> horocone::Result<()> {
    let xi = HilbertBoundary::from_parts(vec![1.0, 0.0, 0.0], ext(&[INF, 1.0, 2.0]))?;
    let eta = HilbertBoundary::from_parts(vec![1.0, 0.0, 0.0], ext(&[INF, 3.0, 1.0]))?;
    let far = HilbertBoundary::from_parts(vec![0.0, 1.0, 0.0], ext(&[1.0, INF, INF]))?;

    let net = approach_hilbert(&xi, 2000)?.with_burn_in(1000);
    for metric in [MetricTag::Hilbert, MetricTag::Funk, MetricTag::ReverseFunk] {
        let view = FiniteNet::new(net.points().to_vec(), metric)?.with_burn_in(net.burn_in());
        let r = check_almost_geodesic(&view, 1e-6)?;
        println!("{:>8}: holds={} worst defect {:.2e}", metric.name(), r.holds, r.worst_defect);
    }

    let long = approach_hilbert(&xi, 10_000)?;
    let along = detour_cost_along_net(&long, &eta)?;
    let closed = detour_hilbert(&xi, &eta)?.cost_forward;
    println!("H(xi, eta): net {:.6}, closed form {:.6}", along.value, closed);
    let diverging = detour_cost_along_net(&long, &far)?;
    println!("H(xi, far): net {} (trace {:?})", diverging.value, diverging.trace);
    Ok(())
}
