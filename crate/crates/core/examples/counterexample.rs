//! An incompatible pair (g, f) on a grid of [0, 1]: a net decreasing to g is
//! almost geodesic for the reverse-Funk metric but not for the Funk metric,
//! although its Hilbert horofunctions still converge.
//!
//! cargo run --example counterexample [n]

use horocone::nets::{counterexample_harness, CounterexampleParams};

fn main() -> horocone::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let rep = counterexample_harness(&CounterexampleParams { n, ..Default::default() })?;
    println!("grid {:?}", rep.grid);
    println!("g    {:?}", rep.g);
    println!("f    {:?}", rep.f);
    println!("compatible: {}", rep.compatible);
    println!(
        "rev-funk almost geodesic (eps {:e}): {} over {} pairs",
        rep.revfunk.epsilon, rep.revfunk.holds, rep.revfunk.pairs_checked
    );
    println!(
        "funk almost geodesic (eps {:e}): {}, first violation at {:?}, worst defect {:.4} at {:?}",
        rep.funk.epsilon, rep.funk.holds, rep.funk.violating_pair, rep.funk.worst_defect, rep.funk.worst_pair
    );
    println!(
        "hilbert limit exists: {} (tail oscillation {:.1e})",
        rep.hilbert_limit.exists, rep.hilbert_limit.tail_oscillation
    );
    Ok(())
}
