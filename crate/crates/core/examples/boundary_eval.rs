//! Evaluating Busemann points of each geometry, and rejecting descriptors
//! that violate their invariants.
//!
//! cargo run --example boundary_eval

use horocone::horo::{validate, Descriptor};
use horocone::{
    ConePoint, ExtReal, FunkBoundary, HilbertBoundary, Horofunction, RevFunkBoundary, SupNormBoundary, ThompsonBoundary,
};

const INF: f64 = f64::INFINITY;

fn ext(v: &[f64]) -> Vec<ExtReal> {
    v.iter().map(|&x| ExtReal::new(x)).collect()
}

fn main() -> horocone::Result<()> {
    let g = RevFunkBoundary::new(vec![1.0, 0.5, 0.0])?;
    let f = FunkBoundary::new(ext(&[INF, 1.0, 2.0]))?;
    let h = HilbertBoundary::from_parts(vec![1.0, 0.0, 0.0], ext(&[INF, 1.0, 2.0]))?;
    let t = ThompsonBoundary::mixed(h.rev().clone(), h.fun().clone(), ExtReal::new(0.5))?;
    let s = SupNormBoundary::from_f64(&[0.0, f64::INFINITY, 1.0], &[f64::INFINITY, 2.0, f64::INFINITY])?;

    let x = ConePoint::new(vec![2.0, 1.0, 3.0])?;
    println!("rev-funk  {:+.6}", g.eval_at(x.coords())?);
    println!("funk      {:+.6}", f.eval_at(x.coords())?);
    println!("hilbert   {:+.6}", h.eval_at(x.coords())?);
    println!("thompson  {:+.6}", t.eval_at(x.coords())?);
    println!("sup-norm  {:+.6}", s.eval_at(&[0.7, -0.2, 1.5])?);

    for bad in [
        Descriptor::RevFunk { g: vec![1.0, 0.5] },
        Descriptor::Funk { f: ext(&[1.0, 2.0]) },
        Descriptor::Hilbert { g: vec![1.0, 0.0], f: ext(&[1.0, INF]) },
    ] {
        let msgs: Vec<String> = validate(&bad).iter().map(ToString::to_string).collect();
        println!("{}: {}", bad.kind(), msgs.join("; "));
    }
    Ok(())
}
