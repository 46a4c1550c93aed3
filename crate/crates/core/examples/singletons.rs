//! The singleton Busemann points in dimension 3: the one-hot and one-finite
//! descriptors, and their sup-norm counterparts.
//!
//! cargo run --example singletons

use horocone::normed::normed_singletons;
use horocone::{Busemann, ExtReal, FunkBoundary, HilbertBoundary, RevFunkBoundary};

fn show(v: &[ExtReal]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn main() -> horocone::Result<()> {
    let n = 3;
    for k in 0..n {
        let g = RevFunkBoundary::one_hot(n, k);
        let f = FunkBoundary::one_finite(n, k);
        println!(
            "rev-funk {:?} singleton={}  funk {} singleton={}",
            g.g(),
            g.is_singleton(),
            show(f.f()),
            f.is_singleton()
        );
    }
    for k in 0..n {
        for j in (0..n).filter(|&j| j != k) {
            let h = HilbertBoundary::new(RevFunkBoundary::one_hot(n, k), FunkBoundary::one_finite(n, j))?;
            println!("hilbert g=e{k} f=e{j}: singleton={}", h.is_singleton());
        }
    }
    for s in normed_singletons(n) {
        println!("sup-norm u={} v={}: singleton={}", show(s.u()), show(s.v()), s.is_singleton());
    }
    let wide = RevFunkBoundary::new(vec![1.0, 0.5, 0.0])?;
    println!("rev-funk {:?}: singleton={}", wide.g(), wide.is_singleton());
    Ok(())
}
