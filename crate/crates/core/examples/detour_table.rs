//! Detour costs between Thompson Busemann points, and the parts they form.
//!
//! cargo run --example detour_table

use horocone::{Busemann, ExtReal, FunkBoundary, RevFunkBoundary, ThompsonBoundary};

const INF: f64 = f64::INFINITY;

fn main() -> horocone::Result<()> {
    let rev = |g: Vec<f64>| RevFunkBoundary::new(g).map(|rev| ThompsonBoundary::Rev { rev });
    let mixed = |g: Vec<f64>, f: &[f64], c: f64| {
        ThompsonBoundary::mixed(RevFunkBoundary::new(g)?, FunkBoundary::from_f64(f)?, ExtReal::new(c))
    };
    let points = [
        ("rev a", rev(vec![1.0, 0.5, 0.0])?),
        ("rev b", rev(vec![0.25, 1.0, 0.0])?),
        ("rev e0", rev(vec![1.0, 0.0, 0.0])?),
        ("mixed a", mixed(vec![1.0, 0.0, 0.0], &[INF, 1.0, 2.0], 0.5)?),
        ("mixed b", mixed(vec![1.0, 0.0, 0.0], &[INF, 2.0, 1.0], -1.0)?),
    ];

    print!("{:>9}", "H");
    for (name, _) in &points {
        print!("{name:>9}");
    }
    println!();
    for (name, a) in &points {
        print!("{name:>9}");
        for (_, b) in &points {
            let cell = match a.detour_cost(b) {
                ExtReal::Finite(v) => format!("{v:.3}"),
                other => other.to_string(),
            };
            print!("{cell:>9}");
        }
        println!("{}", if a.is_singleton() { "   singleton" } else { "" });
    }
    Ok(())
}
