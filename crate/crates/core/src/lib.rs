//! Funk, reverse-Funk, Hilbert and Thompson geometry on finite-dimensional cones.
//!
//! The crate works over a finite index set `K = {k_1, ..., k_n}`, so the cone of
//! positive functions on `K` is the open positive orthant of `R^n`. On top of the
//! four distances it builds the horofunction boundaries of each geometry as
//! explicit, parameterized descriptors:
//!
//! | Geometry      | Descriptor                | Parameters                         |
//! |---------------|---------------------------|------------------------------------|
//! | reverse-Funk  | [`RevFunkBoundary`]       | `g : K -> [0, 1]`, max 1, min 0    |
//! | Funk          | [`FunkBoundary`]          | `f : K -> [1, inf]`, some `inf`    |
//! | Hilbert       | [`HilbertBoundary`]       | compatible `(g, f)`                |
//! | Thompson      | [`ThompsonBoundary`]      | interior points, `g`, `f`, shift   |
//! | sup-norm      | [`SupNormBoundary`]       | `(u, v)` with `u v inf` everywhere |
//!
//! and provides detour costs, detour metrics, part/singleton classification,
//! discrete Legendre–Fenchel transforms, almost-geodesic nets and the
//! logarithmic isometries onto `(R^n, ||.||_inf)` and `(R^n / R 1, ||.||_H)`.
//!
//! ```
//! use horocone::{ConePoint, metrics};
//!
//! let x = ConePoint::new(vec![1.0, 2.0]).unwrap();
//! let y = ConePoint::new(vec![2.0, 1.0]).unwrap();
//! let d = metrics::hilbert(&x, &y).unwrap();
//! assert!((d - 4f64.ln()).abs() < 1e-12);
//! ```

pub mod cli;
pub mod cone;
pub mod detour;
pub mod error;
pub mod ext;
pub mod horo;
pub mod isometry;
pub mod metrics;
pub mod nets;
pub mod normed;

pub use cone::{basepoint, gauge, gauge_polyhedral, ConePoint, IndexSet, PolyhedralCone};
pub use detour::{Busemann, DetourResult};
pub use error::{Error, Result};
pub use ext::ExtReal;
pub use horo::{FunkBoundary, HilbertBoundary, Horofunction, RevFunkBoundary, ThompsonBoundary, Violation};
pub use nets::{FiniteNet, MetricTag};
pub use normed::{SignedVector, SupNormBoundary};

/// Absolute tolerance used for every comparison of computed reals.
pub const TOL: f64 = 1e-9;

/// Running suprema above this value are reported as `+inf`.
pub const DIVERGENCE_CAP: f64 = 1e12;
