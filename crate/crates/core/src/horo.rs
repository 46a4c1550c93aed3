//! Horofunction descriptors of the four cone geometries on `C+(K)`.
//!
//! With the basepoint `b = 1`:
//!
//! - reverse-Funk: `xi_R(h) = log max_k g_k / h_k`, `g : K -> [0, 1]`, `max g = 1`,
//!   `min g = 0`;
//! - Funk: `xi_F(h) = log max_k h_k / f_k`, `f : K -> [1, inf]`, `min f = 1`, and
//!   some `f_k = inf`;
//! - Hilbert: `xi_R + xi_F` where for every `k` either `g_k = 0` or `f_k = inf`;
//! - Thompson: the interior functions `r_x`, `f_x`, the pure points `xi_R`, `xi_F`,
//!   and the mixtures `[xi_R, xi_F, c] = (xi_R + min(c, 0)) v (xi_F - max(c, 0))`.
//!
//! On a finite `K` every function is continuous, so "not an interior point"
//! reduces to a zero entry of `g` and an infinite entry of `f`.
//!
//! Constructors validate, then canonicalize: `g` is divided by its maximum and
//! entries within tolerance of zero are snapped to zero; finite entries of `f`
//! are divided by their minimum. Equal functions therefore have equal
//! descriptors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cone::{gauge_raw, ConePoint};
use crate::error::{check_dim, Error, Result};
use crate::ext::ExtReal;
use crate::normed::SupNormBoundary;
use crate::TOL;

/// A violated descriptor invariant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum Violation {
    Empty,
    NotANumber { index: usize },
    DimensionMismatch { expected: usize, got: usize },
    GOutOfRange { index: usize, value: f64 },
    GMaxNotOne { max: f64 },
    GMinNotZero { min: f64 },
    FBelowOne { index: usize, value: f64 },
    FMinNotOne { min: Option<f64> },
    FNoInfiniteEntry,
    Incompatible { index: usize },
    InteriorNotPositive { index: usize },
    ShiftNotANumber,
    UvNegative { index: usize },
    UvInfimumNotZero { min: Option<f64> },
    UvBothFinite { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            Empty => write!(f, "descriptor has no entries"),
            NotANumber { index } => write!(f, "entry {index} is NaN"),
            DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            GOutOfRange { index, value } => write!(f, "g[{index}] = {value} must lie in [0, 1]"),
            GMaxNotOne { max } => write!(f, "max g must be 1 (got {max})"),
            GMinNotZero { min } => write!(f, "min g must be 0 (got {min})"),
            FBelowOne { index, value } => write!(f, "f[{index}] = {value} must lie in [1, inf]"),
            FMinNotOne { min: Some(m) } => write!(f, "min finite f must be 1 (got {m})"),
            FMinNotOne { min: None } => write!(f, "min finite f must be 1 (no finite entry)"),
            FNoInfiniteEntry => write!(f, "f has no infinite entry"),
            Incompatible { index } => write!(f, "g[{index}] > 0 requires f[{index}] = inf"),
            InteriorNotPositive { index } => {
                write!(f, "interior point coordinate {index} must be finite and > 0")
            }
            ShiftNotANumber => write!(f, "shift c is NaN"),
            UvNegative { index } => write!(f, "u[{index}] and v[{index}] must lie in [0, inf]"),
            UvInfimumNotZero { min: Some(m) } => write!(f, "min(min u, min v) must be 0 (got {m})"),
            UvInfimumNotZero { min: None } => write!(f, "min(min u, min v) must be 0 (all infinite)"),
            UvBothFinite { index } => write!(f, "u[{index}] or v[{index}] must be inf"),
        }
    }
}

/// Evaluation of a horofunction at raw coordinates.
pub trait Horofunction {
    fn dim(&self) -> usize;

    /// Value at `x`; `x` must have length [`Horofunction::dim`] (and be positive
    /// for cone geometries).
    fn value(&self, x: &[f64]) -> f64;

    fn eval_at(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        Ok(self.value(x))
    }
}

// ---------------------------------------------------------------------------
// validation of raw parameter vectors

pub fn validate_g(g: &[f64], tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.is_empty() {
        out.push(Violation::Empty);
        return out;
    }
    for (index, &value) in g.iter().enumerate() {
        if value.is_nan() {
            out.push(Violation::NotANumber { index });
        } else if !(-tol..=1.0 + tol).contains(&value) {
            out.push(Violation::GOutOfRange { index, value });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let max = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = g.iter().cloned().fold(f64::INFINITY, f64::min);
    if (max - 1.0).abs() > tol {
        out.push(Violation::GMaxNotOne { max });
    }
    if min.abs() > tol {
        out.push(Violation::GMinNotZero { min });
    }
    out
}

pub fn validate_f(f: &[ExtReal], tol: f64) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.is_empty() {
        out.push(Violation::Empty);
        return out;
    }
    for (index, v) in f.iter().enumerate() {
        if *v < ExtReal::Finite(1.0 - tol) {
            out.push(Violation::FBelowOne { index, value: v.to_f64() });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let min = f.iter().filter_map(|v| v.finite()).fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.min(v))));
    match min {
        Some(m) if (m - 1.0).abs() <= tol => {}
        other => out.push(Violation::FMinNotOne { min: other }),
    }
    if !f.iter().any(|v| v.is_pos_inf()) {
        out.push(Violation::FNoInfiniteEntry);
    }
    out
}

/// First index where `g_k > 0` and `f_k < inf`.
pub fn first_incompatibility(g: &[f64], f: &[ExtReal], tol: f64) -> Option<usize> {
    g.iter().zip(f).position(|(&gk, fk)| gk > tol && !fk.is_pos_inf())
}

/// Compatibility of raw profiles: every `k` has `g_k = 0` or `f_k = inf`.
///
/// Works on arbitrary non-negative profiles, not only valid boundary
/// descriptors (the discretized non-Busemann example uses positive `g` and
/// finite `f`).
pub fn compatible_profiles(g: &[f64], f: &[ExtReal]) -> Result<bool> {
    check_dim(g.len(), f.len())?;
    Ok(first_incompatibility(g, f, TOL).is_none())
}

fn validate_interior(z: &[f64]) -> Vec<Violation> {
    if z.is_empty() {
        return vec![Violation::Empty];
    }
    z.iter()
        .enumerate()
        .filter(|(_, v)| !(v.is_finite() && **v > 0.0))
        .map(|(index, _)| Violation::InteriorNotPositive { index })
        .collect()
}

fn validate_pair(g: &[f64], f: &[ExtReal], tol: f64) -> Vec<Violation> {
    let mut out = validate_g(g, tol);
    out.extend(validate_f(f, tol));
    if g.len() != f.len() {
        out.push(Violation::DimensionMismatch { expected: g.len(), got: f.len() });
    } else if let Some(index) = first_incompatibility(g, f, tol) {
        out.push(Violation::Incompatible { index });
    }
    out
}

fn into_result<T>(violations: Vec<Violation>, build: impl FnOnce() -> T) -> Result<T> {
    if violations.is_empty() {
        Ok(build())
    } else {
        Err(Error::InvalidDescriptor(violations))
    }
}

// ---------------------------------------------------------------------------
// reverse-Funk

/// Reverse-Funk Busemann point `log max_k g_k / h_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RevFunkBoundary {
    g: Vec<f64>,
}

impl RevFunkBoundary {
    pub fn new(g: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(g, TOL)
    }

    pub fn with_tolerance(g: Vec<f64>, tol: f64) -> Result<Self> {
        into_result(validate_g(&g, tol), || {
            let max = g.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let g = g.iter().map(|&v| if v <= tol { 0.0 } else { (v / max).min(1.0) }).collect();
            Self { g }
        })
    }

    /// The one-hot profile at `k`: a singleton.
    pub fn one_hot(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut g = vec![0.0; n];
        g[k] = 1.0;
        Self { g }
    }

    pub fn g(&self) -> &[f64] {
        &self.g
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.g.iter().enumerate().filter(|(_, v)| **v > 0.0).map(|(k, _)| k)
    }
}

impl Horofunction for RevFunkBoundary {
    fn dim(&self) -> usize {
        self.g.len()
    }

    fn value(&self, h: &[f64]) -> f64 {
        gauge_raw(&self.g, h).0.ln()
    }
}

pub fn eval_revfunk(xi: &RevFunkBoundary, h: &ConePoint) -> Result<f64> {
    xi.eval_at(h.coords())
}

// ---------------------------------------------------------------------------
// Funk

/// Funk Busemann point `log max_k h_k / f_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunkBoundary {
    f: Vec<ExtReal>,
}

impl FunkBoundary {
    pub fn new(f: Vec<ExtReal>) -> Result<Self> {
        Self::with_tolerance(f, TOL)
    }

    pub fn with_tolerance(f: Vec<ExtReal>, tol: f64) -> Result<Self> {
        into_result(validate_f(&f, tol), || {
            let min = f.iter().filter_map(|v| v.finite()).fold(f64::INFINITY, f64::min);
            let f = f
                .iter()
                .map(|v| match v {
                    ExtReal::Finite(x) => ExtReal::Finite((x / min).max(1.0)),
                    other => *other,
                })
                .collect();
            Self { f }
        })
    }

    /// Convenience constructor where `f64::INFINITY` marks infinite entries.
    pub fn from_f64(f: &[f64]) -> Result<Self> {
        if f.iter().any(|v| v.is_nan()) {
            let index = f.iter().position(|v| v.is_nan()).unwrap();
            return Err(Error::InvalidDescriptor(vec![Violation::NotANumber { index }]));
        }
        Self::new(f.iter().map(|&v| ExtReal::new(v)).collect())
    }

    /// `f_k = 1`, every other entry infinite: a singleton.
    pub fn one_finite(n: usize, k: usize) -> Self {
        assert!(k < n);
        let mut f = vec![ExtReal::PosInf; n];
        f[k] = ExtReal::ONE;
        Self { f }
    }

    pub fn f(&self) -> &[ExtReal] {
        &self.f
    }

    pub fn finite_support(&self) -> impl Iterator<Item = usize> + '_ {
        self.f.iter().enumerate().filter(|(_, v)| v.is_finite()).map(|(k, _)| k)
    }
}

impl Horofunction for FunkBoundary {
    fn dim(&self) -> usize {
        self.f.len()
    }

    fn value(&self, h: &[f64]) -> f64 {
        let m = h.iter().zip(&self.f).filter_map(|(hk, fk)| fk.finite().map(|f| hk / f)).fold(0.0_f64, f64::max);
        m.ln()
    }
}

pub fn eval_funk(xi: &FunkBoundary, h: &ConePoint) -> Result<f64> {
    xi.eval_at(h.coords())
}

// ---------------------------------------------------------------------------
// Hilbert

pub fn is_compatible(g: &RevFunkBoundary, f: &FunkBoundary) -> bool {
    g.g.len() == f.f.len() && first_incompatibility(&g.g, &f.f, 0.0).is_none()
}

/// Hilbert Busemann point `xi_R + xi_F` with a compatible pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertBoundary {
    rev: RevFunkBoundary,
    fun: FunkBoundary,
}

impl HilbertBoundary {
    pub fn new(rev: RevFunkBoundary, fun: FunkBoundary) -> Result<Self> {
        check_dim(rev.dim(), fun.dim())?;
        match first_incompatibility(&rev.g, &fun.f, 0.0) {
            Some(k) => Err(Error::Incompatible(k)),
            None => Ok(Self { rev, fun }),
        }
    }

    pub fn from_parts(g: Vec<f64>, f: Vec<ExtReal>) -> Result<Self> {
        into_result(validate_pair(&g, &f, TOL), || ())?;
        Self::new(RevFunkBoundary::new(g)?, FunkBoundary::new(f)?)
    }

    pub fn rev(&self) -> &RevFunkBoundary {
        &self.rev
    }

    pub fn fun(&self) -> &FunkBoundary {
        &self.fun
    }
}

impl Horofunction for HilbertBoundary {
    fn dim(&self) -> usize {
        self.rev.dim()
    }

    fn value(&self, h: &[f64]) -> f64 {
        self.rev.value(h) + self.fun.value(h)
    }
}

pub fn eval_hilbert(xi: &HilbertBoundary, h: &ConePoint) -> Result<f64> {
    xi.eval_at(h.coords())
}

// ---------------------------------------------------------------------------
// Thompson

/// Thompson Busemann points.
///
/// Interior variants are stored projectively normalized (`max z = 1` for
/// `RevInterior`, `min z = 1` for `FunkInterior`); the shift of `Mixed` is
/// always finite, infinite shifts collapse to `Rev` (`+inf`) or `Funk` (`-inf`).
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum ThompsonBoundary {
    /// `r_z(h) = log M(z/h) / M(z/b)`.
    RevInterior {
        z: ConePoint,
    },
    /// `f_z(h) = log M(h/z) / M(b/z)`.
    FunkInterior {
        z: ConePoint,
    },
    Rev {
        rev: RevFunkBoundary,
    },
    Funk {
        fun: FunkBoundary,
    },
    Mixed {
        rev: RevFunkBoundary,
        fun: FunkBoundary,
        c: f64,
    },
}

impl ThompsonBoundary {
    pub fn rev_interior(z: &ConePoint) -> Self {
        let max = z.coords().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        ThompsonBoundary::RevInterior { z: normalized(z, max) }
    }

    pub fn funk_interior(z: &ConePoint) -> Self {
        let min = z.coords().iter().cloned().fold(f64::INFINITY, f64::min);
        ThompsonBoundary::FunkInterior { z: normalized(z, min) }
    }

    /// `[xi_R, xi_F, c]`; `c = +inf` gives `xi_R`, `c = -inf` gives `xi_F`.
    pub fn mixed(rev: RevFunkBoundary, fun: FunkBoundary, c: ExtReal) -> Result<Self> {
        check_dim(rev.dim(), fun.dim())?;
        if let Some(k) = first_incompatibility(&rev.g, &fun.f, 0.0) {
            return Err(Error::Incompatible(k));
        }
        Ok(match c {
            ExtReal::PosInf => ThompsonBoundary::Rev { rev },
            ExtReal::NegInf => ThompsonBoundary::Funk { fun },
            ExtReal::Finite(c) => ThompsonBoundary::Mixed { rev, fun, c },
        })
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ThompsonBoundary::RevInterior { .. } => "rev-interior",
            ThompsonBoundary::FunkInterior { .. } => "funk-interior",
            ThompsonBoundary::Rev { .. } => "rev",
            ThompsonBoundary::Funk { .. } => "funk",
            ThompsonBoundary::Mixed { .. } => "mixed",
        }
    }
}

fn normalized(z: &ConePoint, by: f64) -> ConePoint {
    ConePoint::new(z.coords().iter().map(|v| v / by).collect()).expect("scaling keeps positivity")
}

impl Horofunction for ThompsonBoundary {
    fn dim(&self) -> usize {
        match self {
            ThompsonBoundary::RevInterior { z } | ThompsonBoundary::FunkInterior { z } => z.len(),
            ThompsonBoundary::Rev { rev } | ThompsonBoundary::Mixed { rev, .. } => rev.dim(),
            ThompsonBoundary::Funk { fun } => fun.dim(),
        }
    }

    fn value(&self, h: &[f64]) -> f64 {
        match self {
            // z is normalized so that M(z/b) = 1 and M(b/z) = 1
            ThompsonBoundary::RevInterior { z } => gauge_raw(z.coords(), h).0.ln(),
            ThompsonBoundary::FunkInterior { z } => gauge_raw(h, z.coords()).0.ln(),
            ThompsonBoundary::Rev { rev } => rev.value(h),
            ThompsonBoundary::Funk { fun } => fun.value(h),
            ThompsonBoundary::Mixed { rev, fun, c } => (rev.value(h) + c.min(0.0)).max(fun.value(h) - c.max(0.0)),
        }
    }
}

pub fn eval_thompson(xi: &ThompsonBoundary, h: &ConePoint) -> Result<f64> {
    xi.eval_at(h.coords())
}

// ---------------------------------------------------------------------------
// raw descriptors, as read from documents

/// A boundary descriptor in raw, unvalidated form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Descriptor {
    RevFunk { g: Vec<f64> },
    Funk { f: Vec<ExtReal> },
    Hilbert { g: Vec<f64>, f: Vec<ExtReal> },
    ThompsonRevInterior { z: Vec<f64> },
    ThompsonFunkInterior { z: Vec<f64> },
    ThompsonRev { g: Vec<f64> },
    ThompsonFunk { f: Vec<ExtReal> },
    ThompsonMixed { g: Vec<f64>, f: Vec<ExtReal>, c: ExtReal },
    SupNorm { u: Vec<ExtReal>, v: Vec<ExtReal> },
}

/// A validated descriptor of any geometry.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyBoundary {
    RevFunk(RevFunkBoundary),
    Funk(FunkBoundary),
    Hilbert(HilbertBoundary),
    Thompson(ThompsonBoundary),
    SupNorm(SupNormBoundary),
}

/// Every invariant the descriptor violates; empty iff it is valid.
pub fn validate(d: &Descriptor) -> Vec<Violation> {
    validate_with(d, TOL)
}

pub fn validate_with(d: &Descriptor, tol: f64) -> Vec<Violation> {
    match d {
        Descriptor::RevFunk { g } | Descriptor::ThompsonRev { g } => validate_g(g, tol),
        Descriptor::Funk { f } | Descriptor::ThompsonFunk { f } => validate_f(f, tol),
        Descriptor::Hilbert { g, f } => validate_pair(g, f, tol),
        Descriptor::ThompsonMixed { g, f, .. } => validate_pair(g, f, tol),
        Descriptor::ThompsonRevInterior { z } | Descriptor::ThompsonFunkInterior { z } => validate_interior(z),
        Descriptor::SupNorm { u, v } => crate::normed::validate_uv(u, v, tol),
    }
}

impl Descriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            Descriptor::RevFunk { .. } => "rev-funk",
            Descriptor::Funk { .. } => "funk",
            Descriptor::Hilbert { .. } => "hilbert",
            Descriptor::ThompsonRevInterior { .. }
            | Descriptor::ThompsonFunkInterior { .. }
            | Descriptor::ThompsonRev { .. }
            | Descriptor::ThompsonFunk { .. }
            | Descriptor::ThompsonMixed { .. } => "thompson",
            Descriptor::SupNorm { .. } => "sup-norm",
        }
    }

    pub fn build(&self, tol: f64) -> Result<AnyBoundary> {
        into_result(validate_with(self, tol), || ())?;
        Ok(match self {
            Descriptor::RevFunk { g } => AnyBoundary::RevFunk(RevFunkBoundary::with_tolerance(g.clone(), tol)?),
            Descriptor::Funk { f } => AnyBoundary::Funk(FunkBoundary::with_tolerance(f.clone(), tol)?),
            Descriptor::Hilbert { g, f } => AnyBoundary::Hilbert(HilbertBoundary::new(
                RevFunkBoundary::with_tolerance(g.clone(), tol)?,
                FunkBoundary::with_tolerance(f.clone(), tol)?,
            )?),
            Descriptor::ThompsonRevInterior { z } => {
                AnyBoundary::Thompson(ThompsonBoundary::rev_interior(&ConePoint::new(z.clone())?))
            }
            Descriptor::ThompsonFunkInterior { z } => {
                AnyBoundary::Thompson(ThompsonBoundary::funk_interior(&ConePoint::new(z.clone())?))
            }
            Descriptor::ThompsonRev { g } => {
                AnyBoundary::Thompson(ThompsonBoundary::Rev { rev: RevFunkBoundary::with_tolerance(g.clone(), tol)? })
            }
            Descriptor::ThompsonFunk { f } => {
                AnyBoundary::Thompson(ThompsonBoundary::Funk { fun: FunkBoundary::with_tolerance(f.clone(), tol)? })
            }
            Descriptor::ThompsonMixed { g, f, c } => AnyBoundary::Thompson(ThompsonBoundary::mixed(
                RevFunkBoundary::with_tolerance(g.clone(), tol)?,
                FunkBoundary::with_tolerance(f.clone(), tol)?,
                *c,
            )?),
            Descriptor::SupNorm { u, v } => {
                AnyBoundary::SupNorm(SupNormBoundary::with_tolerance(u.clone(), v.clone(), tol)?)
            }
        })
    }
}

impl AnyBoundary {
    pub fn kind(&self) -> &'static str {
        match self {
            AnyBoundary::RevFunk(_) => "rev-funk",
            AnyBoundary::Funk(_) => "funk",
            AnyBoundary::Hilbert(_) => "hilbert",
            AnyBoundary::Thompson(_) => "thompson",
            AnyBoundary::SupNorm(_) => "sup-norm",
        }
    }

    fn as_horofunction(&self) -> &dyn Horofunction {
        match self {
            AnyBoundary::RevFunk(b) => b,
            AnyBoundary::Funk(b) => b,
            AnyBoundary::Hilbert(b) => b,
            AnyBoundary::Thompson(b) => b,
            AnyBoundary::SupNorm(b) => b,
        }
    }

    /// Evaluation at raw coordinates; cone geometries require a positive point.
    pub fn eval_point(&self, x: &[f64]) -> Result<f64> {
        if !matches!(self, AnyBoundary::SupNorm(_)) {
            ConePoint::new(x.to_vec())?;
        }
        self.eval_at(x)
    }

    /// The canonical descriptor of this boundary point.
    pub fn to_descriptor(&self) -> Descriptor {
        match self {
            AnyBoundary::RevFunk(b) => Descriptor::RevFunk { g: b.g.clone() },
            AnyBoundary::Funk(b) => Descriptor::Funk { f: b.f.clone() },
            AnyBoundary::Hilbert(b) => Descriptor::Hilbert { g: b.rev.g.clone(), f: b.fun.f.clone() },
            AnyBoundary::Thompson(t) => match t {
                ThompsonBoundary::RevInterior { z } => Descriptor::ThompsonRevInterior { z: z.coords().to_vec() },
                ThompsonBoundary::FunkInterior { z } => Descriptor::ThompsonFunkInterior { z: z.coords().to_vec() },
                ThompsonBoundary::Rev { rev } => Descriptor::ThompsonRev { g: rev.g.clone() },
                ThompsonBoundary::Funk { fun } => Descriptor::ThompsonFunk { f: fun.f.clone() },
                ThompsonBoundary::Mixed { rev, fun, c } => {
                    Descriptor::ThompsonMixed { g: rev.g.clone(), f: fun.f.clone(), c: ExtReal::Finite(*c) }
                }
            },
            AnyBoundary::SupNorm(b) => Descriptor::SupNorm { u: b.u().to_vec(), v: b.v().to_vec() },
        }
    }
}

impl Horofunction for AnyBoundary {
    fn dim(&self) -> usize {
        self.as_horofunction().dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.as_horofunction().value(x)
    }
}
