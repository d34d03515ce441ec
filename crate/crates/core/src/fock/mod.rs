//! Truncated Fock-space substrate: ladder operators as dense complex
//! matrices, states as coefficient vectors, commutators, inner products
//! and a series matrix exponential.
//!
//! Infinite-dimensional operator identities survive truncation only away
//! from the top levels, so every identity check in this crate goes
//! through [`interior_equal`], which compares matrices on the block with
//! both indices below `dim - margin`.

mod expm;
pub mod linalg;

pub use expm::matrix_exp;

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DIM: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MARGIN: usize = 2;

/// State-producing operations report the relative coefficient mass in
/// the top quarter of the basis and refuse to proceed above this.
pub const TAIL_THRESHOLD: f64 = 1e-10;

/// Truncation parameters shared by all operations: retained dimension,
/// default comparison tolerance and the interior margin excluded from
/// edge-sensitive comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationConfig {
    dim: usize,
    tol: f64,
    interior_margin: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            dim: DEFAULT_DIM,
            tol: DEFAULT_TOL,
            interior_margin: DEFAULT_MARGIN,
        }
    }
}

impl TruncationConfig {
    pub fn new(dim: usize, tol: f64, interior_margin: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Config(format!("dim must be at least 2, got {dim}")));
        }
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::Config(format!("tol must be non-negative, got {tol}")));
        }
        if interior_margin >= dim {
            return Err(Error::Config(format!(
                "interior margin {interior_margin} must be smaller than dim {dim}"
            )));
        }
        Ok(Self { dim, tol, interior_margin })
    }

    pub fn with_dim(dim: usize) -> Result<Self> {
        Self::new(dim, DEFAULT_TOL, DEFAULT_MARGIN.min(dim - 1))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn interior_margin(&self) -> usize {
        self.interior_margin
    }
}

/// A state in the truncated number basis: `coeffs[n]` is `<n|psi>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    coeffs: Array1<Complex64>,
}

impl FockState {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Config("a state needs at least one coefficient".into()));
        }
        Ok(Self { coeffs: Array1::from_vec(coeffs) })
    }

    pub fn zero(dim: usize) -> Self {
        Self { coeffs: Array1::zeros(dim) }
    }

    /// The number state `|n>` embedded in a `dim`-dimensional space.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::Config(format!("basis index {n} outside dim {dim}")));
        }
        let mut coeffs = Array1::zeros(dim);
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(Self { coeffs })
    }

    pub fn vacuum(dim: usize) -> Self {
        Self::basis(dim, 0).expect("dim >= 1")
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        self.coeffs.as_slice().expect("contiguous")
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Relative coefficient mass at levels `n >= fraction * dim`.
    pub fn tail_mass(&self, fraction: f64) -> f64 {
        let norm_sqr = self.norm_sqr();
        if norm_sqr == 0.0 {
            return 0.0;
        }
        let start = ((fraction * self.dim() as f64).ceil() as usize).min(self.dim());
        let tail: f64 = self.coeffs.iter().skip(start).map(|c| c.norm_sqr()).sum();
        tail / norm_sqr
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { coeffs: self.coeffs.mapv(|c| c * z) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(self.dim(), other.dim()));
        }
        Ok(Self { coeffs: &self.coeffs + &other.coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(self.dim(), other.dim()));
        }
        Ok(Self { coeffs: &self.coeffs - &other.coeffs })
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroState);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Largest coefficient difference against `other`.
    pub fn max_coeff_deviation(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

/// `<phi|psi>` with the convention of conjugating the first argument.
pub fn inner(phi: &FockState, psi: &FockState) -> Result<Complex64> {
    if phi.dim() != psi.dim() {
        return Err(Error::ShapeMismatch(phi.dim(), psi.dim()));
    }
    Ok(phi
        .coeffs
        .iter()
        .zip(psi.coeffs.iter())
        .map(|(p, q)| p.conj() * q)
        .sum())
}

/// A dense operator on the truncated space: `entries[[m, n]] = <m|O|n>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    entries: Array2<Complex64>,
}

impl FockOperator {
    pub fn from_array(entries: Array2<Complex64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::ShapeMismatch(entries.nrows(), entries.ncols()));
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self { entries: Array2::zeros((dim, dim)) }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: Array2::from_diag_elem(dim, Complex64::new(1.0, 0.0)),
        }
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut entries = Array2::zeros((values.len(), values.len()));
        for (n, v) in values.iter().enumerate() {
            entries[[n, n]] = *v;
        }
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.entries[[m, n]]
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { entries: self.entries.mapv(|e| e * z) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: &self.entries + &other.entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: &self.entries - &other.entries })
    }

    /// Matrix product `self * other`.
    pub fn dot(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self { entries: self.entries.dot(&other.entries) })
    }

    pub fn apply(&self, state: &FockState) -> Result<FockState> {
        if self.dim() != state.dim() {
            return Err(Error::ShapeMismatch(self.dim(), state.dim()));
        }
        Ok(FockState { coeffs: self.entries.dot(&state.coeffs) })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { entries: self.entries.t().mapv(|z| z.conj()) }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::ShapeMismatch(self.dim(), other.dim()));
        }
        Ok(())
    }
}

/// Annihilation and creation matrices: `a[n-1][n] = sqrt(n)`, and the
/// creator is exactly the conjugate transpose.
pub fn ladder_operators(cfg: &TruncationConfig) -> (FockOperator, FockOperator) {
    let dim = cfg.dim();
    let mut a = Array2::zeros((dim, dim));
    for n in 1..dim {
        a[[n - 1, n]] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let a = FockOperator { entries: a };
    let adag = a.adjoint();
    (a, adag)
}

/// Exact integer diagonal `diag(0, 1, ..., dim-1)`; agrees with the
/// product `a+ a` to rounding on every entry.
pub fn number_operator(cfg: &TruncationConfig) -> FockOperator {
    let values: Vec<Complex64> = (0..cfg.dim())
        .map(|n| Complex64::new(n as f64, 0.0))
        .collect();
    FockOperator::diagonal(&values)
}

/// `[X, Y] = XY - YX`.
pub fn commutator(x: &FockOperator, y: &FockOperator) -> Result<FockOperator> {
    x.dot(y)?.sub(&y.dot(x)?)
}

/// Result of an interior-block comparison.
///
/// `max_deviation` is the largest absolute entry difference on the block
/// with both indices below `dim - margin`; `scale` is the largest entry
/// magnitude of either operand on that block. The pass criterion is
/// scale-aware, `max_deviation <= tol * max(1, scale)`, so comparisons
/// stay meaningful for exponentials whose interior entries are large.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct InteriorReport {
    pub pass: bool,
    pub max_deviation: f64,
    pub scale: f64,
    pub margin: usize,
    pub tol: f64,
}

pub fn interior_equal(
    x: &FockOperator,
    y: &FockOperator,
    margin: usize,
    tol: f64,
) -> Result<InteriorReport> {
    if x.dim() != y.dim() {
        return Err(Error::ShapeMismatch(x.dim(), y.dim()));
    }
    if margin >= x.dim() {
        return Err(Error::Config(format!(
            "margin {margin} must be smaller than dim {}",
            x.dim()
        )));
    }
    let limit = x.dim() - margin;
    let mut max_deviation = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..limit {
        for j in 0..limit {
            let xe = x.entries[[i, j]];
            let ye = y.entries[[i, j]];
            max_deviation = max_deviation.max((xe - ye).norm());
            scale = scale.max(xe.norm()).max(ye.norm());
        }
    }
    Ok(InteriorReport {
        pass: max_deviation <= tol * scale.max(1.0),
        max_deviation,
        scale,
        margin,
        tol,
    })
}

/// The two-component object `(a, a+)` with its canonical bracket
/// `[A_1, A_2] = +1` on the interior block.
#[derive(Clone, Debug)]
pub struct SpinorOperator {
    pub upper: FockOperator,
    pub lower: FockOperator,
}

impl SpinorOperator {
    pub fn new(cfg: &TruncationConfig) -> Self {
        let (a, adag) = ladder_operators(cfg);
        Self { upper: a, lower: adag }
    }

    /// Reports for `[upper, lower] - 1`, `[upper, upper]` and
    /// `[lower, lower]` on the interior block.
    pub fn bracket_reports(&self, margin: usize, tol: f64) -> Result<[InteriorReport; 3]> {
        let dim = self.upper.dim();
        let id = FockOperator::identity(dim);
        let zero = FockOperator::zeros(dim);
        Ok([
            interior_equal(&commutator(&self.upper, &self.lower)?, &id, margin, tol)?,
            interior_equal(&commutator(&self.upper, &self.upper)?, &zero, margin, tol)?,
            interior_equal(&commutator(&self.lower, &self.lower)?, &zero, margin, tol)?,
        ])
    }
}
