//! The physical squeeze operator
//!
//! ```text
//! S = exp(p/(m+eps) a+^2) * (m^2-eps^2)^(-1/4)
//!     * exp(ln(1/sqrt(m^2-eps^2)) N) * exp(-p/(m-eps) a^2)
//! ```
//!
//! and extraction of the Bogoliubov coefficients of the conjugated
//! annihilator. `S` is invertible but not unitary, so the extraction is
//! formulated multiplicatively (`S a = lambda a S + mu a+ S`) instead of
//! forming `S a S^-1`: the middle factor alone has condition number
//! `(m^2-eps^2)^(dim-1)`, which makes any explicit inverse meaningless
//! in floating point at physical parameter values.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ladder_operators, matrix_exp, number_operator, FockOperator, TruncationConfig};
use crate::wave::PhysicalParams;

/// The factored form of the squeeze operator. All branch choices are
/// principal, so the factors continue analytically to `eps > m`.
#[derive(Clone, Copy, Debug)]
pub struct SqueezeFactors {
    /// Coefficient of `a+^2` in the left factor: `p/(m+eps)`.
    pub raising: Complex64,
    /// Coefficient of `N` in the middle factor: `ln(1/sqrt(m^2-eps^2))`.
    pub number_log: Complex64,
    /// Coefficient of `a^2` in the right factor: `-p/(m-eps)`.
    pub lowering: Complex64,
    /// Scalar `(m^2-eps^2)^(-1/4)`.
    pub prefactor: Complex64,
}

impl SqueezeFactors {
    /// Dense matrix product of the factors, each built with `matrix_exp`.
    pub fn matrix(&self, cfg: &TruncationConfig) -> Result<FockOperator> {
        let (a, adag) = ladder_operators(cfg);
        let up = matrix_exp(&adag.dot(&adag)?.scale(self.raising))?;
        let mid = matrix_exp(&number_operator(cfg).scale(self.number_log))?;
        let down = matrix_exp(&a.dot(&a)?.scale(self.lowering))?;
        Ok(up.dot(&mid.dot(&down)?)?.scale(self.prefactor))
    }

    /// Closed-form Bogoliubov pair of `S a S^-1 = lambda a + mu a+`:
    /// `lambda = exp(-number_log)`, `mu = -2 raising * lambda`.
    pub fn bogoliubov_closed_form(&self) -> Su11Coefficients {
        let lambda = (-self.number_log).exp();
        Su11Coefficients {
            lambda,
            mu: -2.0 * self.raising * lambda,
        }
    }
}

/// Build the squeeze factors from wave-equation parameters.
///
/// `m^2 = eps^2` makes both the ladder denominator and the quarter power
/// singular; that surface is handled by the disk-edge scan instead (see
/// the `limit-scan` command).
pub fn squeeze_from_physics(params: &PhysicalParams) -> Result<SqueezeFactors> {
    let (p, m, eps) = (params.momentum, params.mass, params.energy);
    if m == eps || m == -eps {
        return Err(Error::SingularParams(format!(
            "m^2 = eps^2 (m = {m}, eps = {eps}); approach this surface with the limit-scan command"
        )));
    }
    let z = Complex64::new(m * m - eps * eps, 0.0);
    Ok(SqueezeFactors {
        raising: Complex64::new(p / (m + eps), 0.0),
        number_log: -0.5 * z.ln(),
        lowering: Complex64::new(-p / (m - eps), 0.0),
        prefactor: (-0.25 * z.ln()).exp(),
    })
}

/// Linear coefficients of a transformed annihilator `lambda a + mu a+`.
#[derive(Clone, Copy, Debug)]
pub struct Su11Coefficients {
    pub lambda: Complex64,
    pub mu: Complex64,
}

impl Su11Coefficients {
    /// `|lambda|^2 - |mu|^2`; equals 1 exactly when the transformation
    /// comes from a unitary operator.
    pub fn su11_norm(&self) -> f64 {
        self.lambda.norm_sqr() - self.mu.norm_sqr()
    }
}

/// Bogoliubov data extracted from an operator conjugation.
#[derive(Clone, Copy, Debug)]
pub struct BogoliubovExtraction {
    /// From `S a = lambda a S + mu a+ S`.
    pub coefficients: Su11Coefficients,
    /// Dual pair from `S a+ = lambda_dual a+ S + mu_dual a S`.
    pub dual: Su11Coefficients,
    /// Largest entry of `S a - lambda a S - mu a+ S` on the fit block.
    pub residual: f64,
    /// Largest entry of `S a` on the fit block, the scale of the fit.
    pub scale: f64,
    /// `lambda * lambda_dual - mu * mu_dual`. Conjugation by any
    /// invertible operator preserves the ladder commutator, which pins
    /// this determinant to 1; unitarity would additionally force
    /// `|lambda|^2 - |mu|^2 = 1`.
    pub symplectic_det: Complex64,
}

/// Extract `(lambda, mu)` with `S a S^-1 = lambda a + mu a+` by solving
/// the multiplicative form `S a ~ lambda (a S) + mu (a+ S)` in least
/// squares, then the dual pair from `S a+`.
///
/// The fit runs over the leading quarter of the basis: when `S` itself
/// came out of a dense matrix exponential its upper-index entries carry
/// truncation pollution that decays only toward low indices (measured
/// clean below `dim/3` for moderate squeezing), so the leading quarter
/// is the block where the conjugation identity is trustworthy at finite
/// dimension.
///
/// Errors with `NotBogoliubov` when the fit residual exceeds the
/// scale-aware tolerance.
pub fn extract_bogoliubov(
    s: &FockOperator,
    cfg: &TruncationConfig,
) -> Result<BogoliubovExtraction> {
    if s.dim() != cfg.dim() {
        return Err(Error::ShapeMismatch(s.dim(), cfg.dim()));
    }
    let (a, adag) = ladder_operators(cfg);
    let limit = (cfg.dim() / 4).max(2);

    let sa = s.dot(&a)?;
    let a_s = a.dot(s)?;
    let adag_s = adag.dot(s)?;
    let (coefficients, residual, scale) = fit_pair(&sa, &a_s, &adag_s, limit);

    if residual > cfg.tol() * scale.max(1.0) {
        return Err(Error::NotBogoliubov {
            residual,
            scale,
            tol: cfg.tol(),
        });
    }

    let sadag = s.dot(&adag)?;
    let (dual, _, _) = fit_pair(&sadag, &adag_s, &a_s, limit);

    Ok(BogoliubovExtraction {
        coefficients,
        dual,
        residual,
        scale,
        symplectic_det: coefficients.lambda * dual.lambda - coefficients.mu * dual.mu,
    })
}

/// Least-squares fit of `target ~ x * basis1 + y * basis2` over the
/// leading `limit x limit` block, via the 2x2 normal equations.
fn fit_pair(
    target: &FockOperator,
    basis1: &FockOperator,
    basis2: &FockOperator,
    limit: usize,
) -> (Su11Coefficients, f64, f64) {
    let mut g11 = Complex64::default();
    let mut g12 = Complex64::default();
    let mut g22 = Complex64::default();
    let mut b1 = Complex64::default();
    let mut b2 = Complex64::default();
    for i in 0..limit {
        for j in 0..limit {
            let t = target.entry(i, j);
            let u = basis1.entry(i, j);
            let v = basis2.entry(i, j);
            g11 += u.conj() * u;
            g12 += u.conj() * v;
            g22 += v.conj() * v;
            b1 += u.conj() * t;
            b2 += v.conj() * t;
        }
    }
    let det = g11 * g22 - g12 * g12.conj();
    let (x, y) = if det.norm() > 0.0 {
        ((g22 * b1 - g12 * b2) / det, (g11 * b2 - g12.conj() * b1) / det)
    } else {
        (Complex64::default(), Complex64::default())
    };

    let mut residual = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..limit {
        for j in 0..limit {
            let t = target.entry(i, j);
            let fit = x * basis1.entry(i, j) + y * basis2.entry(i, j);
            residual = residual.max((t - fit).norm());
            scale = scale.max(t.norm());
        }
    }
    (Su11Coefficients { lambda: x, mu: y }, residual, scale)
}
