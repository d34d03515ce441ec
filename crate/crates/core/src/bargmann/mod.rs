//! Bargmann representation and the metaplectic coherent-state families.
//!
//! A state maps to the entire function `f(z) = sum_n c_n z^n / sqrt(n!)`
//! with the Gaussian-weighted norm `int d^2z/pi e^(-|z|^2) |f|^2`. The
//! even/odd families live on disjoint parity sectors of the number
//! basis, are labeled by a point `omega` in the open unit disk, and
//! reduce to number states at `omega = 0`. The disk-edge scan quantifies
//! how the odd sector empties out per level as `|omega| -> 1`.

mod laguerre;

pub use laguerre::gauss_laguerre;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ladder_operators, FockState, TruncationConfig, TAIL_THRESHOLD};
use crate::wave::{PhysicalParams, SolutionParams};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Coefficients of an entire function `f(z) = sum f_n z^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BargmannFunction {
    coeffs: Vec<Complex64>,
}

impl BargmannFunction {
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::default();
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// `f_n = c_n / sqrt(n!)`. The factorial scale overflows `f64` beyond
/// n = 170, which bounds the usable dimension of the coefficient map.
pub fn to_bargmann(state: &FockState) -> Result<BargmannFunction> {
    let scales = sqrt_factorials(state.dim())?;
    Ok(BargmannFunction {
        coeffs: state
            .coeffs()
            .iter()
            .zip(&scales)
            .map(|(c, s)| c / s)
            .collect(),
    })
}

/// Inverse of [`to_bargmann`]: `c_n = f_n * sqrt(n!)`.
pub fn from_bargmann(f: &BargmannFunction) -> Result<FockState> {
    let scales = sqrt_factorials(f.coeffs.len())?;
    FockState::new(
        f.coeffs
            .iter()
            .zip(&scales)
            .map(|(c, s)| c * s)
            .collect(),
    )
}

fn sqrt_factorials(dim: usize) -> Result<Vec<f64>> {
    let mut scales = Vec::with_capacity(dim);
    let mut sqrt_fact = 1.0f64;
    for n in 0..dim {
        if n > 0 {
            sqrt_fact *= (n as f64).sqrt();
        }
        if !sqrt_fact.is_finite() {
            return Err(Error::Config(format!(
                "sqrt(n!) overflows f64 at n = {n}; the coefficient map is limited to dim <= 170"
            )));
        }
        scales.push(sqrt_fact);
    }
    Ok(scales)
}

/// Gaussian-weighted squared norm `int d^2z/pi e^(-|z|^2) |f(z)|^2` by
/// generalized Gauss-Laguerre quadrature in `t = |z|^2` and a uniform
/// periodic rule in the angle.
///
/// Exact (to rounding) for polynomial `f` of degree below `radial_nodes`
/// when `angular_nodes` exceeds twice the coefficient count; smaller
/// node counts are a configuration error.
pub fn quadrature_norm(
    f: &BargmannFunction,
    radial_nodes: usize,
    angular_nodes: usize,
) -> Result<f64> {
    let count = f.coeffs.len();
    if radial_nodes < count {
        return Err(Error::QuadratureConfig(format!(
            "{radial_nodes} radial nodes for {count} coefficients; need at least the coefficient count"
        )));
    }
    if angular_nodes <= 2 * count {
        return Err(Error::QuadratureConfig(format!(
            "{angular_nodes} angular nodes for {count} coefficients; need more than twice the coefficient count"
        )));
    }
    let (nodes, weights) = gauss_laguerre(radial_nodes);
    let mut total = 0.0f64;
    for (&t, &w) in nodes.iter().zip(&weights) {
        let r = t.sqrt();
        let mut angular_sum = 0.0f64;
        for j in 0..angular_nodes {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / angular_nodes as f64;
            let z = c64(r * theta.cos(), r * theta.sin());
            angular_sum += f.eval(z).norm_sqr();
        }
        total += w * angular_sum / angular_nodes as f64;
    }
    Ok(total)
}

/// Right eigenstate of the annihilator: `c_n = e^(-|z|^2/2) z^n/sqrt(n!)`.
pub fn bg_coherent(z: Complex64, cfg: &TruncationConfig) -> Result<FockState> {
    let dim = cfg.dim();
    let mut coeffs = Vec::with_capacity(dim);
    let mut term = c64((-z.norm_sqr() / 2.0).exp(), 0.0);
    coeffs.push(term);
    for n in 1..dim {
        term = term * z / (n as f64).sqrt();
        coeffs.push(term);
    }
    let state = FockState::new(coeffs)?;
    let tail = state.tail_mass(0.75);
    if tail > TAIL_THRESHOLD {
        return Err(Error::TruncationInsufficient(format!(
            "|z| = {} needs more than {dim} levels: tail mass {tail:e}",
            z.norm()
        )));
    }
    Ok(state)
}

/// Overlap of two coherent states,
/// `exp(-|z|^2/2 - |z'|^2/2 + conj(z') z)`.
pub fn bg_overlap(z_prime: Complex64, z: Complex64) -> Complex64 {
    (z_prime.conj() * z - z.norm_sqr() / 2.0 - z_prime.norm_sqr() / 2.0).exp()
}

/// Deviations of the two ladder correspondences on the coefficient
/// range below `dim - 1`: the creator acts as multiplication by `z`,
/// the annihilator as `d/dz`.
#[derive(Clone, Copy, Debug)]
pub struct LadderCheckReport {
    pub multiplication_deviation: f64,
    pub derivative_deviation: f64,
}

pub fn bargmann_ladder_check(f: &BargmannFunction) -> Result<LadderCheckReport> {
    let dim = f.coeffs.len();
    if dim < 2 {
        return Err(Error::Config("need at least two coefficients".into()));
    }
    let cfg = TruncationConfig::with_dim(dim)?;
    let state = from_bargmann(f)?;
    let (a, adag) = ladder_operators(&cfg);

    let raised = to_bargmann(&adag.apply(&state)?)?;
    let mut mult_dev = 0.0f64;
    for n in 1..dim - 1 {
        mult_dev = mult_dev.max((raised.coeffs[n] - f.coeffs[n - 1]).norm());
    }
    mult_dev = mult_dev.max(raised.coeffs[0].norm());

    let lowered = to_bargmann(&a.apply(&state)?)?;
    let mut deriv_dev = 0.0f64;
    for n in 0..dim - 1 {
        let expected = f.coeffs[n + 1] * (n as f64 + 1.0);
        deriv_dev = deriv_dev.max((lowered.coeffs[n] - expected).norm());
    }

    Ok(LadderCheckReport {
        multiplication_deviation: mult_dev,
        derivative_deviation: deriv_dev,
    })
}

/// A point strictly inside the unit disk labeling the coherent-state
/// families. The closed edge is rejected; the edge limit is reachable
/// only through [`edge_limit_scan`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskParam {
    omega: Complex64,
}

impl DiskParam {
    pub fn new(omega: Complex64) -> Result<Self> {
        if omega.norm() >= 1.0 {
            return Err(Error::OutOfDisk(format!(
                "|omega| = {} is not inside the open unit disk",
                omega.norm()
            )));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> Complex64 {
        self.omega
    }
}

fn check_state_tail(state: FockState, omega: Complex64) -> Result<FockState> {
    let tail = state.tail_mass(0.75);
    if tail > TAIL_THRESHOLD {
        return Err(Error::TruncationInsufficient(format!(
            "|omega| = {} too close to the edge for dim {}: tail mass {tail:e}",
            omega.norm(),
            state.dim()
        )));
    }
    Ok(state)
}

/// Even-sector family:
/// `<2m|psi> = (1-|omega|^2)^(1/4) (omega/2)^m sqrt((2m)!)/m!`,
/// odd components exactly zero. Unit norm in the untruncated space.
pub fn mp2_even_state(omega: &DiskParam, cfg: &TruncationConfig) -> Result<FockState> {
    let dim = cfg.dim();
    let w = omega.omega();
    let mut coeffs = vec![Complex64::default(); dim];
    let mut term = c64((1.0 - w.norm_sqr()).powf(0.25), 0.0);
    let mut level = 0usize;
    let mut m = 0.0f64;
    coeffs[0] = term;
    while level + 2 < dim {
        // ratio c_{2m+2}/c_{2m} = (omega/2) sqrt((2m+1)(2m+2))/(m+1)
        term = term * w / 2.0 * ((2.0 * m + 1.0) * (2.0 * m + 2.0)).sqrt() / (m + 1.0);
        coeffs[level + 2] = term;
        level += 2;
        m += 1.0;
    }
    check_state_tail(FockState::new(coeffs)?, w)
}

/// Odd-sector family:
/// `<2m+1|psi> = (1-|omega|^2)^(3/4) (omega/2)^m sqrt((2m+1)!)/m!`,
/// even components exactly zero.
pub fn mp2_odd_state(omega: &DiskParam, cfg: &TruncationConfig) -> Result<FockState> {
    let dim = cfg.dim();
    let w = omega.omega();
    let mut coeffs = vec![Complex64::default(); dim];
    if dim < 2 {
        return Err(Error::Config("odd family needs at least two levels".into()));
    }
    let mut term = c64((1.0 - w.norm_sqr()).powf(0.75), 0.0);
    let mut level = 1usize;
    let mut m = 0.0f64;
    coeffs[1] = term;
    while level + 2 < dim {
        // ratio c_{2m+3}/c_{2m+1} = (omega/2) sqrt((2m+2)(2m+3))/(m+1)
        term = term * w / 2.0 * ((2.0 * m + 2.0) * (2.0 * m + 3.0)).sqrt() / (m + 1.0);
        coeffs[level + 2] = term;
        level += 2;
        m += 1.0;
    }
    check_state_tail(FockState::new(coeffs)?, w)
}

/// Sum of the two sector families; squared norm 2 in the untruncated
/// space since the sectors are orthogonal and individually normalized.
pub fn mp2_full_state(omega: &DiskParam, cfg: &TruncationConfig) -> Result<FockState> {
    let even = mp2_even_state(omega, cfg)?;
    let odd = mp2_odd_state(omega, cfg)?;
    even.add(&odd)
}

/// Disk parameter from wave-equation parameters: `|omega|^2 = p^2/(m^2-eps^2)`
/// in the subcritical regime, with the phase convention
/// `arg(omega) = arg(alpha)` tying the squeeze direction to the disk label.
pub fn omega_from_physics(params: &PhysicalParams) -> Result<DiskParam> {
    let (p, m, eps) = (params.momentum, params.mass, params.energy);
    let gap = m * m - eps * eps;
    if gap <= 0.0 || p * p >= gap {
        return Err(Error::OutOfDisk(format!(
            "supercritical or critical parameters: p^2 = {}, m^2 - eps^2 = {gap}",
            p * p
        )));
    }
    let modulus = (p * p / gap).sqrt();
    let alpha = SolutionParams::from_physics(params).alpha;
    let phase = if alpha.norm() == 0.0 {
        c64(1.0, 0.0)
    } else {
        alpha / alpha.norm()
    };
    DiskParam::new(phase * modulus)
}

/// Number statistics of a state: `P(n) = |c_n|^2 / norm^2` with mean,
/// variance, Mandel Q and the odd/even sector ratio. Q and the ratio are
/// `None` where undefined (zero mean, empty even sector).
#[derive(Clone, Debug)]
pub struct NumberDistribution {
    pub probabilities: Vec<f64>,
    pub mean: f64,
    pub variance: f64,
    pub mandel_q: Option<f64>,
    pub odd_even_ratio: Option<f64>,
}

pub fn number_distribution(state: &FockState) -> Result<NumberDistribution> {
    let norm_sqr = state.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(Error::ZeroState);
    }
    let probabilities: Vec<f64> = state
        .coeffs()
        .iter()
        .map(|c| c.norm_sqr() / norm_sqr)
        .collect();
    let mean: f64 = probabilities
        .iter()
        .enumerate()
        .map(|(n, p)| n as f64 * p)
        .sum();
    let second: f64 = probabilities
        .iter()
        .enumerate()
        .map(|(n, p)| (n as f64) * (n as f64) * p)
        .sum();
    let variance = (second - mean * mean).max(0.0);
    let mandel_q = if mean > 0.0 {
        Some((variance - mean) / mean)
    } else {
        None
    };
    let even: f64 = probabilities.iter().step_by(2).sum();
    let odd: f64 = probabilities.iter().skip(1).step_by(2).sum();
    let odd_even_ratio = if even > 0.0 { Some(odd / even) } else { None };
    Ok(NumberDistribution {
        probabilities,
        mean,
        variance,
        mandel_q,
        odd_even_ratio,
    })
}

/// Probabilities below this floor are not turned into ratios; deep-tail
/// quotients of denormals would only report noise.
pub const RATIO_FLOOR: f64 = 1e-300;

/// One row of the edge-scan table: the per-level odd/even probability
/// ratio of the full state at a disk point.
#[derive(Clone, Copy, Debug)]
pub struct ScanRow {
    pub omega_abs: f64,
    pub level: usize,
    pub ratio: f64,
}

/// Per-point summary carried alongside the rows.
#[derive(Clone, Debug)]
pub struct ScanPoint {
    pub omega_abs: f64,
    pub mean: f64,
    pub mandel_q: Option<f64>,
    pub sector_ratio: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    pub points: Vec<ScanPoint>,
}

/// Scan a path of disk points toward the edge, reporting the per-level
/// ratio `P(2m+1)/P(2m)` of the full state together with the summary
/// diagnostics. Every point must satisfy the tail criterion at the
/// given truncation; results are ordered by input order.
pub fn edge_limit_scan(path: &[DiskParam], cfg: &TruncationConfig) -> Result<ScanTable> {
    let mut table = ScanTable::default();
    for omega in path {
        let state = mp2_full_state(omega, cfg)?;
        let dist = number_distribution(&state)?;
        let omega_abs = omega.omega().norm();
        for m in 0..(cfg.dim().saturating_sub(1)) / 2 {
            let even = dist.probabilities[2 * m];
            let odd = dist.probabilities[2 * m + 1];
            if even > RATIO_FLOOR && odd > RATIO_FLOOR {
                table.rows.push(ScanRow {
                    omega_abs,
                    level: m,
                    ratio: odd / even,
                });
            }
        }
        table.points.push(ScanPoint {
            omega_abs,
            mean: dist.mean,
            mandel_q: dist.mandel_q,
            sector_ratio: dist.odd_even_ratio,
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{inner, matrix_exp};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn number_states_map_to_monomials() {
        let state = FockState::basis(8, 3).unwrap();
        let f = to_bargmann(&state).unwrap();
        for (n, c) in f.coeffs().iter().enumerate() {
            if n == 3 {
                assert_abs_diff_eq!(c.re, 1.0 / 6.0f64.sqrt(), epsilon = 1e-15);
            } else {
                assert_eq!(*c, Complex64::default());
            }
        }
    }

    #[test]
    fn zero_state_maps_to_zero_function() {
        let f = to_bargmann(&FockState::zero(6)).unwrap();
        assert!(f.coeffs().iter().all(|c| *c == Complex64::default()));
    }

    #[test]
    fn quadrature_norm_of_low_number_states() {
        for n in [0usize, 2] {
            let f = to_bargmann(&FockState::basis(8, n).unwrap()).unwrap();
            let q = quadrature_norm(&f, 16, 20).unwrap();
            assert_abs_diff_eq!(q, 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn quadrature_matches_vector_norm_for_a_dense_polynomial() {
        let coeffs: Vec<Complex64> = (0..13)
            .map(|n| c64(0.3 - 0.05 * n as f64, 0.02 * n as f64))
            .collect();
        let state = FockState::new(coeffs).unwrap();
        let f = to_bargmann(&state).unwrap();
        let q = quadrature_norm(&f, 16, 32).unwrap();
        assert_abs_diff_eq!(q, state.norm_sqr(), epsilon = 1e-12);
    }

    #[test]
    fn insufficient_nodes_are_rejected() {
        let f = to_bargmann(&FockState::basis(12, 5).unwrap()).unwrap();
        assert!(matches!(
            quadrature_norm(&f, 8, 40),
            Err(Error::QuadratureConfig(_))
        ));
        assert!(matches!(
            quadrature_norm(&f, 16, 24),
            Err(Error::QuadratureConfig(_))
        ));
    }

    #[test]
    fn coherent_state_at_origin_is_the_vacuum() {
        let cfg = TruncationConfig::with_dim(16).unwrap();
        let state = bg_coherent(Complex64::default(), &cfg).unwrap();
        assert_eq!(state.coeff(0), c64(1.0, 0.0));
        assert!(state.coeffs().iter().skip(1).all(|c| *c == Complex64::default()));
    }

    #[test]
    fn coherent_overlap_matches_the_closed_form() {
        let cfg = TruncationConfig::with_dim(64).unwrap();
        let z = c64(1.0, 0.0);
        let zp = c64(0.0, 1.0);
        let numeric = inner(
            &bg_coherent(zp, &cfg).unwrap(),
            &bg_coherent(z, &cfg).unwrap(),
        )
        .unwrap();
        let closed = bg_overlap(zp, z);
        assert!((numeric - closed).norm() < 1e-12, "{numeric} vs {closed}");
    }

    #[test]
    fn coherent_state_is_a_ladder_eigenstate() {
        let cfg = TruncationConfig::with_dim(64).unwrap();
        let z = c64(0.8, 0.0);
        let state = bg_coherent(z, &cfg).unwrap();
        let (a, _) = ladder_operators(&cfg);
        let residual = a
            .apply(&state)
            .unwrap()
            .sub(&state.scale(z))
            .unwrap()
            .norm();
        assert!(residual < 1e-8, "residual {residual}");
    }

    #[test]
    fn excessive_amplitude_is_a_truncation_error() {
        let cfg = TruncationConfig::with_dim(8).unwrap();
        assert!(matches!(
            bg_coherent(c64(2.5, 0.0), &cfg),
            Err(Error::TruncationInsufficient(_))
        ));
    }

    #[test]
    fn ladder_correspondence_for_monomials() {
        // |0>: creator route gives f(z) = z.
        let f = to_bargmann(&FockState::basis(6, 0).unwrap()).unwrap();
        let report = bargmann_ladder_check(&f).unwrap();
        assert!(report.multiplication_deviation < 1e-15);
        assert!(report.derivative_deviation < 1e-15);

        // |3>: annihilator route gives 3 z^2 / sqrt(3!).
        let f = to_bargmann(&FockState::basis(8, 3).unwrap()).unwrap();
        let report = bargmann_ladder_check(&f).unwrap();
        assert!(report.multiplication_deviation < 1e-15);
        assert!(report.derivative_deviation < 1e-15);
    }

    #[test]
    fn even_family_basics() {
        let cfg = TruncationConfig::with_dim(64).unwrap();
        let at_zero = mp2_even_state(&DiskParam::new(Complex64::default()).unwrap(), &cfg).unwrap();
        assert_eq!(at_zero.coeff(0), c64(1.0, 0.0));
        assert!(at_zero.coeffs().iter().skip(1).all(|c| *c == Complex64::default()));

        let omega = DiskParam::new(c64(0.6, 0.0)).unwrap();
        let state = mp2_even_state(&omega, &cfg).unwrap();
        for n in (1..64).step_by(2) {
            assert_eq!(state.coeff(n), Complex64::default());
        }
        // Direct formula check at 2m = 4.
        let expected = 0.64f64.powf(0.25) * 0.3f64.powi(2) * 24.0f64.sqrt() / 2.0;
        assert_abs_diff_eq!(state.coeff(4).re, expected, epsilon = 1e-14);
    }

    #[test]
    fn odd_family_basics() {
        // The odd family carries a heavier tail than the even one; 0.6
        // needs 128 levels to clear the tail criterion.
        let cfg = TruncationConfig::with_dim(128).unwrap();
        let at_zero = mp2_odd_state(&DiskParam::new(Complex64::default()).unwrap(), &cfg).unwrap();
        assert_eq!(at_zero.coeff(1), c64(1.0, 0.0));
        assert_eq!(at_zero.norm_sqr(), 1.0);

        let omega = DiskParam::new(c64(0.6, 0.0)).unwrap();
        let state = mp2_odd_state(&omega, &cfg).unwrap();
        for n in (0..128).step_by(2) {
            assert_eq!(state.coeff(n), Complex64::default());
        }
    }

    #[test]
    fn full_state_splits_bitwise_into_its_sectors() {
        let cfg = TruncationConfig::with_dim(96).unwrap();
        let omega = DiskParam::new(c64(0.4, 0.15)).unwrap();
        let even = mp2_even_state(&omega, &cfg).unwrap();
        let odd = mp2_odd_state(&omega, &cfg).unwrap();
        let full = mp2_full_state(&omega, &cfg).unwrap();
        for n in 0..96 {
            let expected = if n % 2 == 0 { even.coeff(n) } else { odd.coeff(n) };
            assert_eq!(full.coeff(n), expected);
        }
    }

    #[test]
    fn family_norms_are_one_at_adequate_truncation() {
        let cfg = TruncationConfig::with_dim(128).unwrap();
        let omega = DiskParam::new(c64(0.6, 0.0)).unwrap();
        let even = mp2_even_state(&omega, &cfg).unwrap();
        let odd = mp2_odd_state(&omega, &cfg).unwrap();
        assert_abs_diff_eq!(even.norm(), 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(odd.norm(), 1.0, epsilon = 1e-10);
        let full = mp2_full_state(&omega, &cfg).unwrap();
        assert_abs_diff_eq!(full.norm_sqr(), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn edge_rejection_and_insufficient_truncation() {
        assert!(matches!(DiskParam::new(c64(1.0, 0.0)), Err(Error::OutOfDisk(_))));
        let cfg = TruncationConfig::with_dim(128).unwrap();
        let near_edge = DiskParam::new(c64(0.9, 0.0)).unwrap();
        assert!(matches!(
            mp2_even_state(&near_edge, &cfg),
            Err(Error::TruncationInsufficient(_))
        ));
    }

    #[test]
    fn even_state_matches_the_squeezed_vacuum() {
        // For real omega the even family is the normalized image of
        // exp(r/2 (a+^2 - a^2)) |0> with tanh r = omega.
        let cfg = TruncationConfig::with_dim(64).unwrap();
        let omega = 0.5f64;
        let r = omega.atanh();
        let (a, adag) = ladder_operators(&cfg);
        let x = adag
            .dot(&adag)
            .unwrap()
            .sub(&a.dot(&a).unwrap())
            .unwrap()
            .scale(c64(r / 2.0, 0.0));
        let squeezed = matrix_exp(&x)
            .unwrap()
            .apply(&FockState::vacuum(64))
            .unwrap()
            .normalized()
            .unwrap();
        let family = mp2_even_state(&DiskParam::new(c64(omega, 0.0)).unwrap(), &cfg).unwrap();
        let dev = squeezed.max_coeff_deviation(&family).unwrap();
        assert!(dev < 1e-8, "deviation {dev}");
    }

    #[test]
    fn omega_map_examples() {
        assert_eq!(
            omega_from_physics(&PhysicalParams::preset(0.0, 5.0, 3.0))
                .unwrap()
                .omega(),
            Complex64::default()
        );
        let omega = omega_from_physics(&PhysicalParams::preset(2.0, 5.0, 3.0)).unwrap();
        assert_abs_diff_eq!(omega.omega().re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(omega.omega().im, 0.0, epsilon = 1e-15);

        assert!(matches!(
            omega_from_physics(&PhysicalParams::preset(4.0, 5.0, 3.0)),
            Err(Error::OutOfDisk(_))
        ));
        assert!(matches!(
            omega_from_physics(&PhysicalParams::preset(1.0, 3.0, 3.0)),
            Err(Error::OutOfDisk(_))
        ));
    }

    #[test]
    fn omega_modulus_grows_monotonically_toward_the_edge() {
        let mut last = -1.0f64;
        for k in 1..20 {
            let p = 3.9 * k as f64 / 20.0;
            let omega = omega_from_physics(&PhysicalParams::preset(p, 5.0, 3.0)).unwrap();
            let modulus = omega.omega().norm();
            assert!(modulus > last);
            last = modulus;
        }
    }

    #[test]
    fn number_distribution_of_a_number_state() {
        let dist = number_distribution(&FockState::basis(8, 3).unwrap()).unwrap();
        assert_eq!(dist.probabilities[3], 1.0);
        assert_abs_diff_eq!(dist.mean, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.variance, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(dist.mandel_q.unwrap(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn family_means_match_the_generating_functions() {
        let cfg = TruncationConfig::with_dim(128).unwrap();
        let omega = DiskParam::new(c64(0.6, 0.0)).unwrap();
        let even = number_distribution(&mp2_even_state(&omega, &cfg).unwrap()).unwrap();
        assert_abs_diff_eq!(even.mean, 0.36 / 0.64, epsilon = 1e-10);

        let odd = number_distribution(&mp2_odd_state(&omega, &cfg).unwrap()).unwrap();
        assert_abs_diff_eq!(odd.mean, (1.0 + 2.0 * 0.36) / 0.64, epsilon = 1e-9);
    }

    #[test]
    fn zero_state_has_no_distribution() {
        assert!(matches!(
            number_distribution(&FockState::zero(4)),
            Err(Error::ZeroState)
        ));
    }

    #[test]
    fn per_level_edge_law_at_moderate_omega() {
        let cfg = TruncationConfig::with_dim(128).unwrap();
        let omega = DiskParam::new(c64(0.6, 0.0)).unwrap();
        let table = edge_limit_scan(&[omega], &cfg).unwrap();
        let one_minus = 1.0 - 0.36;
        for row in table.rows.iter().take(12) {
            let expected = one_minus * (2.0 * row.level as f64 + 1.0);
            assert_abs_diff_eq!(row.ratio, expected, epsilon = 1e-10);
        }
        // Both sector norms are 1: the total ratio stays 1.
        assert_abs_diff_eq!(table.points[0].sector_ratio.unwrap(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn scan_rejects_points_outside_the_disk() {
        assert!(DiskParam::new(c64(0.0, 1.2)).is_err());
    }

    proptest! {
        #[test]
        fn bargmann_roundtrip_is_a_floating_inverse(
            re in proptest::collection::vec(-1.0f64..1.0, 12),
            im in proptest::collection::vec(-1.0f64..1.0, 12),
        ) {
            let state = FockState::new(
                re.iter().zip(&im).map(|(&r, &i)| c64(r, i)).collect(),
            ).unwrap();
            let back = from_bargmann(&to_bargmann(&state).unwrap()).unwrap();
            for (x, y) in state.coeffs().iter().zip(back.coeffs()) {
                prop_assert!((x - y).norm() <= 4.0 * f64::EPSILON * x.norm().max(1.0));
            }
        }

        #[test]
        fn parity_purity_for_random_disk_points(re in -0.7f64..0.7, im in -0.35f64..0.35) {
            prop_assume!((re * re + im * im).sqrt() < 0.7);
            let cfg = TruncationConfig::with_dim(96).unwrap();
            let omega = DiskParam::new(c64(re, im)).unwrap();
            let even = mp2_even_state(&omega, &cfg).unwrap();
            let odd = mp2_odd_state(&omega, &cfg).unwrap();
            for n in 0..96 {
                if n % 2 == 1 {
                    prop_assert_eq!(even.coeff(n), Complex64::default());
                } else {
                    prop_assert_eq!(odd.coeff(n), Complex64::default());
                }
            }
        }

        #[test]
        fn ladder_correspondence_for_random_states(
            re in proptest::collection::vec(-1.0f64..1.0, 16),
        ) {
            let state = FockState::new(re.iter().map(|&r| c64(r, 0.3 * r)).collect()).unwrap();
            let f = to_bargmann(&state).unwrap();
            let report = bargmann_ladder_check(&f).unwrap();
            prop_assert!(report.multiplication_deviation < 1e-13);
            prop_assert!(report.derivative_deviation < 1e-13);
        }
    }
}
