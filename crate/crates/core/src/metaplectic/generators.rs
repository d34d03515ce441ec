//! The two equivalent generator triples of the non-compact algebra:
//!
//! ```text
//! T1 =  i/4 (a+^2 - a^2)
//! T2 = -1/4 (a+^2 + a^2)
//! T3 = -1/4 (aa+ + a+a)
//! ```
//!
//! and the bilinear form `L_i = ubar M_i v` with `ubar = (a+, a)`,
//! `v = (a, a+)^T` and the 2x2 kernels `M_1 = sigma3 sigma1 / 4`,
//! `M_2 = -sigma3 sigma2 / 4`, `M_3 = -sigma3^2 / 4` built from the
//! non-compact sigma triple. The equivalence `L_i = T_i` is checked
//! numerically on the interior block, never assumed.

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{commutator, interior_equal, ladder_operators, FockOperator, TruncationConfig};

type Mat2 = [[Complex64; 2]; 2];

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The sigma triple of the non-compact algebra, in textual order:
/// `sigma1 = i offdiag(1, 1)`, `sigma2 = offdiag(1, -1)`,
/// `sigma3 = diag(1, -1)`.
pub fn sigma_matrices() -> [Mat2; 3] {
    let zero = c64(0.0, 0.0);
    [
        [[zero, c64(0.0, 1.0)], [c64(0.0, 1.0), zero]],
        [[zero, c64(1.0, 0.0)], [c64(-1.0, 0.0), zero]],
        [[c64(1.0, 0.0), zero], [zero, c64(-1.0, 0.0)]],
    ]
}

fn mat2_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[c64(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn mat2_scale(x: &Mat2, s: Complex64) -> Mat2 {
    let mut out = *x;
    for row in &mut out {
        for entry in row {
            *entry *= s;
        }
    }
    out
}

fn mat2_sub(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[c64(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][j] - y[i][j];
        }
    }
    out
}

fn mat2_max_abs(x: &Mat2) -> f64 {
    x.iter()
        .flatten()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// `T1, T2, T3` built directly from ladder products.
pub fn metaplectic_generators(cfg: &TruncationConfig) -> [FockOperator; 3] {
    let (a, adag) = ladder_operators(cfg);
    let raising = adag.dot(&adag).expect("same dim");
    let lowering = a.dot(&a).expect("same dim");
    let sym = a
        .dot(&adag)
        .and_then(|x| x.add(&adag.dot(&a).expect("same dim")))
        .expect("same dim");
    [
        raising.sub(&lowering).expect("same dim").scale(c64(0.0, 0.25)),
        raising.add(&lowering).expect("same dim").scale(c64(-0.25, 0.0)),
        sym.scale(c64(-0.25, 0.0)),
    ]
}

/// `L_i = ubar M_i v` with the kernels assembled from 2x2 sigma products.
pub fn sannikov_generators(cfg: &TruncationConfig) -> [FockOperator; 3] {
    let (a, adag) = ladder_operators(cfg);
    let [s1, s2, s3] = sigma_matrices();
    let kernels = [
        mat2_scale(&mat2_mul(&s3, &s1), c64(0.25, 0.0)),
        mat2_scale(&mat2_mul(&s3, &s2), c64(-0.25, 0.0)),
        mat2_scale(&mat2_mul(&s3, &s3), c64(-0.25, 0.0)),
    ];

    let ubar = [&adag, &a];
    let v = [&a, &adag];
    kernels.map(|m| {
        let mut sum = FockOperator::zeros(cfg.dim());
        for (alpha, left) in ubar.iter().enumerate() {
            for (beta, right) in v.iter().enumerate() {
                let coeff = m[alpha][beta];
                if coeff != c64(0.0, 0.0) {
                    let term = left.dot(right).expect("same dim").scale(coeff);
                    sum = sum.add(&term).expect("same dim");
                }
            }
        }
        sum
    })
}

/// Deviation of `[l, ladder_alpha] - 1/2 sum_beta conj(sigma[alpha][beta]) ladder_beta`
/// on the interior block. The conjugated entries realize the mixed index
/// placement of the defining relation: it is the unique reading under
/// which the printed generator triple satisfies it.
pub fn defining_relation_deviation(
    l: &FockOperator,
    sigma: &Mat2,
    alpha: usize,
    cfg: &TruncationConfig,
) -> Result<f64> {
    let (a, adag) = ladder_operators(cfg);
    let ladder = [&a, &adag];
    let lhs = commutator(l, ladder[alpha])?;
    let mut rhs = FockOperator::zeros(cfg.dim());
    for (beta, op) in ladder.iter().enumerate() {
        let coeff = sigma[alpha][beta].conj() * 0.5;
        if coeff != c64(0.0, 0.0) {
            rhs = rhs.add(&op.scale(coeff))?;
        }
    }
    let report = interior_equal(&lhs, &rhs, cfg.interior_margin().max(2), cfg.tol())?;
    Ok(report.max_deviation)
}

/// Full report for the defining relation and the sigma wedge algebra.
#[derive(Clone, Debug)]
pub struct DefiningRelationReport {
    /// `relation_deviations[i][alpha]` for generator `i` against ladder
    /// component `alpha` (0 = a, 1 = a+).
    pub relation_deviations: [[f64; 2]; 3],
    /// Deviations of the three wedge relations
    /// `s1^s2 = -i s3`, `s3^s1 = i s2`, `s2^s3 = i s1`
    /// under the half-commutator `x^y = [x, y]/2`.
    pub sigma_wedge_deviations: [f64; 3],
}

impl DefiningRelationReport {
    pub fn max_relation_deviation(&self) -> f64 {
        self.relation_deviations
            .iter()
            .flatten()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn max_wedge_deviation(&self) -> f64 {
        self.sigma_wedge_deviations.iter().copied().fold(0.0, f64::max)
    }
}

pub fn check_defining_relation(cfg: &TruncationConfig) -> Result<DefiningRelationReport> {
    let sigmas = sigma_matrices();
    let generators = sannikov_generators(cfg);

    let mut relation_deviations = [[0.0f64; 2]; 3];
    for (i, row) in relation_deviations.iter_mut().enumerate() {
        for (alpha, slot) in row.iter_mut().enumerate() {
            *slot = defining_relation_deviation(&generators[i], &sigmas[i], alpha, cfg)?;
        }
    }

    let wedge = |x: &Mat2, y: &Mat2| -> Mat2 {
        mat2_scale(&mat2_sub(&mat2_mul(x, y), &mat2_mul(y, x)), c64(0.5, 0.0))
    };
    let [s1, s2, s3] = sigmas;
    let sigma_wedge_deviations = [
        mat2_max_abs(&mat2_sub(&wedge(&s1, &s2), &mat2_scale(&s3, c64(0.0, -1.0)))),
        mat2_max_abs(&mat2_sub(&wedge(&s3, &s1), &mat2_scale(&s2, c64(0.0, 1.0)))),
        mat2_max_abs(&mat2_sub(&wedge(&s2, &s3), &mat2_scale(&s1, c64(0.0, 1.0)))),
    ];

    Ok(DefiningRelationReport {
        relation_deviations,
        sigma_wedge_deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockState;
    use approx::assert_abs_diff_eq;

    #[test]
    fn t3_vacuum_expectation_is_minus_one_quarter() {
        let cfg = TruncationConfig::with_dim(8).unwrap();
        let [_, _, t3] = metaplectic_generators(&cfg);
        let vac = FockState::vacuum(8);
        let value = crate::fock::inner(&vac, &t3.apply(&vac).unwrap()).unwrap();
        assert_abs_diff_eq!(value.re, -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(value.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn t1_t2_have_zero_diagonal() {
        let cfg = TruncationConfig::with_dim(16).unwrap();
        let [t1, t2, _] = metaplectic_generators(&cfg);
        for n in 0..16 {
            assert_eq!(t1.entry(n, n), Complex64::default());
            assert_eq!(t2.entry(n, n), Complex64::default());
        }
    }

    #[test]
    fn generator_triples_agree_on_the_interior() {
        for dim in [16, 32, 64] {
            let cfg = TruncationConfig::with_dim(dim).unwrap();
            let t = metaplectic_generators(&cfg);
            let l = sannikov_generators(&cfg);
            for i in 0..3 {
                let report = interior_equal(&l[i], &t[i], 2, 1e-12).unwrap();
                assert!(
                    report.pass && report.max_deviation < 1e-12,
                    "dim {dim}, generator {i}: deviation {}",
                    report.max_deviation
                );
            }
        }
    }

    #[test]
    fn l3_matches_its_printed_form() {
        let cfg = TruncationConfig::with_dim(20).unwrap();
        let (a, adag) = ladder_operators(&cfg);
        let expected = adag
            .dot(&a)
            .unwrap()
            .add(&a.dot(&adag).unwrap())
            .unwrap()
            .scale(c64(-0.25, 0.0));
        let [_, _, l3] = sannikov_generators(&cfg);
        let report = interior_equal(&l3, &expected, 0, 1e-14).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn su11_closure_of_the_metaplectic_triple() {
        // [T1,T2] = -i T3, [T2,T3] = i T1, [T3,T1] = i T2 on the interior.
        let cfg = TruncationConfig::with_dim(32).unwrap();
        let [t1, t2, t3] = metaplectic_generators(&cfg);
        let checks = [
            (commutator(&t1, &t2).unwrap(), t3.scale(c64(0.0, -1.0))),
            (commutator(&t2, &t3).unwrap(), t1.scale(c64(0.0, 1.0))),
            (commutator(&t3, &t1).unwrap(), t2.scale(c64(0.0, 1.0))),
        ];
        for (idx, (lhs, rhs)) in checks.iter().enumerate() {
            let report = interior_equal(lhs, rhs, 4, 1e-12).unwrap();
            assert!(
                report.pass,
                "closure relation {idx}: deviation {}",
                report.max_deviation
            );
        }
    }

    #[test]
    fn defining_relation_holds_for_the_built_generators() {
        let cfg = TruncationConfig::with_dim(32).unwrap();
        let report = check_defining_relation(&cfg).unwrap();
        assert!(
            report.max_relation_deviation() < 1e-10,
            "relation deviations {:?}",
            report.relation_deviations
        );
        assert_eq!(report.max_wedge_deviation(), 0.0);
    }

    #[test]
    fn zero_generator_is_a_negative_control() {
        let cfg = TruncationConfig::with_dim(16).unwrap();
        let sigmas = sigma_matrices();
        let zero = FockOperator::zeros(16);
        let dev = defining_relation_deviation(&zero, &sigmas[2], 0, &cfg).unwrap();
        // The right-hand side is a/2, whose largest interior entry is
        // sqrt(dim - margin) / 2.
        assert!(dev > 1.0, "deviation {dev}");
    }
}
