//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Matrices here are desk-scale (a few hundred rows at most), where
//! Jacobi is simple, deterministic and accurate. Used for the
//! least-squares vacuum solver and for Gauss-Laguerre node/weight
//! construction.

use ndarray::Array2;
use num_complex::Complex64;

/// Eigenvalues in ascending order with eigenvectors in matching columns.
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Array2<Complex64>,
}

/// Diagonalize a Hermitian matrix. Only the Hermitian part of the input
/// is used: entries are symmetrized as `(m[i][j] + conj(m[j][i])) / 2`.
pub fn hermitian_eigen(m: &Array2<Complex64>) -> HermitianEigen {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "square matrix required");

    let mut a = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            a[[i, j]] = (m[[i, j]] + m[[j, i]].conj()) * 0.5;
        }
    }
    let mut v = Array2::<Complex64>::from_diag_elem(n, Complex64::new(1.0, 0.0));

    let frobenius: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = (1e-15 * frobenius).max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let off: f64 = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[[p, q]];
                let mag = apq.norm();
                if mag <= threshold / (n as f64) {
                    continue;
                }
                // Zero the (p, q) entry with a complex plane rotation:
                // the phase of apq reduces the problem to a real Jacobi
                // rotation on (app, aqq, |apq|).
                let app = a[[p, p]].re;
                let aqq = a[[q, q]].re;
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s;

                // Update rows/columns p and q of A = U^H A U.
                for k in 0..n {
                    let akp = a[[k, p]];
                    let akq = a[[k, q]];
                    a[[k, p]] = akp * c - akq * s_phase.conj();
                    a[[k, q]] = akp * s_phase + akq * c;
                }
                for k in 0..n {
                    let apk = a[[p, k]];
                    let aqk = a[[q, k]];
                    a[[p, k]] = apk * c - aqk * s_phase;
                    a[[q, k]] = apk * s_phase.conj() + aqk * c;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = vkp * c - vkq * s_phase.conj();
                    v[[k, q]] = vkp * s_phase + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[[i, i]].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = Array2::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[[k, dst]] = v[[k, src]];
        }
    }
    HermitianEigen { values, vectors }
}

fn off_diagonal_norm(a: &Array2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[[i, j]].norm_sqr();
            }
        }
    }
    sum.sqrt()
}
