//! Gauss-Laguerre nodes and weights by the Golub-Welsch method: the
//! symmetric tridiagonal companion matrix of the Laguerre recurrence is
//! diagonalized and the weights come from the squared first components
//! of the eigenvectors.

use ndarray::Array2;
use num_complex::Complex64;

use crate::fock::linalg::hermitian_eigen;

/// Nodes and weights for `int_0^inf e^(-t) f(t) dt ~ sum w_i f(t_i)`,
/// exact for polynomials of degree `2n - 1`.
///
/// Eigenvalues of the companion matrix seed the nodes, a few Newton
/// steps on the recurrence polish them to full precision, and the
/// weights come from the derivative formula
/// `w_i = t_i / ((n+1)^2 L_{n+1}(t_i)^2)`.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "at least one node");
    let mut companion = Array2::<Complex64>::zeros((n, n));
    for i in 0..n {
        companion[[i, i]] = Complex64::new(2.0 * i as f64 + 1.0, 0.0);
        if i + 1 < n {
            let off = Complex64::new(i as f64 + 1.0, 0.0);
            companion[[i, i + 1]] = off;
            companion[[i + 1, i]] = off;
        }
    }
    let eigen = hermitian_eigen(&companion);

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for &seed in &eigen.values {
        let mut t = seed;
        for _ in 0..8 {
            let (value, lower) = laguerre_pair(n, t);
            let derivative = n as f64 * (value - lower) / t;
            let step = value / derivative;
            t -= step;
            if step.abs() <= 4.0 * f64::EPSILON * t.abs() {
                break;
            }
        }
        let (next, _) = laguerre_pair(n + 1, t);
        let scale = (n as f64 + 1.0) * next;
        nodes.push(t);
        weights.push(t / (scale * scale));
    }
    (nodes, weights)
}

/// `(L_n(t), L_{n-1}(t))` by the three-term recurrence.
fn laguerre_pair(n: usize, t: f64) -> (f64, f64) {
    let mut prev = 1.0f64;
    let mut current = 1.0 - t;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let next = ((2.0 * k as f64 + 1.0 - t) * current - k as f64 * prev) / (k as f64 + 1.0);
        prev = current;
        current = next;
    }
    (current, prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weights_sum_to_one() {
        for n in [1, 4, 16, 48] {
            let (_, weights) = gauss_laguerre(n);
            let total: f64 = weights.iter().sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn moments_match_factorials() {
        // int e^(-t) t^k dt = k!
        let (nodes, weights) = gauss_laguerre(24);
        let mut factorial = 1.0f64;
        for k in 0..20i32 {
            if k > 0 {
                factorial *= f64::from(k);
            }
            let quad: f64 = nodes
                .iter()
                .zip(&weights)
                .map(|(&t, &w)| w * t.powi(k))
                .sum();
            assert!(
                (quad - factorial).abs() <= 1e-12 * factorial.max(1.0),
                "moment {k}: {quad} vs {factorial}"
            );
        }
    }

    #[test]
    fn two_node_rule_is_exact_for_cubics() {
        let (nodes, weights) = gauss_laguerre(2);
        // Known closed form: nodes 2 -+ sqrt(2).
        let expected = [2.0 - 2.0f64.sqrt(), 2.0 + 2.0f64.sqrt()];
        assert_abs_diff_eq!(nodes[0], expected[0], epsilon = 1e-12);
        assert_abs_diff_eq!(nodes[1], expected[1], epsilon = 1e-12);
        let cubic: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(&t, &w)| w * (t * t * t - 2.0 * t + 1.0))
            .sum();
        assert_abs_diff_eq!(cubic, 6.0 - 2.0 + 1.0, epsilon = 1e-12);
    }
}
