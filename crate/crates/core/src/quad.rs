//! Gaussian quadrature rules: Gauss-Legendre on [-1, 1] by Newton iteration
//! on the Legendre recurrence, and Gauss-Hermite for the standard-normal
//! weight by Golub-Welsch on the probabilists' Jacobi matrix.

use nalgebra::DMatrix;

/// Legendre polynomial value and derivative at `x`.
fn legendre_pd(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// `n`-point Gauss-Legendre rule on [-1, 1] as (node, weight) pairs.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_pd(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_pd(n, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        rule.push((-x, w));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// `n`-point Gauss-Hermite rule for the weight `phi(x) = e^(-x^2/2)/sqrt(2 pi)`
/// (probabilists' scaling). Nodes are eigenvalues of the tridiagonal Jacobi
/// matrix with off-diagonal sqrt(k), Newton-polished on the orthonormal
/// recurrence; weights are Christoffel numbers `1 / sum_k H_k(x)^2`, which
/// keeps full relative accuracy even at the extreme nodes where
/// eigenvector-based weights degrade.
pub fn gauss_hermite_prob(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64).sqrt();
        jacobi[(k - 1, k)] = b;
        jacobi[(k, k - 1)] = b;
    }
    let eigenvalues = jacobi.symmetric_eigenvalues();

    // H_0 .. H_n at x (orthonormal); H_n' = sqrt(n) H_{n-1}
    let hermite_upto = |x: f64| -> Vec<f64> {
        crate::special::HermiteSequence::new(x).take(n + 1).collect()
    };
    let mut rule: Vec<(f64, f64)> = eigenvalues
        .iter()
        .map(|&node| {
            let mut x = node;
            for _ in 0..3 {
                let h = hermite_upto(x);
                let deriv = (n as f64).sqrt() * h[n - 1];
                if deriv == 0.0 {
                    break;
                }
                let dx = h[n] / deriv;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1.0) {
                    break;
                }
            }
            let h = hermite_upto(x);
            let s: f64 = h[..n].iter().map(|v| v * v).sum();
            (x, 1.0 / s)
        })
        .collect();
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Integrate `f` against the standard normal weight over the interval
/// `[a, b]` with an `n`-point Gauss-Legendre panel.
pub fn integrate_gaussian_weight<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
    let rule = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for &(t, w) in &rule {
        let x = mid + half * t;
        acc += w * f(x) * crate::special::norm_pdf(x);
    }
    acc * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        // 8 points integrate degree <= 15 exactly
        let rule = gauss_legendre(8);
        let total: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-14);
        let int_x14: f64 = rule.iter().map(|&(x, w)| w * x.powi(14)).sum();
        assert_abs_diff_eq!(int_x14, 2.0 / 15.0, epsilon = 1e-14);
        let int_x7: f64 = rule.iter().map(|&(x, w)| w * x.powi(7)).sum();
        assert_abs_diff_eq!(int_x7, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hermite_rule_matches_gaussian_moments() {
        let rule = gauss_hermite_prob(40);
        let m0: f64 = rule.iter().map(|&(_, w)| w).sum();
        let m2: f64 = rule.iter().map(|&(x, w)| w * x * x).sum();
        let m4: f64 = rule.iter().map(|&(x, w)| w * x.powi(4)).sum();
        let m6: f64 = rule.iter().map(|&(x, w)| w * x.powi(6)).sum();
        assert_abs_diff_eq!(m0, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(m2, 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(m4, 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m6, 15.0, epsilon = 1e-11);
    }

    #[test]
    fn gaussian_panel_matches_cdf_difference() {
        let one = |_x: f64| 1.0;
        let v = integrate_gaussian_weight(&one, -1.0, 2.0, 64);
        let want = crate::special::norm_cdf(2.0) - crate::special::norm_cdf(-1.0);
        assert_abs_diff_eq!(v, want, epsilon = 1e-14);
    }
}
