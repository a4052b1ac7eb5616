//! Concept functions (unimodular, here {-1, +1}-valued step functions of one
//! Gaussian variable) and their Hermite-Fourier data: the coefficients
//! `alpha_n = <b, H_n>^2` of the correlation function
//! `h_b(rho) = E[b(X) b(Y)] = sum alpha_n rho^n`, the tetrachoric
//! normalizer `c(p)` and the threshold correlation `h_p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::series::{Parity, TruncatedSeries};
use crate::special::{self, HermiteSequence};

/// A concept whose mean is this close to +-1 carries no usable correlation
/// signal after Pearson normalization.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// Quadrature-sourced coefficients are only supported to this order; higher
/// Hermite indices oscillate faster than the panel rules resolve.
pub const QUADRATURE_ORDER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConceptKind {
    /// `sign(x)`, with `sign(0) = 1`.
    Sign,
    /// `b_p = 2 * 1_{[Phi^-1(p), inf)} - 1`.
    Threshold { p: f64 },
    /// Piecewise-constant `{-1, +1}` function: `values[i]` on
    /// `[breakpoints[i-1], breakpoints[i])` with open tails on both ends.
    Tabulated {
        breakpoints: Vec<f64>,
        values: Vec<i8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientSource {
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptSpec {
    #[serde(flatten)]
    pub kind: ConceptKind,
    pub source: CoefficientSource,
}

impl ConceptSpec {
    pub fn sign() -> Self {
        ConceptSpec {
            kind: ConceptKind::Sign,
            source: CoefficientSource::ClosedForm,
        }
    }

    pub fn threshold(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "threshold level must be in (0,1), got {p}"
            )));
        }
        Ok(ConceptSpec {
            kind: ConceptKind::Threshold { p },
            source: CoefficientSource::ClosedForm,
        })
    }

    pub fn tabulated(breakpoints: Vec<f64>, values: Vec<i8>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::LengthMismatch {
                expected: breakpoints.len() + 1,
                got: values.len(),
            });
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Domain("tabulated values must be +-1".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(ConceptSpec {
            kind: ConceptKind::Tabulated {
                breakpoints,
                values,
            },
            source: CoefficientSource::ClosedForm,
        })
    }

    pub fn with_source(mut self, source: CoefficientSource) -> Self {
        self.source = source;
        self
    }

    /// Pointwise evaluation of the concept.
    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            ConceptKind::Sign => sign_unit(x),
            ConceptKind::Threshold { p } => {
                let t = special::norm_cdf_inv(*p).expect("validated level");
                if x >= t {
                    1.0
                } else {
                    -1.0
                }
            }
            ConceptKind::Tabulated {
                breakpoints,
                values,
            } => {
                let idx = breakpoints.partition_point(|&t| t <= x);
                values[idx] as f64
            }
        }
    }

    /// The step-function form: breakpoints plus the value on each piece.
    fn as_steps(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        match &self.kind {
            ConceptKind::Sign => Ok((vec![0.0], vec![-1.0, 1.0])),
            ConceptKind::Threshold { p } => {
                Ok((vec![special::norm_cdf_inv(*p)?], vec![-1.0, 1.0]))
            }
            ConceptKind::Tabulated {
                breakpoints,
                values,
            } => Ok((
                breakpoints.clone(),
                values.iter().map(|&v| v as f64).collect(),
            )),
        }
    }
}

/// `sign` with the measure-zero convention `sign(0) = 1`.
pub fn sign_unit(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// Hermite-Fourier coefficients of a concept: `alpha0` is the squared mean,
/// `alpha[n-1]` holds `alpha_n = <b, H_n>^2` for `n = 1 ..= order`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaSequence {
    pub concept: ConceptSpec,
    pub order: usize,
    pub alpha0: f64,
    pub alpha: Vec<f64>,
}

impl AlphaSequence {
    pub fn alpha_n(&self, n: usize) -> f64 {
        if n == 0 {
            self.alpha0
        } else {
            self.alpha.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    /// `sum_{n=0}^{order} alpha_n`; at most 1 by Parseval for unimodular `b`.
    pub fn total(&self) -> f64 {
        self.alpha0 + self.alpha.iter().sum::<f64>()
    }

    /// The raw correlation series `h_b(rho) = alpha0 + sum alpha_n rho^n`.
    pub fn h_series(&self) -> TruncatedSeries<f64> {
        let mut coeffs = Vec::with_capacity(self.order + 1);
        coeffs.push(self.alpha0);
        coeffs.extend_from_slice(&self.alpha);
        TruncatedSeries::new(coeffs)
    }

    /// The Pearson-normalized series `psi = (h_b - alpha0) / (1 - alpha0)`,
    /// which satisfies `psi(0) = 0` and (in the full series) `psi(1) = 1`.
    /// For `alpha0 = 0` this is `h_b` itself.
    pub fn pearson_series(&self) -> Result<TruncatedSeries<f64>> {
        let denom = 1.0 - self.alpha0;
        if denom <= DEGENERATE_TOL {
            return Err(Error::DegenerateConcept {
                alpha0: self.alpha0,
            });
        }
        let mut coeffs = Vec::with_capacity(self.order + 1);
        coeffs.push(0.0);
        coeffs.extend(self.alpha.iter().map(|a| a / denom));
        Ok(TruncatedSeries::new(coeffs))
    }
}

/// Exact scaled coefficients of the sign concept: `alpha_n = (2/pi) a_n`
/// with `a_1 = 1`, `a_{2k+1} = ((2k-1)!!)^2 / (2k+1)!`, even terms zero.
/// The `2/pi` factor is kept symbolic so inversion stays exact.
pub fn sign_alpha_scaled(order: usize) -> TruncatedSeries<BigRational> {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut k = 0u64;
    while (2 * k + 1) as usize <= order {
        let dfac = if k == 0 {
            BigInt::from(1)
        } else {
            special::double_factorial(2 * k - 1)
        };
        let num = &dfac * &dfac;
        let den = crate::bell::factorial(2 * k + 1);
        coeffs[(2 * k + 1) as usize] = BigRational::new(num, den);
        k += 1;
    }
    TruncatedSeries::with_parity(coeffs, Parity::Odd).expect("odd pattern")
}

/// `alpha_n` for `n = 0 ..= order` of the given concept.
pub fn alpha_coeffs(concept: &ConceptSpec, order: usize) -> Result<AlphaSequence> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    match (&concept.kind, concept.source) {
        (ConceptKind::Sign, CoefficientSource::ClosedForm) => {
            let scaled = sign_alpha_scaled(order);
            let scale = 2.0 / std::f64::consts::PI;
            let alpha: Vec<f64> = (1..=order)
                .map(|n| scale * crate::series::rational_to_f64(&scaled.coeff(n)))
                .collect();
            Ok(AlphaSequence {
                concept: concept.clone(),
                order,
                alpha0: 0.0,
                alpha,
            })
        }
        (ConceptKind::Threshold { p }, CoefficientSource::ClosedForm) => {
            let p = *p;
            let t = special::norm_cdf_inv(p)?;
            let scale = 2.0 / std::f64::consts::PI * (-t * t).exp();
            let hermite: Vec<f64> = HermiteSequence::new(t).take(order).collect();
            let alpha: Vec<f64> = (1..=order)
                .map(|n| scale * hermite[n - 1] * hermite[n - 1] / n as f64)
                .collect();
            Ok(AlphaSequence {
                concept: concept.clone(),
                order,
                alpha0: (2.0 * p - 1.0) * (2.0 * p - 1.0),
                alpha,
            })
        }
        (ConceptKind::Tabulated { .. }, CoefficientSource::ClosedForm) => {
            let (breaks, values) = concept.as_steps()?;
            let inner = inner_products_closed_form(&breaks, &values, order);
            Ok(AlphaSequence {
                concept: concept.clone(),
                order,
                alpha0: inner[0] * inner[0],
                alpha: inner[1..].iter().map(|v| v * v).collect(),
            })
        }
        (_, CoefficientSource::Quadrature) => {
            let (breaks, values) = concept.as_steps()?;
            let inner = inner_products_quadrature(&breaks, &values, order)?;
            Ok(AlphaSequence {
                concept: concept.clone(),
                order,
                alpha0: inner[0] * inner[0],
                alpha: inner[1..].iter().map(|v| v * v).collect(),
            })
        }
    }
}

/// `<b, H_n>` for a step function, in closed form: over each piece,
/// `int_a^b H_n phi = G_n(a) - G_n(b)` with `G_n(t) = H_{n-1}(t) phi(t)/sqrt(n)`
/// and `G_0` replaced by the upper-tail CDF.
fn inner_products_closed_form(breaks: &[f64], values: &[f64], order: usize) -> Vec<f64> {
    // G_n at each breakpoint
    let g: Vec<Vec<f64>> = breaks
        .iter()
        .map(|&t| {
            let phi = special::norm_pdf(t);
            let h: Vec<f64> = HermiteSequence::new(t).take(order).collect();
            let mut col = Vec::with_capacity(order + 1);
            col.push(1.0 - special::norm_cdf(t));
            for n in 1..=order {
                col.push(h[n - 1] * phi / (n as f64).sqrt());
            }
            col
        })
        .collect();

    // telescoped: <b, H_n> = v_0 [n = 0] + sum_j (v_j - v_{j-1}) G_n(t_j)
    let mut inner = vec![0.0f64; order + 1];
    inner[0] = values[0];
    for (n, item) in inner.iter_mut().enumerate() {
        for (j, gj) in g.iter().enumerate() {
            *item += (values[j + 1] - values[j]) * gj[n];
        }
    }
    inner
}

/// `<b, H_n>` by panel Gauss-Legendre quadrature against the Gaussian weight,
/// intervals split at breakpoints, nodes doubled until every inner product
/// moves by less than 1e-10.
fn inner_products_quadrature(breaks: &[f64], values: &[f64], order: usize) -> Result<Vec<f64>> {
    if order > QUADRATURE_ORDER_CAP {
        return Err(Error::SizeOverCap {
            n: order,
            cap: QUADRATURE_ORDER_CAP,
        });
    }
    // truncate the tails where H_n phi is negligible for n <= order
    let reach = 2.0 * (order as f64).sqrt() + 12.0;
    let lo = breaks.first().copied().unwrap_or(0.0).min(0.0) - reach;
    let hi = breaks.last().copied().unwrap_or(0.0).max(0.0) + reach;
    let mut cuts = vec![lo];
    cuts.extend_from_slice(breaks);
    cuts.push(hi);

    let compute = |nodes: usize| -> Vec<f64> {
        let rule = quad::gauss_legendre(nodes);
        let mut inner = vec![0.0f64; order + 1];
        for (piece, w) in cuts.windows(2).zip(values.iter()) {
            let (a, b) = (piece[0], piece[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for &(u, wq) in &rule {
                let x = mid + half * u;
                let weight = wq * half * special::norm_pdf(x) * w;
                for (n, h) in HermiteSequence::new(x).take(order + 1).enumerate() {
                    inner[n] += weight * h;
                }
            }
        }
        inner
    };

    let mut nodes = 512usize;
    let mut prev = compute(nodes);
    loop {
        nodes *= 2;
        let next = compute(nodes);
        let residual = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if residual <= 1e-10 {
            return Ok(next);
        }
        if nodes >= 512 * 16 {
            return Err(Error::QuadratureNoConvergence {
                residual,
                doublings: 4,
            });
        }
        prev = next;
    }
}

/// The series for `h_b` fed to the workflow: the raw series when the concept
/// is centered (`alpha0 = 0`), otherwise the Pearson-normalized `psi`, whose
/// constant term vanishes by construction.
pub fn h_series(concept: &ConceptSpec, order: usize) -> Result<TruncatedSeries<f64>> {
    let alpha = alpha_coeffs(concept, order)?;
    if alpha.alpha0 == 0.0 {
        Ok(alpha.h_series())
    } else {
        alpha.pearson_series()
    }
}

/// Tetrachoric normalizer `c(p) = p(1-p)/phi^2(Phi^-1(p))
/// = 2 pi p (1-p) exp((Phi^-1(p))^2)`.
pub fn c_of_p(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("need 0 < p < 1, got {p}")));
    }
    let t = special::norm_cdf_inv(p)?;
    Ok(2.0 * std::f64::consts::PI * p * (1.0 - p) * (t * t).exp())
}

/// Partial sum `sum_{n=0}^{N} H_n^2(Phi^-1(p)) / (n+1)`, which converges
/// (slowly, like N^(-1/2)) to `c(p)`.
pub fn c_of_p_partial_sum(p: f64, n_terms: usize) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("need 0 < p < 1, got {p}")));
    }
    let t = special::norm_cdf_inv(p)?;
    let mut acc = 0.0f64;
    for (n, h) in HermiteSequence::new(t).take(n_terms + 1).enumerate() {
        acc += h * h / (n as f64 + 1.0);
    }
    Ok(acc)
}

/// Threshold correlation `h_p(rho) = (2p-1)^2 + 4 p (1-p) psi_N(p; rho)`
/// through the order-`N` tetrachoric partial sum.
pub fn h_p_eval(p: f64, rho: f64, n_terms: usize) -> Result<f64> {
    if rho.abs() > 1.0 {
        return Err(Error::EvalOutOfDomain { x: rho });
    }
    let t = special::norm_cdf_inv(p)?;
    let c = c_of_p(p)?;
    let mut psi = 0.0f64;
    let mut rho_pow = 1.0f64;
    for (idx, h) in HermiteSequence::new(t).take(n_terms).enumerate() {
        let n = idx + 1;
        rho_pow *= rho;
        psi += h * h * rho_pow / n as f64;
    }
    psi /= c;
    let a0 = (2.0 * p - 1.0) * (2.0 * p - 1.0);
    Ok(a0 + 4.0 * p * (1.0 - p) * psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn sign_alpha_closed_form_values() {
        let seq = alpha_coeffs(&ConceptSpec::sign(), 7).unwrap();
        let s = 2.0 / PI;
        assert_eq!(seq.alpha0, 0.0);
        assert_abs_diff_eq!(seq.alpha_n(1), s, epsilon = 1e-15);
        assert_eq!(seq.alpha_n(2), 0.0);
        assert_abs_diff_eq!(seq.alpha_n(3), s / 6.0, epsilon = 1e-15);
        assert_eq!(seq.alpha_n(4), 0.0);
        assert_abs_diff_eq!(seq.alpha_n(5), s * 3.0 / 40.0, epsilon = 1e-15);
        assert_abs_diff_eq!(seq.alpha_n(7), s * 5.0 / 112.0, epsilon = 1e-15);
    }

    #[test]
    fn threshold_half_matches_sign() {
        let sign = alpha_coeffs(&ConceptSpec::sign(), 12).unwrap();
        let half = alpha_coeffs(&ConceptSpec::threshold(0.5).unwrap(), 12).unwrap();
        assert_abs_diff_eq!(half.alpha0, 0.0, epsilon = 1e-15);
        for n in 1..=12 {
            assert_abs_diff_eq!(half.alpha_n(n), sign.alpha_n(n), epsilon = 1e-12);
        }
    }

    #[test]
    fn parseval_partial_sums_below_one() {
        for concept in [
            ConceptSpec::sign(),
            ConceptSpec::threshold(0.3).unwrap(),
            ConceptSpec::threshold(0.7).unwrap(),
            ConceptSpec::tabulated(vec![-0.5, 0.8], vec![1, -1, 1]).unwrap(),
        ] {
            let seq = alpha_coeffs(&concept, 200).unwrap();
            assert!(seq.alpha.iter().all(|&a| a >= 0.0));
            assert!(seq.total() <= 1.0 + 1e-9, "total = {}", seq.total());
        }
    }

    #[test]
    fn tabulated_closed_form_reproduces_sign_and_threshold() {
        let sign_tab = ConceptSpec::tabulated(vec![0.0], vec![-1, 1]).unwrap();
        let a = alpha_coeffs(&sign_tab, 15).unwrap();
        let b = alpha_coeffs(&ConceptSpec::sign(), 15).unwrap();
        for n in 0..=15 {
            assert_abs_diff_eq!(a.alpha_n(n), b.alpha_n(n), epsilon = 1e-13);
        }

        let t = special::norm_cdf_inv(0.7).unwrap();
        let thr_tab = ConceptSpec::tabulated(vec![t], vec![-1, 1]).unwrap();
        let a = alpha_coeffs(&thr_tab, 15).unwrap();
        let b = alpha_coeffs(&ConceptSpec::threshold(0.7).unwrap(), 15).unwrap();
        for n in 0..=15 {
            assert_abs_diff_eq!(a.alpha_n(n), b.alpha_n(n), epsilon = 1e-13);
        }
    }

    #[test]
    fn quadrature_source_agrees_with_closed_form() {
        for concept in [
            ConceptSpec::sign(),
            ConceptSpec::threshold(0.35).unwrap(),
            ConceptSpec::tabulated(vec![-1.0, 0.25, 1.5], vec![1, -1, 1, -1]).unwrap(),
        ] {
            let cf = alpha_coeffs(&concept, 24).unwrap();
            let q = alpha_coeffs(
                &concept.clone().with_source(CoefficientSource::Quadrature),
                24,
            )
            .unwrap();
            assert_abs_diff_eq!(cf.alpha0, q.alpha0, epsilon = 1e-9);
            for n in 1..=24 {
                assert_abs_diff_eq!(cf.alpha_n(n), q.alpha_n(n), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn quadrature_order_cap_enforced() {
        let c = ConceptSpec::sign().with_source(CoefficientSource::Quadrature);
        assert!(matches!(
            alpha_coeffs(&c, QUADRATURE_ORDER_CAP + 1),
            Err(Error::SizeOverCap { .. })
        ));
    }

    #[test]
    fn sign_h_series_evaluates_to_arcsin() {
        let h = h_series(&ConceptSpec::sign(), 201).unwrap();
        let v = h.eval(&0.5).unwrap();
        assert_abs_diff_eq!(v, 2.0 / PI * 0.5f64.asin(), epsilon = 1e-8);
        assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-8);
    }

    #[test]
    fn h_series_maps_unit_interval_into_itself() {
        for concept in [
            ConceptSpec::sign(),
            ConceptSpec::threshold(0.3).unwrap(),
            ConceptSpec::tabulated(vec![-0.7, 0.2], vec![-1, 1, -1]).unwrap(),
        ] {
            let h = h_series(&concept, 100).unwrap();
            for i in 0..50 {
                let x = -1.0 + 2.0 * (i as f64 + 0.5) / 50.0;
                let v = h.eval(&x).unwrap();
                assert!(v.abs() <= 1.0 + 1e-9, "{concept:?} at {x}: {v}");
            }
        }
    }

    #[test]
    fn pearson_series_normalization() {
        let alpha = alpha_coeffs(&ConceptSpec::threshold(0.7).unwrap(), 400).unwrap();
        let psi = alpha.pearson_series().unwrap();
        assert_eq!(psi.coeff(0), 0.0);
        // psi(1) -> 1; order-400 partial sum of a ~n^(-3/2) tail
        let at_one = psi.eval(&1.0).unwrap();
        assert!(at_one > 0.9 && at_one <= 1.0 + 1e-9, "psi(1) = {at_one}");
    }

    #[test]
    fn degenerate_concept_rejected() {
        // a threshold this extreme has |mean| ~ 1 and alpha0 ~ 1
        if let Ok(spec) = ConceptSpec::threshold(1e-13) {
            let alpha = alpha_coeffs(&spec, 10).unwrap();
            assert!(matches!(
                alpha.pearson_series(),
                Err(Error::DegenerateConcept { .. })
            ));
        }
    }

    #[test]
    fn c_of_p_reference_values() {
        assert_abs_diff_eq!(c_of_p(0.5).unwrap(), PI / 2.0, epsilon = 1e-12);
        for p in [0.12, 0.3, 0.44] {
            assert_abs_diff_eq!(
                c_of_p(p).unwrap(),
                c_of_p(1.0 - p).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn c_of_p_partial_sum_converges_slowly() {
        // N ~ 1e5 is enough for ~tenths of a percent at p = 1/2
        let c = c_of_p(0.5).unwrap();
        let s = c_of_p_partial_sum(0.5, 100_000).unwrap();
        assert!((s - c).abs() / c < 0.01, "s = {s}, c = {c}");
        // and the sum is monotone increasing in N
        let s_small = c_of_p_partial_sum(0.5, 1_000).unwrap();
        assert!(s_small < s);
    }

    #[test]
    fn h_p_eval_reference_points() {
        // p = 1/2 is the arcsin case
        for rho in [-0.9, -0.4, 0.0, 0.3, 0.8] {
            assert_abs_diff_eq!(
                h_p_eval(0.5, rho, 201).unwrap(),
                2.0 / PI * rho.asin(),
                epsilon = 1e-6
            );
        }
        // independence leaves the squared mean
        for p in [0.2, 0.55, 0.9] {
            assert_abs_diff_eq!(
                h_p_eval(p, 0.0, 100).unwrap(),
                (2.0 * p - 1.0) * (2.0 * p - 1.0),
                epsilon = 1e-15
            );
        }
        // rho = 1 forces b(X) = b(Y); the tetrachoric tail decays like
        // N^(-1/2), about 5e-3 at N = 1e4 and below 2e-3 by N = 1e5
        for p in [0.3, 0.5, 0.7] {
            assert_abs_diff_eq!(h_p_eval(p, 1.0, 10_000).unwrap(), 1.0, epsilon = 6e-3);
            assert_abs_diff_eq!(h_p_eval(p, 1.0, 100_000).unwrap(), 1.0, epsilon = 2e-3);
        }
    }

    #[test]
    fn concept_eval_points() {
        let sign = ConceptSpec::sign();
        assert_eq!(sign.eval(0.0), 1.0);
        assert_eq!(sign.eval(-1e-12), -1.0);

        let tab = ConceptSpec::tabulated(vec![-1.0, 1.0], vec![1, -1, 1]).unwrap();
        assert_eq!(tab.eval(-2.0), 1.0);
        assert_eq!(tab.eval(-1.0), -1.0);
        assert_eq!(tab.eval(0.0), -1.0);
        assert_eq!(tab.eval(1.0), 1.0);

        assert!(ConceptSpec::tabulated(vec![1.0, -1.0], vec![1, -1, 1]).is_err());
        assert!(ConceptSpec::tabulated(vec![0.0], vec![1, 2]).is_err());
        assert!(ConceptSpec::threshold(1.2).is_err());
    }

    #[test]
    fn scaled_sign_alphas_are_exact() {
        use num_traits::One;
        let s = sign_alpha_scaled(9);
        assert!(s.coeff(1).is_one());
        assert_eq!(
            s.coeff(3),
            BigRational::new(BigInt::from(1), BigInt::from(6))
        );
        assert_eq!(
            s.coeff(5),
            BigRational::new(BigInt::from(3), BigInt::from(40))
        );
        assert_eq!(
            s.coeff(7),
            BigRational::new(BigInt::from(5), BigInt::from(112))
        );
        assert_eq!(
            s.coeff(9),
            BigRational::new(BigInt::from(35), BigInt::from(1152))
        );
        assert!(s.coeff(2).is_zero() && s.coeff(4).is_zero());
    }
}
