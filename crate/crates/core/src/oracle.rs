//! Monte-Carlo ground truth for the closed-form identities: correlated real
//! Gaussian pairs, proper complex Gaussian pairs, and estimators for the
//! sign, threshold, sphere-moment and complex-sign expectations.
//!
//! Determinism contract: estimates are reduced over fixed-size chunks whose
//! generators derive from (seed, chunk index) as ChaCha streams, and the
//! reduction order is the chunk order, so the same seed and parameters give
//! bit-identical results for any rayon worker count. The contract is
//! per-release; it does not survive RNG crate upgrades.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::concepts::sign_unit;
use crate::error::{Error, Result};
use crate::special;

const CHUNK: u64 = 1 << 16;

/// A Monte-Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Standardized residual against a reference value; zero-variance
    /// estimators score 0 when they hit the reference exactly.
    pub fn z_score(&self, reference: f64) -> f64 {
        let delta = self.mean - reference;
        if self.std_error == 0.0 {
            if delta == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            delta / self.std_error
        }
    }
}

/// Componentwise mean and standard error of a complex-valued estimator.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct McEstimateComplex {
    pub mean_re: f64,
    pub mean_im: f64,
    pub std_error_re: f64,
    pub std_error_im: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl McEstimateComplex {
    pub fn mean(&self) -> Complex64 {
        Complex64::new(self.mean_re, self.mean_im)
    }

    /// Largest componentwise standardized residual against a reference.
    pub fn z_score(&self, reference: Complex64) -> f64 {
        let re = McEstimate {
            mean: self.mean_re,
            std_error: self.std_error_re,
            n_samples: self.n_samples,
            seed: self.seed,
        };
        let im = McEstimate {
            mean: self.mean_im,
            std_error: self.std_error_im,
            n_samples: self.n_samples,
            seed: self.seed,
        };
        re.z_score(reference.re)
            .abs()
            .max(im.z_score(reference.im).abs())
    }
}

fn chunk_rng(seed: u64, chunk_index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(chunk_index);
    rng
}

/// Chunked, order-fixed parallel reduction of a samplewise statistic.
fn mc_run<F>(n: u64, seed: u64, per_sample: F) -> McEstimate
where
    F: Fn(&mut ChaCha12Rng) -> f64 + Sync,
{
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let count = CHUNK.min(n - c * CHUNK);
            let mut sum = 0.0f64;
            let mut sumsq = 0.0f64;
            for _ in 0..count {
                let v = per_sample(&mut rng);
                sum += v;
                sumsq += v * v;
            }
            (sum, sumsq)
        })
        .collect();
    let (sum, sumsq) = partials
        .iter()
        .fold((0.0, 0.0), |(a, b), &(s, q)| (a + s, b + q));
    let nf = n as f64;
    let mean = sum / nf;
    let var = ((sumsq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    McEstimate {
        mean,
        std_error: (var / nf).sqrt(),
        n_samples: n,
        seed,
    }
}

/// Iterator over `(X, Y)` pairs in `R^d x R^d` with `Y = rho X + sqrt(1 -
/// rho^2) X'` coordinatewise, the exact sampler for the block correlation
/// `[[I, rho I], [rho I, I]]`.
pub struct CorrPairs {
    rng: ChaCha12Rng,
    d: usize,
    rho: f64,
    root: f64,
    remaining: u64,
}

impl Iterator for CorrPairs {
    type Item = (Vec<f64>, Vec<f64>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut x = Vec::with_capacity(self.d);
        let mut y = Vec::with_capacity(self.d);
        for _ in 0..self.d {
            let xi: f64 = self.rng.sample(StandardNormal);
            let xprime: f64 = self.rng.sample(StandardNormal);
            x.push(xi);
            y.push(self.rho * xi + self.root * xprime);
        }
        Some((x, y))
    }
}

pub fn sample_corr_pairs(d: usize, rho: f64, n: u64, seed: u64) -> Result<CorrPairs> {
    if d < 1 {
        return Err(Error::Domain("need d >= 1".into()));
    }
    if rho.abs() > 1.0 {
        return Err(Error::Domain(format!("need |rho| <= 1, got {rho}")));
    }
    Ok(CorrPairs {
        rng: ChaCha12Rng::seed_from_u64(seed),
        d,
        rho,
        root: (1.0 - rho * rho).max(0.0).sqrt(),
        remaining: n,
    })
}

fn draw_pair(rng: &mut ChaCha12Rng, rho: f64, root: f64) -> (f64, f64) {
    let x: f64 = rng.sample(StandardNormal);
    let xp: f64 = rng.sample(StandardNormal);
    (x, rho * x + root * xp)
}

/// `E[sign(X) sign(Y)]` under correlation `rho`; the closed form is
/// `(2/pi) arcsin(rho)`.
pub fn mc_sign_identity(rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    if rho.abs() > 1.0 {
        return Err(Error::Domain(format!("need |rho| <= 1, got {rho}")));
    }
    let root = (1.0 - rho * rho).max(0.0).sqrt();
    Ok(mc_run(n, seed, |rng| {
        let (x, y) = draw_pair(rng, rho, root);
        sign_unit(x) * sign_unit(y)
    }))
}

/// `E[b_p(X) b_p(Y)]` for the threshold concept; compare with the
/// tetrachoric series `h_p`.
pub fn mc_threshold(p: f64, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    if rho.abs() > 1.0 {
        return Err(Error::Domain(format!("need |rho| <= 1, got {rho}")));
    }
    let t = special::norm_cdf_inv(p)?;
    let root = (1.0 - rho * rho).max(0.0).sqrt();
    let b = move |v: f64| if v >= t { 1.0 } else { -1.0 };
    Ok(mc_run(n, seed, move |rng| {
        let (x, y) = draw_pair(rng, rho, root);
        b(x) * b(y)
    }))
}

/// `E[<X/|X|, Y/|Y|>^m]`; compare with
/// [`special::moment_closed_form`]. `d = 1` degenerates to products of
/// signs, matching the sphere convention S^0 = {-1, +1}.
pub fn mc_moment(d: usize, m: u32, rho: f64, n: u64, seed: u64) -> Result<McEstimate> {
    if d < 1 || m < 1 {
        return Err(Error::Domain(format!("need d >= 1, m >= 1; got {d}, {m}")));
    }
    if rho.abs() >= 1.0 {
        return Err(Error::Domain(format!("need |rho| < 1, got {rho}")));
    }
    let root = (1.0 - rho * rho).sqrt();
    Ok(mc_run(n, seed, move |rng| {
        let mut dot = 0.0f64;
        let mut nx = 0.0f64;
        let mut ny = 0.0f64;
        for _ in 0..d {
            let (x, y) = draw_pair(rng, rho, root);
            dot += x * y;
            nx += x * x;
            ny += y * y;
        }
        let denom = (nx * ny).sqrt();
        let cosine = if denom == 0.0 {
            // measure-zero degenerate draw
            1.0
        } else {
            (dot / denom).clamp(-1.0, 1.0)
        };
        cosine.powi(m as i32)
    }))
}

fn complex_sign(w: Complex64) -> Complex64 {
    let m = w.norm();
    if m == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        w / m
    }
}

/// `E[sign(Z) conj(sign(W))]` for a proper complex Gaussian pair with
/// `E[Z conj(W)] = z`: sampled as `Z = (G1 + i G2)/sqrt(2)` and
/// `W = conj(z) Z + sqrt(1 - |z|^2) Z'`. The closed form is
/// `(pi/4) z 2F1(1/2, 1/2, 2; |z|^2)`.
pub fn mc_haagerup(z: Complex64, n: u64, seed: u64) -> Result<McEstimateComplex> {
    if z.norm() > 1.0 {
        return Err(Error::Domain(format!("need |z| <= 1, got {}", z.norm())));
    }
    let root = (1.0 - z.norm_sqr()).max(0.0).sqrt();
    let zbar = z.conj();

    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<(f64, f64, f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let count = CHUNK.min(n - c * CHUNK);
            let mut sum_re = 0.0f64;
            let mut sum_im = 0.0f64;
            let mut sq_re = 0.0f64;
            let mut sq_im = 0.0f64;
            let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
            for _ in 0..count {
                let g1: f64 = rng.sample(StandardNormal);
                let g2: f64 = rng.sample(StandardNormal);
                let g3: f64 = rng.sample(StandardNormal);
                let g4: f64 = rng.sample(StandardNormal);
                let zeta = Complex64::new(g1 * inv_sqrt2, g2 * inv_sqrt2);
                let zeta_prime = Complex64::new(g3 * inv_sqrt2, g4 * inv_sqrt2);
                let w = zbar * zeta + root * zeta_prime;
                let v = complex_sign(zeta) * complex_sign(w).conj();
                sum_re += v.re;
                sum_im += v.im;
                sq_re += v.re * v.re;
                sq_im += v.im * v.im;
            }
            (sum_re, sum_im, sq_re, sq_im)
        })
        .collect();

    let (sum_re, sum_im, sq_re, sq_im) = partials.iter().fold(
        (0.0, 0.0, 0.0, 0.0),
        |(a, b, c2, d2), &(s, t, u, v)| (a + s, b + t, c2 + u, d2 + v),
    );
    let nf = n as f64;
    let mean_re = sum_re / nf;
    let mean_im = sum_im / nf;
    let var_re = ((sq_re - nf * mean_re * mean_re) / (nf - 1.0)).max(0.0);
    let var_im = ((sq_im - nf * mean_im * mean_im) / (nf - 1.0)).max(0.0);
    Ok(McEstimateComplex {
        mean_re,
        mean_im,
        std_error_re: (var_re / nf).sqrt(),
        std_error_im: (var_im / nf).sqrt(),
        n_samples: n,
        seed,
    })
}

/// Closed form matching [`mc_haagerup`], as a complex value.
pub fn haagerup_closed_form(z: Complex64) -> Result<Complex64> {
    let t = z.norm();
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let magnitude = special::haagerup_h(t)?;
    Ok(z / t * magnitude)
}
