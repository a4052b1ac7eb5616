//! Closed-form evaluators: Gamma, Gaussian hypergeometric 2F1 / 3F2,
//! standard-normal CDF and quantile, orthonormal Hermite polynomials, and the
//! named correlation functions (arcsin form, Haagerup form, sphere moments).

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

const REL_TERM_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 1_000_000;

/// Lanczos approximation (g = 7, 9 terms), relative error below 1e-13 on the
/// half-integer arguments used here.
pub fn gamma(x: f64) -> f64 {
    #[allow(clippy::excessive_precision)]
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // reflection
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let z = x - 1.0;
    let mut acc = G[0];
    for (i, &c) in G.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}

/// `n!! = n (n-2) (n-4) ...` as an exact integer.
pub fn double_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Gauss hypergeometric series. At `z = 1` applies the Gauss summation
/// closed form (needs `c - a - b > 0`); elsewhere on `[-1, 1]` sums the
/// series until the term is relatively below 1e-16.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::Domain(format!(
            "lower parameter c = {c} is a non-positive integer"
        )));
    }
    if z.abs() > 1.0 {
        return Err(Error::Domain(format!("|z| = {} > 1", z.abs())));
    }
    if z == 1.0 {
        let excess = c - a - b;
        if excess <= 0.0 {
            return Err(Error::HypergeomDivergent { excess });
        }
        return Ok(gamma(c) * gamma(excess) / (gamma(c - a) * gamma(c - b)));
    }
    if z == -1.0 && c - a - b <= 0.0 {
        return Err(Error::HypergeomDivergent { excess: c - a - b });
    }
    sum_hypergeometric(&[a, b], &[c], z)
}

/// Direct 3F2 series on the open interval (the sphere-moment theorem is
/// stated for `rho^2 < 1`).
pub fn hyp3f2(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    for b in [b1, b2] {
        if is_nonpositive_integer(b) {
            return Err(Error::Domain(format!(
                "lower parameter {b} is a non-positive integer"
            )));
        }
    }
    if z.abs() >= 1.0 && z != 0.0 {
        return Err(Error::Domain(format!("|z| = {} must be < 1", z.abs())));
    }
    sum_hypergeometric(&[a1, a2, a3], &[b1, b2], z)
}

fn sum_hypergeometric(upper: &[f64], lower: &[f64], z: f64) -> Result<f64> {
    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for &a in upper {
            ratio *= a + nf;
        }
        for &b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        sum += term;
        if term.abs() <= REL_TERM_TOL * sum.abs() || term == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::HypergeomNoConvergence {
        partial_sum: sum,
        terms: MAX_TERMS,
    })
}

/// Orthonormal probabilists' Hermite polynomial `He_n(x) / sqrt(n!)`,
/// by the scaled three-term recurrence (the factorial is never formed).
pub fn hermite_orthonormal(n: usize, x: f64) -> f64 {
    HermiteSequence::new(x).nth(n).unwrap()
}

/// Iterator over `He_n(x)/sqrt(n!)` for n = 0, 1, 2, ...; the normalized
/// values stay O(1) in n, so very long scans (tetrachoric partial sums) are
/// safe from overflow.
#[derive(Debug, Clone)]
pub struct HermiteSequence {
    x: f64,
    k: usize,
    prev: f64, // H_{k-1}
    cur: f64,  // H_k
}

impl HermiteSequence {
    pub fn new(x: f64) -> Self {
        HermiteSequence {
            x,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for HermiteSequence {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let kf = self.k as f64;
        let next = (self.x * self.cur - kf.sqrt() * self.prev) / (kf + 1.0).sqrt();
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// Standard normal density.
pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Standard normal CDF, accurate to ~1 ulp relative in both tails
/// (series form of erf below 2, Lentz continued fraction for erfc above).
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

fn erfc(v: f64) -> f64 {
    if v < 0.0 {
        return 2.0 - erfc(-v);
    }
    if v < 2.0 {
        1.0 - erf_series(v)
    } else {
        erfc_cf(v)
    }
}

/// erf by the all-positive-terms confluent form
/// `erf(x) = (2x/sqrt(pi)) e^(-x^2) sum (2x^2)^n / (2n+1)!!`.
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut n = 1u32;
    loop {
        term *= 2.0 * x2 / (2.0 * n as f64 + 1.0);
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
        n += 1;
        if n > 500 {
            break;
        }
    }
    2.0 * x / PI.sqrt() * (-x2).exp() * sum
}

/// `erfc(x) = e^(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + (2/2)/(x + ...)))`,
/// modified Lentz iteration.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x.max(tiny);
    let mut c = f;
    let mut d = 0.0f64;
    for k in 1..200 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Standard normal quantile: rational (PPND16-class) initial approximation,
/// polished by Newton against the high-accuracy [`norm_cdf`] until the
/// correction is below one ulp.
pub fn norm_cdf_inv(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!("quantile needs 0 < p < 1, got {p}")));
    }
    let mut x = ppnd16(p);
    for _ in 0..4 {
        // compare on the side that avoids cancellation
        let delta = if x <= 0.0 {
            norm_cdf(x) - p
        } else {
            (1.0 - p) - 0.5 * erfc(x / std::f64::consts::SQRT_2)
        };
        let dens = norm_pdf(x);
        if dens < 1e-280 {
            break;
        }
        let step = delta / dens;
        x -= step;
        if step.abs() <= 1e-16 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

fn poly(coeffs: &[f64], r: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * r + c;
    }
    acc
}

#[allow(clippy::excessive_precision)]
fn ppnd16(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608e0,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561e2,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34e0,
        4.630_337_846_156_545_295_9e0,
        5.769_497_221_460_691_405_5e0,
        3.647_848_324_763_204_605_04e0,
        1.270_458_252_452_368_382_58e0,
        2.417_807_251_774_506_117_7e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_4e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87e0,
        1.676_384_830_183_803_849_4e0,
        6.897_673_349_851_000_045_5e-1,
        1.481_039_764_274_800_745_9e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_2e0,
        5.463_784_911_164_114_369_9e0,
        1.784_826_539_917_291_335_8e0,
        2.965_605_718_285_048_912_3e-1,
        2.653_218_952_657_612_309_3e-2,
        1.242_660_947_388_078_438_6e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_9e-1,
        1.369_298_809_227_358_053_1e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];

    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let r = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-r.ln()).sqrt();
    let x = if r <= 5.0 {
        r -= 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        r -= 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -x
    } else {
        x
    }
}

/// `(2/pi) arcsin(rho)`: the correlation of signs of rho-correlated normals.
pub fn grothendieck_h(rho: f64) -> f64 {
    2.0 / PI * rho.asin()
}

/// `(pi/4) t 2F1(1/2, 1/2, 2; t^2)`: the complex (Haagerup) analogue, as a
/// function of the correlation magnitude.
pub fn haagerup_h(t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("need 0 <= t <= 1, got {t}")));
    }
    Ok(PI / 4.0 * t * hyp2f1(0.5, 0.5, 2.0, t * t)?)
}

/// `c_-(d, m) = (2/sqrt(pi)) Gamma((d+1)/2)^2 Gamma((m+2)/2) /
/// (Gamma(d/2) Gamma((m+d+1)/2))`, the odd-moment normalizer.
pub fn c_minus(d: u32, m: u32) -> f64 {
    let d = d as f64;
    let m = m as f64;
    2.0 / PI.sqrt() * gamma((d + 1.0) / 2.0).powi(2) * gamma((m + 2.0) / 2.0)
        / (gamma(d / 2.0) * gamma((m + d + 1.0) / 2.0))
}

/// `c_+(d, m) = (1/sqrt(pi)) Gamma(d/2) Gamma((m+1)/2) / Gamma((m+d)/2)`,
/// the even-moment normalizer.
pub fn c_plus(d: u32, m: u32) -> f64 {
    let d = d as f64;
    let m = m as f64;
    1.0 / PI.sqrt() * gamma(d / 2.0) * gamma((m + 1.0) / 2.0) / gamma((m + d) / 2.0)
}

/// `c_d = (2/d) Gamma((d+1)/2)^2 / Gamma(d/2)^2 = 1 / 2F1(1/2,1/2,(2+d)/2; 1)`.
pub fn c_d(d: u32) -> f64 {
    let df = d as f64;
    2.0 / df * (gamma((df + 1.0) / 2.0) / gamma(df / 2.0)).powi(2)
}

/// Closed form for `E[<X/|X|, Y/|Y|>^m]` under the 2d-dimensional coupling
/// with correlation `rho I_d`:
/// odd `m`:  `c_-(d,m) (1-rho^2)^(d/2) rho 3F2((d+1)/2,(d+1)/2,(m+2)/2; 3/2,(m+d+1)/2; rho^2)`,
/// even `m`: `c_+(d,m) (1-rho^2)^(d/2)     3F2(d/2,d/2,(m+1)/2; 1/2,(m+d)/2; rho^2)`.
pub fn moment_closed_form(d: u32, m: u32, rho: f64) -> Result<f64> {
    if d < 1 || m < 1 {
        return Err(Error::Domain(format!("need d >= 1 and m >= 1, got d={d} m={m}")));
    }
    if rho.abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "the moment theorem is stated on -1 < rho < 1, got {rho}"
        )));
    }
    let df = d as f64;
    let mf = m as f64;
    let r2 = rho * rho;
    let envelope = (1.0 - r2).powf(df / 2.0);
    let v = if m % 2 == 1 {
        let f = hyp3f2(
            (df + 1.0) / 2.0,
            (df + 1.0) / 2.0,
            (mf + 2.0) / 2.0,
            1.5,
            (mf + df + 1.0) / 2.0,
            r2,
        )?;
        c_minus(d, m) * envelope * rho * f
    } else {
        let f = hyp3f2(
            df / 2.0,
            df / 2.0,
            (mf + 1.0) / 2.0,
            0.5,
            (mf + df) / 2.0,
            r2,
        )?;
        c_plus(d, m) * envelope * f
    };
    debug_assert!(v.abs() <= 1.0 + 1e-8, "moment {v} escaped [-1, 1]");
    Ok(v.clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::gauss_hermite_prob;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_traits::ToPrimitive;

    #[test]
    fn gamma_matches_exact_half_integers() {
        let sqrt_pi = PI.sqrt();
        // Gamma(k) = (k-1)!, Gamma(k + 1/2) = (2k-1)!! sqrt(pi) / 2^k
        for k in 1u64..=12 {
            let exact = crate::bell::factorial(k - 1).to_f64().unwrap();
            assert_relative_eq!(gamma(k as f64), exact, max_relative = 1e-13);
            let dfac = double_factorial(2 * k - 1).to_f64().unwrap();
            let exact_half = dfac * sqrt_pi / 2f64.powi(k as i32);
            assert_relative_eq!(gamma(k as f64 + 0.5), exact_half, max_relative = 1e-13);
        }
        assert_relative_eq!(gamma(0.5), sqrt_pi, max_relative = 1e-13);
    }

    #[test]
    fn hyp2f1_at_zero_and_quarter() {
        assert_eq!(hyp2f1(0.7, -1.3, 2.2, 0.0).unwrap(), 1.0);
        // arcsin(1/2)/(1/2)
        let v = hyp2f1(0.5, 0.5, 1.5, 0.25).unwrap();
        assert_abs_diff_eq!(v, 0.5f64.asin() / 0.5, epsilon = 1e-12);
    }

    #[test]
    fn hyp2f1_gauss_summation_at_one() {
        let v = hyp2f1(0.5, 0.5, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(v, 4.0 / PI, epsilon = 1e-12);
        assert!(matches!(
            hyp2f1(1.0, 1.0, 1.5, 1.0),
            Err(Error::HypergeomDivergent { .. })
        ));
    }

    #[test]
    fn hyp2f1_binomial_identity() {
        // 2F1(1/2, 1/2, 1/2; z) = (1 - z)^(-1/2)
        for rho in [0.0, 0.3, -0.3, 0.7, -0.7] {
            let z = rho * rho;
            let v = hyp2f1(0.5, 0.5, 0.5, z).unwrap();
            assert_abs_diff_eq!(v, (1.0 - z).powf(-0.5), epsilon = 1e-12);
        }
    }

    #[test]
    fn hyp2f1_rejects_bad_inputs() {
        assert!(hyp2f1(1.0, 1.0, 0.0, 0.5).is_err());
        assert!(hyp2f1(1.0, 1.0, -2.0, 0.5).is_err());
        assert!(hyp2f1(1.0, 1.0, 1.5, 1.5).is_err());
    }

    #[test]
    fn hyp3f2_reduces_when_parameters_cancel() {
        assert_eq!(hyp3f2(0.4, 0.9, 1.7, 2.2, 0.8, 0.0).unwrap(), 1.0);
        // upper {1/2, 1/2, 3/2} against lower {1/2, 3/2} leaves 1F0(1/2; z)
        for z in [0.1, 0.45, 0.8] {
            let v = hyp3f2(0.5, 0.5, 1.5, 0.5, 1.5, z).unwrap();
            assert_abs_diff_eq!(v, (1.0 - z).powf(-0.5), epsilon = 1e-12);
        }
        assert!(hyp3f2(0.5, 0.5, 1.5, 0.5, 1.5, 1.0).is_err());
    }

    #[test]
    fn hyp3f2_matches_arcsin_identity() {
        // (2/pi) rho (1-rho^2)^(1/2) 3F2(1,1,3/2; 3/2,3/2; rho^2) = (2/pi) arcsin(rho)
        let rho = 0.6f64;
        let f = hyp3f2(1.0, 1.0, 1.5, 1.5, 1.5, rho * rho).unwrap();
        let lhs = 2.0 / PI * rho * (1.0 - rho * rho).sqrt() * f;
        assert_abs_diff_eq!(lhs, 2.0 / PI * rho.asin(), epsilon = 1e-10);
    }

    #[test]
    fn hermite_small_cases() {
        assert_eq!(hermite_orthonormal(0, 2.7), 1.0);
        assert_eq!(hermite_orthonormal(1, 1.5), 1.5);
        assert_abs_diff_eq!(
            hermite_orthonormal(2, 0.0),
            -1.0 / 2.0f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn hermite_orthonormality_by_quadrature() {
        let rule = gauss_hermite_prob(200);
        for m in 0..=20usize {
            for n in 0..=20usize {
                let mut acc = 0.0;
                for &(x, w) in &rule {
                    acc += w * hermite_orthonormal(m, x) * hermite_orthonormal(n, x);
                }
                let want = if m == n { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(acc, want, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn norm_cdf_reference_points() {
        assert_abs_diff_eq!(norm_cdf(0.0), 0.5, epsilon = 1e-16);
        // classic table value
        assert_abs_diff_eq!(norm_cdf(1.959_963_984_540_054), 0.975, epsilon = 1e-15);
        assert_abs_diff_eq!(norm_cdf(-8.0), 6.220_960_574_271_786e-16, epsilon = 1e-28);
    }

    /// Independent quantile oracle: bisection against a Maclaurin-series erf.
    fn quantile_by_bisection(p: f64) -> f64 {
        fn erf_maclaurin(x: f64) -> f64 {
            let mut term = x;
            let mut sum = x;
            for n in 1..200 {
                let nf = n as f64;
                term *= -x * x / nf;
                sum += term / (2.0 * nf + 1.0);
            }
            2.0 / PI.sqrt() * sum
        }
        let cdf = |x: f64| 0.5 + 0.5 * erf_maclaurin(x / std::f64::consts::SQRT_2);
        let (mut lo, mut hi) = (-6.0f64, 6.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn quantile_reference_points() {
        assert_eq!(norm_cdf_inv(0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(
            norm_cdf_inv(0.975).unwrap(),
            1.959_963_984_540_054,
            epsilon = 1e-12
        );
        for p in [0.01, 0.1, 0.25, 0.6, 0.9, 0.999] {
            assert_abs_diff_eq!(
                norm_cdf_inv(p).unwrap(),
                quantile_by_bisection(p),
                epsilon = 1e-12
            );
        }
        assert!(norm_cdf_inv(0.0).is_err());
        assert!(norm_cdf_inv(1.0).is_err());
    }

    #[test]
    fn quantile_symmetry() {
        for p in [0.0001, 0.03, 0.2, 0.41, 0.77, 0.98] {
            assert_abs_diff_eq!(
                norm_cdf_inv(p).unwrap(),
                -norm_cdf_inv(1.0 - p).unwrap(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn quantile_roundtrips_cdf() {
        // the lower tail keeps full relative precision in p; on the upper
        // side x is capped where 1 - p is still resolvable in f64
        for &x in &[-8.0, -5.0, -2.2, -0.7, 0.0, 0.9, 3.3] {
            let p = norm_cdf(x);
            assert_abs_diff_eq!(norm_cdf_inv(p).unwrap(), x, epsilon = 1e-12);
        }
    }

    #[test]
    fn named_correlation_functions() {
        assert_abs_diff_eq!(grothendieck_h(1.0), 1.0, epsilon = 1e-15);
        assert_eq!(grothendieck_h(0.0), 0.0);
        assert_abs_diff_eq!(grothendieck_h(0.5), 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(haagerup_h(1.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_eq!(haagerup_h(0.0).unwrap(), 0.0);
        // both identities reduce to the same 2F1 family
        for t in [0.2, 0.5, 0.8] {
            let gro = grothendieck_h(t);
            let via_2f1 = 2.0 / PI * t * hyp2f1(0.5, 0.5, 1.5, t * t).unwrap();
            assert_abs_diff_eq!(gro, via_2f1, epsilon = 1e-13);
        }
    }

    #[test]
    fn moment_normalizers_at_d1() {
        for m in 1..=10u32 {
            assert_abs_diff_eq!(c_minus(1, m), 2.0 / PI, epsilon = 1e-14);
            assert_abs_diff_eq!(c_plus(1, m), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn moment_closed_form_reference_cases() {
        // d = 1, m even: the inner product is a product of signs, so the
        // even moment is identically 1
        for rho in [-0.8, -0.2, 0.0, 0.4, 0.9] {
            assert_abs_diff_eq!(moment_closed_form(1, 2, rho).unwrap(), 1.0, epsilon = 1e-12);
        }
        // d = 1, m = 1 must coincide with the arcsin identity
        assert_abs_diff_eq!(
            moment_closed_form(1, 1, 0.6).unwrap(),
            grothendieck_h(0.6),
            epsilon = 1e-12
        );
        // m = 1 general d: corollary form
        for d in 1..=10u32 {
            for rho in [-0.7, 0.3, 0.85] {
                let direct = moment_closed_form(d, 1, rho).unwrap();
                let cor = c_d(d) * rho * hyp2f1(0.5, 0.5, (2.0 + d as f64) / 2.0, rho * rho).unwrap();
                assert_abs_diff_eq!(direct, cor, epsilon = 1e-10);
            }
        }
        assert!(moment_closed_form(1, 1, 1.0).is_err());
        assert!(moment_closed_form(0, 1, 0.0).is_err());
    }

    #[test]
    fn moments_stay_in_unit_interval() {
        for d in [1u32, 2, 3, 5, 8] {
            for m in 1..=4u32 {
                for rho in [-0.95, -0.5, 0.0, 0.3, 0.99] {
                    let v = moment_closed_form(d, m, rho).unwrap();
                    assert!((-1.0..=1.0).contains(&v), "d={d} m={m} rho={rho}: {v}");
                }
            }
        }
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(0), BigInt::one());
        assert_eq!(double_factorial(1), BigInt::one());
        assert_eq!(double_factorial(5).to_f64().unwrap(), 15.0);
        assert_eq!(double_factorial(6).to_f64().unwrap(), 48.0);
    }
}
