//! Truncated one-variable power series over exact rationals or `f64`:
//! construction, Horner evaluation, the absolute-coefficient majorant,
//! inversion (series reversion) and the level-1 root solve.
//!
//! Inversion comes in three routes that must agree:
//! - [`invert_series`]: order-by-order composition recurrence, the workhorse
//!   (feasible to order ~200 in float mode);
//! - [`invert_series_bell`]: the closed formula
//!   `beta_n = (1/n) sum_k (-1)^k C(n-1+k, k) alpha_1^{-(n+k)} B(n-1,k)(alpha_2, ...)`
//!   summed over partitions, exact but limited by partition growth;
//! - [`invert_symbolic`]: the same formula with symbolic alphas, producing
//!   `beta_n * alpha_1^(2n-1)` as a polynomial in `alpha_1 ... alpha_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bell::{self, SymbolicPolynomial};
use crate::error::{Error, Result};

/// Default order cap for the symbolic / partition-sum inversion routes.
pub const SYMBOLIC_ORDER_CAP: usize = 40;
/// Default order cap for the recurrence route.
pub const NUMERIC_ORDER_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Scalar kinds a series can carry: exact rationals or double floats.
pub trait SeriesScalar:
    Clone + PartialEq + PartialOrd + Signed + FromPrimitive + std::fmt::Debug
{
    /// True for exact arithmetic (rationals).
    const EXACT: bool;

    /// Horner evaluation of `c_0 + c_1 x + ... + c_N x^N`; the float
    /// implementation is compensated.
    fn horner(coeffs: &[Self], x: &Self) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

impl SeriesScalar for f64 {
    const EXACT: bool = false;

    fn horner(coeffs: &[Self], x: &Self) -> Self {
        compensated_horner(coeffs, *x)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl SeriesScalar for BigRational {
    const EXACT: bool = true;

    fn horner(coeffs: &[Self], x: &Self) -> Self {
        let mut acc = BigRational::zero();
        for c in coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
}

/// Compensated Horner scheme (error-free transformations with FMA); the
/// result is as accurate as if computed in twice the working precision.
pub fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }
    fn two_prod(a: f64, b: f64) -> (f64, f64) {
        let p = a * b;
        (p, a.mul_add(b, -p))
    }
    match coeffs {
        [] => 0.0,
        [c] => *c,
        _ => {
            let mut s = coeffs[coeffs.len() - 1];
            let mut comp = 0.0f64;
            for &c in coeffs[..coeffs.len() - 1].iter().rev() {
                let (p, e1) = two_prod(s, x);
                let (t, e2) = two_sum(p, c);
                comp = comp.mul_add(x, e1 + e2);
                s = t;
            }
            s + comp
        }
    }
}

/// `BigRational -> f64` that stays finite-and-accurate even when numerator
/// and denominator are both far outside the f64 range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let nb = r.numer().bits();
    let db = r.denom().bits();
    if nb > 1000 && db > 1000 {
        let s = nb.min(db) - 64;
        let n = r.numer() >> s;
        let d = r.denom() >> s;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    } else {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

/// Coefficients `c_0 ..= c_N` of a power series truncated at order `N`,
/// with an optional parity hint enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
    parity: Option<Parity>,
}

impl<T: SeriesScalar> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        let coeffs = if coeffs.is_empty() {
            vec![T::zero()]
        } else {
            coeffs
        };
        TruncatedSeries {
            coeffs,
            parity: None,
        }
    }

    pub fn with_parity(coeffs: Vec<T>, parity: Parity) -> Result<Self> {
        let s = Self::new(coeffs);
        let bad = s.coeffs.iter().enumerate().any(|(i, c)| {
            !c.is_zero()
                && match parity {
                    Parity::Odd => i % 2 == 0,
                    Parity::Even => i % 2 == 1,
                }
        });
        if bad {
            return Err(Error::Domain(format!(
                "coefficients violate the declared {parity:?} parity"
            )));
        }
        Ok(TruncatedSeries {
            parity: Some(parity),
            ..s
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient `c_i`, zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation. The series is only certified on the closed unit
    /// disc, so `|x| > 1` is a domain error.
    pub fn eval(&self, x: &T) -> Result<T> {
        if x.abs() > T::one() {
            return Err(Error::EvalOutOfDomain {
                x: x.to_f64_lossy(),
            });
        }
        Ok(T::horner(&self.coeffs, x))
    }

    /// Termwise derivative, order `N - 1`.
    pub fn derivative(&self) -> TruncatedSeries<T> {
        let coeffs: Vec<T> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.clone() * T::from_usize(n).expect("small integer"))
            .collect();
        let parity = match self.parity {
            Some(Parity::Odd) => Some(Parity::Even),
            Some(Parity::Even) => Some(Parity::Odd),
            None => None,
        };
        TruncatedSeries {
            coeffs: if coeffs.is_empty() {
                vec![T::zero()]
            } else {
                coeffs
            },
            parity,
        }
    }

    /// Truncate (or zero-extend) to order `n`.
    pub fn truncated(&self, n: usize) -> TruncatedSeries<T> {
        let mut coeffs: Vec<T> = self.coeffs.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, T::zero());
        TruncatedSeries {
            coeffs,
            parity: self.parity,
        }
    }

    pub fn to_float(&self) -> TruncatedSeries<f64> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.to_f64_lossy()).collect(),
            parity: self.parity,
        }
    }
}

/// Absolute-coefficient majorant: `sum |c_n| z^n`.
pub fn abs_series<T: SeriesScalar>(s: &TruncatedSeries<T>) -> TruncatedSeries<T> {
    TruncatedSeries {
        coeffs: s.coeffs.iter().map(|c| c.abs()).collect(),
        parity: s.parity,
    }
}

/// Series reversion by the order-by-order composition recurrence: the
/// coefficient of `y^n` in `alpha(beta(y))` is forced to `[n = 1]`.
pub fn invert_series<T: SeriesScalar>(
    alpha: &TruncatedSeries<T>,
    order: usize,
) -> Result<TruncatedSeries<T>> {
    invert_series_capped(alpha, order, NUMERIC_ORDER_CAP)
}

pub fn invert_series_capped<T: SeriesScalar>(
    alpha: &TruncatedSeries<T>,
    order: usize,
    cap: usize,
) -> Result<TruncatedSeries<T>> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    if order > cap {
        return Err(Error::SizeOverCap { n: order, cap });
    }
    if !alpha.coeff(0).is_zero() || alpha.coeff(1).is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let a1 = alpha.coeff(1);

    let mut beta = vec![T::zero(); order + 1];
    beta[1] = T::one() / a1.clone();

    // pow[k][m] = coefficient of y^m in (sum beta_j y^j)^k; row k starts at m = k.
    let mut pow: Vec<Vec<T>> = vec![vec![T::zero(); order + 1]; order + 1];
    pow[1][1] = beta[1].clone();
    #[allow(clippy::needless_range_loop)]
    for n in 2..=order {
        for k in 2..=n {
            let mut acc = T::zero();
            for j in 1..=(n + 1 - k) {
                let b = beta[j].clone();
                if b.is_zero() {
                    continue;
                }
                let pv = pow[k - 1][n - j].clone();
                if pv.is_zero() {
                    continue;
                }
                acc = acc + b * pv;
            }
            pow[k][n] = acc;
        }
        let mut rhs = T::zero();
        for k in 2..=n {
            let ak = alpha.coeff(k);
            if ak.is_zero() {
                continue;
            }
            rhs = rhs + ak * pow[k][n].clone();
        }
        beta[n] = -rhs / a1.clone();
        pow[1][n] = beta[n].clone();
    }

    let parity = if alpha.parity == Some(Parity::Odd) {
        Some(Parity::Odd)
    } else {
        None
    };
    Ok(TruncatedSeries {
        coeffs: beta,
        parity,
    })
}

/// Series reversion through partial Bell polynomials, evaluated exactly over
/// the rationals. Slow beyond order ~40 because the partition sets blow up.
pub fn invert_series_bell(
    alpha: &TruncatedSeries<BigRational>,
    order: usize,
) -> Result<TruncatedSeries<BigRational>> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    if order > SYMBOLIC_ORDER_CAP {
        return Err(Error::SizeOverCap {
            n: order,
            cap: SYMBOLIC_ORDER_CAP,
        });
    }
    if !alpha.coeff(0).is_zero() || alpha.coeff(1).is_zero() {
        return Err(Error::NonInvertibleSeries);
    }
    let a1 = alpha.coeff(1);
    let inv_a1 = BigRational::one() / a1;

    let mut beta = vec![BigRational::zero(); order + 1];
    beta[1] = inv_a1.clone();
    #[allow(clippy::needless_range_loop)]
    for n in 2..=order {
        let mut acc = BigRational::zero();
        for k in 1..=(n - 1) {
            // arguments alpha_2 .. alpha_{n-k+1}
            let args: Vec<BigRational> = (2..=(n - k + 1)).map(|i| alpha.coeff(i)).collect();
            let b = bell::bell_ordinary(n - 1, k, &args)?;
            if b.is_zero() {
                continue;
            }
            let mut term = BigRational::from_integer(bell::binomial((n - 1 + k) as u64, k as u64));
            term *= b;
            let mut scale = BigRational::one();
            for _ in 0..(n + k) {
                scale *= &inv_a1;
            }
            term *= scale;
            if k % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        beta[n] = acc / BigRational::from_integer(BigInt::from(n));
    }
    let parity = if alpha.parity == Some(Parity::Odd) {
        Some(Parity::Odd)
    } else {
        None
    };
    Ok(TruncatedSeries {
        coeffs: beta,
        parity,
    })
}

/// The polynomial `beta_n * alpha_1^(2n-1)` in variables `alpha_1 ... alpha_n`,
/// built from symbolic partial Bell polynomials. `n = 1` gives the constant 1.
pub fn invert_symbolic(n: usize) -> Result<SymbolicPolynomial> {
    if n < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: n });
    }
    if n > SYMBOLIC_ORDER_CAP {
        return Err(Error::SizeOverCap {
            n,
            cap: SYMBOLIC_ORDER_CAP,
        });
    }
    if n == 1 {
        return Ok(SymbolicPolynomial::constant(1, BigRational::one()));
    }
    let mut poly = SymbolicPolynomial::zero(n);
    for k in 1..=(n - 1) {
        // B(n-1, k) lives in x_1 .. x_{n-k}; substitute x_i -> alpha_{i+1}
        let mut part = bell::bell_symbolic(n - 1, k)?.shift_variables(1, n);
        part.mul_monomial(0, (n - 1 - k) as u32);
        let mut c = BigRational::from_integer(bell::binomial((n - 1 + k) as u64, k as u64));
        c /= BigRational::from_integer(BigInt::from(n));
        if k % 2 == 1 {
            c = -c;
        }
        part.scale(&c);
        poly.add_assign(&part);
    }
    Ok(poly)
}

/// Outcome of the level-1 root solve on a non-negative-coefficient majorant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootOutcome {
    /// `f(r) = 1` with `0 < r < 1`.
    Interior(f64),
    /// `f(1) = 1` within tolerance; no interior root.
    DegenerateAtOne,
}

/// Solve `f(r) = 1` on `(0, 1]` for a series with non-negative coefficients
/// (so `f` is non-decreasing there and the root is unique).
pub fn solve_unit_level(f: &TruncatedSeries<f64>, tol: f64) -> Result<RootOutcome> {
    if f.coeffs.iter().any(|&c| c < 0.0) {
        return Err(Error::Domain(
            "level-1 solve needs non-negative coefficients".into(),
        ));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let f0 = f.coeff(0);
    if f0 >= 1.0 {
        return Err(Error::Domain(
            "constant term is already >= 1; no root in (0, 1]".into(),
        ));
    }
    let f1 = f.eval(&1.0)?;
    if f1 < 1.0 - tol {
        return Err(Error::NoRootInUnitInterval { f_at_one: f1 });
    }
    if (f1 - 1.0).abs() <= tol {
        return Ok(RootOutcome::DegenerateAtOne);
    }

    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f.eval(&mid)? - 1.0;
        if v == 0.0 {
            return Ok(RootOutcome::Interior(mid));
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let residual = (f.eval(&r)? - 1.0).abs();
    if residual > tol {
        return Err(Error::Domain(format!(
            "root residual {residual} exceeds tolerance {tol}"
        )));
    }
    Ok(RootOutcome::Interior(r))
}

/// Wire form of a series: `{"order": N, "kind": "rational"|"float",
/// "coeffs": [...]}` with rationals as `"p/q"` strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSeries {
    order: usize,
    kind: String,
    coeffs: Vec<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub enum AnySeries {
    Rational(TruncatedSeries<BigRational>),
    Float(TruncatedSeries<f64>),
}

impl AnySeries {
    pub fn from_json(text: &str) -> Result<AnySeries> {
        let raw: RawSeries = serde_json::from_str(text)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(Error::LengthMismatch {
                expected: raw.order + 1,
                got: raw.coeffs.len(),
            });
        }
        match raw.kind.as_str() {
            "rational" => {
                let mut coeffs = Vec::with_capacity(raw.coeffs.len());
                for v in &raw.coeffs {
                    let c = match v {
                        serde_json::Value::String(s) => s
                            .parse::<BigRational>()
                            .map_err(|e| Error::Domain(format!("bad rational {s:?}: {e}")))?,
                        serde_json::Value::Number(n) if n.is_i64() => {
                            BigRational::from_integer(BigInt::from(n.as_i64().unwrap()))
                        }
                        other => {
                            return Err(Error::Domain(format!(
                                "rational coefficients must be \"p/q\" strings, got {other}"
                            )))
                        }
                    };
                    coeffs.push(c);
                }
                Ok(AnySeries::Rational(TruncatedSeries::new(coeffs)))
            }
            "float" => {
                let mut coeffs = Vec::with_capacity(raw.coeffs.len());
                for v in &raw.coeffs {
                    let c = v
                        .as_f64()
                        .ok_or_else(|| Error::Domain(format!("bad float coefficient {v}")))?;
                    coeffs.push(c);
                }
                Ok(AnySeries::Float(TruncatedSeries::new(coeffs)))
            }
            other => Err(Error::Domain(format!(
                "unknown series kind {other:?}; expected \"rational\" or \"float\""
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            AnySeries::Rational(s) => RawSeries {
                order: s.order(),
                kind: "rational".into(),
                coeffs: s
                    .coeffs()
                    .iter()
                    .map(|c| serde_json::Value::String(c.to_string()))
                    .collect(),
            },
            AnySeries::Float(s) => RawSeries {
                order: s.order(),
                kind: "float".into(),
                coeffs: s
                    .coeffs()
                    .iter()
                    .map(|&c| {
                        serde_json::Number::from_f64(c)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null)
                    })
                    .collect(),
            },
        };
        serde_json::to_string_pretty(&raw).expect("series serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// sin(pi/2 y) coefficients as a float series of the given order.
    fn sin_half_pi_series(order: usize) -> TruncatedSeries<f64> {
        let mut c = vec![0.0; order + 1];
        let mut term = PI / 2.0; // (pi/2)^(2k+1) / (2k+1)!
        let mut k = 0usize;
        while 2 * k < order {
            c[2 * k + 1] = if k.is_multiple_of(2) { term } else { -term };
            term *= (PI / 2.0) * (PI / 2.0) / (((2 * k + 2) * (2 * k + 3)) as f64);
            k += 1;
        }
        TruncatedSeries::with_parity(c, Parity::Odd).unwrap()
    }

    #[test]
    fn beta2_closed_form() {
        // beta_2 = -alpha_2 / alpha_1^3
        let alpha = TruncatedSeries::new(vec![int(0), rat(3, 2), rat(5, 7)]);
        let beta = invert_series(&alpha, 2).unwrap();
        assert_eq!(beta.coeff(1), rat(2, 3));
        assert_eq!(beta.coeff(2), -rat(5, 7) / (rat(3, 2) * rat(3, 2) * rat(3, 2)));
    }

    #[test]
    fn beta3_closed_form() {
        // beta_3 alpha_1^5 = -alpha_1 alpha_3 + 2 alpha_2^2
        let a1 = rat(2, 1);
        let a2 = rat(1, 3);
        let a3 = rat(-1, 5);
        let alpha = TruncatedSeries::new(vec![int(0), a1.clone(), a2.clone(), a3.clone()]);
        let beta = invert_series(&alpha, 3).unwrap();
        let a1_5 = a1.clone() * a1.clone() * a1.clone() * a1.clone() * a1.clone();
        assert_eq!(
            beta.coeff(3) * a1_5,
            -a1 * a3 + int(2) * a2.clone() * a2
        );
    }

    #[test]
    fn invert_rejects_bad_series() {
        let has_const = TruncatedSeries::new(vec![int(1), int(1)]);
        assert!(matches!(
            invert_series(&has_const, 3),
            Err(Error::NonInvertibleSeries)
        ));
        let no_linear = TruncatedSeries::new(vec![int(0), int(0), int(1)]);
        assert!(matches!(
            invert_series(&no_linear, 3),
            Err(Error::NonInvertibleSeries)
        ));
        let ok = TruncatedSeries::new(vec![int(0), int(1)]);
        assert!(matches!(
            invert_series(&ok, 0),
            Err(Error::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn recurrence_matches_bell_formula_route() {
        let alpha = TruncatedSeries::new(vec![
            int(0),
            rat(2, 1),
            rat(-1, 3),
            rat(1, 7),
            rat(2, 5),
            rat(-3, 11),
            rat(1, 2),
            rat(5, 13),
            rat(-2, 9),
        ]);
        let fast = invert_series(&alpha, 8).unwrap();
        let bell_route = invert_series_bell(&alpha, 8).unwrap();
        assert_eq!(fast.coeffs(), bell_route.coeffs());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn prop_invert_routes_agree(
            nums in proptest::collection::vec(-9i64..=9, 6),
            a1_num in 1i64..=6,
        ) {
            let mut coeffs = vec![int(0), rat(a1_num, 2)];
            coeffs.extend(nums.iter().map(|&v| rat(v, 4)));
            let alpha = TruncatedSeries::new(coeffs);
            let fast = invert_series(&alpha, 7).unwrap();
            let bell_route = invert_series_bell(&alpha, 7).unwrap();
            prop_assert_eq!(fast.coeffs(), bell_route.coeffs());
        }

        #[test]
        fn prop_roundtrip_composition_is_identity(
            nums in proptest::collection::vec(-5i64..=5, 8),
            a1_num in 1i64..=4,
        ) {
            let order = 9usize;
            let mut coeffs = vec![int(0), rat(a1_num, 2)];
            coeffs.extend(nums.iter().map(|&v| rat(v, 3)));
            let alpha = TruncatedSeries::new(coeffs);
            let beta = invert_series(&alpha, order).unwrap();

            // exact polynomial composition alpha(beta(y)); identity through
            // the truncation order
            let comp = compose_exact(&alpha, &beta, order);
            prop_assert_eq!(comp[0].clone(), int(0));
            prop_assert_eq!(comp[1].clone(), int(1));
            for c in comp.iter().take(order + 1).skip(2) {
                prop_assert_eq!(c.clone(), int(0));
            }

            // nested float evaluation agrees with x up to the exact
            // composition remainder plus float slack
            let af = alpha.to_float();
            let bf = beta.to_float();
            let full = compose_exact_full(&alpha, &beta);
            for i in 0..20 {
                let x = -0.3 + 0.6 * (i as f64 + 0.5) / 20.0;
                let inner = bf.eval(&x).unwrap();
                if inner.abs() > 1.0 { continue; }
                let outer = af.eval(&inner).unwrap();
                let xr = BigRational::from_f64(x).unwrap();
                let remainder = (BigRational::horner(&full, &xr)
                    - xr).abs().to_f64_lossy();
                prop_assert!((outer - x).abs() <= remainder + 1e-9,
                    "x={x} outer={outer} remainder={remainder}");
            }
        }
    }

    /// Exact coefficients of alpha(beta(y)) through `order`.
    fn compose_exact(
        alpha: &TruncatedSeries<BigRational>,
        beta: &TruncatedSeries<BigRational>,
        order: usize,
    ) -> Vec<BigRational> {
        compose_exact_full(alpha, beta)
            .into_iter()
            .take(order + 1)
            .collect()
    }

    /// Full exact composition polynomial (degree = order_a * order_b).
    fn compose_exact_full(
        alpha: &TruncatedSeries<BigRational>,
        beta: &TruncatedSeries<BigRational>,
    ) -> Vec<BigRational> {
        let deg = alpha.order() * beta.order() + 1;
        let mut acc = vec![BigRational::zero(); deg.max(1)];
        // Horner over polynomial coefficients
        for k in (0..=alpha.order()).rev() {
            // acc = acc * beta + alpha_k
            let mut next = vec![BigRational::zero(); deg.max(1)];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in beta.coeffs().iter().enumerate() {
                    if b.is_zero() || i + j >= next.len() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    next[i + j] += prod;
                }
            }
            next[0] += alpha.coeff(k);
            acc = next;
        }
        acc
    }

    #[test]
    fn abs_series_examples() {
        let s = TruncatedSeries::new(vec![0.0, 1.5, -2.0, 0.25]);
        let a = abs_series(&s);
        assert_eq!(a.coeffs(), &[0.0, 1.5, 2.0, 0.25]);

        let nonneg = TruncatedSeries::new(vec![0.5, 1.0, 2.0]);
        assert_eq!(abs_series(&nonneg).coeffs(), nonneg.coeffs());

        let zero: TruncatedSeries<f64> = TruncatedSeries::new(vec![0.0, 0.0]);
        assert_eq!(abs_series(&zero).coeffs(), &[0.0, 0.0]);
    }

    #[test]
    fn eval_constant_and_domain() {
        let s = TruncatedSeries::new(vec![0.75, 1.0, 2.0]);
        assert_eq!(s.eval(&0.0).unwrap(), 0.75);
        assert!(matches!(
            s.eval(&1.5),
            Err(Error::EvalOutOfDomain { .. })
        ));
    }

    #[test]
    fn sinh_majorant_hits_one_at_krivine_root() {
        // f(t) = sinh(pi t / 2) truncated at order 41; the root of f = 1 is
        // 2 ln(1 + sqrt 2) / pi and the truncation tail there is far below
        // double precision
        let f = abs_series(&sin_half_pi_series(41));
        let r = 2.0 * (1.0 + 2.0f64.sqrt()).ln() / PI;
        assert_abs_diff_eq!(f.eval(&r).unwrap(), 1.0, epsilon = 1e-12);

        match solve_unit_level(&f, 1e-12).unwrap() {
            RootOutcome::Interior(root) => {
                assert_abs_diff_eq!(root, r, epsilon = 1e-10);
            }
            other => panic!("expected interior root, got {other:?}"),
        }
    }

    #[test]
    fn solve_identity_is_degenerate() {
        let f = TruncatedSeries::new(vec![0.0, 1.0]);
        assert_eq!(
            solve_unit_level(&f, 1e-12).unwrap(),
            RootOutcome::DegenerateAtOne
        );
    }

    #[test]
    fn solve_below_one_is_no_root() {
        let f = TruncatedSeries::new(vec![0.0, 0.9]);
        assert!(matches!(
            solve_unit_level(&f, 1e-12),
            Err(Error::NoRootInUnitInterval { .. })
        ));
    }

    #[test]
    fn roots_non_increasing_in_order() {
        // adding non-negative terms can only lower the level-1 root
        let f = abs_series(&sin_half_pi_series(21));
        let mut prev = f64::INFINITY;
        for n in 1..=21usize {
            let g = f.truncated(n);
            if g.eval(&1.0).unwrap() < 1.0 {
                continue;
            }
            if let RootOutcome::Interior(r) = solve_unit_level(&g, 1e-12).unwrap() {
                assert!(r <= prev + 1e-14, "order {n}: {r} > {prev}");
                prev = r;
            }
        }
        assert!(prev.is_finite());
    }

    #[test]
    fn compensated_horner_beats_naive_on_cancellation() {
        // (x - 1)^9 expanded; near x = 1 naive Horner loses most digits
        let c: Vec<f64> = vec![-1., 9., -36., 84., -126., 126., -84., 36., -9., 1.];
        let x = 1.0 + 1e-5;
        let exact = (x - 1.0f64).powi(9);
        let comp = compensated_horner(&c, x);
        assert!((comp - exact).abs() <= 1e-18);
    }

    #[test]
    fn parity_validation() {
        assert!(TruncatedSeries::with_parity(vec![0.0, 1.0, 0.5], Parity::Odd).is_err());
        let s = TruncatedSeries::with_parity(vec![0.0, 1.0, 0.0, -0.5], Parity::Odd).unwrap();
        assert_eq!(s.parity(), Some(Parity::Odd));
        assert_eq!(s.derivative().parity(), Some(Parity::Even));
    }

    #[test]
    fn json_roundtrip_rational_and_float() {
        let s = AnySeries::Rational(TruncatedSeries::new(vec![int(0), rat(2, 3), rat(-1, 6)]));
        let text = s.to_json();
        assert!(text.contains("\"2/3\""));
        match AnySeries::from_json(&text).unwrap() {
            AnySeries::Rational(t) => {
                assert_eq!(t.coeffs(), &[int(0), rat(2, 3), rat(-1, 6)])
            }
            _ => panic!("kind flipped"),
        }

        let f = AnySeries::Float(TruncatedSeries::new(vec![0.0, 1.5]));
        match AnySeries::from_json(&f.to_json()).unwrap() {
            AnySeries::Float(t) => assert_eq!(t.coeffs(), &[0.0, 1.5]),
            _ => panic!("kind flipped"),
        }

        assert!(AnySeries::from_json("{\"order\":2,\"kind\":\"float\",\"coeffs\":[1.0]}").is_err());
    }

    #[test]
    fn rational_to_f64_handles_huge_terms() {
        let huge: BigInt = BigInt::from(7) << 3000u32;
        let r = BigRational::new(huge.clone() * 3, huge);
        assert_abs_diff_eq!(rational_to_f64(&r), 3.0, epsilon = 1e-12);
    }
}
