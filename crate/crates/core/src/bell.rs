//! Integer partitions and ordinary partial Bell polynomials, in exact
//! rational arithmetic.
//!
//! `P(n, k)` is the set of multi-indices `nu` of length `n + 1 - k` with
//! `sum nu_i = k` and `sum i*nu_i = n`; the ordinary partial Bell polynomial
//! is
//!
//! ```text
//! B(n, k)(x_1, ..., x_{n+1-k}) = sum_{nu in P(n,k)} k!/(nu_1! ... nu_m!) * x^nu
//! ```
//!
//! which is the combinatorial core of power-series inversion.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Partition sizes above this make `|P(n, k)|` impractical.
pub const DEFAULT_N_CAP: usize = 64;

/// Multiplicity vector of one partition of `n` into `k` parts:
/// `nu[i]` counts parts of size `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    /// `sum nu_i`, the number of parts.
    pub fn part_count(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    /// `sum i * nu_i`, the partitioned integer.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum()
    }

    /// Multinomial weight `k! / prod nu_i!` as an exact integer.
    pub fn multinomial(&self) -> BigInt {
        let k = self.part_count();
        let mut num = factorial(k);
        for &m in &self.0 {
            num /= factorial(m as u64);
        }
        num
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Enumerate `P(n, k)` by recursive descent over the largest part, so the
/// output order is deterministic and stable across releases.
pub fn partitions(n: usize, k: usize) -> Result<Vec<MultiIndex>> {
    partitions_capped(n, k, DEFAULT_N_CAP)
}

/// As [`partitions`] with a caller-chosen cap on `n`.
pub fn partitions_capped(n: usize, k: usize, cap: usize) -> Result<Vec<MultiIndex>> {
    if k == 0 || k > n {
        return Err(Error::InvalidPartitionArgs { n, k });
    }
    if n > cap {
        return Err(Error::SizeOverCap { n, cap });
    }
    let arity = n + 1 - k;
    let mut out = Vec::new();
    let mut nu = vec![0u32; arity];
    descend(n, k, arity, &mut nu, &mut out);
    Ok(out)
}

fn descend(remaining: usize, parts_left: usize, max_part: usize, nu: &mut [u32], out: &mut Vec<MultiIndex>) {
    if parts_left == 0 {
        if remaining == 0 {
            out.push(MultiIndex(nu.to_vec()));
        }
        return;
    }
    // Next (largest remaining) part j: small enough to leave >= 1 per later
    // part, large enough that parts_left copies of it can still reach n.
    let hi = max_part.min(remaining - (parts_left - 1));
    let lo = remaining.div_ceil(parts_left);
    let mut j = hi;
    while j >= lo {
        nu[j - 1] += 1;
        descend(remaining - j, parts_left - 1, j, nu, out);
        nu[j - 1] -= 1;
        if j == 1 {
            break;
        }
        j -= 1;
    }
}

/// Evaluate the ordinary partial Bell polynomial at exact rational arguments.
pub fn bell_ordinary(n: usize, k: usize, x: &[BigRational]) -> Result<BigRational> {
    let arity = n
        .checked_add(1)
        .and_then(|v| v.checked_sub(k))
        .ok_or(Error::InvalidPartitionArgs { n, k })?;
    if x.len() != arity {
        return Err(Error::LengthMismatch {
            expected: arity,
            got: x.len(),
        });
    }
    let mut acc = BigRational::zero();
    for nu in partitions(n, k)? {
        let mut term = BigRational::from_integer(nu.multinomial());
        for (i, &m) in nu.multiplicities().iter().enumerate() {
            for _ in 0..m {
                term *= &x[i];
            }
        }
        acc += term;
    }
    Ok(acc)
}

/// The ordinary partial Bell polynomial as a symbolic polynomial in
/// `x_1 ... x_{n+1-k}`.
pub fn bell_symbolic(n: usize, k: usize) -> Result<SymbolicPolynomial> {
    let arity = n + 1 - k.min(n);
    let mut poly = SymbolicPolynomial::zero(arity);
    for nu in partitions(n, k)? {
        poly.add_term(
            nu.multiplicities().to_vec(),
            BigRational::from_integer(nu.multinomial()),
        );
    }
    Ok(poly)
}

/// Sparse polynomial over `x_1 ... x_arity` with exact rational coefficients.
/// Zero coefficients are never stored; term order is the exponent-vector
/// ordering of the underlying map, so printing is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SymbolicPolynomial {
    pub fn zero(arity: usize) -> Self {
        SymbolicPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: BigRational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add `c * x^exps`, dropping the monomial if the sum cancels.
    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        assert_eq!(exps.len(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &SymbolicPolynomial) {
        assert_eq!(self.arity, other.arity, "polynomial arity mismatch");
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&mut self, c: &BigRational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    /// Reinterpret a polynomial in `x_1.. x_m` as one in `x_{1+shift} ..`
    /// inside a ring with `new_arity` variables.
    pub fn shift_variables(&self, shift: usize, new_arity: usize) -> SymbolicPolynomial {
        let mut out = SymbolicPolynomial::zero(new_arity);
        for (e, c) in &self.terms {
            let mut exps = vec![0u32; new_arity];
            for (i, &p) in e.iter().enumerate() {
                exps[i + shift] = p;
            }
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Multiply by the monomial `x_{var+1}^power` (0-based variable index).
    pub fn mul_monomial(&mut self, var: usize, power: u32) {
        assert!(var < self.arity);
        if power == 0 {
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (mut e, c) in old {
            e[var] += power;
            self.terms.insert(e, c);
        }
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.arity {
            return Err(Error::LengthMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Canonical text form with a caller-chosen variable prefix, terms in
    /// descending exponent-vector order: `2*x1*x3 + x2^2`.
    pub fn format_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (exps, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff < &BigRational::zero();
            let mag = if neg { -coeff.clone() } else { coeff.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || exps.iter().all(|&p| p == 0) {
                factors.push(mag.to_string());
            }
            for (i, &p) in exps.iter().enumerate() {
                match p {
                    0 => {}
                    1 => factors.push(format!("{}{}", prefix, i + 1)),
                    _ => factors.push(format!("{}{}^{}", prefix, i + 1, p)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for SymbolicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    /// Independent enumerator: filter the full grid of candidate
    /// multiplicity vectors by the two Diophantine constraints.
    fn brute_force_partitions(n: usize, k: usize) -> Vec<Vec<u32>> {
        let arity = n + 1 - k;
        let mut found = Vec::new();
        let mut nu = vec![0u32; arity];
        loop {
            let parts: u64 = nu.iter().map(|&m| m as u64).sum();
            let weight: u64 = nu
                .iter()
                .enumerate()
                .map(|(i, &m)| (i as u64 + 1) * m as u64)
                .sum();
            if parts == k as u64 && weight == n as u64 {
                found.push(nu.clone());
            }
            // odometer increment with digits 0..=k
            let mut pos = 0;
            loop {
                if pos == arity {
                    return found;
                }
                if nu[pos] as usize == k {
                    nu[pos] = 0;
                    pos += 1;
                } else {
                    nu[pos] += 1;
                    break;
                }
            }
        }
    }

    #[test]
    fn partitions_3_2() {
        let p = partitions(3, 2).unwrap();
        assert_eq!(p, vec![MultiIndex(vec![1, 1])]);
    }

    #[test]
    fn partitions_4_2_order() {
        let p = partitions(4, 2).unwrap();
        assert_eq!(p, vec![MultiIndex(vec![1, 0, 1]), MultiIndex(vec![0, 2, 0])]);
    }

    #[test]
    fn partitions_n_n() {
        for n in 1..=9 {
            let p = partitions(n, n).unwrap();
            assert_eq!(p, vec![MultiIndex(vec![n as u32])]);
        }
    }

    #[test]
    fn partitions_rejects_bad_args() {
        assert!(matches!(
            partitions(3, 0),
            Err(Error::InvalidPartitionArgs { .. })
        ));
        assert!(matches!(
            partitions(3, 4),
            Err(Error::InvalidPartitionArgs { .. })
        ));
        assert!(matches!(
            partitions_capped(80, 2, 64),
            Err(Error::SizeOverCap { .. })
        ));
    }

    #[test]
    fn diophantine_constraints_hold_up_to_14() {
        for n in 1..=14usize {
            for k in 1..=n {
                for nu in partitions(n, k).unwrap() {
                    assert_eq!(nu.part_count(), k as u64);
                    assert_eq!(nu.weight(), n as u64);
                }
            }
        }
    }

    #[test]
    fn matches_independent_enumerator() {
        for n in 1..=10usize {
            for k in 1..=n {
                let mut fast: Vec<Vec<u32>> = partitions(n, k)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.0)
                    .collect();
                let mut brute = brute_force_partitions(n, k);
                fast.sort();
                brute.sort();
                assert_eq!(fast, brute, "P({n},{k})");
            }
        }
    }

    #[test]
    fn bell_ordinary_examples() {
        // single partition 1+2 gives 2!/(1!1!) * x1*x2 = 2
        assert_eq!(
            bell_ordinary(3, 2, &[int(1), int(1)]).unwrap(),
            int(2)
        );
        // k = 1: only the single part n survives
        let xs: Vec<BigRational> = (1..=6).map(int).collect();
        assert_eq!(bell_ordinary(6, 1, &xs).unwrap(), int(6));
        // k = n: x1^n
        assert_eq!(bell_ordinary(5, 5, &[rat(2, 3)]).unwrap(), {
            let mut acc = BigRational::one();
            for _ in 0..5 {
                acc *= rat(2, 3);
            }
            acc
        });
    }

    #[test]
    fn bell_ordinary_length_mismatch() {
        assert!(matches!(
            bell_ordinary(4, 2, &[int(1)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn bell_symbolic_examples() {
        let p32 = bell_symbolic(3, 2).unwrap();
        let mut want = SymbolicPolynomial::zero(2);
        want.add_term(vec![1, 1], int(2));
        assert_eq!(p32, want);

        let p21 = bell_symbolic(2, 1).unwrap();
        let mut want = SymbolicPolynomial::zero(2);
        want.add_term(vec![0, 1], int(1));
        assert_eq!(p21, want);

        let p42 = bell_symbolic(4, 2).unwrap();
        assert_eq!(p42.format_with("x"), "2*x1*x3 + x2^2");
    }

    #[test]
    fn symbolic_matches_ordinary_at_rational_points() {
        // same grid, weighted sum at all-ones cross-checked via the
        // independent enumerator's multinomial weights
        for n in 1..=9usize {
            for k in 1..=n {
                let arity = n + 1 - k;
                let point: Vec<BigRational> =
                    (0..arity).map(|i| rat(i as i64 + 2, 3)).collect();
                let sym = bell_symbolic(n, k).unwrap().eval(&point).unwrap();
                let ord = bell_ordinary(n, k, &point).unwrap();
                assert_eq!(sym, ord, "B({n},{k})");

                let ones = vec![int(1); arity];
                let at_ones = bell_ordinary(n, k, &ones).unwrap();
                let weight_sum: BigRational = brute_force_partitions(n, k)
                    .into_iter()
                    .map(|nu| BigRational::from_integer(MultiIndex(nu).multinomial()))
                    .sum();
                assert_eq!(at_ones, weight_sum);
            }
        }
    }

    #[test]
    fn display_canonical_form() {
        let mut p = SymbolicPolynomial::zero(3);
        p.add_term(vec![1, 0, 1], int(2));
        p.add_term(vec![0, 2, 0], int(-1));
        assert_eq!(p.to_string(), "2*x1*x3 - x2^2");
        assert_eq!(p.format_with("a"), "2*a1*a3 - a2^2");

        let zero = SymbolicPolynomial::zero(2);
        assert_eq!(zero.to_string(), "0");

        let c = SymbolicPolynomial::constant(2, rat(-1, 2));
        assert_eq!(c.to_string(), "-1/2");
    }

    #[test]
    fn add_term_cancels_to_zero() {
        let mut p = SymbolicPolynomial::zero(2);
        p.add_term(vec![1, 0], int(3));
        p.add_term(vec![1, 0], int(-3));
        assert!(p.is_zero());
    }
}
