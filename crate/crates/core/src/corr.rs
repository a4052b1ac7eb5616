//! Correlation-matrix calculus: Schur products, entrywise maps, PSD
//! validation, Gram-based random correlation matrices, the block operator
//! `J(A)`, the `(infinity, 1)` operator norm, CCP probing and the block
//! transform that turns a solved concept into new correlation matrices.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;
use crate::special;

/// Baseline PSD tolerance; every eigenvalue check scales it by `max(1, k)`.
pub const DEFAULT_PSD_TOL: f64 = 1e-8;
/// Hermitian-symmetry tolerance for inputs of eigenvalue checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Exact `(infinity, 1)`-norm enumeration cap on `m + n`.
pub const NORM_EXACT_CAP: usize = 22;

/// Scalar fields the matrix calculus runs over.
pub trait CorrScalar: ComplexField<RealField = f64> + Copy {
    const FIELD_NAME: &'static str;
}

impl CorrScalar for f64 {
    const FIELD_NAME: &'static str = "real";
}

impl CorrScalar for Complex64 {
    const FIELD_NAME: &'static str = "complex";
}

fn max_asymmetry<T: CorrScalar>(m: &DMatrix<T>) -> f64 {
    let k = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            worst = worst.max((m[(i, j)] - m[(j, i)].conjugate()).modulus());
        }
    }
    worst
}

/// Minimum eigenvalue of the Hermitian part (the input must already be
/// Hermitian within [`HERMITIAN_TOL`]).
pub fn min_eigenvalue<T: CorrScalar>(m: &DMatrix<T>) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", m.nrows(), m.ncols()),
            right: "square".into(),
        });
    }
    let asym = max_asymmetry(m);
    if asym > HERMITIAN_TOL {
        return Err(Error::NonHermitian {
            max_asym: asym,
            tol: HERMITIAN_TOL,
        });
    }
    let herm = m.hermitian_part();
    let eig = herm.symmetric_eigen();
    Ok(eig.eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b)))
}

/// PSD test with size-scaled tolerance: true iff the minimum eigenvalue is
/// at least `-tol * max(1, k)`. Returns the eigenvalue as the diagnostic.
pub fn is_psd<T: CorrScalar>(m: &DMatrix<T>, tol: f64) -> Result<(bool, f64)> {
    let min_eig = min_eigenvalue(m)?;
    let k = m.nrows().max(1) as f64;
    Ok((min_eig >= -tol * k, min_eig))
}

/// A validated correlation matrix: Hermitian, unit diagonal, entries in the
/// closed unit disc, positive semidefinite within the stored tolerance.
#[derive(Debug, Clone)]
pub struct CorrMatrix<T: CorrScalar> {
    data: DMatrix<T>,
    psd_tol: f64,
    min_eig: f64,
}

pub type RealCorrMatrix = CorrMatrix<f64>;
pub type ComplexCorrMatrix = CorrMatrix<Complex64>;

impl<T: CorrScalar> CorrMatrix<T> {
    pub fn new(data: DMatrix<T>) -> Result<Self> {
        Self::with_tolerance(data, DEFAULT_PSD_TOL)
    }

    pub fn with_tolerance(data: DMatrix<T>, psd_tol: f64) -> Result<Self> {
        let k = data.nrows();
        let scaled = psd_tol * (k.max(1) as f64);
        for i in 0..k {
            let dev = (data[(i, i)] - T::one()).modulus();
            if dev > scaled {
                return Err(Error::NotUnitDiagonal {
                    index: i,
                    value: data[(i, i)].real(),
                });
            }
        }
        for i in 0..k {
            for j in 0..k {
                let m = data[(i, j)].modulus();
                if m > 1.0 + scaled {
                    return Err(Error::EntryOutOfDomain { value: m });
                }
            }
        }
        let (ok, min_eig) = is_psd(&data, psd_tol)?;
        if !ok {
            return Err(Error::NotPsd { size: k, min_eig });
        }
        Ok(CorrMatrix {
            data,
            psd_tol,
            min_eig,
        })
    }

    pub fn size(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.data
    }

    pub fn psd_tolerance(&self) -> f64 {
        self.psd_tol
    }

    /// Minimum eigenvalue recorded at validation time.
    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eig
    }
}

/// Entrywise (Schur/Hadamard) product.
pub fn schur_product<T: CorrScalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.nrows(), a.ncols()),
            right: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(a.component_mul(b))
}

/// Scalar maps applied entrywise in probes and transforms.
#[derive(Debug, Clone)]
pub enum EntryMap {
    Identity,
    /// `(2/pi) arcsin(x)`, the CCP normalization of arcsin.
    GrothendieckArcsin,
    /// `sin(pi x / 2)`: inverse of the above, not CCP.
    SinHalfPi,
    /// A series-backed map, only defined on `[-1, 1]`.
    Series(TruncatedSeries<f64>),
}

impl EntryMap {
    pub fn apply(&self, x: f64) -> Result<f64> {
        match self {
            EntryMap::Identity => Ok(x),
            EntryMap::GrothendieckArcsin => {
                if x.abs() > 1.0 {
                    return Err(Error::EntryOutOfDomain { value: x });
                }
                Ok(special::grothendieck_h(x))
            }
            EntryMap::SinHalfPi => Ok((std::f64::consts::PI / 2.0 * x).sin()),
            EntryMap::Series(s) => s
                .eval(&x)
                .map_err(|_| Error::EntryOutOfDomain { value: x }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            EntryMap::Identity => "identity".into(),
            EntryMap::GrothendieckArcsin => "arcsin".into(),
            EntryMap::SinHalfPi => "sin".into(),
            EntryMap::Series(s) => format!("series(order {})", s.order()),
        }
    }
}

/// `f[A]`: the map applied to every entry.
pub fn entrywise_apply(f: &EntryMap, a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::<f64>::zeros(a.nrows(), a.ncols());
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            out[(i, j)] = f.apply(a[(i, j)])?;
        }
    }
    Ok(out)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-task seed from a base seed and task coordinates.
pub(crate) fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    splitmix64(splitmix64(seed ^ a.wrapping_mul(0x9E37_79B9)).wrapping_add(b))
}

fn random_unit_vector(rng: &mut ChaCha12Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Gram matrix of `k` independent uniform unit vectors in dimension
/// `rank_d`: unit diagonal by construction, PSD of rank at most `rank_d`,
/// deterministic per seed.
pub fn random_correlation(k: usize, rank_d: usize, seed: u64) -> Result<RealCorrMatrix> {
    if k == 0 || rank_d == 0 {
        return Err(Error::Domain("need k >= 1 and rank_d >= 1".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let vectors: Vec<Vec<f64>> = (0..k).map(|_| random_unit_vector(&mut rng, rank_d)).collect();
    let mut m = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = 1.0;
        for j in (i + 1)..k {
            let dot: f64 = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| a * b)
                .sum();
            let dot = dot.clamp(-1.0, 1.0);
            m[(i, j)] = dot;
            m[(j, i)] = dot;
        }
    }
    CorrMatrix::new(m)
}

/// The Hermitian block operator `J(A) = 1/2 [[0, A], [A*, 0]]`.
#[derive(Debug, Clone)]
pub struct BlockJ<T: CorrScalar> {
    a: DMatrix<T>,
}

impl<T: CorrScalar> BlockJ<T> {
    pub fn new(a: DMatrix<T>) -> Self {
        BlockJ { a }
    }

    pub fn inner(&self) -> &DMatrix<T> {
        &self.a
    }

    pub fn size(&self) -> usize {
        self.a.nrows() + self.a.ncols()
    }

    /// The realized `(m+n) x (m+n)` Hermitian matrix.
    pub fn realized(&self) -> DMatrix<T> {
        let (m, n) = self.a.shape();
        let mut out = DMatrix::<T>::zeros(m + n, m + n);
        for i in 0..m {
            for j in 0..n {
                let half = self.a[(i, j)].unscale(2.0);
                out[(i, m + j)] = half;
                out[(m + j, i)] = half.conjugate();
            }
        }
        out
    }

    /// `tr(J(A) Sigma)` without forming the product.
    pub fn trace_with(&self, sigma: &DMatrix<T>) -> Result<T> {
        trace_pair(&self.realized(), sigma)
    }
}

/// `tr(B^* Sigma)`, the Frobenius pairing.
pub fn trace_pair<T: CorrScalar>(b: &DMatrix<T>, sigma: &DMatrix<T>) -> Result<T> {
    if b.shape() != sigma.shape() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", b.nrows(), b.ncols()),
            right: format!("{}x{}", sigma.nrows(), sigma.ncols()),
        });
    }
    let mut acc = T::zero();
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            acc += b[(i, j)].conjugate() * sigma[(i, j)];
        }
    }
    Ok(acc)
}

/// Result of the `(infinity, 1)` norm computation with its witness sign /
/// phase vectors. `certified` distinguishes exact enumeration from the
/// heuristic, which only yields a lower bound on the norm.
#[derive(Debug, Clone)]
pub struct NormInf1<T: CorrScalar> {
    pub value: f64,
    pub row_signs: Vec<T>,
    pub col_signs: Vec<T>,
    pub certified: bool,
}

/// Exact real `(infinity, 1)` norm: `max_{p, q in {-1,1}} p^T A q`, folded to
/// `max_p sum_j |(A^T p)_j|` and enumerated over `2^(m-1)` sign patterns on
/// the smaller side.
pub fn norm_inf1_exact(a: &DMatrix<f64>) -> Result<NormInf1<f64>> {
    let (m, n) = a.shape();
    if m + n > NORM_EXACT_CAP {
        return Err(Error::NormSizeOverCap {
            size: m + n,
            cap: NORM_EXACT_CAP,
        });
    }
    if m == 0 || n == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    // enumerate over the smaller dimension; p^T A q = q^T A^T p
    let transposed = m > n;
    let work = if transposed { a.transpose() } else { a.clone() };
    let (m, n) = work.shape();

    let mut best = f64::NEG_INFINITY;
    let mut best_p = vec![1.0f64; m];
    for bits in 0..(1u64 << (m - 1)) {
        let p: Vec<f64> = (0..m)
            .map(|i| {
                if i == 0 {
                    1.0
                } else if (bits >> (i - 1)) & 1 == 1 {
                    -1.0
                } else {
                    1.0
                }
            })
            .collect();
        let mut total = 0.0;
        for j in 0..n {
            let mut col = 0.0;
            for i in 0..m {
                col += work[(i, j)] * p[i];
            }
            total += col.abs();
        }
        if total > best {
            best = total;
            best_p = p;
        }
    }
    let q: Vec<f64> = (0..n)
        .map(|j| {
            let mut col = 0.0;
            for i in 0..m {
                col += work[(i, j)] * best_p[i];
            }
            crate::concepts::sign_unit(col)
        })
        .collect();
    let (row_signs, col_signs) = if transposed { (q, best_p) } else { (best_p, q) };
    Ok(NormInf1 {
        value: best,
        row_signs,
        col_signs,
        certified: true,
    })
}

fn unimodular<T: CorrScalar>(z: T) -> T {
    let m = z.modulus();
    if m == 0.0 {
        T::one()
    } else {
        z.unscale(m)
    }
}

/// Alternating phase maximization from random sign starts; works over both
/// fields but only certifies a lower bound on the norm.
pub fn norm_inf1_heuristic<T: CorrScalar>(
    a: &DMatrix<T>,
    starts: usize,
    seed: u64,
) -> NormInf1<T> {
    let (m, n) = a.shape();
    let mut best = f64::NEG_INFINITY;
    let mut best_pq: (Vec<T>, Vec<T>) = (vec![T::one(); m], vec![T::one(); n]);
    for s in 0..starts.max(1) {
        let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, 0x6e6f726d, s as u64));
        let mut q: Vec<T> = (0..n)
            .map(|_| {
                if rng.gen::<bool>() {
                    T::one()
                } else {
                    -T::one()
                }
            })
            .collect();
        let mut p = vec![T::one(); m];
        let mut value = 0.0f64;
        for _ in 0..100 {
            // p maximizing |p^T (A q)|: conjugate phases of A q
            for i in 0..m {
                let mut acc = T::zero();
                for j in 0..n {
                    acc += a[(i, j)] * q[j];
                }
                p[i] = unimodular(acc.conjugate());
            }
            // q maximizing against A^T p
            let mut new_value = 0.0f64;
            for j in 0..n {
                let mut acc = T::zero();
                for i in 0..m {
                    acc += a[(i, j)] * p[i];
                }
                q[j] = unimodular(acc.conjugate());
                new_value += acc.modulus();
            }
            if new_value <= value * (1.0 + 1e-14) {
                value = new_value.max(value);
                break;
            }
            value = new_value;
        }
        if value > best {
            best = value;
            best_pq = (p, q);
        }
    }
    NormInf1 {
        value: best,
        row_signs: best_pq.0,
        col_signs: best_pq.1,
        certified: false,
    }
}

/// Front end matching the two modes: exact enumeration (real only) or
/// the multi-start heuristic.
pub fn norm_inf1(a: &DMatrix<f64>, exact: bool, seed: u64) -> Result<NormInf1<f64>> {
    if exact {
        norm_inf1_exact(a)
    } else {
        Ok(norm_inf1_heuristic(a, 32, seed))
    }
}

/// One recorded CCP violation: the input correlation matrix whose image
/// under the map failed the PSD check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CcpViolation {
    pub size: usize,
    pub rank: usize,
    pub trial: usize,
    pub seed: u64,
    pub min_eig: f64,
    /// Row-major input matrix.
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CcpProbeReport {
    pub map: String,
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub psd_tol: f64,
    pub cells: usize,
    pub worst_min_eig: f64,
    pub violations: usize,
    /// Up to eight violating instances, in deterministic (size, trial) order.
    pub first_violations: Vec<CcpViolation>,
}

/// Apply `f` entrywise to `trials` random correlation matrices per size and
/// record the worst minimum eigenvalue of the images. Trials run in
/// parallel; per-trial seeds derive from (seed, size, trial), so reports are
/// identical for any worker count.
pub fn ccp_probe(
    f: &EntryMap,
    sizes: &[usize],
    trials: usize,
    seed: u64,
    psd_tol: f64,
) -> Result<CcpProbeReport> {
    let tasks: Vec<(usize, usize)> = sizes
        .iter()
        .flat_map(|&s| (0..trials).map(move |t| (s, t)))
        .collect();
    let outcomes: Vec<Result<(f64, Option<CcpViolation>)>> = tasks
        .par_iter()
        .map(|&(size, trial)| {
            let trial_seed = derive_seed(seed, size as u64, trial as u64);
            let rank = (trial % size.max(1)) + 1;
            let sigma = random_correlation(size, rank, trial_seed)?;
            let image = entrywise_apply(f, sigma.matrix())?;
            let min_eig = min_eigenvalue(&image)?;
            let bad = min_eig < -psd_tol * (size as f64);
            let violation = bad.then(|| CcpViolation {
                size,
                rank,
                trial,
                seed: trial_seed,
                min_eig,
                matrix: matrix_rows(sigma.matrix()),
            });
            Ok((min_eig, violation))
        })
        .collect();

    let mut worst = f64::INFINITY;
    let mut violations = 0usize;
    let mut first_violations = Vec::new();
    for outcome in outcomes {
        let (min_eig, violation) = outcome?;
        worst = worst.min(min_eig);
        if let Some(v) = violation {
            violations += 1;
            if first_violations.len() < 8 {
                first_violations.push(v);
            }
        }
    }
    Ok(CcpProbeReport {
        map: f.name(),
        sizes: sizes.to_vec(),
        trials,
        seed,
        psd_tol,
        cells: tasks.len(),
        worst_min_eig: worst,
        violations,
        first_violations,
    })
}

fn matrix_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

/// Validation outcome of a block transform.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockValidation {
    pub unit_diag_ok: bool,
    pub max_diag_dev: f64,
    pub psd_ok: bool,
    pub min_eig: f64,
    /// Largest entry difference between the direct assembly
    /// `[[h.f[rA], rZ], [rZ^T, h.f[rB]]]` and the factored route
    /// `h[[f[rA], g[rZ]], [g[rZ]^T, f[rB]]]`; small when `g` really inverts
    /// `h` at the working order.
    pub route_deviation: f64,
}

/// Assemble `Sigma_b(r) = [[h.f[r A], r Z], [r Z^T, h.f[r B]]]` from a
/// `2k x 2k` correlation matrix and validate it. `h`, `f`, `g` are the
/// entrywise maps of the workflow (correlation function, majorant, inverse).
pub fn block_transform<Fh, Ff, Fg>(
    sigma: &RealCorrMatrix,
    h: Fh,
    f: Ff,
    g: Fg,
    r: f64,
    psd_tol: f64,
) -> Result<(DMatrix<f64>, BlockValidation)>
where
    Fh: Fn(f64) -> Result<f64>,
    Ff: Fn(f64) -> Result<f64>,
    Fg: Fn(f64) -> Result<f64>,
{
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::Domain(format!("need 0 < r <= 1, got {r}")));
    }
    let size = sigma.size();
    if !size.is_multiple_of(2) || size == 0 {
        return Err(Error::Domain(format!(
            "block transform needs an even size, got {size}"
        )));
    }
    let k = size / 2;
    let s = sigma.matrix();

    let h_of_f = |x: f64| -> Result<f64> {
        let y = f(r * x)?;
        if y.abs() > 1.0 + 1e-9 {
            return Err(Error::EntryOutOfDomain { value: y });
        }
        h(y.clamp(-1.0, 1.0))
    };

    let mut out = DMatrix::<f64>::zeros(size, size);
    let mut factored = DMatrix::<f64>::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let x = s[(i, j)];
            let diag_block = (i < k) == (j < k);
            if diag_block {
                out[(i, j)] = h_of_f(x)?;
                factored[(i, j)] = out[(i, j)];
            } else {
                out[(i, j)] = r * x;
                let gz = g(r * x)?;
                if gz.abs() > 1.0 + 1e-9 {
                    return Err(Error::EntryOutOfDomain { value: gz });
                }
                factored[(i, j)] = h(gz.clamp(-1.0, 1.0))?;
            }
        }
    }

    let route_deviation = (&out - &factored).abs().max();
    let max_diag_dev = (0..size)
        .map(|i| (out[(i, i)] - 1.0).abs())
        .fold(0.0f64, f64::max);
    let scaled = psd_tol * size as f64;
    let (psd_ok, min_eig) = is_psd(&out, psd_tol)?;
    Ok((
        out,
        BlockValidation {
            unit_diag_ok: max_diag_dev <= scaled,
            max_diag_dev,
            psd_ok,
            min_eig,
            route_deviation,
        },
    ))
}

/// Empirical trace-form ratio probe: random test matrices `A` and
/// correlation matrices (random Gram plus an alternating-ascent witness),
/// reporting `max |tr(J(A) Sigma)| / ||A||_{inf,1}`. Every observed ratio is
/// a certified lower-bound witness at its rank.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GtRatioReport {
    pub instances: usize,
    pub seed: u64,
    pub max_ratio: f64,
    /// (m, n, rank) of the instance attaining the max.
    pub argmax: (usize, usize, usize),
}

type RatioSample = (f64, (usize, usize, usize));

pub fn gt_ratio_probe(instances: usize, max_side: usize, seed: u64) -> Result<GtRatioReport> {
    let results: Vec<Result<RatioSample>> = (0..instances)
        .into_par_iter()
        .map(|idx| {
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, 0x6774, idx as u64));
            let m = rng.gen_range(1..=max_side);
            let n = rng.gen_range(1..=max_side);
            let a = DMatrix::<f64>::from_fn(m, n, |_, _| rng.sample(StandardNormal));
            let norm = norm_inf1_exact(&a)?;
            if norm.value <= 1e-12 {
                return Ok((0.0, (m, n, 1)));
            }
            let j = BlockJ::new(a.clone());

            // plain random correlation matrix
            let rank1 = rng.gen_range(1..=(m + n));
            let sigma = random_correlation(m + n, rank1, rng.gen::<u64>())?;
            let r1 = j.trace_with(sigma.matrix())?.abs() / norm.value;

            // ascent witness: alternately align unit vectors with A
            let rank2 = rng.gen_range(2..=(m + n).max(2));
            let mut us: Vec<Vec<f64>> = (0..m).map(|_| random_unit_vector(&mut rng, rank2)).collect();
            let mut vs: Vec<Vec<f64>> = (0..n).map(|_| random_unit_vector(&mut rng, rank2)).collect();
            for _ in 0..60 {
                for (i, u) in us.iter_mut().enumerate() {
                    let mut acc = vec![0.0; rank2];
                    for (jj, v) in vs.iter().enumerate() {
                        for (dim, item) in acc.iter_mut().enumerate() {
                            *item += a[(i, jj)] * v[dim];
                        }
                    }
                    let nrm = acc.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if nrm > 1e-12 {
                        *u = acc.into_iter().map(|x| x / nrm).collect();
                    }
                }
                for (jj, v) in vs.iter_mut().enumerate() {
                    let mut acc = vec![0.0; rank2];
                    for (i, u) in us.iter().enumerate() {
                        for (dim, item) in acc.iter_mut().enumerate() {
                            *item += a[(i, jj)] * u[dim];
                        }
                    }
                    let nrm = acc.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if nrm > 1e-12 {
                        *v = acc.into_iter().map(|x| x / nrm).collect();
                    }
                }
            }
            let mut gram = DMatrix::<f64>::zeros(m + n, m + n);
            let stacked: Vec<&Vec<f64>> = us.iter().chain(vs.iter()).collect();
            for i in 0..(m + n) {
                gram[(i, i)] = 1.0;
                for jj in (i + 1)..(m + n) {
                    let dot: f64 = stacked[i]
                        .iter()
                        .zip(stacked[jj])
                        .map(|(x, y)| x * y)
                        .sum();
                    let dot = dot.clamp(-1.0, 1.0);
                    gram[(i, jj)] = dot;
                    gram[(jj, i)] = dot;
                }
            }
            let r2 = j.trace_with(&gram)?.abs() / norm.value;

            let (best, rank) = if r2 >= r1 { (r2, rank2) } else { (r1, rank1) };
            Ok((best, (m, n, rank)))
        })
        .collect();

    let mut max_ratio = 0.0f64;
    let mut argmax = (0, 0, 0);
    for r in results {
        let (ratio, shape) = r?;
        if ratio > max_ratio {
            max_ratio = ratio;
            argmax = shape;
        }
    }
    Ok(GtRatioReport {
        instances,
        seed,
        max_ratio,
        argmax,
    })
}

/// Wire form of a matrix: `{"rows": m, "cols": n, "field": "real"|"complex",
/// "data": [...]}`, row-major, complex entries as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    field: String,
    data: Vec<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub enum AnyMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex64>),
}

impl AnyMatrix {
    pub fn from_json(text: &str) -> Result<AnyMatrix> {
        let raw: RawMatrix = serde_json::from_str(text)?;
        if raw.data.len() != raw.rows * raw.cols {
            return Err(Error::LengthMismatch {
                expected: raw.rows * raw.cols,
                got: raw.data.len(),
            });
        }
        match raw.field.as_str() {
            "real" => {
                let mut vals = Vec::with_capacity(raw.data.len());
                for v in &raw.data {
                    vals.push(v.as_f64().ok_or_else(|| {
                        Error::Domain(format!("real entry must be a number, got {v}"))
                    })?);
                }
                Ok(AnyMatrix::Real(DMatrix::from_row_slice(
                    raw.rows, raw.cols, &vals,
                )))
            }
            "complex" => {
                let mut vals = Vec::with_capacity(raw.data.len());
                for v in &raw.data {
                    let pair = v
                        .as_array()
                        .filter(|a| a.len() == 2)
                        .and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)))
                        .ok_or_else(|| {
                            Error::Domain(format!("complex entry must be [re, im], got {v}"))
                        })?;
                    vals.push(Complex64::new(pair.0, pair.1));
                }
                Ok(AnyMatrix::Complex(DMatrix::from_row_slice(
                    raw.rows, raw.cols, &vals,
                )))
            }
            other => Err(Error::Domain(format!("unknown field tag {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            AnyMatrix::Real(m) => RawMatrix {
                rows: m.nrows(),
                cols: m.ncols(),
                field: "real".into(),
                data: (0..m.nrows())
                    .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                    .map(|(i, j)| serde_json::json!(m[(i, j)]))
                    .collect(),
            },
            AnyMatrix::Complex(m) => RawMatrix {
                rows: m.nrows(),
                cols: m.ncols(),
                field: "complex".into(),
                data: (0..m.nrows())
                    .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
                    .map(|(i, j)| serde_json::json!([m[(i, j)].re, m[(i, j)].im]))
                    .collect(),
            },
        };
        serde_json::to_string_pretty(&raw).expect("matrix serializes")
    }

    /// CSV, real matrices only: one row per line, comma separated.
    pub fn to_csv(&self) -> Result<String> {
        match self {
            AnyMatrix::Real(m) => {
                let mut out = String::new();
                for i in 0..m.nrows() {
                    let row: Vec<String> = (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect();
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            AnyMatrix::Complex(_) => Err(Error::Domain("CSV output is real-only".into())),
        }
    }

    pub fn from_csv(text: &str) -> Result<AnyMatrix> {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split(',').map(|t| t.trim().parse::<f64>()).collect();
            let row = row.map_err(|e| Error::Domain(format!("bad CSV entry: {e}")))?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Domain("empty CSV matrix".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Domain("ragged CSV matrix".into()));
        }
        let flat: Vec<f64> = rows.concat();
        Ok(AnyMatrix::Real(DMatrix::from_row_slice(
            rows.len(),
            cols,
            &flat,
        )))
    }
}
