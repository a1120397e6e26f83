//! Haar sampling on the compact classical groups and a Monte Carlo estimator
//! for `∫_G e^{tr(A g B g⁻¹)} dg`.
//!
//! Samplers orthonormalize a Gaussian matrix and fix the phases so that the
//! triangular factor has a positive real diagonal; without that correction
//! the result is not Haar distributed. All randomness comes from an explicitly
//! seeded ChaCha stream, so estimates are reproducible bit for bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cartan::{embed_cartan, CartanVector, Family, GroupSpec};
use crate::error::{Error, Result};

/// Generator used for all sampling.
pub type McRng = ChaCha8Rng;

/// Largest integrand exponent accepted before `exp` loses all headroom.
pub const EXPONENT_LIMIT: f64 = 700.0;

/// Tolerance on the imaginary part of `tr(A g B g⁻¹)`, relative to
/// `max(1, ||A|| ||B||)`.
pub const IMAGINARY_TOLERANCE: f64 = 1e-12;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Haar-random `U(n)`.
pub fn sample_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n >= 1);
    let z = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Haar-random `SU(n)`: a unitary sample divided by an `n`-th root of its
/// determinant. The map commutes with left multiplication by `SU(n)`, so the
/// image measure is Haar.
pub fn sample_special_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let u = sample_unitary(n, rng);
    let det = u.determinant();
    let root = Complex64::from_polar(1.0, -det.arg() / n as f64);
    u * root
}

/// Haar-random `O(n)`.
pub fn sample_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    assert!(n >= 1);
    let z = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Haar-random `SO(n)`: samples with determinant `-1` are moved into `SO(n)`
/// by left multiplication with `diag(-1, 1, …, 1)`.
pub fn sample_special_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let mut q = sample_orthogonal(n, rng);
    if q.determinant() < 0.0 {
        q.row_mut(0).neg_mut();
    }
    q
}

/// Quaternion `α + j β` with `α, β ∈ ℂ`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Quaternion {
    alpha: Complex64,
    beta: Complex64,
}

impl Quaternion {
    const ZERO: Quaternion = Quaternion {
        alpha: Complex64::new(0.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self {
            alpha: complex_gaussian(rng),
            beta: complex_gaussian(rng),
        }
    }

    fn conj(self) -> Self {
        Self {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    fn norm_sqr(self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }

    fn scale(self, s: f64) -> Self {
        Self {
            alpha: self.alpha * s,
            beta: self.beta * s,
        }
    }
}

impl std::ops::Mul for Quaternion {
    type Output = Quaternion;

    // j z = z̄ j for complex z.
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            alpha: self.alpha * rhs.alpha - self.beta.conj() * rhs.beta,
            beta: self.alpha.conj() * rhs.beta + self.beta * rhs.alpha,
        }
    }
}

impl std::ops::Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            alpha: self.alpha + rhs.alpha,
            beta: self.beta + rhs.beta,
        }
    }
}

impl std::ops::Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion {
            alpha: self.alpha - rhs.alpha,
            beta: self.beta - rhs.beta,
        }
    }
}

/// Haar-random `USp(n)` as a `2n x 2n` complex matrix `[[A, -B̄], [B, Ā]]`.
///
/// Columns of a quaternionic Gaussian matrix are orthonormalized by modified
/// Gram–Schmidt with right-multiplied quaternion coefficients, which is the
/// QR factorization with a positive real diagonal.
pub fn sample_symplectic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    assert!(n >= 1);
    let mut cols: Vec<Vec<Quaternion>> = (0..n)
        .map(|_| (0..n).map(|_| Quaternion::gaussian(rng)).collect())
        .collect();
    for k in 0..n {
        let (done, rest) = cols.split_at_mut(k);
        let v = &mut rest[0];
        for u in done.iter() {
            let c = u
                .iter()
                .zip(v.iter())
                .fold(Quaternion::ZERO, |acc, (&ui, &vi)| acc + ui.conj() * vi);
            for (vi, &ui) in v.iter_mut().zip(u) {
                *vi = *vi - ui * c;
            }
        }
        let norm = v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
        for q in v.iter_mut() {
            *q = q.scale(1.0 / norm);
        }
    }
    let mut s = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for (k, col) in cols.iter().enumerate() {
        for (i, q) in col.iter().enumerate() {
            s[(i, k)] = q.alpha;
            s[(i + n, k)] = q.beta;
            s[(i, k + n)] = -q.beta.conj();
            s[(i + n, k + n)] = q.alpha.conj();
        }
    }
    s
}

/// Draws a Haar sample from the group `spec` in its defining representation.
pub fn sample_group<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> DMatrix<Complex64> {
    let dim = spec.matrix_dim();
    let real = |m: DMatrix<f64>| m.map(Complex64::from);
    match spec.family() {
        Family::UnitaryA => sample_unitary(dim, rng),
        Family::SpecialUnitaryA => sample_special_unitary(dim, rng),
        Family::SpecialOrthogonalEvenD | Family::SpecialOrthogonalOddB => {
            real(sample_special_orthogonal(dim, rng))
        }
        Family::OrthogonalEvenD | Family::OrthogonalOddB => real(sample_orthogonal(dim, rng)),
        Family::SymplecticC => sample_symplectic(spec.rank(), rng),
    }
}

/// Monte Carlo estimate of the group integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_samples)`.
    pub stderr: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub shards: u32,
}

impl McEstimate {
    /// `|value - mean| / stderr`; infinite when `stderr` is zero and the
    /// values differ.
    pub fn z_score(&self, value: f64) -> f64 {
        let diff = (value - self.mean).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.stderr
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    /// Independent sub-streams, each seeded from `(seed, shard index)`.
    pub shards: u32,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            shards: 1,
        }
    }

    pub fn with_shards(mut self, shards: u32) -> Self {
        self.shards = shards.max(1);
        self
    }
}

/// Welford accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, other: RunningStats) -> RunningStats {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * self.n as f64 * other.n as f64 / n as f64;
        RunningStats { n, mean, m2 }
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        (self.m2 / (self.n - 1) as f64).sqrt() / (self.n as f64).sqrt()
    }
}

/// Generator for shard `index` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, index: u32) -> McRng {
    let mut rng = McRng::seed_from_u64(seed);
    rng.set_stream(u64::from(index));
    rng
}

/// `Re tr(A g B g⁻¹)` for unitary `g`, checking that the imaginary part vanishes.
fn conjugation_trace(
    a: &DMatrix<Complex64>,
    g: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    scale: f64,
) -> Result<f64> {
    let t = (a * g * b * g.adjoint()).trace();
    if t.im.abs() > IMAGINARY_TOLERANCE * scale {
        return Err(Error::ImaginaryResidual { residual: t.im });
    }
    Ok(t.re)
}

/// Estimates `∫_G e^{tr(A g B g⁻¹)} dg` with `A = embed(a)`, `B = embed(b)`
/// from `samples` Haar draws in a single stream.
pub fn mc_integral(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    mc_integral_with(spec, a, b, &McConfig::new(samples, seed))
}

/// Sharded estimate. Shard `k` draws `samples / shards` points (the first
/// `samples % shards` shards one more) from [`shard_rng`]`(seed, k)`; shard
/// statistics are merged in shard order, so the result depends only on the
/// configuration.
pub fn mc_integral_with(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
    config: &McConfig,
) -> Result<McEstimate> {
    if config.samples == 0 {
        return Err(Error::NoSamples);
    }
    let ea = embed_cartan(spec, a)?;
    let eb = embed_cartan(spec, b)?;
    let scale = ea.norm() * eb.norm();
    let shards = config.shards.max(1);
    let base = config.samples / u64::from(shards);
    let extra = config.samples % u64::from(shards);
    let tol_scale = scale.max(1.0);

    let per_shard: Vec<Result<RunningStats>> = (0..shards)
        .into_par_iter()
        .map(|k| {
            let count = base + u64::from(u64::from(k) < extra);
            let mut rng = shard_rng(config.seed, k);
            let mut stats = RunningStats::default();
            for _ in 0..count {
                let g = sample_group(spec, &mut rng);
                let x = conjugation_trace(&ea, &g, &eb, tol_scale)?;
                if x > EXPONENT_LIMIT {
                    return Err(Error::ExponentOverflow {
                        exponent: x,
                        limit: EXPONENT_LIMIT,
                    });
                }
                stats.push(x.exp());
            }
            Ok(stats)
        })
        .collect();

    let mut total = RunningStats::default();
    for s in per_shard {
        total = total.merge(s?);
    }
    Ok(McEstimate {
        mean: total.mean,
        stderr: total.stderr(),
        n_samples: total.n,
        seed: config.seed,
        shards,
    })
}
