//! Closed-form orbit integrals.
//!
//! Two independent routes are provided for every supported group:
//!
//! * the Weyl-sum localization formula
//!   `Π(a) Π(b) ∫_G e^{⟨Ad_g a, b⟩} dg = [[Π, Π]]_⊥ / |W| · Σ_w ε(w) e^{⟨w(a), b⟩}`,
//!   where `⟨·,·⟩` is the trace form of the defining representation and
//!   `[[Π, Π]]_⊥` is the discriminant norm in coordinates that are orthonormal
//!   for that form;
//! * the determinant formulas (HCIZ and its cosh/sinh analogues).
//!
//! The `B`, `C`, `D` embeddings have `tr(e_j e_j) = 2`, so the orthonormal
//! coordinates are `sqrt(2) x_j` and `[[Π, Π]]_⊥ = 2^{-r} [[Π, Π]]` for `r`
//! positive roots. The determinant prefactors carry the same `2^{-r}`.
//!
//! Inputs are used in the order given; determinant and Vandermonde sign
//! changes under reordering cancel.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::cartan::{
    pairing_exponent, weyl_apply, weyl_elements, weyl_sign, CartanVector, Family, GroupSpec,
    RootSystem, WeylElement,
};
use crate::error::{Argument, Error, Result};
use crate::symalg::{discriminant_norm, discriminant_value};

/// Relative gap below which a Cartan vector is treated as singular.
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

/// Default cap on the rank accepted by the Weyl-sum evaluator.
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    WeylSum,
    Determinant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub method: Method,
    /// `Σ|term| / |Σ term|`: over the Weyl group for the Weyl sum, over the
    /// permutation expansion of the determinants otherwise. Always `>= 1`.
    pub condition_estimate: f64,
}

/// Rejects Cartan vectors on or near a root hyperplane.
///
/// Type `A` compares coordinates, `D` compares squared coordinates, and `B`/`C`
/// additionally require every coordinate to be nonzero. Gaps are measured
/// against `DEGENERACY_THRESHOLD` times the largest `|h_i|` (squared for the
/// squared comparisons).
pub fn check_regular(system: RootSystem, h: &CartanVector, arg: Argument) -> Result<()> {
    let x = h.coords();
    if let Some(index) = x.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { arg, index });
    }
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let is_bad = |gap: f64, threshold: f64| gap == 0.0 || gap < threshold;

    if matches!(system, RootSystem::B | RootSystem::C) {
        let threshold = DEGENERACY_THRESHOLD * scale;
        if let Some(index) = x.iter().position(|v| is_bad(v.abs(), threshold)) {
            return Err(Error::ZeroCoordinate {
                arg,
                index,
                value: x[index],
                threshold,
            });
        }
    }
    let squared = system != RootSystem::A;
    let threshold = if squared {
        DEGENERACY_THRESHOLD * scale * scale
    } else {
        DEGENERACY_THRESHOLD * scale
    };
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let gap = if squared {
                (x[i] * x[i] - x[j] * x[j]).abs()
            } else {
                (x[i] - x[j]).abs()
            };
            if is_bad(gap, threshold) {
                return Err(Error::DegenerateSpectrum {
                    arg,
                    i,
                    j,
                    xi: x[i],
                    xj: x[j],
                    gap,
                    threshold,
                });
            }
        }
    }
    Ok(())
}

fn check_pair(system: RootSystem, rank: usize, a: &CartanVector, b: &CartanVector) -> Result<()> {
    a.check_len(rank)?;
    b.check_len(rank)?;
    check_regular(system, a, Argument::A)?;
    check_regular(system, b, Argument::B)
}

/// Neumaier-compensated sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `[[Π, Π]]_⊥ / |W|`: the Weyl-sum prefactor for the connected group with
/// `spec`'s root data.
pub fn weyl_sum_prefactor(spec: &GroupSpec) -> f64 {
    let norm = discriminant_norm(spec).to_f64().unwrap_or(f64::INFINITY);
    let order = spec.weyl_order() as f64;
    let r = spec.num_positive_roots() as i32;
    norm / order / spec.form_scale().powi(r)
}

/// Weyl-sum evaluation with the default rank cap.
pub fn weyl_sum_integral(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
) -> Result<IntegralResult> {
    weyl_sum_integral_capped(spec, a, b, DEFAULT_MAX_RANK)
}

/// Evaluates the localization formula for the identity component of `spec`.
///
/// For the disconnected orthogonal groups this is the integral over `SO`;
/// use [`component_integral`] for the full group.
pub fn weyl_sum_integral_capped(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
    max_rank: usize,
) -> Result<IntegralResult> {
    let spec = spec.identity_component();
    let n = spec.rank();
    if n > max_rank {
        return Err(Error::RankTooLarge {
            rank: n,
            cap: max_rank,
        });
    }
    check_pair(spec.root_system(), n, a, b)?;

    let exponents: Vec<(i8, f64)> = weyl_elements(&spec)
        .map(|w| (weyl_sign(&w, &spec), pairing_exponent(&spec, a, &w, b)))
        .collect();
    let shift = exponents
        .iter()
        .fold(f64::NEG_INFINITY, |m, &(_, x)| m.max(x));
    let mut sum = CompensatedSum::default();
    let mut abs_sum = 0.0;
    for &(sign, x) in &exponents {
        let t = (x - shift).exp();
        abs_sum += t;
        sum.add(f64::from(sign) * t);
    }
    let s = sum.value();
    let denom = discriminant_value(&spec, a) * discriminant_value(&spec, b);
    let value = weyl_sum_prefactor(&spec) * s / denom * shift.exp();
    if !value.is_finite() {
        return Err(Error::NonFiniteResult(format!(
            "Weyl sum for {spec} overflowed"
        )));
    }
    Ok(IntegralResult {
        value,
        method: Method::WeylSum,
        condition_estimate: (abs_sum / s.abs()).max(1.0),
    })
}

/// Cartan-level actions of one representative per connected component: the
/// identity, plus `a_1 ↦ -a_1` (conjugation by `diag(-1, 1, …, 1)`) for the
/// orthogonal groups.
pub fn component_twists(spec: &GroupSpec) -> Vec<WeylElement> {
    let n = spec.rank();
    match spec.components() {
        1 => vec![WeylElement::identity(n)],
        _ => vec![WeylElement::identity(n), WeylElement::flip(n, 0)],
    }
}

/// Integral over a possibly disconnected group as the average over components
/// of identity-component integrals at the twisted arguments.
///
/// Each component is normalized by the discriminant of its own twisted
/// argument, `Π(twist(a)) Π(b)`. For `O(2N+1)` the twist `a_1 ↦ -a_1` is itself
/// a Weyl reflection with `ε = -1`, so normalizing every component by the
/// untwisted `Π(a)` would cancel the two contributions.
pub fn component_integral(
    spec: &GroupSpec,
    twists: &[WeylElement],
    a: &CartanVector,
    b: &CartanVector,
) -> Result<IntegralResult> {
    assert!(
        !twists.is_empty(),
        "at least one component representative is required"
    );
    let connected = spec.identity_component();
    let mut total = 0.0;
    let mut condition = 1.0f64;
    for twist in twists {
        a.check_len(twist.len())?;
        let r = weyl_sum_integral(&connected, &weyl_apply(twist, a), b)?;
        total += r.value;
        condition = condition.max(r.condition_estimate);
    }
    Ok(IntegralResult {
        value: total / twists.len() as f64,
        method: Method::WeylSum,
        condition_estimate: condition,
    })
}

/// LU with partial pivoting, carried out in double-double arithmetic.
///
/// The kernel matrices of the determinant formulas span many orders of
/// magnitude and their determinants are tiny next to the Hadamard bound, so
/// plain `f64` elimination loses digits that the Weyl sum keeps. The entries
/// themselves stay `f64`: the determinant is an alternating sum over
/// permutations of entry products, so entry rounding is amplified only by the
/// (usually mild) cancellation of that sum.
fn determinant(m: DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut a: Vec<Vec<TwoFloat>> = (0..n)
        .map(|i| (0..n).map(|j| TwoFloat::from(m[(i, j)])).collect())
        .collect();
    let mut det = TwoFloat::from(1.0);
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&i, &j| {
                a[i][k]
                    .abs()
                    .partial_cmp(&a[j][k].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(k);
        if a[pivot][k] == TwoFloat::from(0.0) {
            return 0.0;
        }
        if pivot != k {
            a.swap(pivot, k);
            det = -det;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let row_k = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k] / row_k[k];
            for j in k + 1..n {
                row[j] -= factor * row_k[j];
            }
        }
        det *= a[k][k];
    }
    f64::from(det)
}

/// `ln Σ_σ ∏_i |m_{i σ(i)}|`, the log of the permanent of `|m|`: the total
/// magnitude of the terms the determinant cancels down. Enumerated exactly up
/// to [`DEFAULT_MAX_RANK`]; beyond that the product of row sums bounds it.
fn log_term_sum(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let logs = m.map(|x| x.abs().ln());
    if n > DEFAULT_MAX_RANK {
        return logs
            .row_iter()
            .map(|r| log_sum_exp(r.iter().copied()))
            .sum();
    }
    let perms = weyl_elements(&GroupSpec::new(Family::UnitaryA, n).expect("rank >= 1"));
    log_sum_exp(perms.map(|w| {
        w.perm()
            .iter()
            .enumerate()
            .map(|(i, &j)| logs[(i, j)])
            .sum()
    }))
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// `Σ|terms| / |result|` from the log term magnitudes and the cancelled sum.
fn cancellation(log_terms: &[f64], result: f64) -> f64 {
    (log_sum_exp(log_terms.iter().copied()) - result.abs().ln())
        .exp()
        .max(1.0)
}

/// `∏_{i<j} (x_i² - x_j²)`, factored to avoid rounding the squares.
fn vandermonde_squares(x: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= (x[i] - x[j]) * (x[i] + x[j]);
        }
    }
    v
}

/// `∏_{i<j} (x_i - x_j)`.
fn vandermonde(x: &[f64]) -> f64 {
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= x[i] - x[j];
        }
    }
    v
}

fn factorial_f64(n: u32) -> f64 {
    (2..=n).map(f64::from).product()
}

fn finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteResult(format!("{what} overflowed")))
    }
}

/// HCIZ: `∫_{U(N)} e^{tr(A U B U†)} dU = ∏_{p<N} p! · det[e^{a_i b_j}] / (Δ(a) Δ(b))`.
pub fn hciz(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    let n = a.len();
    check_pair(RootSystem::A, n, a, b)?;
    let m = DMatrix::from_fn(n, n, |i, j| (a[i] * b[j]).exp());
    let log_terms = log_term_sum(&m);
    let det = determinant(m);
    let pref: f64 = (1..n as u32).map(factorial_f64).product();
    let value = finite(
        pref * det / (vandermonde(a.coords()) * vandermonde(b.coords())),
        "HCIZ",
    )?;
    Ok(IntegralResult {
        value,
        method: Method::Determinant,
        condition_estimate: cancellation(&[log_terms], det),
    })
}

/// `SU(N)`: the same expression as [`hciz`]; the inputs need not be traceless.
pub fn su_integral(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    hciz(a, b)
}

struct HyperbolicDets {
    cosh: f64,
    sinh: f64,
    cosh_terms: f64,
    sinh_terms: f64,
}

fn hyperbolic_dets(a: &CartanVector, b: &CartanVector, want_cosh: bool) -> HyperbolicDets {
    let n = a.len();
    let s = DMatrix::from_fn(n, n, |j, k| (2.0 * a[j] * b[k]).sinh());
    let sinh_terms = log_term_sum(&s);
    let sinh = determinant(s);
    let (cosh, cosh_terms) = if want_cosh {
        let c = DMatrix::from_fn(n, n, |j, k| (2.0 * a[j] * b[k]).cosh());
        let terms = log_term_sum(&c);
        (determinant(c), terms)
    } else {
        (0.0, f64::NEG_INFINITY)
    };
    HyperbolicDets {
        cosh,
        sinh,
        cosh_terms,
        sinh_terms,
    }
}

fn check_even_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidRank {
            family: Family::SpecialOrthogonalEvenD,
            rank: n,
            min: 2,
        });
    }
    Ok(())
}

/// `∏_{p=1}^{N-1} (2p)! / 2^{N(N-1)}`.
fn even_prefactor(n: usize) -> f64 {
    let p: f64 = (1..n as u32).map(|p| factorial_f64(2 * p)).product();
    p / 2f64.powi((n * (n - 1)) as i32)
}

/// `∏_{p=1}^{N-1} (2p+1)! / 2^{N²}`.
fn odd_prefactor(n: usize) -> f64 {
    let p: f64 = (1..n as u32).map(|p| factorial_f64(2 * p + 1)).product();
    p / 2f64.powi((n * n) as i32)
}

/// `SO(2N)`: `∏(2p)!/2^{N(N-1)} · (det[cosh 2a_j b_k] + det[sinh 2a_j b_k]) / (Δ(a⁽²⁾) Δ(b⁽²⁾))`.
pub fn so_even(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    let n = a.len();
    check_even_rank(n)?;
    check_pair(RootSystem::D, n, a, b)?;
    let d = hyperbolic_dets(a, b, true);
    let num = d.cosh + d.sinh;
    let denom = vandermonde_squares(a.coords()) * vandermonde_squares(b.coords());
    let value = finite(even_prefactor(n) * num / denom, "SO(2N) formula")?;
    Ok(IntegralResult {
        value,
        method: Method::Determinant,
        condition_estimate: cancellation(&[d.cosh_terms, d.sinh_terms], num),
    })
}

/// `O(2N)`: the `SO(2N)` expression without the sinh determinant.
pub fn o_even(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    let n = a.len();
    check_even_rank(n)?;
    check_pair(RootSystem::D, n, a, b)?;
    let d = hyperbolic_dets(a, b, true);
    let denom = vandermonde_squares(a.coords()) * vandermonde_squares(b.coords());
    let value = finite(even_prefactor(n) * d.cosh / denom, "O(2N) formula")?;
    Ok(IntegralResult {
        value,
        method: Method::Determinant,
        condition_estimate: cancellation(&[d.cosh_terms], d.cosh),
    })
}

/// `SO(2N+1)`: `∏(2p+1)!/2^{N²} · det[sinh 2a_j b_k] / (Δ(a⁽²⁾) Δ(b⁽²⁾) ∏ a_i b_i)`.
pub fn so_odd(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    let n = a.len();
    check_pair(RootSystem::B, n, a, b)?;
    let d = hyperbolic_dets(a, b, false);
    let prod: f64 = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| x * y)
        .product();
    let denom = vandermonde_squares(a.coords()) * vandermonde_squares(b.coords()) * prod;
    let value = finite(odd_prefactor(n) * d.sinh / denom, "SO(2N+1) formula")?;
    Ok(IntegralResult {
        value,
        method: Method::Determinant,
        condition_estimate: cancellation(&[d.sinh_terms], d.sinh),
    })
}

/// `O(2N+1)`: both components contribute equally, so this is [`so_odd`].
pub fn o_odd(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    so_odd(a, b)
}

/// `USp(N)`: the `2^{2N}` factors in `Π` cancel, leaving the [`so_odd`]
/// expression.
pub fn usp(a: &CartanVector, b: &CartanVector) -> Result<IntegralResult> {
    so_odd(a, b)
}

/// Evaluates the integral over the full group `spec` with either route.
pub fn integral(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
    method: Method,
) -> Result<IntegralResult> {
    integral_capped(spec, a, b, method, DEFAULT_MAX_RANK)
}

pub fn integral_capped(
    spec: &GroupSpec,
    a: &CartanVector,
    b: &CartanVector,
    method: Method,
    max_rank: usize,
) -> Result<IntegralResult> {
    a.check_len(spec.rank())?;
    b.check_len(spec.rank())?;
    match method {
        Method::WeylSum if spec.is_connected() => weyl_sum_integral_capped(spec, a, b, max_rank),
        Method::WeylSum => {
            if spec.rank() > max_rank {
                return Err(Error::RankTooLarge {
                    rank: spec.rank(),
                    cap: max_rank,
                });
            }
            component_integral(spec, &component_twists(spec), a, b)
        }
        Method::Determinant => match spec.family() {
            Family::UnitaryA => hciz(a, b),
            Family::SpecialUnitaryA => su_integral(a, b),
            Family::SpecialOrthogonalEvenD => so_even(a, b),
            Family::OrthogonalEvenD => o_even(a, b),
            Family::SpecialOrthogonalOddB => so_odd(a, b),
            Family::OrthogonalOddB => o_odd(a, b),
            Family::SymplecticC => usp(a, b),
        },
    }
}
