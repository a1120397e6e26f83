//! Exact sparse multivariate polynomials over the Cartan coordinates.
//!
//! Coefficients are arbitrary-precision integers; floating point only enters
//! through [`SparsePolynomial::evaluate`]. The differential pairing
//! `[[p, q]] = p(∂) q |_{x=0} = Σ_β p_β q_β β!` and the discriminant norm
//! `[[Π, Π]]` are computed exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cartan::{positive_roots, CartanVector, GroupSpec, RootCovector};

/// Exponent vector `β`; ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `β! = β_1! ⋯ β_N!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&b| factorial(b)).product()
    }

    fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `b! / (b - a)!`, zero when `a > b`.
fn falling_factorial(b: u32, a: u32) -> BigInt {
    if a > b {
        return BigInt::zero();
    }
    (b - a + 1..=b).fold(BigInt::one(), |acc, k| acc * k)
}

/// Polynomial as a map from multi-index to nonzero integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(MultiIndex::zero(nvars), BigInt::one())
    }

    pub fn monomial(index: MultiIndex, coeff: impl Into<BigInt>) -> Self {
        let nvars = index.len();
        let mut p = Self::zero(nvars);
        p.add_term(index, coeff.into());
        p
    }

    /// `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(MultiIndex(e), 1)
    }

    /// `ω = Σ x_i²`.
    pub fn sum_of_squares(nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = 2;
            p.add_term(MultiIndex(e), BigInt::one());
        }
        p
    }

    pub fn from_linear_form(form: &RootCovector) -> Self {
        let n = form.arity();
        let mut p = Self::zero(n);
        for (i, &c) in form.coeffs().iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; n];
                e[i] = 1;
                p.add_term(MultiIndex(e), BigInt::from(c));
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated indices and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "multi-index length must equal nvars");
            p.add_term(MultiIndex(e), c);
        }
        p
    }

    fn add_term(&mut self, index: MultiIndex, coeff: BigInt) {
        debug_assert_eq!(index.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(index) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> BigInt {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// `Σ_β p_β h^β` in floating point.
    pub fn evaluate(&self, h: &CartanVector) -> f64 {
        assert_eq!(h.len(), self.nvars, "point has wrong arity");
        self.terms
            .iter()
            .map(|(idx, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                idx.0
                    .iter()
                    .zip(h.coords())
                    .fold(c, |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate_exact(&self, h: &[BigInt]) -> BigInt {
        assert_eq!(h.len(), self.nvars, "point has wrong arity");
        self.terms
            .iter()
            .map(|(idx, c)| {
                idx.0.iter().zip(h).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }

    /// Polynomial in the squared variables: `p(x_1², …, x_N²)`.
    pub fn in_squares(&self) -> SparsePolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| (MultiIndex(idx.0.iter().map(|e| 2 * e).collect()), c.clone()))
            .collect();
        SparsePolynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (idx, c) in &rhs.terms {
            out.add_term(idx.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(i, c)| (i.clone(), -c)).collect(),
        }
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self + &(-rhs)
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparsePolynomial::zero(self.nvars);
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i.add(j), a * b);
            }
        }
        out
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (idx, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let vars: Vec<String> = idx
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{e}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(&vars.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

/// `{nvars, terms: [{exponents, coeff}]}` with decimal-string coefficients,
/// terms in graded-lexicographic order.
impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolynomialJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| TermJson {
                    exponents: i.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparsePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolynomialJson::deserialize(deserializer)?;
        let mut p = SparsePolynomial::zero(raw.nvars);
        for t in raw.terms {
            if t.exponents.len() != raw.nvars {
                return Err(D::Error::custom(format!(
                    "term has {} exponents, expected {}",
                    t.exponents.len(),
                    raw.nvars
                )));
            }
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {e}", t.coeff)))?;
            p.add_term(MultiIndex(t.exponents), c);
        }
        Ok(p)
    }
}

/// Product of the linear forms, expanded exactly. An empty list gives 1.
pub fn expand_linear_forms(nvars: usize, forms: &[RootCovector]) -> SparsePolynomial {
    forms.iter().fold(SparsePolynomial::one(nvars), |acc, f| {
        assert_eq!(f.arity(), nvars, "linear forms must share arity");
        &acc * &SparsePolynomial::from_linear_form(f)
    })
}

/// `[[p, q]] = Σ_β p_β q_β β!`.
pub fn pairing(p: &SparsePolynomial, q: &SparsePolynomial) -> BigInt {
    assert_eq!(p.nvars, q.nvars);
    let (small, large) = if p.num_terms() <= q.num_terms() {
        (p, q)
    } else {
        (q, p)
    };
    small
        .terms
        .iter()
        .filter_map(|(idx, c)| large.terms.get(idx).map(|d| c * d * idx.factorial()))
        .sum()
}

/// `p(∂) q`.
pub fn apply_differential(p: &SparsePolynomial, q: &SparsePolynomial) -> SparsePolynomial {
    assert_eq!(p.nvars, q.nvars);
    let mut out = SparsePolynomial::zero(q.nvars);
    for (alpha, pc) in &p.terms {
        for (beta, qc) in &q.terms {
            if alpha.0.iter().zip(&beta.0).any(|(a, b)| a > b) {
                continue;
            }
            let factor: BigInt = alpha
                .0
                .iter()
                .zip(&beta.0)
                .map(|(&a, &b)| falling_factorial(b, a))
                .product();
            let idx = MultiIndex(beta.0.iter().zip(&alpha.0).map(|(b, a)| b - a).collect());
            out.add_term(idx, pc * qc * factor);
        }
    }
    out
}

/// The discriminant `Π`, the product of the positive roots.
pub fn discriminant(spec: &GroupSpec) -> SparsePolynomial {
    expand_linear_forms(spec.rank(), &positive_roots(spec))
}

/// `[[Π, Π]]` in the coordinates `x_j` (exact).
pub fn discriminant_norm(spec: &GroupSpec) -> BigInt {
    let pi = discriminant(spec);
    pairing(&pi, &pi)
}

/// `Π(h)` as the product of root values, which avoids the cancellation of
/// the expanded form.
pub fn discriminant_value(spec: &GroupSpec, h: &CartanVector) -> f64 {
    positive_roots(spec).iter().map(|r| r.eval(h)).product()
}
