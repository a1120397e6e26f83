//! Root systems, Weyl groups, and matrix embeddings for the classical families.
//!
//! Coordinates always refer to the fixed basis `e_1, …, e_N` of the Cartan
//! subalgebra of the defining representation. Roots are integer covectors in
//! the dual basis `e_j*`.

mod embed;
mod weyl;

pub use embed::{embed_cartan, embed_weyl};
pub use weyl::{pairing_exponent, weyl_apply, weyl_elements, weyl_sign, WeylElement, WeylElements};

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Compact classical group family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `U(N)`.
    UnitaryA,
    /// `SU(N)`.
    SpecialUnitaryA,
    /// `SO(2N)`.
    SpecialOrthogonalEvenD,
    /// `O(2N)`.
    OrthogonalEvenD,
    /// `SO(2N+1)`.
    SpecialOrthogonalOddB,
    /// `O(2N+1)`.
    OrthogonalOddB,
    /// `USp(N)`, realized as `2N x 2N` complex matrices.
    SymplecticC,
}

/// Cartan type of the root system attached to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootSystem {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::UnitaryA,
        Family::SpecialUnitaryA,
        Family::SpecialOrthogonalEvenD,
        Family::OrthogonalEvenD,
        Family::SpecialOrthogonalOddB,
        Family::OrthogonalOddB,
        Family::SymplecticC,
    ];

    pub fn root_system(self) -> RootSystem {
        match self {
            Family::UnitaryA | Family::SpecialUnitaryA => RootSystem::A,
            Family::SpecialOrthogonalEvenD | Family::OrthogonalEvenD => RootSystem::D,
            Family::SpecialOrthogonalOddB | Family::OrthogonalOddB => RootSystem::B,
            Family::SymplecticC => RootSystem::C,
        }
    }

    /// Number of connected components of the group.
    pub fn components(self) -> usize {
        match self {
            Family::OrthogonalEvenD | Family::OrthogonalOddB => 2,
            _ => 1,
        }
    }

    pub fn min_rank(self) -> usize {
        match self.root_system() {
            RootSystem::D => 2,
            _ => 1,
        }
    }

    /// The family of the identity component.
    pub fn identity_component(self) -> Family {
        match self {
            Family::OrthogonalEvenD => Family::SpecialOrthogonalEvenD,
            Family::OrthogonalOddB => Family::SpecialOrthogonalOddB,
            f => f,
        }
    }
}

/// A compact classical group: family, rank `N`, and component count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: Family,
    rank: usize,
    components: usize,
}

impl GroupSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Self::with_components(family, rank, family.components())
    }

    pub fn with_components(family: Family, rank: usize, components: usize) -> Result<Self> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::InvalidRank { family, rank, min });
        }
        if components != family.components() {
            return Err(Error::InvalidComponents { family, components });
        }
        Ok(Self {
            family,
            rank,
            components,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn root_system(&self) -> RootSystem {
        self.family.root_system()
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    /// The connected group sharing this spec's root data.
    pub fn identity_component(&self) -> GroupSpec {
        GroupSpec {
            family: self.family.identity_component(),
            rank: self.rank,
            components: 1,
        }
    }

    /// Size of the defining matrix representation.
    pub fn matrix_dim(&self) -> usize {
        match self.root_system() {
            RootSystem::A => self.rank,
            RootSystem::B => 2 * self.rank + 1,
            RootSystem::C | RootSystem::D => 2 * self.rank,
        }
    }

    /// `|W|` from the closed form for the family.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u32;
        let fact: u128 = (1..=n as u128).product();
        match self.root_system() {
            RootSystem::A => fact,
            RootSystem::D => fact << (n - 1),
            RootSystem::B | RootSystem::C => fact << n,
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.root_system() {
            RootSystem::A => n * (n - 1) / 2,
            RootSystem::D => n * (n - 1),
            RootSystem::B | RootSystem::C => n * n,
        }
    }

    /// Squared trace norm `tr(e_j e_j)` of the embedded basis vectors.
    ///
    /// Diagonal bases (`A`) have unit norm; the `2 x 2` rotation blocks of `B`/`D`
    /// and the `diag(1, -1)` pairs of `C` have norm 2. The Cartan coordinates are
    /// orthonormal for the trace form only after rescaling by `sqrt` of this.
    pub fn form_scale(&self) -> f64 {
        match self.root_system() {
            RootSystem::A => 1.0,
            _ => 2.0,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.family {
            Family::UnitaryA => write!(f, "U({n})"),
            Family::SpecialUnitaryA => write!(f, "SU({n})"),
            Family::SpecialOrthogonalEvenD => write!(f, "SO({})", 2 * n),
            Family::OrthogonalEvenD => write!(f, "O({})", 2 * n),
            Family::SpecialOrthogonalOddB => write!(f, "SO({})", 2 * n + 1),
            Family::OrthogonalOddB => write!(f, "O({})", 2 * n + 1),
            Family::SymplecticC => write!(f, "USp({n})"),
        }
    }
}

/// Coordinates `(a_1, …, a_N)` of a Cartan element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CartanVector(Vec<f64>);

impl CartanVector {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise square `h^(2)`; not the matrix square.
    pub fn squared(&self) -> CartanVector {
        CartanVector(self.0.iter().map(|x| x * x).collect())
    }

    pub fn scaled(&self, t: f64) -> CartanVector {
        CartanVector(self.0.iter().map(|x| t * x).collect())
    }

    pub fn dot(&self, other: &CartanVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(x, y)| x * y).sum()
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: self.len(),
            });
        }
        Ok(())
    }
}

impl From<Vec<f64>> for CartanVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl From<&[f64]> for CartanVector {
    fn from(v: &[f64]) -> Self {
        Self(v.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for CartanVector {
    fn from(v: [f64; N]) -> Self {
        Self(v.to_vec())
    }
}

impl Index<usize> for CartanVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Integer covector `Σ c_i e_i*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootCovector {
    coeffs: Vec<i8>,
}

impl RootCovector {
    pub fn new(coeffs: Vec<i8>) -> Self {
        debug_assert!(
            coeffs.iter().any(|&c| c != 0),
            "root covector must be nonzero"
        );
        debug_assert!(coeffs.iter().all(|c| (-2..=2).contains(c)));
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    pub fn arity(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, h: &CartanVector) -> f64 {
        self.coeffs
            .iter()
            .zip(h.coords())
            .map(|(&c, &x)| f64::from(c) * x)
            .sum()
    }

    fn unit(n: usize, i: usize, scale: i8) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = scale;
        Self::new(coeffs)
    }

    fn pair(n: usize, j: usize, k: usize, sign: i8) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[j] = 1;
        coeffs[k] = sign;
        Self::new(coeffs)
    }
}

/// Positive roots in the fixed order used throughout the crate.
///
/// Pair roots come first, ordered by `(j, k)` with `e_j* - e_k*` before
/// `e_j* + e_k*`; the `B` short roots `e_i*` and `C` long roots `2 e_i*` follow.
pub fn positive_roots(spec: &GroupSpec) -> Vec<RootCovector> {
    let n = spec.rank();
    let system = spec.root_system();
    let mut roots = Vec::with_capacity(spec.num_positive_roots());
    for j in 0..n {
        for k in j + 1..n {
            roots.push(RootCovector::pair(n, j, k, -1));
            if system != RootSystem::A {
                roots.push(RootCovector::pair(n, j, k, 1));
            }
        }
    }
    match system {
        RootSystem::B => roots.extend((0..n).map(|i| RootCovector::unit(n, i, 1))),
        RootSystem::C => roots.extend((0..n).map(|i| RootCovector::unit(n, i, 2))),
        RootSystem::A | RootSystem::D => {}
    }
    roots
}
