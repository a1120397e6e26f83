use thiserror::Error;

use crate::cartan::Family;

pub type Result<T> = std::result::Result<T, Error>;

/// Which Cartan argument an input error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Argument {
    A,
    B,
}

impl std::fmt::Display for Argument {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Argument::A => f.write_str("a"),
            Argument::B => f.write_str("b"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rank {rank} is not valid for family {family:?} (minimum {min})")]
    InvalidRank {
        family: Family,
        rank: usize,
        min: usize,
    },

    #[error("component count {components} is not valid for family {family:?}")]
    InvalidComponents { family: Family, components: usize },

    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error(
        "degenerate spectrum in {arg}: coordinates {i} and {j} ({xi}, {xj}) are too close \
         (gap {gap:.3e}, threshold {threshold:.3e})"
    )]
    DegenerateSpectrum {
        arg: Argument,
        i: usize,
        j: usize,
        xi: f64,
        xj: f64,
        gap: f64,
        threshold: f64,
    },

    #[error("zero coordinate in {arg}: coordinate {index} is {value} (threshold {threshold:.3e})")]
    ZeroCoordinate {
        arg: Argument,
        index: usize,
        value: f64,
        threshold: f64,
    },

    #[error("non-finite coordinate in {arg} at index {index}")]
    NonFinite { arg: Argument, index: usize },

    #[error("Weyl element is not valid for family {family:?}: {reason}")]
    InvalidWeylElement { family: Family, reason: String },

    #[error("rank {rank} exceeds the Weyl-sum cap {cap}")]
    RankTooLarge { rank: usize, cap: usize },

    #[error("integrand exponent {exponent} exceeds the overflow guard {limit}")]
    ExponentOverflow { exponent: f64, limit: f64 },

    #[error("imaginary part {residual:.3e} of the trace exceeds tolerance")]
    ImaginaryResidual { residual: f64 },

    #[error("sample count must be at least 1")]
    NoSamples,

    #[error("non-finite result: {0}")]
    NonFiniteResult(String),
}
