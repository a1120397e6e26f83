//! Shared inputs for the benchmarks.

use hcint::CartanVector;

/// Well-separated regular coordinates `(0.3, 0.7, 1.1, …)`, each positive and
/// distinct so that every root system accepts them.
pub fn regular(n: usize) -> CartanVector {
    CartanVector::new((0..n).map(|k| 0.3 + 0.4 * k as f64).collect())
}

/// A second regular vector, interleaved with [`regular`].
pub fn regular_alt(n: usize) -> CartanVector {
    CartanVector::new((0..n).map(|k| 0.2 + 0.45 * k as f64).collect())
}
