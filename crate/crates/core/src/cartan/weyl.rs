use super::{CartanVector, GroupSpec, RootSystem};
use crate::error::{Error, Result};

/// Signed permutation `w = (σ, η)` acting by `w(h)_j = η(j) h_{σ⁻¹(j)}`.
///
/// `perm[i]` stores `σ(i)` (zero-based). Composition is function composition:
/// `a.compose(&b)` acts as `a(b(h))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    /// Builds a signed permutation; panics if `perm` is not a permutation or
    /// `signs` holds values other than ±1.
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        assert_eq!(
            perm.len(),
            signs.len(),
            "perm and signs must have equal length"
        );
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            assert!(p < perm.len() && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be ±1");
        Self { perm, signs }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    /// The coordinate flip `h_i ↦ -h_i`.
    pub fn flip(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.signs[i] = -1;
        w
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `sgn(σ)` via cycle decomposition.
    pub fn perm_sign(&self) -> i8 {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut sign = 1i8;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// `∏ η(j)`.
    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.len(), other.len());
        let inv = self.inverse_perm();
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = (0..self.len())
            .map(|j| self.signs[j] * other.signs[inv[j]])
            .collect();
        WeylElement { perm, signs }
    }

    pub fn inverse(&self) -> WeylElement {
        let perm = self.inverse_perm();
        let signs = self.perm.iter().map(|&p| self.signs[p]).collect();
        WeylElement { perm, signs }
    }

    /// Checks the family constraints: length, no sign changes for `A`, an even
    /// number of sign changes for `D`.
    pub fn validate(&self, spec: &GroupSpec) -> Result<()> {
        let family = spec.family();
        if self.len() != spec.rank() {
            return Err(Error::InvalidWeylElement {
                family,
                reason: format!("length {} does not match rank {}", self.len(), spec.rank()),
            });
        }
        match spec.root_system() {
            RootSystem::A if self.signs.iter().any(|&s| s != 1) => Err(Error::InvalidWeylElement {
                family,
                reason: "type A Weyl elements carry no sign changes".into(),
            }),
            RootSystem::D if self.sign_product() != 1 => Err(Error::InvalidWeylElement {
                family,
                reason: "type D Weyl elements change an even number of signs".into(),
            }),
            _ => Ok(()),
        }
    }
}

/// Enumerates `W` in a fixed order: permutations lexicographically, and for
/// each permutation the sign patterns as a binary counter (bit `j` set means
/// `η(j) = -1`).
#[derive(Debug, Clone)]
pub struct WeylElements {
    system: RootSystem,
    perm: Option<Vec<usize>>,
    mask: u64,
    mask_end: u64,
}

impl Iterator for WeylElements {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        loop {
            let perm = self.perm.as_mut()?;
            if self.mask == self.mask_end {
                if !next_permutation(perm) {
                    self.perm = None;
                    return None;
                }
                self.mask = 0;
            }
            let mask = self.mask;
            self.mask += 1;
            if self.system == RootSystem::D && mask.count_ones() % 2 == 1 {
                continue;
            }
            let signs = (0..perm.len())
                .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
                .collect();
            return Some(WeylElement {
                perm: perm.clone(),
                signs,
            });
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn weyl_elements(spec: &GroupSpec) -> WeylElements {
    let n = spec.rank();
    assert!(n < 64, "sign patterns are tracked in a u64 counter");
    let system = spec.root_system();
    let mask_end = if system == RootSystem::A {
        1
    } else {
        1u64 << n
    };
    WeylElements {
        system,
        perm: Some((0..n).collect()),
        mask: 0,
        mask_end,
    }
}

/// `ε(w)`: `sgn(σ)` for `A`/`D`, `sgn(σ)·∏η` for `B`/`C`.
pub fn weyl_sign(w: &WeylElement, spec: &GroupSpec) -> i8 {
    match spec.root_system() {
        RootSystem::A | RootSystem::D => w.perm_sign(),
        RootSystem::B | RootSystem::C => w.perm_sign() * w.sign_product(),
    }
}

pub fn weyl_apply(w: &WeylElement, h: &CartanVector) -> CartanVector {
    assert_eq!(
        w.len(),
        h.len(),
        "Weyl element and Cartan vector lengths differ"
    );
    let mut out = vec![0.0; h.len()];
    for (i, &p) in w.perm.iter().enumerate() {
        out[p] = f64::from(w.signs[p]) * h[i];
    }
    CartanVector::new(out)
}

/// Trace-form pairing `tr(embed(w(a)) embed(b))`, i.e. `Σ_j η(j) a_{σ⁻¹(j)} b_j`
/// scaled by [`GroupSpec::form_scale`].
pub fn pairing_exponent(
    spec: &GroupSpec,
    a: &CartanVector,
    w: &WeylElement,
    b: &CartanVector,
) -> f64 {
    assert_eq!(a.len(), b.len());
    assert_eq!(w.len(), a.len());
    let s: f64 = w
        .perm
        .iter()
        .enumerate()
        .map(|(i, &p)| f64::from(w.signs[p]) * a[i] * b[p])
        .sum();
    spec.form_scale() * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn spec(f: Family, n: usize) -> GroupSpec {
        GroupSpec::new(f, n).unwrap()
    }

    #[test]
    fn enumeration_counts_and_distinct() {
        for f in [
            Family::UnitaryA,
            Family::SpecialOrthogonalEvenD,
            Family::SpecialOrthogonalOddB,
            Family::SymplecticC,
        ] {
            for n in f.min_rank()..=6 {
                let s = spec(f, n);
                let all: Vec<_> = weyl_elements(&s).collect();
                assert_eq!(all.len() as u128, s.weyl_order(), "{s}");
                let set: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(set.len(), all.len(), "{s}: duplicates");
                assert!(all.iter().all(|w| w.validate(&s).is_ok()));
            }
        }
        assert_eq!(weyl_elements(&spec(Family::UnitaryA, 3)).count(), 6);
        assert_eq!(
            weyl_elements(&spec(Family::SpecialOrthogonalEvenD, 2)).count(),
            4
        );
        assert_eq!(
            weyl_elements(&spec(Family::SpecialOrthogonalOddB, 2)).count(),
            8
        );
    }

    #[test]
    fn enumeration_order_is_fixed() {
        let s = spec(Family::SpecialOrthogonalOddB, 2);
        let first: Vec<_> = weyl_elements(&s).take(5).collect();
        assert!(first[0].is_identity());
        assert_eq!(first[1], WeylElement::new(vec![0, 1], vec![-1, 1]));
        assert_eq!(first[3], WeylElement::new(vec![0, 1], vec![-1, -1]));
        assert_eq!(first[4], WeylElement::new(vec![1, 0], vec![1, 1]));
    }

    #[test]
    fn signs() {
        let a = spec(Family::UnitaryA, 3);
        assert_eq!(weyl_sign(&WeylElement::identity(3), &a), 1);
        assert_eq!(
            weyl_sign(&WeylElement::new(vec![1, 0, 2], vec![1, 1, 1]), &a),
            -1
        );
        let b = spec(Family::SpecialOrthogonalOddB, 3);
        assert_eq!(weyl_sign(&WeylElement::flip(3, 0), &b), -1);
        let d = spec(Family::SpecialOrthogonalEvenD, 2);
        assert_eq!(
            weyl_sign(&WeylElement::new(vec![0, 1], vec![-1, -1]), &d),
            1
        );
    }

    #[test]
    fn apply_examples() {
        let h = CartanVector::from([1.0, 2.0]);
        assert_eq!(weyl_apply(&WeylElement::identity(2), &h), h);
        assert_eq!(
            weyl_apply(&WeylElement::new(vec![1, 0], vec![1, 1]), &h),
            CartanVector::from([2.0, 1.0])
        );
        assert_eq!(
            weyl_apply(&WeylElement::flip(2, 0), &h),
            CartanVector::from([-1.0, 2.0])
        );
        // σ = (0→1→2→0): result_j = h_{σ⁻¹(j)}.
        let w = WeylElement::new(vec![1, 2, 0], vec![1, 1, -1]);
        assert_eq!(
            weyl_apply(&w, &CartanVector::from([1.0, 2.0, 3.0])),
            CartanVector::from([3.0, 1.0, -2.0])
        );
    }

    #[test]
    fn pairing_examples() {
        let a = CartanVector::from([1.0, 0.0]);
        let id = WeylElement::identity(2);
        assert_eq!(
            pairing_exponent(&spec(Family::UnitaryA, 2), &a, &id, &a),
            1.0
        );
        assert_eq!(
            pairing_exponent(&spec(Family::SpecialOrthogonalEvenD, 2), &a, &id, &a),
            2.0
        );
        let ones = CartanVector::from([1.0, 1.0]);
        let w = WeylElement::flip(2, 0);
        assert_eq!(
            pairing_exponent(&spec(Family::SpecialOrthogonalOddB, 2), &ones, &w, &ones),
            0.0
        );
    }

    #[test]
    fn validation_rejects_bad_elements() {
        let d = spec(Family::SpecialOrthogonalEvenD, 3);
        assert!(WeylElement::flip(3, 1).validate(&d).is_err());
        let a = spec(Family::UnitaryA, 3);
        assert!(WeylElement::flip(3, 1).validate(&a).is_err());
        assert!(WeylElement::identity(2).validate(&a).is_err());
    }

    fn signed_perm(n: usize) -> impl Strategy<Value = WeylElement> {
        (
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], n),
        )
            .prop_map(|(p, s)| WeylElement::new(p, s))
    }

    fn case() -> impl Strategy<Value = (WeylElement, WeylElement, Vec<f64>)> {
        (1usize..=6).prop_flat_map(|n| {
            (
                signed_perm(n),
                signed_perm(n),
                proptest::collection::vec(-5.0..5.0f64, n),
            )
        })
    }

    proptest! {
        #[test]
        fn apply_respects_composition((w1, w2, h) in case()) {
            let h = CartanVector::new(h);
            let lhs = weyl_apply(&w1, &weyl_apply(&w2, &h));
            let rhs = weyl_apply(&w1.compose(&w2), &h);
            prop_assert_eq!(lhs, rhs);
            let back = weyl_apply(&w1.inverse(), &weyl_apply(&w1, &h));
            prop_assert_eq!(back, h);
        }

        #[test]
        fn sign_is_a_homomorphism((w1, w2, _h) in case()) {
            let n = w1.len();
            for s in [
                spec(Family::UnitaryA, n),
                spec(Family::SpecialOrthogonalOddB, n),
                spec(Family::SymplecticC, n),
            ] {
                prop_assert_eq!(
                    weyl_sign(&w1.compose(&w2), &s),
                    weyl_sign(&w1, &s) * weyl_sign(&w2, &s)
                );
            }
        }

        #[test]
        fn pairing_is_form_of_applied_element((w, _w2, a) in case(), seed in 0u64..1000) {
            let n = a.len();
            let a = CartanVector::new(a);
            let b = CartanVector::new((0..n).map(|i| ((seed + i as u64) % 7) as f64 - 3.0).collect());
            let id = WeylElement::identity(n);
            let s = spec(Family::SymplecticC, n);
            let lhs = pairing_exponent(&s, &a, &w, &b);
            let rhs = pairing_exponent(&s, &weyl_apply(&w, &a), &id, &b);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
