use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{CartanVector, Family, GroupSpec, RootSystem, WeylElement};
use crate::error::Result;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `Σ h_j e_j` in the defining representation.
///
/// * `A`: `diag(h)`.
/// * `B`/`D`: block `j` holds `i h_j (E_{2j-1,2j} - E_{2j,2j-1})`; the last
///   row and column are zero for `B`.
/// * `C`: `diag(h, -h)`.
///
/// The bases satisfy `tr(e_j e_k) = form_scale · δ_jk`, so
/// `tr(embed(a) embed(b))` equals the identity term of
/// [`pairing_exponent`](super::pairing_exponent).
pub fn embed_cartan(spec: &GroupSpec, h: &CartanVector) -> Result<DMatrix<Complex64>> {
    h.check_len(spec.rank())?;
    let n = spec.rank();
    let dim = spec.matrix_dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    match spec.root_system() {
        RootSystem::A => {
            for j in 0..n {
                m[(j, j)] = h[j].into();
            }
        }
        RootSystem::B | RootSystem::D => {
            for j in 0..n {
                m[(2 * j, 2 * j + 1)] = I * h[j];
                m[(2 * j + 1, 2 * j)] = -I * h[j];
            }
        }
        RootSystem::C => {
            for j in 0..n {
                m[(j, j)] = h[j].into();
                m[(j + n, j + n)] = (-h[j]).into();
            }
        }
    }
    Ok(m)
}

/// A group element representing `w`, so that
/// `g · embed(h) · g⁻¹ = embed(w(h))`.
///
/// * `U(N)`: the permutation matrix of `σ`.
/// * `SU(N)`: the permutation matrix times the phase `e^{iπ/N}` when `σ` is
///   odd, which brings the determinant to 1 without changing the action.
/// * `B`/`D`: `H_η P_σ` with `2 x 2` block permutations and `Q_2` swap blocks;
///   for `B` the trailing diagonal entry fixes the determinant at 1.
/// * `C`: `diag(P_σ, P_σ)` followed by `[[0, 1], [-1, 0]]` on the `(j, j+N)`
///   plane for each flipped coordinate.
pub fn embed_weyl(spec: &GroupSpec, w: &WeylElement) -> Result<DMatrix<Complex64>> {
    w.validate(spec)?;
    let n = spec.rank();
    let dim = spec.matrix_dim();
    let perm = w.perm();
    let signs = w.signs();
    let one = Complex64::new(1.0, 0.0);
    let mut g = DMatrix::<Complex64>::zeros(dim, dim);
    match spec.root_system() {
        RootSystem::A => {
            let scale = if spec.family() == Family::SpecialUnitaryA && w.perm_sign() == -1 {
                Complex64::from_polar(1.0, PI / n as f64)
            } else {
                one
            };
            for (i, &p) in perm.iter().enumerate() {
                g[(p, i)] = scale;
            }
        }
        RootSystem::B | RootSystem::D => {
            // Row block p of H_η P_σ is the (possibly swapped) image of column block i.
            for (i, &p) in perm.iter().enumerate() {
                if signs[p] == 1 {
                    g[(2 * p, 2 * i)] = one;
                    g[(2 * p + 1, 2 * i + 1)] = one;
                } else {
                    g[(2 * p, 2 * i + 1)] = one;
                    g[(2 * p + 1, 2 * i)] = one;
                }
            }
            if spec.root_system() == RootSystem::B {
                g[(2 * n, 2 * n)] = f64::from(w.sign_product()).into();
            }
        }
        RootSystem::C => {
            for (i, &p) in perm.iter().enumerate() {
                if signs[p] == 1 {
                    g[(p, i)] = one;
                    g[(p + n, i + n)] = one;
                } else {
                    g[(p, i + n)] = one;
                    g[(p + n, i)] = -one;
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{pairing_exponent, weyl_apply, weyl_elements};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(f: Family, n: usize) -> GroupSpec {
        GroupSpec::new(f, n).unwrap()
    }

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn random_h(rng: &mut ChaCha8Rng, n: usize) -> CartanVector {
        CartanVector::new((0..n).map(|_| rng.random_range(-2.0..2.0)).collect())
    }

    #[test]
    fn small_embeddings() {
        let a = embed_cartan(&spec(Family::UnitaryA, 2), &CartanVector::from([0.5, -1.5])).unwrap();
        assert_eq!(
            a,
            DMatrix::from_diagonal(&nalgebra::dvector![0.5.into(), (-1.5).into()])
        );

        let c = embed_cartan(&spec(Family::SymplecticC, 1), &CartanVector::from([0.7])).unwrap();
        assert_eq!(c[(0, 0)], 0.7.into());
        assert_eq!(c[(1, 1)], (-0.7).into());

        for f in Family::ALL {
            let s = spec(f, 3);
            let z = embed_cartan(&s, &CartanVector::zeros(3)).unwrap();
            assert_eq!(max_abs(&z), 0.0);
        }
        assert!(embed_cartan(&spec(Family::UnitaryA, 2), &CartanVector::zeros(3)).is_err());
    }

    #[test]
    fn trace_form_matches_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in Family::ALL {
            for n in f.min_rank()..=4 {
                let s = spec(f, n);
                let a = random_h(&mut rng, n);
                let b = random_h(&mut rng, n);
                let tr = (embed_cartan(&s, &a).unwrap() * embed_cartan(&s, &b).unwrap()).trace();
                let expect = pairing_exponent(&s, &a, &crate::cartan::WeylElement::identity(n), &b);
                assert!((tr.re - expect).abs() < 1e-12 && tr.im.abs() < 1e-12, "{s}");
            }
        }
    }

    #[test]
    fn weyl_representatives_examples() {
        let s = spec(Family::UnitaryA, 2);
        let p = embed_weyl(&s, &WeylElement::new(vec![1, 0], vec![1, 1])).unwrap();
        assert_eq!(p[(0, 1)], 1.0.into());
        assert_eq!(p[(1, 0)], 1.0.into());
        assert_eq!(p[(0, 0)], 0.0.into());

        let d = spec(Family::SpecialOrthogonalEvenD, 2);
        let q = embed_weyl(&d, &WeylElement::new(vec![0, 1], vec![-1, -1])).unwrap();
        let mut expect = DMatrix::<Complex64>::zeros(4, 4);
        for (r, c) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            expect[(r, c)] = 1.0.into();
        }
        assert_eq!(q, expect);
        assert!(embed_weyl(&d, &WeylElement::flip(2, 0)).is_err());

        for f in Family::ALL {
            let s = spec(f, 3);
            let g = embed_weyl(&s, &WeylElement::identity(3)).unwrap();
            assert_eq!(g, DMatrix::identity(s.matrix_dim(), s.matrix_dim()));
        }
    }

    #[test]
    fn representatives_are_group_elements() {
        let j = |n: usize| {
            let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
            for i in 0..n {
                m[(i, i + n)] = 1.0.into();
                m[(i + n, i)] = (-1.0).into();
            }
            m
        };
        for f in Family::ALL {
            for n in f.min_rank()..=3 {
                let s = spec(f, n);
                for w in weyl_elements(&s) {
                    let g = embed_weyl(&s, &w).unwrap();
                    let dim = s.matrix_dim();
                    let unit = &g.adjoint() * &g - DMatrix::<Complex64>::identity(dim, dim);
                    assert!(max_abs(&unit) < 1e-14, "{s}");
                    let det = g.determinant();
                    if f != Family::UnitaryA {
                        assert!(
                            (det - Complex64::new(1.0, 0.0)).norm() < 1e-12,
                            "{s} {w:?} det {det}"
                        );
                    }
                    if f == Family::SymplecticC {
                        let jj = j(n);
                        assert!(max_abs(&(&g * &jj * g.transpose() - &jj)) < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in Family::ALL {
            for n in f.min_rank()..=4 {
                let s = spec(f, n);
                for w in weyl_elements(&s) {
                    let h = random_h(&mut rng, n);
                    let g = embed_weyl(&s, &w).unwrap();
                    let ginv = g.clone().try_inverse().unwrap();
                    let lhs = &g * embed_cartan(&s, &h).unwrap() * ginv;
                    let rhs = embed_cartan(&s, &weyl_apply(&w, &h)).unwrap();
                    assert!(max_abs(&(lhs - rhs)) < 1e-12, "{s} {w:?}");
                }
            }
        }
    }
}
