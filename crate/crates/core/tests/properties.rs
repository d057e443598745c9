//! Cross-module invariants, exercised on randomized structured inputs.
//! Multilinear identities run under proptest on integer boxes; structured
//! generators (subalgebras, admissible forms, horizontal tensors) come
//! from the deterministic test kit.

use dirac_core::algebra::{Covector, LieAlgebra, Vector};
use dirac_core::curvature::CurvatureModel;
use dirac_core::double::{pairing, split_pairing_gram, DoubleElement, DoubleSubspace};
use dirac_core::families;
use dirac_core::isotropic::{decompose_l, IsotropicPair};
use dirac_core::matrix::Matrix;
use dirac_core::parabolic::Grading;
use dirac_core::scalar::{rat, GaussianRational, Rational};
use dirac_core::search::{classify, epsilon_space, EGenerator, SearchConfig};
use dirac_core::subspace::Subspace;
use dirac_core::testkit::{
    complex_library, coordinate_subalgebras, random_antisymmetric, random_curvature_model,
    random_dirac_pair_containing, random_pair, random_subalgebra_over, random_subspace,
    random_vector, RandomScalar, Rng,
};

use num_traits::Zero;
use proptest::prelude::*;

fn qvec(coords: &[i64]) -> Vector<Rational> {
    Vector(coords.iter().map(|&x| rat(x, 1)).collect())
}

fn library_algebra(idx: usize) -> LieAlgebra<Rational> {
    let lib = families::library();
    lib[idx % lib.len()].clone()
}

proptest! {
    /// The Jacobi identity extends from basis triples to random vectors.
    #[test]
    fn jacobi_defect_vanishes_on_random_vectors(
        idx in 0usize..17,
        a in proptest::collection::vec(-4i64..5, 5),
        b in proptest::collection::vec(-4i64..5, 5),
        c in proptest::collection::vec(-4i64..5, 5),
    ) {
        let g = library_algebra(idx);
        prop_assert!(g.jacobi_check().unwrap().is_empty());
        let n = g.dim();
        let (a, b, c) = (qvec(&a[..n]), qvec(&b[..n]), qvec(&c[..n]));
        let defect = g.bracket(&g.bracket(&a, &b).unwrap(), &c).unwrap()
            + g.bracket(&g.bracket(&b, &c).unwrap(), &a).unwrap()
            + g.bracket(&g.bracket(&c, &a).unwrap(), &b).unwrap();
        prop_assert!(defect.is_zero());
    }

    /// The coadjoint action is the negative transpose of the adjoint.
    #[test]
    fn coadjoint_is_negative_transpose_of_adjoint(
        idx in 0usize..17,
        a in proptest::collection::vec(-4i64..5, 5),
    ) {
        let g = library_algebra(idx);
        let n = g.dim();
        let a = qvec(&a[..n]);
        let expected = g.ad_matrix(&a).unwrap().transpose().neg();
        // Column j holds the dual coordinates of ad*_a(b_j*), which is the
        // matrix of ad*_a itself.
        let mut actual = Matrix::zeros(n, n);
        for j in 0..n {
            let col = g.coadjoint(&a, &Covector::basis(n, j)).unwrap();
            for i in 0..n {
                actual[(i, j)] = col.0[i].clone();
            }
        }
        prop_assert_eq!(actual, expected);
    }

    /// Invariance of the Killing form: B([A,B],C) + B(B,[A,C]) = 0.
    #[test]
    fn killing_form_is_invariant(
        idx in 0usize..17,
        a in proptest::collection::vec(-3i64..4, 5),
        b in proptest::collection::vec(-3i64..4, 5),
        c in proptest::collection::vec(-3i64..4, 5),
    ) {
        let g = library_algebra(idx);
        let n = g.dim();
        let (a, b, c) = (qvec(&a[..n]), qvec(&b[..n]), qvec(&c[..n]));
        let killing = g.killing_form();
        let apply = |x: &Vector<Rational>, y: &Vector<Rational>| -> Rational {
            let mut acc = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = acc + x.0[i].clone() * killing[(i, j)].clone() * y.0[j].clone();
                }
            }
            acc
        };
        let lhs = apply(&g.bracket(&a, &b).unwrap(), &c) + apply(&b, &g.bracket(&a, &c).unwrap());
        prop_assert!(lhs.is_zero());
    }

    /// The semidirect bracket satisfies the Jacobi identity on the double.
    #[test]
    fn semidirect_bracket_satisfies_jacobi(
        idx in 0usize..17,
        coords in proptest::collection::vec(-3i64..4, 30),
    ) {
        let g = library_algebra(idx);
        let n = g.dim();
        let elem = |offset: usize| {
            DoubleElement::new(
                qvec(&coords[offset..offset + n]),
                Covector(coords[offset + 5..offset + 5 + n].iter().map(|&x| rat(x, 1)).collect()),
            )
        };
        let (x, y, z) = (elem(0), elem(10), elem(20));
        let defect = g.semidirect_bracket(&g.semidirect_bracket(&x, &y).unwrap(), &z).unwrap()
            + g.semidirect_bracket(&g.semidirect_bracket(&y, &z).unwrap(), &x).unwrap()
            + g.semidirect_bracket(&g.semidirect_bracket(&z, &x).unwrap(), &y).unwrap();
        prop_assert!(defect.is_zero());
    }

    /// The split pairing is invariant for the semidirect bracket:
    /// ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0.
    #[test]
    fn pairing_is_ad_invariant(
        idx in 0usize..17,
        coords in proptest::collection::vec(-3i64..4, 30),
    ) {
        let g = library_algebra(idx);
        let n = g.dim();
        let elem = |offset: usize| {
            DoubleElement::new(
                qvec(&coords[offset..offset + n]),
                Covector(coords[offset + 5..offset + 5 + n].iter().map(|&x| rat(x, 1)).collect()),
            )
        };
        let (x, y, z) = (elem(0), elem(10), elem(20));
        let lhs = pairing(&g.semidirect_bracket(&x, &y).unwrap(), &z).unwrap()
            + pairing(&y, &g.semidirect_bracket(&x, &z).unwrap()).unwrap();
        prop_assert!(lhs.is_zero());
    }

    /// Canonicality: the span does not depend on the presenting basis.
    #[test]
    fn span_is_basis_independent(
        rows in proptest::collection::vec(proptest::collection::vec(-4i64..5, 4), 1..4),
        mix in -3i64..4,
    ) {
        let vectors: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect();
        let s = Subspace::span(4, &vectors).unwrap();
        // Present the same span differently: reverse the list and append a
        // linear combination of the first and last vectors.
        let mut other: Vec<Vec<Rational>> = vectors.iter().rev().cloned().collect();
        let first = vectors[0].clone();
        let last = vectors[vectors.len() - 1].clone();
        let combo: Vec<Rational> = first
            .iter()
            .zip(&last)
            .map(|(a, b)| a.clone() + rat(mix, 1) * b.clone())
            .collect();
        other.push(combo);
        let t = Subspace::span(4, &other).unwrap();
        prop_assert_eq!(s, t);
    }

    /// dim S + dim T = dim(S + T) + dim(S ∩ T).
    #[test]
    fn dimension_formula_holds(seed in 0u64..5000) {
        let mut rng = Rng::new(seed);
        let s: Subspace<Rational> = random_subspace(&mut rng, 4);
        let t: Subspace<Rational> = random_subspace(&mut rng, 4);
        prop_assert_eq!(
            s.dim() + t.dim(),
            s.sum(&t).unwrap().dim() + s.intersect(&t).unwrap().dim()
        );
    }

    /// Θ changes sign with the parity of argument permutations.
    #[test]
    fn theta_is_alternating(
        idx in 0usize..17,
        coords in proptest::collection::vec(-3i64..4, 30),
        seed in 0u64..1000,
    ) {
        let g = library_algebra(idx);
        let n = g.dim();
        let mut rng = Rng::new(seed);
        let choices = coordinate_subalgebras(&g);
        let (p, p_idx) = choices[rng.below(choices.len())].clone();
        let model = random_curvature_model(&mut rng, &g, &p, &p_idx, false);
        let elem = |offset: usize| {
            DoubleElement::new(
                qvec(&coords[offset..offset + n]),
                Covector(coords[offset + 5..offset + 5 + n].iter().map(|&x| rat(x, 1)).collect()),
            )
        };
        let (x, y, z) = (elem(0), elem(10), elem(20));
        let base = model.theta(&x, &y, &z).unwrap();
        // Odd permutations flip the sign; even permutations preserve it.
        prop_assert_eq!(model.theta(&y, &x, &z).unwrap(), -base.clone());
        prop_assert_eq!(model.theta(&x, &z, &y).unwrap(), -base.clone());
        prop_assert_eq!(model.theta(&z, &x, &y).unwrap(), base.clone());
        prop_assert_eq!(model.theta(&y, &z, &x).unwrap(), base.clone());
        prop_assert!(model.theta(&x, &x, &z).unwrap().is_zero());
    }
}

/// K(x, y) is unchanged when an argument is shifted by an element of `p`
/// with zero covector part: horizontality at the level of the double.
#[test]
fn k_map_ignores_p_shifts() {
    let mut rng = Rng::new(41);
    for g in families::library() {
        let n = g.dim();
        for (p, p_idx) in coordinate_subalgebras(&g) {
            let model = random_curvature_model(&mut rng, &g, &p, &p_idx, false);
            for _ in 0..5 {
                let x = DoubleElement::new(random_vector(&mut rng, n), Covector::zero(n));
                let y = DoubleElement::new(
                    random_vector(&mut rng, n),
                    Covector(random_vector::<Rational>(&mut rng, n).0),
                );
                let mut shift = Vector::zero(n);
                for row in p.basis_rows() {
                    let c = Rational::random(&mut rng);
                    shift = shift + Vector(row).scale(&c);
                }
                let shifted = DoubleElement::new(x.vec.clone() + shift, x.covec.clone());
                assert_eq!(
                    model.k_map(&x, &y).unwrap(),
                    model.k_map(&shifted, &y).unwrap()
                );
            }
        }
    }
}

/// Round trips of the parametrization: decompose ∘ build = id on pairs,
/// build ∘ decompose = id on maximal isotropics.
#[test]
fn parametrization_round_trips() {
    let mut rng = Rng::new(7);
    for trial in 0..300 {
        let n = 2 + (trial % 4);
        let pair: IsotropicPair<Rational> = random_pair(&mut rng, n);
        let l = pair.build_l();
        assert!(l.is_maximal_isotropic(), "build_l output is maximal");
        let back = decompose_l(&l).unwrap();
        assert_eq!(back, pair, "decompose inverts build");
        assert_eq!(back.build_l(), l, "build inverts decompose");
    }
    // And over the complex field.
    for trial in 0..150 {
        let n = 2 + (trial % 3);
        let pair: IsotropicPair<GaussianRational> = random_pair(&mut rng, n);
        let l = pair.build_l();
        let back = decompose_l(&l).unwrap();
        assert_eq!(back, pair);
    }
}

/// Integrability of L(E, ε) is equivalent to the direct Dirac test.
#[test]
fn integrability_matches_direct_dirac_test() {
    let mut rng = Rng::new(11);
    let lib = families::library();
    let mut yes = 0;
    let mut no = 0;
    for trial in 0..400 {
        let g = &lib[trial % lib.len()];
        let pair: IsotropicPair<Rational> = random_pair(&mut rng, g.dim());
        let shortcut = pair.check_integrable(g).unwrap().is_yes();
        let direct = pair.build_l().is_dirac_subalgebra(g).unwrap().is_yes();
        assert_eq!(shortcut, direct, "trial {trial} disagreed");
        if shortcut {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 20 && no > 20, "both outcomes exercised: {yes} / {no}");
}

/// Membership of p in L(E, ε) is equivalent to subspace containment.
#[test]
fn contains_p_matches_direct_membership() {
    let mut rng = Rng::new(13);
    let lib = families::library();
    for trial in 0..400 {
        let g = &lib[trial % lib.len()];
        let n = g.dim();
        let pair: IsotropicPair<Rational> = random_pair(&mut rng, n);
        let p = random_subspace(&mut rng, n);
        let shortcut = pair.contains_p(&p).unwrap().is_yes();
        let direct = DoubleSubspace::embed_vectors(&p)
            .subspace()
            .leq(pair.build_l().subspace())
            .unwrap();
        assert_eq!(shortcut, direct, "trial {trial} disagreed");
    }
}

/// Real-index parity: maximal isotropics over ℚ(i) have index ≡ n (mod 2).
#[test]
fn real_index_parity() {
    let mut rng = Rng::new(17);
    for trial in 0..300 {
        let n = 2 + (trial % 4);
        let pair: IsotropicPair<GaussianRational> = random_pair(&mut rng, n);
        let index = pair.build_l().real_index().unwrap();
        assert_eq!(index % 2, n % 2, "trial {trial}: index {index}, n {n}");
    }
}

/// Orthogonality and J² = −I for endomorphisms built from random
/// zero-index maximal isotropics, and recovery of D as the +i eigenspace.
#[test]
fn constructed_j_is_orthogonal_and_squares_to_minus_one() {
    let mut rng = Rng::new(19);
    let mut built = 0;
    for trial in 0..600 {
        let n = 2 + 2 * (trial % 2);
        let pair: IsotropicPair<GaussianRational> = random_pair(&mut rng, n);
        let d = pair.build_l();
        if d.real_index().unwrap() != 0 {
            continue;
        }
        built += 1;
        let j = d.construct_j().unwrap();
        let two_n = 2 * n;
        assert_eq!(j.mul(&j), Matrix::<Rational>::identity(two_n).neg());
        let gram = split_pairing_gram::<Rational>(n);
        assert_eq!(j.transpose().mul(&gram).mul(&j), gram);

        // +i eigenspace recovers D: kernel of (J − iI) over ℚ(i).
        let jc = j.map(|x| GaussianRational::from_real(x.clone()));
        let shifted = Matrix::from_fn(two_n, two_n, |r, c| {
            let base = jc[(r, c)].clone();
            if r == c {
                base - GaussianRational::i()
            } else {
                base
            }
        });
        let eigen = Subspace::span(two_n, &shifted.kernel()).unwrap();
        assert_eq!(&eigen, d.subspace());
    }
    assert!(built >= 30, "exercised {built} zero-index cases");
}

/// Dirac subalgebras are preserved by algebra automorphisms acting
/// diagonally on the double (hand-chosen automorphisms of the Euclidean
/// plane algebra: a rational rotation and an anisotropic-free scaling).
#[test]
fn dirac_is_stable_under_diagonal_automorphisms() {
    let g = families::euclidean2();
    let rotation = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(3, 5), rat(-4, 5)],
        vec![rat(0, 1), rat(4, 5), rat(3, 5)],
    ])
    .unwrap();
    let scaling = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(7, 2), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(7, 2)],
    ])
    .unwrap();
    for phi in [rotation, scaling] {
        // Verify phi is an automorphism: [phi x, phi y] = phi [x, y].
        for i in 0..3 {
            for j in 0..3 {
                let x = Vector::<Rational>::basis(3, i);
                let y = Vector::basis(3, j);
                let lhs = g
                    .bracket(&Vector(phi.mul_vec(&x.0)), &Vector(phi.mul_vec(&y.0)))
                    .unwrap();
                let rhs = Vector(phi.mul_vec(&g.bracket(&x, &y).unwrap().0));
                assert_eq!(lhs, rhs, "automorphism check ({i}, {j})");
            }
        }
        // Diagonal action: phi on vectors, inverse transpose on covectors.
        let phi_inv_t = phi.inverse().unwrap().transpose();
        let block = Matrix::from_fn(6, 6, |r, c| {
            if r < 3 && c < 3 {
                phi[(r, c)].clone()
            } else if r >= 3 && c >= 3 {
                phi_inv_t[(r - 3, c - 3)].clone()
            } else {
                Rational::zero()
            }
        });
        let mut rng = Rng::new(23);
        for _ in 0..40 {
            let pair = random_dirac_pair_containing(&mut rng, &g, &Subspace::zero(3)).unwrap();
            let d = pair.build_l();
            assert!(d.is_dirac_subalgebra(&g).unwrap().is_yes());
            let image =
                DoubleSubspace::from_subspace(d.subspace().apply(&block).unwrap()).unwrap();
            assert!(
                image.is_dirac_subalgebra(&g).unwrap().is_yes(),
                "image under the diagonal automorphism stays Dirac"
            );
        }
    }
}

/// Torsion-free models with Dirac subalgebras containing p always satisfy
/// the cyclic-sum criterion.
#[test]
fn torsion_free_implies_theta_vanishes() {
    let mut rng = Rng::new(29);
    let lib = families::library();
    for trial in 0..300 {
        let g = &lib[trial % lib.len()];
        let choices = coordinate_subalgebras(g);
        let (p, p_idx) = choices[rng.below(choices.len())].clone();
        let model = random_curvature_model(&mut rng, g, &p, &p_idx, true);
        assert!(model.is_torsion_free());
        let Ok(pair) = random_dirac_pair_containing(&mut rng, g, &p) else {
            continue;
        };
        let d = pair.build_l();
        assert!(
            model.theta_vanishes_on(&d).unwrap().vanishes(),
            "trial {trial}: torsion-free model produced a nonzero cyclic sum"
        );
    }
}

/// The six-condition report and the direct generalized-complex check agree
/// on every randomized pair.
#[test]
fn gcs_conditions_match_direct_check() {
    let mut rng = Rng::new(31);
    let lib = complex_library();
    let mut yes = 0;
    for trial in 0..250 {
        let g = &lib[trial % lib.len()];
        let n = g.dim();
        let choices = coordinate_subalgebras(g);
        let (p, p_idx) = choices[rng.below(choices.len())].clone();
        let model = random_curvature_model(&mut rng, g, &p, &p_idx, true);
        // Randomly alternate between arbitrary pairs and admissible ones.
        let pair: IsotropicPair<GaussianRational> = if rng.chance(1, 2) {
            random_pair(&mut rng, n)
        } else {
            match random_dirac_pair_containing(&mut rng, g, &p) {
                Ok(p) => p,
                Err(_) => continue,
            }
        };
        let conditions = model.linear_gcs_conditions(&pair).unwrap();
        let direct = model.gcs_check(&pair.build_l()).unwrap();
        assert_eq!(
            conditions.verdict, direct.verdict,
            "trial {trial}: six-condition report disagrees with the direct check"
        );
        if conditions.verdict {
            yes += 1;
        }
    }
    assert!(yes >= 3, "positive cases exercised: {yes}");
}

/// Graded torsion check agrees with the direct image test on randomized
/// tensors over a graded algebra with a grading element.
#[test]
fn graded_torsion_matches_direct_check() {
    let g = families::direct_sum(&families::sl2(), &families::sl2());
    let grading = Grading::new(
        1,
        vec![
            Subspace::span(6, &[basis6(2), basis6(5)]).unwrap(),
            Subspace::span(6, &[basis6(0), basis6(3)]).unwrap(),
            Subspace::span(6, &[basis6(1), basis6(4)]).unwrap(),
        ],
    )
    .unwrap();
    assert!(grading.verify(&g).unwrap().is_empty());
    let p = grading.nonnegative_part();
    let p_idx = vec![0, 1, 3, 4];
    let mut rng = Rng::new(37);
    let mut mixed = 0;
    for _ in 0..150 {
        let torsion_free = rng.chance(1, 2);
        let model = random_curvature_model(&mut rng, &g, &p, &p_idx, torsion_free);
        let report = grading.graded_torsion_check(&model).unwrap();
        assert_eq!(report.torsion_free, model.is_torsion_free());
        if !report.torsion_free {
            mixed += 1;
            assert!(!report.nonzero_negative.is_empty());
        }
    }
    assert!(mixed > 10, "nonzero-component cases exercised: {mixed}");
}

fn basis6(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 6];
    v[i] = rat(1, 1);
    v
}

/// Everything the classifier emits re-passes the independent predicates,
/// evaluated here outside the search module.
#[test]
fn classification_is_sound() {
    let mut rng = Rng::new(43);
    for g in families::library() {
        let choices = coordinate_subalgebras(&g);
        let (p, _) = choices[rng.below(choices.len())].clone();
        let mut cfg = SearchConfig::new(EGenerator::BasisSubsets);
        cfg.max_results = 40;
        let result = classify(&g, &p, &cfg).unwrap();
        assert!(result.summary.families >= 1, "p itself is always emitted");
        let flat = CurvatureModel::flat(g.clone(), p.clone()).unwrap();
        for family in &result.families {
            assert!(g.is_subalgebra(&family.e).unwrap());
            assert!(p.leq(&family.e).unwrap());
            for member in &family.members {
                let pair = IsotropicPair::new(family.e.clone(), member.eps.clone()).unwrap();
                let d = pair.build_l();
                let report = flat.linear_dirac_check(&d).unwrap();
                assert!(report.dirac.is_yes());
                assert!(report.contains_p);
                assert_eq!(member.poisson, d.intersect_algebra().unwrap() == p);
            }
        }
    }
}

/// The admissible-form space is exactly the closed-and-p-annihilating
/// slice of all antisymmetric forms: solver output validates, and random
/// forms outside the span violate one of the two conditions.
#[test]
fn epsilon_space_is_exact() {
    let mut rng = Rng::new(47);
    for g in families::library() {
        let choices = coordinate_subalgebras(&g);
        let (p, _) = choices[rng.below(choices.len())].clone();
        let e = random_subalgebra_over(&mut rng, &g, &p);
        let basis = epsilon_space(&g, &e, &p).unwrap();
        let k = e.dim();
        for eps in &basis {
            let pair = IsotropicPair::new(e.clone(), eps.clone()).unwrap();
            assert!(pair.check_integrable(&g).unwrap().is_yes());
            assert!(pair.contains_p(&p).unwrap().is_yes());
        }
        // A random antisymmetric form either lies in the span or fails
        // one of the defining conditions.
        let random_eps: Matrix<Rational> = random_antisymmetric(&mut rng, k);
        let pair = IsotropicPair::new(e.clone(), random_eps.clone()).unwrap();
        let satisfies = pair.check_integrable(&g).unwrap().is_yes()
            && pair.contains_p(&p).unwrap().is_yes();
        let flatten = |m: &Matrix<Rational>| -> Vec<Rational> {
            let mut out = Vec::new();
            for a in 0..k {
                for b in (a + 1)..k {
                    out.push(m[(a, b)].clone());
                }
            }
            out
        };
        let space = Subspace::span(
            k * k.saturating_sub(1) / 2,
            &basis.iter().map(|m| flatten(m)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(satisfies, space.contains(&flatten(&random_eps)).unwrap());
    }
}
