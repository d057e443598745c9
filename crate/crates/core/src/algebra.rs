//! Finite-dimensional Lie algebras over an exact field, presented by a
//! structure-constant tensor in a fixed basis. This module is the single
//! source of bracket truth; everything downstream (the double, curvature
//! predicates, gradings, enumeration) evaluates brackets through it.

use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, GaussianRational, Rational};
use crate::subspace::Subspace;

/// Coordinate column over the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Vector<K>(pub Vec<K>);

/// Coordinate column over the dual basis, paired with vectors by
/// `bᵢ*(bⱼ) = δᵢⱼ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Covector<K>(pub Vec<K>);

impl<K: Field> Vector<K> {
    pub fn zero(n: usize) -> Self {
        Self(vec![K::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![K::zero(); n];
        v[i] = K::one();
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &K) -> Self {
        Self(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }
}

impl<K: Field> Covector<K> {
    pub fn zero(n: usize) -> Self {
        Self(vec![K::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![K::zero(); n];
        v[i] = K::one();
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &K) -> Self {
        Self(self.0.iter().map(|x| x.clone() * k.clone()).collect())
    }

    /// Dual pairing `ξ(v) = Σ ξᵢ vᵢ`.
    pub fn eval(&self, v: &Vector<K>) -> Result<K> {
        if self.dim() != v.dim() {
            return Err(Error::DimensionMismatch {
                context: "covector evaluation",
                expected: self.dim(),
                got: v.dim(),
            });
        }
        let mut acc = K::zero();
        for (a, b) in self.0.iter().zip(&v.0) {
            acc = acc + a.clone() * b.clone();
        }
        Ok(acc)
    }
}

macro_rules! coordinate_ops {
    ($ty:ident) => {
        impl<K: Field> Add for $ty<K> {
            type Output = $ty<K>;
            fn add(self, rhs: $ty<K>) -> $ty<K> {
                assert_eq!(self.0.len(), rhs.0.len());
                $ty(self
                    .0
                    .into_iter()
                    .zip(rhs.0)
                    .map(|(a, b)| a + b)
                    .collect())
            }
        }
        impl<K: Field> Sub for $ty<K> {
            type Output = $ty<K>;
            fn sub(self, rhs: $ty<K>) -> $ty<K> {
                assert_eq!(self.0.len(), rhs.0.len());
                $ty(self
                    .0
                    .into_iter()
                    .zip(rhs.0)
                    .map(|(a, b)| a - b)
                    .collect())
            }
        }
        impl<K: Field> Neg for $ty<K> {
            type Output = $ty<K>;
            fn neg(self) -> $ty<K> {
                $ty(self.0.into_iter().map(|a| -a).collect())
            }
        }
    };
}

coordinate_ops!(Vector);
coordinate_ops!(Covector);

/// A violating Jacobi triple together with its nonzero defect
/// `[[bᵢ,bⱼ],bₖ] + [[bⱼ,bₖ],bᵢ] + [[bₖ,bᵢ],bⱼ]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiViolation<K> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector<K>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra<K: Field> {
    dim: usize,
    /// `structure[i][j][k]` is the coefficient of `bₖ` in `[bᵢ, bⱼ]`.
    structure: Vec<Vec<Vec<K>>>,
    basis_names: Option<Vec<String>>,
}

impl<K: Field> LieAlgebra<K> {
    /// Builds an algebra from its full structure tensor, rejecting shape
    /// errors and antisymmetry violations. The Jacobi identity is not
    /// enforced here; it is testable through [`LieAlgebra::jacobi_check`].
    pub fn new(
        dim: usize,
        structure: Vec<Vec<Vec<K>>>,
        basis_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let shape_err = |got| Error::DimensionMismatch {
            context: "structure tensor",
            expected: dim,
            got,
        };
        if structure.len() != dim {
            return Err(shape_err(structure.len()));
        }
        for plane in &structure {
            if plane.len() != dim {
                return Err(shape_err(plane.len()));
            }
            for fiber in plane {
                if fiber.len() != dim {
                    return Err(shape_err(fiber.len()));
                }
            }
        }
        if let Some(names) = &basis_names {
            if names.len() != dim {
                return Err(shape_err(names.len()));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    let sum = structure[i][j][k].clone() + structure[j][i][k].clone();
                    if !sum.is_zero() {
                        return Err(Error::AntisymmetryViolation { i, j });
                    }
                }
            }
        }
        Ok(Self {
            dim,
            structure,
            basis_names,
        })
    }

    /// Builds an algebra from the brackets `[bᵢ, bⱼ]` with `i < j`; the
    /// mirrored entries are filled in by antisymmetry and unlisted pairs
    /// are zero. Indices are zero-based.
    pub fn from_brackets(
        dim: usize,
        brackets: &[(usize, usize, Vec<K>)],
        basis_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut structure = vec![vec![vec![K::zero(); dim]; dim]; dim];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim || coeffs.len() != dim {
                return Err(Error::DimensionMismatch {
                    context: "bracket entry",
                    expected: dim,
                    got: coeffs.len().max(i + 1).max(j + 1),
                });
            }
            if i == j {
                if coeffs.iter().any(|c| !c.is_zero()) {
                    return Err(Error::AntisymmetryViolation { i, j });
                }
                continue;
            }
            structure[i][j] = coeffs.clone();
            structure[j][i] = coeffs.iter().map(|c| -c.clone()).collect();
        }
        Self::new(dim, structure, basis_names)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(dim, &[], None).expect("empty bracket list is antisymmetric")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &Vec<Vec<Vec<K>>> {
        &self.structure
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.basis_names {
            Some(names) => names[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Vector<K> {
        Vector::basis(self.dim, i)
    }

    pub fn check_dim(&self, got: usize, context: &'static str) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    /// The bilinear antisymmetric extension of the structure tensor.
    pub fn bracket(&self, a: &Vector<K>, b: &Vector<K>) -> Result<Vector<K>> {
        self.check_dim(a.dim(), "bracket argument")?;
        self.check_dim(b.dim(), "bracket argument")?;
        let mut out = vec![K::zero(); self.dim];
        for i in 0..self.dim {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b.0[j].is_zero() {
                    continue;
                }
                let factor = a.0[i].clone() * b.0[j].clone();
                for k in 0..self.dim {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].clone() + factor.clone() * c.clone();
                    }
                }
            }
        }
        Ok(Vector(out))
    }

    /// Matrix of `ad(a) = [a, ·]` in the algebra basis; column `j` holds
    /// the coordinates of `[a, bⱼ]`.
    pub fn ad_matrix(&self, a: &Vector<K>) -> Result<Matrix<K>> {
        self.check_dim(a.dim(), "ad argument")?;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.bracket(a, &self.basis_vector(j))?;
            for k in 0..self.dim {
                m[(k, j)] = col.0[k].clone();
            }
        }
        Ok(m)
    }

    /// Coadjoint action, with the sign `(ad*_a ξ)(c) = −ξ([a, c])`. In dual
    /// coordinates this is `−ad(a)ᵀ` applied to `ξ`.
    pub fn coadjoint(&self, a: &Vector<K>, xi: &Covector<K>) -> Result<Covector<K>> {
        self.check_dim(a.dim(), "coadjoint argument")?;
        self.check_dim(xi.dim(), "coadjoint argument")?;
        let mut out = vec![K::zero(); self.dim];
        for (j, slot) in out.iter_mut().enumerate() {
            let bracket = self.bracket(a, &self.basis_vector(j))?;
            *slot = -xi.eval(&bracket)?;
        }
        Ok(Covector(out))
    }

    /// The Killing form `B[i][j] = trace(ad(bᵢ) ∘ ad(bⱼ))`; symmetric.
    pub fn killing_form(&self) -> Matrix<K> {
        let n = self.dim;
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut trace = K::zero();
                // trace(ad(bᵢ) ad(bⱼ)) = Σ_{k,l} c[j][k][l] c[i][l][k]
                for k in 0..n {
                    for l in 0..n {
                        trace = trace
                            + self.structure[j][k][l].clone() * self.structure[i][l][k].clone();
                    }
                }
                b[(i, j)] = trace.clone();
                b[(j, i)] = trace;
            }
        }
        b
    }

    /// Verifies the Jacobi identity on all basis triples `i < j < k`.
    /// Returns the violating triples (empty means the identity holds);
    /// a non-antisymmetric tensor is rejected first as its own error.
    pub fn jacobi_check(&self) -> Result<Vec<JacobiViolation<K>>> {
        for i in 0..self.dim {
            for j in i..self.dim {
                for k in 0..self.dim {
                    let sum = self.structure[i][j][k].clone() + self.structure[j][i][k].clone();
                    if !sum.is_zero() {
                        return Err(Error::AntisymmetryViolation { i, j });
                    }
                }
            }
        }
        let mut violations = Vec::new();
        for i in 0..self.dim {
            let bi = self.basis_vector(i);
            for j in (i + 1)..self.dim {
                let bj = self.basis_vector(j);
                for k in (j + 1)..self.dim {
                    let bk = self.basis_vector(k);
                    let defect = self.bracket(&self.bracket(&bi, &bj)?, &bk)?
                        + self.bracket(&self.bracket(&bj, &bk)?, &bi)?
                        + self.bracket(&self.bracket(&bk, &bi)?, &bj)?;
                    if !defect.is_zero() {
                        violations.push(JacobiViolation { i, j, k, defect });
                    }
                }
            }
        }
        Ok(violations)
    }

    /// True when the bracket of every basis pair of `s` stays in `s`;
    /// bilinearity makes basis pairs sufficient.
    pub fn is_subalgebra(&self, s: &Subspace<K>) -> Result<bool> {
        self.check_dim(s.ambient_dim(), "subalgebra candidate")?;
        Ok(self.subalgebra_escape(s)?.is_none())
    }

    /// First basis pair of `s` whose bracket leaves `s`, with the bracket
    /// value; `None` when `s` is a subalgebra.
    pub fn subalgebra_escape(
        &self,
        s: &Subspace<K>,
    ) -> Result<Option<(usize, usize, Vector<K>)>> {
        self.check_dim(s.ambient_dim(), "subalgebra candidate")?;
        let rows = s.basis_rows();
        for i in 0..rows.len() {
            for j in (i + 1)..rows.len() {
                let br = self.bracket(&Vector(rows[i].clone()), &Vector(rows[j].clone()))?;
                if !s.contains(&br.0)? {
                    return Ok(Some((i, j, br)));
                }
            }
        }
        Ok(None)
    }
}

impl LieAlgebra<Rational> {
    /// Scalar extension from ℚ to ℚ(i): same dimension and structure
    /// tensor, field promoted.
    pub fn complexify(&self) -> LieAlgebra<GaussianRational> {
        LieAlgebra {
            dim: self.dim,
            structure: self
                .structure
                .iter()
                .map(|plane| {
                    plane
                        .iter()
                        .map(|fiber| {
                            fiber
                                .iter()
                                .map(|c| GaussianRational::from_real(c.clone()))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            basis_names: self.basis_names.clone(),
        }
    }
}

/// Scalar extension of a rational subspace to ℚ(i).
pub fn complexify_subspace(s: &Subspace<Rational>) -> Subspace<GaussianRational> {
    let rows: Vec<Vec<GaussianRational>> = s
        .basis_rows()
        .into_iter()
        .map(|r| r.into_iter().map(GaussianRational::from_real).collect())
        .collect();
    Subspace::span(s.ambient_dim(), &rows).expect("same ambient dimension")
}

/// Scalar extension of a rational vector to ℚ(i).
pub fn complexify_vector(v: &Vector<Rational>) -> Vector<GaussianRational> {
    Vector(v.0.iter().cloned().map(GaussianRational::from_real).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::scalar::rat;

    fn qv(coords: &[i64]) -> Vector<Rational> {
        Vector(coords.iter().map(|&x| rat(x, 1)).collect())
    }

    fn qc(coords: &[i64]) -> Covector<Rational> {
        Covector(coords.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn euclidean2_brackets_and_jacobi() {
        let g = families::euclidean2();
        assert!(g.jacobi_check().unwrap().is_empty());
        // [e1, e2] = -e3 and [A, A] = 0.
        assert_eq!(
            g.bracket(&qv(&[1, 0, 0]), &qv(&[0, 1, 0])).unwrap(),
            qv(&[0, 0, -1])
        );
        let a = qv(&[3, -2, 5]);
        assert!(g.bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn abelian_is_a_lie_algebra() {
        assert!(LieAlgebra::<Rational>::abelian(4)
            .jacobi_check()
            .unwrap()
            .is_empty());
    }

    /// Independent oracle for sl2: represent H, X, Y as traceless 2x2
    /// matrices, read structure constants off matrix commutators, and
    /// compare with the tabulated family.
    #[test]
    fn sl2_matches_matrix_commutator_oracle() {
        // A traceless 2x2 matrix [[a, b], [c, -a]] has coordinates
        // (a, b, c) over (H, X, Y).
        type M2 = [[i64; 2]; 2];
        const H: M2 = [[1, 0], [0, -1]];
        const X: M2 = [[0, 1], [0, 0]];
        const Y: M2 = [[0, 0], [1, 0]];
        fn commutator(a: M2, b: M2) -> M2 {
            let mut out = [[0; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
                    }
                }
            }
            out
        }
        fn coords(m: M2) -> Vec<Rational> {
            assert_eq!(m[0][0] + m[1][1], 0, "commutators of sl2 are traceless");
            vec![rat(m[0][0], 1), rat(m[0][1], 1), rat(m[1][0], 1)]
        }
        let basis = [H, X, Y];
        let g = families::sl2();
        for i in 0..3 {
            for j in 0..3 {
                let expected = coords(commutator(basis[i], basis[j]));
                let got = g
                    .bracket(&Vector::basis(3, i), &Vector::basis(3, j))
                    .unwrap();
                assert_eq!(got.0, expected, "bracket ({i}, {j})");
            }
        }
        assert!(g.jacobi_check().unwrap().is_empty());
    }

    #[test]
    fn broken_jacobi_is_reported_with_defect() {
        // [e1,e2] = e3, [e1,e3] = e1: Jacobi fails on (1,2,3).
        let g = LieAlgebra::from_brackets(
            3,
            &[
                (0, 1, vec![rat(0, 1), rat(0, 1), rat(1, 1)]),
                (0, 2, vec![rat(1, 1), rat(0, 1), rat(0, 1)]),
            ],
            None,
        )
        .unwrap();
        let violations = g.jacobi_check().unwrap();
        assert_eq!(violations.len(), 1);
        assert_eq!(
            (violations[0].i, violations[0].j, violations[0].k),
            (0, 1, 2)
        );
        assert!(!violations[0].defect.is_zero());
    }

    #[test]
    fn antisymmetry_violation_is_its_own_error() {
        let mut structure = vec![vec![vec![Rational::zero(); 2]; 2]; 2];
        structure[0][1][0] = rat(1, 1);
        structure[1][0][0] = rat(1, 1);
        assert_eq!(
            LieAlgebra::new(2, structure, None).unwrap_err(),
            Error::AntisymmetryViolation { i: 0, j: 1 }
        );
    }

    /// Coadjoint oracle: evaluate −ξ([a, c]) on every basis vector c and
    /// compare coordinatewise with the implementation.
    #[test]
    fn coadjoint_against_direct_evaluation() {
        let g = families::euclidean2();
        let cases = [
            (qv(&[1, 0, 0]), qc(&[0, 1, 0]), qc(&[0, 0, -1])), // ad*_{e1} e2* = -e3*
            (qv(&[1, 0, 0]), qc(&[0, 0, -1]), qc(&[0, -1, 0])), // ad*_{e1}(-e3*) = -e2*
        ];
        for (a, xi, expected) in cases {
            let got = g.coadjoint(&a, &xi).unwrap();
            assert_eq!(got, expected);
            for c in 0..3 {
                let oracle = -xi.eval(&g.bracket(&a, &Vector::basis(3, c)).unwrap()).unwrap();
                assert_eq!(got.0[c], oracle);
            }
        }
        // Linearity endpoint: ad*_a 0 = 0.
        assert!(g
            .coadjoint(&qv(&[2, 3, -1]), &Covector::zero(3))
            .unwrap()
            .is_zero());
    }

    /// Killing-form oracle: assemble ad matrices column by column from
    /// bracket calls, multiply and trace by hand.
    #[test]
    fn killing_form_against_trace_oracle() {
        for g in [families::sl2(), families::euclidean2()] {
            let n = g.dim();
            let b = g.killing_form();
            for i in 0..n {
                for j in 0..n {
                    let ad_i = g.ad_matrix(&Vector::basis(n, i)).unwrap();
                    let ad_j = g.ad_matrix(&Vector::basis(n, j)).unwrap();
                    let prod = ad_i.mul(&ad_j);
                    let mut trace = Rational::zero();
                    for k in 0..n {
                        trace = trace + prod[(k, k)].clone();
                    }
                    assert_eq!(b[(i, j)], trace);
                }
            }
        }

        let sl2 = families::sl2().killing_form();
        assert_eq!(sl2[(0, 0)], rat(8, 1));
        assert_eq!(sl2[(1, 2)], rat(4, 1));
        assert_eq!(sl2[(0, 1)], Rational::zero());
        assert_eq!(sl2[(0, 2)], Rational::zero());

        let euc = families::euclidean2().killing_form();
        assert_eq!(euc[(0, 0)], rat(-2, 1));
        for i in 1..3 {
            for j in 1..3 {
                assert!(euc[(i, j)].is_zero());
            }
        }

        assert!(LieAlgebra::<Rational>::abelian(3).killing_form().is_zero());
    }

    #[test]
    fn complexify_commutes_with_invariants() {
        let g = families::euclidean2();
        let gc = g.complexify();
        assert_eq!(gc.dim(), 3);
        assert!(gc.jacobi_check().unwrap().is_empty());
        let bc = gc.killing_form();
        let b = g.killing_form();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(bc[(i, j)], GaussianRational::from_real(b[(i, j)].clone()));
            }
        }
        // Brackets are unchanged under scalar extension.
        assert_eq!(
            gc.bracket(
                &Vector::basis(3, 0),
                &Vector::basis(3, 1)
            )
            .unwrap()
            .0[2],
            GaussianRational::from_real(rat(-1, 1))
        );
    }

    #[test]
    fn subalgebra_checks_on_euclidean2() {
        let g = families::euclidean2();
        let span = |rows: &[&[i64]]| {
            Subspace::span(
                3,
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            )
            .unwrap()
        };
        assert!(g.is_subalgebra(&span(&[&[1, 0, 0]])).unwrap());
        assert!(g.is_subalgebra(&Subspace::zero(3)).unwrap());
        assert!(g.is_subalgebra(&Subspace::full(3)).unwrap());
        assert!(g.is_subalgebra(&span(&[&[0, 1, 0], &[0, 0, 1]])).unwrap());
        assert!(!g.is_subalgebra(&span(&[&[1, 0, 0], &[0, 1, 0]])).unwrap());
        let (i, j, escape) = g
            .subalgebra_escape(&span(&[&[1, 0, 0], &[0, 1, 0]]))
            .unwrap()
            .unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(escape, qv(&[0, 0, -1]));
    }

    #[test]
    fn sl2_span_xy_is_not_a_subalgebra() {
        let g = families::sl2();
        let e = Subspace::span(3, &[qv(&[0, 1, 0]).0, qv(&[0, 0, 1]).0]).unwrap();
        assert!(!g.is_subalgebra(&e).unwrap());
    }
}
