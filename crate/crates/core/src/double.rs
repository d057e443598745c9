//! The double `g ⊕ g*` of a Lie algebra: split pairing, semidirect bracket
//! with `g*` an abelian ideal, Dirac-subalgebra predicates, real index and
//! the construction of the orthogonal complex endomorphism from a zero
//! real-index maximal isotropic.
//!
//! Coordinates on the double concatenate a vector part and a covector part,
//! so a subspace of the double lives in ambient dimension `2n`.

use num_traits::Zero;

use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, GaussianRational, Rational};
use crate::subspace::Subspace;

/// An element `A + ξ` of the double.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DoubleElement<K> {
    pub vec: Vector<K>,
    pub covec: Covector<K>,
}

impl<K: Field> DoubleElement<K> {
    pub fn new(vec: Vector<K>, covec: Covector<K>) -> Self {
        assert_eq!(vec.dim(), covec.dim(), "double element parts");
        Self { vec, covec }
    }

    pub fn from_vector(vec: Vector<K>) -> Self {
        let n = vec.dim();
        Self {
            vec,
            covec: Covector::zero(n),
        }
    }

    pub fn from_covector(covec: Covector<K>) -> Self {
        let n = covec.dim();
        Self {
            vec: Vector::zero(n),
            covec,
        }
    }

    pub fn from_coords(coords: &[K]) -> Self {
        assert!(coords.len() % 2 == 0, "double coordinates have even length");
        let n = coords.len() / 2;
        Self {
            vec: Vector(coords[..n].to_vec()),
            covec: Covector(coords[n..].to_vec()),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn coords(&self) -> Vec<K> {
        let mut out = self.vec.0.clone();
        out.extend(self.covec.0.iter().cloned());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.covec.is_zero()
    }

    pub fn scale(&self, k: &K) -> Self {
        Self {
            vec: self.vec.scale(k),
            covec: self.covec.scale(k),
        }
    }
}

impl<K: Field> std::ops::Add for DoubleElement<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            vec: self.vec + rhs.vec,
            covec: self.covec + rhs.covec,
        }
    }
}

impl<K: Field> std::ops::Sub for DoubleElement<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            vec: self.vec - rhs.vec,
            covec: self.covec - rhs.covec,
        }
    }
}

impl<K: Field> std::ops::Neg for DoubleElement<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            vec: -self.vec,
            covec: -self.covec,
        }
    }
}

/// The split pairing `⟨A+ξ, B+η⟩ = η(A) + ξ(B)`; symmetric, bilinear and
/// of signature (n, n) on the real double.
pub fn pairing<K: Field>(x: &DoubleElement<K>, y: &DoubleElement<K>) -> Result<K> {
    if x.algebra_dim() != y.algebra_dim() {
        return Err(Error::DimensionMismatch {
            context: "pairing",
            expected: x.algebra_dim(),
            got: y.algebra_dim(),
        });
    }
    Ok(y.covec.eval(&x.vec)? + x.covec.eval(&y.vec)?)
}

impl<K: Field> LieAlgebra<K> {
    /// The semidirect bracket `[A+ξ, B+η] = [A,B] + ad*_A η − ad*_B ξ`,
    /// making `g*` an abelian ideal of the double.
    pub fn semidirect_bracket(
        &self,
        x: &DoubleElement<K>,
        y: &DoubleElement<K>,
    ) -> Result<DoubleElement<K>> {
        self.check_dim(x.algebra_dim(), "semidirect bracket")?;
        self.check_dim(y.algebra_dim(), "semidirect bracket")?;
        let vec = self.bracket(&x.vec, &y.vec)?;
        let covec = self.coadjoint(&x.vec, &y.covec)? - self.coadjoint(&y.vec, &x.covec)?;
        Ok(DoubleElement { vec, covec })
    }
}

/// Outcome of the Dirac-subalgebra test. `Yes` is the only passing value;
/// failures carry a witness over the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiracVerdict<K: Field> {
    Yes,
    NotIsotropic {
        i: usize,
        j: usize,
        value: K,
    },
    NotMaximal {
        dim: usize,
        expected: usize,
    },
    /// Bracket of canonical basis rows `i` and `j` escapes; the escaping
    /// value is the bracket itself.
    NotClosed {
        i: usize,
        j: usize,
        escape: DoubleElement<K>,
    },
}

impl<K: Field> DiracVerdict<K> {
    pub fn is_yes(&self) -> bool {
        matches!(self, DiracVerdict::Yes)
    }
}

/// A subspace of the double, with coordinates `1..n` the vector part and
/// `n+1..2n` the covector part. Canonical representation is inherited
/// from [`Subspace`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DoubleSubspace<K: Field> {
    sub: Subspace<K>,
}

impl<K: Field> DoubleSubspace<K> {
    pub fn from_subspace(sub: Subspace<K>) -> Result<Self> {
        if sub.ambient_dim() % 2 != 0 {
            return Err(Error::DimensionMismatch {
                context: "double subspace ambient",
                expected: sub.ambient_dim() + 1,
                got: sub.ambient_dim(),
            });
        }
        Ok(Self { sub })
    }

    pub fn span(n: usize, elements: &[DoubleElement<K>]) -> Result<Self> {
        let rows: Vec<Vec<K>> = elements.iter().map(DoubleElement::coords).collect();
        Ok(Self {
            sub: Subspace::span(2 * n, &rows)?,
        })
    }

    /// The algebra embedded as `{A + 0}`; maximal isotropic.
    pub fn embedded_algebra(n: usize) -> Self {
        Self::embed_vectors(&Subspace::full(n))
    }

    /// The dual embedded as `{0 + ξ}`; a maximal isotropic abelian ideal.
    pub fn embedded_dual(n: usize) -> Self {
        let rows: Vec<Vec<K>> = (0..n)
            .map(|i| {
                let mut v = vec![K::zero(); 2 * n];
                v[n + i] = K::one();
                v
            })
            .collect();
        Self {
            sub: Subspace::span(2 * n, &rows).expect("coordinate rows"),
        }
    }

    /// Embeds a subspace of the algebra with zero covector part.
    pub fn embed_vectors(s: &Subspace<K>) -> Self {
        let n = s.ambient_dim();
        let rows: Vec<Vec<K>> = s
            .basis_rows()
            .into_iter()
            .map(|mut r| {
                r.extend(std::iter::repeat_n(K::zero(), n));
                r
            })
            .collect();
        Self {
            sub: Subspace::span(2 * n, &rows).expect("extended rows keep rank"),
        }
    }

    pub fn algebra_dim(&self) -> usize {
        self.sub.ambient_dim() / 2
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn subspace(&self) -> &Subspace<K> {
        &self.sub
    }

    pub fn basis_elements(&self) -> Vec<DoubleElement<K>> {
        self.sub
            .basis_rows()
            .iter()
            .map(|r| DoubleElement::from_coords(r))
            .collect()
    }

    pub fn contains(&self, x: &DoubleElement<K>) -> Result<bool> {
        self.sub.contains(&x.coords())
    }

    pub fn conjugate(&self) -> Self {
        Self {
            sub: self.sub.conjugate(),
        }
    }

    /// Projection to the algebra: the span of the vector parts, in
    /// `n`-dimensional coordinates.
    pub fn project_to_algebra(&self) -> Subspace<K> {
        let n = self.algebra_dim();
        let rows: Vec<Vec<K>> = self
            .sub
            .basis_rows()
            .iter()
            .map(|r| r[..n].to_vec())
            .collect();
        Subspace::span(n, &rows).expect("projection stays in ambient n")
    }

    /// Intersection with the embedded algebra, reported in `n`-dimensional
    /// coordinates.
    pub fn intersect_algebra(&self) -> Result<Subspace<K>> {
        let n = self.algebra_dim();
        let embedded = Self::embedded_algebra(n);
        let meet = self.sub.intersect(&embedded.sub)?;
        let rows: Vec<Vec<K>> = meet.basis_rows().iter().map(|r| r[..n].to_vec()).collect();
        Subspace::span(n, &rows)
    }

    /// First canonical basis pair on which the pairing is nonzero.
    pub fn isotropy_witness(&self) -> Result<Option<(usize, usize, K)>> {
        let basis = self.basis_elements();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                let value = pairing(&basis[i], &basis[j])?;
                if !value.is_zero() {
                    return Ok(Some((i, j, value)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_isotropic(&self) -> bool {
        self.isotropy_witness()
            .expect("basis elements share the ambient dimension")
            .is_none()
    }

    /// Maximality for the split pairing is exactly half dimension: an
    /// isotropic subspace of a signature (n, n) form has dimension at most
    /// n, so dimension n leaves no room for an isotropic extension.
    pub fn is_maximal_isotropic(&self) -> bool {
        self.is_isotropic() && self.dim() == self.algebra_dim()
    }

    /// Dirac test: maximal isotropic and closed under the semidirect
    /// bracket on canonical basis pairs (bilinearity makes pairs suffice).
    pub fn is_dirac_subalgebra(&self, algebra: &LieAlgebra<K>) -> Result<DiracVerdict<K>> {
        algebra.check_dim(self.algebra_dim(), "Dirac test")?;
        if let Some((i, j, value)) = self.isotropy_witness()? {
            return Ok(DiracVerdict::NotIsotropic { i, j, value });
        }
        if self.dim() != self.algebra_dim() {
            return Ok(DiracVerdict::NotMaximal {
                dim: self.dim(),
                expected: self.algebra_dim(),
            });
        }
        let basis = self.basis_elements();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                let br = algebra.semidirect_bracket(&basis[i], &basis[j])?;
                if !self.contains(&br)? {
                    return Ok(DiracVerdict::NotClosed { i, j, escape: br });
                }
            }
        }
        Ok(DiracVerdict::Yes)
    }

    /// `dim(D ∩ D̄)` for a maximal isotropic `D`. Over ℚ the conjugate is
    /// `D` itself and the index is `n`.
    pub fn real_index(&self) -> Result<usize> {
        if !self.is_maximal_isotropic() {
            return Err(Error::NotMaximalIsotropic);
        }
        Ok(self.sub.intersect(&self.conjugate().sub)?.dim())
    }
}

impl DoubleSubspace<GaussianRational> {
    /// The unique real endomorphism acting as `+i` on `D` and `−i` on `D̄`,
    /// for a maximal isotropic `D` with `D ∩ D̄ = 0`. The output satisfies
    /// `J² = −I` and preserves the split pairing; both identities are
    /// checked exactly before returning.
    pub fn construct_j(&self) -> Result<Matrix<Rational>> {
        if !self.is_maximal_isotropic() {
            return Err(Error::NotMaximalIsotropic);
        }
        let index = self.real_index()?;
        if index != 0 {
            return Err(Error::NonzeroRealIndex { index });
        }
        let two_n = 2 * self.algebra_dim();
        let n = self.algebra_dim();

        // Columns of `a` are the D basis followed by the D̄ basis; the
        // direct sum makes it invertible.
        let d_basis = self.sub.basis();
        let a = Matrix::from_fn(two_n, two_n, |r, c| {
            if c < n {
                d_basis[(c, r)].clone()
            } else {
                d_basis[(c - n, r)].conjugate()
            }
        });
        let a_inv = a
            .inverse()
            .expect("D and conj(D) span the double when the real index is zero");
        let i = GaussianRational::i();
        let eigen = Matrix::from_fn(two_n, two_n, |r, c| {
            if r != c {
                GaussianRational::zero()
            } else if r < n {
                i.clone()
            } else {
                -i.clone()
            }
        });
        let j_complex = a.mul(&eigen).mul(&a_inv);

        let mut j = Matrix::zeros(two_n, two_n);
        for r in 0..two_n {
            for c in 0..two_n {
                match j_complex[(r, c)].to_rational() {
                    Some(x) => j[(r, c)] = x,
                    None => return Err(Error::NonRealOutput),
                }
            }
        }

        // Exact postconditions: J² = −I and Jᵀ P J = P for the split
        // pairing Gram matrix P.
        assert_eq!(
            j.mul(&j),
            Matrix::<Rational>::identity(two_n).neg(),
            "J must square to -I"
        );
        let p = split_pairing_gram::<Rational>(n);
        assert_eq!(
            j.transpose().mul(&p).mul(&j),
            p,
            "J must preserve the split pairing"
        );
        Ok(j)
    }
}

/// Gram matrix of the split pairing in double coordinates:
/// `[[0, I], [I, 0]]`.
pub fn split_pairing_gram<K: Field>(n: usize) -> Matrix<K> {
    Matrix::from_fn(2 * n, 2 * n, |r, c| {
        if r + n == c || c + n == r {
            K::one()
        } else {
            K::zero()
        }
    })
}
