//! Subspaces of a fixed coordinate space, stored as a reduced row-echelon
//! basis with no zero rows. The representation is canonical: two subspaces
//! are equal exactly when their basis matrices are identical, which makes
//! equality tests and report output deterministic.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<K: Field> {
    ambient: usize,
    basis: Matrix<K>,
}

impl<K: Field> Subspace<K> {
    /// The span of the given coordinate vectors, in canonical form.
    pub fn span(ambient: usize, vectors: &[Vec<K>]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    context: "span vector",
                    expected: ambient,
                    got: v.len(),
                });
            }
        }
        let mut m = Matrix::from_rows(vectors.to_vec())?;
        let pivots = m.rref_in_place();
        let basis = Matrix::from_fn(pivots.len(), ambient, |r, c| m[(r, c)].clone());
        Ok(Self { ambient, basis })
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix<K> {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<K>> {
        self.basis.row_vecs()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Remainder of `v` after eliminating along the echelon basis; zero
    /// exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[K]) -> Result<Vec<K>> {
        self.check_ambient(v.len())?;
        let mut rem = v.to_vec();
        for r in 0..self.dim() {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|x| !x.is_zero())
                .expect("no zero rows in a canonical basis");
            if !rem[pivot].is_zero() {
                let factor = rem[pivot].clone();
                for c in 0..self.ambient {
                    rem[c] = rem[c].clone() - factor.clone() * self.basis[(r, c)].clone();
                }
            }
        }
        Ok(rem)
    }

    pub fn contains(&self, v: &[K]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Coefficients of `v` over the canonical basis, or `None` if `v` is
    /// outside the subspace. Reads pivot coordinates, then verifies.
    pub fn coordinates_of(&self, v: &[K]) -> Result<Option<Vec<K>>> {
        self.check_ambient(v.len())?;
        let mut coords = Vec::with_capacity(self.dim());
        let mut rebuilt = vec![K::zero(); self.ambient];
        for r in 0..self.dim() {
            let pivot = self
                .basis
                .row(r)
                .iter()
                .position(|x| !x.is_zero())
                .expect("no zero rows in a canonical basis");
            let c = v[pivot].clone();
            for j in 0..self.ambient {
                rebuilt[j] = rebuilt[j].clone() + c.clone() * self.basis[(r, j)].clone();
            }
            coords.push(c);
        }
        if rebuilt.iter().zip(v).all(|(a, b)| a == b) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other.ambient)?;
        for row in self.basis_rows() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Self::span(self.ambient, &rows)
    }

    /// Exact intersection via the kernel of the stacked-basis system:
    /// a vector lies in both spans exactly when some coefficient pair
    /// `(a, b)` satisfies `aᵀS − bᵀT = 0`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other.ambient)?;
        let r = self.dim();
        let s = other.dim();
        if r == 0 || s == 0 {
            return Ok(Self::zero(self.ambient));
        }
        let stacked = Matrix::from_fn(self.ambient, r + s, |row, col| {
            if col < r {
                self.basis[(col, row)].clone()
            } else {
                -other.basis[(col - r, row)].clone()
            }
        });
        let coeffs = stacked.kernel();
        let vectors: Vec<Vec<K>> = coeffs
            .iter()
            .map(|ab| {
                (0..self.ambient)
                    .map(|j| {
                        let mut acc = K::zero();
                        for i in 0..r {
                            acc = acc + ab[i].clone() * self.basis[(i, j)].clone();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self::span(self.ambient, &vectors)
    }

    /// Entrywise conjugation followed by re-canonicalisation.
    pub fn conjugate(&self) -> Self {
        Self::span(
            self.ambient,
            &self.basis.conjugate().row_vecs(),
        )
        .expect("conjugation preserves ambient dimension")
    }

    /// The annihilator `{ξ : ξ(v) = 0 for all v here}` in dual coordinates:
    /// the kernel of the basis matrix.
    pub fn annihilator(&self) -> Self {
        Self::span(self.ambient, &self.basis.kernel())
            .expect("kernel vectors live in the same ambient space")
    }

    /// Image of the subspace under an invertible-or-not linear map given by
    /// `m` acting on coordinate columns.
    pub fn apply(&self, m: &Matrix<K>) -> Result<Self> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                context: "linear map applied to subspace",
                expected: self.ambient,
                got: m.cols(),
            });
        }
        let rows: Vec<Vec<K>> = self.basis_rows().iter().map(|v| m.mul_vec(v)).collect();
        Self::span(m.rows(), &rows)
    }

    fn check_ambient(&self, got: usize) -> Result<()> {
        if got != self.ambient {
            return Err(Error::DimensionMismatch {
                context: "subspace ambient dimension",
                expected: self.ambient,
                got,
            });
        }
        Ok(())
    }
}
