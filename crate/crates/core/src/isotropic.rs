//! The (E, ε) parametrization of maximal isotropic subspaces of the double:
//! every maximal isotropic is `L(E, ε) = {X + ξ : X ∈ E, ξ|_E = ι_X ε}` for
//! a subspace `E ⊆ g` and an alternating 2-form `ε` on `E`.
//!
//! The form is stored only on `E` (a k×k antisymmetric matrix over the
//! canonical basis of `E`); extending it to all of `g` would be a
//! non-canonical choice and none of the integrability conditions need it.


use crate::algebra::{Covector, LieAlgebra, Vector};
use crate::double::{DoubleElement, DoubleSubspace};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::subspace::Subspace;

/// A subspace `E` of the algebra together with an alternating 2-form on it.
/// The stored basis of `E` is canonical, which makes the matrix of `ε`
/// unique and pair equality structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsotropicPair<K: Field> {
    e: Subspace<K>,
    eps: Matrix<K>,
}

/// Value table of an alternating 3-form over the canonical basis of `E`,
/// indexed by triples `a < b < c` in lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlternatingThreeForm<K> {
    dim: usize,
    entries: Vec<((usize, usize, usize), K)>,
}

impl<K: Field> AlternatingThreeForm<K> {
    /// Dimension of the space the form lives on.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<&((usize, usize, usize), K)> {
        self.entries.iter().find(|(_, v)| !v.is_zero())
    }

    pub fn entries(&self) -> &[((usize, usize, usize), K)] {
        &self.entries
    }
}

/// Outcome of the `L(E, ε)` integrability test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrabilityVerdict<K: Field> {
    Yes,
    NotSubalgebra {
        i: usize,
        j: usize,
        escape: Vector<K>,
    },
    NonzeroDifferential {
        triple: (usize, usize, usize),
        value: K,
    },
}

impl<K: Field> IntegrabilityVerdict<K> {
    pub fn is_yes(&self) -> bool {
        matches!(self, IntegrabilityVerdict::Yes)
    }
}

/// Outcome of the `p ⊆ L(E, ε)` membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContainsPVerdict<K: Field> {
    Yes,
    /// A basis vector of `p` outside `E`; containment in `E` is forced by
    /// the membership condition `X ∈ E`.
    PNotInE { witness: Vector<K> },
    /// A basis vector of `p` on which `ε♯` does not vanish; the covector
    /// holds the values of `ι_X ε` on the basis of `E`.
    EpsSharpNonzero {
        witness: Vector<K>,
        values: Covector<K>,
    },
}

impl<K: Field> ContainsPVerdict<K> {
    pub fn is_yes(&self) -> bool {
        matches!(self, ContainsPVerdict::Yes)
    }
}

impl<K: Field> IsotropicPair<K> {
    /// Builds a pair after checking that `eps` is a k×k antisymmetric
    /// matrix for `k = dim E`.
    pub fn new(e: Subspace<K>, eps: Matrix<K>) -> Result<Self> {
        let k = e.dim();
        if eps.rows() != k || eps.cols() != k {
            return Err(Error::DimensionMismatch {
                context: "form on E",
                expected: k,
                got: eps.rows().max(eps.cols()),
            });
        }
        for i in 0..k {
            for j in i..k {
                let sum = eps[(i, j)].clone() + eps[(j, i)].clone();
                if !sum.is_zero() {
                    return Err(Error::FormNotAntisymmetric { i, j });
                }
            }
        }
        Ok(Self { e, eps })
    }

    pub fn zero_form(e: Subspace<K>) -> Self {
        let k = e.dim();
        Self {
            e,
            eps: Matrix::zeros(k, k),
        }
    }

    pub fn e(&self) -> &Subspace<K> {
        &self.e
    }

    pub fn eps(&self) -> &Matrix<K> {
        &self.eps
    }

    pub fn ambient_dim(&self) -> usize {
        self.e.ambient_dim()
    }

    /// Replaces the form by `k · ε`, staying on the same `E`.
    pub fn scale_form(&self, k: &K) -> Self {
        Self {
            e: self.e.clone(),
            eps: self.eps.scale(k),
        }
    }

    /// `ι_X ε` as a value table over the canonical basis of `E`, for `X`
    /// given in `E`-coordinates.
    fn contraction(&self, e_coords: &[K]) -> Covector<K> {
        let k = self.e.dim();
        let mut out = vec![K::zero(); k];
        for (b, slot) in out.iter_mut().enumerate() {
            let mut acc = K::zero();
            for a in 0..k {
                acc = acc + e_coords[a].clone() * self.eps[(a, b)].clone();
            }
            *slot = acc;
        }
        Covector(out)
    }

    /// The maximal isotropic `L(E, ε)`, spanned by `{u + ε̂(u)}` over the
    /// basis of `E` together with the annihilator of `E`. Here `ε̂(u)`
    /// extends `ι_u ε` by zero on the non-pivot coordinates, which is
    /// enough because members are only constrained on `E`. The result has
    /// dimension `dim E + (n − dim E) = n` and is always maximal isotropic.
    pub fn build_l(&self) -> DoubleSubspace<K> {
        let n = self.ambient_dim();
        let k = self.e.dim();
        let basis_rows = self.e.basis_rows();
        let mut elements = Vec::with_capacity(n);
        for a in 0..k {
            let mut unit = vec![K::zero(); k];
            unit[a] = K::one();
            let values = self.contraction(&unit);
            // Covector with prescribed values on the pivot columns of the
            // echelon basis and zero elsewhere: evaluating it against basis
            // row b picks out exactly values[b].
            let mut covec = vec![K::zero(); n];
            for (b, row) in basis_rows.iter().enumerate() {
                let pivot = row
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("canonical basis has no zero rows");
                covec[pivot] = values.0[b].clone();
            }
            elements.push(DoubleElement::new(
                Vector(basis_rows[a].clone()),
                Covector(covec),
            ));
        }
        for ann in self.e.annihilator().basis_rows() {
            elements.push(DoubleElement::from_covector(Covector(ann)));
        }
        let l = DoubleSubspace::span(n, &elements).expect("rows share ambient dimension");
        debug_assert!(l.is_maximal_isotropic());
        l
    }

    /// The differential `d_E ε(X,Y,Z) = ε(X,[Y,Z]) − ε(Y,[X,Z]) + ε(Z,[X,Y])`
    /// on basis triples of `E`, the cocycle condition for `L(E, ε)` to close
    /// under the semidirect bracket. Requires `E` to be a subalgebra, since
    /// `ε` is only defined on `E`.
    pub fn differential(&self, algebra: &LieAlgebra<K>) -> Result<AlternatingThreeForm<K>> {
        algebra.check_dim(self.ambient_dim(), "differential of the form")?;
        let k = self.e.dim();
        let rows = self.e.basis_rows();
        // Brackets of basis pairs, expressed in E-coordinates.
        let mut bracket_coords = vec![vec![None; k]; k];
        for i in 0..k {
            for j in (i + 1)..k {
                let br = algebra.bracket(&Vector(rows[i].clone()), &Vector(rows[j].clone()))?;
                match self.e.coordinates_of(&br.0)? {
                    Some(c) => bracket_coords[i][j] = Some(c),
                    None => return Err(Error::NotSubalgebra { i, j }),
                }
            }
        }
        let coords = |i: usize, j: usize| -> Vec<K> {
            if i < j {
                bracket_coords[i][j].clone().expect("filled above")
            } else if i > j {
                bracket_coords[j][i]
                    .clone()
                    .expect("filled above")
                    .into_iter()
                    .map(|c| -c)
                    .collect()
            } else {
                vec![K::zero(); k]
            }
        };
        let eps_apply = |x: usize, w: &[K]| -> K {
            let mut acc = K::zero();
            for (b, c) in w.iter().enumerate() {
                acc = acc + self.eps[(x, b)].clone() * c.clone();
            }
            acc
        };
        let mut entries = Vec::new();
        for a in 0..k {
            for b in (a + 1)..k {
                for c in (b + 1)..k {
                    let value = eps_apply(a, &coords(b, c)) - eps_apply(b, &coords(a, c))
                        + eps_apply(c, &coords(a, b));
                    entries.push(((a, b, c), value));
                }
            }
        }
        Ok(AlternatingThreeForm { dim: k, entries })
    }

    /// Integrability of `L(E, ε)`: `E` must be a subalgebra and `d_E ε = 0`.
    /// Agrees with the direct Dirac test on `build_l` for every input.
    pub fn check_integrable(&self, algebra: &LieAlgebra<K>) -> Result<IntegrabilityVerdict<K>> {
        algebra.check_dim(self.ambient_dim(), "integrability check")?;
        if let Some((i, j, escape)) = algebra.subalgebra_escape(&self.e)? {
            return Ok(IntegrabilityVerdict::NotSubalgebra { i, j, escape });
        }
        let d = self.differential(algebra)?;
        match d.first_nonzero() {
            None => Ok(IntegrabilityVerdict::Yes),
            Some((triple, value)) => Ok(IntegrabilityVerdict::NonzeroDifferential {
                triple: *triple,
                value: value.clone(),
            }),
        }
    }

    /// Membership `p ⊆ L(E, ε)`: every basis vector of `p` must lie in `E`
    /// and be contracted to zero by `ε`. Agrees with the direct subspace
    /// containment of the embedded `p` in `build_l`.
    pub fn contains_p(&self, p: &Subspace<K>) -> Result<ContainsPVerdict<K>> {
        if p.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch {
                context: "p inside the algebra",
                expected: self.ambient_dim(),
                got: p.ambient_dim(),
            });
        }
        for row in p.basis_rows() {
            match self.e.coordinates_of(&row)? {
                None => {
                    return Ok(ContainsPVerdict::PNotInE {
                        witness: Vector(row),
                    })
                }
                Some(coords) => {
                    let values = self.contraction(&coords);
                    if !values.is_zero() {
                        return Ok(ContainsPVerdict::EpsSharpNonzero {
                            witness: Vector(row),
                            values,
                        });
                    }
                }
            }
        }
        Ok(ContainsPVerdict::Yes)
    }
}

/// Inverse of `build_l`: `E` is the projection of `D` to the algebra and
/// `ε(u, v) = ξ(v)` for any `ξ` with `u + ξ ∈ D`. Well defined because two
/// such `ξ` differ by the annihilator of `E`, which is contained in any
/// maximal isotropic projecting onto `E`.
pub fn decompose_l<K: Field>(d: &DoubleSubspace<K>) -> Result<IsotropicPair<K>> {
    if !d.is_maximal_isotropic() {
        return Err(Error::NotMaximalIsotropic);
    }
    let n = d.algebra_dim();
    let e = d.project_to_algebra();
    let k = e.dim();
    let e_rows = e.basis_rows();

    // For each basis vector u of E, find an element u + ξ in D by solving
    // for coefficients over the canonical basis of D.
    let d_basis = d.subspace().basis();
    let proj_t = Matrix::from_fn(n, d.dim(), |row, col| d_basis[(col, row)].clone());
    let mut xi_rows = Vec::with_capacity(k);
    for u in &e_rows {
        let coeffs = proj_t
            .solve(u)
            .expect("basis vectors of the projection lift to D");
        let mut xi = vec![K::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            for j in 0..n {
                xi[j] = xi[j].clone() + c.clone() * d_basis[(i, n + j)].clone();
            }
        }
        xi_rows.push(Covector(xi));
    }

    let mut eps = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            eps[(a, b)] = xi_rows[a].eval(&Vector(e_rows[b].clone()))?;
        }
    }
    let pair = IsotropicPair::new(e, eps)?;
    debug_assert!(pair.build_l() == *d, "round trip rebuilds the same D");
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::scalar::{rat, Rational};

    fn sp(ambient: usize, rows: &[&[i64]]) -> Subspace<Rational> {
        Subspace::span(
            ambient,
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn form(k: usize, entries: &[(usize, usize, i64)]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(k, k);
        for &(i, j, v) in entries {
            m[(i, j)] = rat(v, 1);
            m[(j, i)] = rat(-v, 1);
        }
        m
    }

    /// The worked example pair: E is the whole Euclidean algebra and
    /// ε(e2, e3) = −1 with e1 contracted to zero.
    fn worked_pair() -> IsotropicPair<Rational> {
        IsotropicPair::new(Subspace::full(3), form(3, &[(1, 2, -1)])).unwrap()
    }

    fn worked_d() -> DoubleSubspace<Rational> {
        DoubleSubspace::from_subspace(
            Subspace::span(
                6,
                &[
                    vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
                    vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(-1, 1)],
                    vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
                ],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn build_l_endpoints() {
        // L(g, 0) = g and L(0, 0) = g*.
        let full = IsotropicPair::zero_form(Subspace::<Rational>::full(3)).build_l();
        assert_eq!(full, DoubleSubspace::embedded_algebra(3));
        let dual = IsotropicPair::zero_form(Subspace::<Rational>::zero(3)).build_l();
        assert_eq!(dual, DoubleSubspace::embedded_dual(3));
    }

    #[test]
    fn build_l_reproduces_the_worked_subspace() {
        // ι_{e2}ε = −e3*, ι_{e3}ε = e2*.
        assert_eq!(worked_pair().build_l(), worked_d());
    }

    #[test]
    fn build_l_with_partial_e() {
        // E = span{e1} in the abelian plane: L = span{e1, e2*}.
        let pair = IsotropicPair::zero_form(sp(2, &[&[1, 0]]));
        let l = pair.build_l();
        assert_eq!(l.dim(), 2);
        assert!(l
            .contains(&DoubleElement::from_coords(&[
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1)
            ]))
            .unwrap());
        assert!(l
            .contains(&DoubleElement::from_coords(&[
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(1, 1)
            ]))
            .unwrap());
    }

    #[test]
    fn decompose_l_examples() {
        // D = g* decomposes to (E = 0, ε = 0).
        let pair = decompose_l(&DoubleSubspace::<Rational>::embedded_dual(3)).unwrap();
        assert_eq!(pair.e().dim(), 0);

        // The worked subspace decomposes to E = g, ε(e2,e3) = −1,
        // ε(e1, ·) = 0.
        let pair = decompose_l(&worked_d()).unwrap();
        assert_eq!(pair.e(), &Subspace::full(3));
        assert_eq!(pair.eps(), worked_pair().eps());

        // Graph of an antisymmetric map g* → g: decompose then rebuild.
        let beta = DoubleSubspace::span(
            2,
            &[
                DoubleElement::from_coords(&[rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1)]),
                DoubleElement::from_coords(&[rat(-1, 1), rat(0, 1), rat(0, 1), rat(1, 1)]),
            ],
        )
        .unwrap();
        assert!(beta.is_maximal_isotropic());
        let pair = decompose_l(&beta).unwrap();
        assert_eq!(pair.build_l(), beta);

        let not_maximal = DoubleSubspace::span(
            2,
            &[DoubleElement::from_coords(&[
                rat(1, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
            ])],
        )
        .unwrap();
        assert_eq!(
            decompose_l(&not_maximal).unwrap_err(),
            Error::NotMaximalIsotropic
        );
    }

    #[test]
    fn differential_examples() {
        let g = families::euclidean2();
        // The worked pair: the only basis triple evaluates to zero.
        let d = worked_pair().differential(&g).unwrap();
        assert!(d.is_zero());

        // Zero form has zero differential on any subalgebra.
        let d = IsotropicPair::zero_form(Subspace::full(3))
            .differential(&g)
            .unwrap();
        assert!(d.is_zero());

        // Abelian algebra: every form is closed.
        let abelian = crate::algebra::LieAlgebra::abelian(4);
        let pair = IsotropicPair::new(Subspace::full(4), form(4, &[(0, 1, 5), (2, 3, -7)]))
            .unwrap();
        assert!(pair.differential(&abelian).unwrap().is_zero());

        // E not a subalgebra is rejected with the escaping pair.
        let sl2 = families::sl2();
        let e = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            IsotropicPair::zero_form(e).differential(&sl2).unwrap_err(),
            Error::NotSubalgebra { i: 0, j: 1 }
        );
    }

    #[test]
    fn integrability_examples() {
        let g = families::euclidean2();
        assert!(worked_pair().check_integrable(&g).unwrap().is_yes());
        assert!(IsotropicPair::zero_form(Subspace::full(3))
            .check_integrable(&g)
            .unwrap()
            .is_yes());

        let sl2 = families::sl2();
        let e = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        match IsotropicPair::zero_form(e).check_integrable(&sl2).unwrap() {
            IntegrabilityVerdict::NotSubalgebra { i, j, escape } => {
                assert_eq!((i, j), (0, 1));
                assert_eq!(escape, Vector(vec![rat(1, 1), rat(0, 1), rat(0, 1)]));
            }
            other => panic!("expected NotSubalgebra, got {other:?}"),
        }
    }

    #[test]
    fn contains_p_examples() {
        let p1 = sp(3, &[&[1, 0, 0]]);
        assert!(worked_pair().contains_p(&p1).unwrap().is_yes());
        assert!(worked_pair().contains_p(&Subspace::zero(3)).unwrap().is_yes());

        // With ε(e1, e2) = 1 the contraction ι_{e1}ε = e2* is nonzero on p.
        let pair = IsotropicPair::new(Subspace::full(3), form(3, &[(0, 1, 1)])).unwrap();
        match pair.contains_p(&p1).unwrap() {
            ContainsPVerdict::EpsSharpNonzero { witness, values } => {
                assert_eq!(witness, Vector(vec![rat(1, 1), rat(0, 1), rat(0, 1)]));
                assert_eq!(values.0, vec![rat(0, 1), rat(1, 1), rat(0, 1)]);
            }
            other => panic!("expected EpsSharpNonzero, got {other:?}"),
        }

        // p outside E.
        let pair = IsotropicPair::zero_form(sp(3, &[&[0, 1, 0]]));
        assert!(matches!(
            pair.contains_p(&p1).unwrap(),
            ContainsPVerdict::PNotInE { .. }
        ));
    }

    #[test]
    fn contains_p_agrees_with_direct_membership() {
        let pairs = [
            worked_pair(),
            IsotropicPair::new(Subspace::full(3), form(3, &[(0, 1, 1)])).unwrap(),
            IsotropicPair::zero_form(sp(3, &[&[0, 1, 0]])),
        ];
        let ps = [
            Subspace::zero(3),
            sp(3, &[&[1, 0, 0]]),
            sp(3, &[&[0, 1, 0]]),
            Subspace::full(3),
        ];
        for pair in &pairs {
            let l = pair.build_l();
            for p in &ps {
                let direct = DoubleSubspace::embed_vectors(p)
                    .subspace()
                    .leq(l.subspace())
                    .unwrap();
                assert_eq!(pair.contains_p(p).unwrap().is_yes(), direct);
            }
        }
    }
}
