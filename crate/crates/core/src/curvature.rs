//! Curvature models and the predicates they control. A model fixes a
//! distinguished subalgebra `p` and an antisymmetric `g`-valued 2-form
//! `κ` on `g` that is horizontal with respect to `p` (κ(X, ·) = 0 for
//! X ∈ p), the pointwise value of a Cartan curvature function. On top of
//! it live the torsion-freeness test, the induced maps `K` and `Θ` on the
//! double, the cyclic-sum obstruction for a Dirac subalgebra to descend,
//! and the Poisson / generalized-complex refinements.
//!
//! The model is one tensor, one point: a geometry whose curvature varies
//! must be certified pointwise, one tensor at a time.

use num_traits::Zero;

use crate::algebra::{LieAlgebra, Vector};
use crate::double::{pairing, DiracVerdict, DoubleElement, DoubleSubspace};
use crate::error::{Error, Result};
use crate::isotropic::IsotropicPair;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureModel<K: Field> {
    algebra: LieAlgebra<K>,
    p: Subspace<K>,
    /// `kappa[i][j][k]` is the coefficient of `bₖ` in `κ(bᵢ, bⱼ)`.
    kappa: Vec<Vec<Vec<K>>>,
}

/// Outcome of the cyclic-sum test `Θ|_D = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaVerdict<K: Field> {
    Vanishes,
    /// Canonical basis triple of `D` with the nonzero value.
    Witness {
        triple: (usize, usize, usize),
        value: K,
    },
}

impl<K: Field> ThetaVerdict<K> {
    pub fn vanishes(&self) -> bool {
        matches!(self, ThetaVerdict::Vanishes)
    }
}

/// Joint report for the descent criterion: `D` must be a Dirac subalgebra,
/// contain the embedded `p`, and satisfy the cyclic-sum condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiracStructureReport<K: Field> {
    pub dirac: DiracVerdict<K>,
    pub contains_p: bool,
    /// Basis vector of `p` outside `D`, when containment fails.
    pub contains_p_witness: Option<Vector<K>>,
    pub theta: ThetaVerdict<K>,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonReport<K: Field> {
    pub dirac_report: DiracStructureReport<K>,
    /// `D ∩ g` in algebra coordinates; the verdict compares it with `p`.
    pub d_cap_g: Subspace<K>,
    pub d_cap_g_equals_p: bool,
    pub verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcsReport<K: Field> {
    pub dirac_report: DiracStructureReport<K>,
    /// `D ∩ D̄` in double coordinates; the verdict compares it with the
    /// embedded `p`.
    pub d_cap_dbar: Subspace<K>,
    pub d_cap_dbar_equals_p: bool,
    pub verdict: bool,
}

/// Status of the cocycle condition inside the six-condition report, where
/// `E` failing to be a subalgebra is a reported failure rather than an
/// error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleStatus<K: Field> {
    Zero,
    Nonzero {
        triple: (usize, usize, usize),
        value: K,
    },
    NotSubalgebra {
        i: usize,
        j: usize,
    },
}

impl<K: Field> CocycleStatus<K> {
    pub fn ok(&self) -> bool {
        matches!(self, CocycleStatus::Zero)
    }
}

/// Per-condition report for the generalized-complex criterion on a pair
/// `(E, ε)`: (1) `p ⊆ E`; (2) `E + Ē = g`; (3) `d_E ε = 0`;
/// (4) `ε♯` vanishes on `p`; (5) the radical of
/// `φ(X, Y) = ε(X, Y) − conj(ε(X̄, Ȳ))` on `E ∩ Ē` lies in `p`;
/// (6) `Θ` vanishes on `L(E, ε)`. The verdict is their conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcsConditionsReport<K: Field> {
    pub c1_p_in_e: bool,
    pub c2_e_plus_conj_spans: bool,
    pub c3_cocycle: CocycleStatus<K>,
    pub c4_eps_vanishes_on_p: bool,
    pub c5_radical_in_p: bool,
    /// Witness for a condition-5 failure: a radical vector outside `p`.
    pub c5_witness: Option<Vector<K>>,
    pub c6_theta: ThetaVerdict<K>,
    pub verdict: bool,
}

impl<K: Field> CurvatureModel<K> {
    /// Validates antisymmetry of the tensor, horizontality with respect to
    /// `p` (checked on a basis of `p`), and that `p` is a subalgebra.
    pub fn new(algebra: LieAlgebra<K>, p: Subspace<K>, kappa: Vec<Vec<Vec<K>>>) -> Result<Self> {
        let n = algebra.dim();
        algebra.check_dim(p.ambient_dim(), "curvature p")?;
        if kappa.len() != n || kappa.iter().any(|pl| pl.len() != n)
            || kappa.iter().flatten().any(|f| f.len() != n)
        {
            return Err(Error::DimensionMismatch {
                context: "curvature tensor",
                expected: n,
                got: kappa.len(),
            });
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let sum = kappa[i][j][k].clone() + kappa[j][i][k].clone();
                    if !sum.is_zero() {
                        return Err(Error::AntisymmetryViolation { i, j });
                    }
                }
            }
        }
        if !algebra.is_subalgebra(&p)? {
            let (i, j, _) = algebra.subalgebra_escape(&p)?.expect("escape exists");
            return Err(Error::NotSubalgebra { i, j });
        }
        let model = Self { algebra, p, kappa };
        for (row, x) in model.p.basis_rows().into_iter().enumerate() {
            for j in 0..n {
                let value = model.kappa_vectors(&Vector(x.clone()), &Vector::basis(n, j))?;
                if !value.is_zero() {
                    return Err(Error::KappaNotHorizontal { row });
                }
            }
        }
        Ok(model)
    }

    /// The flat model: `κ = 0`.
    pub fn flat(algebra: LieAlgebra<K>, p: Subspace<K>) -> Result<Self> {
        let n = algebra.dim();
        Self::new(algebra, p, vec![vec![vec![K::zero(); n]; n]; n])
    }

    /// Builds the tensor from the values `κ(bᵢ, bⱼ)` for `i < j`, mirrored
    /// by antisymmetry; unlisted pairs are zero. Indices are zero-based.
    pub fn from_entries(
        algebra: LieAlgebra<K>,
        p: Subspace<K>,
        entries: &[(usize, usize, Vec<K>)],
    ) -> Result<Self> {
        let n = algebra.dim();
        let mut kappa = vec![vec![vec![K::zero(); n]; n]; n];
        for (i, j, coeffs) in entries {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "curvature entry",
                    expected: n,
                    got: coeffs.len().max(i + 1).max(j + 1),
                });
            }
            if i == j {
                if coeffs.iter().any(|c| !c.is_zero()) {
                    return Err(Error::AntisymmetryViolation { i, j });
                }
                continue;
            }
            kappa[i][j] = coeffs.clone();
            kappa[j][i] = coeffs.iter().map(|c| -c.clone()).collect();
        }
        Self::new(algebra, p, kappa)
    }

    pub fn algebra(&self) -> &LieAlgebra<K> {
        &self.algebra
    }

    pub fn p(&self) -> &Subspace<K> {
        &self.p
    }

    pub fn kappa(&self) -> &Vec<Vec<Vec<K>>> {
        &self.kappa
    }

    pub fn is_flat(&self) -> bool {
        self.kappa
            .iter()
            .flatten()
            .flatten()
            .all(Zero::is_zero)
    }

    /// `κ` on plain algebra vectors, by bilinear extension.
    pub fn kappa_vectors(&self, a: &Vector<K>, b: &Vector<K>) -> Result<Vector<K>> {
        let n = self.algebra.dim();
        self.algebra.check_dim(a.dim(), "kappa argument")?;
        self.algebra.check_dim(b.dim(), "kappa argument")?;
        let mut out = vec![K::zero(); n];
        for i in 0..n {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.0[j].is_zero() {
                    continue;
                }
                let factor = a.0[i].clone() * b.0[j].clone();
                for k in 0..n {
                    let c = &self.kappa[i][j][k];
                    if !c.is_zero() {
                        out[k] = out[k].clone() + factor.clone() * c.clone();
                    }
                }
            }
        }
        Ok(Vector(out))
    }

    /// True when every value `κ(bᵢ, bⱼ)` lies in `p`.
    pub fn is_torsion_free(&self) -> bool {
        let n = self.algebra.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self
                    .p
                    .contains(&self.kappa[i][j])
                    .expect("tensor fibers have ambient length")
                {
                    return false;
                }
            }
        }
        true
    }

    /// The induced map on the double: `κ` applied to the vector parts,
    /// killing `g*`.
    pub fn k_map(&self, x: &DoubleElement<K>, y: &DoubleElement<K>) -> Result<Vector<K>> {
        self.kappa_vectors(&x.vec, &y.vec)
    }

    /// The cyclic sum `Θ(e₁,e₂,e₃) = ⟨K(e₁,e₂),e₃⟩ + ⟨K(e₂,e₃),e₁⟩ +
    /// ⟨K(e₃,e₁),e₂⟩`; trilinear and alternating, so basis triples decide
    /// its restriction to a subspace.
    pub fn theta(
        &self,
        e1: &DoubleElement<K>,
        e2: &DoubleElement<K>,
        e3: &DoubleElement<K>,
    ) -> Result<K> {
        let term = |a: &DoubleElement<K>, b: &DoubleElement<K>, c: &DoubleElement<K>| {
            let k = self.k_map(a, b)?;
            pairing(&DoubleElement::from_vector(k), c)
        };
        Ok(term(e1, e2, e3)? + term(e2, e3, e1)? + term(e3, e1, e2)?)
    }

    /// `Θ|_D = 0`, decided on canonical basis triples `i < j < k`.
    pub fn theta_vanishes_on(&self, d: &DoubleSubspace<K>) -> Result<ThetaVerdict<K>> {
        self.algebra.check_dim(d.algebra_dim(), "theta restriction")?;
        let basis = d.basis_elements();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                for k in (j + 1)..basis.len() {
                    let value = self.theta(&basis[i], &basis[j], &basis[k])?;
                    if !value.is_zero() {
                        return Ok(ThetaVerdict::Witness {
                            triple: (i, j, k),
                            value,
                        });
                    }
                }
            }
        }
        Ok(ThetaVerdict::Vanishes)
    }

    /// The descent criterion: `D` is a Dirac subalgebra, contains the
    /// embedded `p`, and `Θ` vanishes on it.
    pub fn linear_dirac_check(&self, d: &DoubleSubspace<K>) -> Result<DiracStructureReport<K>> {
        let dirac = d.is_dirac_subalgebra(&self.algebra)?;
        let mut contains_p = true;
        let mut contains_p_witness = None;
        for row in self.p.basis_rows() {
            let embedded = DoubleElement::from_vector(Vector(row.clone()));
            if !d.contains(&embedded)? {
                contains_p = false;
                contains_p_witness = Some(Vector(row));
                break;
            }
        }
        let theta = self.theta_vanishes_on(d)?;
        let verdict = dirac.is_yes() && contains_p && theta.vanishes();
        Ok(DiracStructureReport {
            dirac,
            contains_p,
            contains_p_witness,
            theta,
            verdict,
        })
    }

    /// Poisson refinement: the descent criterion plus `D ∩ g = p`.
    pub fn poisson_check(&self, d: &DoubleSubspace<K>) -> Result<PoissonReport<K>> {
        let dirac_report = self.linear_dirac_check(d)?;
        let d_cap_g = d.intersect_algebra()?;
        let d_cap_g_equals_p = d_cap_g == self.p;
        let verdict = dirac_report.verdict && d_cap_g_equals_p;
        Ok(PoissonReport {
            dirac_report,
            d_cap_g,
            d_cap_g_equals_p,
            verdict,
        })
    }

    /// Generalized-complex refinement: the descent criterion plus
    /// `D ∩ D̄ = p` (as subspaces of the double). Meaningful over ℚ(i);
    /// over ℚ conjugation is trivial and the test degenerates to `D = p`.
    pub fn gcs_check(&self, d: &DoubleSubspace<K>) -> Result<GcsReport<K>> {
        let dirac_report = self.linear_dirac_check(d)?;
        let dbar = d.conjugate();
        let d_cap_dbar = d.subspace().intersect(dbar.subspace())?;
        let embedded_p = DoubleSubspace::embed_vectors(&self.p);
        let d_cap_dbar_equals_p = &d_cap_dbar == embedded_p.subspace();
        let verdict = dirac_report.verdict && d_cap_dbar_equals_p;
        Ok(GcsReport {
            dirac_report,
            d_cap_dbar,
            d_cap_dbar_equals_p,
            verdict,
        })
    }

    /// The six-condition test on a pair `(E, ε)`; see
    /// [`GcsConditionsReport`]. Each condition is evaluated independently
    /// and the verdict is their conjunction, which agrees with
    /// [`CurvatureModel::gcs_check`] on `L(E, ε)`.
    pub fn linear_gcs_conditions(&self, pair: &IsotropicPair<K>) -> Result<GcsConditionsReport<K>> {
        let e = pair.e();
        self.algebra.check_dim(e.ambient_dim(), "gcs conditions")?;

        let c1_p_in_e = self.p.leq(e)?;
        let e_bar = e.conjugate();
        let c2_e_plus_conj_spans = e.sum(&e_bar)?.is_full();
        let c3_cocycle = match pair.differential(&self.algebra) {
            Ok(form) => match form.first_nonzero() {
                None => CocycleStatus::Zero,
                Some((triple, value)) => CocycleStatus::Nonzero {
                    triple: *triple,
                    value: value.clone(),
                },
            },
            Err(Error::NotSubalgebra { i, j }) => CocycleStatus::NotSubalgebra { i, j },
            Err(other) => return Err(other),
        };
        let c4_eps_vanishes_on_p = matches!(
            pair.contains_p(&self.p)?,
            crate::isotropic::ContainsPVerdict::Yes
        );

        // Condition (5): on W = E ∩ Ē, the form φ(X, Y) = ε(X, Y) −
        // conj(ε(X̄, Ȳ)) must have its radical inside p. The radical is the
        // kernel of the Gram matrix of φ over a basis of W.
        let w = e.intersect(&e_bar)?;
        let mut c5_radical_in_p = true;
        let mut c5_witness = None;
        if w.dim() > 0 {
            let w_rows = w.basis_rows();
            let eps_on = |x: &[K], y: &[K]| -> Result<K> {
                let cx = e.coordinates_of(x)?.expect("W is contained in E");
                let cy = e.coordinates_of(y)?.expect("W is contained in E");
                let mut acc = K::zero();
                for (a, xa) in cx.iter().enumerate() {
                    for (b, yb) in cy.iter().enumerate() {
                        acc = acc + xa.clone() * pair.eps()[(a, b)].clone() * yb.clone();
                    }
                }
                Ok(acc)
            };
            let conj_vec = |v: &[K]| -> Vec<K> { v.iter().map(K::conjugate).collect() };
            let mut gram = Matrix::zeros(w.dim(), w.dim());
            for (a, x) in w_rows.iter().enumerate() {
                for (b, y) in w_rows.iter().enumerate() {
                    gram[(a, b)] = eps_on(x, y)?
                        - eps_on(&conj_vec(x), &conj_vec(y))?.conjugate();
                }
            }
            // Radical vectors have coefficient columns in the kernel of the
            // transposed Gram matrix.
            for coeffs in gram.transpose().kernel() {
                let mut radical_vec = vec![K::zero(); e.ambient_dim()];
                for (a, c) in coeffs.iter().enumerate() {
                    for j in 0..e.ambient_dim() {
                        radical_vec[j] = radical_vec[j].clone() + c.clone() * w_rows[a][j].clone();
                    }
                }
                if !self.p.contains(&radical_vec)? {
                    c5_radical_in_p = false;
                    c5_witness = Some(Vector(radical_vec));
                    break;
                }
            }
        }

        let c6_theta = self.theta_vanishes_on(&pair.build_l())?;

        let verdict = c1_p_in_e
            && c2_e_plus_conj_spans
            && c3_cocycle.ok()
            && c4_eps_vanishes_on_p
            && c5_radical_in_p
            && c6_theta.vanishes();
        Ok(GcsConditionsReport {
            c1_p_in_e,
            c2_e_plus_conj_spans,
            c3_cocycle,
            c4_eps_vanishes_on_p,
            c5_radical_in_p,
            c5_witness,
            c6_theta,
            verdict,
        })
    }
}

impl CurvatureModel<crate::scalar::Rational> {
    /// Scalar extension of the whole model to ℚ(i).
    pub fn complexify(&self) -> CurvatureModel<crate::scalar::GaussianRational> {
        use crate::algebra::complexify_subspace;
        use crate::scalar::GaussianRational;
        CurvatureModel {
            algebra: self.algebra.complexify(),
            p: complexify_subspace(&self.p),
            kappa: self
                .kappa
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
        }
    }
}
