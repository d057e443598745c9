//! Graded Lie algebra utilities: verification of an |l|-grading,
//! computation of the grading element, Killing-form duality between
//! opposite degrees, and the graded decomposition of a curvature tensor
//! (torsion-freeness as vanishing of the negative-degree components).
//!
//! The duality facts hold for semisimple algebras with parabolic
//! subalgebras; the checks here run on arbitrary input and simply report
//! which hypothesis fails, so non-semisimple inputs can be probed too.

use num_traits::Zero;

use crate::algebra::{LieAlgebra, Vector};
use crate::curvature::CurvatureModel;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::subspace::Subspace;

/// An |l|-grading `g = g₋ₗ ⊕ ... ⊕ gₗ`; `parts[idx]` holds degree
/// `idx − l`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading<K: Field> {
    l: usize,
    ambient: usize,
    parts: Vec<Subspace<K>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingViolation<K: Field> {
    /// The parts fail to decompose the algebra: dimensions do not add to
    /// the ambient dimension or the sum is proper.
    NotDirectSum { total_dim: usize, expected: usize },
    /// `[gᵢ, gⱼ] ⊆ g_{i+j}` fails on a basis pair.
    BracketEscapes {
        deg_i: i64,
        deg_j: i64,
        row_i: usize,
        row_j: usize,
        value: Vector<K>,
    },
    /// Degree `−k` (k ≥ 2) is not spanned by brackets of `g₋₁` with
    /// `g₋ₖ₊₁`.
    NegativeNotGenerated {
        degree: i64,
        generated_dim: usize,
        expected_dim: usize,
    },
}

/// The grading element together with a uniqueness flag; when the solution
/// set has positive dimension the canonical representative (all free
/// variables zero in the echelon parametrization) is returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingElement<K: Field> {
    pub vector: Vector<K>,
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityBlock {
    pub deg_i: i64,
    pub deg_j: i64,
    pub rank: usize,
    /// Zero rank off the anti-diagonal; full rank `dim gᵢ = dim gⱼ` on it.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub blocks: Vec<DualityBlock>,
    /// Rank of the full Killing form; nondegeneracy is Cartan's
    /// semisimplicity criterion.
    pub killing_rank: usize,
    pub killing_nondegenerate: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeComponent<K: Field> {
    pub degree: i64,
    pub i: usize,
    pub j: usize,
    pub component: Vector<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedTorsionReport<K: Field> {
    pub torsion_free: bool,
    pub nonzero_negative: Vec<NegativeComponent<K>>,
}

impl<K: Field> Grading<K> {
    /// Builds a grading from `2l + 1` parts listed from degree `−l` to `l`.
    pub fn new(l: usize, parts: Vec<Subspace<K>>) -> Result<Self> {
        if parts.len() != 2 * l + 1 {
            return Err(Error::DimensionMismatch {
                context: "grading parts",
                expected: 2 * l + 1,
                got: parts.len(),
            });
        }
        let ambient = parts[0].ambient_dim();
        for part in &parts {
            if part.ambient_dim() != ambient {
                return Err(Error::DimensionMismatch {
                    context: "grading part ambient",
                    expected: ambient,
                    got: part.ambient_dim(),
                });
            }
        }
        Ok(Self { l, ambient, parts })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        let l = self.l as i64;
        -l..=l
    }

    /// The part of the given degree; zero outside `[−l, l]`.
    pub fn part(&self, degree: i64) -> Subspace<K> {
        let l = self.l as i64;
        if degree < -l || degree > l {
            Subspace::zero(self.ambient)
        } else {
            self.parts[(degree + l) as usize].clone()
        }
    }

    /// `⊕_{d ≥ 0} g_d`, the subalgebra a parabolic model distinguishes.
    pub fn nonnegative_part(&self) -> Subspace<K> {
        let mut acc = Subspace::zero(self.ambient);
        for d in 0..=(self.l as i64) {
            acc = acc.sum(&self.part(d)).expect("same ambient");
        }
        acc
    }

    /// Checks the direct-sum decomposition, every bracket inclusion
    /// `[gᵢ, gⱼ] ⊆ g_{i+j}` on basis pairs, and that each `g₋ₖ` (k ≥ 2)
    /// is spanned by iterated brackets of `g₋₁`. Violations are report
    /// content, not errors.
    pub fn verify(&self, algebra: &LieAlgebra<K>) -> Result<Vec<GradingViolation<K>>> {
        algebra.check_dim(self.ambient, "grading")?;
        let mut violations = Vec::new();

        let total: usize = self.degrees().map(|d| self.part(d).dim()).sum();
        let mut span = Subspace::zero(self.ambient);
        for d in self.degrees() {
            span = span.sum(&self.part(d))?;
        }
        if total != self.ambient || !span.is_full() {
            violations.push(GradingViolation::NotDirectSum {
                total_dim: total,
                expected: self.ambient,
            });
        }

        for di in self.degrees() {
            for dj in self.degrees() {
                if dj < di {
                    continue;
                }
                let target = self.part(di + dj);
                let rows_i = self.part(di).basis_rows();
                let rows_j = self.part(dj).basis_rows();
                for (bi, u) in rows_i.iter().enumerate() {
                    for (bj, v) in rows_j.iter().enumerate() {
                        let br = algebra.bracket(&Vector(u.clone()), &Vector(v.clone()))?;
                        if !target.contains(&br.0)? {
                            violations.push(GradingViolation::BracketEscapes {
                                deg_i: di,
                                deg_j: dj,
                                row_i: bi,
                                row_j: bj,
                                value: br,
                            });
                        }
                    }
                }
            }
        }

        // g₋ₖ₋₁ must equal span[g₋₁, g₋ₖ] for 1 ≤ k < l.
        for k in 1..self.l as i64 {
            let expected = self.part(-k - 1);
            let mut generated = Vec::new();
            for u in self.part(-1).basis_rows() {
                for v in self.part(-k).basis_rows() {
                    generated.push(algebra.bracket(&Vector(u.clone()), &Vector(v))?.0);
                }
            }
            let generated = Subspace::span(self.ambient, &generated)?;
            if generated != expected {
                violations.push(GradingViolation::NegativeNotGenerated {
                    degree: -k - 1,
                    generated_dim: generated.dim(),
                    expected_dim: expected.dim(),
                });
            }
        }

        Ok(violations)
    }

    /// Solves `[Z, v] = d·v` for all basis vectors `v` of every `g_d`,
    /// with `Z` constrained to `g₀`. The eigenspace decomposition of a
    /// diagonalizable operator is unique, so any solution acts as exactly
    /// `d` on `g_d` and nowhere else.
    pub fn find_grading_element(&self, algebra: &LieAlgebra<K>) -> Result<GradingElement<K>> {
        algebra.check_dim(self.ambient, "grading element")?;
        let g0 = self.part(0);
        let unknowns = g0.dim();
        let g0_rows = g0.basis_rows();

        let mut coeff_rows: Vec<Vec<K>> = Vec::new();
        let mut rhs: Vec<K> = Vec::new();
        for d in self.degrees() {
            for v in self.part(d).basis_rows() {
                let v = Vector(v);
                // One scalar equation per ambient coordinate.
                let mut columns = Vec::with_capacity(unknowns);
                for w in &g0_rows {
                    columns.push(algebra.bracket(&Vector(w.clone()), &v)?);
                }
                for coord in 0..self.ambient {
                    let row: Vec<K> = columns.iter().map(|c| c.0[coord].clone()).collect();
                    coeff_rows.push(row);
                    rhs.push(K::from_int(d) * v.0[coord].clone());
                }
            }
        }
        let a = Matrix::from_rows(coeff_rows)?;
        let solution = a.solve(&rhs).ok_or(Error::NoGradingElement)?;
        let unique = a.kernel().is_empty();

        let mut vector = vec![K::zero(); self.ambient];
        for (s, c) in solution.iter().enumerate() {
            for j in 0..self.ambient {
                vector[j] = vector[j].clone() + c.clone() * g0_rows[s][j].clone();
            }
        }
        let element = GradingElement {
            vector: Vector(vector),
            unique,
        };
        // The defining property, re-verified exactly.
        for d in self.degrees() {
            for v in self.part(d).basis_rows() {
                let v = Vector(v);
                let lhs = algebra.bracket(&element.vector, &v)?;
                let rhs = v.scale(&K::from_int(d));
                debug_assert_eq!(lhs, rhs, "grading element acts as the degree");
                if lhs != rhs {
                    return Err(Error::NoGradingElement);
                }
            }
        }
        Ok(element)
    }

    /// Checks `B(gᵢ, gⱼ) = 0` for `j ≠ −i` and that `B : g₋ᵢ × gᵢ` is a
    /// nondegenerate pairing for each `i`, reporting rank per block. The
    /// overall Killing rank doubles as Cartan's semisimplicity test.
    pub fn killing_duality_check(&self, algebra: &LieAlgebra<K>) -> Result<DualityReport> {
        algebra.check_dim(self.ambient, "killing duality")?;
        let killing = algebra.killing_form();
        let mut blocks = Vec::new();
        for di in self.degrees() {
            for dj in self.degrees() {
                if dj < di {
                    continue;
                }
                let pi = self.part(di);
                let pj = self.part(dj);
                if pi.dim() == 0 || pj.dim() == 0 {
                    continue;
                }
                let block = pi.basis().mul(&killing).mul(&pj.basis().transpose());
                let rank = block.rank();
                let ok = if dj == -di {
                    pi.dim() == pj.dim() && rank == pi.dim()
                } else {
                    rank == 0
                };
                blocks.push(DualityBlock {
                    deg_i: di,
                    deg_j: dj,
                    rank,
                    ok,
                });
            }
        }
        let killing_rank = killing.rank();
        let killing_nondegenerate = killing_rank == self.ambient;
        let pass = blocks.iter().all(|b| b.ok);
        Ok(DualityReport {
            blocks,
            killing_rank,
            killing_nondegenerate,
            pass,
        })
    }

    /// Decomposes each curvature value into graded components and lists
    /// the nonzero negative-degree ones; empty exactly when the model is
    /// torsion free. The model's `p` must be the nonnegative part.
    pub fn graded_torsion_check(
        &self,
        model: &CurvatureModel<K>,
    ) -> Result<GradedTorsionReport<K>> {
        model.algebra().check_dim(self.ambient, "graded torsion")?;
        if model.p() != &self.nonnegative_part() {
            return Err(Error::PMismatch);
        }

        // Change of basis onto the concatenated part bases; the grading
        // must decompose the algebra for this to be invertible.
        let mut rows: Vec<Vec<K>> = Vec::new();
        let mut degrees_of_rows: Vec<i64> = Vec::new();
        for d in self.degrees() {
            for row in self.part(d).basis_rows() {
                rows.push(row);
                degrees_of_rows.push(d);
            }
        }
        if rows.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                context: "graded decomposition",
                expected: self.ambient,
                got: rows.len(),
            });
        }
        let t = Matrix::from_rows(rows.clone())?.transpose();

        let n = self.ambient;
        let mut nonzero_negative = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let value = &model.kappa()[i][j];
                if value.iter().all(Zero::is_zero) {
                    continue;
                }
                let coords = t.solve(value).ok_or(Error::DimensionMismatch {
                    context: "graded decomposition",
                    expected: self.ambient,
                    got: 0,
                })?;
                for d in self.degrees().filter(|d| *d < 0) {
                    let mut component = vec![K::zero(); n];
                    let mut any = false;
                    for (r, c) in coords.iter().enumerate() {
                        if degrees_of_rows[r] == d && !c.is_zero() {
                            any = true;
                            for x in 0..n {
                                component[x] =
                                    component[x].clone() + c.clone() * rows[r][x].clone();
                            }
                        }
                    }
                    if any {
                        nonzero_negative.push(NegativeComponent {
                            degree: d,
                            i,
                            j,
                            component: Vector(component),
                        });
                    }
                }
            }
        }
        Ok(GradedTorsionReport {
            torsion_free: nonzero_negative.is_empty(),
            nonzero_negative,
        })
    }
}
