//! Deterministic generators for the randomized suites. Not part of the
//! supported API; exposed so downstream test targets can drive the same
//! structured inputs (random subalgebras, admissible forms, horizontal
//! curvature tensors) without duplicating the construction logic.
#![doc(hidden)]

use crate::algebra::{LieAlgebra, Vector};
use crate::curvature::CurvatureModel;
use crate::error::Result;
use crate::isotropic::IsotropicPair;
use crate::matrix::Matrix;
use crate::scalar::{Field, GaussianRational, Rational};
use crate::search::epsilon_space;
use crate::subspace::Subspace;

/// SplitMix64: a tiny deterministic stream, stable across platforms and
/// releases, which keeps every randomized suite exactly reproducible from
/// its seed.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform integer in `[-bound, bound]`.
    pub fn int(&mut self, bound: i64) -> i64 {
        let span = (2 * bound + 1) as u64;
        (self.next_u64() % span) as i64 - bound
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.next_u64() % den as u64) < num as u64
    }
}

/// Scalars drawn from a small box, dense enough to exercise fractions.
pub trait RandomScalar: Field {
    fn random(rng: &mut Rng) -> Self;
}

impl RandomScalar for Rational {
    fn random(rng: &mut Rng) -> Self {
        let num = rng.int(4);
        let den = 1 + rng.below(3) as i64;
        crate::scalar::rat(num, den)
    }
}

impl RandomScalar for GaussianRational {
    fn random(rng: &mut Rng) -> Self {
        GaussianRational::new(Rational::random(rng), Rational::random(rng))
    }
}

pub fn random_vector<K: RandomScalar>(rng: &mut Rng, n: usize) -> Vector<K> {
    Vector((0..n).map(|_| K::random(rng)).collect())
}

pub fn random_subspace<K: RandomScalar>(rng: &mut Rng, n: usize) -> Subspace<K> {
    let rows = rng.below(n + 1);
    let vectors: Vec<Vec<K>> = (0..rows).map(|_| random_vector(rng, n).0).collect();
    Subspace::span(n, &vectors).expect("matching ambient")
}

pub fn random_antisymmetric<K: RandomScalar>(rng: &mut Rng, k: usize) -> Matrix<K> {
    let mut m = Matrix::zeros(k, k);
    for a in 0..k {
        for b in (a + 1)..k {
            let v = K::random(rng);
            m[(a, b)] = v.clone();
            m[(b, a)] = -v;
        }
    }
    m
}

/// A random pair (E, ε) with `E` an arbitrary subspace: suitable for
/// testing predicates that must also handle non-subalgebras.
pub fn random_pair<K: RandomScalar>(rng: &mut Rng, n: usize) -> IsotropicPair<K> {
    let e = random_subspace(rng, n);
    let eps = random_antisymmetric(rng, e.dim());
    IsotropicPair::new(e, eps).expect("antisymmetric by construction")
}

/// Closes a random seed set under brackets, yielding a genuine subalgebra
/// containing `start`.
pub fn random_subalgebra_over<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &LieAlgebra<K>,
    start: &Subspace<K>,
) -> Subspace<K> {
    let n = algebra.dim();
    let extra = rng.below(n + 1);
    let mut rows = start.basis_rows();
    for _ in 0..extra {
        rows.push(random_vector(rng, n).0);
    }
    let mut current = Subspace::span(n, &rows).expect("ambient n");
    loop {
        match algebra
            .subalgebra_escape(&current)
            .expect("dimensions match")
        {
            None => return current,
            Some((_, _, escape)) => {
                let mut rows = current.basis_rows();
                rows.push(escape.0);
                current = Subspace::span(n, &rows).expect("ambient n");
            }
        }
    }
}

/// A random member of the admissible-form space over a random subalgebra
/// `E ⊇ p`: the built `L(E, ε)` is a Dirac subalgebra containing `p`.
pub fn random_dirac_pair_containing<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &LieAlgebra<K>,
    p: &Subspace<K>,
) -> Result<IsotropicPair<K>> {
    let e = random_subalgebra_over(rng, algebra, p);
    let basis = epsilon_space(algebra, &e, p)?;
    let k = e.dim();
    let mut eps = Matrix::zeros(k, k);
    for b in &basis {
        if rng.chance(2, 3) {
            let c = K::random(rng);
            eps = eps.add(&b.scale(&c));
        }
    }
    IsotropicPair::new(e, eps)
}

/// Subalgebras spanned by subsets of the basis, with their index sets;
/// used to build horizontal curvature tensors coordinate by coordinate.
pub fn coordinate_subalgebras<K: Field>(algebra: &LieAlgebra<K>) -> Vec<(Subspace<K>, Vec<usize>)> {
    let n = algebra.dim();
    let mut out = Vec::new();
    for mask in 0..(1u32 << n) {
        let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let rows: Vec<Vec<K>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![K::zero(); n];
                v[i] = K::one();
                v
            })
            .collect();
        let s = Subspace::span(n, &rows).expect("ambient n");
        if algebra.is_subalgebra(&s).expect("ambient n") {
            out.push((s, indices));
        }
    }
    out
}

/// A random curvature model over a coordinate-spanned `p`: horizontality
/// is arranged by zeroing every slot touching `p`, and `torsion_free`
/// selects whether values are drawn from `p` or from the whole algebra.
pub fn random_curvature_model<K: RandomScalar>(
    rng: &mut Rng,
    algebra: &LieAlgebra<K>,
    p: &Subspace<K>,
    p_indices: &[usize],
    torsion_free: bool,
) -> CurvatureModel<K> {
    let n = algebra.dim();
    let mut kappa = vec![vec![vec![K::zero(); n]; n]; n];
    let p_rows = p.basis_rows();
    for i in 0..n {
        if p_indices.contains(&i) {
            continue;
        }
        for j in (i + 1)..n {
            if p_indices.contains(&j) {
                continue;
            }
            let value: Vec<K> = if torsion_free {
                let mut v = vec![K::zero(); n];
                for row in &p_rows {
                    if rng.chance(1, 2) {
                        let c = K::random(rng);
                        for (slot, x) in v.iter_mut().zip(row) {
                            *slot = slot.clone() + c.clone() * x.clone();
                        }
                    }
                }
                v
            } else {
                random_vector(rng, n).0
            };
            kappa[i][j] = value.clone();
            kappa[j][i] = value.into_iter().map(|c| -c).collect();
        }
    }
    CurvatureModel::new(algebra.clone(), p.clone(), kappa)
        .expect("horizontal and antisymmetric by construction")
}

/// The library complexified, for suites over ℚ(i).
pub fn complex_library() -> Vec<LieAlgebra<GaussianRational>> {
    crate::families::library()
        .iter()
        .map(LieAlgebra::complexify)
        .collect()
}
