//! A small library of exact structure-constant families used by tests,
//! randomized suites and as ready-made inputs. All constructors return
//! algebras over ℚ that pass `jacobi_check`.

use crate::algebra::LieAlgebra;
use crate::scalar::{rat, Field, Rational};

fn coeff(dim: usize, k: usize, value: i64) -> Vec<Rational> {
    let mut v = vec![Rational::from_int(0); dim];
    v[k] = rat(value, 1);
    v
}

/// The Euclidean motion algebra of the plane: `[e1,e2] = −e3`,
/// `[e1,e3] = e2`, `[e2,e3] = 0`; `span{e1}` is the rotation subalgebra.
pub fn euclidean2() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(
        3,
        &[(0, 1, coeff(3, 2, -1)), (0, 2, coeff(3, 1, 1))],
        None,
    )
    .expect("valid structure constants")
}

/// sl2 in the basis (H, X, Y): `[H,X] = 2X`, `[H,Y] = −2Y`, `[X,Y] = H`.
pub fn sl2() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, coeff(3, 1, 2)),
            (0, 2, coeff(3, 2, -2)),
            (1, 2, coeff(3, 0, 1)),
        ],
        Some(vec!["H".into(), "X".into(), "Y".into()]),
    )
    .expect("valid structure constants")
}

/// so3: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`.
pub fn so3() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(
        3,
        &[
            (0, 1, coeff(3, 2, 1)),
            (1, 2, coeff(3, 0, 1)),
            (0, 2, coeff(3, 1, -1)),
        ],
        None,
    )
    .expect("valid structure constants")
}

/// The Heisenberg algebra: `[e1,e2] = e3`, center `span{e3}`.
pub fn heisenberg3() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(3, &[(0, 1, coeff(3, 2, 1))], None)
        .expect("valid structure constants")
}

/// The affine line: `[e1,e2] = e2`.
pub fn affine_line() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(2, &[(0, 1, coeff(2, 1, 1))], None)
        .expect("valid structure constants")
}

/// Filiform nilpotent algebra of dimension 4: `[e1,e2] = e3`, `[e1,e3] = e4`.
pub fn filiform4() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(
        4,
        &[(0, 1, coeff(4, 2, 1)), (0, 2, coeff(4, 3, 1))],
        None,
    )
    .expect("valid structure constants")
}

/// The Heisenberg algebra of dimension 5: `[e1,e2] = e5`, `[e3,e4] = e5`.
pub fn heisenberg5() -> LieAlgebra<Rational> {
    LieAlgebra::from_brackets(
        5,
        &[(0, 1, coeff(5, 4, 1)), (2, 3, coeff(5, 4, 1))],
        None,
    )
    .expect("valid structure constants")
}

/// Direct sum with block-diagonal structure tensor.
pub fn direct_sum(a: &LieAlgebra<Rational>, b: &LieAlgebra<Rational>) -> LieAlgebra<Rational> {
    let n = a.dim();
    let m = b.dim();
    let dim = n + m;
    let mut structure = vec![vec![vec![Rational::from_int(0); dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                structure[i][j][k] = a.structure()[i][j][k].clone();
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                structure[n + i][n + j][n + k] = b.structure()[i][j][k].clone();
            }
        }
    }
    LieAlgebra::new(dim, structure, None).expect("block sum preserves antisymmetry")
}

/// The fixed library used by randomized suites: a spread of abelian,
/// nilpotent, solvable and semisimple algebras of dimension at most 5.
pub fn library() -> Vec<LieAlgebra<Rational>> {
    vec![
        LieAlgebra::abelian(2),
        LieAlgebra::abelian(3),
        LieAlgebra::abelian(4),
        LieAlgebra::abelian(5),
        heisenberg3(),
        euclidean2(),
        sl2(),
        so3(),
        affine_line(),
        filiform4(),
        heisenberg5(),
        direct_sum(&affine_line(), &LieAlgebra::abelian(2)),
        direct_sum(&sl2(), &LieAlgebra::abelian(1)),
        direct_sum(&sl2(), &LieAlgebra::abelian(2)),
        direct_sum(&heisenberg3(), &LieAlgebra::abelian(2)),
        direct_sum(&euclidean2(), &LieAlgebra::abelian(2)),
        direct_sum(&affine_line(), &affine_line()),
    ]
}
