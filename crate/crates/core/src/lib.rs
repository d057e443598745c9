//! Exact linear algebra for Dirac subalgebras of the double `g ⊕ g*` of a
//! finite-dimensional Lie algebra, curvature criteria for when such a
//! subalgebra induces Dirac, Poisson or generalized complex structures on
//! the underlying geometry, and desk-scale enumeration of the subalgebras
//! through the `(E, ε)` parametrization of maximal isotropics.
//!
//! All arithmetic is over ℚ or ℚ(i); every criterion handled here is a
//! polynomial identity in structure constants, so no tolerances appear
//! anywhere. A caveat for users certifying statements over ℝ or ℂ: a
//! verdict over ℚ covers exactly the rational-coefficient subspaces;
//! subspaces that need irrational coefficients are out of scope.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so everything can be evaluated concurrently.

pub mod algebra;
pub mod curvature;
pub mod double;
pub mod error;
pub mod families;
pub mod isotropic;
pub mod matrix;
pub mod parabolic;
pub mod scalar;
pub mod search;
pub mod subspace;
pub mod testkit;

pub use algebra::{Covector, JacobiViolation, LieAlgebra, Vector};
pub use curvature::{CurvatureModel, ThetaVerdict};
pub use double::{DiracVerdict, DoubleElement, DoubleSubspace};
pub use error::{Error, Result};
pub use isotropic::{decompose_l, ContainsPVerdict, IntegrabilityVerdict, IsotropicPair};
pub use matrix::Matrix;
pub use parabolic::Grading;
pub use scalar::{Field, GaussianRational, Rational};
pub use search::{classify, epsilon_space, ClassificationResult, EGenerator, SearchConfig};
pub use subspace::Subspace;
