pub mod ext;
pub mod ffpoly;
pub mod field;
pub mod flat_limit;
pub mod funcfield;
pub mod groebner;
pub mod matrix;
pub mod mpoly;
pub mod prime;
pub mod rational;
pub mod resultant;
pub mod scalar;
pub mod series;
pub mod subspace;
pub mod upoly;

pub use ext::{ExtensionField, GaloisField};
pub use field::{Field, FiniteField};
pub use funcfield::{RatFn, RationalFunctionField};
pub use groebner::{groebner_basis, GroebnerBasis};
pub use mpoly::{GradedPiece, Monomial, MultiPoly};
pub use prime::PrimeField;
pub use rational::Rationals;
pub use scalar::{DynField, Scalar};
pub use subspace::{subspace_compare, Comparison, Relation, SubspaceBasis};
