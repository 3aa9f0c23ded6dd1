//! Exact symbolic computation for D=4 N=1 superspace and twistor calculus.
//!
//! The engine works in a bigraded (Grassmann parity x form degree) algebra
//! over the field Q(i, sqrt(2)). Everything is exact: coefficients are
//! Gaussian rationals extended by a formal sqrt(2), expressions carry a
//! factored polynomial denominator, and zero tests are normal-form
//! comparisons with no tolerances.

pub mod conventions;
pub mod error;
pub mod expr;
pub mod generator;
pub mod mono;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod report;
pub mod residue;
pub mod rng;
pub mod scalar;
pub mod section;
pub mod spinor;
pub mod suites;
pub mod superspace;
pub mod transform;
pub mod twistor;

pub use error::Error;
pub use generator::{Family, Generator};
pub use scalar::{Coeff, Gaussian, Rational, SqrtExt};

/// Concrete coefficient field used throughout: Q(i, sqrt(2)).
pub type Scalar = scalar::SqrtExt<scalar::Gaussian<scalar::Rational>>;

/// Expressions over the concrete scalar field.
pub type Expr = expr::SuperExpr<Scalar>;

/// Commutative polynomials in even, form-degree-zero generators.
pub type EvenPoly = poly::Poly<Scalar>;

pub type Result<T> = std::result::Result<T, Error>;
