pub mod algebra;
pub mod ar;
pub mod builtin;
pub mod canonical;
pub mod error;
pub mod field;
pub mod fp;
pub mod linalg;
pub mod quiver;
pub mod repr;
pub mod spectral;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use field::{Field, FieldChoice, Fp, Rational};
pub use linalg::{Matrix, Polynomial};
pub use quiver::{parse_spec, BoundQuiverSpec, Quiver};
pub use repr::Representation;
