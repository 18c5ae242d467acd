//! Exact computer algebra for vertex Lie superalgebras given by a finite
//! formula: defect analysis, the local Lie superalgebra `L(U)`, and the
//! generalized Verma module `V(U)` with its vertex operators.

pub mod check;
pub mod cli;
pub mod error;
pub mod formula;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod presets;
pub mod scalar;
pub mod verma;

pub use error::{Error, Result};
pub use formula::{BasisId, Element, FormulaSpec, Parity};
pub use scalar::Scalar;
