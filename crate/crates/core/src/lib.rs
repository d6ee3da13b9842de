//! Exact computation of symmetric subrank, border-subrank witnesses, generic
//! subrank bounds and moduli of hypersurface sections.
//!
//! Everything is exact: rationals, prime fields and simple number fields.

pub mod border;
pub mod error;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod linalg;
pub mod moduli;
pub mod parse;
pub mod poly;
pub mod repro;
pub mod subrank;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, DEFAULT_PRIME};
pub use linalg::Matrix;
pub use poly::{Monomial, Poly};
pub use tensor::{
    act, laurent_act, substitute, unit_tensor, unit_tensor_over, LaurentMatrix, LaurentPoly,
    LinMap, SymTensor,
};
