//! Variable-precision binary floating arithmetic with precision-doubling
//! Newton kernels, elementary functions, zero finders and cost accounting.

pub mod bigfrac;
pub mod costs;
pub mod elemfun;
pub mod error;
pub mod int;
pub mod mulkernel;
pub mod nat;
pub mod newton;
pub mod zerofind;

pub use bigfrac::{BigFloat, Precision};
pub use costs::{CostLedger, CostModel, OpClass};
pub use error::{Error, Result};
pub use int::Int;
pub use nat::Nat;
