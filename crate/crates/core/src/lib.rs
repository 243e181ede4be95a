//! Knot invariants from braids: the bracket polynomial, Temperley-Lieb
//! recoupling theory at roots of unity, and the unitary braid
//! representations built from it.

pub mod bracket;
#[cfg(feature = "cli")]
pub mod cli;
pub mod braid;
pub mod error;
pub mod fib;
pub mod qsim;
pub mod recoupling;
pub mod rep;
pub mod scalars;
pub mod su2;
pub mod tl;

pub use braid::{BraidWord, Closure, Letter, Move};
pub use error::{Error, Result};
pub use scalars::{Complex64, LaurentPoly, Quaternion, RationalFn};
