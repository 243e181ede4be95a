//! Simulated quantum evaluation of invariants.

mod hadamard;
mod plat;
mod three_strand;

pub use hadamard::{hadamard_test, hadamard_trace, HadamardEstimate, Part, TraceEstimate, SHOT_CHUNKS};
pub use plat::{colored_bracket_plat, colored_bracket_plat_fib, plat_vacuum, vacuum_amplitude, wrt_invariant};
pub use three_strand::ThreeStrandRep;
