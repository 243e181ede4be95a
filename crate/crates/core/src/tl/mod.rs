//! Temperley-Lieb diagrams and algebra, Jones-Wenzl projectors and closed
//! network evaluation.

mod diagram;
mod element;
mod jones_wenzl;
mod network;

pub use diagram::TlDiagram;
pub use element::{TlAlgebra, TlElement};
pub use jones_wenzl::{jones_wenzl, loop_dimensions, JonesWenzl};
pub use network::{evaluate_at, evaluate_closed_network, evaluate_with_cap, is_admissible, End, HalfEdge, Network};
