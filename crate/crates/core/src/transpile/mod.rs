//! Coupling maps, gate identities, routing and peephole simplification.

mod coupling;
mod rewrites;
mod route;
mod simplify;

pub use coupling::CouplingMap;
pub use rewrites::{
    cz_decomposition, decompose_crz, reverse_cx, swap_decomposition, toffoli_decomposition, zero_controlled_cx,
};
pub use route::{route, validate, Routed, Violation};
pub use simplify::simplify;
