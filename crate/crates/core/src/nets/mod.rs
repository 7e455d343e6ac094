//! Discretizations of unitary groups: an exact ε-net over single-qubit
//! unitaries and a checkable ε-pseudo-net over `d × d` matrices.
//!
//! Neither net is ever materialized. Elements are addressed by index and
//! produced on demand.

mod pseudo;
mod single;

pub use pseudo::{CheckOutcome, PseudoIndex, PseudoNet};
pub use single::{parametrized_unitary, NetIndex, SingleQubitNet};

#[allow(unused_imports)]
use num_traits::Float;

/// Nearest integer to `t`, ties toward the lower integer.
pub(crate) fn round_half_down(t: f64) -> i64 {
    (t - 0.5).ceil() as i64
}
