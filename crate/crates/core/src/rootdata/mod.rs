//! Classical root systems, weights and Weyl group orbits.

mod classify;
mod orbit;
mod spec;
mod system;
mod weight;

pub use classify::{cartan_matrix, classify, weyl_group_order};
pub use orbit::{weyl_orbit_signed, SignedOrbit, SignedOrbitPoint};
pub use spec::{AlgebraSpec, Series};
pub use system::{weyl_dimension, RootSystem};
pub use weight::Weight;
