//! Exact integer-lattice algebra: Smith normal form, finite quotients of
//! full-rank lattices, induced homomorphisms, fibers and `Q/Z` pairings.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{block_quotient, Element, FinAbGroup, FinAbHom, Quotient};
pub use lattice::{
    duality_pairing, index_by_covolume, induced_hom, lattice_quotient, rational_inverse, Lattice,
    LatticeQuotient, PairingTable, QMatrix,
};
pub use matrix::IntMatrix;
pub use snf::{smith_decompose, Smith};
