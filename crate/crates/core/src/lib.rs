//! Verification kernels for a mirror pair: the superpotential of the central
//! torus fiber of a degenerating hypersurface family on one side, the graded
//! coordinate ring of the degenerate hypersurface on the other, and the
//! covering combinatorics connecting them.
//!
//! Identities are decided exactly on Laurent polynomials over big rationals
//! wherever possible; the remaining checks (critical values, jet-map
//! regularity, tangency rigidity) are seeded numerics with pinned
//! tolerances. The `parallel` feature (on by default) fans independent work
//! items out over rayon; results are merged in index order, so outputs are
//! identical with or without it.

pub mod coord_ring;
pub mod disc_numerics;
pub mod exact_poly;
pub mod fs_combinatorics;
pub mod linalg;
pub mod par;
pub mod seeds;
pub mod superpotential;
