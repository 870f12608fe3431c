//! Labelled triangulations of discs and the combinatorial fixed-point lemmas
//! checked on them.
//!
//! Parity claims are only meaningful under a boundary condition; the two
//! conditions checked here are Sperner admissibility on a subdivided simplex
//! and antipodal symmetry on the boundary.

mod complex;
mod generate;
mod search;
mod theorem_b;

pub use complex::{Carriers, LabeledComplex, SignedLabelSet, Triangulation};
pub use generate::{generate_disc_triangulation, DiscKind, GeneratedDisc};
pub use search::{
    check_antipodal_labeling, check_sperner_admissible, find_alternating_simplices,
    find_complementary_edges, find_rainbow_cells, find_shashkin_cells, is_alternating, CellCount,
    Labelings, MAX_LABELINGS,
};
pub use theorem_b::{theorem_b_witness, TheoremB, TheoremBOutcome};
