//! Weight-graded chain complexes: homology, good truncation, shifts, cones
//! and connecting homomorphisms.
//!
//! Cohomological objects are stored homologically via `C_m := C^{-m}`.

mod chain;
mod cochain;
mod json;
mod maps;

pub use chain::{homology_of_pair, ChainComplex, Homology, Subcomplex};
pub use cochain::CochainComplex;
pub use json::{parse_slice_key, slice_key, ComplexJson};
pub use maps::{
    cone_and_fiber, cone_sequence, connecting_map, image_subcomplex, mapping_cone,
    pair_sequence_ranks, ChainMap,
};
