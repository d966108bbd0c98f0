//! Strict filtered complexes, the Beilinson t-structure and spectral sequences.

mod bifiltered;
mod heart;
mod spectral;
mod tower;

pub use bifiltered::BifilteredComplex;
pub use heart::{induced_heart_map, Heart};
pub use spectral::SpectralPage;
pub use tower::{CompletenessReport, FilteredComplex, GradedPiece, NEquivalenceReport};
