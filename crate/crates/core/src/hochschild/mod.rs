//! Normalized Hochschild complexes, Connes' operator, the HKR map and the
//! HKR filtration.

mod complex;
mod hkr;
mod mixed;

pub use complex::{connes_b, degree_cap, hochschild_complex, Hochschild, Tensor};
pub use hkr::{hkr_tower, HkrTower};
pub use mixed::MixedComplex;
