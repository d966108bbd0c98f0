//! Totalizations of mixed complexes: negative cyclic, periodic and cyclic
//! homology, their filtrations and the comparisons with de Rham complexes.

mod model;
mod periodic;
mod pipeline;

pub use model::{totalize, Block, CyclicModel, Variant};
pub use periodic::{periodic_model, PeriodicModel};
pub use pipeline::{
    beilinson_pipeline, circle_heart, compare_circle_heart, homology_with_b, hp_pipeline, les_is_exact, BeilinsonPieces,
    CyclicPipeline, HeartComparison, HpReport, PipelineReport,
};
