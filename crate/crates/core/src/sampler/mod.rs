//! Measurement simulation, coupon-collector round counts and the extraction
//! loop.

pub mod coupon;
pub mod extract;
pub mod pipeline;

pub use coupon::{
    monotone_in_d, proof_lower_bounds_hold, required_rounds, see_probability, subset_count, union_bound, UnionBound,
    ROUNDS_CONSTANT,
};
pub use extract::{
    measurement_distribution, run_extraction, sample_subset, ExtractOptions, ExtractionTrace, Extractor,
    MeasurementDistribution, Round, StateBackend,
};
pub use pipeline::{full_pipeline, full_pipeline_with, AttemptLog, AttemptStatus, PipelineOptions, PipelineOutcome};
