//! Deterministic, bit-reproducible sorting of IEEE-754 floating-point data.
//!
//! Values are ordered by the IEEE-754 totalOrder predicate, so every bit
//! pattern (signed zeros, infinities, NaNs with any payload) has exactly one
//! place in the output. Sorting is a stable merge sort with a fixed split
//! rule and left-first tie breaking; the parallel and external-memory
//! variants are built so that their output is byte-identical to the
//! sequential in-memory sort for every thread count, memory budget and
//! merge fan-in.
//!
//! ```
//! use detsort::{sort, FloatSeq};
//!
//! let input = FloatSeq::from_f64s(&[0.0, -0.0, f64::NAN, 5.0]);
//! let out = sort(&input);
//! let bits: Vec<u64> = out.to_values().iter().map(|v| v.bits()).collect();
//! assert_eq!(bits[0], (-0.0f64).to_bits());
//! assert_eq!(bits[1], 0.0f64.to_bits());
//! assert!(f64::from_bits(bits[3]).is_nan());
//! ```
//!
//! See the crate's `examples/` directory for one runnable program per
//! capability.

pub mod cli;
pub mod datagen;
pub mod error;
pub mod external;
pub mod format;
pub mod metrics;
pub mod parallel;
pub mod repro;
pub mod seq;
pub mod sort;
pub mod total_order;

pub use datagen::{generate, CorpusSpec, Distribution};
pub use error::{Error, Result};
pub use external::{
    external_sort, form_runs, kway_merge, ExternalConfig, ExternalSummary, RunDescriptor,
};
pub use metrics::{
    curved_disorder, inversion_count, permutation_entropy_baseline, residual_tie_entropy,
    CurveSpec, DisorderReport,
};
pub use parallel::{parallel_sort, plan_merge, MergePlan};
pub use repro::{digest_file, digest_sequence, SequenceDigest};
pub use seq::FloatSeq;
pub use sort::{is_sorted, merge, sort, sort_permutation, sort_with_trace, SortTrace, TracePass};
pub use total_order::{
    cmp_total, encode_key, value_equal, FloatValue, RawBits, TotalOrderKey, Width,
};
