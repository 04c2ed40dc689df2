//! Analytic predictions and frame statistics.

mod complexity;
mod fer;
mod flicker;
mod runs;

pub use complexity::{op_count, table1_mapping, ComplexityRow, APP_4B6B_OPS_PER_BLOCK};
pub use fer::{
    predict_fer_sc, predict_fer_scheme, predict_scheme_curve, predictions_to_csv,
    success_probability, FerPrediction,
};
pub use flicker::{flicker_metrics, FlickerMetrics, MFTP_SECONDS};
pub use runs::{
    failure_curve_to_csv, max_run, rll_failure_curve, rll_failure_rate, run_length_histogram,
    run_lengths, FailureRate, RunLengthHistogram,
};
