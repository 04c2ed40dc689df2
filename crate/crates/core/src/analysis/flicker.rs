use crate::error::{Error, Result};

/// Longest imperceptible intensity-change period (200 Hz).
pub const MFTP_SECONDS: f64 = 5.0e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlickerMetrics {
    pub period_seconds: f64,
    pub switching_frequency_hz: f64,
    /// `period <= MFTP`.
    pub compliant: bool,
}

/// Time spent on the longest run at the given optical clock.
pub fn flicker_metrics(max_run: usize, clock_hz: f64) -> Result<FlickerMetrics> {
    if max_run == 0 {
        return Err(Error::param("max run must be at least 1"));
    }
    if clock_hz <= 0.0 || !clock_hz.is_finite() {
        return Err(Error::param(format!(
            "clock {clock_hz} Hz must be positive"
        )));
    }
    let period_seconds = max_run as f64 / clock_hz;
    Ok(FlickerMetrics {
        period_seconds,
        switching_frequency_hz: 1.0 / period_seconds,
        compliant: period_seconds <= MFTP_SECONDS,
    })
}
