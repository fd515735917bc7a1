use std::sync::atomic::{AtomicU64, Ordering};

/// Environment variable overriding the geometric tolerance.
pub const TOLERANCE_ENV: &str = "HF_TOLERANCE";

const DEFAULT: f64 = 1e-9;
const UNSET: u64 = u64::MAX;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(UNSET);

/// Incidence and angle tolerance. Read once from `HF_TOLERANCE` unless set
/// explicitly.
pub fn geom_tolerance() -> f64 {
    let bits = TOLERANCE_BITS.load(Ordering::Relaxed);
    if bits != UNSET {
        return f64::from_bits(bits);
    }
    let value = std::env::var(TOLERANCE_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(DEFAULT);
    TOLERANCE_BITS.store(value.to_bits(), Ordering::Relaxed);
    value
}

/// Overrides the tolerance for the rest of the process. Non-positive or
/// non-finite values are ignored.
pub fn set_geom_tolerance(value: f64) {
    if value.is_finite() && value > 0.0 {
        TOLERANCE_BITS.store(value.to_bits(), Ordering::Relaxed);
    }
}
