//! Small shared helpers.

/// Format a float with 17 significant digits in scientific notation:
/// round-trips exactly and keeps CSV/JSON output byte-deterministic.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    format!("{x:.16e}")
}
