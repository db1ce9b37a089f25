//! Fixed-precision number rendering for the text formats.

/// 17 significant digits in scientific notation; enough to round-trip any f64.
/// Non-finite values render as `null`.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

/// 10 significant digits in scientific notation.
pub fn sig10(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.9e}")
    } else {
        "nan".to_string()
    }
}
