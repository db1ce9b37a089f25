//! Tolerance ledger shared by every module.
//!
//! Published values carry five to six significant digits; the thresholds below
//! keep all of them reproducible while suppressing round-off detections on
//! separable controls.

/// Maximum entry of `|H - H^†|` accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Maximum `|tr ρ - 1|`.
pub const TRACE: f64 = 1e-10;

/// Smallest eigenvalue accepted as non-negative is `-PSD_SLACK`.
pub const PSD_SLACK: f64 = 1e-10;

/// Singular values at or below `RANK_RELATIVE * σ_max` count as zero.
pub const RANK_RELATIVE: f64 = 1e-10;

/// A criterion detects only when its value clears the threshold by this much.
pub const VERDICT: f64 = 1e-9;

/// Negative variance tolerated (and clamped) in the eigenvalue lower bound.
pub const MOMENT_VARIANCE_SLACK: f64 = 1e-12;

/// How the Hankel moment sequence is indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HankelMode {
    /// `(1, r₂, r₃, …)`: the total weight `r₁` normalized to one.
    #[default]
    Normalized,
    /// `(1, r₁, r₂, …)` with the raw `r₁`.
    Raw,
}

impl std::str::FromStr for HankelMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "default" | "normalized" => Ok(HankelMode::Normalized),
            "raw" => Ok(HankelMode::Raw),
            other => Err(crate::Error::input(format!(
                "unknown hankel mode '{other}' (expected default|raw)"
            ))),
        }
    }
}

/// Runtime-adjustable thresholds used by the criteria.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rank_rel: f64,
    pub verdict: f64,
    pub hankel_mode: HankelMode,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: RANK_RELATIVE,
            verdict: VERDICT,
            hankel_mode: HankelMode::Normalized,
        }
    }
}
