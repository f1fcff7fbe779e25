//! Numeric tolerances used by the geometry kernel and the decision procedures.
//!
//! Every tolerance is fixed here and overridable through `OCTANORM_TOL_*`
//! environment variables (read once via [`Tol::from_env`]).

/// Membership tolerance for "this point lies on the unit sphere".
pub const SPHERE_TOL: f64 = 1e-9;

/// Interval width at which bisection stops.
pub const BISECT_TOL: f64 = 1e-12;

/// Interval width at which golden-section search stops.
pub const GOLDEN_TOL: f64 = 1e-10;

/// Tolerance for the numeric property checkers' defining equalities.
pub const VERDICT_TOL: f64 = 1e-9;

/// Tolerance bundle threaded through operations that need one explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub sphere: f64,
    pub bisect: f64,
    pub golden: f64,
    pub verdict: f64,
}

impl Default for Tol {
    fn default() -> Self {
        Tol {
            sphere: SPHERE_TOL,
            bisect: BISECT_TOL,
            golden: GOLDEN_TOL,
            verdict: VERDICT_TOL,
        }
    }
}

impl Tol {
    /// Defaults overridden by `OCTANORM_TOL_SPHERE`, `OCTANORM_TOL_BISECT`,
    /// `OCTANORM_TOL_GOLDEN`, and `OCTANORM_TOL_VERDICT` when set and parseable.
    pub fn from_env() -> Self {
        let mut t = Tol::default();
        let read = |name: &str| -> Option<f64> {
            std::env::var(name).ok().and_then(|s| s.parse().ok())
        };
        if let Some(v) = read("OCTANORM_TOL_SPHERE") {
            t.sphere = v;
        }
        if let Some(v) = read("OCTANORM_TOL_BISECT") {
            t.bisect = v;
        }
        if let Some(v) = read("OCTANORM_TOL_GOLDEN") {
            t.golden = v;
        }
        if let Some(v) = read("OCTANORM_TOL_VERDICT") {
            t.verdict = v;
        }
        t
    }
}
