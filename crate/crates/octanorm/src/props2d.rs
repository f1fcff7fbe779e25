//! Decision procedures for positive octahedrality, the positive strong
//! diameter 2 property, their duality, and the diametral-gap window.
//!
//! Positive octahedrality asks for a positive sphere point `(c,d)` that is
//! simultaneously norm-additive with `(1,0)` and `(0,1)`; the positive strong
//! diameter 2 property asks for sphere points `(a,1)` and `(1,b)` whose
//! midpoint stays on the sphere. On polygon-lowered norms both are decided
//! exactly; a numeric route exists for every variant and must agree.

use crate::config::Tol;
use crate::error::{Error, Result};
use crate::norm2d::{AbsNorm2, Polygon2};

/// Which property a verdict speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    PosOctahedral,
    PosSd2p,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    Numeric,
}

/// Outcome of a property check.
///
/// For `PosOctahedral` the witness is the sphere point `(c, d)`; for
/// `PosSd2p` it is the parameter pair `(a, b)` with `(a,1)`, `(1,b)` on the
/// sphere. Exact verdicts carry residual `0`; numeric verdicts report how far
/// the best candidate is from the defining equalities.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub verdict: bool,
    pub witness: Option<(f64, f64)>,
    pub residual: f64,
    pub method: Method,
}

/// Decide positive octahedrality of `(R^2, N)`.
pub fn check_pos_oh(n: &AbsNorm2) -> PropertyVerdict {
    check_pos_oh_with(n, &Tol::default())
}

/// As [`check_pos_oh`], with explicit tolerances for the numeric path.
pub fn check_pos_oh_with(n: &AbsNorm2, tol: &Tol) -> PropertyVerdict {
    match n.as_polygon() {
        Some(poly) => check_pos_oh_exact(&poly),
        None => check_pos_oh_numeric(n, tol),
    }
}

/// Exact path on the polygon carrier.
///
/// A sphere point `w` satisfies `N((1,0) + w) = 2` exactly when it shares a
/// positive norming functional with `(1,0)`, i.e. `w1 + D w2 >= 1` where
/// `D = max{d : N*(1,d) <= 1}`; dually for `(0,1)` with `C = max{c : N*(c,1) <= 1}`.
/// Each condition cuts an interval off one end of the boundary chain, so the
/// property holds iff the two intervals overlap.
fn check_pos_oh_exact(poly: &Polygon2) -> PropertyVerdict {
    const EXACT_SLACK: f64 = 1e-12;
    let dual = poly.polar();
    let big_d = dual.upper_boundary(1.0);
    let big_c = dual.rightmost_at_height(1.0);
    let verts = poly.verts();
    let f_a = |w: (f64, f64)| w.0 + big_d * w.1;
    let f_b = |w: (f64, f64)| big_c * w.0 + w.1;

    // Chain parameter: vertex index plus fraction along the edge. Crossing
    // fractions induced only by the exactness slack are snapped back to the
    // vertex so that witnesses at vertices come out exact.
    let snap = |s: f64| {
        if s < 1e-9 {
            0.0
        } else if s > 1.0 - 1e-9 {
            1.0
        } else {
            s
        }
    };
    let mut t_a = f64::NEG_INFINITY;
    let mut t_b = f64::INFINITY;
    for (i, w) in verts.windows(2).enumerate() {
        if let Some((_, s1)) = clip_above(f_a(w[0]), f_a(w[1]), 1.0 - EXACT_SLACK) {
            t_a = t_a.max(i as f64 + snap(s1));
        }
        if let Some((s0, _)) = clip_above(f_b(w[0]), f_b(w[1]), 1.0 - EXACT_SLACK) {
            t_b = t_b.min(i as f64 + snap(s0));
        }
    }
    debug_assert!(t_a.is_finite() && t_b.is_finite());

    if t_b <= t_a + EXACT_SLACK {
        let witness = chain_point(verts, 0.5 * (t_b + t_a.min(verts.len() as f64 - 1.0)));
        PropertyVerdict {
            property: Property::PosOctahedral,
            verdict: true,
            witness: Some(witness),
            residual: 0.0,
            method: Method::Exact,
        }
    } else {
        PropertyVerdict {
            property: Property::PosOctahedral,
            verdict: false,
            witness: None,
            residual: 0.0,
            method: Method::Exact,
        }
    }
}

/// Numeric path: minimize the worse of the two additivity gaps over the
/// positive sphere arc and accept below the verdict tolerance.
pub fn check_pos_oh_numeric(n: &AbsNorm2, tol: &Tol) -> PropertyVerdict {
    const GRID: usize = 2048;
    let gap = |w: (f64, f64)| -> f64 {
        let g1 = 2.0 - n.eval((1.0 + w.0, w.1)).unwrap();
        let g2 = 2.0 - n.eval((w.0, 1.0 + w.1)).unwrap();
        g1.max(g2)
    };
    let mut cands: Vec<(f64, f64)> = Vec::with_capacity(2 * GRID + 8);
    for i in 0..=GRID {
        let x = i as f64 / GRID as f64;
        cands.push((x, n.upper_boundary(x).unwrap()));
        cands.push((n.rightmost_at_height(x).unwrap(), x));
    }
    if let Some(poly) = n.as_polygon() {
        cands.extend_from_slice(poly.verts());
    }
    let mut best = (f64::INFINITY, (1.0, 0.0));
    for w in cands {
        let g = gap(w);
        if g < best.0 {
            best = (g, w);
        }
    }
    // Local refinement along the upper-boundary chart around the best point.
    let x0 = (best.1 .0 - 1.0 / GRID as f64).max(0.0);
    let x1 = (best.1 .0 + 1.0 / GRID as f64).min(1.0);
    let (xr, neg) = crate::numeric::golden_max(x0, x1, tol.golden, |x| {
        -gap((x, n.upper_boundary(x).unwrap()))
    });
    if -neg < best.0 {
        best = (-neg, (xr, n.upper_boundary(xr).unwrap()));
    }
    let verdict = best.0 <= tol.verdict;
    PropertyVerdict {
        property: Property::PosOctahedral,
        verdict,
        witness: verdict.then_some(best.1),
        residual: best.0.max(0.0),
        method: Method::Numeric,
    }
}

/// Decide the positive strong diameter 2 property of `(R^2, N)`.
pub fn check_pos_sd2p(n: &AbsNorm2) -> PropertyVerdict {
    check_pos_sd2p_with(n, &Tol::default())
}

/// As [`check_pos_sd2p`], with explicit tolerances for the numeric path.
pub fn check_pos_sd2p_with(n: &AbsNorm2, tol: &Tol) -> PropertyVerdict {
    match n.as_polygon() {
        Some(poly) => {
            let a = poly.rightmost_at_height(1.0);
            let b = poly.upper_boundary(1.0);
            let mid = poly.gauge(0.5 * (1.0 + a), 0.5 * (1.0 + b));
            // By monotonicity the midpoint norm is maximal at the extreme
            // admissible pair (a, b), so a single exact evaluation decides:
            // the midpoint is on the sphere iff (a,1) and (1,b) share a face.
            let verdict = mid >= 1.0 - 1e-12;
            PropertyVerdict {
                property: Property::PosSd2p,
                verdict,
                witness: verdict.then_some((a, b)),
                residual: 0.0,
                method: Method::Exact,
            }
        }
        None => check_pos_sd2p_numeric(n, tol),
    }
}

/// Numeric route: boundary pre-images by bisection, then one midpoint norm.
pub fn check_pos_sd2p_numeric(n: &AbsNorm2, tol: &Tol) -> PropertyVerdict {
    let a = n.rightmost_at_height(1.0).unwrap();
    let b = n.upper_boundary(1.0).unwrap();
    let mid = n.eval((0.5 * (1.0 + a), 0.5 * (1.0 + b))).unwrap();
    let verdict = mid >= 1.0 - tol.verdict;
    PropertyVerdict {
        property: Property::PosSd2p,
        verdict,
        witness: verdict.then_some((a, b)),
        residual: (1.0 - mid).max(0.0),
        method: Method::Numeric,
    }
}

/// Consistency of the two checkers across duality.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub sd2p: PropertyVerdict,
    pub oh_of_dual: PropertyVerdict,
    /// When both verdicts are true, how far the octahedrality witness is from
    /// norming the midpoint of the SD2P witness pair.
    pub midpoint_residual: Option<f64>,
    pub consistent: bool,
}

/// Check that `N` has the positive SD2P exactly when `N*` is positively
/// octahedral, and that the octahedrality witness norms the SD2P midpoint.
pub fn check_duality(n: &AbsNorm2) -> DualityReport {
    check_duality_with(n, &Tol::default())
}

pub fn check_duality_with(n: &AbsNorm2, tol: &Tol) -> DualityReport {
    let sd2p = check_pos_sd2p_with(n, tol);
    let oh_of_dual = check_pos_oh_with(&AbsNorm2::dual_of(n.clone()), tol);
    let mut consistent = sd2p.verdict == oh_of_dual.verdict;
    let mut midpoint_residual = None;
    if sd2p.verdict && oh_of_dual.verdict {
        let (a, b) = sd2p.witness.unwrap();
        let (c, d) = oh_of_dual.witness.unwrap();
        let mid = (0.5 * (a + 1.0), 0.5 * (1.0 + b));
        let r = (c * mid.0 + d * mid.1 - 1.0).abs();
        consistent &= r <= 1e-9;
        midpoint_residual = Some(r);
    }
    DualityReport {
        sd2p,
        oh_of_dual,
        midpoint_residual,
        consistent,
    }
}

/// A lambda interval with explicit endpoint inclusion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.closed_lo { x >= self.lo } else { x > self.lo };
        let below = if self.closed_hi { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.closed_lo && self.closed_hi))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.closed_lo { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.closed_hi { ']' } else { ')' }
        )
    }
}

/// Closed-form lambda window for the diametral-gap construction at
/// parameters `(a, b)`.
///
/// Writing `c = 2l + (1-l)a` and `d = 2(1-l) + l b`, the cross term
/// `((1-b)c + (1-a)d)/(1-ab)` is the largest of the three norm terms exactly
/// for `l` in `[lo, hi]`, and it stays strictly below `1 + N(l, 1-l)` exactly
/// for `l < t1` or `l > t2`. The `feasible` set intersects the two, which is
/// where the construction proves the gap; the gap itself is positive on the
/// full strict set `(0, t1) union (t2, 1)` (see [`LambdaWindow::positive_gap_set`]).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaWindow {
    pub lo: f64,
    pub hi: f64,
    pub t1: f64,
    pub t2: f64,
    pub feasible: Vec<Interval>,
}

impl LambdaWindow {
    /// Intervals on which the diametral gap is strictly positive:
    /// `(0, t1) union (t2, 1)`. Outside `[lo, hi]` the norm switches to a
    /// coordinate term and the gap degenerates to `l(1-b)` resp.
    /// `(1-l)(1-a)`, still positive, so the strict set is the exact support
    /// of the gap.
    pub fn positive_gap_set(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        if self.t1 > 0.0 {
            out.push(Interval {
                lo: 0.0,
                hi: self.t1,
                closed_lo: false,
                closed_hi: false,
            });
        }
        if self.t2 < 1.0 {
            out.push(Interval {
                lo: self.t2,
                hi: 1.0,
                closed_lo: false,
                closed_hi: false,
            });
        }
        out
    }

    pub fn feasible_contains(&self, lambda: f64) -> bool {
        self.feasible.iter().any(|iv| iv.contains(lambda))
    }

    pub fn gap_positive_at(&self, lambda: f64) -> bool {
        self.positive_gap_set().iter().any(|iv| iv.contains(lambda))
    }
}

fn check_admissible(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() || !(0.0..1.0).contains(&a) || !(0.0..1.0).contains(&b) {
        return Err(Error::Precondition(format!(
            "parameters must lie in [0,1), got ({a}, {b})"
        )));
    }
    if a == 0.0 && b == 0.0 {
        return Err(Error::Precondition(
            "(0,0) is the max norm and is excluded".into(),
        ));
    }
    Ok(())
}

pub fn lambda_window(a: f64, b: f64) -> Result<LambdaWindow> {
    check_admissible(a, b)?;
    let lo = a / (2.0 + a - a * b);
    let hi = (2.0 - a * b) / (2.0 + b - a * b);
    let t1 = a / (1.0 + a);
    let t2 = 1.0 / (1.0 + b);
    let mut feasible = Vec::new();
    if a > 0.0 {
        feasible.push(Interval {
            lo,
            hi: t1,
            closed_lo: true,
            closed_hi: false,
        });
    }
    if b > 0.0 {
        feasible.push(Interval {
            lo: t2,
            hi,
            closed_lo: false,
            closed_hi: true,
        });
    }
    debug_assert!(feasible.iter().any(|iv| !iv.is_empty()));
    Ok(LambdaWindow {
        lo,
        hi,
        t1,
        t2,
        feasible,
    })
}

/// Diametral gap `1 + N(l, 1-l) - N(2l + (1-l)a, 2(1-l) + l b)` for the
/// parameter norm at `(a, b)`. Positive exactly on the strict set
/// `(0, t1) union (t2, 1)`, and in particular on the feasible window.
pub fn dsd2p_gap(a: f64, b: f64, lambda: f64) -> Result<f64> {
    check_admissible(a, b)?;
    if !(0.0 < lambda && lambda < 1.0) {
        return Err(Error::Precondition(format!(
            "lambda must be in (0,1), got {lambda}"
        )));
    }
    let n = AbsNorm2::param_ab(a, b)?;
    let c = 2.0 * lambda + (1.0 - lambda) * a;
    let d = 2.0 * (1.0 - lambda) + lambda * b;
    Ok(1.0 + n.eval((lambda, 1.0 - lambda))? - n.eval((c, d))?)
}

/// Grid verification of the window's claims.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowReport {
    pub grid: usize,
    /// Mismatches of the cross-term identification against `[lo, hi]`.
    pub max_term_mismatches: usize,
    /// Mismatches of the strict inequality against `l < t1 or l > t2`.
    pub strict_ineq_mismatches: usize,
    /// Sign-of-gap mismatches against the positive-gap set.
    pub gap_sign_mismatches: usize,
    /// Points of the feasible window where the gap failed to be positive.
    pub feasible_gap_failures: usize,
    pub first_mismatch: Option<(f64, &'static str)>,
    pub pass: bool,
}

/// Scan `lambda` over a uniform interior grid and check, away from the
/// closed-form boundary points, that
/// (i) the cross term is the norm's max term iff `l` is in `[lo, hi]`,
/// (ii) the strict inequality holds iff `l < t1` or `l > t2`,
/// (iii) the gap is positive exactly on the strict set, and
/// (iv) the gap is positive everywhere on the feasible window.
pub fn verify_window(a: f64, b: f64, grid: usize) -> Result<WindowReport> {
    let w = lambda_window(a, b)?;
    let n = AbsNorm2::param_ab(a, b)?;
    let guard = 1.0 / grid as f64 + 1e-9;
    let near_boundary = |l: f64, pts: &[f64]| pts.iter().any(|p| (l - p).abs() <= guard);

    let mut report = WindowReport {
        grid,
        max_term_mismatches: 0,
        strict_ineq_mismatches: 0,
        gap_sign_mismatches: 0,
        feasible_gap_failures: 0,
        first_mismatch: None,
        pass: true,
    };
    let note = |report: &mut WindowReport, l: f64, which: &'static str| {
        if report.first_mismatch.is_none() {
            report.first_mismatch = Some((l, which));
        }
        report.pass = false;
    };

    for j in 1..=grid {
        let l = j as f64 / (grid as f64 + 1.0);
        let c = 2.0 * l + (1.0 - l) * a;
        let d = 2.0 * (1.0 - l) + l * b;
        let cross = ((1.0 - b) * c + (1.0 - a) * d) / (1.0 - a * b);
        let n_cd = n.eval((c, d))?;
        let n_l = n.eval((l, 1.0 - l))?;
        let gap = 1.0 + n_l - n_cd;

        if !near_boundary(l, &[w.lo, w.hi]) {
            let cross_is_max = (n_cd - cross).abs() <= 1e-12;
            if cross_is_max != (w.lo <= l && l <= w.hi) {
                report.max_term_mismatches += 1;
                note(&mut report, l, "max-term identification");
            }
        }
        if !near_boundary(l, &[w.t1, w.t2]) {
            let strict = 1.0 + n_l - cross > 1e-12;
            if strict != (l < w.t1 || l > w.t2) {
                report.strict_ineq_mismatches += 1;
                note(&mut report, l, "strict inequality");
            }
            let positive = gap > 1e-12;
            if positive != w.gap_positive_at(l) {
                report.gap_sign_mismatches += 1;
                note(&mut report, l, "gap sign");
            }
        }
        if w.feasible_contains(l) && !near_boundary(l, &[w.lo, w.hi, w.t1, w.t2]) && gap <= 1e-12 {
            report.feasible_gap_failures += 1;
            note(&mut report, l, "feasible gap");
        }
    }
    Ok(report)
}

/// Sub-interval of an edge (as fractions of the edge) where a linear value
/// stays at or above `thr`, given the endpoint values.
fn clip_above(v0: f64, v1: f64, thr: f64) -> Option<(f64, f64)> {
    let in0 = v0 >= thr;
    let in1 = v1 >= thr;
    match (in0, in1) {
        (true, true) => Some((0.0, 1.0)),
        (false, false) => None,
        _ => {
            let s = (thr - v0) / (v1 - v0);
            if in0 {
                Some((0.0, s))
            } else {
                Some((s, 1.0))
            }
        }
    }
}

fn chain_point(verts: &[(f64, f64)], t: f64) -> (f64, f64) {
    let max_t = (verts.len() - 1) as f64;
    let t = t.clamp(0.0, max_t);
    let i = (t.floor() as usize).min(verts.len() - 2);
    let s = t - i as f64;
    let (x0, y0) = verts[i];
    let (x1, y1) = verts[i + 1];
    (x0 + s * (x1 - x0), y0 + s * (y1 - y0))
}
