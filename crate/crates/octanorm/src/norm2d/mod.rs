//! Absolute normalized norms on R2: evaluation, duality, norming
//! functionals, subdifferentials, and extreme-point diagnostics.
//!
//! A norm `N` here is always absolute (`N(a,b) = N(|a|,|b|)`) and normalized
//! (`N(1,0) = N(0,1) = 1`), which pins it between the sup norm and the sum
//! norm and makes it monotone in each coordinate. The polygon representation
//! is the canonical exact carrier; the closed-form families serve as fast
//! paths and cross-checks.

pub(crate) mod parse;
mod polygon;

pub use parse::parse_norm;
pub(crate) use polygon::merge_collinear_cycle;
pub use polygon::Polygon2;

use crate::config::{BISECT_TOL, GOLDEN_TOL, SPHERE_TOL};
use crate::error::{Error, Result};
use crate::numeric::{bisect_largest_true, golden_max};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A positive functional on R2, written `(c, d)` acting as `c x + d y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Functional2 {
    pub c: f64,
    pub d: f64,
}

impl Functional2 {
    pub fn new(c: f64, d: f64) -> Self {
        Functional2 { c, d }
    }

    pub fn apply(&self, v: (f64, f64)) -> f64 {
        self.c * v.0 + self.d * v.1
    }
}

/// Tie-break rule for non-unique norming functionals.
///
/// The supporting functionals at a sphere point form a segment of the dual
/// sphere; the rule picks one endpoint deterministically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Lexicographically smallest `(c, d)`.
    #[default]
    LexMin,
    /// Lexicographically largest `(c, d)`.
    LexMax,
}

/// An absolute normalized norm on R2.
#[derive(Debug, Clone, PartialEq)]
pub enum AbsNorm2 {
    /// The p-norm for `p` in `[1, inf]`; `f64::INFINITY` is the max norm.
    Lp(f64),
    /// The two-parameter family `max{|x|, |y|, ((1-b)|x| + (1-a)|y|)/(1-ab)}`
    /// with `a, b` in `[0,1)`, not both zero. Its unit ball is the polygon
    /// with first-quadrant vertices `(1,0), (1,b), (a,1), (0,1)`.
    ParamAB { a: f64, b: f64 },
    /// Polygon gauge norm.
    Polygon(Polygon2),
    /// Dual of another absolute normalized norm.
    DualOf(Box<AbsNorm2>),
}

/// Exact lowering of a norm: every variant reduces to a p-norm or a polygon.
/// Dual layers resolve by conjugating the exponent or taking the polar.
#[derive(Debug, Clone)]
pub(crate) enum Resolved {
    Lp(f64),
    Poly(Polygon2),
}

fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

impl AbsNorm2 {
    pub fn lp(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("p must be in [1, inf], got {p}")));
        }
        Ok(AbsNorm2::Lp(p))
    }

    /// The `ParamAB` family. `(0, 0)` is rejected: that degenerate case is the
    /// max norm, reachable as `lp(inf)`.
    pub fn param_ab(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || !(0.0..1.0).contains(&a) || !(0.0..1.0).contains(&b)
        {
            return Err(Error::Domain(format!(
                "parameters must lie in [0,1), got ({a}, {b})"
            )));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::Domain(
                "(0, 0) is the max norm; use lp:inf instead".into(),
            ));
        }
        Ok(AbsNorm2::ParamAB { a, b })
    }

    pub fn polygon(poly: Polygon2) -> Self {
        AbsNorm2::Polygon(poly)
    }

    pub fn dual_of(base: AbsNorm2) -> Self {
        AbsNorm2::DualOf(Box::new(base))
    }

    /// Unit ball polygon of the `ParamAB` family, degenerate vertices omitted.
    fn param_polygon(a: f64, b: f64) -> Polygon2 {
        let mut verts = vec![(1.0, 0.0)];
        if b > 0.0 {
            verts.push((1.0, b));
        }
        if a > 0.0 {
            verts.push((a, 1.0));
        }
        verts.push((0.0, 1.0));
        Polygon2::new(verts).expect("ParamAB polygon is valid by construction")
    }

    pub(crate) fn resolve(&self) -> Resolved {
        match self {
            AbsNorm2::Lp(p) => Resolved::Lp(*p),
            AbsNorm2::ParamAB { a, b } => Resolved::Poly(Self::param_polygon(*a, *b)),
            AbsNorm2::Polygon(poly) => Resolved::Poly(poly.clone()),
            AbsNorm2::DualOf(base) => match base.resolve() {
                Resolved::Lp(p) => Resolved::Lp(conjugate_exponent(p)),
                Resolved::Poly(poly) => Resolved::Poly(poly.polar()),
            },
        }
    }

    /// Polygon carrier of the unit ball, when one exists. The p-norms for
    /// `p` in `(1, inf)` have none.
    pub fn as_polygon(&self) -> Option<Polygon2> {
        match self.resolve() {
            Resolved::Poly(poly) => Some(poly),
            Resolved::Lp(p) => {
                if p == 1.0 {
                    Some(Polygon2::new(vec![(1.0, 0.0), (0.0, 1.0)]).unwrap())
                } else if p.is_infinite() {
                    Some(Polygon2::new(vec![(1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap())
                } else {
                    None
                }
            }
        }
    }

    /// Norm of `v`.
    pub fn eval(&self, v: (f64, f64)) -> Result<f64> {
        if !v.0.is_finite() || !v.1.is_finite() {
            return Err(Error::Domain(format!(
                "norm argument must be finite, got ({}, {})",
                v.0, v.1
            )));
        }
        Ok(self.eval_abs(v.0.abs(), v.1.abs()))
    }

    /// Norm at non-negative finite coordinates; the workhorse behind `eval`.
    pub(crate) fn eval_abs(&self, a: f64, b: f64) -> f64 {
        match self {
            AbsNorm2::Lp(p) => lp_norm(*p, a, b),
            AbsNorm2::ParamAB { a: pa, b: pb } => {
                let third = ((1.0 - pb) * a + (1.0 - pa) * b) / (1.0 - pa * pb);
                a.max(b).max(third)
            }
            AbsNorm2::Polygon(poly) => poly.gauge(a, b),
            AbsNorm2::DualOf(base) => base.dual_eval_abs(a, b),
        }
    }

    /// Dual norm of the functional `f`: `max { |x f.0| + |y f.1| : N(x,y) <= 1 }`.
    ///
    /// Exact for p-norms (conjugate exponent) and polygon-lowered variants
    /// (maximum over sphere vertices). A dual-of-dual layer falls back to
    /// golden-section maximization of the concave boundary parametrization.
    pub fn dual_eval(&self, f: (f64, f64)) -> Result<f64> {
        if !f.0.is_finite() || !f.1.is_finite() {
            return Err(Error::Domain(format!(
                "functional must be finite, got ({}, {})",
                f.0, f.1
            )));
        }
        Ok(self.dual_eval_abs(f.0.abs(), f.1.abs()))
    }

    pub(crate) fn dual_eval_abs(&self, c: f64, d: f64) -> f64 {
        match self {
            AbsNorm2::Lp(p) => lp_norm(conjugate_exponent(*p), c, d),
            AbsNorm2::ParamAB { a, b } => {
                // Sphere vertices of the ParamAB ball.
                (c).max(c + b * d).max(a * c + d).max(d)
            }
            AbsNorm2::Polygon(poly) => poly
                .verts()
                .iter()
                .map(|&(x, y)| x * c + y * d)
                .fold(0.0, f64::max),
            AbsNorm2::DualOf(_) => {
                if c == 0.0 && d == 0.0 {
                    return 0.0;
                }
                golden_max(0.0, 1.0, GOLDEN_TOL, |x| {
                    x * c + self.upper_boundary_abs(x) * d
                })
                .1
            }
        }
    }

    /// Independent numeric route for the dual norm: bisection for the sphere
    /// boundary plus golden-section search, regardless of variant. Used to
    /// cross-check the exact paths.
    pub fn dual_eval_numeric(&self, f: (f64, f64)) -> Result<f64> {
        if !f.0.is_finite() || !f.1.is_finite() {
            return Err(Error::Domain("functional must be finite".into()));
        }
        let (c, d) = (f.0.abs(), f.1.abs());
        if c == 0.0 && d == 0.0 {
            return Ok(0.0);
        }
        let ub = |x: f64| bisect_largest_true(0.0, 1.0, BISECT_TOL, |y| self.eval_abs(x, y) <= 1.0);
        Ok(golden_max(0.0, 1.0, GOLDEN_TOL, |x| x * c + ub(x) * d).1)
    }

    /// Largest `b >= 0` with `N(a, b) <= 1`, for `a` in `[0, 1]`.
    pub fn upper_boundary(&self, a: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&a) {
            return Err(Error::Domain(format!("abscissa must be in [0,1], got {a}")));
        }
        Ok(self.upper_boundary_abs(a))
    }

    fn upper_boundary_abs(&self, x: f64) -> f64 {
        match self {
            AbsNorm2::Lp(p) => {
                if p.is_infinite() {
                    1.0
                } else if *p == 1.0 {
                    1.0 - x
                } else {
                    (1.0 - x.powf(*p)).max(0.0).powf(1.0 / *p)
                }
            }
            AbsNorm2::ParamAB { a, b } => {
                ((1.0 - a * b - (1.0 - b) * x) / (1.0 - a)).min(1.0)
            }
            AbsNorm2::Polygon(poly) => poly.upper_boundary(x),
            AbsNorm2::DualOf(_) => {
                bisect_largest_true(0.0, 1.0, BISECT_TOL, |y| self.eval_abs(x, y) <= 1.0)
            }
        }
    }

    /// Largest `a >= 0` with `N(a, b) <= 1`, for `b` in `[0, 1]`; the mirror
    /// of `upper_boundary`.
    pub fn rightmost_at_height(&self, b: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&b) {
            return Err(Error::Domain(format!("height must be in [0,1], got {b}")));
        }
        Ok(match self {
            AbsNorm2::Lp(_) => self.upper_boundary_abs(b),
            AbsNorm2::ParamAB { a, b: pb } => {
                ((1.0 - a * pb - (1.0 - a) * b) / (1.0 - pb)).min(1.0)
            }
            AbsNorm2::Polygon(poly) => poly.rightmost_at_height(b),
            AbsNorm2::DualOf(_) => {
                bisect_largest_true(0.0, 1.0, BISECT_TOL, |x| self.eval_abs(x, b) <= 1.0)
            }
        })
    }

    /// Extreme points of the positive supporting face at `v >= 0`, `v != 0`:
    /// the set `{ f >= 0 : N*(f) = 1, f(v) = N(v) }` is a point or a segment
    /// of the dual sphere; this returns its endpoint(s), sorted
    /// lexicographically. One element at smooth points, two at kinks.
    pub fn subdiff(&self, v: (f64, f64)) -> Result<Vec<Functional2>> {
        if !v.0.is_finite() || !v.1.is_finite() || v.0 < 0.0 || v.1 < 0.0 {
            return Err(Error::Precondition(format!(
                "subdifferential wants non-negative coordinates, got ({}, {})",
                v.0, v.1
            )));
        }
        if v.0 == 0.0 && v.1 == 0.0 {
            return Err(Error::Precondition(
                "subdifferential at the origin is the whole dual ball".into(),
            ));
        }
        match self.resolve() {
            Resolved::Lp(p) => Ok(lp_subdiff(p, v)),
            Resolved::Poly(poly) => Ok(polygon_subdiff(&poly, v)),
        }
    }

    /// A norming functional at a sphere point `v >= 0`: `N*(f) = 1` and
    /// `f(v) = 1`. Where the choice is non-unique the tie-break rule picks a
    /// deterministic endpoint of the supporting face.
    pub fn norming_functional(&self, v: (f64, f64), tie: TieBreak) -> Result<Functional2> {
        let n = self.eval(v)?;
        if (n - 1.0).abs() > SPHERE_TOL {
            return Err(Error::Precondition(format!(
                "norming functional wants a unit vector, got norm {n}"
            )));
        }
        if v.0 < 0.0 || v.1 < 0.0 {
            return Err(Error::Precondition(
                "norming functional wants a positive vector".into(),
            ));
        }
        let extremes = self.subdiff(v)?;
        Ok(match tie {
            TieBreak::LexMin => extremes[0],
            TieBreak::LexMax => *extremes.last().unwrap(),
        })
    }

    /// Whether `(1, 0)` is an extreme point of the unit ball, i.e. there is
    /// no `b > 0` with `N(1, b) = 1`. Decided exactly on the resolved form.
    pub fn is_e1_extreme(&self) -> bool {
        match self.resolve() {
            Resolved::Lp(p) => !p.is_infinite(),
            Resolved::Poly(poly) => poly.verts()[1].0 < 1.0,
        }
    }

    /// Strong-exposedness modulus of `(1, 0)`: the largest `gamma` such that
    /// `N(a, b) <= 1` and `a > 1 - gamma` force `|b| < eps`. Equals one minus
    /// the rightmost abscissa of the ball at height `eps`.
    pub fn exposedness_modulus(&self, eps: f64) -> Result<f64> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Domain(format!("eps must be in (0,1], got {eps}")));
        }
        if !self.is_e1_extreme() {
            return Err(Error::Precondition(
                "(1,0) is not an extreme point; no exposedness modulus exists".into(),
            ));
        }
        Ok(1.0 - self.rightmost_at_height(eps)?)
    }

    /// Largest `gamma` with `max(|x|,|y|) >= gamma * N(x,y)` for all `(x,y)`,
    /// namely `1 / N(1,1)`: monotonicity gives `N(x,y) <= N(1,1) max(|x|,|y|)`
    /// with equality at `(1,1)`.
    pub fn gamma_inf(&self) -> f64 {
        1.0 / self.eval_abs(1.0, 1.0)
    }

    /// Property-check the norm axioms on random samples; returns the worst
    /// violation per property rather than failing fast.
    pub fn validate(&self, samples: usize, seed: u64) -> ValidationReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut normalization = (self.eval_abs(1.0, 0.0) - 1.0)
            .abs()
            .max((self.eval_abs(0.0, 1.0) - 1.0).abs());
        normalization = normalization.max((self.eval_abs(0.0, 0.0)).abs());
        let mut absoluteness = 0.0f64;
        let mut monotonicity = 0.0f64;
        let mut triangle = 0.0f64;
        let mut sandwich = 0.0f64;
        for _ in 0..samples {
            let x: f64 = rng.gen_range(-2.0..2.0);
            let y: f64 = rng.gen_range(-2.0..2.0);
            let n = self.eval((x, y)).unwrap();
            for flip in [(-x, y), (x, -y), (-x, -y)] {
                absoluteness = absoluteness.max((self.eval(flip).unwrap() - n).abs());
            }
            // A dominating pair: scale each coordinate up independently.
            let cx = x * rng.gen_range(1.0..2.0);
            let cy = y * rng.gen_range(1.0..2.0);
            monotonicity = monotonicity.max(n - self.eval((cx, cy)).unwrap());
            let u: f64 = rng.gen_range(-2.0..2.0);
            let w: f64 = rng.gen_range(-2.0..2.0);
            triangle = triangle.max(
                self.eval((x + u, y + w)).unwrap() - n - self.eval((u, w)).unwrap(),
            );
            sandwich = sandwich
                .max(x.abs().max(y.abs()) - n)
                .max(n - (x.abs() + y.abs()));
        }
        let checks = vec![
            PropertyCheck::new("normalization", normalization),
            PropertyCheck::new("absoluteness", absoluteness),
            PropertyCheck::new("monotonicity", monotonicity),
            PropertyCheck::new("triangle", triangle),
            PropertyCheck::new("sandwich", sandwich),
        ];
        let pass = checks.iter().all(|c| c.pass);
        ValidationReport { checks, pass }
    }
}

fn lp_norm(p: f64, a: f64, b: f64) -> f64 {
    if p.is_infinite() {
        a.max(b)
    } else if p == 1.0 {
        a + b
    } else if p == 2.0 {
        a.hypot(b)
    } else {
        (a.powf(p) + b.powf(p)).powf(1.0 / p)
    }
}

fn lp_subdiff(p: f64, v: (f64, f64)) -> Vec<Functional2> {
    const REL_TIE: f64 = 1e-12;
    if p == 1.0 {
        if v.0 > 0.0 && v.1 > 0.0 {
            vec![Functional2::new(1.0, 1.0)]
        } else if v.1 == 0.0 {
            vec![Functional2::new(1.0, 0.0), Functional2::new(1.0, 1.0)]
        } else {
            vec![Functional2::new(0.0, 1.0), Functional2::new(1.0, 1.0)]
        }
    } else if p.is_infinite() {
        let m = v.0.max(v.1);
        let tie = (v.0 - v.1).abs() <= REL_TIE * m;
        if tie {
            vec![Functional2::new(0.0, 1.0), Functional2::new(1.0, 0.0)]
        } else if v.0 > v.1 {
            vec![Functional2::new(1.0, 0.0)]
        } else {
            vec![Functional2::new(0.0, 1.0)]
        }
    } else {
        let n = lp_norm(p, v.0, v.1);
        let scale = n.powf(p - 1.0);
        vec![Functional2::new(
            v.0.powf(p - 1.0) / scale,
            v.1.powf(p - 1.0) / scale,
        )]
    }
}

fn polygon_subdiff(poly: &Polygon2, v: (f64, f64)) -> Vec<Functional2> {
    let n = poly.gauge(v.0, v.1);
    let u = (v.0 / n, v.1 / n);
    let mut cands: Vec<Functional2> = Vec::with_capacity(3);
    // Active edges at the boundary point, plus the axis functionals when the
    // point sits on an axis (the positive face then reaches down to them).
    for f in poly.edge_functionals() {
        if f.apply(u) >= 1.0 - SPHERE_TOL {
            cands.push(*f);
        }
    }
    if u.0 >= 1.0 - SPHERE_TOL {
        cands.push(Functional2::new(1.0, 0.0));
    }
    if u.1 >= 1.0 - SPHERE_TOL {
        cands.push(Functional2::new(0.0, 1.0));
    }
    cands.sort_by(|a, b| {
        (a.c, a.d)
            .partial_cmp(&(b.c, b.d))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    cands.dedup_by(|a, b| (a.c - b.c).abs() <= 1e-12 && (a.d - b.d).abs() <= 1e-12);
    if cands.len() > 2 {
        // Numerically fused vertices can activate three edges; the face's
        // extremes are the lexicographic ends.
        cands = vec![cands[0], *cands.last().unwrap()];
    }
    cands
}

/// Result of one property check inside [`AbsNorm2::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub worst_violation: f64,
    pub pass: bool,
}

impl PropertyCheck {
    fn new(name: &'static str, worst: f64) -> Self {
        PropertyCheck {
            name,
            worst_violation: worst.max(0.0),
            pass: worst <= SPHERE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<PropertyCheck>,
    pub pass: bool,
}
