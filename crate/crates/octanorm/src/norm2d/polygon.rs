//! Symmetric convex polygon norms, represented by their first-quadrant
//! boundary chain.
//!
//! A [`Polygon2`] stores the vertices of the unit sphere's first-quadrant arc,
//! ordered from `(1,0)` to `(0,1)`. The full unit ball is the symmetric
//! closure under coordinate reflections, so this chain carries the whole norm.
//! All exact paths in the crate (gauge evaluation, polarity, boundary
//! queries, face bookkeeping) run on this representation.

use crate::error::{Error, Result};
use crate::norm2d::Functional2;

/// Tolerance for merging duplicate/collinear vertices during canonicalization.
const CANON_TOL: f64 = 1e-12;

/// First-quadrant boundary chain of a symmetric convex unit ball.
///
/// Invariants (enforced by [`Polygon2::new`]):
/// - first vertex `(1,0)`, last vertex `(0,1)`;
/// - x non-increasing and y non-decreasing along the chain;
/// - consecutive edges turn strictly left (collinear triples are merged);
/// - every vertex is a genuine extreme point of the induced ball.
#[derive(Debug, Clone)]
pub struct Polygon2 {
    verts: Vec<(f64, f64)>,
    funcs: Vec<Functional2>,
}

impl PartialEq for Polygon2 {
    fn eq(&self, other: &Self) -> bool {
        self.verts == other.verts
    }
}

impl Polygon2 {
    /// Canonicalize and validate a first-quadrant vertex chain.
    pub fn new(verts: Vec<(f64, f64)>) -> Result<Self> {
        for &(x, y) in &verts {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::Domain("polygon vertex is not finite".into()));
            }
            if x < -CANON_TOL || y < -CANON_TOL {
                return Err(Error::Validation(format!(
                    "polygon vertex ({x}, {y}) leaves the first quadrant"
                )));
            }
        }
        if verts.len() < 2 {
            return Err(Error::Validation(
                "polygon needs at least the two axis vertices".into(),
            ));
        }

        let mut v = verts;
        // Snap the axis endpoints so downstream arithmetic stays exact.
        let first = v.first_mut().unwrap();
        if (first.0 - 1.0).abs() > CANON_TOL || first.1.abs() > CANON_TOL {
            return Err(Error::Validation(format!(
                "polygon must start at (1,0), got ({}, {})",
                first.0, first.1
            )));
        }
        *first = (1.0, 0.0);
        let last = v.last_mut().unwrap();
        if last.0.abs() > CANON_TOL || (last.1 - 1.0).abs() > CANON_TOL {
            return Err(Error::Validation(format!(
                "polygon must end at (0,1), got ({}, {})",
                last.0, last.1
            )));
        }
        *last = (0.0, 1.0);

        // Drop near-duplicate neighbours, then merge collinear triples.
        v.dedup_by(|a, b| (a.0 - b.0).abs() <= CANON_TOL && (a.1 - b.1).abs() <= CANON_TOL);
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for p in v {
            while out.len() >= 2 {
                let a = out[out.len() - 2];
                let b = out[out.len() - 1];
                if cross(a, b, p).abs() <= CANON_TOL {
                    out.pop();
                } else {
                    break;
                }
            }
            out.push(p);
        }

        // Monotone boundary and strict left turns.
        for w in out.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.0 > a.0 + CANON_TOL {
                return Err(Error::Validation(format!(
                    "x must be non-increasing along the chain ({} -> {})",
                    a.0, b.0
                )));
            }
            if b.1 < a.1 - CANON_TOL {
                return Err(Error::Validation(format!(
                    "y must be non-decreasing along the chain ({} -> {})",
                    a.1, b.1
                )));
            }
        }
        for w in out.windows(3) {
            if cross(w[0], w[1], w[2]) <= CANON_TOL {
                return Err(Error::Validation(format!(
                    "chain is not strictly convex at ({}, {})",
                    w[1].0, w[1].1
                )));
            }
        }
        let funcs = compute_edge_functionals(&out)?;
        Ok(Polygon2 { verts: out, funcs })
    }

    /// Convex hull of `points` together with the axis vertices, as a norm ball.
    ///
    /// Points dominated by the rest are swallowed by the hull, so arbitrary
    /// samples in the first quadrant yield a valid ball.
    pub fn hull_of(points: &[(f64, f64)]) -> Result<Self> {
        let mut pts: Vec<(f64, f64)> = vec![(1.0, 0.0), (0.0, 1.0)];
        pts.extend_from_slice(points);
        // Upper-right hull: sort by x descending (ties y ascending) and keep
        // left turns only; this is the monotone chain from (1,0) to (0,1).
        pts.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
        });
        let mut chain: Vec<(f64, f64)> = Vec::new();
        for p in pts {
            if !p.0.is_finite() || !p.1.is_finite() || p.0 < 0.0 || p.1 < 0.0 {
                return Err(Error::Domain("hull point outside first quadrant".into()));
            }
            while chain.len() >= 2 {
                let a = chain[chain.len() - 2];
                let b = chain[chain.len() - 1];
                if cross(a, b, p) <= CANON_TOL {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(p);
        }
        Polygon2::new(chain)
    }

    pub fn verts(&self) -> &[(f64, f64)] {
        &self.verts
    }

    /// Supporting functionals of the chain's edges, in order. Edge `i` runs
    /// from vertex `i` to vertex `i+1` and lies on `{(x,y): c x + d y = 1}`.
    pub fn edge_functionals(&self) -> &[Functional2] {
        &self.funcs
    }

    /// Gauge of the induced absolute norm at `(a, b) >= 0`: the maximum of the
    /// edge functionals, which is exactly the Minkowski functional of the ball.
    pub fn gauge(&self, a: f64, b: f64) -> f64 {
        if a == 0.0 && b == 0.0 {
            return 0.0;
        }
        self.funcs
            .iter()
            .map(|f| f.c * a + f.d * b)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest `y` with `(x, y)` in the ball, exact by edge interpolation.
    ///
    /// Defined for `x` in `[0, 1]`.
    pub fn upper_boundary(&self, x: f64) -> f64 {
        debug_assert!((0.0..=1.0 + 1e-15).contains(&x));
        // Vertical segment at x = 1: report its top.
        if x >= 1.0 {
            let mut top = 0.0f64;
            for &(vx, vy) in &self.verts {
                if vx == 1.0 {
                    top = top.max(vy);
                }
            }
            return top;
        }
        for w in self.verts.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if x1 <= x && x <= x0 && x0 > x1 {
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
            }
        }
        // x below the final vertex's abscissa only happens at x ~ 0.
        1.0
    }

    /// Largest `x` with `(x, y)` in the ball (the mirror of `upper_boundary`).
    pub fn rightmost_at_height(&self, y: f64) -> f64 {
        debug_assert!((0.0..=1.0 + 1e-15).contains(&y));
        if y >= 1.0 {
            let mut right = 0.0f64;
            for &(vx, vy) in &self.verts {
                if vy == 1.0 {
                    right = right.max(vx);
                }
            }
            return right;
        }
        for w in self.verts.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            if y0 <= y && y <= y1 && y1 > y0 {
                return x0 + (x1 - x0) * (y - y0) / (y1 - y0);
            }
        }
        1.0
    }

    /// Polar (dual) ball: each edge's supporting functional becomes a dual
    /// vertex; the axis vertices close the chain. Polarity swaps edges and
    /// vertices, and applying it twice returns the original chain.
    pub fn polar(&self) -> Polygon2 {
        let mut verts = vec![(1.0, 0.0)];
        verts.extend(self.edge_functionals().iter().map(|f| (f.c, f.d)));
        verts.push((0.0, 1.0));
        Polygon2::new(verts).expect("polar of a valid polygon is valid")
    }

    /// Vertices of the full symmetric ball, counter-clockwise. Seam points
    /// that end up inside an edge (e.g. `(1,0)` on a vertical edge) are merged
    /// away, so the result is a canonical convex polygon.
    pub fn full_vertices(&self) -> Vec<(f64, f64)> {
        let q1 = &self.verts;
        let mut full: Vec<(f64, f64)> = Vec::with_capacity(4 * q1.len());
        full.extend(q1.iter().copied());
        full.extend(q1.iter().rev().skip(1).map(|&(x, y)| (-x, y)));
        full.extend(q1.iter().skip(1).map(|&(x, y)| (-x, -y)));
        full.extend(q1.iter().rev().skip(1).map(|&(x, y)| (x, -y)));
        full.pop(); // (1, 0) duplicated as the cycle closes
        merge_collinear_cycle(full)
    }
}

/// Cross product of `b - a` and `c - a`.
pub(crate) fn cross(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn compute_edge_functionals(verts: &[(f64, f64)]) -> Result<Vec<Functional2>> {
    verts
        .windows(2)
        .map(|w| {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            // Positive because consecutive vertices subtend a positive angle
            // at the origin; zero would mean a degenerate edge.
            let det = x0 * y1 - x1 * y0;
            if det <= CANON_TOL {
                return Err(Error::Validation(format!(
                    "degenerate edge ({x0}, {y0}) -> ({x1}, {y1})"
                )));
            }
            Ok(Functional2 {
                c: (y1 - y0) / det,
                d: (x0 - x1) / det,
            })
        })
        .collect()
}

/// Merge duplicate and collinear vertices around a closed CCW cycle.
/// Duplicates go first so that a repeated point cannot zero out the cross
/// product test and drop a real corner.
pub(crate) fn merge_collinear_cycle(verts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let close =
        |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).abs() <= CANON_TOL && (a.1 - b.1).abs() <= CANON_TOL;
    let mut v: Vec<(f64, f64)> = Vec::with_capacity(verts.len());
    for p in verts {
        if v.last().is_none_or(|&q| !close(p, q)) {
            v.push(p);
        }
    }
    while v.len() > 1 && close(v[0], *v.last().unwrap()) {
        v.pop();
    }
    if v.len() < 3 {
        return v;
    }
    let n = v.len();
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    for i in 0..n {
        let prev = v[(i + n - 1) % n];
        let cur = v[i];
        let next = v[(i + 1) % n];
        if cross(prev, cur, next).abs() > CANON_TOL {
            out.push(cur);
        }
    }
    out
}
