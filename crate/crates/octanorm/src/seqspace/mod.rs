//! Finitely supported sequence-space model: sparse vectors, nested
//! absolute-sum spaces, norm evaluation, one-sided directional derivatives,
//! and the roughness quotient.
//!
//! Vectors live in the dense subspace of finitely supported sequences, which
//! is exactly where the constructive witness directions live. The one-sided
//! derivative `d+(x; y) = lim_{t -> 0+} (|x + t y| - |x|) / t` is computed in
//! closed form at every kink (zero coordinates of an l1 leaf, argmax ties of
//! an l_inf leaf, polygon vertices of a sum norm), which is what makes the
//! roughness constants exact rather than finite-difference approximations.

mod parse;

pub use parse::{parse_space, parse_space_vec, space_vec_to_json};

use crate::error::{Error, Result};
use crate::norm2d::AbsNorm2;
use std::collections::BTreeMap;

/// A finitely supported real sequence; zero values are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVec {
    entries: BTreeMap<u64, f64>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u64, f64)>) -> Self {
        let mut v = SparseVec::new();
        for (i, x) in entries {
            v.set(i, x);
        }
        v
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: u64) -> Self {
        SparseVec::from_entries([(i, 1.0)])
    }

    pub fn get(&self, i: u64) -> f64 {
        self.entries.get(&i).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, i: u64, x: f64) {
        if x == 0.0 {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.entries.iter().map(|(&i, &x)| (i, x))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.set(i, out.get(i) + x);
        }
        out
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (i, x) in other.iter() {
            out.set(i, out.get(i) - x);
        }
        out
    }

    pub fn scale(&self, s: f64) -> SparseVec {
        if s == 0.0 {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(&i, &x)| (i, s * x)).collect(),
        }
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(-1.0)
    }

    /// The l_p norm of the entries; `p = inf` is the max of absolute values.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if self.entries.is_empty() {
            return 0.0;
        }
        if p.is_infinite() {
            self.entries.values().fold(0.0, |m, x| m.max(x.abs()))
        } else if p == 1.0 {
            self.entries.values().map(|x| x.abs()).sum()
        } else {
            let s: f64 = self.entries.values().map(|x| x.abs().powf(p)).sum();
            s.powf(1.0 / p)
        }
    }
}

/// Smallest index outside all of the given supports.
pub fn fresh_index<'a>(vecs: impl IntoIterator<Item = &'a SparseVec>) -> u64 {
    let used: std::collections::BTreeSet<u64> =
        vecs.into_iter().flat_map(|v| v.support()).collect();
    let mut i = 0u64;
    while used.contains(&i) {
        i += 1;
    }
    i
}

/// A recursive space description: an l_p leaf or an absolute sum of two
/// subspaces.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceExpr {
    Leaf(f64),
    Sum(AbsNorm2, Box<SpaceExpr>, Box<SpaceExpr>),
}

/// A vector whose tree shape matches its space expression.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceVec {
    Leaf(SparseVec),
    Pair(Box<SpaceVec>, Box<SpaceVec>),
}

impl SpaceVec {
    pub fn pair(left: SpaceVec, right: SpaceVec) -> SpaceVec {
        SpaceVec::Pair(Box::new(left), Box::new(right))
    }

    pub fn leaf(v: SparseVec) -> SpaceVec {
        SpaceVec::Leaf(v)
    }

    fn zip(&self, other: &SpaceVec, f: &impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> Result<SpaceVec> {
        match (self, other) {
            (SpaceVec::Leaf(a), SpaceVec::Leaf(b)) => Ok(SpaceVec::Leaf(f(a, b))),
            (SpaceVec::Pair(al, ar), SpaceVec::Pair(bl, br)) => Ok(SpaceVec::pair(
                al.zip(bl, f)?,
                ar.zip(br, f)?,
            )),
            _ => Err(Error::Shape("vector trees differ in shape".into())),
        }
    }

    pub fn add(&self, other: &SpaceVec) -> Result<SpaceVec> {
        self.zip(other, &SparseVec::add)
    }

    pub fn sub(&self, other: &SpaceVec) -> Result<SpaceVec> {
        self.zip(other, &SparseVec::sub)
    }

    pub fn scale(&self, s: f64) -> SpaceVec {
        match self {
            SpaceVec::Leaf(v) => SpaceVec::Leaf(v.scale(s)),
            SpaceVec::Pair(l, r) => SpaceVec::pair(l.scale(s), r.scale(s)),
        }
    }

    pub fn neg(&self) -> SpaceVec {
        self.scale(-1.0)
    }

    /// Leaf payloads in depth-first order.
    pub fn leaf_parts(&self) -> Vec<&SparseVec> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a SparseVec>) {
        match self {
            SpaceVec::Leaf(v) => out.push(v),
            SpaceVec::Pair(l, r) => {
                l.collect_leaves(out);
                r.collect_leaves(out);
            }
        }
    }
}

impl SpaceExpr {
    pub fn leaf(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("leaf exponent must be in [1, inf], got {p}")));
        }
        Ok(SpaceExpr::Leaf(p))
    }

    pub fn sum(n: AbsNorm2, left: SpaceExpr, right: SpaceExpr) -> Self {
        SpaceExpr::Sum(n, Box::new(left), Box::new(right))
    }

    /// Leaf exponents in depth-first order.
    pub fn leaves(&self) -> Vec<f64> {
        match self {
            SpaceExpr::Leaf(p) => vec![*p],
            SpaceExpr::Sum(_, l, r) => {
                let mut out = l.leaves();
                out.extend(r.leaves());
                out
            }
        }
    }

    /// Assemble a vector from per-leaf parts given in depth-first order.
    pub fn vec_from_leaves(&self, parts: &[SparseVec]) -> Result<SpaceVec> {
        let mut iter = parts.iter().cloned();
        let v = self.build_from_iter(&mut iter)?;
        if iter.next().is_some() {
            return Err(Error::Shape("too many leaf parts for this space".into()));
        }
        Ok(v)
    }

    fn build_from_iter(&self, parts: &mut impl Iterator<Item = SparseVec>) -> Result<SpaceVec> {
        match self {
            SpaceExpr::Leaf(_) => parts
                .next()
                .map(SpaceVec::Leaf)
                .ok_or_else(|| Error::Shape("not enough leaf parts for this space".into())),
            SpaceExpr::Sum(_, l, r) => Ok(SpaceVec::pair(
                l.build_from_iter(parts)?,
                r.build_from_iter(parts)?,
            )),
        }
    }

    pub fn zero_vec(&self) -> SpaceVec {
        match self {
            SpaceExpr::Leaf(_) => SpaceVec::Leaf(SparseVec::new()),
            SpaceExpr::Sum(_, l, r) => SpaceVec::pair(l.zero_vec(), r.zero_vec()),
        }
    }

    /// Norm of `v` in this space: leaves take the l_p norm of their entries,
    /// sums combine the factor norms through the 2-D norm.
    pub fn norm(&self, v: &SpaceVec) -> Result<f64> {
        match (self, v) {
            (SpaceExpr::Leaf(p), SpaceVec::Leaf(x)) => Ok(x.lp_norm(*p)),
            (SpaceExpr::Sum(n, el, er), SpaceVec::Pair(xl, xr)) => {
                Ok(n.eval_abs(el.norm(xl)?, er.norm(xr)?))
            }
            _ => Err(Error::Shape("vector shape does not match the space".into())),
        }
    }

    /// One-sided directional derivative `d+(x; y)` of the norm at `x` toward
    /// `y`, exact at every kink.
    ///
    /// At a zero vector the derivative is the norm of the direction; inside a
    /// sum the derivative is the support-function maximum of the 2-D norm's
    /// positive subdifferential against the factor derivatives (the monotone
    /// convex chain rule).
    pub fn dirderiv(&self, x: &SpaceVec, y: &SpaceVec) -> Result<f64> {
        match (self, x, y) {
            (SpaceExpr::Leaf(p), SpaceVec::Leaf(xv), SpaceVec::Leaf(yv)) => {
                Ok(leaf_dirderiv(*p, xv, yv))
            }
            (SpaceExpr::Sum(n, el, er), SpaceVec::Pair(xl, xr), SpaceVec::Pair(yl, yr)) => {
                let s = el.norm(xl)?;
                let t = er.norm(xr)?;
                if s == 0.0 && t == 0.0 {
                    return self.norm(y);
                }
                let da = el.dirderiv(xl, yl)?;
                let db = er.dirderiv(xr, yr)?;
                let faces = n.subdiff((s, t)).expect("factor norms are valid subdiff input");
                Ok(faces
                    .iter()
                    .map(|f| f.c * da + f.d * db)
                    .fold(f64::NEG_INFINITY, f64::max))
            }
            _ => Err(Error::Shape("vector shapes do not match the space".into())),
        }
    }

    /// Roughness quotient `tau(x, y) = d+(x; y) + d+(x; -y)`, the exact ray
    /// limit of `(|x + t y| + |x - t y| - 2 |x|) / t`. Non-negative by
    /// convexity.
    pub fn tau(&self, x: &SpaceVec, y: &SpaceVec) -> Result<f64> {
        Ok(self.dirderiv(x, y)? + self.dirderiv(x, &y.neg())?)
    }

    /// Finite-difference bracket for `tau`: the symmetric quotient
    /// `g(t) = (|x + t y| + |x - t y| - 2 |x|) / t` at each step of `t_seq`.
    ///
    /// `g` is non-decreasing in `t` by convexity, so for a decreasing
    /// `t_seq` the returned list is non-increasing and every element bounds
    /// `tau` from above. A zero direction returns zeros.
    pub fn tau_fd_bracket(&self, x: &SpaceVec, y: &SpaceVec, t_seq: &[f64]) -> Result<Vec<f64>> {
        for w in t_seq.windows(2) {
            if w[1] >= w[0] {
                return Err(Error::Precondition(
                    "step sequence must be strictly decreasing".into(),
                ));
            }
        }
        if t_seq.iter().any(|&t| t <= 0.0 || !t.is_finite()) {
            return Err(Error::Precondition("steps must be positive and finite".into()));
        }
        if self.norm(y)? == 0.0 {
            return Ok(vec![0.0; t_seq.len()]);
        }
        let base = 2.0 * self.norm(x)?;
        t_seq
            .iter()
            .map(|&t| {
                let plus = self.norm(&x.add(&y.scale(t))?)?;
                let minus = self.norm(&x.sub(&y.scale(t))?)?;
                Ok((plus + minus - base) / t)
            })
            .collect()
    }
}

fn leaf_dirderiv(p: f64, x: &SparseVec, y: &SparseVec) -> f64 {
    if x.is_zero() {
        return y.lp_norm(p);
    }
    if p == 1.0 {
        // Signed slope on the support of x, absolute growth elsewhere.
        y.iter()
            .map(|(i, yi)| {
                let xi = x.get(i);
                if xi != 0.0 {
                    xi.signum() * yi
                } else {
                    yi.abs()
                }
            })
            .sum()
    } else if p.is_infinite() {
        let m = x.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        x.iter()
            .filter(|(_, v)| v.abs() >= m * (1.0 - 1e-12))
            .map(|(i, v)| v.signum() * y.get(i))
            .fold(f64::NEG_INFINITY, f64::max)
    } else {
        let scale = x.lp_norm(p).powf(p - 1.0);
        x.iter()
            .map(|(i, xi)| xi.signum() * xi.abs().powf(p - 1.0) * y.get(i))
            .sum::<f64>()
            / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u64, f64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().copied())
    }

    #[test]
    fn sparse_vec_basics() {
        let v = sv(&[(0, 1.0), (5, -2.0)]);
        assert_eq!(v.lp_norm(1.0), 3.0);
        assert_eq!(v.lp_norm(f64::INFINITY), 2.0);
        let mut w = v.clone();
        w.set(5, 0.0);
        assert_eq!(w.support().count(), 1);
    }

    #[test]
    fn fresh_index_examples() {
        assert_eq!(fresh_index([&sv(&[(0, 1.0), (2, 3.0)])]), 1);
        assert_eq!(fresh_index([&SparseVec::new()]), 0);
        assert_eq!(fresh_index([&sv(&[(0, 1.0)]), &sv(&[(1, 2.0)])]), 2);
    }

    #[test]
    fn norm_examples() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        assert_eq!(l1.norm(&SpaceVec::leaf(sv(&[(0, 1.0), (5, -2.0)]))).unwrap(), 3.0);

        let sum = SpaceExpr::sum(
            AbsNorm2::lp(2.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
        );
        let v = SpaceVec::pair(
            SpaceVec::leaf(sv(&[(0, 1.0)])),
            SpaceVec::leaf(sv(&[(0, 1.0)])),
        );
        assert!((sum.norm(&v).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        let sum = SpaceExpr::sum(
            AbsNorm2::param_ab(0.5, 0.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
        );
        let v = SpaceVec::pair(
            SpaceVec::leaf(sv(&[(0, 0.875)])),
            SpaceVec::leaf(sv(&[(0, 1.5)])),
        );
        assert_eq!(sum.norm(&v).unwrap(), 1.625);
    }

    #[test]
    fn norm_rejects_shape_mismatch() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        let pair = SpaceVec::pair(
            SpaceVec::leaf(SparseVec::new()),
            SpaceVec::leaf(SparseVec::new()),
        );
        assert!(matches!(l1.norm(&pair), Err(Error::Shape(_))));
    }

    #[test]
    fn dirderiv_leaf_examples() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        let x = SpaceVec::leaf(sv(&[(0, 1.0)]));
        let y = SpaceVec::leaf(sv(&[(1, 1.0)]));
        assert_eq!(l1.dirderiv(&x, &y).unwrap(), 1.0);

        let l2 = SpaceExpr::leaf(2.0).unwrap();
        assert_eq!(l2.dirderiv(&x, &y).unwrap(), 0.0);

        // Along the vector itself the derivative is the norm growth rate 1.
        assert_eq!(l2.dirderiv(&x, &x).unwrap(), 1.0);

        // At zero the derivative is the norm of the direction.
        let zero = SpaceVec::leaf(SparseVec::new());
        assert_eq!(l1.dirderiv(&zero, &y).unwrap(), 1.0);
    }

    #[test]
    fn dirderiv_linf_argmax_ties() {
        let linf = SpaceExpr::leaf(f64::INFINITY).unwrap();
        let x = SpaceVec::leaf(sv(&[(0, 1.0), (1, -1.0)]));
        // Active set {0, 1}: d+ = max(y_0, -y_1).
        let y = SpaceVec::leaf(sv(&[(0, 0.3), (1, 0.5)]));
        assert_eq!(linf.dirderiv(&x, &y).unwrap(), 0.3);
        let y = SpaceVec::leaf(sv(&[(0, 0.3), (1, -0.9)]));
        assert_eq!(linf.dirderiv(&x, &y).unwrap(), 0.9);
    }

    #[test]
    fn dirderiv_chain_rule_example() {
        // Sum(l2; l1, l1) at x = (e0, 0): the outer subdifferential is the
        // single functional (1, 0), so only the first factor contributes.
        let sum = SpaceExpr::sum(
            AbsNorm2::lp(2.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
        );
        let x = SpaceVec::pair(SpaceVec::leaf(sv(&[(0, 1.0)])), SpaceVec::leaf(SparseVec::new()));
        for (s, t) in [(0.5, 0.25), (1.0, 2.0), (0.0, 1.0)] {
            let y = SpaceVec::pair(
                SpaceVec::leaf(sv(&[(1, s)])),
                SpaceVec::leaf(sv(&[(0, t)])),
            );
            assert!((sum.dirderiv(&x, &y).unwrap() - s).abs() < 1e-15, "(s,t)=({s},{t})");
        }
    }

    #[test]
    fn tau_frozen_examples() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        let x = SpaceVec::leaf(sv(&[(0, 1.0)]));
        let y = SpaceVec::leaf(sv(&[(1, 1.0)]));
        assert_eq!(l1.tau(&x, &y).unwrap(), 2.0);

        let l2 = SpaceExpr::leaf(2.0).unwrap();
        assert_eq!(l2.tau(&x, &y).unwrap(), 0.0);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let sum = SpaceExpr::sum(
            AbsNorm2::lp(2.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
        );
        let x = SpaceVec::pair(SpaceVec::leaf(sv(&[(0, 1.0)])), SpaceVec::leaf(SparseVec::new()));
        let y = SpaceVec::pair(SpaceVec::leaf(sv(&[(1, s)])), SpaceVec::leaf(sv(&[(0, s)])));
        assert!((sum.tau(&x, &y).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn smooth_leaves_have_zero_tau() {
        for p in [1.5, 2.0, 3.0] {
            let lp = SpaceExpr::leaf(p).unwrap();
            let x = SpaceVec::leaf(sv(&[(0, 0.4), (2, -1.1)]));
            for y in [
                SpaceVec::leaf(sv(&[(0, 1.0), (1, -0.5)])),
                SpaceVec::leaf(sv(&[(2, 0.7)])),
            ] {
                assert!(lp.tau(&x, &y).unwrap().abs() < 1e-12, "p={p}");
            }
        }
    }

    #[test]
    fn fd_bracket_examples() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        let x = SpaceVec::leaf(sv(&[(0, 1.0)]));
        let y = SpaceVec::leaf(sv(&[(1, 1.0)]));
        let g = l1.tau_fd_bracket(&x, &y, &[1e-1, 1e-2, 1e-3]).unwrap();
        for v in g {
            assert!((v - 2.0).abs() < 1e-12);
        }

        // l2 orthogonal direction: g(t) = 2 (sqrt(1 + t^2) - 1) / t ~ t.
        let l2 = SpaceExpr::leaf(2.0).unwrap();
        let g = l2.tau_fd_bracket(&x, &y, &[1e-1, 1e-2, 1e-3]).unwrap();
        for (v, t) in g.iter().zip([1e-1f64, 1e-2, 1e-3]) {
            let expect = 2.0 * ((1.0 + t * t).sqrt() - 1.0) / t;
            assert!((v - expect).abs() < 1e-12);
        }

        let zeros = l1
            .tau_fd_bracket(&x, &SpaceVec::leaf(SparseVec::new()), &[1e-1, 1e-2])
            .unwrap();
        assert_eq!(zeros, vec![0.0, 0.0]);
    }

    #[test]
    fn fd_bracket_rejects_bad_steps() {
        let l1 = SpaceExpr::leaf(1.0).unwrap();
        let x = SpaceVec::leaf(sv(&[(0, 1.0)]));
        assert!(l1.tau_fd_bracket(&x, &x, &[1e-2, 1e-1]).is_err());
        assert!(l1.tau_fd_bracket(&x, &x, &[1e-1, 0.0]).is_err());
    }

    #[test]
    fn vec_from_leaves_round_trip() {
        let space = SpaceExpr::sum(
            AbsNorm2::lp(2.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::sum(
                AbsNorm2::lp(1.0).unwrap(),
                SpaceExpr::leaf(2.0).unwrap(),
                SpaceExpr::leaf(f64::INFINITY).unwrap(),
            ),
        );
        let parts = vec![sv(&[(0, 1.0)]), sv(&[(1, 2.0)]), SparseVec::new()];
        let v = space.vec_from_leaves(&parts).unwrap();
        let collected: Vec<SparseVec> = v.leaf_parts().into_iter().cloned().collect();
        assert_eq!(collected, parts);
        assert!(space.vec_from_leaves(&parts[..2]).is_err());
    }
}
