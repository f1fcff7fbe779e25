//! Average-roughness machinery: witness evaluation, seeded direction search,
//! the constructive sum direction, the l1-sum pass-through, and the
//! two-point upper-bound family for p-sums.
//!
//! A direction search only ever certifies a lower bound (the best direction
//! it found); upper bounds come from closed formulas. The search is
//! deterministic given `(seed, budget)`: candidates are enumerated in a fixed
//! order and ties keep the earliest candidate.

use crate::error::{Error, Result};
use crate::norm2d::{AbsNorm2, TieBreak};
use crate::seqspace::{fresh_index, SparseVec, SpaceExpr, SpaceVec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Simplex grid resolution for the fresh-coordinate candidate pool.
const SIMPLEX_STEP: u32 = 64;

/// A finite set of unit-norm points with weights, the object the roughness
/// quantities average over.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSet {
    space: SpaceExpr,
    points: Vec<SpaceVec>,
    /// `None` means uniform `1/n`, evaluated as a plain average so that
    /// integer-valued sums stay exact.
    weights: Option<Vec<f64>>,
}

impl WitnessSet {
    pub fn new(space: SpaceExpr, points: Vec<SpaceVec>) -> Result<Self> {
        Self::build(space, points, None)
    }

    pub fn with_weights(space: SpaceExpr, points: Vec<SpaceVec>, weights: Vec<f64>) -> Result<Self> {
        Self::build(space, points, Some(weights))
    }

    fn build(space: SpaceExpr, points: Vec<SpaceVec>, weights: Option<Vec<f64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Validation("witness set needs at least one point".into()));
        }
        for (i, p) in points.iter().enumerate() {
            let n = space.norm(p)?;
            if (n - 1.0).abs() > 1e-9 {
                return Err(Error::Validation(format!(
                    "witness point {i} has norm {n}, expected 1"
                )));
            }
        }
        if let Some(w) = &weights {
            if w.len() != points.len() {
                return Err(Error::Validation("one weight per point required".into()));
            }
            if w.iter().any(|&x| !x.is_finite() || x <= 0.0) {
                return Err(Error::Validation("weights must be positive".into()));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Validation(format!("weights sum to {total}, expected 1")));
            }
        }
        Ok(WitnessSet {
            space,
            points,
            weights,
        })
    }

    pub fn space(&self) -> &SpaceExpr {
        &self.space
    }

    pub fn points(&self) -> &[SpaceVec] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn weight(&self, i: usize) -> f64 {
        match &self.weights {
            Some(w) => w[i],
            None => 1.0 / self.points.len() as f64,
        }
    }

    /// Weighted average of the roughness quotients `tau(x_i, y / |y|)`.
    /// Scale-invariant in `y`; errors on the zero direction.
    pub fn value(&self, y: &SpaceVec) -> Result<f64> {
        let ny = self.space.norm(y)?;
        if ny == 0.0 {
            return Err(Error::Precondition("direction must be nonzero".into()));
        }
        let unit = y.scale(1.0 / ny);
        let val = weighted_tau(&self.space, &self.points, self.weights.as_deref(), &unit)?;
        Ok(val / self.space.norm(&unit)?)
    }
}

fn weighted_tau(
    space: &SpaceExpr,
    points: &[SpaceVec],
    weights: Option<&[f64]>,
    unit_dir: &SpaceVec,
) -> Result<f64> {
    match weights {
        Some(w) => {
            let mut acc = 0.0;
            for (x, wi) in points.iter().zip(w) {
                acc += wi * space.tau(x, unit_dir)?;
            }
            Ok(acc)
        }
        None => {
            let mut acc = 0.0;
            for x in points {
                acc += space.tau(x, unit_dir)?;
            }
            Ok(acc / points.len() as f64)
        }
    }
}

/// A certified lower bound with the direction achieving it, plus an optional
/// closed-form upper bound and its source.
#[derive(Debug, Clone, PartialEq)]
pub struct RoughnessBracket {
    pub lower: f64,
    /// Unit direction whose weighted quotient average equals `lower`.
    pub lower_direction: SpaceVec,
    pub upper: Option<f64>,
    pub upper_source: Option<String>,
}

/// Maximize the witness value over a seeded candidate pool.
///
/// The pool starts with every fresh-coordinate simplex split (one fresh index
/// per l1 leaf, weight splits on a step-1/64 grid), continues with random
/// sparse directions, and finishes with coordinate-ascent polish around the
/// best candidate. Every returned value is certified: it re-evaluates through
/// [`WitnessSet::value`].
pub fn direction_search(w: &WitnessSet, budget: usize, seed: u64) -> Result<RoughnessBracket> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let (value, direction) = search_directions(
        &w.space,
        &w.points,
        w.weights.as_deref(),
        budget,
        seed,
    )?;
    Ok(RoughnessBracket {
        lower: value,
        lower_direction: direction,
        upper: None,
        upper_source: None,
    })
}

/// Core search shared by the public entry points. Points may be zero or
/// non-unit here: the quotient is scale-free in the point and contributes
/// `2 |direction|` at a zero point, which is exactly what the reweighted
/// factor problems need.
fn search_directions(
    space: &SpaceExpr,
    points: &[SpaceVec],
    weights: Option<&[f64]>,
    budget: usize,
    seed: u64,
) -> Result<(f64, SpaceVec)> {
    let leaves = space.leaves();
    // One fresh index per leaf, over all witness supports at that leaf.
    let fresh: Vec<u64> = (0..leaves.len())
        .map(|j| fresh_index(points.iter().map(|p| p.leaf_parts()[j]).collect::<Vec<_>>()))
        .collect();
    let l1_positions: Vec<usize> = leaves
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == 1.0)
        .map(|(j, _)| j)
        .collect();

    let mut evals = 0usize;
    let mut best: Option<(f64, SpaceVec)> = None;
    let consider = |dir: SpaceVec,
                    evals: &mut usize,
                    best: &mut Option<(f64, SpaceVec)>|
     -> Result<()> {
        let n = space.norm(&dir)?;
        if n == 0.0 {
            return Ok(());
        }
        let unit = dir.scale(1.0 / n);
        // Dividing by the re-evaluated norm removes the one-ulp inflation a
        // rounded rescale can cause; exact-unit candidates pass through
        // untouched.
        let val = weighted_tau(space, points, weights, &unit)? / space.norm(&unit)?;
        *evals += 1;
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            *best = Some((val, unit));
        }
        Ok(())
    };

    // Fresh-coordinate simplex splits across the l1 leaves, enumerated
    // lazily so that a budget cap bounds the work even for many leaves.
    if !l1_positions.is_empty() {
        let mut failed = None;
        for_each_composition(SIMPLEX_STEP, l1_positions.len(), &mut |split| {
            if evals >= budget {
                return false;
            }
            let mut parts = vec![SparseVec::new(); leaves.len()];
            for (slot, &m) in split.iter().enumerate() {
                if m > 0 {
                    let j = l1_positions[slot];
                    parts[j] =
                        SparseVec::from_entries([(fresh[j], m as f64 / SIMPLEX_STEP as f64)]);
                }
            }
            match space
                .vec_from_leaves(&parts)
                .and_then(|dir| consider(dir, &mut evals, &mut best))
            {
                Ok(()) => true,
                Err(e) => {
                    failed = Some(e);
                    false
                }
            }
        });
        if let Some(e) = failed {
            return Err(e);
        }
    }

    // Random sparse directions.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_budget = budget.saturating_sub(budget / 4).max(evals);
    while evals < random_budget {
        let mut parts = vec![SparseVec::new(); leaves.len()];
        for (j, part) in parts.iter_mut().enumerate() {
            if rng.gen_bool(0.7) {
                for _ in 0..rng.gen_range(1..=2) {
                    let idx = rng.gen_range(0..=fresh[j] + 2);
                    let mag = rng.gen_range(0.1..1.0f64);
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    part.set(idx, sign * mag);
                }
            }
        }
        if parts.iter().all(|p| p.is_zero()) {
            parts[0] = SparseVec::basis(fresh[0]);
        }
        consider(space.vec_from_leaves(&parts)?, &mut evals, &mut best)?;
    }

    // Coordinate-ascent polish around the incumbent.
    if let Some((_, incumbent)) = best.clone() {
        let mut coords: Vec<(usize, u64)> = Vec::new();
        for (j, &fresh_j) in fresh.iter().enumerate() {
            let mut idxs: Vec<u64> = points
                .iter()
                .flat_map(|p| p.leaf_parts()[j].support().collect::<Vec<_>>())
                .chain(incumbent.leaf_parts()[j].support())
                .chain([fresh_j])
                .collect();
            idxs.sort_unstable();
            idxs.dedup();
            coords.extend(idxs.into_iter().map(|i| (j, i)));
        }
        let mut step = 0.5f64;
        while step > 1e-4 && evals < budget {
            for &(j, idx) in &coords {
                if evals >= budget {
                    break;
                }
                for sign in [1.0, -1.0] {
                    let cur = best.as_ref().unwrap().1.clone();
                    let mut parts: Vec<SparseVec> =
                        cur.leaf_parts().into_iter().cloned().collect();
                    let old = parts[j].get(idx);
                    parts[j].set(idx, old + sign * step);
                    consider(space.vec_from_leaves(&parts)?, &mut evals, &mut best)?;
                }
            }
            step *= 0.25;
        }
    }

    let (val, dir) = best.expect("at least one candidate is always evaluated");
    Ok((val, dir))
}

/// Visit the ordered compositions of `total` into `k` non-negative parts in
/// lexicographic order; the visitor returns `false` to stop early.
fn for_each_composition(total: u32, k: usize, visit: &mut impl FnMut(&[u32]) -> bool) -> bool {
    fn rec(
        buf: &mut Vec<u32>,
        remaining: u32,
        slots: usize,
        visit: &mut impl FnMut(&[u32]) -> bool,
    ) -> bool {
        if slots == 1 {
            buf.push(remaining);
            let go_on = visit(buf);
            buf.pop();
            return go_on;
        }
        for first in 0..=remaining {
            buf.push(first);
            let go_on = rec(buf, remaining - first, slots - 1, visit);
            buf.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(&mut Vec::with_capacity(k), total, k, visit)
}

/// Which branch of the constructive sum direction was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumBranch {
    /// Both averaged functional coordinates are positive; the direction mixes
    /// both factors.
    BothFactors,
    /// The first coordinate averages to zero; the direction lives in the
    /// second factor.
    SecondFactorOnly,
    /// The second coordinate averages to zero; the direction lives in the
    /// first factor.
    FirstFactorOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumDirectionOutcome {
    pub direction: SpaceVec,
    pub achieved: f64,
    pub predicted: f64,
    pub branch: SumBranch,
}

/// Constructive direction for a paired witness set on an absolute sum.
///
/// For each paired point, a norming functional `(c_i, d_i)` of its factor
/// norms splits the weights into two reweighted factor problems; factor
/// searches produce directions whose combination achieves at least
/// `gamma * min(delta_x, delta_y)` with `gamma = 1 / N(1,1)`. When all `c_i`
/// (or all `d_i`) vanish the direction degenerates to a single factor and the
/// bound tightens to that factor's search value.
pub fn constructive_sum_direction(
    paired: &WitnessSet,
    eps: f64,
    budget: usize,
    seed: u64,
) -> Result<SumDirectionOutcome> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    let (norm, left, right) = match paired.space() {
        SpaceExpr::Sum(n, l, r) => (n.clone(), l.as_ref().clone(), r.as_ref().clone()),
        SpaceExpr::Leaf(_) => {
            return Err(Error::Precondition(
                "paired witness set must live on an absolute sum".into(),
            ))
        }
    };
    let n_pts = paired.len();
    let mut xs = Vec::with_capacity(n_pts);
    let mut ys = Vec::with_capacity(n_pts);
    let mut cs = Vec::with_capacity(n_pts);
    let mut ds = Vec::with_capacity(n_pts);
    for (i, z) in paired.points().iter().enumerate() {
        let (xl, xr) = match z {
            SpaceVec::Pair(l, r) => (l.as_ref().clone(), r.as_ref().clone()),
            SpaceVec::Leaf(_) => unreachable!("shape checked against the space"),
        };
        let s = left.norm(&xl)?;
        let t = right.norm(&xr)?;
        let f = norm.norming_functional((s, t), TieBreak::LexMin)?;
        let w = paired.weight(i);
        xs.push(xl);
        ys.push(xr);
        cs.push(w * f.c);
        ds.push(w * f.d);
    }
    let c: f64 = cs.iter().sum();
    let d: f64 = ds.iter().sum();
    let gamma = norm.gamma_inf();

    const ZERO: f64 = 1e-14;
    if c <= ZERO {
        let weights: Vec<f64> = (0..n_pts).map(|i| paired.weight(i)).collect();
        let (delta_y, dir_y) = search_directions(&right, &ys, Some(&weights), budget, seed)?;
        let scale = eps * norm.eval_abs(1.0, 1.0);
        let direction = SpaceVec::pair(left.zero_vec(), dir_y.scale(scale));
        let achieved = paired.value(&direction)?;
        return Ok(SumDirectionOutcome {
            direction,
            achieved,
            predicted: delta_y,
            branch: SumBranch::SecondFactorOnly,
        });
    }
    if d <= ZERO {
        let weights: Vec<f64> = (0..n_pts).map(|i| paired.weight(i)).collect();
        let (delta_x, dir_x) = search_directions(&left, &xs, Some(&weights), budget, seed)?;
        let scale = eps * norm.eval_abs(1.0, 1.0);
        let direction = SpaceVec::pair(dir_x.scale(scale), right.zero_vec());
        let achieved = paired.value(&direction)?;
        return Ok(SumDirectionOutcome {
            direction,
            achieved,
            predicted: delta_x,
            branch: SumBranch::FirstFactorOnly,
        });
    }

    let mu: Vec<f64> = cs.iter().map(|ci| ci / c).collect();
    let nu: Vec<f64> = ds.iter().map(|di| di / d).collect();
    let (delta_x, dir_x) = search_directions(&left, &xs, Some(&mu), budget, seed)?;
    let (delta_y, dir_y) = search_directions(&right, &ys, Some(&nu), budget, seed)?;
    let direction = SpaceVec::pair(dir_x.scale(eps), dir_y.scale(eps));
    let achieved = paired.value(&direction)?;
    Ok(SumDirectionOutcome {
        direction,
        achieved,
        predicted: gamma * delta_x.min(delta_y),
        branch: SumBranch::BothFactors,
    })
}

/// Direction through an l1-sum: search the first factor alone and embed the
/// result as `(x, 0)`; the sum passes the factor value through unchanged.
pub fn l1_sum_direction(
    paired: &WitnessSet,
    budget: usize,
    seed: u64,
) -> Result<(SpaceVec, f64)> {
    let (norm, left, right) = match paired.space() {
        SpaceExpr::Sum(n, l, r) => (n, l.as_ref(), r.as_ref()),
        SpaceExpr::Leaf(_) => {
            return Err(Error::Precondition(
                "paired witness set must live on an absolute sum".into(),
            ))
        }
    };
    // N(1,1) = 2 characterizes the sum norm among absolute normalized norms.
    if (norm.eval_abs(1.0, 1.0) - 2.0).abs() > 1e-12 {
        return Err(Error::Precondition(
            "the pass-through direction needs an l1 sum".into(),
        ));
    }
    let xs: Vec<SpaceVec> = paired
        .points()
        .iter()
        .map(|z| match z {
            SpaceVec::Pair(l, _) => l.as_ref().clone(),
            SpaceVec::Leaf(_) => unreachable!("shape checked against the space"),
        })
        .collect();
    let weights: Vec<f64> = (0..paired.len()).map(|i| paired.weight(i)).collect();
    let (_, dir_x) = search_directions(left, &xs, Some(&weights), budget, seed)?;
    let direction = SpaceVec::pair(dir_x, right.zero_vec());
    let achieved = paired.value(&direction)?;
    Ok((direction, achieved))
}

/// Correction term `f(eps)` in the two-point upper bound for p-sums:
/// `(p-1)/2 eps + eps^(p-1)/p` for `p <= 2` and
/// `(p-1) 2^(p-2-2/p) eps + eps^(p-1)/p` for `p > 2`. Tends to zero with
/// `eps`, so the bound `2^(1-1/p) + f(eps)` is tight in the limit.
pub fn f_eps(p: f64, eps: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must be in (1, inf), got {p}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("eps must be in (0,1), got {eps}")));
    }
    let tail = eps.powf(p - 1.0) / p;
    if p <= 2.0 {
        Ok((p - 1.0) / 2.0 * eps + tail)
    } else {
        Ok((p - 1.0) * 2f64.powf(p - 2.0 - 2.0 / p) * eps + tail)
    }
}

/// Desk-scale verification of the two-point upper bound on `l1 (+)_p l1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundReport {
    pub samples: usize,
    /// Maximum of `lhs - rhs` over the samples; the bound holds when this
    /// stays at or below the slack tolerance.
    pub max_violation: f64,
    pub pass: bool,
}

/// Sample random `z` of sum-norm exactly `eps` and check
/// `(|z1+z| + |z1-z| + |z2+z| + |z2-z|) / 2 <= (2^(1-1/p) + f(eps)) eps + 2`
/// with `z1 = (e0, 0)`, `z2 = (0, e0)`.
pub fn check_upper_inequality(p: f64, eps: f64, samples: usize, seed: u64) -> Result<UpperBoundReport> {
    let bound_slope = 2f64.powf(1.0 - 1.0 / p) + f_eps(p, eps)?;
    let space = SpaceExpr::sum(
        AbsNorm2::lp(p)?,
        SpaceExpr::leaf(1.0)?,
        SpaceExpr::leaf(1.0)?,
    );
    let z1 = SpaceVec::pair(
        SpaceVec::leaf(SparseVec::basis(0)),
        SpaceVec::leaf(SparseVec::new()),
    );
    let z2 = SpaceVec::pair(
        SpaceVec::leaf(SparseVec::new()),
        SpaceVec::leaf(SparseVec::basis(0)),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_violation = f64::NEG_INFINITY;
    for _ in 0..samples {
        let mut parts = [SparseVec::new(), SparseVec::new()];
        loop {
            for part in parts.iter_mut() {
                *part = SparseVec::new();
                for _ in 0..rng.gen_range(0..=3) {
                    let idx = rng.gen_range(0..6u64);
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    part.set(idx, sign * rng.gen_range(0.05..1.0f64));
                }
            }
            if !(parts[0].is_zero() && parts[1].is_zero()) {
                break;
            }
        }
        let raw = SpaceVec::pair(
            SpaceVec::leaf(parts[0].clone()),
            SpaceVec::leaf(parts[1].clone()),
        );
        let z = raw.scale(eps / space.norm(&raw)?);
        let lhs = 0.5
            * (space.norm(&z1.add(&z)?)?
                + space.norm(&z1.sub(&z)?)?
                + space.norm(&z2.add(&z)?)?
                + space.norm(&z2.sub(&z)?)?);
        let rhs = bound_slope * eps + 2.0;
        max_violation = max_violation.max(lhs - rhs);
    }
    Ok(UpperBoundReport {
        samples,
        max_violation,
        pass: max_violation <= 1e-12,
    })
}

/// Two-sided bracket for the exact roughness of `l1 (+)_p l1` on the
/// two-point witness `{(e0, 0), (0, e0)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub bracket: RoughnessBracket,
    pub width: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn exact_delta_report(p: f64, tol: f64, budget: usize, seed: u64) -> Result<DeltaReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::Domain(format!("p must be in (1, inf), got {p}")));
    }
    let space = SpaceExpr::sum(
        AbsNorm2::lp(p)?,
        SpaceExpr::leaf(1.0)?,
        SpaceExpr::leaf(1.0)?,
    );
    let points = vec![
        SpaceVec::pair(
            SpaceVec::leaf(SparseVec::basis(0)),
            SpaceVec::leaf(SparseVec::new()),
        ),
        SpaceVec::pair(
            SpaceVec::leaf(SparseVec::new()),
            SpaceVec::leaf(SparseVec::basis(0)),
        ),
    ];
    let witness = WitnessSet::new(space, points)?;
    let mut bracket = direction_search(&witness, budget, seed)?;
    let upper = 2f64.powf(1.0 - 1.0 / p);
    bracket.upper = Some(upper);
    bracket.upper_source = Some(format!(
        "two-point p-sum upper bound: limit of 2^(1-1/p) + f(eps) as eps -> 0, p = {p}"
    ));
    let width = upper - bracket.lower;
    Ok(DeltaReport {
        width,
        tol,
        pass: width.abs() <= tol && width >= -1e-9,
        bracket,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l1_space() -> SpaceExpr {
        SpaceExpr::leaf(1.0).unwrap()
    }

    fn p_sum(p: f64) -> SpaceExpr {
        SpaceExpr::sum(
            AbsNorm2::lp(p).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
        )
    }

    fn two_point_witness(p: f64) -> WitnessSet {
        let points = vec![
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::basis(0)),
                SpaceVec::leaf(SparseVec::new()),
            ),
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::new()),
                SpaceVec::leaf(SparseVec::basis(0)),
            ),
        ];
        WitnessSet::new(p_sum(p), points).unwrap()
    }

    #[test]
    fn witness_set_validation() {
        let bad = WitnessSet::new(
            l1_space(),
            vec![SpaceVec::leaf(SparseVec::from_entries([(0, 0.5)]))],
        );
        assert!(bad.is_err());
        let bad_weights = WitnessSet::with_weights(
            l1_space(),
            vec![SpaceVec::leaf(SparseVec::basis(0))],
            vec![0.7],
        );
        assert!(bad_weights.is_err());
    }

    #[test]
    fn witness_value_frozen_examples() {
        let w = WitnessSet::new(l1_space(), vec![SpaceVec::leaf(SparseVec::basis(0))]).unwrap();
        let y = SpaceVec::leaf(SparseVec::basis(1));
        assert_eq!(w.value(&y).unwrap(), 2.0);
        // Scale invariance.
        assert_eq!(w.value(&y.scale(0.01)).unwrap(), 2.0);
        assert!(w.value(&SpaceVec::leaf(SparseVec::new())).is_err());

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = two_point_witness(2.0);
        let y = SpaceVec::pair(
            SpaceVec::leaf(SparseVec::from_entries([(1, s)])),
            SpaceVec::leaf(SparseVec::from_entries([(1, s)])),
        );
        assert!((w.value(&y).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        // Smooth model: every quotient vanishes.
        let l2 = SpaceExpr::leaf(2.0).unwrap();
        let w = WitnessSet::new(l2, vec![SpaceVec::leaf(SparseVec::basis(0))]).unwrap();
        for y in [
            SpaceVec::leaf(SparseVec::basis(1)),
            SpaceVec::leaf(SparseVec::from_entries([(0, 0.3), (2, -0.9)])),
        ] {
            assert_eq!(w.value(&y).unwrap(), 0.0);
        }
    }

    #[test]
    fn search_finds_fresh_coordinate_on_l1() {
        let points = vec![
            SpaceVec::leaf(SparseVec::basis(0)),
            SpaceVec::leaf(SparseVec::from_entries([(1, 0.5), (2, -0.5)])),
            SpaceVec::leaf(SparseVec::from_entries([(0, -0.25), (3, 0.75)])),
        ];
        let w = WitnessSet::new(l1_space(), points).unwrap();
        let b = direction_search(&w, 500, 42).unwrap();
        assert_eq!(b.lower, 2.0);
        assert_eq!(w.value(&b.lower_direction).unwrap(), 2.0);
    }

    #[test]
    fn search_matches_p_sum_constant() {
        for p in [1.5, 2.0, 3.0] {
            let w = two_point_witness(p);
            let b = direction_search(&w, 800, 0).unwrap();
            let expect = 2f64.powf(1.0 - 1.0 / p);
            assert!((b.lower - expect).abs() < 1e-3, "p = {p}: {}", b.lower);
        }
    }

    #[test]
    fn searched_sup_is_a_capped_average() {
        // Each per-point quotient is at most 2, so the searched value is a
        // weighted average bounded by 2, and extending a witness set can
        // raise the sup by at most twice the new point's weight.
        let points = vec![
            SpaceVec::leaf(SparseVec::basis(0)),
            SpaceVec::leaf(SparseVec::from_entries([(1, -0.5), (2, 0.5)])),
        ];
        let w = WitnessSet::with_weights(l1_space(), points.clone(), vec![0.75, 0.25]).unwrap();
        let before = direction_search(&w, 300, 2).unwrap().lower;
        assert!(before <= 2.0 + 1e-12);

        let mut extended = points;
        extended.push(SpaceVec::leaf(SparseVec::basis(5)));
        let w2 =
            WitnessSet::with_weights(l1_space(), extended, vec![0.6, 0.2, 0.2]).unwrap();
        let after = direction_search(&w2, 300, 2).unwrap().lower;
        assert!(after <= 2.0 + 1e-12);
        assert!(after <= before.max(2.0 * 0.6 / 0.75) + 2.0 * 0.2 + 1e-9);
    }

    #[test]
    fn search_is_deterministic_and_certified() {
        let w = two_point_witness(2.0);
        let a = direction_search(&w, 300, 9).unwrap();
        let b = direction_search(&w, 300, 9).unwrap();
        assert_eq!(a, b);
        assert!((w.value(&a.lower_direction).unwrap() - a.lower).abs() < 1e-12);
    }

    #[test]
    fn search_on_smooth_space_returns_zero() {
        let space = SpaceExpr::sum(
            AbsNorm2::lp(2.0).unwrap(),
            SpaceExpr::leaf(2.0).unwrap(),
            SpaceExpr::leaf(2.0).unwrap(),
        );
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let points = vec![SpaceVec::pair(
            SpaceVec::leaf(SparseVec::from_entries([(0, s)])),
            SpaceVec::leaf(SparseVec::from_entries([(0, s)])),
        )];
        let w = WitnessSet::new(space, points).unwrap();
        let b = direction_search(&w, 200, 1).unwrap();
        assert_eq!(b.lower, 0.0);
    }

    #[test]
    fn constructive_sum_matches_known_constants() {
        // gamma = 2^(-1/p) and factor value 2 combine to 2^(1-1/p).
        for (norm, expect) in [
            (AbsNorm2::lp(2.0).unwrap(), 2f64.powf(0.5)),
            (AbsNorm2::lp(f64::INFINITY).unwrap(), 2.0),
            (AbsNorm2::param_ab(0.5, 0.0).unwrap(), 2.0 * 2.0 / 3.0),
        ] {
            let space = SpaceExpr::sum(
                norm.clone(),
                SpaceExpr::leaf(1.0).unwrap(),
                SpaceExpr::leaf(1.0).unwrap(),
            );
            // Paired points on the sum sphere: (e0, 0) and (0, e0).
            let points = vec![
                SpaceVec::pair(
                    SpaceVec::leaf(SparseVec::basis(0)),
                    SpaceVec::leaf(SparseVec::new()),
                ),
                SpaceVec::pair(
                    SpaceVec::leaf(SparseVec::new()),
                    SpaceVec::leaf(SparseVec::basis(0)),
                ),
            ];
            let w = WitnessSet::new(space, points).unwrap();
            let out = constructive_sum_direction(&w, 1.0, 600, 3).unwrap();
            assert_eq!(out.branch, SumBranch::BothFactors);
            assert!(
                out.achieved >= out.predicted - 1e-6,
                "{norm}: achieved {} < predicted {}",
                out.achieved,
                out.predicted
            );
            assert!(
                (out.predicted - expect).abs() < 1e-3,
                "{norm}: predicted {} vs {expect}",
                out.predicted
            );
        }
    }

    #[test]
    fn constructive_sum_degenerate_branches() {
        let space = p_sum(2.0);
        // All mass on the second factor forces c = 0.
        let points = vec![
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::new()),
                SpaceVec::leaf(SparseVec::basis(0)),
            ),
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::new()),
                SpaceVec::leaf(SparseVec::basis(1)),
            ),
        ];
        let w = WitnessSet::new(space.clone(), points).unwrap();
        let out = constructive_sum_direction(&w, 1.0, 400, 5).unwrap();
        assert_eq!(out.branch, SumBranch::SecondFactorOnly);
        assert!(out.achieved >= out.predicted - 1e-6);
        assert!((out.predicted - 2.0).abs() < 1e-9);
        match &out.direction {
            SpaceVec::Pair(l, _) => assert_eq!(space.leaves().len(), 2, "{l:?}"),
            SpaceVec::Leaf(_) => panic!("expected a pair"),
        }

        let points = vec![SpaceVec::pair(
            SpaceVec::leaf(SparseVec::basis(0)),
            SpaceVec::leaf(SparseVec::new()),
        )];
        let w = WitnessSet::new(space, points).unwrap();
        let out = constructive_sum_direction(&w, 1.0, 400, 5).unwrap();
        assert_eq!(out.branch, SumBranch::FirstFactorOnly);
        assert!(out.achieved >= out.predicted - 1e-6);
    }

    #[test]
    fn l1_sum_passes_value_through() {
        let space = SpaceExpr::sum(
            AbsNorm2::lp(1.0).unwrap(),
            SpaceExpr::leaf(1.0).unwrap(),
            SpaceExpr::leaf(2.0).unwrap(),
        );
        let points = vec![
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::from_entries([(0, 0.5)])),
                SpaceVec::leaf(SparseVec::from_entries([(0, 0.5)])),
            ),
            SpaceVec::pair(
                SpaceVec::leaf(SparseVec::basis(1)),
                SpaceVec::leaf(SparseVec::new()),
            ),
        ];
        let w = WitnessSet::new(space, points).unwrap();
        let (dir, achieved) = l1_sum_direction(&w, 400, 11).unwrap();
        assert_eq!(achieved, 2.0);
        match &dir {
            SpaceVec::Pair(_, r) => match r.as_ref() {
                SpaceVec::Leaf(v) => assert!(v.is_zero()),
                SpaceVec::Pair(..) => panic!("flat right factor expected"),
            },
            SpaceVec::Leaf(_) => panic!("expected a pair"),
        }

        // Not an l1 sum: refused.
        let w2 = two_point_witness(2.0);
        assert!(l1_sum_direction(&w2, 10, 0).is_err());
    }

    #[test]
    fn l1_sum_composes_with_inner_p_sum() {
        // First factor is itself l1 (+)_2 l1; its two-point constant sqrt(2)
        // passes through the outer l1 sum unchanged.
        let inner = p_sum(2.0);
        let space = SpaceExpr::sum(
            AbsNorm2::lp(1.0).unwrap(),
            inner.clone(),
            SpaceExpr::leaf(2.0).unwrap(),
        );
        let x1 = SpaceVec::pair(
            SpaceVec::leaf(SparseVec::basis(0)),
            SpaceVec::leaf(SparseVec::new()),
        );
        let x2 = SpaceVec::pair(
            SpaceVec::leaf(SparseVec::new()),
            SpaceVec::leaf(SparseVec::basis(0)),
        );
        let points = vec![
            SpaceVec::pair(x1, SpaceVec::leaf(SparseVec::new())),
            SpaceVec::pair(x2, SpaceVec::leaf(SparseVec::new())),
        ];
        let w = WitnessSet::new(space, points).unwrap();
        let (_, achieved) = l1_sum_direction(&w, 800, 2).unwrap();
        assert!((achieved - 2f64.sqrt()).abs() < 1e-3, "achieved {achieved}");
    }

    #[test]
    fn f_eps_frozen_examples() {
        assert!((f_eps(2.0, 0.1).unwrap() - 0.1).abs() < 1e-15);
        assert!((f_eps(1.5, 0.01).unwrap() - (0.25 * 0.01 + 0.1 / 1.5)).abs() < 1e-15);
        let expect = 2.0 * 2f64.powf(1.0 / 3.0) * 0.01 + 0.01f64.powi(2) / 3.0;
        assert!((f_eps(3.0, 0.01).unwrap() - expect).abs() < 1e-15);
        assert!(f_eps(1.0, 0.1).is_err());
        assert!(f_eps(2.0, 1.0).is_err());
    }

    #[test]
    fn f_eps_vanishes_with_eps() {
        for p in [1.5, 2.0, 3.0, 5.0] {
            let mut prev = f64::INFINITY;
            for k in 1..=6 {
                let eps = 10f64.powi(-k);
                let v = f_eps(p, eps).unwrap();
                assert!(v < prev && v > 0.0);
                prev = v;
            }
            assert!(prev < 1e-3);
        }
    }

    #[test]
    fn upper_inequality_spot_checks() {
        for (p, eps) in [(2.0, 0.1), (1.5, 0.5), (3.0, 0.05)] {
            let r = check_upper_inequality(p, eps, 2_000, 17).unwrap();
            assert!(r.pass, "(p, eps) = ({p}, {eps}): {r:?}");
        }
    }

    #[test]
    fn exact_delta_brackets() {
        for p in [1.5, 2.0, 3.0] {
            let r = exact_delta_report(p, 1e-3, 800, 0).unwrap();
            assert!(r.pass, "p = {p}: width {}", r.width);
            let expect = 2f64.powf(1.0 - 1.0 / p);
            assert!((r.bracket.upper.unwrap() - expect).abs() < 1e-15);
        }
    }
}
