//! Small 1-D search routines shared by the numeric paths.

/// Golden-section maximization of a unimodal (e.g. concave) function on
/// `[lo, hi]`. Returns the best abscissa and value seen, including the
/// endpoints, so boundary maxima are handled.
pub(crate) fn golden_max(lo: f64, hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2);
        }
    }
    let mut best = (x1, f1);
    for cand in [(x2, f2), (lo, f(lo)), (hi, f(hi))] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    best
}

/// Largest `x` in `[lo, hi]` with `pred(x)` true, assuming `pred` is
/// monotone (true on an initial segment) and `pred(lo)` holds.
pub(crate) fn bisect_largest_true(lo: f64, hi: f64, tol: f64, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(hi) {
        return hi;
    }
    let mut a = lo;
    let mut b = hi;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if pred(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    a
}
