//! Small deterministic derivative-free search primitives shared by the
//! supremum oracles and the μ optimizer.

use alloc::vec::Vec;

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Assumes `f` is unimodal on the interval (the callers arrange this);
/// returns the best abscissa/value pair seen, including the endpoints.
pub fn golden_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let mut a = lo;
    let mut b = hi;
    let mut x1 = b - INV_GOLDEN * (b - a);
    let mut x2 = a + INV_GOLDEN * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_GOLDEN * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_GOLDEN * (b - a);
            f1 = f(x1);
        }
    }
    let mut best = (x1, f1);
    for (x, v) in [(x2, f2), (lo, f(lo)), (hi, f(hi))] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Compass (pattern) search maximizing `f` over `R^N`.
///
/// Polls `±step` along each coordinate, expands on success and halves on
/// failure; `clamp` projects iterates back into the feasible set. Stops when
/// the step falls below `min_step` or after `max_rounds` poll rounds.
pub fn compass_max<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    start: [f64; N],
    step0: f64,
    min_step: f64,
    max_rounds: usize,
    clamp: impl Fn(&mut [f64; N]),
) -> ([f64; N], f64) {
    let mut x = start;
    clamp(&mut x);
    let mut fx = f(&x);
    let mut step = step0;
    for _ in 0..max_rounds {
        if step < min_step {
            break;
        }
        let mut best = fx;
        let mut best_x = x;
        for i in 0..N {
            for s in [step, -step] {
                let mut y = x;
                y[i] += s;
                clamp(&mut y);
                let fy = f(&y);
                if fy > best {
                    best = fy;
                    best_x = y;
                }
            }
        }
        if best > fx {
            x = best_x;
            fx = best;
            step = (step * 2.0).min(step0);
        } else {
            step *= 0.5;
        }
    }
    (x, fx)
}

/// Keeps the `k` largest-scoring items seen.
pub struct TopK<T> {
    k: usize,
    entries: Vec<(f64, T)>,
}

impl<T: Copy> TopK<T> {
    pub fn new(k: usize) -> Self {
        TopK { k, entries: Vec::with_capacity(k + 1) }
    }

    pub fn push(&mut self, score: f64, item: T) {
        let pos = self.entries.partition_point(|(s, _)| *s > score);
        if pos < self.k {
            self.entries.insert(pos, (score, item));
            self.entries.truncate(self.k);
        }
    }

    pub fn items(&self) -> impl Iterator<Item = &(f64, T)> {
        self.entries.iter()
    }
}
