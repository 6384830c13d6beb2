//! One-dimensional minimization by dense scan plus local refinement.
//!
//! None of the objectives minimized here is known to be unimodal, so the
//! global scan comes first and refinement only zooms into the bracket around
//! the best grid point.

/// Grid and refinement settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings {
    pub grid_points: usize,
    pub refine_passes: usize,
    pub tolerance: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        OptimizerSettings {
            grid_points: 4096,
            refine_passes: 3,
            tolerance: 1e-9,
        }
    }
}

impl OptimizerSettings {
    /// A cheaper setting for nested optimizations in tests.
    pub fn coarse() -> Self {
        OptimizerSettings {
            grid_points: 257,
            refine_passes: 3,
            tolerance: 1e-9,
        }
    }
}

/// Minimizer found on an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizationResult {
    pub argmin: f64,
    pub value: f64,
    /// How far refinement moved the value below the best coarse grid point.
    pub slack: f64,
}

const REFINE_POINTS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

struct Tracker<F> {
    f: F,
    best_x: f64,
    best_v: f64,
}

impl<F: Fn(f64) -> f64> Tracker<F> {
    fn eval(&mut self, x: f64) -> f64 {
        let v = (self.f)(x);
        // Strict `<` keeps the first minimizer on ties.
        if v < self.best_v {
            self.best_v = v;
            self.best_x = x;
        }
        v
    }

    /// Scans `points` equally spaced points of `[lo, hi]`, returns the bracket
    /// around the best one.
    fn scan(&mut self, lo: f64, hi: f64, points: usize) -> (f64, f64) {
        let points = points.max(2);
        let step = (hi - lo) / (points - 1) as f64;
        let mut best_i = 0;
        let mut best_v = f64::INFINITY;
        for i in 0..points {
            let x = if i == points - 1 { hi } else { lo + step * i as f64 };
            let v = self.eval(x);
            if v < best_v {
                best_v = v;
                best_i = i;
            }
        }
        let left = if best_i == 0 { lo } else { lo + step * (best_i - 1) as f64 };
        let right = if best_i + 1 >= points { hi } else { lo + step * (best_i + 1) as f64 };
        (left, right)
    }
}

/// Minimizes `f` over `[lo, hi]`.
pub fn minimize<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, settings: &OptimizerSettings) -> OptimizationResult {
    let mut t = Tracker {
        f,
        best_x: lo,
        best_v: f64::INFINITY,
    };
    if hi <= lo {
        let v = t.eval(lo);
        return OptimizationResult {
            argmin: lo,
            value: v,
            slack: 0.0,
        };
    }
    let (mut a, mut b) = t.scan(lo, hi, settings.grid_points);
    let coarse = t.best_v;
    for _ in 0..settings.refine_passes {
        if b - a <= settings.tolerance {
            break;
        }
        let (na, nb) = t.scan(a, b, REFINE_POINTS);
        a = na;
        b = nb;
    }
    // Golden-section polish of the final bracket.
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = t.eval(c);
    let mut fd = t.eval(d);
    while b - a > settings.tolerance {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = t.eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = t.eval(d);
        }
    }
    OptimizationResult {
        argmin: t.best_x,
        value: t.best_v,
        slack: (coarse - t.best_v).max(0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_minimum() {
        let r = minimize(|x| (x - 0.3).powi(2) + 1.0, 0.0, 1.0, &OptimizerSettings::default());
        assert!((r.argmin - 0.3).abs() < 1e-6);
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn finds_endpoint_minimum() {
        let r = minimize(|x| -x, 0.0, 2.0, &OptimizerSettings::default());
        assert_eq!(r.argmin, 2.0);
        assert_eq!(r.value, -2.0);
    }

    #[test]
    fn escapes_local_minimum() {
        // Local minimum near 0.2, global near 0.8.
        let f = |x: f64| (x - 0.2).powi(2) * (x - 0.8).powi(2) - 0.01 * x;
        let r = minimize(f, 0.0, 1.0, &OptimizerSettings::default());
        assert!((r.argmin - 0.8).abs() < 0.05);
    }

    #[test]
    fn degenerate_interval() {
        let r = minimize(|x| x * x, 0.5, 0.5, &OptimizerSettings::default());
        assert_eq!(r.argmin, 0.5);
        assert_eq!(r.value, 0.25);
    }
}
