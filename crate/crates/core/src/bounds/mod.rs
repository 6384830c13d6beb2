//! Rate–distance upper bounds for binary codes and LDPC codes.
//!
//! Every curve is a function of the relative distance `δ ∈ (0, 1/2]`. Most
//! are closed forms in `ρ = 1/2 − √(δ(1−δ))`. The linear-programming bound
//! of the second kind and the shortening recursion need a one-dimensional
//! minimization, done by [`optimize::minimize`].
//!
//! All values are binary64. Comparisons in tests use absolute tolerances
//! around `1e-9`.

mod figure;
pub mod optimize;

use std::f64::consts::LOG2_E;
use std::fmt;
use std::str::FromStr;

pub use figure::{figure1_csv, figure1_rows, Figure1Row, FIGURE1_HEADER, FIGURE1_POINTS};
pub use optimize::{minimize, OptimizationResult, OptimizerSettings};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// `δ` below which the `w = 3` bounds are flat at `2/3`. Here `ρ(δ) = 1/4`.
pub fn w3_threshold() -> f64 {
    0.5 - 3f64.sqrt() / 4.0
}

/// Smallest `λ` probed by the ball-exponent optimizer.
pub const LAMBDA_FLOOR: f64 = 1e-6;

fn check_unit(x: f64, what: &str) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must lie in [0, 1], got {x}")))
    }
}

/// `−x log₂ x`, continuous at 0.
fn xlog(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

fn h(x: f64) -> f64 {
    xlog(x) + xlog(1.0 - x)
}

fn h4(x: f64) -> f64 {
    (x * 3f64.log2() + xlog(x) + xlog(1.0 - x)) / 2.0
}

fn rho(delta: f64) -> f64 {
    0.5 - (delta * (1.0 - delta)).max(0.0).sqrt()
}

/// Binary entropy `H(x)`.
pub fn entropy(x: f64) -> Result<f64> {
    check_unit(x, "entropy argument")?;
    Ok(h(x))
}

/// `H₄(x) = x log₄3 − x log₄x − (1−x) log₄(1−x)`.
pub fn entropy4(x: f64) -> Result<f64> {
    check_unit(x, "entropy4 argument")?;
    Ok(h4(x))
}

/// A relative distance together with its radius parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaRho {
    pub delta: f64,
    pub rho: f64,
}

/// `ρ = 1/2 − √(δ(1−δ))`.
pub fn rho_of_delta(delta: f64) -> Result<DeltaRho> {
    check_delta(delta)?;
    Ok(DeltaRho {
        delta,
        rho: rho(delta),
    })
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta <= 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("relative distance must lie in (0, 1/2], got {delta}")))
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho > 0.0 && rho < 0.5 {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must lie in (0, 1/2), got {rho}")))
    }
}

/// The bound catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    /// Gilbert–Varshamov, a lower bound for comparison.
    Gv,
    /// First linear-programming bound.
    Lp1,
    /// Second linear-programming bound.
    Lp2,
    Bklm,
    /// Shortening recursion applied to `Lp2`.
    Bhl,
    IsGeneral,
    IsW3,
    IsW4,
    NewGeneral,
    NewW3,
    NewW4,
}

impl Curve {
    pub const ALL: [Curve; 11] = [
        Curve::Gv,
        Curve::Lp1,
        Curve::Lp2,
        Curve::Bklm,
        Curve::Bhl,
        Curve::IsGeneral,
        Curve::IsW3,
        Curve::IsW4,
        Curve::NewGeneral,
        Curve::NewW3,
        Curve::NewW4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Curve::Gv => "gv",
            Curve::Lp1 => "lp1",
            Curve::Lp2 => "lp2",
            Curve::Bklm => "bklm",
            Curve::Bhl => "bhl",
            Curve::IsGeneral => "is_general",
            Curve::IsW3 => "is_w3",
            Curve::IsW4 => "is_w4",
            Curve::NewGeneral => "new_general",
            Curve::NewW3 => "new_w3",
            Curve::NewW4 => "new_w4",
        }
    }

    /// Comma-separated list of every catalog name.
    pub fn catalog() -> String {
        Curve::ALL.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
    }

    /// True for curves that bound general binary codes, where `w` is ignored.
    pub fn is_classical(self) -> bool {
        matches!(self, Curve::Gv | Curve::Lp1 | Curve::Lp2)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::UnknownCurve {
                name: s.to_string(),
                known: Curve::catalog(),
            })
    }
}

/// A curve bound to a density parameter and optimizer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCurve {
    pub curve: Curve,
    pub w: usize,
    pub optimizer: OptimizerSettings,
}

impl BoundCurve {
    pub fn new(curve: Curve, w: usize) -> Self {
        BoundCurve {
            curve,
            w,
            optimizer: OptimizerSettings::default(),
        }
    }

    pub fn with_optimizer(mut self, optimizer: OptimizerSettings) -> Self {
        self.optimizer = optimizer;
        self
    }

    /// Parses a catalog name.
    pub fn parse(name: &str, w: usize) -> Result<Self> {
        Ok(Self::new(name.parse()?, w))
    }

    pub fn name(&self) -> &'static str {
        self.curve.name()
    }

    /// Value of the curve at `delta`.
    pub fn evaluate(&self, delta: f64) -> Result<f64> {
        check_delta(delta)?;
        if self.w < 2 && !self.curve.is_classical() {
            return Err(Error::Domain(format!("density parameter w must be at least 2, got {}", self.w)));
        }
        Ok(self.eval_unchecked(delta))
    }

    /// Evaluation without domain checks; `delta` may be any value in
    /// `[0, 1/2]`.
    fn eval_unchecked(&self, delta: f64) -> f64 {
        let delta = delta.clamp(0.0, 0.5);
        let w = self.w as f64;
        match self.curve {
            Curve::Gv => 1.0 - h(delta),
            Curve::Lp1 => lp1(delta),
            Curve::Lp2 => lp2(delta, &self.optimizer).value,
            Curve::Bklm => {
                let denom = h((1.0 - (1.0 - delta).powf(w)) / 2.0);
                1.0 - h(delta / 2.0) / denom
            }
            Curve::Bhl => {
                let base = BoundCurve::new(Curve::Lp2, self.w).with_optimizer(self.optimizer);
                shortening(&base, self.w, delta, &self.optimizer).value
            }
            Curve::IsGeneral => {
                let r = rho(delta);
                h(r) - LOG2_E / (8.0 * w * w) * (r.powf(w) / 2.0).powf(w + 1.0)
            }
            Curve::IsW3 => {
                if delta <= w3_threshold() {
                    2.0 / 3.0
                } else {
                    let r = rho(delta);
                    (2.0 / 3.0f64).min(r + h(2.0 * r) / 2.0)
                }
            }
            Curve::IsW4 => {
                let r = rho(delta);
                h(r) + r / 2.0 * quartic_f(r).log2()
            }
            Curve::NewGeneral => ball_closed_form(BallVariant::General(self.w), rho(delta)).1,
            Curve::NewW3 => {
                if delta <= w3_threshold() {
                    2.0 / 3.0
                } else {
                    2.0 / 3.0 * h4(3.0 * rho(delta))
                }
            }
            Curve::NewW4 => ball_closed_form(BallVariant::W4, rho(delta)).1,
        }
    }
}

fn lp1(delta: f64) -> f64 {
    h(rho(delta))
}

fn lp2(delta: f64, settings: &OptimizerSettings) -> OptimizationResult {
    let objective = |u: f64| {
        let inner = (u * u + 2.0 * delta * u + 2.0 * delta).sqrt();
        let a = ((1.0 - u) / 2.0).clamp(0.0, 0.5);
        let b = ((1.0 - inner) / 2.0).clamp(0.0, 0.5);
        1.0 + lp1(a) - lp1(b)
    };
    minimize(objective, 0.0, (1.0 - 2.0 * delta).max(0.0), settings)
}

/// `F(ρ) = (1−ρ)⁴ + 4ρ(1−ρ)³ + 6ρ²(1−ρ)²`.
fn quartic_f(r: f64) -> f64 {
    let s = 1.0 - r;
    s.powi(4) + 4.0 * r * s.powi(3) + 6.0 * r * r * s * s
}

/// Evaluates `curve` at `delta`.
pub fn evaluate_bound(curve: &BoundCurve, delta: f64) -> Result<f64> {
    curve.evaluate(delta)
}

fn shortening(base: &BoundCurve, w: usize, delta: f64, settings: &OptimizerSettings) -> OptimizationResult {
    let w = w as f64;
    let objective = |t: f64| {
        let inner = (delta / (1.0 - t)).min(0.5);
        (1.0 - t) * base.eval_unchecked(inner) + t - t / w
    };
    minimize(objective, 0.0, (1.0 - 2.0 * delta).max(0.0), settings)
}

/// Minimizes `(1−t)·R(δ/(1−t)) + t − t/w` over `t ∈ [0, 1−2δ]`.
pub fn apply_shortening(base: &BoundCurve, w: usize, delta: f64) -> Result<OptimizationResult> {
    base.evaluate(delta)?;
    if w == 0 {
        return Err(Error::Domain("density parameter w must be positive".into()));
    }
    Ok(shortening(base, w, delta, &base.optimizer))
}

/// Second linear-programming bound with its minimizing `u`.
pub fn lp2_with_argmin(delta: f64, settings: &OptimizerSettings) -> Result<OptimizationResult> {
    check_delta(delta)?;
    Ok(lp2(delta, settings))
}

/// Which growth base the ball exponent uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallVariant {
    /// `(1+λ)^w / (1+λ^w)` per `w` coordinates.
    General(usize),
    /// `1 + 3λ` per three coordinates.
    W3,
    /// `1 + 4λ + 6λ²` per four coordinates.
    W4,
}

impl BallVariant {
    /// `log₂` of the growth base, per coordinate.
    fn per_coordinate(self, lambda: f64) -> f64 {
        match self {
            BallVariant::General(w) => {
                let w = w as f64;
                lambda.ln_1p() / std::f64::consts::LN_2 - lambda.powf(w).ln_1p() / (w * std::f64::consts::LN_2)
            }
            BallVariant::W3 => (3.0 * lambda).ln_1p() / (3.0 * std::f64::consts::LN_2),
            BallVariant::W4 => (4.0 * lambda + 6.0 * lambda * lambda).ln_1p() / (4.0 * std::f64::consts::LN_2),
        }
    }
}

/// The ball exponent objective `(1/w)·log₂ base(λ) − ρ·log₂ λ`.
pub fn ball_objective(variant: BallVariant, rho: f64, lambda: f64) -> f64 {
    variant.per_coordinate(lambda) - rho * lambda.log2()
}

/// Minimizes [`ball_objective`] over `λ ∈ [1e-6, 1]`. The scan runs in
/// `ln λ`, so the reported argmin is `λ` itself.
pub fn ball_exponent_bound(variant: BallVariant, rho: f64, settings: &OptimizerSettings) -> Result<OptimizationResult> {
    check_rho(rho)?;
    if let BallVariant::General(w) = variant {
        if w < 2 {
            return Err(Error::Domain(format!("density parameter w must be at least 2, got {w}")));
        }
    }
    let r = minimize(|s| ball_objective(variant, rho, s.exp()), LAMBDA_FLOOR.ln(), 0.0, settings);
    Ok(OptimizationResult {
        argmin: r.argmin.exp(),
        ..r
    })
}

/// `(λ, exponent)` at the closed-form choice of `λ`.
///
/// For the general and quartic bases `λ = ρ/(1−ρ)`. For the cubic base
/// `λ = ρ/(1−3ρ)` below `ρ = 1/4` and `λ = 1` above.
pub fn ball_closed_form(variant: BallVariant, rho: f64) -> (f64, f64) {
    match variant {
        BallVariant::General(w) => {
            let lambda = rho / (1.0 - rho);
            let w = w as f64;
            (lambda, h(rho) - lambda.powf(w).ln_1p() / (w * std::f64::consts::LN_2))
        }
        BallVariant::W3 => {
            if rho >= 0.25 {
                (1.0, 2.0 / 3.0)
            } else {
                (rho / (1.0 - 3.0 * rho), 2.0 / 3.0 * h4(3.0 * rho))
            }
        }
        BallVariant::W4 => (rho / (1.0 - rho), h(rho) + quartic_f(rho).log2() / 4.0),
    }
}

/// The cubic ball exponent of the earlier bound: `2/3` for `ρ ≥ 1/4`, else
/// `min{2/3, ρ + H(2ρ)/2}`. This is the rate curve of [`Curve::IsW3`]
/// written in `ρ`.
pub fn iceland_ball_w3(rho: f64) -> f64 {
    if rho >= 0.25 {
        2.0 / 3.0
    } else {
        (2.0 / 3.0f64).min(rho + h(2.0 * rho) / 2.0)
    }
}

/// `log₂` of the ratio between the correction terms of the new and old
/// general bounds.
pub fn log2_correction_ratio(w: usize, delta: f64) -> f64 {
    let r = rho(delta);
    let wf = w as f64;
    let x = r / (1.0 - r);
    let new = x.powf(wf).ln_1p() / (wf * std::f64::consts::LN_2);
    let old_log2 = LOG2_E.log2() - (8.0 * wf * wf).log2() + (wf + 1.0) * (wf * r.log2() - 1.0);
    new.log2() - old_log2
}

/// One grid point of [`comparison_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub delta: f64,
    pub new_general: f64,
    pub is_general: f64,
    pub new_w3: f64,
    pub is_w3: f64,
    pub new_w4: f64,
    pub is_w4: f64,
    pub log2_ratio: f64,
    pub log2_ratio_floor: f64,
    pub failures: Vec<String>,
}

impl ComparisonRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub w: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ComparisonRow::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Checks the new bounds against the earlier ones at every `δ` of the grid.
pub fn comparison_report(w: usize, delta_grid: &[f64]) -> Result<ComparisonReport> {
    for &d in delta_grid {
        check_delta(d)?;
    }
    if w < 2 {
        return Err(Error::Domain(format!("density parameter w must be at least 2, got {w}")));
    }
    let curve = |c| BoundCurve::new(c, w);
    let threshold = w3_threshold();
    let rows = par::map(Execution::default(), delta_grid.to_vec(), |delta| {
        let mut row = ComparisonRow {
            delta,
            new_general: curve(Curve::NewGeneral).eval_unchecked(delta),
            is_general: curve(Curve::IsGeneral).eval_unchecked(delta),
            new_w3: curve(Curve::NewW3).eval_unchecked(delta),
            is_w3: curve(Curve::IsW3).eval_unchecked(delta),
            new_w4: curve(Curve::NewW4).eval_unchecked(delta),
            is_w4: curve(Curve::IsW4).eval_unchecked(delta),
            log2_ratio: log2_correction_ratio(w, delta),
            log2_ratio_floor: (w as f64).log2() + (w * w + w + 3) as f64,
            failures: Vec::new(),
        };
        if row.new_general >= row.is_general {
            row.failures.push("new_general < is_general".into());
        }
        if row.new_w4 >= row.is_w4 {
            row.failures.push("new_w4 < is_w4".into());
        }
        if row.new_w3 > row.is_w3 || (delta > threshold && row.new_w3 >= row.is_w3) {
            row.failures.push("new_w3 <= is_w3".into());
        }
        if row.log2_ratio <= row.log2_ratio_floor {
            row.failures.push("correction ratio > w·2^(w²+w+3)".into());
        }
        row
    });
    Ok(ComparisonReport { w, rows })
}

/// `count` equally spaced values from `min` to `max` inclusive with the given
/// step. Floating drift at the end is absorbed.
pub fn delta_range(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !step.is_finite() {
        return Err(Error::Domain(format!("step must be positive, got {step}")));
    }
    if min.is_nan() || max.is_nan() || min > max {
        return Err(Error::Domain(format!("empty range {min}..{max}")));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    let out: Vec<f64> = (0..count).map(|i| min + step * i as f64).collect();
    for &d in &out {
        check_delta(d)?;
    }
    Ok(out)
}

/// A table of curve values on a `δ` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundTable {
    pub curves: Vec<BoundCurve>,
    pub shortened: bool,
    pub deltas: Vec<f64>,
    /// `values[i][j]` is curve `j` at `deltas[i]`.
    pub values: Vec<Vec<f64>>,
}

impl BoundTable {
    /// CSV with header `delta,<curve>,...` and 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("delta");
        for c in &self.curves {
            out.push(',');
            out.push_str(c.name());
        }
        out.push('\n');
        for (d, row) in self.deltas.iter().zip(&self.values) {
            out.push_str(&crate::format_sig(*d));
            for v in row {
                out.push(',');
                out.push_str(&crate::format_sig(*v));
            }
            out.push('\n');
        }
        out
    }
}

/// Evaluates every curve at every `δ`, optionally wrapped in the shortening
/// recursion. Rows are computed concurrently.
pub fn bound_table(curves: &[BoundCurve], deltas: &[f64], shortened: bool, exec: Execution) -> Result<BoundTable> {
    for &d in deltas {
        check_delta(d)?;
    }
    for c in curves {
        c.evaluate(deltas.first().copied().unwrap_or(0.25))?;
    }
    let values = par::map(exec, deltas.to_vec(), |d| {
        curves
            .iter()
            .map(|c| {
                if shortened {
                    shortening(c, c.w, d, &c.optimizer).value
                } else {
                    c.eval_unchecked(d)
                }
            })
            .collect()
    });
    Ok(BoundTable {
        curves: curves.to_vec(),
        shortened,
        deltas: deltas.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    fn eval(c: Curve, w: usize, d: f64) -> f64 {
        BoundCurve::new(c, w).evaluate(d).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(0.5).unwrap(), 1.0);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert!((entropy(0.25).unwrap() - (2.0 - 0.75 * 3f64.log2())).abs() < EPS);
        assert!(entropy(1.5).is_err());
        assert!(entropy(-0.1).is_err());
    }

    #[test]
    fn entropy4_values() {
        assert_eq!(entropy4(0.0).unwrap(), 0.0);
        assert!((entropy4(0.75).unwrap() - 1.0).abs() < EPS);
        assert!((entropy4(1.0).unwrap() - 3f64.log2() / 2.0).abs() < EPS);
    }

    #[test]
    fn rho_examples() {
        assert!((rho_of_delta(0.1).unwrap().rho - 0.2).abs() < EPS);
        assert!((rho_of_delta(w3_threshold()).unwrap().rho - 0.25).abs() < EPS);
        assert!(rho_of_delta(0.5).unwrap().rho.abs() < EPS);
        assert!(rho_of_delta(0.0).is_err());
        assert!(rho_of_delta(0.6).is_err());
    }

    #[test]
    fn catalog_round_trip() {
        for c in Curve::ALL {
            assert_eq!(c.name().parse::<Curve>().unwrap(), c);
        }
        match "mrrw".parse::<Curve>() {
            Err(Error::UnknownCurve { known, .. }) => assert!(known.contains("new_w3")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn curve_examples() {
        assert_eq!(eval(Curve::NewW3, 3, 0.05), 2.0 / 3.0);
        assert!(eval(Curve::Gv, 3, 0.5).abs() < EPS);
        let d = w3_threshold();
        assert!((eval(Curve::Lp1, 3, d) - h(0.25)).abs() < 1e-12);
        assert!(eval(Curve::NewW3, 3, 0.3) < eval(Curve::IsW3, 3, 0.3));
    }

    #[test]
    fn new_w3_is_continuous_at_threshold() {
        let d = w3_threshold();
        let upper = 2.0 / 3.0 * h4(3.0 * rho(d));
        assert!((upper - 2.0 / 3.0).abs() < 1e-9);
        assert!((eval(Curve::NewW3, 3, d + 1e-12) - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn values_lie_in_unit_interval() {
        let settings = OptimizerSettings::coarse();
        for w in 3..=6 {
            for i in 1..50 {
                let d = i as f64 / 100.0;
                for c in Curve::ALL {
                    let v = BoundCurve::new(c, w).with_optimizer(settings).evaluate(d).unwrap();
                    assert!((-1e-12..=1.0 + 1e-12).contains(&v), "{c} at {d}: {v}");
                }
            }
        }
    }

    #[test]
    fn lp2_matches_lp1_on_upper_range() {
        let settings = OptimizerSettings::default();
        for i in 0..=10 {
            let d = 0.28 + 0.02 * i as f64;
            let r = lp2_with_argmin(d, &settings).unwrap();
            assert!((r.value - lp1(d)).abs() < 1e-6, "δ = {d}");
            let res = (1.0 - 2.0 * d) / (settings.grid_points - 1) as f64;
            assert!((r.argmin - (1.0 - 2.0 * d)).abs() <= res, "δ = {d}: u = {}", r.argmin);
        }
        let r = lp2_with_argmin(0.2, &settings).unwrap();
        assert!(lp1(0.2) - r.value > 1e-4);
    }

    #[test]
    fn shortening_never_increases() {
        // The shortened second-kind bound nests three minimizations.
        let settings = OptimizerSettings {
            grid_points: 33,
            refine_passes: 2,
            tolerance: 1e-6,
        };
        for c in Curve::ALL {
            for d in [0.05, 0.2, 0.35] {
                let base = BoundCurve::new(c, 4).with_optimizer(settings);
                let s = apply_shortening(&base, 4, d).unwrap();
                assert!(s.value <= base.evaluate(d).unwrap() + 1e-15, "{c} at {d}");
                assert!((0.0..=1.0 - 2.0 * d + 1e-15).contains(&s.argmin));
            }
        }
    }

    #[test]
    fn shortening_with_t_forced_to_zero() {
        // With δ = 1/2 the feasible interval is `{0}`.
        let base = BoundCurve::new(Curve::Lp1, 3);
        let s = apply_shortening(&base, 3, 0.5).unwrap();
        assert_eq!(s.argmin, 0.0);
        assert_eq!(s.value, base.evaluate(0.5).unwrap());
    }

    #[test]
    fn ball_exponent_w3_examples() {
        let s = OptimizerSettings::default();
        let r = ball_exponent_bound(BallVariant::W3, 0.25, &s).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-8);
        assert!((r.argmin - 1.0).abs() < 1e-6);
        let r = ball_exponent_bound(BallVariant::W3, 0.2, &s).unwrap();
        assert!((r.value - 2.0 / 3.0 * h4(0.6)).abs() < 1e-8);
        assert!((r.argmin - 0.5).abs() < 1e-4);
    }

    #[test]
    fn ball_closed_form_w4_example() {
        let (lambda, value) = ball_closed_form(BallVariant::W4, 0.3);
        assert!((lambda - 3.0 / 7.0).abs() < EPS);
        assert!((value - (h(0.3) + quartic_f(0.3).log2() / 4.0)).abs() < EPS);
        assert!((ball_objective(BallVariant::W4, 0.3, lambda) - value).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_are_objective_values() {
        for i in 1..50 {
            let r = i as f64 / 100.0;
            for v in [BallVariant::General(3), BallVariant::General(6), BallVariant::W3, BallVariant::W4] {
                let (lambda, value) = ball_closed_form(v, r);
                assert!((ball_objective(v, r, lambda) - value).abs() < 1e-12, "{v:?} at {r}");
            }
        }
    }

    #[test]
    fn comparison_examples() {
        let grid: Vec<f64> = (1..=9).map(|i| 0.05 * i as f64).collect();
        let report = comparison_report(4, &grid).unwrap();
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());
        let report = comparison_report(3, &[0.05]).unwrap();
        assert_eq!(report.rows[0].new_w3, report.rows[0].is_w3);
        let report = comparison_report(5, &[0.3]).unwrap();
        assert!(report.rows[0].log2_ratio > 5f64.log2() + 33.0);
    }

    #[test]
    fn delta_range_counts() {
        assert_eq!(delta_range(0.05, 0.45, 0.05).unwrap().len(), 9);
        assert!(delta_range(0.05, 0.45, 0.0).is_err());
        assert!(delta_range(0.05, 0.45, -0.1).is_err());
    }

    #[test]
    fn table_csv() {
        let curves = [BoundCurve::new(Curve::Lp1, 3), BoundCurve::new(Curve::NewW3, 3)];
        let deltas = delta_range(0.05, 0.45, 0.05).unwrap();
        let t = bound_table(&curves, &deltas, false, Execution::default()).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "delta,lp1,new_w3");
        assert_eq!(lines.len(), 10);
        assert!(lines[1].ends_with(",0.666666666667"));
    }

    #[test]
    fn sequential_and_parallel_tables_agree() {
        let curves = [BoundCurve::new(Curve::Lp2, 3).with_optimizer(OptimizerSettings::coarse())];
        let deltas = delta_range(0.05, 0.45, 0.05).unwrap();
        let a = bound_table(&curves, &deltas, true, Execution::Sequential).unwrap();
        let b = bound_table(&curves, &deltas, true, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
