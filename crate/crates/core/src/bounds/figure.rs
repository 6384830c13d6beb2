//! Data behind the `w = 3` comparison plot: ball exponents over `ρ` and rate
//! bounds over `δ`.

use super::{ball_exponent_bound, iceland_ball_w3, BallVariant, BoundCurve, Curve, OptimizerSettings};
use crate::error::Result;
use crate::par::{self, Execution};

pub const FIGURE1_HEADER: &str = "rho,ball_our_w3,ball_iceland_w3,delta,rate_our_w3,rate_iceland_w3";
pub const FIGURE1_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Figure1Row {
    pub rho: f64,
    pub ball_our_w3: f64,
    pub ball_iceland_w3: f64,
    pub delta: f64,
    pub rate_our_w3: f64,
    pub rate_iceland_w3: f64,
}

/// Row `i` uses `ρ = δ = (i+1) / (2(points+1))`, so both grids stay strictly
/// inside `(0, 1/2)`.
pub fn figure1_rows(points: usize, exec: Execution) -> Result<Vec<Figure1Row>> {
    let settings = OptimizerSettings::default();
    let ours = BoundCurve::new(Curve::NewW3, 3);
    let theirs = BoundCurve::new(Curve::IsW3, 3);
    let rows = par::map_range(exec, points, |i| -> Result<Figure1Row> {
        let x = 0.5 * (i + 1) as f64 / (points + 1) as f64;
        Ok(Figure1Row {
            rho: x,
            ball_our_w3: ball_exponent_bound(BallVariant::W3, x, &settings)?.value,
            ball_iceland_w3: iceland_ball_w3(x),
            delta: x,
            rate_our_w3: ours.evaluate(x)?,
            rate_iceland_w3: theirs.evaluate(x)?,
        })
    });
    rows.into_iter().collect()
}

pub fn figure1_csv(rows: &[Figure1Row]) -> String {
    use crate::format_sig as f;
    let mut out = String::from(FIGURE1_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            f(r.rho),
            f(r.ball_our_w3),
            f(r.ball_iceland_w3),
            f(r.delta),
            f(r.rate_our_w3),
            f(r.rate_iceland_w3)
        ));
    }
    out
}
