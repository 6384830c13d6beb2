//! Local growth of `Q` when low-weight generators are added one at a time.
//!
//! Adding a word that brings `v` new coordinates multiplies `Q` by at most
//! `max_Δ Φ_{v,Δ}(λ)` with
//!
//! ```text
//! Φ_{v,Δ}(λ) = Σ_{t=0}^{v} C(v,t) λ^{min(t, Δ+v−t)} / (1 + λ^Δ),   0 ≤ Δ ≤ w − v.
//! ```
//!
//! Each factor is in turn bounded by `base(λ)^{v/w}` where `base` is
//! `(1+λ)^w/(1+λ^w)` in general, `1+3λ` for `w = 3` and `1+4λ+6λ²` for
//! `w = 4`. Multiplying along a greedy cover of `[n]` gives
//! `Q_C(λ) ≤ base(λ)^{n/w}`. Everything here is checked in exact rational
//! arithmetic.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cwgf::{binomial, coset_weight_distribution, CosetWeightDistribution};
use crate::error::{Error, Result};
use crate::f2::{BitVector, GeneratorSet, LinearCode};
use crate::grid::{to_f64, LambdaGrid, Rational};
use crate::poly::IntPolynomial;

/// Parameters `(v, Δ)` of a local factor under weight cap `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalFactorSpec {
    pub v: usize,
    pub delta: usize,
    pub w: usize,
}

impl LocalFactorSpec {
    pub fn new(v: usize, delta: usize, w: usize) -> Result<Self> {
        if v + delta > w {
            return Err(Error::Precondition(format!("v + Δ = {} exceeds w = {w}", v + delta)));
        }
        Ok(LocalFactorSpec { v, delta, w })
    }

    /// All admissible pairs with `v ≥ 1`, ordered by `(v, Δ)`.
    pub fn admissible(w: usize) -> Vec<LocalFactorSpec> {
        (1..=w)
            .flat_map(|v| (0..=w - v).map(move |delta| LocalFactorSpec { v, delta, w }))
            .collect()
    }
}

/// `Σ_t C(v,t) λ^{min(t, Δ+v−t)}`.
pub fn phi_numerator(v: usize, delta: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); v + 1];
    for t in 0..=v {
        coeffs[t.min(delta + v - t)] += BigInt::from(binomial(v, t));
    }
    IntPolynomial::new(coeffs)
}

/// `1 + λ^Δ`.
pub fn phi_denominator(delta: usize) -> IntPolynomial {
    &IntPolynomial::one() + &IntPolynomial::monomial(BigInt::one(), delta)
}

fn check_open_unit(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda > Rational::one() {
        Err(Error::Domain(format!("λ = {lambda} is outside (0, 1]")))
    } else {
        Ok(())
    }
}

fn phi_unchecked(v: usize, delta: usize, lambda: &Rational) -> Rational {
    phi_numerator(v, delta).eval(lambda) / phi_denominator(delta).eval(lambda)
}

/// `Φ_{v,Δ}(λ)` exactly, for `λ ∈ (0, 1]`.
pub fn phi(spec: LocalFactorSpec, lambda: &Rational) -> Result<Rational> {
    check_open_unit(lambda)?;
    Ok(phi_unchecked(spec.v, spec.delta, lambda))
}

pub fn phi_f64(v: usize, delta: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain(format!("λ = {lambda} is outside (0, 1]")));
    }
    Ok(phi_numerator(v, delta).eval_f64(lambda) / phi_denominator(delta).eval_f64(lambda))
}

/// `max_{0 ≤ Δ ≤ w−v} Φ_{v,Δ}(λ)`: the one-step growth bound.
pub fn max_phi(v: usize, w: usize, lambda: &Rational) -> Result<Rational> {
    check_open_unit(lambda)?;
    if v > w {
        return Err(Error::Precondition(format!("{v} new coordinates exceed w = {w}")));
    }
    Ok((0..=w - v)
        .map(|delta| phi_unchecked(v, delta, lambda))
        .max()
        .expect("nonempty range"))
}

/// The per-`w` growth base whose `1/w`-th power bounds the growth per new
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthBound {
    /// `(1+λ)^w / (1+λ^w)`, any `w`.
    General(usize),
    /// `1 + 3λ`, for `w = 3`.
    Cubic,
    /// `1 + 4λ + 6λ²`, for `w = 4`.
    Quartic,
}

impl GrowthBound {
    pub fn w(self) -> usize {
        match self {
            GrowthBound::General(w) => w,
            GrowthBound::Cubic => 3,
            GrowthBound::Quartic => 4,
        }
    }

    /// The sharpest bound available for `w`.
    pub fn sharpest(w: usize) -> Self {
        match w {
            3 => GrowthBound::Cubic,
            4 => GrowthBound::Quartic,
            w => GrowthBound::General(w),
        }
    }

    /// General bound plus the sharp one where it exists.
    pub fn applicable(w: usize) -> Vec<Self> {
        match w {
            3 => vec![GrowthBound::General(3), GrowthBound::Cubic],
            4 => vec![GrowthBound::General(4), GrowthBound::Quartic],
            w => vec![GrowthBound::General(w)],
        }
    }

    pub fn name(self) -> String {
        match self {
            GrowthBound::General(w) => format!("general(w={w})"),
            GrowthBound::Cubic => "1+3λ".into(),
            GrowthBound::Quartic => "1+4λ+6λ²".into(),
        }
    }

    /// `(numerator, denominator)` of the base as polynomials in `λ`.
    pub fn polynomials(self) -> (IntPolynomial, IntPolynomial) {
        match self {
            GrowthBound::General(w) => {
                let one = IntPolynomial::one();
                let num = IntPolynomial::from_i64(&[1, 1]).pow(w as u32);
                let den = &one + &IntPolynomial::monomial(BigInt::one(), w);
                (num, den)
            }
            GrowthBound::Cubic => (IntPolynomial::from_i64(&[1, 3]), IntPolynomial::one()),
            GrowthBound::Quartic => (IntPolynomial::from_i64(&[1, 4, 6]), IntPolynomial::one()),
        }
    }

    pub fn base(self, lambda: &Rational) -> Rational {
        let (num, den) = self.polynomials();
        num.eval(lambda) / den.eval(lambda)
    }

    pub fn base_f64(self, lambda: f64) -> f64 {
        let (num, den) = self.polynomials();
        num.eval_f64(lambda) / den.eval_f64(lambda)
    }

    /// Exact test of `value ≤ base(λ)^{m/w}` for `value > 0`, by comparing
    /// `value^w` with `base^m`.
    pub fn dominates(self, value: &Rational, m: usize, lambda: &Rational) -> bool {
        num_traits::pow(value.clone(), self.w()) <= num_traits::pow(self.base(lambda), m)
    }

    /// Exact test of `value = base(λ)^{m/w}`.
    pub fn equals(self, value: &Rational, m: usize, lambda: &Rational) -> bool {
        num_traits::pow(value.clone(), self.w()) == num_traits::pow(self.base(lambda), m)
    }

    /// `base(λ)^{m/w}` in binary64.
    pub fn power_f64(self, m: usize, lambda: f64) -> f64 {
        self.base_f64(lambda).powf(m as f64 / self.w() as f64)
    }
}

/// `((1+λ)^w / (1+λ^w))^{1/w}`: the general growth per new coordinate.
pub fn phi_bound_general(w: usize, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::Domain(format!("λ = {lambda} is outside (0, 1]")));
    }
    Ok(GrowthBound::General(w).power_f64(1, lambda))
}

/// Result of checking `Φ_{v,Δ} ≤ base^{v/w}` for one pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairCheck {
    pub spec: LocalFactorSpec,
    /// Largest `Φ − base^{v/w}` over the grid; never positive when the lemma holds.
    pub max_excess: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhiLemmaReport {
    pub bound: GrowthBound,
    pub pairs: Vec<PairCheck>,
    pub max_excess: f64,
    pub holds: bool,
}

/// Checks `Φ_{v,Δ}(λ) ≤ base(λ)^{v/w}` for every admissible pair `v ≥ 1`
/// and every grid point, exactly.
pub fn check_phi_lemmas(bound: GrowthBound, grid: &LambdaGrid) -> Result<PhiLemmaReport> {
    grid.require_positive()?;
    let w = bound.w();
    let mut pairs = Vec::new();
    for spec in LocalFactorSpec::admissible(w) {
        let mut holds = true;
        let mut max_excess = f64::NEG_INFINITY;
        for lambda in grid.points() {
            let value = phi(spec, lambda)?;
            holds &= bound.dominates(&value, spec.v, lambda);
            let excess = to_f64(&value) - bound.power_f64(spec.v, to_f64(lambda));
            max_excess = max_excess.max(excess);
        }
        pairs.push(PairCheck {
            spec,
            max_excess,
            holds,
        });
    }
    let holds = pairs.iter().all(|p| p.holds);
    let max_excess = pairs
        .iter()
        .map(|p| p.max_excess)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(PhiLemmaReport {
        bound,
        pairs,
        max_excess,
        holds,
    })
}

/// How the sign of a certified difference is established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCertificate {
    /// Every coefficient of the cofactor is nonnegative.
    NonnegativeCoefficients,
    /// The cofactor is positive at 0 and has a linear, nonnegative derivative
    /// on `[0, 1]`, so it is positive on `(0, 1]`.
    IncreasingOnUnitInterval,
}

/// One polynomial identity `lhs = λ^shift · cofactor` with a sign argument.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCertificate {
    pub name: &'static str,
    /// The inequality this identity establishes.
    pub proves: &'static str,
    pub expanded: IntPolynomial,
    pub stated: IntPolynomial,
    pub sign: SignCertificate,
}

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn sign_holds(cofactor: &IntPolynomial, sign: SignCertificate) -> bool {
    match sign {
        SignCertificate::NonnegativeCoefficients => cofactor.all_coeffs_nonnegative(),
        SignCertificate::IncreasingOnUnitInterval => {
            let d = cofactor.derivative();
            let zero = Rational::zero();
            let one = Rational::one();
            cofactor.eval(&zero).is_positive()
                && d.degree().unwrap_or(0) <= 1
                && !d.eval(&zero).is_negative()
                && !d.eval(&one).is_negative()
        }
    }
}

/// Expands the seven polynomial identities behind the `w = 3` and `w = 4`
/// local-factor bounds and checks each against its stated factored form and
/// sign argument.
pub fn verify_appendix_identities() -> Result<Vec<IdentityCertificate>> {
    let one_plus = |k: usize| &IntPolynomial::one() + &IntPolynomial::monomial(BigInt::one(), k);
    let b = p(&[1, 4, 6]);
    let l = IntPolynomial::from_i64(&[1, 1]);
    let l3 = p(&[1, 3]);

    // (name, proves, expanded lhs, shift, cofactor, sign)
    let cases: Vec<(&'static str, &'static str, IntPolynomial, usize, IntPolynomial, SignCertificate)> = vec![
        (
            "(1+3λ)(1+λ²)³ − (1+λ)³",
            "Φ_{1,2} ≤ (1+3λ)^{1/3}",
            &(&l3 * &one_plus(2).pow(3)) - &l.pow(3),
            3,
            p(&[8, 3, 9, 1, 3]),
            SignCertificate::NonnegativeCoefficients,
        ),
        (
            "(1+3λ)² − (1+λ)³",
            "Φ_{2,0} ≤ (1+3λ)^{2/3}",
            &l3.pow(2) - &l.pow(3),
            1,
            p(&[3, 6, -1]),
            SignCertificate::IncreasingOnUnitInterval,
        ),
        (
            "(1+λ)³ − (1+3λ)",
            "Φ_{2,1} ≤ (1+3λ)^{2/3}",
            &l.pow(3) - &l3,
            2,
            p(&[3, 1]),
            SignCertificate::NonnegativeCoefficients,
        ),
        (
            "B(λ)(1+λ³)⁴ − (1+λ)⁴",
            "Φ_{1,3} ≤ B(λ)^{1/4}",
            &(&b * &one_plus(3).pow(4)) - &l.pow(4),
            4,
            p(&[15, 24, 6, 24, 36, 4, 16, 24, 1, 4, 6]),
            SignCertificate::NonnegativeCoefficients,
        ),
        (
            "B(λ)(1+λ²)² − (1+λ)⁴",
            "Φ_{2,2} ≤ B(λ)^{1/2}",
            &(&b * &one_plus(2).pow(2)) - &l.pow(4),
            0,
            p(&[0, 0, 2, 4, 12, 4, 6]),
            SignCertificate::NonnegativeCoefficients,
        ),
        (
            "B(λ)³ − (1+3λ)⁴",
            "Φ_{3,0} ≤ B(λ)^{3/4}",
            &b.pow(3) - &l3.pow(4),
            0,
            p(&[0, 0, 12, 100, 315, 432, 216]),
            SignCertificate::NonnegativeCoefficients,
        ),
        (
            "B(λ) − (1+4λ+3λ²)",
            "Φ_{4,0} ≤ B(λ)",
            &b - &phi_numerator(4, 0).halve(),
            2,
            p(&[3]),
            SignCertificate::NonnegativeCoefficients,
        ),
    ];

    let mut out = Vec::with_capacity(cases.len());
    for (name, proves, expanded, shift, cofactor, sign) in cases {
        let stated = cofactor.shift(shift);
        if expanded != stated {
            return Err(Error::Certificate(format!(
                "{name}: expands to {expanded}, stated {stated}"
            )));
        }
        if !sign_holds(&cofactor, sign) {
            return Err(Error::Certificate(format!("{name}: sign argument fails for {cofactor}")));
        }
        out.push(IdentityCertificate {
            name,
            proves,
            expanded,
            stated,
            sign,
        });
    }
    Ok(out)
}

impl IntPolynomial {
    /// Exact division of every coefficient by two.
    fn halve(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs().iter().map(|c| c / 2).collect())
    }
}

/// One grid point of a growth certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthPoint {
    pub lambda: Rational,
    /// `Q_D(λ) / Q_C(λ)`.
    pub ratio: Rational,
    /// `max_Δ Φ_{|V|,Δ}(λ)`.
    pub bound: Rational,
    pub holds: bool,
}

/// The one-step growth of `Q` when one generator is added.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCertificate {
    pub step: usize,
    pub new_coords: Vec<usize>,
    pub points: Vec<GrowthPoint>,
    pub holds: bool,
}

fn distribution_on(code: &LinearCode, coords: &[usize]) -> Result<CosetWeightDistribution> {
    if coords.is_empty() {
        return Ok(CosetWeightDistribution::trivial());
    }
    coset_weight_distribution(&code.restrict(coords)?)
}

/// Checks `Q_D(λ)/Q_C(λ) ≤ max_{0≤Δ≤w−|V|} Φ_{|V|,Δ}(λ)` where `C` is `base`
/// viewed on the coordinates `u`, `V = supp(b) ∖ u` and
/// `D = ⟨C × {0_V}, b⟩` on `u ∪ V`.
pub fn extension_ratio(
    base: &LinearCode,
    u: &[usize],
    b: &BitVector,
    w: usize,
    grid: &LambdaGrid,
) -> Result<GrowthCertificate> {
    extension_step(0, base, u, b, w, grid)
}

fn extension_step(
    step: usize,
    base: &LinearCode,
    u: &[usize],
    b: &BitVector,
    w: usize,
    grid: &LambdaGrid,
) -> Result<GrowthCertificate> {
    grid.require_positive()?;
    let n = base.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    if b.weight() > w {
        return Err(Error::Precondition(format!("w_H(b) = {} exceeds w = {w}", b.weight())));
    }
    let mut u_mask = 0u64;
    for &c in u {
        if c == 0 || c > n {
            return Err(Error::CoordinateOutOfRange { coord: c, len: n });
        }
        u_mask |= 1 << (c - 1);
    }
    if base.rows().iter().any(|r| r & !u_mask != 0) {
        return Err(Error::Precondition("base code is not supported on U".into()));
    }
    let v_mask = b.bits() & !u_mask;
    if v_mask == 0 {
        return Err(Error::Precondition("supp(b) ⊆ U".into()));
    }
    let new_coords = crate::f2::support_of(v_mask);
    let mut u_sorted: Vec<usize> = u.to_vec();
    u_sorted.sort_unstable();
    u_sorted.dedup();
    let all = crate::f2::support_of(u_mask | v_mask);

    let q_c = distribution_on(base, &u_sorted)?;
    let mut extended = base.clone();
    extended.insert_bits(b.bits());
    let q_d = distribution_on(&extended, &all)?;

    let mut points = Vec::with_capacity(grid.len());
    for lambda in grid.points() {
        let ratio = q_d.evaluate(lambda)? / q_c.evaluate(lambda)?;
        let bound = max_phi(new_coords.len(), w, lambda)?;
        points.push(GrowthPoint {
            lambda: lambda.clone(),
            holds: ratio <= bound,
            ratio,
            bound,
        });
    }
    let holds = points.iter().all(|p| p.holds);
    Ok(GrowthCertificate {
        step,
        new_coords,
        points,
        holds,
    })
}

/// A generator picked by the greedy cover and the coordinates it adds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverStep {
    pub index: usize,
    pub generator: BitVector,
    pub new_coords: Vec<usize>,
}

/// Picks generators in index order, skipping any whose support is already
/// covered, until the supports cover `[n]`.
pub fn greedy_cover_order(gens: &GeneratorSet) -> Result<Vec<CoverStep>> {
    if !gens.covers_all() {
        return Err(Error::Precondition("generator supports do not cover [n]".into()));
    }
    let full = crate::f2::mask(gens.len());
    let mut covered = 0u64;
    let mut steps = Vec::new();
    for (index, g) in gens.generators().iter().enumerate() {
        if covered == full {
            break;
        }
        let fresh = g.bits() & !covered;
        if fresh == 0 {
            continue;
        }
        covered |= fresh;
        steps.push(CoverStep {
            index,
            generator: *g,
            new_coords: crate::f2::support_of(fresh),
        });
    }
    Ok(steps)
}

/// `Q_C(λ)` against one bound at one λ.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundPoint {
    pub lambda: Rational,
    pub q: Rational,
    pub bound: GrowthBound,
    pub holds: bool,
    pub equal: bool,
    /// `Q / base^{n/w}` in binary64.
    pub ratio: f64,
}

/// Checks `Q(λ) ≤ base(λ)^{n/w}` for every applicable bound and grid point.
pub fn check_distribution_against_bounds(
    dist: &CosetWeightDistribution,
    w: usize,
    grid: &LambdaGrid,
) -> Result<Vec<BoundPoint>> {
    grid.require_positive()?;
    let n = dist.len();
    let mut out = Vec::new();
    for bound in GrowthBound::applicable(w) {
        for lambda in grid.points() {
            let q = dist.evaluate(lambda)?;
            let lf = to_f64(lambda);
            out.push(BoundPoint {
                lambda: lambda.clone(),
                holds: bound.dominates(&q, n, lambda),
                equal: bound.equals(&q, n, lambda),
                ratio: to_f64(&q) / bound.power_f64(n, lf),
                bound,
                q,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCertificate {
    pub n: usize,
    pub w: usize,
    pub distribution: CosetWeightDistribution,
    pub points: Vec<BoundPoint>,
    pub chain: Vec<GrowthCertificate>,
    /// `Q_C ≤ Q_{C_s}` where `C_s` is spanned by the chosen generators.
    pub subcode_monotone: bool,
    /// Largest `Q / bound` against the sharpest bound.
    pub max_ratio: f64,
    /// `Q` equals the sharpest bound at every grid point.
    pub tight: bool,
    pub holds: bool,
}

impl TheoremCertificate {
    /// CSV `step,|V_i|,lambda,ratio,bound,pass` for the growth chain.
    pub fn chain_csv(&self) -> String {
        let mut out = String::from("step,|V_i|,lambda,ratio,bound,pass\n");
        for cert in &self.chain {
            for p in &cert.points {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    cert.step,
                    cert.new_coords.len(),
                    crate::format_sig(to_f64(&p.lambda)),
                    crate::format_sig(to_f64(&p.ratio)),
                    crate::format_sig(to_f64(&p.bound)),
                    p.holds
                );
            }
        }
        out
    }
}

/// Computes `Q` of `⟨gens⟩` exactly, compares it with every applicable
/// bound, and builds the per-step growth chain along the greedy cover.
pub fn certify_theorem_main(gens: &GeneratorSet, grid: &LambdaGrid) -> Result<TheoremCertificate> {
    let w = gens.max_weight();
    let order = greedy_cover_order(gens)?;
    let code = gens.span();
    let n = code.len();
    let distribution = coset_weight_distribution(&code)?;
    let points = check_distribution_against_bounds(&distribution, w, grid)?;

    let mut chain = Vec::with_capacity(order.len());
    let mut partial = LinearCode::zero(n)?;
    let mut covered: Vec<usize> = Vec::new();
    for (i, step) in order.iter().enumerate() {
        chain.push(extension_step(i + 1, &partial, &covered, &step.generator, w, grid)?);
        partial.insert_bits(step.generator.bits());
        covered.extend_from_slice(&step.new_coords);
    }
    let sub = coset_weight_distribution(&partial)?;
    let mut subcode_monotone = true;
    for lambda in grid.points() {
        subcode_monotone &= distribution.evaluate(lambda)? <= sub.evaluate(lambda)?;
    }

    let sharpest = GrowthBound::sharpest(w);
    let sharp: Vec<&BoundPoint> = points.iter().filter(|p| p.bound == sharpest).collect();
    let max_ratio = sharp.iter().map(|p| p.ratio).fold(f64::NEG_INFINITY, f64::max);
    let tight = !sharp.is_empty() && sharp.iter().all(|p| p.equal);
    let holds = points.iter().all(|p| p.holds) && chain.iter().all(|c| c.holds) && subcode_monotone;
    Ok(TheoremCertificate {
        n,
        w,
        distribution,
        points,
        chain,
        subcode_monotone,
        max_ratio,
        tight,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwgf::closed_form_all_one;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn gens(w: usize, rows: &[&str]) -> GeneratorSet {
        let v: Vec<BitVector> = rows.iter().map(|r| bv(r)).collect();
        GeneratorSet::new(v[0].len(), w, v).unwrap()
    }

    fn spec(v: usize, d: usize) -> LocalFactorSpec {
        LocalFactorSpec::new(v, d, v + d).unwrap()
    }

    #[test]
    fn phi_closed_forms() {
        let grid = LambdaGrid::default();
        for l in grid.points() {
            let one = Rational::one();
            assert_eq!(phi(spec(2, 1), l).unwrap(), (&one + l * Rational::from_integer(3.into())) / (&one + l));
            assert_eq!(phi(spec(1, 2), l).unwrap(), (&one + l) / (&one + l * l));
            assert_eq!(phi(spec(0, 0), l).unwrap(), q(1, 2));
            assert_eq!(
                phi(spec(4, 0), l).unwrap(),
                &one + l * Rational::from_integer(4.into()) + l * l * Rational::from_integer(3.into())
            );
        }
        assert!(phi(spec(2, 1), &q(0, 1)).is_err());
        assert!(phi(spec(2, 1), &q(3, 2)).is_err());
        assert!(LocalFactorSpec::new(3, 1, 3).is_err());
    }

    #[test]
    fn phi_table_from_the_w4_case_analysis() {
        // Φ as (numerator, denominator) for every pair with v + Δ ≤ 4.
        let table: Vec<((usize, usize), IntPolynomial, IntPolynomial)> = vec![
            ((1, 0), p(&[1]), p(&[1])),
            ((1, 1), p(&[1]), p(&[1])),
            ((1, 2), p(&[1, 1]), p(&[1, 0, 1])),
            ((1, 3), p(&[1, 1]), p(&[1, 0, 0, 1])),
            ((2, 0), p(&[1, 1]), p(&[1])),
            ((2, 1), p(&[1, 3]), p(&[1, 1])),
            ((2, 2), p(&[1, 2, 1]), p(&[1, 0, 1])),
            ((3, 0), p(&[1, 3]), p(&[1])),
            ((3, 1), p(&[1, 3]), p(&[1])),
            ((4, 0), p(&[1, 4, 3]), p(&[1])),
        ];
        for ((v, d), num, den) in table {
            // num/den = N/D  ⇔  num·D = N·den
            let lhs = &num * &phi_denominator(d);
            let rhs = &phi_numerator(v, d) * &den;
            assert_eq!(lhs, rhs, "Φ_{{{v},{d}}}");
        }
        // Φ_{2,2} − Φ_{2,1} = 2λ²(1−λ)/((1+λ)(1+λ²)) and Φ_{2,2} − Φ_{2,0} = λ(1−λ²)/(1+λ²).
        let d21 = &(&p(&[1, 2, 1]) * &p(&[1, 1])) - &(&p(&[1, 3]) * &p(&[1, 0, 1]));
        assert_eq!(d21, p(&[0, 0, 2, -2]));
        let d20 = &p(&[1, 2, 1]) - &(&p(&[1, 1]) * &p(&[1, 0, 1]));
        assert_eq!(d20, p(&[0, 1, 0, -1]));
    }

    #[test]
    fn phi_v0_numerator_is_twice_closed_form() {
        for v in 1..=8 {
            assert_eq!(
                phi_numerator(v, 0),
                closed_form_all_one(v).as_polynomial().scale(&BigInt::from(2))
            );
        }
    }

    #[test]
    fn general_bound_values() {
        assert!((phi_bound_general(3, 1.0).unwrap() - 4f64.powf(1.0 / 3.0)).abs() < 1e-15);
        assert!((phi_bound_general(4, 1.0).unwrap() - 8f64.powf(0.25)).abs() < 1e-15);
        let expected = (1.5f64.powi(5) / (1.0 + 2f64.powi(-5))).powf(0.2);
        assert!((phi_bound_general(5, 0.5).unwrap() - expected).abs() < 1e-15);
        assert!(phi_bound_general(3, 0.0).is_err());
    }

    #[test]
    fn lemma_checks() {
        let grid = LambdaGrid::uniform(10);
        let r3 = check_phi_lemmas(GrowthBound::Cubic, &grid).unwrap();
        assert_eq!(r3.pairs.len(), 6);
        assert!(r3.holds);
        let r4 = check_phi_lemmas(GrowthBound::Quartic, &grid).unwrap();
        assert_eq!(r4.pairs.len(), 10);
        assert!(r4.holds);
        // Φ_{3,0}(1) = 4 = 1 + 3·1: equality at λ = 1.
        let at_one = LambdaGrid::from_points(vec![q(1, 1)]).unwrap();
        let r = check_phi_lemmas(GrowthBound::Cubic, &at_one).unwrap();
        let p30 = r.pairs.iter().find(|p| p.spec.v == 3 && p.spec.delta == 0).unwrap();
        assert!(p30.holds && p30.max_excess == 0.0);
        for w in 3..=8 {
            assert!(check_phi_lemmas(GrowthBound::General(w), &grid).unwrap().holds);
        }
    }

    #[test]
    fn identities() {
        let certs = verify_appendix_identities().unwrap();
        assert_eq!(certs.len(), 7);
        assert_eq!(certs[0].stated, p(&[0, 0, 0, 8, 3, 9, 1, 3]));
        assert_eq!(certs[1].stated, p(&[0, 3, 6, -1]));
        assert_eq!(certs[5].stated, p(&[0, 0, 12, 100, 315, 432, 216]));
    }

    #[test]
    fn increasing_certificate_rejects_bad_cofactors() {
        assert!(sign_holds(&p(&[3, 6, -1]), SignCertificate::IncreasingOnUnitInterval));
        assert!(!sign_holds(&p(&[3, -6]), SignCertificate::IncreasingOnUnitInterval));
        assert!(!sign_holds(&p(&[0, 1]), SignCertificate::IncreasingOnUnitInterval));
        assert!(!sign_holds(&p(&[3, 6, -1]), SignCertificate::NonnegativeCoefficients));
    }

    #[test]
    fn extension_examples() {
        // C = ⟨111⟩ on {1,2,3}, b = 001111, w = 4, λ = 1: ratio 16/4 = 4 = Φ_{3,0}(1) = Φ_{3,1}(1).
        let base = LinearCode::span(6, &[bv("111000")]).unwrap();
        let at_one = LambdaGrid::from_points(vec![q(1, 1)]).unwrap();
        let cert = extension_ratio(&base, &[1, 2, 3], &bv("001111"), 4, &at_one).unwrap();
        assert_eq!(cert.new_coords, vec![4, 5, 6]);
        assert_eq!(cert.points[0].ratio, q(4, 1));
        assert_eq!(cert.points[0].bound, q(4, 1));
        assert!(cert.holds);

        // Empty U: D = ⟨111⟩, ratio = 1 + 3λ = Φ_{3,0}.
        let base = LinearCode::zero(3).unwrap();
        let grid = LambdaGrid::default();
        let cert = extension_ratio(&base, &[], &bv("111"), 3, &grid).unwrap();
        for pt in &cert.points {
            assert_eq!(pt.ratio, phi(spec(3, 0), &pt.lambda).unwrap());
        }
        assert!(cert.holds);

        let base = LinearCode::span(3, &[bv("110")]).unwrap();
        let cert = extension_ratio(&base, &[1, 2], &bv("011"), 3, &grid).unwrap();
        assert_eq!(cert.new_coords, vec![3]);
        assert!(cert.holds);

        assert!(matches!(
            extension_ratio(&base, &[1, 2], &bv("110"), 3, &grid),
            Err(Error::Precondition(_))
        ));
        assert!(extension_ratio(&base, &[1, 2], &bv("111"), 2, &grid).is_err());
    }

    #[test]
    fn greedy_orders() {
        let order = greedy_cover_order(&gens(3, &["111000", "000111"])).unwrap();
        assert_eq!(order.iter().map(|s| s.new_coords.len()).collect::<Vec<_>>(), vec![3, 3]);
        let order = greedy_cover_order(&gens(3, &["1110", "0111"])).unwrap();
        assert_eq!(order.iter().map(|s| s.new_coords.len()).collect::<Vec<_>>(), vec![3, 1]);
        let order = greedy_cover_order(&gens(3, &["1100", "1000", "0110", "0011"])).unwrap();
        assert_eq!(order.iter().map(|s| s.index).collect::<Vec<_>>(), vec![0, 2, 3]);
        assert!(greedy_cover_order(&gens(3, &["1100"])).is_err());
    }

    #[test]
    fn theorem_on_disjoint_triples_is_tight() {
        let cert = certify_theorem_main(&gens(3, &["111000", "000111"]), &LambdaGrid::default()).unwrap();
        assert!(cert.holds && cert.tight);
        assert!((cert.max_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theorem_on_disjoint_quadruples_is_strict() {
        let cert = certify_theorem_main(&gens(4, &["11110000", "00001111"]), &LambdaGrid::default()).unwrap();
        assert!(cert.holds && !cert.tight);
        assert!(cert
            .points
            .iter()
            .filter(|p| p.bound == GrowthBound::Quartic)
            .all(|p| !p.equal && p.ratio < 1.0));
        assert!(cert.chain_csv().starts_with("step,|V_i|,lambda,ratio,bound,pass\n1,4,0.05,"));
    }
}
