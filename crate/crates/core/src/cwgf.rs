//! Coset-weight generating functions.
//!
//! For a code `C ≤ F₂ⁿ`, `Q_C(λ) = Σ_A λ^{w(A)}` over the cosets `A` of `C`,
//! where `w(A)` is the least weight of a vector in `A`. The coefficient of
//! `λʲ` is the number `N_j` of cosets whose leaders have weight `j`.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicU8, Ordering};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::f2::LinearCode;
use crate::grid::{to_f64, LambdaGrid, Rational};
use crate::par::Execution;
use crate::poly::IntPolynomial;

/// Default cap on the block length for `2ⁿ` enumeration.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 28;

/// Knobs for the brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub limit: usize,
    pub execution: Execution,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            limit: DEFAULT_ENUMERATION_LIMIT,
            execution: Execution::default(),
        }
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// The numbers `N_0..N_n` of cosets of each leader weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetWeightDistribution {
    n: usize,
    k: usize,
    counts: Vec<BigUint>,
}

impl CosetWeightDistribution {
    /// Validates `Σ N_j = 2^{n-k}`, `N_0 = 1` and `N_j ≤ C(n, j)`.
    pub fn from_counts(n: usize, k: usize, mut counts: Vec<BigUint>) -> Result<Self> {
        if k > n {
            return Err(Error::Precondition(format!("dimension {k} exceeds length {n}")));
        }
        if counts.len() > n + 1 {
            return Err(Error::Precondition(format!(
                "{} coefficients for length {n}",
                counts.len()
            )));
        }
        counts.resize(n + 1, BigUint::zero());
        if !counts[0].is_one() {
            return Err(Error::Precondition("N_0 must be 1".into()));
        }
        for (j, c) in counts.iter().enumerate() {
            if *c > binomial(n, j) {
                return Err(Error::Precondition(format!("N_{j} exceeds C({n},{j})")));
            }
        }
        let total: BigUint = counts.iter().sum();
        if total != BigUint::one() << (n - k) {
            return Err(Error::Precondition(format!(
                "coset counts sum to {total}, expected 2^{}",
                n - k
            )));
        }
        Ok(CosetWeightDistribution { n, k, counts })
    }

    /// Distribution of the only code in `F₂⁰`: one coset of weight 0.
    pub fn trivial() -> Self {
        CosetWeightDistribution {
            n: 0,
            k: 0,
            counts: vec![BigUint::one()],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, j: usize) -> BigUint {
        self.counts.get(j).cloned().unwrap_or_default()
    }

    /// Total number of cosets, `2^{n-k}`.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Largest coset weight (the covering radius).
    pub fn covering_radius(&self) -> usize {
        self.counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn as_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.counts.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    /// `Q(λ)` exactly, for `λ ∈ [0, 1]`.
    pub fn evaluate(&self, lambda: &Rational) -> Result<Rational> {
        check_unit(lambda)?;
        Ok(self.as_polynomial().eval(lambda))
    }

    /// `Q(λ)` in binary64, for `λ ∈ [0, 1]`.
    pub fn evaluate_f64(&self, lambda: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Domain(format!("λ = {lambda} is outside [0, 1]")));
        }
        Ok(self
            .counts
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lambda + c.to_f64().unwrap_or(f64::INFINITY)))
    }

    /// `Σ_{j ≤ r} N_j`.
    pub fn ball(&self, r: usize) -> BigUint {
        self.counts.iter().take(r + 1).sum()
    }

    /// CSV with header `j,count` and one row per `j = 0..=n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,count\n");
        for (j, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{j},{c}");
        }
        out
    }

    /// CSV with header `lambda,q_value`.
    pub fn q_curve_csv(&self, grid: &LambdaGrid) -> Result<String> {
        let mut out = String::from("lambda,q_value\n");
        for lambda in grid.points() {
            let q = self.evaluate(lambda)?;
            let _ = writeln!(
                out,
                "{},{}",
                crate::format_sig(to_f64(lambda)),
                crate::format_sig(to_f64(&q))
            );
        }
        Ok(out)
    }
}

fn check_unit(lambda: &Rational) -> Result<()> {
    if lambda.is_negative() || *lambda > Rational::one() {
        Err(Error::Domain(format!("λ = {lambda} is outside [0, 1]")))
    } else {
        Ok(())
    }
}

/// An exact value of `Q` at one λ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QEvaluation {
    pub lambda: Rational,
    pub value: Rational,
}

pub fn evaluate_q(dist: &CosetWeightDistribution, lambda: &Rational) -> Result<QEvaluation> {
    Ok(QEvaluation {
        lambda: lambda.clone(),
        value: dist.evaluate(lambda)?,
    })
}

/// Exact coset-weight distribution by enumerating all of `F₂ⁿ`.
pub fn coset_weight_distribution(code: &LinearCode) -> Result<CosetWeightDistribution> {
    coset_weight_distribution_with(code, &EnumerationOptions::default())
}

pub fn coset_weight_distribution_with(
    code: &LinearCode,
    opts: &EnumerationOptions,
) -> Result<CosetWeightDistribution> {
    let n = code.len();
    if n > opts.limit.min(40) {
        return Err(Error::ResourceLimit {
            what: "coset enumeration block length",
            requested: n,
            limit: opts.limit.min(40),
        });
    }
    let minima = coset_minima(code, opts.execution);
    let mut hist = vec![0u64; n + 1];
    for &m in &minima {
        hist[m as usize] += 1;
    }
    Ok(CosetWeightDistribution {
        n,
        k: code.dimension(),
        counts: hist.into_iter().map(BigUint::from).collect(),
    })
}

/// Least weight in every coset, indexed by the coset's free-coordinate
/// residue. The residue map `x ↦ reduce(x)` is linear, so each coordinate
/// contributes a fixed index mask and a Gray-code walk updates the index with
/// one XOR per step.
pub(crate) fn coset_minima(code: &LinearCode, exec: Execution) -> Vec<u8> {
    let n = code.len();
    let pivots = code.pivot_mask();
    let free: Vec<u32> = (0..n as u32).filter(|&i| pivots >> i & 1 == 0).collect();
    let compress = |v: u64| -> usize {
        free.iter()
            .enumerate()
            .fold(0usize, |acc, (j, &pos)| acc | (((v >> pos) & 1) as usize) << j)
    };
    let cols: Vec<usize> = (0..n).map(|i| compress(code.reduce_bits(1u64 << i))).collect();
    let cosets = 1usize << free.len();

    const CHUNK_BITS: usize = 14;
    let chunk_bits = n.min(CHUNK_BITS);
    let chunks = 1usize << (n - chunk_bits);
    let chunk_len = 1u64 << chunk_bits;

    let scan = |chunk: usize, visit: &mut dyn FnMut(usize, u8)| {
        let start = chunk as u64 * chunk_len;
        let mut gray = start ^ (start >> 1);
        let mut idx = crate::f2::support_of(gray)
            .into_iter()
            .fold(0usize, |acc, c| acc ^ cols[c - 1]);
        visit(idx, gray.count_ones() as u8);
        for i in start + 1..start + chunk_len {
            let bit = i.trailing_zeros() as usize;
            gray ^= 1 << bit;
            idx ^= cols[bit];
            visit(idx, gray.count_ones() as u8);
        }
    };

    if !exec.is_parallel() || chunks == 1 {
        let mut minima = vec![u8::MAX; cosets];
        for chunk in 0..chunks {
            scan(chunk, &mut |idx, w| {
                if w < minima[idx] {
                    minima[idx] = w;
                }
            });
        }
        return minima;
    }
    parallel_minima(cosets, chunks, &scan)
}

#[cfg(feature = "parallel")]
fn parallel_minima<S>(cosets: usize, chunks: usize, scan: &S) -> Vec<u8>
where
    S: Fn(usize, &mut dyn FnMut(usize, u8)) + Sync,
{
    use rayon::prelude::*;
    // Small coset tables: per-worker copies merged by elementwise min.
    // Large ones: a shared table of atomics (min is order-independent).
    if cosets <= 1 << 16 {
        (0..chunks)
            .into_par_iter()
            .fold(
                || vec![u8::MAX; cosets],
                |mut acc, chunk| {
                    scan(chunk, &mut |idx, w| {
                        if w < acc[idx] {
                            acc[idx] = w;
                        }
                    });
                    acc
                },
            )
            .reduce(
                || vec![u8::MAX; cosets],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x = (*x).min(y));
                    a
                },
            )
    } else {
        let table: Vec<AtomicU8> = (0..cosets).map(|_| AtomicU8::new(u8::MAX)).collect();
        (0..chunks).into_par_iter().for_each(|chunk| {
            scan(chunk, &mut |idx, w| {
                if w < table[idx].load(Ordering::Relaxed) {
                    table[idx].fetch_min(w, Ordering::Relaxed);
                }
            });
        });
        table.into_iter().map(AtomicU8::into_inner).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_minima<S>(cosets: usize, chunks: usize, scan: &S) -> Vec<u8>
where
    S: Fn(usize, &mut dyn FnMut(usize, u8)) + Sync,
{
    let table: Vec<AtomicU8> = (0..cosets).map(|_| AtomicU8::new(u8::MAX)).collect();
    for chunk in 0..chunks {
        scan(chunk, &mut |idx, w| {
            table[idx].fetch_min(w, Ordering::Relaxed);
        });
    }
    table.into_iter().map(AtomicU8::into_inner).collect()
}

/// `|B_T(r)|`: the number of cosets of `code_perp` with weight at most `r`.
pub fn coset_ball_size(code_perp: &LinearCode, r: usize) -> Result<BigUint> {
    if r > code_perp.len() {
        return Err(Error::Domain(format!(
            "radius {r} exceeds block length {}",
            code_perp.len()
        )));
    }
    Ok(coset_weight_distribution(code_perp)?.ball(r))
}

/// Both sides of `|B_T(r)| ≤ λ^{-r} Q(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallReport {
    pub radius: usize,
    pub lambda: Rational,
    pub ball: BigUint,
    pub bound: Rational,
    pub holds: bool,
}

pub fn check_ball_vs_q(code_perp: &LinearCode, r: usize, lambda: &Rational) -> Result<BallReport> {
    let dist = coset_weight_distribution(code_perp)?;
    ball_vs_q(&dist, r, lambda)
}

/// Same check against a precomputed distribution of `C^⊥`.
pub fn ball_vs_q(dist: &CosetWeightDistribution, r: usize, lambda: &Rational) -> Result<BallReport> {
    check_unit(lambda)?;
    if r > dist.len() {
        return Err(Error::Domain(format!("radius {r} exceeds block length {}", dist.len())));
    }
    if lambda.is_zero() && r > 0 {
        return Err(Error::Domain("λ = 0 requires r = 0".into()));
    }
    let ball = dist.ball(r);
    let q = dist.evaluate(lambda)?;
    let bound = if r == 0 {
        q
    } else {
        q / num_traits::pow(lambda.clone(), r)
    };
    let holds = Rational::from_integer(BigInt::from(ball.clone())) <= bound;
    Ok(BallReport {
        radius: r,
        lambda: lambda.clone(),
        ball,
        bound,
        holds,
    })
}

/// `Q` of `⟨1⟩ ≤ F₂ⁿ` in closed form: `½ Σ_t C(n,t) λ^{min(t, n−t)}`.
pub fn closed_form_all_one(n: usize) -> CosetWeightDistribution {
    assert!(n >= 1, "the all-one code needs n ≥ 1");
    let mut counts = vec![BigUint::zero(); n + 1];
    for t in 0..=n {
        counts[t.min(n - t)] += binomial(n, t);
    }
    for c in counts.iter_mut() {
        *c >>= 1;
    }
    CosetWeightDistribution { n, k: 1, counts }
}

/// Distribution of a direct sum of codes on disjoint coordinates: the
/// coefficient convolution.
pub fn direct_sum_distribution(
    a: &CosetWeightDistribution,
    b: &CosetWeightDistribution,
) -> CosetWeightDistribution {
    let mut counts = vec![BigUint::zero(); a.n + b.n + 1];
    for (i, x) in a.counts.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.counts.iter().enumerate() {
            counts[i + j] += x * y;
        }
    }
    CosetWeightDistribution {
        n: a.n + b.n,
        k: a.k + b.k,
        counts,
    }
}

/// `m`-fold direct sum of `d` with itself.
pub fn direct_sum_power(d: &CosetWeightDistribution, m: usize) -> CosetWeightDistribution {
    (0..m).fold(CosetWeightDistribution::trivial(), |acc, _| {
        direct_sum_distribution(&acc, d)
    })
}

/// Outcome of comparing `Q_outer ≤ Q_inner` on a λ grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// `(λ, Q_outer(λ), Q_inner(λ))`.
    pub points: Vec<(Rational, Rational, Rational)>,
    pub holds: bool,
}

/// For nested codes `inner ≤ outer`, checks `Q_outer(λ) ≤ Q_inner(λ)`.
pub fn check_monotonicity(
    inner: &LinearCode,
    outer: &LinearCode,
    grid: &LambdaGrid,
) -> Result<MonotonicityReport> {
    if !inner.is_subcode_of(outer) {
        return Err(Error::Precondition("inner code is not contained in outer code".into()));
    }
    let q_inner = coset_weight_distribution(inner)?;
    let q_outer = coset_weight_distribution(outer)?;
    let mut points = Vec::with_capacity(grid.len());
    for lambda in grid.points() {
        points.push((lambda.clone(), q_outer.evaluate(lambda)?, q_inner.evaluate(lambda)?));
    }
    let holds = points.iter().all(|(_, o, i)| o <= i);
    Ok(MonotonicityReport { points, holds })
}
