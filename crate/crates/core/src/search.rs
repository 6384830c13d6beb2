//! Search over codes spanned by words of weight at most `w`.
//!
//! The extremal question is whether such a code on `n = mw` coordinates, with
//! supports covering `[n]`, can have `Q(λ)` above that of `m` disjoint blocks
//! of weight `w`, namely `Φ_{w,0}(λ)^m`. Exhaustive mode visits every such
//! code once; random mode samples spans of random covering generator sets.
//!
//! Exhaustive enumeration walks a tree whose nodes are codes. Fix an order on
//! the low-weight words. Every code spanned by low-weight words has a greedy
//! basis: scan the words in order and keep each one not yet in the span of
//! those kept. The parent of a code drops the last word of its greedy basis.
//! A word `v` extends a node `P` exactly when `v` comes after the node's last
//! basis word, `v ∉ P`, and no earlier low-weight word lies in the same coset
//! of `P` as `v`. Each code is therefore reached by one path, with no
//! deduplication table.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;

use crate::cwgf::{coset_minima, coset_weight_distribution_with, CosetWeightDistribution, EnumerationOptions};
use crate::error::{Error, Result};
use crate::f2::{mask, LinearCode};
use crate::grid::{to_f64, LambdaGrid, Rational};
use crate::localfactor::{check_distribution_against_bounds, phi, GrowthBound, LocalFactorSpec};
use crate::par::{self, Execution};
use crate::random::{random_covering_generators, rng_for};

/// Longest block length accepted by exhaustive mode, even with limits
/// overridden.
pub const EXHAUSTIVE_HARD_LIMIT: usize = 12;

/// Default exhaustive limit for weight cap `w`.
pub fn exhaustive_limit(w: usize) -> usize {
    match w {
        0..=2 => 8,
        3 => 6,
        4 => 8,
        _ => w,
    }
}

/// Default block-length limit for [`growth_bound_sweep`]. The sweep has no
/// divisibility constraint and tolerates one more coordinate at `w = 3`.
pub fn sweep_limit(w: usize) -> usize {
    match w {
        3 => 9,
        _ => exhaustive_limit(w),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "random" => Ok(SearchMode::Random),
            _ => Err(Error::Domain(format!("unknown search mode `{s}`; expected exhaustive or random"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: usize,
    pub w: usize,
    pub mode: SearchMode,
    pub sample_count: usize,
    pub seed: u64,
    pub lambda_grid: LambdaGrid,
    /// Lifts the default exhaustive limits, up to [`EXHAUSTIVE_HARD_LIMIT`].
    pub override_limits: bool,
    pub execution: Execution,
}

impl SearchConfig {
    pub fn new(n: usize, w: usize, mode: SearchMode) -> Self {
        SearchConfig {
            n,
            w,
            mode,
            sample_count: 1000,
            seed: 0,
            lambda_grid: LambdaGrid::default(),
            override_limits: false,
            execution: Execution::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.w == 0 || self.n == 0 {
            return Err(Error::Domain("n and w must be positive".into()));
        }
        if !self.n.is_multiple_of(self.w) {
            return Err(Error::Precondition(format!("w = {} does not divide n = {}", self.w, self.n)));
        }
        self.lambda_grid.require_positive()?;
        match self.mode {
            SearchMode::Exhaustive => {
                let limit = if self.override_limits {
                    EXHAUSTIVE_HARD_LIMIT
                } else {
                    exhaustive_limit(self.w).min(EXHAUSTIVE_HARD_LIMIT)
                };
                if self.n > limit {
                    return Err(Error::ResourceLimit {
                        what: "exhaustive search block length",
                        requested: self.n,
                        limit,
                    });
                }
            }
            SearchMode::Random => {
                let limit = crate::cwgf::DEFAULT_ENUMERATION_LIMIT;
                if self.n > limit {
                    return Err(Error::ResourceLimit {
                        what: "random search block length",
                        requested: self.n,
                        limit,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Nonzero words of length `n` and weight at most `w`, by weight and then
/// numerically.
fn low_weight_words(n: usize, w: usize) -> Vec<u64> {
    let mut words: Vec<u64> = (1..=mask(n)).filter(|v| v.count_ones() as usize <= w).collect();
    words.sort_by_key(|v| (v.count_ones(), *v));
    words
}

struct Tree {
    n: usize,
    words: Vec<u64>,
}

impl Tree {
    /// Indices of the words that extend `code`, given the index of its last
    /// greedy basis word.
    fn children(&self, code: &LinearCode, last: Option<usize>, stamp: &mut [u32], epoch: &mut u32) -> Vec<usize> {
        *epoch = epoch.wrapping_add(1);
        if *epoch == 0 {
            stamp.iter_mut().for_each(|s| *s = 0);
            *epoch = 1;
        }
        let start = last.map_or(0, |i| i + 1);
        let mut out = Vec::new();
        for (i, &word) in self.words.iter().enumerate() {
            let r = code.reduce_bits(word) as usize;
            if r == 0 || stamp[r] == *epoch {
                continue;
            }
            stamp[r] = *epoch;
            if i >= start {
                out.push(i);
            }
        }
        out
    }

    fn dfs<A, F>(&self, code: &LinearCode, last: Option<usize>, acc: &mut A, visit: &F, stamp: &mut [u32], epoch: &mut u32)
    where
        F: Fn(&mut A, &LinearCode),
    {
        visit(acc, code);
        for i in self.children(code, last, stamp, epoch) {
            let mut child = code.clone();
            child.insert_bits(self.words[i]);
            self.dfs(&child, Some(i), acc, visit, stamp, epoch);
        }
    }

    fn scratch(&self) -> (Vec<u32>, u32) {
        (vec![0; 1 << self.n], 0)
    }
}

/// Visits every code spanned by words of weight `≤ w` (including the zero
/// code) exactly once, folding into per-worker accumulators.
fn fold_low_weight_spans<A, I, F, R>(n: usize, w: usize, exec: Execution, init: I, visit: F, reduce: R) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &LinearCode) + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    if n > EXHAUSTIVE_HARD_LIMIT {
        return Err(Error::ResourceLimit {
            what: "exhaustive search block length",
            requested: n,
            limit: EXHAUSTIVE_HARD_LIMIT,
        });
    }
    let tree = Tree {
        n,
        words: low_weight_words(n, w),
    };
    let root = LinearCode::zero(n)?;
    let (mut stamp, mut epoch) = tree.scratch();

    // Visit the top two levels here and hand the subtrees below them out as
    // independent tasks.
    let mut acc = init();
    let mut tasks = Vec::new();
    visit(&mut acc, &root);
    for i in tree.children(&root, None, &mut stamp, &mut epoch) {
        let mut first = root.clone();
        first.insert_bits(tree.words[i]);
        visit(&mut acc, &first);
        for j in tree.children(&first, Some(i), &mut stamp, &mut epoch) {
            let mut second = first.clone();
            second.insert_bits(tree.words[j]);
            tasks.push((second, j));
        }
    }
    let rest = par::fold_reduce(
        exec,
        tasks,
        || (init(), tree.scratch()),
        |(mut a, (mut stamp, mut epoch)), (code, last)| {
            tree.dfs(&code, Some(last), &mut a, &visit, &mut stamp, &mut epoch);
            (a, (stamp, epoch))
        },
        |(a, s), (b, _)| (reduce(a, b), s),
    );
    Ok(reduce(acc, rest.0))
}

fn covers(code: &LinearCode) -> bool {
    code.rows().iter().fold(0, |acc, r| acc | r) == mask(code.len())
}

/// Every code in the search space of `config`: all covering low-weight spans
/// in exhaustive mode (sorted), or `sample_count` seeded samples in random
/// mode.
pub fn enumerate_codes(config: &SearchConfig) -> Result<Vec<LinearCode>> {
    config.validate()?;
    match config.mode {
        SearchMode::Exhaustive => {
            let mut codes = fold_low_weight_spans(
                config.n,
                config.w,
                config.execution,
                Vec::new,
                |acc: &mut Vec<LinearCode>, code| {
                    if covers(code) {
                        acc.push(code.clone());
                    }
                },
                |mut a, mut b| {
                    a.append(&mut b);
                    a
                },
            )?;
            codes.sort();
            Ok(codes)
        }
        SearchMode::Random => Ok(random_codes(config)),
    }
}

fn random_codes(config: &SearchConfig) -> Vec<LinearCode> {
    par::map_range(config.execution, config.sample_count, |i| {
        let mut rng = rng_for(config.seed, i as u64);
        random_covering_generators(config.n, config.w, &mut rng).span()
    })
}

/// Histogram of coset weights, the deduplication key.
type Histogram = Vec<u64>;

fn histogram(code: &LinearCode) -> Histogram {
    let mut hist = vec![0u64; code.len() + 1];
    for m in coset_minima(code, Execution::Sequential) {
        hist[m as usize] += 1;
    }
    hist
}

fn to_distribution(n: usize, hist: &Histogram) -> Result<CosetWeightDistribution> {
    let total: u64 = hist.iter().sum();
    let k = n - total.trailing_zeros() as usize;
    CosetWeightDistribution::from_counts(n, k, hist.iter().map(|&c| BigUint::from(c)).collect())
}

/// Distinct distributions, each with the least code (in `LinearCode` order)
/// attaining it.
#[derive(Default)]
struct Distinct {
    codes: u64,
    map: HashMap<Histogram, LinearCode>,
}

impl Distinct {
    fn add(&mut self, code: &LinearCode) {
        self.codes += 1;
        let hist = histogram(code);
        match self.map.get_mut(&hist) {
            Some(c) if *c <= *code => {}
            Some(c) => *c = code.clone(),
            None => {
                self.map.insert(hist, code.clone());
            }
        }
    }

    fn merge(mut self, other: Distinct) -> Distinct {
        self.codes += other.codes;
        for (hist, code) in other.map {
            match self.map.get_mut(&hist) {
                Some(c) if *c <= code => {}
                Some(c) => *c = code,
                None => {
                    self.map.insert(hist, code);
                }
            }
        }
        self
    }

    /// Sorted by representative code, for a deterministic order.
    fn into_sorted(self) -> (u64, Vec<(Histogram, LinearCode)>) {
        let mut v: Vec<_> = self.map.into_iter().collect();
        v.sort_by(|a, b| a.1.cmp(&b.1));
        (self.codes, v)
    }
}

fn collect_distinct(config: &SearchConfig) -> Result<Distinct> {
    match config.mode {
        SearchMode::Exhaustive => fold_low_weight_spans(
            config.n,
            config.w,
            config.execution,
            Distinct::default,
            |acc, code| {
                if covers(code) {
                    acc.add(code);
                }
            },
            Distinct::merge,
        ),
        SearchMode::Random => Ok(par::fold_reduce(
            config.execution,
            random_codes(config),
            Distinct::default,
            |mut acc, code| {
                acc.add(&code);
                acc
            },
            Distinct::merge,
        )),
    }
}

/// A code with the `λ` at which its ratio was attained.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub code: LinearCode,
    pub lambda: Rational,
    pub ratio: Rational,
}

impl Witness {
    /// The code file followed by `# ratio=<value> lambda=<value>`.
    pub fn file_contents(&self) -> String {
        let mut out = self.code.to_code_file();
        let _ = writeln!(
            out,
            "# ratio={} lambda={}",
            crate::format_sig(to_f64(&self.ratio)),
            self.lambda
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub n: usize,
    pub w: usize,
    pub codes_tested: u64,
    pub distinct_distributions: usize,
    /// Largest `Q_C(λ) / Φ_{w,0}(λ)^{n/w}` over codes and grid points.
    pub max_ratio: Rational,
    pub witness: Witness,
    /// Every distribution whose ratio exceeds 1 somewhere, with its
    /// representative code.
    pub exceedances: Vec<Witness>,
    /// Exceedances that survived an independent recomputation.
    pub verified_counterexamples: Vec<Witness>,
    /// The weaker growth bound held for every code.
    pub growth_bound_holds: bool,
    pub verdict: bool,
}

impl SearchResult {
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n={} w={}", self.n, self.w);
        let _ = writeln!(out, "codes_tested={}", self.codes_tested);
        let _ = writeln!(out, "distinct_distributions={}", self.distinct_distributions);
        let _ = writeln!(
            out,
            "max_ratio={} ({})",
            crate::format_sig(to_f64(&self.max_ratio)),
            self.max_ratio
        );
        let _ = writeln!(out, "witness_lambda={}", self.witness.lambda);
        let _ = writeln!(out, "exceedances={}", self.exceedances.len());
        let _ = writeln!(out, "verified_counterexamples={}", self.verified_counterexamples.len());
        let _ = writeln!(out, "growth_bound_holds={}", self.growth_bound_holds);
        let _ = writeln!(out, "verdict={}", self.verdict);
        out
    }
}

struct Scored {
    code: LinearCode,
    lambda: Rational,
    ratio: Rational,
    growth_ok: bool,
}

fn score(n: usize, w: usize, hist: &Histogram, code: &LinearCode, targets: &[(Rational, Rational)]) -> Result<Scored> {
    let dist = to_distribution(n, hist)?;
    let bound = GrowthBound::sharpest(w);
    let mut best: Option<(Rational, Rational)> = None;
    let mut growth_ok = true;
    for (lambda, target) in targets {
        let q = dist.evaluate(lambda)?;
        growth_ok &= bound.dominates(&q, n, lambda);
        let ratio = q / target;
        if best.as_ref().is_none_or(|(_, r)| ratio > *r) {
            best = Some((lambda.clone(), ratio));
        }
    }
    let (lambda, ratio) = best.ok_or_else(|| Error::Domain("empty λ grid".into()))?;
    Ok(Scored {
        code: code.clone(),
        lambda,
        ratio,
        growth_ok,
    })
}

/// `Φ_{w,0}(λ)^{n/w}` at each grid point.
fn block_targets(n: usize, w: usize, grid: &LambdaGrid) -> Result<Vec<(Rational, Rational)>> {
    let spec = LocalFactorSpec::new(w, 0, w)?;
    let m = (n / w) as i32;
    grid.points()
        .iter()
        .map(|l| Ok((l.clone(), num_traits::pow::Pow::pow(phi(spec, l)?, m))))
        .collect()
}

/// Recomputes the ratio of a candidate from scratch on one thread.
fn reverify(w: usize, candidate: &Witness) -> Result<bool> {
    let n = candidate.code.len();
    let opts = EnumerationOptions {
        execution: Execution::Sequential,
        ..EnumerationOptions::default()
    };
    let dist = coset_weight_distribution_with(&candidate.code, &opts)?;
    let spec = LocalFactorSpec::new(w, 0, w)?;
    let mut target = Rational::one();
    let block = phi(spec, &candidate.lambda)?;
    for _ in 0..n / w {
        target *= &block;
    }
    Ok(dist.evaluate(&candidate.lambda)? > target)
}

/// Compares `Q_C` with the disjoint-blocks value for every code in the
/// search space, in exact arithmetic.
pub fn conjecture_check(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let (n, w) = (config.n, config.w);
    let targets = block_targets(n, w, &config.lambda_grid)?;
    let (codes_tested, distinct) = collect_distinct(config)?.into_sorted();
    let distinct_distributions = distinct.len();
    let scored: Vec<Scored> = par::map(config.execution, distinct, |(hist, code)| score(n, w, &hist, &code, &targets))
        .into_iter()
        .collect::<Result<_>>()?;

    let mut best: Option<&Scored> = None;
    for s in &scored {
        // Ties go to the least code; `scored` is sorted by code.
        if best.is_none_or(|b| s.ratio > b.ratio) {
            best = Some(s);
        }
    }
    let best = best.ok_or_else(|| Error::Domain("search space is empty".into()))?;
    let witness = Witness {
        code: best.code.clone(),
        lambda: best.lambda.clone(),
        ratio: best.ratio.clone(),
    };
    let one = Rational::one();
    let exceedances: Vec<Witness> = scored
        .iter()
        .filter(|s| s.ratio > one)
        .map(|s| Witness {
            code: s.code.clone(),
            lambda: s.lambda.clone(),
            ratio: s.ratio.clone(),
        })
        .collect();
    let mut verified_counterexamples = Vec::new();
    for e in &exceedances {
        if reverify(w, e)? {
            verified_counterexamples.push(e.clone());
        }
    }
    Ok(SearchResult {
        n,
        w,
        codes_tested,
        distinct_distributions,
        verdict: witness.ratio <= one,
        max_ratio: witness.ratio.clone(),
        witness,
        exceedances,
        verified_counterexamples,
        growth_bound_holds: scored.iter().all(|s| s.growth_ok),
    })
}

/// One failed comparison found by [`growth_bound_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepFailure {
    pub code: LinearCode,
    pub lambda: Rational,
    pub bound: GrowthBound,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthSweep {
    pub n: usize,
    pub w: usize,
    pub codes_tested: u64,
    pub distinct_distributions: usize,
    /// Largest `Q / base^{n/w}` against the sharpest bound, in binary64.
    pub max_ratio: f64,
    /// Representatives of distributions meeting the sharpest bound at every
    /// grid point.
    pub tight: Vec<LinearCode>,
    pub failures: Vec<SweepFailure>,
}

impl GrowthSweep {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Q_C(λ) ≤ base(λ)^{n/w}` for every applicable base and every code
/// spanned by words of weight `≤ w` covering `[n]`. No divisibility is
/// needed here.
pub fn growth_bound_sweep(n: usize, w: usize, grid: &LambdaGrid, exec: Execution) -> Result<GrowthSweep> {
    grid.require_positive()?;
    if w == 0 || n == 0 {
        return Err(Error::Domain("n and w must be positive".into()));
    }
    let distinct = fold_low_weight_spans(
        n,
        w,
        exec,
        Distinct::default,
        |acc, code| {
            if covers(code) {
                acc.add(code);
            }
        },
        Distinct::merge,
    )?;
    let (codes_tested, distinct) = distinct.into_sorted();
    let distinct_distributions = distinct.len();
    let sharpest = GrowthBound::sharpest(w);
    type Checked = (LinearCode, f64, bool, Vec<SweepFailure>);
    let checked: Vec<Checked> = par::map(exec, distinct, |(hist, code)| -> Result<Checked> {
        let dist = to_distribution(n, &hist)?;
        let points = check_distribution_against_bounds(&dist, w, grid)?;
        let sharp = points.iter().filter(|p| p.bound == sharpest);
        let max_ratio = sharp.clone().map(|p| p.ratio).fold(f64::NEG_INFINITY, f64::max);
        let tight = sharp.clone().all(|p| p.equal);
        let failures = points
            .iter()
            .filter(|p| !p.holds)
            .map(|p| SweepFailure {
                code: code.clone(),
                lambda: p.lambda.clone(),
                bound: p.bound,
            })
            .collect();
        Ok((code, max_ratio, tight, failures))
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let mut sweep = GrowthSweep {
        n,
        w,
        codes_tested,
        distinct_distributions,
        max_ratio: f64::NEG_INFINITY,
        tight: Vec::new(),
        failures: Vec::new(),
    };
    for (code, ratio, tight, failures) in checked {
        sweep.max_ratio = sweep.max_ratio.max(ratio);
        if tight {
            sweep.tight.push(code);
        }
        sweep.failures.extend(failures);
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: usize, rows: &[&str]) -> LinearCode {
        let v: Vec<crate::BitVector> = rows.iter().map(|r| r.parse().unwrap()).collect();
        LinearCode::span(n, v.iter()).unwrap()
    }

    /// Reference enumeration: closure of `{0}` under adding low-weight words,
    /// deduplicated by RREF.
    fn brute_force_spans(n: usize, w: usize) -> Vec<LinearCode> {
        use std::collections::BTreeSet;
        let words = low_weight_words(n, w);
        let mut seen = BTreeSet::new();
        let mut frontier = vec![LinearCode::zero(n).unwrap()];
        seen.insert(frontier[0].clone());
        while let Some(c) = frontier.pop() {
            for &v in &words {
                let mut d = c.clone();
                if d.insert_bits(v) && seen.insert(d.clone()) {
                    frontier.push(d);
                }
            }
        }
        seen.into_iter().collect()
    }

    #[test]
    fn tree_visits_each_span_once() {
        for (n, w) in [(3, 1), (3, 2), (4, 2), (5, 2), (5, 3), (6, 3), (6, 2)] {
            let expected = brute_force_spans(n, w);
            let mut got = fold_low_weight_spans(
                n,
                w,
                Execution::default(),
                Vec::new,
                |acc: &mut Vec<LinearCode>, c| acc.push(c.clone()),
                |mut a, mut b| {
                    a.append(&mut b);
                    a
                },
            )
            .unwrap();
            let total = got.len();
            got.sort();
            got.dedup();
            assert_eq!(got.len(), total, "duplicate visit at n={n} w={w}");
            assert_eq!(got, expected, "n={n} w={w}");
        }
    }

    #[test]
    fn all_subspaces_when_w_is_n() {
        // Number of subspaces of F₂⁴.
        let all = fold_low_weight_spans(4, 4, Execution::Sequential, || 0u64, |a, _| *a += 1, |a, b| a + b).unwrap();
        assert_eq!(all, 67);
    }

    #[test]
    fn exhaustive_small_instances() {
        let codes = enumerate_codes(&SearchConfig::new(3, 3, SearchMode::Exhaustive)).unwrap();
        assert!(codes.contains(&code(3, &["111"])));
        assert!(codes.contains(&LinearCode::full(3).unwrap()));
        assert!(codes.iter().all(covers));
        let codes = enumerate_codes(&SearchConfig::new(4, 4, SearchMode::Exhaustive)).unwrap();
        assert!(codes.contains(&code(4, &["1111"])));
        assert!(codes.contains(&LinearCode::full(4).unwrap()));
    }

    #[test]
    fn random_codes_cover() {
        let mut cfg = SearchConfig::new(6, 3, SearchMode::Random);
        cfg.seed = 42;
        cfg.sample_count = 100;
        let codes = enumerate_codes(&cfg).unwrap();
        assert_eq!(codes.len(), 100);
        assert!(codes.iter().all(covers));
        assert_eq!(codes, enumerate_codes(&cfg).unwrap());
    }

    #[test]
    fn config_validation() {
        assert!(SearchConfig::new(7, 3, SearchMode::Random).validate().is_err());
        assert!(matches!(
            SearchConfig::new(9, 3, SearchMode::Exhaustive).validate(),
            Err(Error::ResourceLimit { .. })
        ));
        let mut cfg = SearchConfig::new(9, 3, SearchMode::Exhaustive);
        cfg.override_limits = true;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn blocks_attain_ratio_one() {
        for (n, w) in [(3, 3), (6, 3), (4, 4)] {
            let r = conjecture_check(&SearchConfig::new(n, w, SearchMode::Exhaustive)).unwrap();
            assert!(r.verdict);
            assert!(r.max_ratio.is_one(), "n={n} w={w}: {}", r.max_ratio);
            assert!(r.exceedances.is_empty());
            assert!(r.growth_bound_holds);
        }
    }

    #[test]
    fn single_weight_four_block() {
        let r = conjecture_check(&SearchConfig::new(4, 4, SearchMode::Exhaustive)).unwrap();
        let d = crate::cwgf::coset_weight_distribution(&code(4, &["1111"])).unwrap();
        assert_eq!(d.as_polynomial(), crate::IntPolynomial::from_i64(&[1, 4, 3]));
        assert!(r.verdict);
    }

    #[test]
    fn witness_file_round_trips() {
        let w = Witness {
            code: code(3, &["111"]),
            lambda: Rational::new(1.into(), 2.into()),
            ratio: Rational::one(),
        };
        let text = w.file_contents();
        assert!(text.ends_with("# ratio=1 lambda=1/2\n"));
        assert_eq!(LinearCode::parse_code_file(&text).unwrap(), w.code);
    }

    #[test]
    fn sweep_finds_tight_triples() {
        let s = growth_bound_sweep(6, 3, &LambdaGrid::default(), Execution::default()).unwrap();
        assert!(s.holds());
        assert!(s.tight.contains(&code(6, &["111000", "000111"])));
        assert!((s.max_ratio - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut cfg = SearchConfig::new(6, 3, SearchMode::Exhaustive);
        cfg.execution = Execution::Sequential;
        let a = conjecture_check(&cfg).unwrap();
        cfg.execution = Execution::Parallel;
        assert_eq!(a, conjecture_check(&cfg).unwrap());
    }
}
