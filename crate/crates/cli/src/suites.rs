//! Verification suites behind `ldpc-coset verify`.

use std::fmt::Write as _;

use ldpc_coset::bounds::{
    ball_closed_form, ball_exponent_bound, comparison_report, figure1_rows, BallVariant, OptimizerSettings,
    FIGURE1_POINTS,
};
use ldpc_coset::cwgf::{
    ball_vs_q, check_monotonicity, closed_form_all_one, coset_weight_distribution, direct_sum_distribution,
    direct_sum_power,
};
use ldpc_coset::grid::to_f64;
use ldpc_coset::localfactor::{
    certify_theorem_main, check_phi_lemmas, extension_ratio, verify_appendix_identities, GrowthBound,
};
use ldpc_coset::random::{
    random_code, random_covering_generators, random_extension_instance, random_nested_pair, rng_for,
};
use ldpc_coset::search::{growth_bound_sweep, sweep_limit, SearchMode, EXHAUSTIVE_HARD_LIMIT};
use ldpc_coset::{BitVector, Error, Execution, GeneratorSet, LambdaGrid, LinearCode, Result};
use rand::Rng;

/// Outcome of one named check over many instances.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    /// Largest `lhs − rhs` seen; never positive when the check passes.
    pub max_slack: f64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            instances: 0,
            max_slack: f64::NEG_INFINITY,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn record(&mut self, slack: f64, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        self.max_slack = self.max_slack.max(slack);
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} instances={} max_slack={}",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                c.instances,
                if c.max_slack.is_finite() {
                    ldpc_coset::format_sig(c.max_slack)
                } else {
                    "n/a".into()
                }
            );
            for note in &c.notes {
                let _ = writeln!(out, "  {note}");
            }
            for f in &c.failures {
                let _ = writeln!(out, "  failing instance:");
                for line in f.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub w: usize,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub mode: SearchMode,
    pub grid: LambdaGrid,
    pub override_limits: bool,
}

fn rational_slack(lhs: &ldpc_coset::Rational, rhs: &ldpc_coset::Rational) -> f64 {
    to_f64(&(lhs - rhs))
}

fn code_file(label: &str, code: &LinearCode) -> String {
    format!("{label}:\n{}", code.to_code_file())
}

/// Randomized checks of the structural lemmas on `Q`.
pub fn lemmas(p: &SuiteParams) -> Result<SuiteReport> {
    if p.n < 2 {
        return Err(Error::Domain("the lemma suite needs n ≥ 2".into()));
    }
    let mut report = SuiteReport::default();

    let mut mono = Check::new("monotonicity");
    for i in 0..p.samples {
        let mut rng = rng_for(p.seed, i as u64);
        let n = rng.gen_range(1..=p.n);
        let (inner, outer) = random_nested_pair(n, &mut rng);
        let rep = check_monotonicity(&inner, &outer, &p.grid)?;
        let slack = rep
            .points
            .iter()
            .map(|(_, o, inn)| rational_slack(o, inn))
            .fold(f64::NEG_INFINITY, f64::max);
        mono.record(slack, rep.holds, || {
            format!("{}{}", code_file("inner", &inner), code_file("outer", &outer))
        });
    }
    report.checks.push(mono);

    let mut sum = Check::new("direct_sum");
    for i in 0..p.samples {
        let mut rng = rng_for(p.seed ^ 0x5eed_0001, i as u64);
        let n1 = rng.gen_range(1..p.n);
        let n2 = rng.gen_range(1..=p.n - n1);
        let a = random_code(n1, &mut rng);
        let b = random_code(n2, &mut rng);
        let rows: Vec<u64> = a.rows().iter().copied().chain(b.rows().iter().map(|r| r << n1)).collect();
        let joint = LinearCode::span_bits(n1 + n2, &rows)?;
        let brute = coset_weight_distribution(&joint)?;
        let conv = direct_sum_distribution(&coset_weight_distribution(&a)?, &coset_weight_distribution(&b)?);
        let ok = brute == conv;
        sum.record(if ok { 0.0 } else { 1.0 }, ok, || {
            format!("{}{}", code_file("left", &a), code_file("right", &b))
        });
    }
    report.checks.push(sum);

    let mut closed = Check::new("all_one_closed_form");
    for m in 1..=p.n {
        let code = LinearCode::span(m, &[BitVector::ones(m)?])?;
        let ok = coset_weight_distribution(&code)? == closed_form_all_one(m);
        closed.record(if ok { 0.0 } else { 1.0 }, ok, || format!("n = {m}"));
    }
    report.checks.push(closed);

    let mut blocks = Check::new("disjoint_blocks");
    for w in 2..=p.n.min(5) {
        for m in 1..=p.n / w {
            let code = blocks_code(w, m)?;
            let ok = coset_weight_distribution(&code)? == direct_sum_power(&closed_form_all_one(w), m);
            blocks.record(if ok { 0.0 } else { 1.0 }, ok, || code_file("code", &code));
        }
    }
    report.checks.push(blocks);

    let mut ball = Check::new("ball_vs_q");
    for i in 0..p.samples {
        let mut rng = rng_for(p.seed ^ 0x5eed_0002, i as u64);
        let n = rng.gen_range(1..=p.n);
        let code = random_code(n, &mut rng);
        let dist = coset_weight_distribution(&code)?;
        let mut slack = f64::NEG_INFINITY;
        let mut ok = true;
        for r in 0..=n {
            for lambda in p.grid.points() {
                let rep = ball_vs_q(&dist, r, lambda)?;
                let ball = ldpc_coset::Rational::from_integer(rep.ball.clone().into());
                slack = slack.max(rational_slack(&ball, &rep.bound));
                ok &= rep.holds;
            }
        }
        ball.record(slack, ok, || code_file("code", &code));
    }
    report.checks.push(ball);
    Ok(report)
}

/// `m` disjoint all-one blocks of length `w`.
pub fn blocks_code(w: usize, m: usize) -> Result<LinearCode> {
    let n = w * m;
    let gens: Vec<BitVector> = (0..m)
        .map(|j| BitVector::from_support(n, &((j * w + 1)..=(j * w + w)).collect::<Vec<_>>()))
        .collect::<Result<_>>()?;
    LinearCode::span(n, &gens)
}

/// Local-factor bounds and random one-step extensions.
pub fn localfactor(p: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for bound in GrowthBound::applicable(p.w) {
        let rep = check_phi_lemmas(bound, &p.grid)?;
        let mut c = Check::new(format!("phi_vs_{}", bound.name()));
        for pair in &rep.pairs {
            c.record(pair.max_excess, pair.holds, || {
                format!("v = {}, delta = {}", pair.spec.v, pair.spec.delta)
            });
        }
        report.checks.push(c);
    }

    let mut ext = Check::new("extension_step");
    for i in 0..p.samples {
        let mut rng = rng_for(p.seed, i as u64);
        let inst = random_extension_instance(p.n, p.w, &mut rng);
        let cert = extension_ratio(&inst.base, &inst.u, &inst.b, inst.w, &p.grid)?;
        let slack = cert
            .points
            .iter()
            .map(|pt| rational_slack(&pt.ratio, &pt.bound))
            .fold(f64::NEG_INFINITY, f64::max);
        ext.record(slack, cert.holds, || {
            format!("{}U = {:?}\nb = {}\nw = {}", code_file("base", &inst.base), inst.u, inst.b, inst.w)
        });
    }
    report.checks.push(ext);
    Ok(report)
}

/// The growth bound for whole codes, exhaustively or on random instances.
pub fn theorem(p: &SuiteParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    match p.mode {
        SearchMode::Exhaustive => {
            let limit = if p.override_limits {
                EXHAUSTIVE_HARD_LIMIT
            } else {
                sweep_limit(p.w)
            };
            for n in 1..=p.n {
                if n > limit {
                    return Err(Error::ResourceLimit {
                        what: "exhaustive sweep block length",
                        requested: n,
                        limit,
                    });
                }
                let sweep = growth_bound_sweep(n, p.w, &p.grid, Execution::default())?;
                let mut c = Check::new(format!("growth_bound n={n}"));
                c.instances = sweep.codes_tested as usize;
                c.max_slack = sweep.max_ratio - 1.0;
                c.notes.push(format!("distinct distributions: {}", sweep.distinct_distributions));
                for code in &sweep.tight {
                    c.notes.push(format!("equality witness: {}", rows_string(code)));
                }
                for f in &sweep.failures {
                    c.failures.push(format!(
                        "{}lambda = {}\nbound = {}",
                        f.code.to_code_file(),
                        f.lambda,
                        f.bound.name()
                    ));
                }
                report.checks.push(c);
            }
        }
        SearchMode::Random => {
            let mut c = Check::new("growth_bound_random");
            for i in 0..p.samples {
                let mut rng = rng_for(p.seed, i as u64);
                let n = rng.gen_range(p.w.min(p.n)..=p.n);
                let gens = random_covering_generators(n, p.w, &mut rng);
                let cert = certify_theorem_main(&gens, &p.grid)?;
                c.record(cert.max_ratio - 1.0, cert.holds, || generators_string(&gens));
            }
            report.checks.push(c);
        }
    }
    if p.w >= 2 && p.n >= p.w {
        let m = p.n / p.w;
        let gens = GeneratorSet::new(p.w * m, p.w, blocks_code(p.w, m)?.basis())?;
        let cert = certify_theorem_main(&gens, &p.grid)?;
        let mut c = Check::new(format!("disjoint_blocks w={} m={m}", p.w));
        c.record(cert.max_ratio - 1.0, cert.holds, || generators_string(&gens));
        c.notes.push(format!("tight against sharpest bound: {}", cert.tight));
        report.checks.push(c);
    }
    Ok(report)
}

fn rows_string(code: &LinearCode) -> String {
    let rows: Vec<String> = code.basis().iter().map(ToString::to_string).collect();
    format!("<{}>", rows.join(", "))
}

fn generators_string(gens: &GeneratorSet) -> String {
    let mut out = format!("n = {}, w = {}\n", gens.len(), gens.max_weight());
    for g in gens.generators() {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// The seven polynomial identities.
pub fn identities() -> Result<SuiteReport> {
    let mut c = Check::new("appendix_identities");
    match verify_appendix_identities() {
        Ok(certs) => {
            for cert in certs {
                c.record(0.0, true, String::new);
                c.notes.push(format!("{}: {} [{}]", cert.name, cert.stated, cert.proves));
            }
        }
        Err(Error::Certificate(msg)) => c.record(1.0, false, || msg),
        Err(e) => return Err(e),
    }
    Ok(SuiteReport { checks: vec![c] })
}

/// Ball exponents: the optimizer against the closed-form `λ` choices, and the
/// comparison with the earlier bounds.
pub fn ball(p: &SuiteParams) -> Result<SuiteReport> {
    let settings = OptimizerSettings::default();
    let rhos: Vec<f64> = (1..=50).map(|i| 0.5 * i as f64 / 51.0).collect();
    let mut report = SuiteReport::default();

    let mut w3 = Check::new("ball_w3_optimum_matches_closed_form");
    let mut feasible = Check::new("ball_closed_forms_are_feasible");
    let mut gaps = Vec::new();
    for variant in [BallVariant::W3, BallVariant::W4, BallVariant::General(p.w.max(2))] {
        let mut gap = 0f64;
        for &rho in &rhos {
            let opt = ball_exponent_bound(variant, rho, &settings)?;
            let (lambda, closed) = ball_closed_form(variant, rho);
            feasible.record(opt.value - closed, opt.value <= closed + 1e-12, || {
                format!("{variant:?} rho = {rho}: optimum {} above closed form {closed}", opt.value)
            });
            gap = gap.max(closed - opt.value);
            if variant == BallVariant::W3 {
                w3.record((opt.value - closed).abs() - 1e-8, (opt.value - closed).abs() <= 1e-8, || {
                    format!("rho = {rho}: optimum {} at lambda {}, closed form {closed} at {lambda}", opt.value, opt.argmin)
                });
            }
        }
        gaps.push(format!("{variant:?}: closed form exceeds optimum by at most {}", ldpc_coset::format_sig(gap)));
    }
    feasible.notes = gaps;
    report.checks.push(w3);
    report.checks.push(feasible);

    let grid: Vec<f64> = (2..=9).map(|i| 0.05 * i as f64).collect();
    let comparison = comparison_report(p.w.max(2), &grid)?;
    let mut c = Check::new(format!("comparison_with_earlier_bounds w={}", comparison.w));
    for row in &comparison.rows {
        let slack = (row.new_general - row.is_general)
            .max(row.new_w4 - row.is_w4)
            .max(row.new_w3 - row.is_w3);
        c.record(slack, row.passed(), || format!("delta = {}: {}", row.delta, row.failures.join("; ")));
    }
    report.checks.push(c);

    let rows = figure1_rows(FIGURE1_POINTS, Execution::default())?;
    let mut fig = Check::new("figure1_dominance");
    for r in &rows {
        let ok = r.ball_our_w3 <= r.ball_iceland_w3 + 1e-12 && r.rate_our_w3 <= r.rate_iceland_w3;
        let slack = (r.ball_our_w3 - r.ball_iceland_w3).max(r.rate_our_w3 - r.rate_iceland_w3);
        fig.record(slack, ok, || format!("{r:?}"));
    }
    report.checks.push(fig);
    Ok(report)
}
