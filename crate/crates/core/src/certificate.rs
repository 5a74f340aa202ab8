//! Explicit evaluation of the container-theorem hypotheses and of every
//! inequality in the argument that produces a small family of almost
//! `K_l`-free containers.
//!
//! Nothing here is asymptotic: each inequality is evaluated at the given `n`
//! (possibly `n = 2^(10^6)`, carried as [`Order::Log2`]) and reported as a
//! [`Check`] with a signed log-margin.
//!
//! The chain can be evaluated in two variants. [`ChainVariant::Printed`] uses
//! the constants exactly as published; three of its links are false for
//! every `n`:
//!
//! - `(n/l)^(l-2) >= n^(l-1.9)`, since `l - 1.9 > l - 2`;
//! - the per-term exponent `1.4 - sqrt(2j) + ...` that inherits it, which
//!   fails at `l = 3, j = 3`;
//! - `sum_{j>=2} 2^(-C(j-1,2)) <= 1`, since the sum starts `1 + 1/2`.
//!
//! [`ChainVariant::Repaired`] replaces the degree exponent by `l - 2.05` (so
//! the per-term exponent becomes `1.55 - sqrt(2j) + ...`, which still
//! collapses below `-1/4`) and bounds the geometric sum by 2. All other links
//! are shared.

use std::f64::consts::{E, LN_2};

use serde::Serialize;

use crate::clique_hypergraph::{choose2, delta_function, v_min, CliqueHypergraphStats};
use crate::report::{sig17, sig17_opt, Check, Relation};
use crate::{Error, LogMagnitude, Order, Result};

/// Base of the two inner logarithms of the container-count bound (and of the
/// logarithms in the final size estimate).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    /// `log_base(x)` from `ln x`.
    pub fn from_ln(self, ln: f64) -> f64 {
        match self {
            LogBase::Natural => ln,
            LogBase::Two => ln / LN_2,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainVariant {
    #[default]
    Printed,
    Repaired,
}

impl ChainVariant {
    /// `s` in the degree bound `d >= n^(l - s)`.
    pub fn degree_slack(self) -> f64 {
        match self {
            ChainVariant::Printed => 1.9,
            ChainVariant::Repaired => 2.05,
        }
    }

    /// Constant `K` in `sum_j 2^(-C(j-1,2)) <= K`.
    pub fn geometric_sum_bound(self) -> f64 {
        match self {
            ChainVariant::Printed => 1.0,
            ChainVariant::Repaired => 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChainOptions {
    pub log_base: LogBase,
    pub variant: ChainVariant,
}

/// `(δ, ε, p, c)` for one application of the container theorem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContainerParams {
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    pub epsilon: LogMagnitude,
    pub p: LogMagnitude,
    pub c: u64,
    pub log_base: LogBase,
}

impl ContainerParams {
    /// Arbitrary admissible parameters: `0 < ε < 1`, `0 < p <= 1`, `c >= 1`.
    pub fn new(delta: f64, epsilon: LogMagnitude, p: LogMagnitude, c: u64) -> Result<Self> {
        if epsilon.is_zero() || epsilon.ln() >= 0.0 {
            return Err(Error::param(format!("epsilon = {epsilon} outside (0, 1)")));
        }
        if p.is_zero() || p.ln() > 0.0 {
            return Err(Error::param(format!("p = {p} outside (0, 1]")));
        }
        if c == 0 {
            return Err(Error::param("c must be a positive integer"));
        }
        Ok(ContainerParams {
            delta,
            epsilon,
            p,
            c,
            log_base: LogBase::Natural,
        })
    }

    pub fn with_log_base(mut self, log_base: LogBase) -> Self {
        self.log_base = log_base;
        self
    }
}

fn check_inputs(l: u32, delta: f64, c: u64) -> Result<()> {
    if l < 3 {
        return Err(Error::param(format!("clique size must be at least 3, got {l}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta = {delta} outside (0, 1)")));
    }
    if c == 0 {
        return Err(Error::param("c must be a positive integer"));
    }
    Ok(())
}

/// `ε = δ e^{-l}` and `p = n^{-(ln l)/(2 l^2)}`.
pub fn corollary_params(order: Order, l: u32, delta: f64, c: u64) -> Result<ContainerParams> {
    check_inputs(l, delta, c)?;
    if order.ln() <= 0.0 {
        return Err(Error::param(format!("n = {order} must exceed 1")));
    }
    let lf = l as f64;
    let epsilon = LogMagnitude::from_ln(delta.ln() - lf);
    let p = LogMagnitude::from_ln(-p_exponent(l) * order.ln());
    ContainerParams::new(delta, epsilon, p, c)
}

/// `(ln l) / (2 l^2)`, the exponent in `p = n^{-x}`.
pub fn p_exponent(l: u32) -> f64 {
    let lf = l as f64;
    lf.ln() / (2.0 * lf * lf)
}

fn value(x: f64) -> LogMagnitude {
    LogMagnitude::from_value(x)
}

fn ln(x: f64) -> LogMagnitude {
    LogMagnitude::from_ln(x)
}

/// `p <= 1/(c r^{2r})` and `Δ(H,p) <= ε/(c r^r)`.
pub fn check_container_hypotheses(stats: &CliqueHypergraphStats, params: &ContainerParams) -> Vec<Check> {
    let r = stats.uniformity as f64;
    let c = (params.c as f64).ln();
    let delta_hp = delta_function(stats, params.p).expect("p validated by ContainerParams");
    vec![
        Check::new("p <= 1/(c r^(2r))", params.p, Relation::Le, ln(-c - 2.0 * r * r.ln())),
        Check::new("Delta(H,p) <= eps/(c r^r)", delta_hp, Relation::Le, params.epsilon / ln(c + r * r.ln())),
    ]
}

/// `log2` of the container-count bound `c r^{3r} (1 + log(1/ε)) N p log(1/p)`.
/// Returns `-inf` (the log of zero) at `p = 1`.
pub fn container_count_log2(stats: &CliqueHypergraphStats, params: &ContainerParams) -> f64 {
    container_count_bound(stats, params).log2()
}

fn container_count_bound(stats: &CliqueHypergraphStats, params: &ContainerParams) -> LogMagnitude {
    let r = stats.uniformity as f64;
    let base = params.log_base;
    let inv_eps = base.from_ln(-params.epsilon.ln());
    let inv_p = base.from_ln(-params.p.ln());
    if inv_p <= 0.0 {
        return LogMagnitude::ZERO;
    }
    value(params.c as f64) * ln(3.0 * r * r.ln()) * value(1.0 + inv_eps) * stats.vertices * params.p * value(inv_p)
}

/// Echo of the inputs a certificate was computed for.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateInputs {
    pub order: Order,
    pub l: u32,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    pub c: u64,
    pub log_base: LogBase,
    pub variant: ChainVariant,
    pub epsilon: LogMagnitude,
    pub p: LogMagnitude,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CertificateReport {
    pub params: CertificateInputs,
    pub hypotheses: Vec<Check>,
    pub proof_chain: Vec<Check>,
    /// `log2` of the bound on `log |C|`.
    #[serde(serialize_with = "sig17")]
    pub container_log2_bound: f64,
    /// `log2(δ n^2 / l)`.
    #[serde(serialize_with = "sig17")]
    pub target_log2: f64,
    pub overall_pass: bool,
    pub first_failure: Option<String>,
}

impl CertificateReport {
    pub fn step(&self, name: &str) -> Option<&Check> {
        self.proof_chain.iter().chain(&self.hypotheses).find(|c| c.step == name)
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.proof_chain.iter().chain(&self.hypotheses)
    }
}

pub const STEP_CLIQUE_SIZE: &str = "l <= (ln n)^(1/4)/2";

/// Evaluates every inequality of the container-family argument at the given
/// order. Ranges of `l`, `δ` and `c` are errors; failing inequalities are not.
pub fn verify_proof_chain(order: Order, l: u32, delta: f64, c: u64, options: ChainOptions) -> Result<CertificateReport> {
    check_inputs(l, delta, c)?;
    let lf = l as f64;
    let ln_n = order.ln();
    let ln_c = (c as f64).ln();
    let slack = options.variant.degree_slack();
    let label = |x: f64| format!("{}", (x * 100.0).round() / 100.0);
    let n_pow = |e: f64| ln(e * ln_n);

    let size_check = Check::new(STEP_CLIQUE_SIZE, value(lf), Relation::Le, value(ln_n.max(0.0).powf(0.25) / 2.0));
    let mut proof_chain = vec![size_check];

    let inputs = |params: Option<&ContainerParams>| CertificateInputs {
        order,
        l,
        delta,
        c,
        log_base: options.log_base,
        variant: options.variant,
        epsilon: LogMagnitude::from_ln(delta.ln() - lf),
        p: params.map_or(LogMagnitude::ZERO, |p| p.p),
    };

    if ln_n <= 0.0 || !order.at_least(l as u64) {
        proof_chain.push(Check::new("n >= l", order.magnitude(), Relation::Ge, value(lf)));
        let first_failure = proof_chain.iter().find(|c| !c.pass).map(|c| c.step.clone());
        return Ok(CertificateReport {
            params: inputs(None),
            hypotheses: Vec::new(),
            proof_chain,
            container_log2_bound: f64::NAN,
            target_log2: ((delta * (2.0 * ln_n).exp()) / lf).log2(),
            overall_pass: false,
            first_failure,
        });
    }

    let stats = CliqueHypergraphStats::for_order(order, l)?;
    let params = corollary_params(order, l, delta, c)?.with_log_base(options.log_base);
    let r = stats.uniformity;
    let rf = r as f64;
    let d = stats.degree;
    let p = params.p;
    let x = p_exponent(l);
    let ratio = |j: u64| stats.max_codegree(j) / (d * p.powf((j - 1) as f64));

    proof_chain.push(Check::worst(
        "v(sigma) > 1/2 + sqrt(2j)",
        (1..=r).map(|j| {
            let v = v_min(j).expect("j >= 1") as f64;
            Check::new("", value(0.5 + (2.0 * j as f64).sqrt()), Relation::Lt, value(v)).with_detail(format!("j = {j}"))
        }),
    ));
    proof_chain.push(Check::worst(
        "Delta_j <= n^(l - 1/2 - sqrt(2j))",
        (2..=r).map(|j| {
            Check::new("", stats.max_codegree(j), Relation::Le, n_pow(lf - 0.5 - (2.0 * j as f64).sqrt()))
                .with_detail(format!("j = {j}"))
        }),
    ));
    let ratio_power = (order.magnitude() / value(lf)).powf(lf - 2.0);
    proof_chain.push(Check::new("d >= (n/l)^(l-2)", d, Relation::Ge, ratio_power));
    proof_chain.push(Check::new(format!("(n/l)^(l-2) >= n^(l-{})", label(slack)), ratio_power, Relation::Ge, n_pow(lf - slack)));
    proof_chain.push(Check::worst(
        format!("Delta_j/(d p^(j-1)) <= n^({} - sqrt(2j) + (j-1) ln(l)/(2 l^2))", label(slack - 0.5)),
        (2..=r).map(|j| {
            let jf = j as f64;
            Check::new("", ratio(j), Relation::Le, n_pow(slack - 0.5 - (2.0 * jf).sqrt() + (jf - 1.0) * x))
                .with_detail(format!("j = {j}"))
        }),
    ));
    proof_chain.push(Check::worst(
        "sqrt(2j) - (j-1) ln(l)/(2 l^2) >= 2 - 1/(2e)",
        (2..=r).map(|j| {
            let jf = j as f64;
            Check::new("", value((2.0 * jf).sqrt() - (jf - 1.0) * x), Relation::Ge, value(2.0 - 1.0 / (2.0 * E)))
                .with_detail(format!("j = {j}"))
        }),
    ));
    proof_chain.push(Check::new(
        format!("n^({} - 2 + 1/(2e)) <= n^(-1/4)", label(slack - 0.5)),
        n_pow(slack - 0.5 - 2.0 + 1.0 / (2.0 * E)),
        Relation::Le,
        n_pow(-0.25),
    ));
    proof_chain.push(Check::worst(
        "Delta_j/(d p^(j-1)) <= n^(-1/4)",
        (2..=r).map(|j| Check::new("", ratio(j), Relation::Le, n_pow(-0.25)).with_detail(format!("j = {j}"))),
    ));

    let delta_hp = delta_function(&stats, p)?;
    let l4 = lf.powi(4);
    let geometric: f64 = (2..=r).map(|j| 2f64.powi(-(choose2(j - 1) as i32))).sum();
    let k = options.variant.geometric_sum_bound();
    let with_sum = ln(l4) * value(geometric) * n_pow(-0.25);
    let with_constant = ln(l4) * value(k) * n_pow(-0.25);
    proof_chain.push(Check::new(
        "Delta(H,p) <= e^(l^4) sum_j 2^(-C(j-1,2)) n^(-1/4)",
        delta_hp,
        Relation::Le,
        with_sum,
    ));
    proof_chain.push(Check::new(
        format!("e^(l^4) sum_j 2^(-C(j-1,2)) n^(-1/4) <= {k} e^(l^4) n^(-1/4)"),
        with_sum,
        Relation::Le,
        with_constant,
    ));
    proof_chain.push(Check::new(
        format!("{k} e^(l^4) n^(-1/4) <= delta/(c e^(l^4))"),
        with_constant,
        Relation::Le,
        ln(delta.ln() - ln_c - l4),
    ));
    proof_chain.push(Check::new(
        "Delta(H,p) <= delta/(c e^l C(l,2)^C(l,2))",
        delta_hp,
        Relation::Le,
        ln(delta.ln() - ln_c - lf - rf * rf.ln()),
    ));
    proof_chain.push(Check::new("p <= 1/(c l^(4 l^2))", p, Relation::Le, ln(-ln_c - 4.0 * lf * lf * lf.ln())));
    proof_chain.push(Check::new(
        "p <= 1/(c C(l,2)^(2 C(l,2)))",
        p,
        Relation::Le,
        ln(-ln_c - 2.0 * rf * rf.ln()),
    ));

    let bound = container_count_bound(&stats, &params);
    let base = options.log_base;
    let inv_eps = base.from_ln(-params.epsilon.ln());
    let line2 = ln(3.0 * lf * lf * lf.ln())
        * value(1.0 + inv_eps)
        * n_pow(2.0)
        * ln(-4.0 * lf * lf * lf.ln())
        * value(base.from_ln(ln_c + 7.0 * lf * lf * lf.ln()));
    let target = value(delta) * n_pow(2.0) / value(lf);
    proof_chain.push(Check::new(
        "c C(l,2)^(3C(l,2)) (1+log(1/eps)) C(n,2) p log(1/p) <= l^(3l^2) (1+log(1/eps)) n^2 l^(-4l^2) log(c l^(7l^2))",
        bound,
        Relation::Le,
        line2,
    ));
    proof_chain.push(Check::new(
        "l^(3l^2) (1+log(1/eps)) n^2 l^(-4l^2) log(c l^(7l^2)) <= delta n^2/l",
        line2,
        Relation::Le,
        target,
    ));
    proof_chain.push(Check::new("log|C| bound <= delta n^2/l", bound, Relation::Le, target));

    let hypotheses = check_container_hypotheses(&stats, &params);
    let overall_pass = proof_chain.iter().chain(&hypotheses).all(|c| c.pass);
    let first_failure = proof_chain.iter().chain(&hypotheses).find(|c| !c.pass).map(|c| c.step.clone());
    Ok(CertificateReport {
        params: inputs(Some(&params)),
        hypotheses,
        proof_chain,
        container_log2_bound: bound.log2(),
        target_log2: target.log2(),
        overall_pass,
        first_failure,
    })
}

/// Result of [`minimal_n_threshold`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub l: u32,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    pub c: u64,
    pub options: ChainOptions,
    /// Smallest `log2 n` found at which the whole chain passes.
    #[serde(serialize_with = "sig17_opt")]
    pub log2_n: Option<f64>,
    /// The first failing step just below the threshold.
    pub failing_below: Option<String>,
    pub unreachable: bool,
}

/// Largest `log2 n` examined by [`minimal_n_threshold`].
pub const THRESHOLD_SEARCH_CAP: f64 = 18446744073709551616.0; // 2^64

const REFINEMENT_STEPS: usize = 64;

/// Doubles `log2 n` from 1 until the chain passes, then bisects the last
/// doubling interval.
pub fn minimal_n_threshold(l: u32, delta: f64, c: u64, options: ChainOptions) -> Result<ThresholdReport> {
    check_inputs(l, delta, c)?;
    let passes = |log2_n: f64| -> Result<CertificateReport> { verify_proof_chain(Order::Log2(log2_n), l, delta, c, options) };
    let mut report = ThresholdReport {
        l,
        delta,
        c,
        options,
        log2_n: None,
        failing_below: None,
        unreachable: false,
    };
    let mut hi = 1.0;
    while !passes(hi)?.overall_pass {
        if hi >= THRESHOLD_SEARCH_CAP {
            report.unreachable = true;
            report.failing_below = passes(hi)?.first_failure;
            return Ok(report);
        }
        hi *= 2.0;
    }
    if hi > 1.0 {
        let mut lo = hi / 2.0;
        for _ in 0..REFINEMENT_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if passes(mid)?.overall_pass {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        report.failing_below = passes(lo)?.first_failure;
    }
    report.log2_n = Some(hi);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique_hypergraph::{hypergraph_params, hypergraph_params_log};

    #[test]
    fn corollary_params_examples() {
        let params = corollary_params(Order::Log2(64.0), 3, 0.1, 1).unwrap();
        assert!((params.epsilon.value() - 0.1 * (-3f64).exp()).abs() < 1e-15);
        assert!((params.epsilon.value() - 4.9787e-3).abs() < 1e-7);
        assert!((p_exponent(3) - 0.061035).abs() < 1e-6);
        assert!((params.p.ln() - -2.7075).abs() < 1e-4);
        assert!(corollary_params(Order::Log2(64.0), 2, 0.1, 1).is_err());
        assert!(corollary_params(Order::Log2(64.0), 3, 1.0, 1).is_err());
        assert!(corollary_params(Order::Log2(64.0), 3, 0.1, 0).is_err());
        assert!(corollary_params(Order::Log2(0.0), 3, 0.1, 1).is_err());
    }

    #[test]
    fn hypothesis_a_rhs_for_triangles() {
        let stats = hypergraph_params(6, 3).unwrap();
        let params = ContainerParams::new(0.1, value(0.5), value(0.5), 1).unwrap();
        let checks = check_container_hypotheses(&stats, &params);
        // 1/3^6 = 1/729
        assert!((checks[0].rhs_log - -(729f64).ln()).abs() < 1e-12);
        assert!((checks[0].rhs_log - -6.5917).abs() < 1e-4);
        // Δ(H,1/2) = 4 exceeds any ε/27
        assert!((checks[1].lhs_log - 4f64.ln()).abs() < 1e-12);
        assert!(!checks[1].pass && checks[1].margin_log < 0.0);
    }

    #[test]
    fn container_params_reject_bad_ranges() {
        assert!(ContainerParams::new(0.1, value(0.5), value(1.5), 1).is_err());
        assert!(ContainerParams::new(0.1, value(1.0), value(0.5), 1).is_err());
        assert!(ContainerParams::new(0.1, value(0.5), LogMagnitude::ZERO, 1).is_err());
    }

    #[test]
    fn container_count_power_contributions() {
        // With N, p and both logs fixed, the bound differs across l only by r^{3r}.
        let base = |l: u32| {
            let stats = hypergraph_params_log(Order::Log2(100.0), l).unwrap();
            let params = ContainerParams::new(0.1, value((-1f64).exp()), value(0.5), 1).unwrap();
            container_count_log2(&stats, &params)
        };
        let stats3 = hypergraph_params_log(Order::Log2(100.0), 3).unwrap();
        let params = ContainerParams::new(0.1, value((-1f64).exp()), value(0.5), 1).unwrap();
        let rest = (2.0f64).log2() + stats3.vertices.log2() + (0.5f64).log2() + (2f64.ln()).log2();
        assert!((base(3) - rest - 19683f64.log2()).abs() < 1e-9);
        assert!((19683f64.log2() - 14.265).abs() < 1e-3);
        // N depends on n only, so l = 4 differs by 6^18
        assert!((base(4) - rest - 18.0 * 6f64.log2()).abs() < 1e-9);
        assert!((18.0 * 6f64.log2() - 46.53).abs() < 1e-2);
        let at_one = ContainerParams { p: LogMagnitude::ONE, ..params };
        assert_eq!(container_count_log2(&stats3, &at_one), f64::NEG_INFINITY);
    }

    #[test]
    fn small_order_fails_on_clique_size_first() {
        let report = verify_proof_chain(Order::Log2(20.0), 3, 0.1, 1, ChainOptions::default()).unwrap();
        assert!(!report.overall_pass);
        assert_eq!(report.first_failure.as_deref(), Some(STEP_CLIQUE_SIZE));
    }

    #[test]
    fn analytic_exponent_step() {
        let report = verify_proof_chain(Order::Log2(1e6), 3, 0.1, 1, ChainOptions::default()).unwrap();
        let step = report.step("sqrt(2j) - (j-1) ln(l)/(2 l^2) >= 2 - 1/(2e)").unwrap();
        // worst j is 2: 2 - ln3/18 against 2 - 1/(2e)
        let expected_lhs = 2.0 - 3f64.ln() / 18.0;
        assert!((step.lhs_log.exp() - expected_lhs).abs() < 1e-12);
        assert!((step.rhs_log.exp() - 1.8161).abs() < 1e-4);
        assert!(step.pass);
        assert_eq!(step.detail.as_deref(), Some("j = 2"));
    }

    #[test]
    fn printed_chain_has_false_links() {
        let report = verify_proof_chain(Order::Log2(1e6), 3, 0.1, 1, ChainOptions::default()).unwrap();
        let failing: Vec<&str> = report.checks().filter(|c| !c.pass).map(|c| c.step.as_str()).collect();
        assert_eq!(
            failing,
            vec![
                "(n/l)^(l-2) >= n^(l-1.9)",
                "Delta_j/(d p^(j-1)) <= n^(1.4 - sqrt(2j) + (j-1) ln(l)/(2 l^2))",
                "e^(l^4) sum_j 2^(-C(j-1,2)) n^(-1/4) <= 1 e^(l^4) n^(-1/4)",
            ]
        );
    }

    #[test]
    fn repaired_chain_passes_at_large_order() {
        let options = ChainOptions {
            variant: ChainVariant::Repaired,
            ..Default::default()
        };
        let report = verify_proof_chain(Order::Log2(1e6), 3, 0.1, 1, options).unwrap();
        for c in report.checks() {
            assert!(c.pass && c.margin_log > 0.0, "{c:?}");
        }
        assert!(report.overall_pass);
        assert!(report.container_log2_bound < report.target_log2);
    }

    #[test]
    fn exact_and_log_orders_agree() {
        for n in 3..=8u64 {
            for l in 3..=4u32.min(n as u32) {
                let exact = verify_proof_chain(Order::Exact(n), l, 0.1, 1, ChainOptions::default()).unwrap();
                let logged = verify_proof_chain(Order::Log2((n as f64).log2()), l, 0.1, 1, ChainOptions::default()).unwrap();
                assert_eq!(exact.proof_chain.len(), logged.proof_chain.len());
                for (a, b) in exact.checks().zip(logged.checks()) {
                    assert_eq!(a.step, b.step);
                    for (x, y) in [(a.lhs_log, b.lhs_log), (a.rhs_log, b.rhs_log)] {
                        if x.is_finite() || y.is_finite() {
                            assert!((x - y).exp_m1().abs() < 1e-9 || (x - y).abs() < 1e-9, "{} {x} {y}", a.step);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn order_below_l_is_reported() {
        let report = verify_proof_chain(Order::Log2(1.0), 3, 0.1, 1, ChainOptions::default()).unwrap();
        assert!(!report.overall_pass);
        assert!(report.step("n >= l").is_some_and(|c| !c.pass));
    }
}
