//! Closed-form bounds on `log2 f_n(K_l)`: the Turán lower bound, the main
//! term, the container upper bound, the Lovász–Simonovits supersaturation
//! bound and the two-case analysis of `k(l)`.
//!
//! Exact rational arithmetic is used wherever inputs are rational; `δ` given
//! as an `f64` is converted to the rational it represents exactly. With
//! [`Order::Log2`] everything is carried as a [`LogMagnitude`].

use std::f64::consts::LN_2;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, ToPrimitive};
use serde::Serialize;

use crate::clique_hypergraph::big_binomial;
use crate::graphs::turan_edge_count;
use crate::oracle::{count_free_graphs, ScanOptions, FAMILY_MAX_VERTICES};
use crate::report::{sig17, sig17_opt, Check, Relation};
use crate::{ln_ratio, Error, LogMagnitude, Order, Result};

fn int(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn check_l(l: u64) -> Result<()> {
    if l < 3 {
        return Err(Error::param(format!("clique size must be at least 3, got {l}")));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<BigRational> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta = {delta} outside (0, 1)")));
    }
    Ok(BigRational::from_float(delta).expect("finite"))
}

/// `e(T(n, l-1))`: `log2` of the number of subgraphs of the Turán graph.
pub fn lower_bound_log2(n: u64, l: u64) -> Result<u128> {
    if l < 3 || l > n {
        return Err(Error::param(format!("need 3 <= l <= n, got n = {n}, l = {l}")));
    }
    turan_edge_count(n, l - 1)
}

/// The weaker displayed floor `(n/(l-1) - 1)^2 C(l-1, 2)`.
pub fn weak_lower_floor(n: u64, l: u64) -> Result<BigRational> {
    if l < 3 || l > n {
        return Err(Error::param(format!("need 3 <= l <= n, got n = {n}, l = {l}")));
    }
    let k = l - 1;
    let side = int(n) / int(k) - BigRational::one();
    Ok(&side * &side * int(k * (k - 1) / 2))
}

/// `1 - 1/(l-1)`.
fn turan_density(l: u64) -> BigRational {
    BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(l - 1))
}

/// `(1 - 1/(l-1)) C(n, 2)`, exactly.
pub fn main_term_log2(n: u64, l: u64) -> Result<BigRational> {
    check_l(l)?;
    Ok(turan_density(l) * int(n) * int(n.saturating_sub(1)) / int(2))
}

/// [`main_term_log2`] for an order given in either mode.
pub fn main_term_magnitude(order: Order, l: u64) -> Result<LogMagnitude> {
    check_l(l)?;
    Ok(LogMagnitude::from_ratio(&turan_density(l)) * order.binomial(0, 2))
}

/// The two readings of the upper bound: with `n^2/2` (as in the final
/// display) and with `C(n,2)` (as in the opening statement).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperBound {
    pub half_square: LogMagnitude,
    pub binomial: LogMagnitude,
    #[serde(serialize_with = "rational_opt")]
    pub half_square_exact: Option<BigRational>,
    #[serde(serialize_with = "rational_opt")]
    pub binomial_exact: Option<BigRational>,
}

/// `(1 - (1-δ)/(l-1)) n^2/2 + δ n^2/l`, together with the `C(n,2)` variant.
pub fn upper_bound_log2(order: Order, l: u64, delta: f64) -> Result<UpperBound> {
    check_l(l)?;
    let d = check_delta(delta)?;
    let density = BigRational::one() - (BigRational::one() - &d) / int(l - 1);
    let n2 = order.magnitude().powf(2.0);
    let extra_coefficient = d / int(l);
    let exact = order.exact().map(|n| {
        let n2 = int(n) * int(n);
        let extra = &extra_coefficient * &n2;
        let half = &density * &n2 / int(2) + &extra;
        let binomial = &density * int(n) * int(n.saturating_sub(1)) / int(2) + &extra;
        (half, binomial)
    });
    let extra = LogMagnitude::from_ratio(&extra_coefficient) * n2;
    let density = LogMagnitude::from_ratio(&density);
    Ok(UpperBound {
        half_square: density * n2 / LogMagnitude::from_u64(2) + extra,
        binomial: density * order.binomial(0, 2) + extra,
        half_square_exact: exact.as_ref().map(|e| e.0.clone()),
        binomial_exact: exact.map(|e| e.1),
    })
}

/// `x (x-1) ... (x-k+1) / k!`, exactly.
pub fn generalized_binomial(x: &BigRational, k: u64) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| acc * (x - int(i)) / int(i + 1))
}

/// Floating-point [`generalized_binomial`].
pub fn generalized_binomial_f64(x: f64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// `C(t, l) / t^l`, the `n`-free factor of the supersaturation bound.
fn supersat_coefficient(t: &BigRational, l: u64) -> BigRational {
    let mut t_pow = BigRational::one();
    for _ in 0..l {
        t_pow *= t;
    }
    generalized_binomial(t, l) / t_pow
}

fn check_t(t: &BigRational) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::param(format!("t = {t} must be positive")));
    }
    Ok(())
}

/// Lovász–Simonovits: `(n/t)^l C(t, l)` copies of `K_l` in every graph with
/// at least `(1 - 1/t) n^2/2` edges. May be negative for non-integer `t`
/// below `l - 1`, where it says nothing.
pub fn supersat_bound(n: u64, t: &BigRational, l: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    check_t(t)?;
    let mut n_pow = BigRational::one();
    for _ in 0..l {
        n_pow *= int(n);
    }
    Ok(n_pow * supersat_coefficient(t, l))
}

/// `(1 - 1/t) n^2 / 2`.
pub fn edge_threshold(n: u64, t: &BigRational) -> Result<BigRational> {
    check_t(t)?;
    Ok((BigRational::one() - t.recip()) * int(n) * int(n) / int(2))
}

/// `k(l)` and its ingredients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupersatThreshold {
    pub n: Order,
    pub l: u64,
    #[serde(serialize_with = "sig17")]
    pub delta: f64,
    /// `(l-1)/(1-δ)`.
    #[serde(serialize_with = "crate::report::rational")]
    pub t: BigRational,
    /// `(1 - 1/t) n^2/2`.
    pub edge_threshold: LogMagnitude,
    pub k_value: LogMagnitude,
    /// Exact `k(l)` when `n` is exact.
    #[serde(serialize_with = "rational_opt")]
    pub k_exact: Option<BigRational>,
}

fn rational_opt<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(r) => crate::report::rational(r, s),
        None => s.serialize_none(),
    }
}

/// `t = (l-1)/(1-δ)`.
pub fn supersat_t(l: u64, delta: f64) -> Result<BigRational> {
    check_l(l)?;
    let d = check_delta(delta)?;
    Ok(int(l - 1) / (BigRational::one() - d))
}

/// `n^l · coefficient` on the log scale; zero for non-positive coefficients.
fn n_power_times(order: Order, l: u64, coefficient: &BigRational) -> LogMagnitude {
    if !coefficient.is_positive() {
        return LogMagnitude::ZERO;
    }
    LogMagnitude::from_ln(l as f64 * order.ln() + ln_ratio(coefficient))
}

/// `k(l) = (n(1-δ)/(l-1))^l C((l-1)/(1-δ), l)`: the supersaturation bound at
/// `t = (l-1)/(1-δ)`.
pub fn k_threshold(order: Order, l: u64, delta: f64) -> Result<SupersatThreshold> {
    let t = supersat_t(l, delta)?;
    let coefficient = supersat_coefficient(&t, l);
    let density = BigRational::one() - t.recip();
    let edge_threshold = LogMagnitude::from_ratio(&density) * order.magnitude().powf(2.0) / LogMagnitude::from_u64(2);
    let k_exact = order.exact().map(|n| supersat_bound(n, &t, l)).transpose()?;
    Ok(SupersatThreshold {
        n: order,
        l,
        delta,
        t,
        edge_threshold,
        k_value: n_power_times(order, l, &coefficient),
        k_exact,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// `l >= 1/δ`.
    LargeClique,
    /// `l < 1/δ`.
    SmallClique,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseAnalysis {
    pub case: Case,
    pub threshold: SupersatThreshold,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

/// A check between two quantities whose quotient `ratio = lhs/rhs` is known
/// exactly; pass/fail and the margin come from the ratio, so ties stay ties.
fn ratio_check(step: &str, lhs: LogMagnitude, relation: Relation, rhs: LogMagnitude, ratio: &BigRational) -> Check {
    let mut check = Check::new(step, lhs, relation, rhs);
    let ln = if !ratio.is_positive() {
        f64::NEG_INFINITY
    } else if *ratio > int(2) || *ratio < BigRational::new(BigInt::one(), BigInt::from(2)) {
        ln_ratio(ratio)
    } else {
        (ratio - BigRational::one()).to_f64().expect("bounded").ln_1p()
    };
    let one = BigRational::one();
    (check.margin_log, check.pass) = match relation {
        Relation::Le => (-ln, *ratio <= one),
        Relation::Lt => (-ln, *ratio < one),
        Relation::Ge => (ln, *ratio >= one),
        Relation::Gt => (ln, *ratio > one),
    };
    check
}

/// Picks the case for `(l, δ)` (boundary `l = 1/δ` goes to the large case)
/// and evaluates its inequality chain.
///
/// The callers who apply the container corollary with `δ^{1/δ}` in place of
/// `δ` must do the substitution themselves.
pub fn case_analysis(order: Order, l: u64, delta: f64) -> Result<CaseAnalysis> {
    let threshold = k_threshold(order, l, delta)?;
    let d = check_delta(delta)?;
    let lf = l as f64;
    let binom_n_l = order.binomial(0, l);
    let k_coefficient = supersat_coefficient(&threshold.t, l);
    let k = n_power_times(order, l, &k_coefficient);
    let (case, checks) = if int(l) * &d >= BigRational::one() {
        let l_pow = BigRational::from_integer(BigInt::from(l).pow(l as u32));
        let power = n_power_times(order, l, &l_pow.recip());
        let checks = vec![
            ratio_check(
                "(l-1)/(1-delta) >= l",
                LogMagnitude::from_ratio(&threshold.t),
                Relation::Ge,
                LogMagnitude::from_u64(l),
                &(&threshold.t / int(l)),
            ),
            ratio_check("k(l) >= n^l/l^l", k, Relation::Ge, power, &(&k_coefficient * l_pow)),
            Check::new(
                "n^l/l^l > C(n,l)/e^l",
                power,
                Relation::Gt,
                binom_n_l / LogMagnitude::from_ln(lf),
            ),
        ];
        (Case::LargeClique, checks)
    } else {
        let one_minus = BigRational::one() - &d;
        let mut product = BigRational::one();
        for i in 1..l {
            product *= BigRational::one() - int(i) * &one_minus / int(l - 1);
        }
        let factorial = (1..=l).fold(BigRational::one(), |acc, i| acc * int(i));
        let product_coefficient = product / factorial;
        let product_form = n_power_times(order, l, &product_coefficient);
        let checks = vec![
            ratio_check(
                "k(l) >= n^l/l! prod_{i<l} (1 - i(1-delta)/(l-1))",
                k,
                Relation::Ge,
                product_form,
                &(&k_coefficient / &product_coefficient),
            ),
            Check::new(
                "n^l/l! prod_{i<l} (1 - i(1-delta)/(l-1)) > delta^(1/delta) C(n,l)",
                product_form,
                Relation::Gt,
                LogMagnitude::from_ln(delta.ln() / delta) * binom_n_l,
            ),
        ];
        (Case::SmallClique, checks)
    };
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(CaseAnalysis {
        case,
        threshold,
        checks,
        all_pass,
    })
}

/// `log2 |family| + (1 - (1-δ)/(l-1)) n^2/2`: every graph is a subgraph of
/// some container with few edges.
pub fn final_count_bound(order: Order, l: u64, delta: f64, family_log2_size: LogMagnitude) -> Result<LogMagnitude> {
    check_l(l)?;
    let d = check_delta(delta)?;
    let density = BigRational::one() - (BigRational::one() - d) / int(l - 1);
    Ok(family_log2_size + LogMagnitude::from_ratio(&density) * order.magnitude().powf(2.0) / LogMagnitude::from_u64(2))
}

/// A quantity shown exactly (decimal or rational string) when available,
/// next to its floating value and `log2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Quantity {
    pub exact: Option<String>,
    #[serde(serialize_with = "sig17_opt")]
    pub value: Option<f64>,
    #[serde(serialize_with = "sig17")]
    pub log2: f64,
}

impl Quantity {
    pub fn from_magnitude(m: LogMagnitude) -> Self {
        let value = m.value();
        Quantity {
            exact: None,
            value: value.is_finite().then_some(value),
            log2: m.log2(),
        }
    }

    pub fn from_ratio(x: &BigRational) -> Self {
        let mut q = if x.is_negative() {
            Quantity {
                exact: None,
                value: x.to_f64(),
                log2: f64::NAN,
            }
        } else {
            Self::from_magnitude(LogMagnitude::from_ratio(x))
        };
        if let Some(v) = x.to_f64().filter(|v| v.is_finite()) {
            q.value = Some(v);
        }
        q.exact = Some(x.to_string());
        q
    }

    pub fn from_u128(x: u128) -> Self {
        Self::from_ratio(&BigRational::from_integer(BigInt::from(x)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: Order,
    pub l: u64,
    #[serde(serialize_with = "sig17_opt")]
    pub delta: Option<f64>,
    /// `e(T(n, l-1))`; exact mode with `n >= l` only.
    pub lower_log2: Option<Quantity>,
    pub weak_lower_floor: Option<Quantity>,
    pub main_term_log2: Quantity,
    pub upper_log2: Option<UpperBound>,
    pub case_analysis: Option<CaseAnalysis>,
    /// `log2 f_n(K_l)` by full enumeration, for small exact `n`.
    #[serde(serialize_with = "sig17_opt")]
    pub exact_log2: Option<f64>,
    /// `exact_log2 - main_term_log2`.
    #[serde(serialize_with = "sig17_opt")]
    pub gap_log2: Option<f64>,
}

/// Evaluates every bound available for the inputs. The enumeration oracle
/// is consulted for exact `n` up to [`FAMILY_MAX_VERTICES`].
pub fn bounds_report(order: Order, l: u64, delta: Option<f64>) -> Result<BoundsReport> {
    check_l(l)?;
    if let Some(d) = delta {
        check_delta(d)?;
    }
    let (lower, weak, main, exact_log2) = match order {
        Order::Exact(n) => {
            if n == 0 {
                return Err(Error::VertexCount(0));
            }
            let (lower, weak) = if n >= l {
                (
                    Some(Quantity::from_u128(lower_bound_log2(n, l)?)),
                    Some(Quantity::from_ratio(&weak_lower_floor(n, l)?)),
                )
            } else {
                (None, None)
            };
            let exact = if n as usize <= FAMILY_MAX_VERTICES {
                let count = count_free_graphs(n as usize, l as usize, ScanOptions::default())?.count;
                Some(crate::ln_biguint(&count) / LN_2)
            } else {
                None
            };
            (lower, weak, Quantity::from_ratio(&main_term_log2(n, l)?), exact)
        }
        Order::Log2(_) => (None, None, Quantity::from_magnitude(main_term_magnitude(order, l)?), None),
    };
    let gap_log2 = exact_log2.map(|e| e - main.value.unwrap_or(f64::INFINITY));
    let (upper, cases) = match delta {
        Some(d) => (Some(upper_bound_log2(order, l, d)?), Some(case_analysis(order, l, d)?)),
        None => (None, None),
    };
    Ok(BoundsReport {
        n: order,
        l,
        delta,
        lower_log2: lower,
        weak_lower_floor: weak,
        main_term_log2: main,
        upper_log2: upper,
        case_analysis: cases,
        exact_log2,
        gap_log2,
    })
}

/// `C(n, l)` as an exact rational, for callers comparing against it.
pub fn binomial_ratio(n: u64, l: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(big_binomial(n, l)))
}

impl BoundsReport {
    /// Whether the enumerated count sits above the Turán lower bound.
    pub fn sandwich_holds(&self) -> Option<bool> {
        let lower = self.lower_log2.as_ref()?.value?;
        Some(self.exact_log2? >= lower)
    }
}
