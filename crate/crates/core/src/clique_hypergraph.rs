//! The clique hypergraph `H(n, l)`: its vertices are the `C(n,2)` edges of
//! `K_n` and its hyperedges are the edge sets of the `C(n,l)` copies of
//! `K_l`, so it is `C(l,2)`-uniform. `K_l`-free graphs are exactly its
//! independent sets.

use std::f64::consts::LN_2;

use num::bigint::BigUint;
use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::graphs::{clique_edge_masks, combinations, pair_count, LabeledGraph};
use crate::{Error, LogMagnitude, Order, Result};

/// Largest `n` accepted by [`brute_max_codegree`].
pub const BRUTE_MAX_VERTICES: u64 = 8;

/// `C(n, k)` as an arbitrary-precision integer.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub(crate) const fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Exact integer parameters, available when `n` is given exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactCounts {
    #[serde(serialize_with = "crate::report::decimal")]
    pub vertices: BigUint,
    #[serde(serialize_with = "crate::report::decimal")]
    pub hyperedges: BigUint,
    #[serde(serialize_with = "crate::report::decimal")]
    pub degree: BigUint,
    #[serde(serialize_with = "crate::report::decimal_list")]
    pub max_codegrees: Vec<BigUint>,
}

/// Order, size, degree and maximum co-degrees of `H(n, l)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliqueHypergraphStats {
    pub order: Order,
    pub clique_size: u32,
    /// `r = C(l, 2)`.
    pub uniformity: u64,
    /// `N = C(n, 2)`.
    pub vertices: LogMagnitude,
    /// `e(H) = C(n, l)`.
    pub hyperedges: LogMagnitude,
    /// `d = C(n-2, l-2)`; every vertex has this degree.
    pub degree: LogMagnitude,
    /// `Δ_j` at index `j - 1`, for `j = 1..=r`.
    pub max_codegrees: Vec<LogMagnitude>,
    pub exact: Option<ExactCounts>,
}

impl CliqueHypergraphStats {
    pub fn max_codegree(&self, j: u64) -> LogMagnitude {
        self.max_codegrees[(j - 1) as usize]
    }

    /// Exact parameters when `order` is exact, closed forms otherwise.
    pub fn for_order(order: Order, l: u32) -> Result<Self> {
        match order {
            Order::Exact(n) => hypergraph_params(n, l),
            Order::Log2(_) => hypergraph_params_log(order, l),
        }
    }
}

fn check_sizes(order: Order, l: u32) -> Result<()> {
    if l < 3 {
        return Err(Error::param(format!("clique size must be at least 3, got {l}")));
    }
    if !order.at_least(l as u64) {
        return Err(Error::param(format!("clique size {l} exceeds n = {order}")));
    }
    Ok(())
}

/// Exact parameters of `H(n, l)`.
pub fn hypergraph_params(n: u64, l: u32) -> Result<CliqueHypergraphStats> {
    check_sizes(Order::Exact(n), l)?;
    let l64 = l as u64;
    let r = choose2(l64);
    let exact = ExactCounts {
        vertices: big_binomial(n, 2),
        hyperedges: big_binomial(n, l64),
        degree: big_binomial(n - 2, l64 - 2),
        max_codegrees: (1..=r).map(|j| max_codegree(n, l, j)).collect::<Result<_>>()?,
    };
    Ok(CliqueHypergraphStats {
        order: Order::Exact(n),
        clique_size: l,
        uniformity: r,
        vertices: LogMagnitude::from_biguint(&exact.vertices),
        hyperedges: LogMagnitude::from_biguint(&exact.hyperedges),
        degree: LogMagnitude::from_biguint(&exact.degree),
        max_codegrees: exact.max_codegrees.iter().map(LogMagnitude::from_biguint).collect(),
        exact: Some(exact),
    })
}

/// Parameters of `H(n, l)` from the closed forms evaluated in log-domain.
pub fn hypergraph_params_log(order: Order, l: u32) -> Result<CliqueHypergraphStats> {
    check_sizes(order, l)?;
    let l64 = l as u64;
    let r = choose2(l64);
    Ok(CliqueHypergraphStats {
        order,
        clique_size: l,
        uniformity: r,
        vertices: order.binomial(0, 2),
        hyperedges: order.binomial(0, l64),
        degree: order.binomial(2, l64 - 2),
        max_codegrees: (1..=r).map(|j| ln_max_codegree(order, l, j)).collect::<Result<_>>()?,
        exact: None,
    })
}

/// Number of `K_l` copies in `K_n` containing the edge set `sigma`.
pub fn codegree(n: u64, l: u32, sigma: &LabeledGraph) -> Result<BigUint> {
    if sigma.edge_count() == 0 {
        return Err(Error::param("co-degree of an empty edge set"));
    }
    if sigma.n() as u64 > n {
        return Err(Error::param(format!("edge set on {} vertices inside K_{n}", sigma.n())));
    }
    let spanned = sigma.spanned_vertices().count_ones() as u64;
    let l = l as u64;
    if spanned > l {
        return Ok(BigUint::zero());
    }
    Ok(big_binomial(n - spanned, l - spanned))
}

/// Fewest vertices that can carry `j` edges: the least `v` with `C(v,2) >= j`.
pub fn v_min(j: u64) -> Result<u64> {
    if j < 1 {
        return Err(Error::param("v_min needs j >= 1"));
    }
    // float estimate, then fix up
    let mut v = ((1.0 + (1.0 + 8.0 * j as f64).sqrt()) / 2.0).ceil() as u64;
    while v > 2 && choose2(v - 1) >= j {
        v -= 1;
    }
    while choose2(v) < j {
        v += 1;
    }
    Ok(v)
}

fn check_codegree_index(l: u32, j: u64) -> Result<u64> {
    let r = choose2(l as u64);
    if j < 1 || j > r {
        return Err(Error::param(format!("j = {j} outside 1..={r} for l = {l}")));
    }
    v_min(j)
}

/// `Δ_j = C(n - v_min(j), l - v_min(j))`: the co-degree depends only on the
/// number of spanned vertices, and any `j` edges on `v_min(j) <= l` vertices
/// fit inside a `K_l`.
pub fn max_codegree(n: u64, l: u32, j: u64) -> Result<BigUint> {
    let v = check_codegree_index(l, j)?;
    if (l as u64) > n {
        return Err(Error::param(format!("clique size {l} exceeds n = {n}")));
    }
    Ok(big_binomial(n - v, l as u64 - v))
}

pub fn ln_max_codegree(order: Order, l: u32, j: u64) -> Result<LogMagnitude> {
    let v = check_codegree_index(l, j)?;
    Ok(order.binomial(v, l as u64 - v))
}

/// Maximum co-degree by exhaustive counting.
///
/// Every `j`-edge set that lies in no `K_l` copy has co-degree zero, so the
/// scan visits each `j`-subset of each copy's edges and counts the copies
/// containing it. The work is split over copies and reduced with `max`.
pub fn brute_max_codegree(n: u64, l: u32, j: u64) -> Result<u64> {
    if n > BRUTE_MAX_VERTICES {
        return Err(Error::WorkGuard(format!(
            "brute-force co-degree limited to n <= {BRUTE_MAX_VERTICES}, got {n}"
        )));
    }
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let r = choose2(l as u64);
    if j < 1 || j > r {
        return Err(Error::param(format!("j = {j} outside 1..={r} for l = {l}")));
    }
    let n = n as usize;
    let cliques = clique_edge_masks(n, l as usize);
    let best = cliques
        .par_iter()
        .map(|&clique| {
            let positions: Vec<u32> = (0..pair_count(n) as u32).filter(|i| clique >> i & 1 == 1).collect();
            let split = positions.len() / 2;
            let table = |bits: &[u32]| -> Vec<u64> {
                (0..1u64 << bits.len())
                    .map(|sel| bits.iter().enumerate().filter(|(k, _)| sel >> k & 1 == 1).fold(0, |m, (_, &b)| m | 1 << b))
                    .collect()
            };
            let (low, high) = (table(&positions[..split]), table(&positions[split..]));
            let low_mask = (1u64 << split) - 1;
            combinations(positions.len() as u32, j as u32)
                .map(|local| {
                    let sigma = low[(local & low_mask) as usize] | high[(local >> split) as usize];
                    cliques.iter().filter(|&&m| m & sigma == sigma).count() as u64
                })
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(best)
}

fn check_probability_ratio(p: &BigRational) -> Result<()> {
    if !p.is_positive() || *p > BigRational::one() {
        return Err(Error::param(format!("p = {p} outside (0, 1]")));
    }
    Ok(())
}

/// `Δ(H,p) = 2^{C(r,2)-1} Σ_{j=2..r} 2^{-C(j-1,2)} Δ_j / (d p^{j-1})` as an
/// exact rational.
pub fn delta_function_exact(n: u64, l: u32, p: &BigRational) -> Result<BigRational> {
    check_probability_ratio(p)?;
    let stats = hypergraph_params(n, l)?;
    let exact = stats.exact.as_ref().expect("exact parameters");
    let r = stats.uniformity;
    let two = BigInt::from(2);
    let degree = BigRational::from_integer(BigInt::from(exact.degree.clone()));
    let mut sum = BigRational::zero();
    for j in 2..=r {
        let delta_j = BigRational::from_integer(BigInt::from(exact.max_codegrees[(j - 1) as usize].clone()));
        let weight = BigRational::new(BigInt::one(), num::pow(two.clone(), choose2(j - 1) as usize));
        sum += weight * delta_j / (degree.clone() * num::pow(p.clone(), (j - 1) as usize));
    }
    Ok(sum * BigRational::from_integer(num::pow(two, (choose2(r) - 1) as usize)))
}

/// Log-domain `Δ(H,p)` from precomputed statistics, accumulated term by term
/// with sorted log-sum-exp.
pub fn delta_function(stats: &CliqueHypergraphStats, p: LogMagnitude) -> Result<LogMagnitude> {
    if p.is_zero() || p.ln() > 0.0 {
        return Err(Error::param(format!("p = {p} outside (0, 1]")));
    }
    let r = stats.uniformity;
    let prefactor = LogMagnitude::from_ln((choose2(r) - 1) as f64 * LN_2);
    let sum: LogMagnitude = (2..=r)
        .map(|j| {
            let weight = LogMagnitude::from_ln(-(choose2(j - 1) as f64) * LN_2);
            weight * stats.max_codegree(j) / (stats.degree * p.powf((j - 1) as f64))
        })
        .sum();
    Ok(prefactor * sum)
}

/// Convenience wrapper: closed-form statistics for `order`, then `Δ(H,p)`.
pub fn delta_function_at(order: Order, l: u32, p: LogMagnitude) -> Result<LogMagnitude> {
    delta_function(&hypergraph_params_log(order, l)?, p)
}
