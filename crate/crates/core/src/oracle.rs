//! Exhaustive ground truth at small `n`.
//!
//! Graphs are scanned as single-word edge masks in natural integer order.
//! Work is split into contiguous ranges and reduced with associative
//! operations (sum, min with witness, max), with ties broken by the smaller
//! mask, so results do not depend on the thread count.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num::bigint::{BigInt, BigUint};
use num::{BigRational, One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{container_count_log2, ContainerParams};
use crate::clique_hypergraph::{big_binomial, CliqueHypergraphStats};
use crate::graphs::{binomial_u64, clique_edge_masks, combinations, count_cliques, pair_count, LabeledGraph};
use crate::{Error, Result};

/// Full scans beyond this many vertices need an explicit [`WorkOverride`].
pub const FULL_SCAN_MAX_VERTICES: usize = 8;
/// Hard ceiling for overridden scans: edge masks must fit one word.
pub const OVERRIDE_MAX_VERTICES: usize = 11;
pub const INCLUSION_EXCLUSION_MAX_VERTICES: usize = 5;
pub const FAMILY_MAX_VERTICES: usize = 7;
/// Ceiling on `C(C(n,2), m)` for fixed-edge-count scans.
pub const COMBINATION_GUARD: u64 = 1 << 30;

const CHUNK: u64 = 1 << 16;

/// Permission to exceed the full-scan guard, bounded by a wall-clock budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WorkOverride {
    pub budget: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    pub threads: usize,
    pub work_override: Option<WorkOverride>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            threads: 1,
            work_override: None,
        }
    }
}

impl ScanOptions {
    pub fn threads(threads: usize) -> Self {
        ScanOptions {
            threads,
            ..Self::default()
        }
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        if self.threads == 0 {
            return Err(Error::param("threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::param(format!("thread pool: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnumerationResult {
    pub n: usize,
    pub l: usize,
    #[serde(serialize_with = "crate::report::decimal")]
    pub count: BigUint,
    pub graphs_scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub threads: usize,
}

/// Budget clock shared by the workers of one scan.
struct Budget {
    start: Instant,
    limit: Option<Duration>,
    exceeded: AtomicBool,
}

impl Budget {
    fn new(limit: Option<Duration>) -> Self {
        Budget {
            start: Instant::now(),
            limit,
            exceeded: AtomicBool::new(false),
        }
    }

    fn expired(&self) -> bool {
        if self.exceeded.load(Ordering::Relaxed) {
            return true;
        }
        if self.limit.is_some_and(|limit| self.start.elapsed() > limit) {
            self.exceeded.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn finish(&self) -> Result<()> {
        match self.limit {
            Some(limit) if self.exceeded.load(Ordering::Relaxed) => Err(Error::BudgetExceeded {
                budget_secs: limit.as_secs(),
            }),
            _ => Ok(()),
        }
    }
}

fn guard_full_scan(n: usize, options: &ScanOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > FULL_SCAN_MAX_VERTICES && options.work_override.is_none() {
        return Err(Error::WorkGuard(format!(
            "n = {n} means 2^{} graphs; pass an override with a time budget",
            pair_count(n)
        )));
    }
    if n > OVERRIDE_MAX_VERTICES {
        return Err(Error::WorkGuard(format!("full scans stop at n = {OVERRIDE_MAX_VERTICES}")));
    }
    Ok(())
}

fn is_free(graph: u64, cliques: &[u64]) -> bool {
    cliques.iter().all(|&k| graph & k != k)
}

fn chunks(total: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let count = total.div_ceil(CHUNK) as usize;
    (0..count)
        .into_par_iter()
        .map(move |i| (i as u64 * CHUNK, ((i as u64 + 1) * CHUNK).min(total)))
}

/// Number of labeled `K_l`-free graphs on `n` vertices, by full scan.
pub fn count_free_graphs(n: usize, l: usize, options: ScanOptions) -> Result<EnumerationResult> {
    guard_full_scan(n, &options)?;
    if l < 2 {
        return Err(Error::param(format!("clique size must be at least 2, got {l}")));
    }
    let pool = options.pool()?;
    let budget = Budget::new(options.work_override.map(|o| o.budget));
    let cliques = clique_edge_masks(n, l);
    let total = 1u64 << pair_count(n);
    let count: u64 = pool.install(|| {
        chunks(total)
            .map(|(start, end)| {
                if budget.expired() {
                    return 0;
                }
                (start..end).filter(|&g| is_free(g, &cliques)).count() as u64
            })
            .sum()
    });
    budget.finish()?;
    Ok(EnumerationResult {
        n,
        l,
        count: BigUint::from(count),
        graphs_scanned: total,
        elapsed: budget.start.elapsed(),
        threads: options.threads,
    })
}

/// Number of triangle-free graphs by inclusion-exclusion over sets of
/// triangles: `Σ_S (-1)^|S| 2^(C(n,2) - |∪S|)`.
pub fn count_free_graphs_ie(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > INCLUSION_EXCLUSION_MAX_VERTICES {
        return Err(Error::WorkGuard(format!(
            "inclusion-exclusion limited to n <= {INCLUSION_EXCLUSION_MAX_VERTICES}"
        )));
    }
    let triangles = clique_edge_masks(n, 3);
    let pairs = pair_count(n) as u32;
    let mut total = BigInt::zero();
    for subset in 0u64..1 << triangles.len() {
        let union = triangles
            .iter()
            .enumerate()
            .filter(|(i, _)| subset >> i & 1 == 1)
            .fold(0u64, |acc, (_, t)| acc | t);
        let term = BigInt::one() << (pairs - union.count_ones()) as usize;
        if subset.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupersatResult {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub min_count: u64,
    #[serde(serialize_with = "graph_text")]
    pub witness: LabeledGraph,
    pub graphs_scanned: u64,
}

fn graph_text<S: serde::Serializer>(g: &LabeledGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&g.to_text())
}

fn graph_text_opt<S: serde::Serializer>(g: &Option<LabeledGraph>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match g {
        Some(g) => graph_text(g, s),
        None => s.serialize_none(),
    }
}

/// Minimum number of `K_l` copies over all `m`-edge graphs on `[n]`, with the
/// smallest-mask minimizer as witness.
pub fn min_cliques_at_edge_count(n: usize, l: usize, m: usize, options: ScanOptions) -> Result<SupersatResult> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > FULL_SCAN_MAX_VERTICES {
        return Err(Error::WorkGuard(format!("edge-count scans limited to n <= {FULL_SCAN_MAX_VERTICES}")));
    }
    let pairs = pair_count(n);
    if m > pairs {
        return Err(Error::param(format!("m = {m} exceeds C({n},2) = {pairs}")));
    }
    let space = binomial_u64(pairs as u64, m as u64);
    if space > COMBINATION_GUARD {
        return Err(Error::WorkGuard(format!("C({pairs},{m}) = {space} graphs exceeds 2^30")));
    }
    let cliques = clique_edge_masks(n, l);
    let copies = |g: u64| cliques.iter().filter(|&&k| g & k == k).count() as u64;
    let pool = options.pool()?;
    let (min_count, mask) = if m == 0 {
        (copies(0), 0)
    } else {
        // split by the highest set bit; each part is a smaller combination space
        pool.install(|| {
            (m - 1..pairs)
                .into_par_iter()
                .map(|top| {
                    combinations(top as u32, (m - 1) as u32)
                        .map(|low| {
                            let g = 1u64 << top | low;
                            (copies(g), g)
                        })
                        .min()
                        .expect("non-empty part")
                })
                .min()
                .expect("m <= C(n,2)")
        })
    };
    Ok(SupersatResult {
        n,
        l,
        m,
        min_count,
        witness: LabeledGraph::from_mask(n, mask)?,
        graphs_scanned: space,
    })
}

/// For every edge bit, the clique masks that contain it.
fn cliques_through_edges(n: usize, cliques: &[u64]) -> Vec<Vec<u64>> {
    (0..pair_count(n))
        .map(|e| cliques.iter().copied().filter(|k| k >> e & 1 == 1).collect())
        .collect()
}

fn is_maximal(graph: u64, pairs: usize, through: &[Vec<u64>]) -> bool {
    (0..pairs).filter(|e| graph >> e & 1 == 0).all(|e| {
        let grown = graph | 1 << e;
        through[e].iter().any(|&k| k & !grown == 0)
    })
}

/// Whether `g` is `K_l`-free and adding any missing edge creates a `K_l`.
pub fn is_maximal_free(g: &LabeledGraph, l: usize) -> Result<bool> {
    let mask = g.mask().ok_or_else(|| Error::param("maximality check needs C(n,2) <= 64"))?;
    let cliques = clique_edge_masks(g.n(), l);
    Ok(is_free(mask, &cliques) && is_maximal(mask, pair_count(g.n()), &cliques_through_edges(g.n(), &cliques)))
}

/// All edge-maximal `K_l`-free graphs on `[n]`, in increasing mask order.
pub fn maximal_free_family(n: usize, l: usize, options: ScanOptions) -> Result<Vec<LabeledGraph>> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > FAMILY_MAX_VERTICES {
        return Err(Error::WorkGuard(format!("maximal families limited to n <= {FAMILY_MAX_VERTICES}")));
    }
    if l < 2 {
        return Err(Error::param(format!("clique size must be at least 2, got {l}")));
    }
    let cliques = clique_edge_masks(n, l);
    let pairs = pair_count(n);
    let through = cliques_through_edges(n, &cliques);
    let pool = options.pool()?;
    let masks: Vec<Vec<u64>> = pool.install(|| {
        chunks(1u64 << pairs)
            .map(|(start, end)| {
                (start..end)
                    .filter(|&g| is_free(g, &cliques) && is_maximal(g, pairs, &through))
                    .collect()
            })
            .collect()
    });
    masks.into_iter().flatten().map(|g| LabeledGraph::from_mask(n, g)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub l: usize,
    pub family_size: usize,
    /// Every `K_l`-free graph on `[n]` is a subgraph of some member.
    pub covers_all: bool,
    /// Smallest-mask free graph covered by no member.
    #[serde(serialize_with = "graph_text_opt")]
    pub uncovered_example: Option<LabeledGraph>,
    pub free_graphs: u64,
    pub max_clique_copies: u64,
    /// `ε · C(n, l)`: the allowed number of copies per member.
    #[serde(serialize_with = "crate::report::rational")]
    pub epsilon_budget: BigRational,
    pub copies_ok: bool,
    /// `log |family|` against the container-count bound, when parameters
    /// were supplied.
    pub size_ok: Option<bool>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.covers_all && self.copies_ok && self.size_ok != Some(false)
    }
}

/// Checks a candidate container family by full scan: covering of all
/// `K_l`-free graphs, copies per member against `ε e(H)`, and optionally the
/// family size against the container-count bound.
pub fn validate_container_family(
    n: usize,
    l: usize,
    family: &[LabeledGraph],
    epsilon: &BigRational,
    bound: Option<(&CliqueHypergraphStats, &ContainerParams)>,
    options: ScanOptions,
) -> Result<ValidationReport> {
    if n == 0 {
        return Err(Error::VertexCount(0));
    }
    if n > FAMILY_MAX_VERTICES {
        return Err(Error::WorkGuard(format!("family validation limited to n <= {FAMILY_MAX_VERTICES}")));
    }
    let mut members = Vec::with_capacity(family.len());
    for g in family {
        if g.n() != n {
            return Err(Error::MismatchedOrder(g.n(), n));
        }
        members.push(g.mask().expect("n <= 7"));
    }
    let cliques = clique_edge_masks(n, l);
    let pool = options.pool()?;
    let (free_graphs, first_uncovered) = pool.install(|| {
        chunks(1u64 << pair_count(n))
            .map(|(start, end)| {
                let mut free = 0u64;
                let mut uncovered = None;
                for g in (start..end).filter(|&g| is_free(g, &cliques)) {
                    free += 1;
                    if uncovered.is_none() && !members.iter().any(|&f| g & !f == 0) {
                        uncovered = Some(g);
                    }
                }
                (free, uncovered)
            })
            .reduce(
                || (0, None),
                |(fa, ua), (fb, ub)| {
                    let first = match (ua, ub) {
                        (Some(a), Some(b)) => Some(a.min(b)),
                        (a, b) => a.or(b),
                    };
                    (fa + fb, first)
                },
            )
    });
    let max_clique_copies = family.iter().map(|g| count_cliques(g, l)).max().unwrap_or(0);
    let hyperedges = BigInt::from(big_binomial(n as u64, l as u64));
    let epsilon_budget = epsilon * BigRational::from_integer(hyperedges);
    let copies_ok = BigRational::from_integer(BigInt::from(max_clique_copies)) <= epsilon_budget;
    let size_ok = bound.map(|(stats, params)| {
        let log_size = params.log_base.from_ln((family.len().max(1) as f64).ln());
        log_size == 0.0 || log_size.log2() <= container_count_log2(stats, params)
    });
    Ok(ValidationReport {
        n,
        l,
        family_size: family.len(),
        covers_all: first_uncovered.is_none(),
        uncovered_example: first_uncovered.map(|g| LabeledGraph::from_mask(n, g)).transpose()?,
        free_graphs,
        max_clique_copies,
        epsilon_budget,
        copies_ok,
        size_ok,
    })
}
