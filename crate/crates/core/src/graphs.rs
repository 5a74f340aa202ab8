//! Labeled graphs on `{0..n-1}` with `n <= 64`, stored as a bitset over the
//! `C(n,2)` unordered pairs.
//!
//! Pair `(u, v)` with `u < v` lives at bit `u*n - u*(u+1)/2 + (v-u-1)`, i.e.
//! row-major over the upper triangle. The order is part of the text and
//! mask formats, so it must not change.

use std::fmt;
use std::io::{BufRead, Write};

use crate::{Error, Result};

pub const MAX_VERTICES: usize = 64;
const WORDS: usize = (MAX_VERTICES * (MAX_VERTICES - 1) / 2).div_ceil(64);

/// Above this many vertex subsets the per-subset mask path is not used.
const MASK_PATH_SUBSETS: u64 = 1 << 16;
const MASK_PATH_MAX_CLIQUE: usize = 8;

pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[inline]
pub const fn pair_index(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_at(n: usize, index: usize) -> (usize, usize) {
    let mut u = 0;
    let mut start = 0;
    loop {
        let row = n - u - 1;
        if index < start + row {
            return (u, u + 1 + index - start);
        }
        start += row;
        u += 1;
    }
}

/// Iterates all `k`-subsets of `{0..n-1}` as bitmasks in increasing integer
/// order (next-bit-permutation successor).
pub fn combinations(n: u32, k: u32) -> impl Iterator<Item = u64> {
    assert!(n <= 64 && k <= n, "combinations({n}, {k})");
    let limit: u128 = 1u128 << n;
    let mut next: Option<u128> = Some((1u128 << k) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if k == 0 {
            None
        } else {
            let low = cur & cur.wrapping_neg();
            let ripple = cur + low;
            let succ = (((ripple ^ cur) >> 2) / low) | ripple;
            (succ < limit).then_some(succ)
        };
        Some(cur as u64)
    })
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    bits: [u64; WORDS],
}

impl LabeledGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if !(1..=MAX_VERTICES).contains(&n) {
            return Err(Error::VertexCount(n));
        }
        Ok(LabeledGraph {
            n,
            bits: [0; WORDS],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for i in 0..pair_count(n) {
            g.bits[i / 64] |= 1 << (i % 64);
        }
        Ok(g)
    }

    /// Builds a graph from an edge list; duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph whose edge bitset is the low `C(n,2)` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let pairs = pair_count(n);
        if pairs > 64 {
            return Err(Error::param(format!("n = {n} does not fit a single-word edge mask")));
        }
        if pairs < 64 && mask >> pairs != 0 {
            return Err(Error::param(format!("mask {mask:#x} has bits above C({n},2)")));
        }
        g.bits[0] = mask;
        Ok(g)
    }

    /// The edge bitset as one word, when `C(n,2) <= 64`.
    pub fn mask(&self) -> Option<u64> {
        (pair_count(self.n) <= 64).then_some(self.bits[0])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.bits[..pair_count(self.n).div_ceil(64)]
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok((u.min(v), u.max(v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match self.check_pair(u, v) {
            Ok((a, b)) => {
                let i = pair_index(self.n, a, b);
                self.bits[i / 64] >> (i % 64) & 1 == 1
            }
            Err(_) => false,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let (a, b) = self.check_pair(u, v)?;
        let i = pair_index(self.n, a, b);
        self.bits[i / 64] |= 1 << (i % 64);
        Ok(())
    }

    /// Edges in canonical pair-index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..pair_count(self.n))
            .filter(|i| self.bits[i / 64] >> (i % 64) & 1 == 1)
            .map(|i| pair_at(self.n, i))
    }

    /// Neighbourhood bitsets, one word per vertex.
    pub fn adjacency(&self) -> [u64; MAX_VERTICES] {
        let mut adj = [0u64; MAX_VERTICES];
        for (u, v) in self.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    /// Bitmask of vertices incident to at least one edge.
    pub fn spanned_vertices(&self) -> u64 {
        self.edges().fold(0, |acc, (u, v)| acc | 1 << u | 1 << v)
    }

    /// Whether every edge of `self` is an edge of `host` (same labeled
    /// vertex set, no relabeling).
    pub fn is_subgraph_of(&self, host: &LabeledGraph) -> Result<bool> {
        if self.n != host.n {
            return Err(Error::MismatchedOrder(self.n, host.n));
        }
        Ok(self.bits.iter().zip(&host.bits).all(|(a, b)| a & !b == 0))
    }

    /// Text form: first line `n`, then one `u v` line per edge in canonical
    /// order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn write_text<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(self.to_text().as_bytes())
    }

    /// Parses the text form. Blank lines and `#` comments are skipped; edges may be listed in
    /// any order and either orientation.
    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut graph: Option<LabeledGraph> = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| Error::Parse {
                line: lineno + 1,
                message: e.to_string(),
            })?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() || fields[0].starts_with('#') {
                continue;
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("{s:?}: {e}"),
                })
            };
            let bad = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            match (&mut graph, fields.as_slice()) {
                (None, [n]) => graph = Some(LabeledGraph::empty(parse(n)?).map_err(|e| bad(e.to_string()))?),
                (None, _) => return Err(bad("expected vertex count".into())),
                (Some(g), [u, v]) => g.add_edge(parse(u)?, parse(v)?).map_err(|e| bad(e.to_string()))?,
                (Some(_), _) => return Err(bad("expected \"u v\"".into())),
            }
        }
        graph.ok_or(Error::Parse {
            line: 0,
            message: "empty input".into(),
        })
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledGraph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Part sizes of the balanced complete `k`-partite graph on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranPartition {
    pub n: u64,
    pub k: u64,
    /// The `n mod k` larger parts come first.
    pub part_sizes: Vec<u64>,
}

impl TuranPartition {
    pub fn new(n: u64, k: u64) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::param(format!("Turán partition needs 1 <= k <= n, got n={n}, k={k}")));
        }
        let (q, rem) = (n / k, n % k);
        let part_sizes = (0..k).map(|i| if i < rem { q + 1 } else { q }).collect();
        Ok(TuranPartition { n, k, part_sizes })
    }
}

/// The Turán graph `T(n, k)`: complete `k`-partite with balanced parts.
/// Vertices are assigned to parts in contiguous blocks.
pub fn turan_graph(n: usize, k: usize) -> Result<LabeledGraph> {
    if n > MAX_VERTICES {
        return Err(Error::VertexCount(n));
    }
    let partition = TuranPartition::new(n as u64, k as u64)?;
    let mut part_of = Vec::with_capacity(n);
    for (part, &size) in partition.part_sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(part, size as usize));
    }
    let mut g = LabeledGraph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Edge count of `T(n, k)`, which is `ex(n, K_{k+1})`. Pure arithmetic, so
/// `n` is not limited to 64.
pub fn turan_edge_count(n: u64, k: u64) -> Result<u128> {
    if k == 0 || k > n {
        return Err(Error::param(format!("Turán partition needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let c2 = |x: u64| x as u128 * x.saturating_sub(1) as u128 / 2;
    let (q, rem) = (n / k, n % k);
    Ok(c2(n) - rem as u128 * c2(q + 1) - (k - rem) as u128 * c2(q))
}

/// Number of `l`-vertex cliques in `g`. Small `l` with few vertex subsets uses
/// per-subset edge masks; everything else recurses on common neighbourhoods.
pub fn count_cliques(g: &LabeledGraph, l: usize) -> u64 {
    let n = g.n();
    if l > n {
        return 0;
    }
    if l <= MASK_PATH_MAX_CLIQUE && binomial_u64(n as u64, l as u64) <= MASK_PATH_SUBSETS {
        count_cliques_by_masks(g, l)
    } else {
        count_cliques_by_neighborhoods(g, l)
    }
}

/// Counts cliques by testing `required & edges == required` for the edge
/// mask of every `l`-subset of vertices.
pub fn count_cliques_by_masks(g: &LabeledGraph, l: usize) -> u64 {
    let n = g.n();
    if l > n {
        return 0;
    }
    let words = g.words();
    let mut required = vec![0u64; words.len()];
    let mut count = 0;
    for subset in combinations(n as u32, l as u32) {
        required.iter_mut().for_each(|w| *w = 0);
        let mut rest = subset;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut higher = rest;
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                let i = pair_index(n, u, v);
                required[i / 64] |= 1 << (i % 64);
            }
        }
        if required.iter().zip(words).all(|(r, w)| r & w == *r) {
            count += 1;
        }
    }
    count
}

/// Counts cliques by recursing on common-neighbourhood bitsets, extending
/// each partial clique only with higher-labeled vertices.
pub fn count_cliques_by_neighborhoods(g: &LabeledGraph, l: usize) -> u64 {
    fn extend(adj: &[u64; MAX_VERTICES], candidates: u64, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        if (candidates.count_ones() as usize) < remaining {
            return 0;
        }
        let mut total = 0;
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += extend(adj, rest & adj[v], remaining - 1);
        }
        total
    }
    if l > g.n() {
        return 0;
    }
    extend(&g.adjacency(), all_vertices(g.n()), l)
}

/// Whether `g` contains a clique on `l` vertices; stops at the first witness.
pub fn has_clique(g: &LabeledGraph, l: usize) -> bool {
    fn find(adj: &[u64; MAX_VERTICES], candidates: u64, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        if (candidates.count_ones() as usize) < remaining {
            return false;
        }
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if find(adj, rest & adj[v], remaining - 1) {
                return true;
            }
        }
        false
    }
    l <= g.n() && find(&g.adjacency(), all_vertices(g.n()), l)
}

pub fn is_subgraph(g: &LabeledGraph, h: &LabeledGraph) -> Result<bool> {
    g.is_subgraph_of(h)
}

fn all_vertices(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Single-word edge masks of every `K_l` copy in `K_n`, in increasing order of
/// the vertex-subset mask. Requires `C(n,2) <= 64`.
pub fn clique_edge_masks(n: usize, l: usize) -> Vec<u64> {
    assert!(pair_count(n) <= 64, "single-word masks need C(n,2) <= 64");
    if l > n {
        return Vec::new();
    }
    combinations(n as u32, l as u32)
        .map(|subset| {
            let mut mask = 0u64;
            for u in 0..n {
                for v in u + 1..n {
                    if subset >> u & 1 == 1 && subset >> v & 1 == 1 {
                        mask |= 1 << pair_index(n, u, v);
                    }
                }
            }
            mask
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path3() -> LabeledGraph {
        LabeledGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let k3 = LabeledGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(k3.mask(), Some(0b111));
        assert_eq!(LabeledGraph::from_edges(4, &[]).unwrap().mask(), Some(0));
        let single = LabeledGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(single.edge_count(), 1);
    }

    #[test]
    fn make_graph_errors() {
        assert!(matches!(LabeledGraph::empty(0), Err(Error::VertexCount(0))));
        assert!(matches!(LabeledGraph::empty(65), Err(Error::VertexCount(65))));
        assert!(matches!(
            LabeledGraph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(LabeledGraph::from_edges(3, &[(1, 1)]), Err(Error::Loop(1))));
        assert!(LabeledGraph::from_mask(3, 0b1000).is_err());
    }

    #[test]
    fn pair_order_is_row_major() {
        for n in 2..=64 {
            let mut expected = 0;
            for u in 0..n {
                for v in u + 1..n {
                    assert_eq!(pair_index(n, u, v), expected);
                    assert_eq!(pair_at(n, expected), (u, v));
                    expected += 1;
                }
            }
            assert_eq!(expected, pair_count(n));
        }
    }

    #[test]
    fn full_graph_on_64_vertices() {
        let g = LabeledGraph::complete(64).unwrap();
        assert_eq!(g.edge_count(), 2016);
        assert_eq!(count_cliques(&g, 2), 2016);
        assert_eq!(count_cliques(&g, 63), 64);
        assert_eq!(count_cliques(&g, 64), 1);
        assert!(has_clique(&g, 64));
    }

    #[test]
    fn turan_examples() {
        assert_eq!(turan_graph(5, 2).unwrap().edge_count(), 6);
        assert_eq!(turan_graph(6, 3).unwrap().edge_count(), 12);
        assert_eq!(turan_graph(4, 4).unwrap(), LabeledGraph::complete(4).unwrap());
        assert_eq!(turan_edge_count(5, 2).unwrap(), 6);
        assert_eq!(turan_edge_count(6, 3).unwrap(), 12);
        assert!(turan_graph(3, 4).is_err());
        assert!(turan_edge_count(3, 0).is_err());
    }

    #[test]
    fn turan_edge_count_100_4() {
        // 4 parts of 25: C(100,2) - 4*C(25,2)
        let independent = 100 * 99 / 2 - 4 * (25 * 24 / 2);
        assert_eq!(independent, 3750);
        assert_eq!(turan_edge_count(100, 4).unwrap(), 3750);
    }

    #[test]
    fn turan_partition_is_balanced() {
        let p = TuranPartition::new(17, 5).unwrap();
        assert_eq!(p.part_sizes, vec![4, 4, 3, 3, 3]);
    }

    #[test]
    fn turan_count_is_uncapped() {
        let n = 1u64 << 40;
        assert_eq!(turan_edge_count(n, 1).unwrap(), 0);
        assert_eq!(turan_edge_count(n, n).unwrap(), n as u128 * (n - 1) as u128 / 2);
    }

    #[test]
    fn clique_count_examples() {
        assert_eq!(count_cliques(&LabeledGraph::complete(5).unwrap(), 3), 10);
        let t = turan_graph(6, 3).unwrap();
        // exhaustive scan over all 20 vertex triples
        let mut oracle = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    if t.has_edge(a, b) && t.has_edge(b, c) && t.has_edge(a, c) {
                        oracle += 1;
                    }
                }
            }
        }
        assert_eq!(oracle, 8);
        assert_eq!(count_cliques(&t, 3), 8);
        assert_eq!(count_cliques_by_masks(&t, 3), 8);
        assert_eq!(count_cliques_by_neighborhoods(&t, 3), 8);
        assert_eq!(count_cliques(&t, 7), 0);
    }

    #[test]
    fn has_clique_examples() {
        assert!(!has_clique(&turan_graph(7, 3).unwrap(), 4));
        assert!(has_clique(&LabeledGraph::complete(4).unwrap(), 4));
        assert!(!has_clique(&LabeledGraph::empty(5).unwrap(), 2));
    }

    #[test]
    fn subgraph_examples() {
        let k3 = LabeledGraph::complete(3).unwrap();
        assert!(is_subgraph(&k3, &k3).unwrap());
        assert!(is_subgraph(&LabeledGraph::empty(3).unwrap(), &path3()).unwrap());
        assert!(!is_subgraph(&k3, &path3()).unwrap());
        assert!(matches!(
            is_subgraph(&k3, &LabeledGraph::empty(4).unwrap()),
            Err(Error::MismatchedOrder(3, 4))
        ));
    }

    #[test]
    fn text_roundtrip_and_canonical_order() {
        let g = LabeledGraph::from_edges(5, &[(3, 4), (2, 0), (1, 3)]).unwrap();
        assert_eq!(g.to_text(), "5\n0 2\n1 3\n3 4\n");
        assert_eq!(LabeledGraph::from_text(&g.to_text()).unwrap(), g);
        assert!(LabeledGraph::from_text("").is_err());
        assert_eq!(LabeledGraph::from_text("# path\n3\n\n1 0\n").unwrap().edge_count(), 1);
        assert!(LabeledGraph::from_text("3\n0 1 2\n").is_err());
        assert!(LabeledGraph::from_text("3\n0 5\n").is_err());
    }

    #[test]
    fn turan_invariants_small() {
        for n in 1..=12 {
            for k in 1..=n {
                let t = turan_graph(n, k).unwrap();
                assert_eq!(turan_edge_count(n as u64, k as u64).unwrap(), t.edge_count() as u128);
                assert!(!has_clique(&t, k + 1));
                assert!(has_clique(&t, k));
            }
            assert_eq!(turan_edge_count(n as u64, n as u64).unwrap(), pair_count(n) as u128);
            assert_eq!(turan_edge_count(n as u64, 1).unwrap(), 0);
        }
    }

    #[test]
    fn combinations_in_order() {
        let all: Vec<u64> = combinations(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(combinations(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(combinations(64, 64).count(), 1);
        assert_eq!(combinations(10, 4).count(), 210);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = LabeledGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.6), pair_count(n)).prop_map(move |bits| {
                let mut g = LabeledGraph::empty(n).unwrap();
                for (i, b) in bits.into_iter().enumerate() {
                    if b {
                        let (u, v) = pair_at(n, i);
                        g.add_edge(u, v).unwrap();
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn clique_paths_agree(g in arb_graph(12), l in 0usize..9) {
            let by_masks = count_cliques_by_masks(&g, l);
            prop_assert_eq!(by_masks, count_cliques_by_neighborhoods(&g, l));
            prop_assert_eq!(has_clique(&g, l), by_masks > 0);
        }

        #[test]
        fn low_order_clique_counts(g in arb_graph(20)) {
            prop_assert_eq!(count_cliques(&g, 0), 1);
            prop_assert_eq!(count_cliques(&g, 1), g.n() as u64);
            prop_assert_eq!(count_cliques(&g, 2), g.edge_count() as u64);
            prop_assert_eq!(count_cliques(&g, g.n() + 1), 0);
        }

        #[test]
        fn adding_edges_never_loses_cliques(g in arb_graph(10), pick in any::<usize>(), l in 2usize..6) {
            let n = g.n();
            prop_assume!(n >= 2);
            let (u, v) = pair_at(n, pick % pair_count(n));
            let mut bigger = g.clone();
            bigger.add_edge(u, v).unwrap();
            prop_assert!(count_cliques(&bigger, l) >= count_cliques(&g, l));
            prop_assert!(g.is_subgraph_of(&bigger).unwrap());
        }

        #[test]
        fn text_format_roundtrips(g in arb_graph(16)) {
            prop_assert_eq!(LabeledGraph::from_text(&g.to_text()).unwrap(), g);
        }
    }
}
