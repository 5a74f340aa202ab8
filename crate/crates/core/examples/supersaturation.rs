//! Fewest triangles among graphs with m edges, against the
//! Lovász–Simonovits bound (n/t)^l C(t, l).

use kfree::bounds::{edge_threshold, supersat_bound};
use kfree::graphs::{pair_count, turan_graph, count_cliques};
use kfree::oracle::{min_cliques_at_edge_count, ScanOptions};
use num::{BigRational, ToPrimitive};

fn main() -> kfree::Result<()> {
    let (n, l) = (6usize, 3usize);
    for m in 0..=pair_count(n) {
        let r = min_cliques_at_edge_count(n, l, m, ScanOptions::threads(4))?;
        println!("m = {m:>2}: min K_{l} copies = {}", r.min_count);
    }

    for t in 2..=n as u64 {
        let t = BigRational::from_integer(t.into());
        let m = edge_threshold(n as u64, &t)?.ceil().to_integer().to_usize().unwrap();
        let r = min_cliques_at_edge_count(n, l, m, ScanOptions::default())?;
        let bound = supersat_bound(n as u64, &t, l as u64)?;
        println!("t = {t}: m = {m}, oracle {} >= bound {bound}", r.min_count);
    }

    let r = min_cliques_at_edge_count(6, 3, 12, ScanOptions::default())?;
    println!("witness for m = 12 ({} triangles):\n{}", r.min_count, r.witness.to_text());
    println!("T(6,3) has {} triangles", count_cliques(&turan_graph(6, 3)?, 3));
    Ok(())
}
