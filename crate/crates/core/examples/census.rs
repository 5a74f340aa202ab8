//! Exact number of labeled K_l-free graphs for small n, next to the
//! Turán lower bound 2^e(T(n, l-1)).
//!
//! cargo run --release --example census -- 7

use kfree::bounds::lower_bound_log2;
use kfree::oracle::{count_free_graphs, count_free_graphs_ie, ScanOptions};

fn main() -> kfree::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());

    println!("{:>3} {:>3} {:>14} {:>10} {:>10}", "n", "l", "f_n(K_l)", "log2", "e(T)");
    for n in 3..=max_n {
        for l in 3..=n {
            let r = count_free_graphs(n, l, ScanOptions::threads(threads))?;
            let log2 = kfree::ln_biguint(&r.count) / std::f64::consts::LN_2;
            let lower = lower_bound_log2(n as u64, l as u64)?;
            println!("{n:>3} {l:>3} {:>14} {log2:>10.4} {lower:>10}", r.count);
        }
    }

    // a second, independent count for triangles
    for n in 1..=5 {
        println!("inclusion-exclusion f_{n}(K_3) = {}", count_free_graphs_ie(n)?);
    }
    Ok(())
}
