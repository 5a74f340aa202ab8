//! Lower, main-term and upper bounds on log2 f_n(K_l), with the
//! supersaturation case analysis.

use kfree::bounds::{bounds_report, case_analysis, final_count_bound, k_threshold};
use kfree::oracle::{maximal_free_family, ScanOptions};
use kfree::report::to_json;
use kfree::{LogMagnitude, Order};

fn main() -> kfree::Result<()> {
    let report = bounds_report(Order::Exact(7), 3, Some(0.3))?;
    print!("{}", to_json(&report));

    let k = k_threshold(Order::Exact(100), 3, 0.5)?;
    println!("k(3) at n = 100, delta = 1/2: t = {}, k = {:?}", k.t, k.k_exact.map(|x| x.to_string()));
    for delta in [0.5, 0.01] {
        let a = case_analysis(Order::Exact(100), 3, delta)?;
        println!("delta = {delta}: {:?}, all pass = {}", a.case, a.all_pass);
    }

    // a concrete upper bound from the actual maximal triangle-free family on [7]
    let family = maximal_free_family(7, 3, ScanOptions::threads(4))?;
    let size = LogMagnitude::from_value((family.len() as f64).log2());
    let bound = final_count_bound(Order::Exact(7), 3, 0.3, size)?;
    println!("|family| = {}, log2 f_7(K_3) <= {:.4}", family.len(), bound.value());
    Ok(())
}
