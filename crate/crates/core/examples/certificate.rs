//! Every inequality of the container argument at n = 2^(10^6), for the
//! constants as published and for the repaired constants.

use kfree::certificate::{minimal_n_threshold, verify_proof_chain, ChainOptions, ChainVariant};
use kfree::Order;

fn main() -> kfree::Result<()> {
    for variant in [ChainVariant::Printed, ChainVariant::Repaired] {
        let options = ChainOptions { variant, ..Default::default() };
        let report = verify_proof_chain(Order::Log2(1e6), 3, 0.1, 1, options)?;
        println!("{variant:?}: overall_pass = {}", report.overall_pass);
        for check in report.checks() {
            let mark = if check.pass { "ok  " } else { "FAIL" };
            println!("  {mark} {:<70} margin {:+.4e}", check.step, check.margin_log);
        }
        let threshold = minimal_n_threshold(3, 0.1, 1, options)?;
        match threshold.log2_n {
            Some(x) => println!("  passes from log2 n = {x:.4}"),
            None => println!("  never passes below log2 n = 2^64 ({:?})", threshold.failing_below),
        }
    }

    let small = verify_proof_chain(Order::Log2(20.0), 3, 0.1, 1, ChainOptions::default())?;
    println!("at n = 2^20 the first failure is {:?}", small.first_failure);
    Ok(())
}
