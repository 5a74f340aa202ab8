//! Container families at small n: the edge-maximal K_l-free graphs form a
//! family that covers every K_l-free graph with no copies at all.

use kfree::graphs::LabeledGraph;
use kfree::oracle::{maximal_free_family, validate_container_family, ScanOptions};
use num::BigRational;

fn main() -> kfree::Result<()> {
    let (n, l) = (5, 3);
    let family = maximal_free_family(n, l, ScanOptions::threads(4))?;
    println!("{} maximal triangle-free graphs on [{n}]", family.len());
    for g in family.iter().take(3) {
        println!("{}", g.to_text());
    }

    let eps = BigRational::new(1.into(), 100.into());
    let report = validate_container_family(n, l, &family, &eps, None, ScanOptions::threads(4))?;
    println!("{report:#?}");

    // one container holding everything has far too many triangles
    let complete = [LabeledGraph::complete(n)?];
    let half = BigRational::new(1.into(), 2.into());
    let report = validate_container_family(n, l, &complete, &half, None, ScanOptions::default())?;
    println!("{{K_{n}}}: covers_all = {}, copies_ok = {}", report.covers_all, report.copies_ok);
    Ok(())
}
