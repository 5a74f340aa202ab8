//! Parameters of the clique hypergraph H(n, l): edges of K_n as vertices,
//! K_l copies as hyperedges.

use kfree::clique_hypergraph::{
    brute_max_codegree, codegree, delta_function_at, delta_function_exact, hypergraph_params, v_min,
};
use kfree::graphs::LabeledGraph;
use kfree::{LogMagnitude, Order};
use num::BigRational;

fn main() -> kfree::Result<()> {
    let (n, l) = (7u64, 4u32);
    let stats = hypergraph_params(n, l)?;
    let exact = stats.exact.as_ref().unwrap();
    println!(
        "H({n},{l}): r = {}, N = {}, e(H) = {}, d = {}",
        stats.uniformity, exact.vertices, exact.hyperedges, exact.degree
    );
    for j in 1..=stats.uniformity {
        println!(
            "  j = {j:>2}: v_min = {}, Delta_j = {:>3}, search = {}",
            v_min(j)?,
            exact.max_codegrees[(j - 1) as usize],
            brute_max_codegree(n, l, j)?
        );
    }

    // a path on three vertices sits in C(4, 1) copies of K_4 in K_7
    let path = LabeledGraph::from_edges(n as usize, &[(0, 1), (1, 2)])?;
    println!("d(path) = {}", codegree(n, l, &path)?);

    let half = BigRational::new(1.into(), 2.into());
    println!("Delta(H(6,3), 1/2) = {}", delta_function_exact(6, 3, &half)?);
    let far = delta_function_at(Order::Log2(1e6), 3, LogMagnitude::from_log2(-1e4))?;
    println!("Delta(H(2^1e6, 3), 2^-1e4) = {far}");
    Ok(())
}
