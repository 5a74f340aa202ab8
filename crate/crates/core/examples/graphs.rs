//! Labeled graphs as edge bitsets: Turán graphs, clique counts and the
//! text format.

use kfree::graphs::{combinations, count_cliques, turan_edge_count, turan_graph, LabeledGraph, TuranPartition};

fn main() -> kfree::Result<()> {
    let t = turan_graph(10, 3)?;
    println!("T(10,3): parts {:?}, {} edges", TuranPartition::new(10, 3)?.part_sizes, t.edge_count());
    println!("triangles: {}, K_4: {}", count_cliques(&t, 3), count_cliques(&t, 4));
    println!("e(T(10^9, 7)) = {}", turan_edge_count(1_000_000_000, 7)?);

    let text = t.to_text();
    let back = LabeledGraph::from_text(&text)?;
    assert_eq!(back, t);

    let subsets: Vec<String> = combinations(5, 2).map(|m| format!("{m:05b}")).collect();
    println!("2-subsets of 5 in order: {}", subsets.join(" "));
    Ok(())
}
