//! Runs all four variable/value orderings on one fixture and prints the
//! time to the first and to the optimal solution, `∞` where the node
//! budget ran out first.
//!
//!     cargo run --release --example heuristic_matrix -- bacp12 1000000

use bacp::fixtures;
use bacp::report::{matrix_table, RunRecord};
use bacp::search::{optimize, SearchConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "bacp12".into());
    let limit: u64 = args
        .next()
        .map_or(200_000, |s| s.parse().expect("node limit"));
    let inst = fixtures::load(&name)
        .expect("known fixture")
        .expect("fixture parses");

    let configs = SearchConfig::heuristic_matrix(SearchConfig::default().with_node_limit(limit));
    let records: Vec<RunRecord> = std::thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| s.spawn(|| RunRecord::from_opt(&name, c, &optimize(&inst, c))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    println!("{name}, node limit {limit}\n");
    print!("{}", matrix_table(&records));
    println!();
    for r in &records {
        println!(
            "{:<10} {:<11} {:<11} objective {:>3}  nodes {:>8}",
            r.var_order.as_str(),
            r.value_order.as_str(),
            r.status.as_str(),
            r.objective.map_or("-".into(), |o| o.to_string()),
            r.nodes
        );
    }
}
