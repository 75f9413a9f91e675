//! Asks whether a fixture has a plan with maximum load at most K.
//!
//!     cargo run --release --example decision_query -- bacp10 14

use bacp::fixtures;
use bacp::model::MatrixOrder;
use bacp::search::{decide, Decision, SearchConfig, ValueOrder};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "bacp10".into());
    let k: u32 = args.next().map_or(14, |s| s.parse().unwrap());
    let inst = fixtures::load(&name)
        .expect("known fixture")
        .expect("fixture parses");
    let cfg =
        SearchConfig::new(MatrixOrder::ByPeriod, ValueOrder::ZeroFirst).with_node_limit(2_000_000);
    for bound in [k, k - 1] {
        match decide(&inst, bound, &cfg) {
            Ok((Decision::Sat(sol), stats)) => {
                println!(
                    "K = {bound}: Sat, loads {:?} ({} nodes)",
                    sol.loads, stats.nodes
                )
            }
            Ok((Decision::Unsat, stats)) => println!("K = {bound}: Unsat ({} nodes)", stats.nodes),
            Ok((Decision::LimitReached(stats), _)) => {
                println!("K = {bound}: unknown after {} nodes", stats.nodes)
            }
            Err(e) => println!("K = {bound}: {e}"),
        }
    }
}
