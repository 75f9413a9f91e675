//! Writes the anytime log of a minimization as CSV on stdout.
//!
//!     cargo run --release --example anytime_log -- bacp12 continue

use bacp::fixtures;
use bacp::report::anytime_csv;
use bacp::search::{optimize, BoundMode, SearchConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "bacp12".into());
    let mode: BoundMode = args
        .next()
        .map_or(Ok(BoundMode::RestartPerBound), |s| s.parse())
        .unwrap();
    let inst = fixtures::load(&name)
        .expect("known fixture")
        .expect("fixture parses");
    let result = optimize(
        &inst,
        &SearchConfig::default()
            .with_bound_mode(mode)
            .with_node_limit(2_000_000),
    );
    print!("{}", anytime_csv(&result.anytime));
    eprintln!("{:?} after {} nodes", result.status, result.stats.nodes);
}
