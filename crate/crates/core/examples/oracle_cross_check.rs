//! Solves a batch of generated instances twice, by search and by
//! enumeration, and reports any disagreement.
//!
//!     cargo run --release --example oracle_cross_check -- 500

use bacp::oracle::{brute_force, gen_instance, GenParams};
use bacp::search::{optimize, SearchConfig};

fn main() {
    let count: u64 = std::env::args()
        .nth(1)
        .map_or(100, |s| s.parse().expect("count"));
    let (mut agree, mut feasible) = (0, 0);
    for seed in 1..=count {
        let p = GenParams {
            seed,
            courses: 4 + (seed % 6) as usize,
            periods: 2 + (seed % 2) as usize,
            density: (seed % 5) as f64 / 10.0,
            slack: (seed % 4) as f64 / 3.0,
            ..GenParams::default()
        };
        let inst = gen_instance(&p).unwrap();
        let truth = brute_force(&inst).unwrap();
        let found = optimize(&inst, &SearchConfig::default());
        if truth.objective() == found.objective() {
            agree += 1;
        } else {
            println!(
                "seed {seed}: enumeration {:?}, search {:?}",
                truth.objective(),
                found.objective()
            );
        }
        feasible += usize::from(truth.objective().is_some());
    }
    println!("{agree}/{count} agree ({feasible} feasible)");
}
