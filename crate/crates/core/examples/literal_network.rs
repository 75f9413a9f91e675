//! Compares the default network with the literal one that omits the
//! per-period minimum load and course count. The literal network admits
//! plans with empty or underfull periods, which the checker rejects.

use bacp::fixtures;
use bacp::model::{Model, ModelVariant};
use bacp::search::{solve_decision, Decision, SearchConfig};

fn main() {
    let inst = fixtures::load("bacp8").unwrap().unwrap();
    let cfg = SearchConfig::default().with_node_limit(2_000_000);
    for variant in [ModelVariant::Aligned, ModelVariant::PaperFaithful] {
        let mut model = Model::build_variant(&inst, variant).unwrap();
        let (decision, stats) = solve_decision(&mut model, inst.load_max, &cfg).unwrap();
        print!("{variant:?}: {} nodes, ", stats.nodes);
        match decision {
            Decision::Sat(sol) => {
                let violations = inst.check_solution(&sol.period_of).unwrap();
                println!(
                    "loads {:?}, {} checker violation(s)",
                    sol.loads,
                    violations.len()
                );
                for v in violations.iter().take(4) {
                    println!("    {v}");
                }
            }
            other => println!("{other:?}"),
        }
    }
}
