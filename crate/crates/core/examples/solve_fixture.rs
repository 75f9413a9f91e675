//! Minimize the maximum period load of a bundled curriculum.
//!
//!     cargo run --release --example solve_fixture -- bacp8 by-period one-first

use bacp::report::{self, RunRecord};
use bacp::search::{optimize, SearchConfig};
use bacp::{fixtures, MatrixOrder, ValueOrder};

fn main() {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "bacp8".into());
    let var_order: MatrixOrder = args
        .next()
        .map_or(Ok(MatrixOrder::ByPeriod), |s| s.parse())
        .unwrap();
    let value_order: ValueOrder = args
        .next()
        .map_or(Ok(ValueOrder::OneFirst), |s| s.parse())
        .unwrap();

    let inst = match fixtures::load(&name) {
        Some(Ok(inst)) => inst,
        Some(Err(e)) => panic!("bundled fixture `{name}` does not parse: {e}"),
        None => {
            let names: Vec<_> = fixtures::ALL.iter().map(|(n, _)| *n).collect();
            eprintln!("unknown fixture `{name}`; try one of {names:?}");
            std::process::exit(3);
        }
    };
    let config = SearchConfig::new(var_order, value_order).with_node_limit(2_000_000);
    let result = optimize(&inst, &config);
    let record = RunRecord::from_opt(&name, &config, &result);
    print!("{}", report::table(&record));

    if let Some(best) = &result.best {
        println!("\nperiod loads: {:?}", best.loads);
        for period in 1..=inst.periods {
            let ids: Vec<&str> = best
                .period_of
                .iter()
                .enumerate()
                .filter(|&(_, &p)| p == period)
                .map(|(i, _)| inst.courses[i].id.as_str())
                .collect();
            println!("  {period:>2}: {}", ids.join(" "));
        }
    }
}
