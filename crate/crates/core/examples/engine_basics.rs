//! The propagation engine on its own: a tiny knapsack-like store.

use bacp::engine::{LinearConstraint, Relation, Store};

fn main() {
    let mut store = Store::new();
    let x = store.new_var(0, 1).unwrap();
    let y = store.new_var(0, 1).unwrap();
    let z = store.new_var(0, 1).unwrap();
    let load = store.new_var(0, 10).unwrap();

    // 3x + 2y + 4z = load, load ≤ 5, x + y + z ≥ 2
    store
        .post(LinearConstraint::new(
            vec![(3, x), (2, y), (4, z), (-1, load)],
            Relation::Eq,
            0,
        ))
        .unwrap();
    store
        .post(LinearConstraint::sum([load], Relation::Le, 5))
        .unwrap();
    store
        .post(LinearConstraint::sum([x, y, z], Relation::Ge, 2))
        .unwrap();

    println!("root: {:?}", store.propagate());
    println!("  domains {:?}", store.domains());

    let mark = store.save();
    println!("assign z = 1: {:?}", store.assign(z, 1).unwrap());
    store.restore(mark).unwrap();

    let mark = store.save();
    println!("assign x = 1: {:?}", store.assign(x, 1).unwrap());
    println!("  domains {:?}", store.domains());
    store.restore(mark).unwrap();
    println!("restored: {:?}", store.domains());
}
