//! Prints a generated instance. The same parameters always give the same
//! text.
//!
//!     cargo run --example generate -- 7 8 3

use bacp::oracle::{gen_instance, GenParams};

fn main() {
    let num = |k: usize, default: u64| {
        std::env::args()
            .nth(k)
            .map_or(default, |s| s.parse().unwrap())
    };
    let p = GenParams {
        seed: num(1, 1),
        courses: num(2, 8) as usize,
        periods: num(3, 3) as usize,
        ..GenParams::default()
    };
    let inst = gen_instance(&p).unwrap();
    print!("{}", inst.serialize());
    let defects = inst.validate();
    assert!(defects.is_empty(), "{defects:?}");
}
