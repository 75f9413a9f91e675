//! Checks hand-written plans against the two-course instance and prints
//! every violated constraint.

use bacp::{fixtures, CurriculumInstance};

fn main() {
    let inst = CurriculumInstance::parse(fixtures::T1).unwrap();
    for text in ["a 1\nb 2\n", "a 2\nb 1\n", "a 1\nb 1\n"] {
        let plan = inst.parse_solution(text).unwrap();
        println!("plan {}", text.trim().replace('\n', ", "));
        let violations = inst.check_solution(&plan).unwrap();
        if violations.is_empty() {
            println!(
                "  feasible, loads {:?}, objective {}",
                inst.compute_loads(&plan).unwrap(),
                inst.objective(&plan).unwrap()
            );
        }
        for v in violations {
            println!("  {v}");
        }
    }
}
