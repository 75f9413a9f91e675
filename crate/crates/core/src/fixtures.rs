//! Bundled instances.
//!
//! `BACP8`, `BACP10` and `BACP12` are the public CSPLib prob030 curricula.
//! `T1`, `T2` and `T3` are tiny hand-made cases used throughout the tests.

use crate::instance::{CurriculumInstance, ParseError};

pub const BACP8: &str = include_str!("../data/bacp8.txt");
pub const BACP10: &str = include_str!("../data/bacp10.txt");
pub const BACP12: &str = include_str!("../data/bacp12.txt");
/// Two courses, two periods, one prerequisite; fully forced.
pub const T1: &str = include_str!("../data/t1.txt");
/// Credits 1..6 over three periods with no binding side constraints.
pub const T2: &str = include_str!("../data/t2.txt");
/// A three-course prerequisite chain in two periods; infeasible.
pub const T3: &str = include_str!("../data/t3.txt");

pub const ALL: [(&str, &str); 6] = [
    ("bacp8", BACP8),
    ("bacp10", BACP10),
    ("bacp12", BACP12),
    ("t1", T1),
    ("t2", T2),
    ("t3", T3),
];

pub fn text(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load(name: &str) -> Option<Result<CurriculumInstance, ParseError>> {
    text(name).map(CurriculumInstance::parse)
}
