//! A finite-domain solver for the Balanced Academic Curriculum Problem.
//!
//! Courses with credits and prerequisites are assigned to periods so that
//! the heaviest period is as light as possible. The crate provides:
//!
//! * [`instance`]: problem data, file formats and the solution checker;
//! * [`engine`]: a bounds-consistency kernel for linear constraints;
//! * [`model`]: the 0/1 course × period network;
//! * [`search`]: ordered depth-first search and the minimization loop;
//! * [`oracle`]: exhaustive enumeration and a seeded instance generator;
//! * [`report`] and [`cli`]: run records, logs, and the `bacp` command.
//!
//! ```
//! use bacp::{fixtures, search::{optimize, OptStatus, SearchConfig}};
//!
//! let inst = fixtures::load("bacp8").unwrap().unwrap();
//! let result = optimize(&inst, &SearchConfig::default());
//! assert_eq!(result.status, OptStatus::Optimal);
//! assert_eq!(result.objective(), Some(17));
//! ```

pub mod cli;
pub mod engine;
pub mod fixtures;
pub mod instance;
pub mod model;
pub mod oracle;
pub mod report;
pub mod search;

pub use instance::{Course, Credits, CurriculumInstance, Solution, Violation, ViolationKind};
pub use model::{MatrixOrder, Model};
pub use search::{BoundMode, OptResult, OptStatus, SearchConfig, ValueOrder};
