//! Ground truth for small instances and a seeded instance generator.
//!
//! [`brute_force`] enumerates every total assignment and filters it with the
//! checker; it shares no code with the constraint network or the search.
//!
//! [`gen_instance`] draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64(seed)`, sampled through `rand` 0.9's
//! `random_range` / `random_bool`. Changing either the generator or the
//! sampling calls changes every generated instance, so both are pinned.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::instance::{Course, Credits, CurriculumInstance, Prerequisite, Solution};

/// Largest search space `brute_force` agrees to enumerate.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleResult {
    Optimal {
        objective: Credits,
        witness: Solution,
        feasible_count: u64,
    },
    Infeasible,
}

impl OracleResult {
    pub fn objective(&self) -> Option<Credits> {
        match self {
            OracleResult::Optimal { objective, .. } => Some(*objective),
            OracleResult::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{periods}^{courses} candidate assignments exceed the enumeration limit of {MAX_CANDIDATES}")]
    TooLarge { courses: usize, periods: usize },
}

/// Number of total assignments, if it fits the guard.
pub fn candidate_count(inst: &CurriculumInstance) -> Option<u64> {
    let m = u32::try_from(inst.num_courses()).ok()?;
    (inst.periods as u64)
        .checked_pow(m)
        .filter(|&c| c <= MAX_CANDIDATES)
}

/// Exhaustive minimum over all `n^m` assignments.
///
/// Assignments are visited in mixed-radix order with the first course
/// varying fastest; the reported witness is the first optimum met.
pub fn brute_force(inst: &CurriculumInstance) -> Result<OracleResult, OracleError> {
    candidate_count(inst).ok_or(OracleError::TooLarge {
        courses: inst.num_courses(),
        periods: inst.periods,
    })?;
    let m = inst.num_courses();
    let n = inst.periods;
    let mut plan = vec![1usize; m];
    let mut best: Option<(Credits, Vec<usize>)> = None;
    let mut feasible = 0u64;
    loop {
        let violations = inst
            .check_solution(&plan)
            .expect("plan is total and in range");
        if violations.is_empty() {
            feasible += 1;
            let obj = inst.objective(&plan).expect("plan is in range");
            if best.as_ref().is_none_or(|(b, _)| obj < *b) {
                best = Some((obj, plan.clone()));
            }
        }
        // Mixed-radix increment, course 0 fastest.
        let mut k = 0;
        while k < m {
            if plan[k] < n {
                plan[k] += 1;
                break;
            }
            plan[k] = 1;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    Ok(match best {
        Some((objective, period_of)) => OracleResult::Optimal {
            objective,
            witness: Solution::new(inst, period_of).expect("plan is in range"),
            feasible_count: feasible,
        },
        None => OracleResult::Infeasible,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub courses: usize,
    pub periods: usize,
    pub credit_min: Credits,
    pub credit_max: Credits,
    /// Probability of each forward prerequisite edge.
    pub density: f64,
    /// 0 draws the tightest bounds that still pass validation, 1 the loosest.
    pub slack: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 1,
            courses: 6,
            periods: 3,
            credit_min: 1,
            credit_max: 5,
            density: 0.2,
            slack: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("need at least one course and one period")]
    Empty,
    #[error("credit range [{0}, {1}] must satisfy 1 ≤ lo ≤ hi")]
    CreditRange(Credits, Credits),
    #[error("{0} must lie in [0, 1], got {1}")]
    Probability(&'static str, f64),
}

impl GenParams {
    pub fn check(&self) -> Result<(), GenError> {
        if self.courses == 0 || self.periods == 0 {
            return Err(GenError::Empty);
        }
        if self.credit_min < 1 || self.credit_min > self.credit_max {
            return Err(GenError::CreditRange(self.credit_min, self.credit_max));
        }
        for (name, p) in [("density", self.density), ("slack", self.slack)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::Probability(name, p));
            }
        }
        Ok(())
    }
}

/// Draws an instance that passes `validate`. Solver-level feasibility is
/// not guaranteed.
pub fn gen_instance(p: &GenParams) -> Result<CurriculumInstance, GenError> {
    p.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let m = p.courses;
    let n = p.periods;

    let courses: Vec<Course> = (0..m)
        .map(|i| Course {
            id: format!("c{}", i + 1),
            credits: rng.random_range(p.credit_min..=p.credit_max),
        })
        .collect();

    let mut prerequisites = Vec::new();
    for course in 0..m {
        for requires in 0..course {
            if rng.random_bool(p.density) {
                prerequisites.push(Prerequisite { course, requires });
            }
        }
    }
    prerequisites.sort();

    // Each bound is drawn between its tightest valid value and a slack-scaled
    // distance towards its loosest one.
    let mut widen = |room: u64| -> u64 {
        let reach = (p.slack * room as f64).round() as u64;
        rng.random_range(0..=reach)
    };
    let total: u64 = courses.iter().map(|c| u64::from(c.credits)).sum();
    let max_credit = courses
        .iter()
        .map(|c| u64::from(c.credits))
        .max()
        .unwrap_or(0);
    let n64 = n as u64;
    let m64 = m as u64;

    let gamma_tight = max_credit.max(total.div_ceil(n64));
    let load_max = gamma_tight + widen(total - gamma_tight.min(total));
    let beta_tight = total / n64;
    let load_min = beta_tight - widen(beta_tight);
    let eps_tight = m64.div_ceil(n64);
    let courses_max = eps_tight + widen(m64 - eps_tight);
    let delta_tight = m64 / n64;
    let courses_min = delta_tight - widen(delta_tight);

    Ok(CurriculumInstance {
        courses,
        periods: n,
        load_min: load_min as Credits,
        load_max: load_max as Credits,
        courses_min: courses_min as usize,
        courses_max: courses_max as usize,
        prerequisites,
    })
}
