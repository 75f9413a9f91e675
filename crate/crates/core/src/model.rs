//! The constraint network over the course × period assignment matrix.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::engine::{LinearConstraint, PropagationOutcome, Relation, Store, VarId};
use crate::instance::{CurriculumInstance, InstanceError, Solution};

/// How the assignment matrix is laid out as a vector for branching.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixOrder {
    /// All courses of period 1, then all courses of period 2, ...
    ByPeriod,
    /// All periods of course 1, then all periods of course 2, ...
    ByCourse,
}

impl MatrixOrder {
    pub const ALL: [MatrixOrder; 2] = [MatrixOrder::ByCourse, MatrixOrder::ByPeriod];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixOrder::ByPeriod => "by-period",
            MatrixOrder::ByCourse => "by-course",
        }
    }
}

impl fmt::Display for MatrixOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "by-period" => Ok(MatrixOrder::ByPeriod),
            "by-course" => Ok(MatrixOrder::ByCourse),
            other => Err(format!("unknown variable order `{other}`")),
        }
    }
}

/// Which constraint families are posted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelVariant {
    /// Every family of the integer model, including per-period minimum load
    /// and minimum course count, plus the implied total-load equality
    /// `Σ_j load_j = Σ_i credits_i`. The network then accepts exactly the
    /// plans the checker accepts, and the total-load row lets propagation
    /// prove `max load ≥ ⌈Σ credits / n⌉`.
    #[default]
    Aligned,
    /// The literal network: β and γ bound only the maximum load variable,
    /// course counts are bounded above only, and no implied constraints are
    /// added. Optimality proofs are usually out of reach for this network.
    PaperFaithful,
}

impl ModelVariant {
    /// `PaperFaithful` when the crate is built with the `paper-faithful`
    /// feature, `Aligned` otherwise.
    pub fn from_build() -> Self {
        if cfg!(feature = "paper-faithful") {
            ModelVariant::PaperFaithful
        } else {
            ModelVariant::Aligned
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("root propagation failed: the instance is infeasible")]
    RootConflict,
    #[error("position ({course}, {period}) outside a {courses}×{periods} matrix")]
    IndexOutOfRange {
        course: usize,
        period: usize,
        courses: usize,
        periods: usize,
    },
    #[error("variable x[{course}][{period}] is not fixed")]
    NotFullyAssigned { course: usize, period: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Position of matrix entry (course, period) in the branching vector.
///
/// Both indices and the result are 1-based.
pub fn linear_index(
    course: usize,
    period: usize,
    courses: usize,
    periods: usize,
    order: MatrixOrder,
) -> Result<usize, ModelError> {
    if !(1..=courses).contains(&course) || !(1..=periods).contains(&period) {
        return Err(ModelError::IndexOutOfRange {
            course,
            period,
            courses,
            periods,
        });
    }
    Ok(match order {
        MatrixOrder::ByPeriod => (period - 1) * courses + course,
        MatrixOrder::ByCourse => (course - 1) * periods + period,
    })
}

#[derive(Debug, Clone)]
pub struct Model {
    pub instance: CurriculumInstance,
    /// `x[i][j]` is 1 iff course `i` sits in period `j + 1` (0-based storage).
    pub x: Vec<Vec<VarId>>,
    /// Load of each period.
    pub loads: Vec<VarId>,
    /// Upper bound on every period load; the objective.
    pub c_max: VarId,
    pub store: Store,
    pub variant: ModelVariant,
}

impl Model {
    pub fn build(inst: &CurriculumInstance) -> Result<Self, ModelError> {
        Self::build_variant(inst, ModelVariant::from_build())
    }

    pub fn build_variant(
        inst: &CurriculumInstance,
        variant: ModelVariant,
    ) -> Result<Self, ModelError> {
        let m = inst.num_courses();
        let n = inst.periods;
        let beta = i64::from(inst.load_min);
        let gamma = i64::from(inst.load_max);
        let mut store = Store::new();
        let new_var =
            |store: &mut Store, lb, ub| store.new_var(lb, ub).expect("model bounds are ordered");

        let x: Vec<Vec<VarId>> = (0..m)
            .map(|_| (0..n).map(|_| new_var(&mut store, 0, 1)).collect())
            .collect();
        let load_lb = match variant {
            ModelVariant::Aligned => beta,
            ModelVariant::PaperFaithful => 0,
        };
        let loads: Vec<VarId> = (0..n)
            .map(|_| new_var(&mut store, load_lb, gamma))
            .collect();
        let c_max = new_var(&mut store, beta, gamma);

        let post = |store: &mut Store, c: LinearConstraint| {
            store
                .post(c)
                .expect("model constraints reference live variables");
        };

        for j in 0..n {
            // Σ_i credits_i · x[i][j] − load_j = 0
            let mut terms: Vec<(i64, VarId)> = (0..m)
                .map(|i| (i64::from(inst.courses[i].credits), x[i][j]))
                .collect();
            terms.push((-1, loads[j]));
            post(&mut store, LinearConstraint::new(terms, Relation::Eq, 0));
            post(
                &mut store,
                LinearConstraint::new(vec![(1, loads[j]), (-1, c_max)], Relation::Le, 0),
            );
        }
        for row in &x {
            post(
                &mut store,
                LinearConstraint::sum(row.iter().copied(), Relation::Eq, 1),
            );
        }
        for j in 0..n {
            let column = || x.iter().map(|row| row[j]);
            post(
                &mut store,
                LinearConstraint::sum(column(), Relation::Le, inst.courses_max as i64),
            );
            if variant == ModelVariant::Aligned {
                post(
                    &mut store,
                    LinearConstraint::sum(column(), Relation::Ge, inst.courses_min as i64),
                );
            }
        }
        if variant == ModelVariant::Aligned {
            // Implied by the load definitions and assign-once: Σ_j load_j = Σ_i credits_i.
            let total = i64::try_from(inst.total_credits()).expect("credit total fits i64");
            post(
                &mut store,
                LinearConstraint::sum(loads.iter().copied(), Relation::Eq, total),
            );
        }
        for p in &inst.prerequisites {
            let (b, a) = (p.course, p.requires);
            post(
                &mut store,
                LinearConstraint::sum([x[b][0]], Relation::Eq, 0),
            );
            for j in 1..n {
                // Σ_{r<j} x[a][r] − x[b][j] ≥ 0
                let mut terms: Vec<(i64, VarId)> = (0..j).map(|r| (1, x[a][r])).collect();
                terms.push((-1, x[b][j]));
                post(&mut store, LinearConstraint::new(terms, Relation::Ge, 0));
            }
        }

        if store.propagate().is_conflict() {
            return Err(ModelError::RootConflict);
        }
        Ok(Model {
            instance: inst.clone(),
            x,
            loads,
            c_max,
            store,
            variant,
        })
    }

    pub fn num_courses(&self) -> usize {
        self.x.len()
    }

    pub fn num_periods(&self) -> usize {
        self.loads.len()
    }

    /// The assignment variables in branching order.
    pub fn branching_vector(&self, order: MatrixOrder) -> Vec<VarId> {
        let (m, n) = (self.num_courses(), self.num_periods());
        let mut out = Vec::with_capacity(m * n);
        match order {
            MatrixOrder::ByPeriod => {
                for j in 0..n {
                    out.extend((0..m).map(|i| self.x[i][j]));
                }
            }
            MatrixOrder::ByCourse => {
                for row in &self.x {
                    out.extend(row.iter().copied());
                }
            }
        }
        out
    }

    /// Fixes every assignment variable from a total 1-based plan and
    /// propagates. The store is left as propagation leaves it.
    pub fn impose(&mut self, period_of: &[usize]) -> PropagationOutcome {
        for (i, &p) in period_of.iter().enumerate() {
            for j in 0..self.num_periods() {
                let want = i64::from(j + 1 == p);
                let v = self.x[i][j];
                match self.store.assign(v, want) {
                    Ok(PropagationOutcome::Fixpoint) => {}
                    Ok(conflict) => return conflict,
                    Err(_) => return PropagationOutcome::Conflict(None),
                }
            }
        }
        self.store.propagate()
    }

    /// Reads the plan off a store whose assignment variables are all fixed.
    pub fn extract_solution(&self) -> Result<Solution, ModelError> {
        let mut period_of = Vec::with_capacity(self.num_courses());
        for (i, row) in self.x.iter().enumerate() {
            let mut chosen = None;
            for (j, &v) in row.iter().enumerate() {
                let d = self.store.domain(v);
                if !d.is_fixed() {
                    return Err(ModelError::NotFullyAssigned {
                        course: i + 1,
                        period: j + 1,
                    });
                }
                if d.lb == 1 && chosen.is_none() {
                    chosen = Some(j + 1);
                }
            }
            // A row of zeros only survives in a failed store; it maps to
            // period 0 and is rejected by `Solution::new`.
            period_of.push(chosen.unwrap_or(0));
        }
        Ok(Solution::new(&self.instance, period_of)?)
    }
}
