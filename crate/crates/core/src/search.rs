//! Depth-first search over the assignment matrix and the bound-tightening
//! minimization loop built on it.
//!
//! Branching is binary on 0/1 variables. The variable is always the first
//! unfixed entry of the branching vector ([`MatrixOrder`]); the value tried
//! first is set by [`ValueOrder`]. Minimization solves a sequence of
//! decision problems `max load ≤ K`, lowering `K` to one below each
//! objective found until the network becomes unsatisfiable.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{PropagationOutcome, VarId};
use crate::instance::{Credits, CurriculumInstance, Solution};
use crate::model::{MatrixOrder, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueOrder {
    /// Try 0 first: keep the course out of this slot.
    ZeroFirst,
    /// Try 1 first: place the course in this slot.
    OneFirst,
}

impl ValueOrder {
    pub const ALL: [ValueOrder; 2] = [ValueOrder::ZeroFirst, ValueOrder::OneFirst];

    pub fn first(self) -> i64 {
        match self {
            ValueOrder::ZeroFirst => 0,
            ValueOrder::OneFirst => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ValueOrder::ZeroFirst => "zero-first",
            ValueOrder::OneFirst => "one-first",
        }
    }
}

impl fmt::Display for ValueOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ValueOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero-first" => Ok(ValueOrder::ZeroFirst),
            "one-first" => Ok(ValueOrder::OneFirst),
            other => Err(format!("unknown value order `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// Start a fresh tree for every tightened bound.
    #[serde(rename = "restart")]
    RestartPerBound,
    /// Keep searching the current tree under the tightened bound.
    #[serde(rename = "continue")]
    ContinueInTree,
}

impl BoundMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMode::RestartPerBound => "restart",
            BoundMode::ContinueInTree => "continue",
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "restart" => Ok(BoundMode::RestartPerBound),
            "continue" => Ok(BoundMode::ContinueInTree),
            other => Err(format!("unknown bound mode `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub var_order: MatrixOrder,
    pub value_order: ValueOrder,
    pub bound_mode: BoundMode,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            var_order: MatrixOrder::ByPeriod,
            value_order: ValueOrder::OneFirst,
            bound_mode: BoundMode::RestartPerBound,
            node_limit: None,
            time_limit: None,
        }
    }
}

impl SearchConfig {
    pub fn new(var_order: MatrixOrder, value_order: ValueOrder) -> Self {
        SearchConfig {
            var_order,
            value_order,
            ..Self::default()
        }
    }

    pub fn with_bound_mode(mut self, mode: BoundMode) -> Self {
        self.bound_mode = mode;
        self
    }

    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    /// The four variable-order × value-order combinations, grouped by
    /// course first.
    pub fn heuristic_matrix(base: SearchConfig) -> [SearchConfig; 4] {
        let mut out = [base; 4];
        let mut k = 0;
        for var_order in MatrixOrder::ALL {
            for value_order in ValueOrder::ALL {
                out[k].var_order = var_order;
                out[k].value_order = value_order;
                k += 1;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branching decisions taken (each child counts once).
    pub nodes: u64,
    pub failures: u64,
    pub peak_depth: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnytimeEntry {
    pub objective: Credits,
    pub seconds: f64,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OptStatus {
    Optimal,
    Infeasible,
    Incomplete,
}

impl fmt::Display for OptStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone)]
pub struct OptResult {
    pub status: OptStatus,
    pub best: Option<Solution>,
    pub anytime: Vec<AnytimeEntry>,
    pub stats: SearchStats,
}

impl OptResult {
    pub fn objective(&self) -> Option<Credits> {
        self.best.as_ref().map(|s| s.objective)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Sat(Solution),
    Unsat,
    LimitReached(SearchStats),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    On { var: VarId, value: i64 },
    AllFixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bound {bound} is below the minimum period load {beta}")]
    BoundBelowBeta { bound: Credits, beta: Credits },
}

/// The first unfixed assignment variable in branching order, paired with
/// the value to try first.
pub fn select_branch(model: &Model, config: &SearchConfig) -> Branch {
    model
        .branching_vector(config.var_order)
        .into_iter()
        .find(|&v| !model.store.is_fixed(v))
        .map_or(Branch::AllFixed, |var| Branch::On {
            var,
            value: config.value_order.first(),
        })
}

/// Is there a plan with maximum load at most `max_load`?
///
/// The model's store is returned to its pre-call state.
pub fn solve_decision(
    model: &mut Model,
    max_load: Credits,
    config: &SearchConfig,
) -> Result<(Decision, SearchStats), SearchError> {
    if max_load < model.instance.load_min {
        return Err(SearchError::BoundBelowBeta {
            bound: max_load,
            beta: model.instance.load_min,
        });
    }
    let mut dfs = Dfs::new(model, config);
    let mut found = None;
    let end = dfs.run(i64::from(max_load), |sol, _| {
        found = Some(sol);
        None
    });
    let stats = dfs.finish();
    let decision = match end {
        DfsEnd::Stopped => Decision::Sat(found.expect("stopped only on a solution")),
        DfsEnd::Exhausted => Decision::Unsat,
        DfsEnd::Limit => Decision::LimitReached(stats),
    };
    Ok((decision, stats))
}

/// Minimizes the maximum period load.
///
/// The model's store is returned to its pre-call state.
pub fn minimize(model: &mut Model, config: &SearchConfig) -> OptResult {
    let mut bound = model.store.domain(model.c_max).ub;
    let mut best: Option<Solution> = None;
    let mut anytime = Vec::new();
    let mut dfs = Dfs::new(model, config);

    let mut record = |sol: Solution, dfs: &Dfs| {
        anytime.push(AnytimeEntry {
            objective: sol.objective,
            seconds: dfs.started.elapsed().as_secs_f64(),
            nodes: dfs.stats.nodes,
        });
        let next = i64::from(sol.objective) - 1;
        best = Some(sol);
        next
    };

    let end = match config.bound_mode {
        BoundMode::RestartPerBound => loop {
            let mut found = None;
            match dfs.run(bound, |sol, _| {
                found = Some(sol);
                None
            }) {
                DfsEnd::Stopped => {
                    bound = record(found.expect("stopped only on a solution"), &dfs);
                }
                end => break end,
            }
        },
        BoundMode::ContinueInTree => dfs.run(bound, |sol, dfs| Some(record(sol, dfs))),
    };
    let stats = dfs.finish();
    let status = match (end, &best) {
        (DfsEnd::Limit, _) => OptStatus::Incomplete,
        (_, Some(_)) => OptStatus::Optimal,
        (_, None) => OptStatus::Infeasible,
    };
    OptResult {
        status,
        best,
        anytime,
        stats,
    }
}

/// Builds the model and minimizes; a root conflict is reported as
/// `Infeasible`.
pub fn optimize(inst: &CurriculumInstance, config: &SearchConfig) -> OptResult {
    match Model::build(inst) {
        Ok(mut model) => minimize(&mut model, config),
        Err(_) => OptResult {
            status: OptStatus::Infeasible,
            best: None,
            anytime: Vec::new(),
            stats: SearchStats::default(),
        },
    }
}

/// Builds the model and answers the decision question; a root conflict is
/// `Unsat`.
pub fn decide(
    inst: &CurriculumInstance,
    max_load: Credits,
    config: &SearchConfig,
) -> Result<(Decision, SearchStats), SearchError> {
    if max_load < inst.load_min {
        return Err(SearchError::BoundBelowBeta {
            bound: max_load,
            beta: inst.load_min,
        });
    }
    match Model::build(inst) {
        Ok(mut model) => solve_decision(&mut model, max_load, config),
        Err(_) => Ok((Decision::Unsat, SearchStats::default())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DfsEnd {
    Exhausted,
    Stopped,
    Limit,
}

struct Frame {
    mark: crate::engine::Mark,
    pos: usize,
    other: Option<i64>,
}

struct Dfs<'a> {
    model: &'a mut Model,
    vector: Vec<VarId>,
    first_value: i64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
    started: Instant,
    stats: SearchStats,
}

impl<'a> Dfs<'a> {
    fn new(model: &'a mut Model, config: &SearchConfig) -> Self {
        let started = Instant::now();
        Dfs {
            vector: model.branching_vector(config.var_order),
            model,
            first_value: config.value_order.first(),
            node_limit: config.node_limit,
            deadline: config.time_limit.map(|t| started + t),
            started,
            stats: SearchStats::default(),
        }
    }

    fn finish(mut self) -> SearchStats {
        self.stats.elapsed = self.started.elapsed();
        self.stats
    }

    fn limit_hit(&self) -> bool {
        self.node_limit.is_some_and(|l| self.stats.nodes >= l)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Applies `max load ≤ bound` and fixes `var = value`.
    fn try_child(&mut self, bound: i64, var: VarId, value: i64) -> bool {
        self.stats.nodes += 1;
        let store = &mut self.model.store;
        let c_max = self.model.c_max;
        let ok = store.restrict(c_max, i64::MIN, bound) == Ok(PropagationOutcome::Fixpoint)
            && store.domain(var).contains(value)
            && store.assign(var, value) == Ok(PropagationOutcome::Fixpoint);
        if !ok {
            self.stats.failures += 1;
        }
        ok
    }

    /// Explores the tree under `max load ≤ bound`.
    ///
    /// At each complete assignment `on_solution` either stops the search
    /// (`None`) or lowers the bound and continues (`Some(new_bound)`).
    fn run(
        &mut self,
        mut bound: i64,
        mut on_solution: impl FnMut(Solution, &Self) -> Option<i64>,
    ) -> DfsEnd {
        let root = self.model.store.save();
        let c_max = self.model.c_max;
        if self.model.store.restrict(c_max, i64::MIN, bound) != Ok(PropagationOutcome::Fixpoint) {
            self.stats.failures += 1;
            self.model.store.restore(root).expect("root mark is live");
            return DfsEnd::Exhausted;
        }

        let mut stack: Vec<Frame> = Vec::new();
        let mut start = 0;
        let end = 'search: loop {
            let next =
                (start..self.vector.len()).find(|&p| !self.model.store.is_fixed(self.vector[p]));
            match next {
                None => {
                    let sol = self
                        .model
                        .extract_solution()
                        .expect("all assignment variables fixed at a fixpoint");
                    match on_solution(sol, self) {
                        None => break 'search DfsEnd::Stopped,
                        Some(tighter) => bound = tighter,
                    }
                }
                Some(pos) => {
                    if self.limit_hit() {
                        break 'search DfsEnd::Limit;
                    }
                    let mark = self.model.store.save();
                    stack.push(Frame {
                        mark,
                        pos,
                        other: Some(1 - self.first_value),
                    });
                    self.stats.peak_depth = self.stats.peak_depth.max(stack.len());
                    if self.try_child(bound, self.vector[pos], self.first_value) {
                        start = pos + 1;
                        continue 'search;
                    }
                }
            }

            // Backtrack to the deepest frame with an untried value.
            loop {
                let Some(frame) = stack.last_mut() else {
                    break 'search DfsEnd::Exhausted;
                };
                self.model
                    .store
                    .restore(frame.mark)
                    .expect("frame mark is live");
                let Some(value) = frame.other.take() else {
                    stack.pop();
                    continue;
                };
                if self.limit_hit() {
                    break 'search DfsEnd::Limit;
                }
                frame.mark = self.model.store.save();
                let pos = frame.pos;
                if self.try_child(bound, self.vector[pos], value) {
                    start = pos + 1;
                    continue 'search;
                }
            }
        };
        self.model.store.restore(root).expect("root mark is live");
        end
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn model(text: &str) -> Model {
        Model::build(&CurriculumInstance::parse(text).unwrap()).unwrap()
    }

    fn all_configs() -> Vec<SearchConfig> {
        let mut out = Vec::new();
        for mode in [BoundMode::RestartPerBound, BoundMode::ContinueInTree] {
            out.extend(SearchConfig::heuristic_matrix(
                SearchConfig::default().with_bound_mode(mode),
            ));
        }
        out
    }

    #[test]
    fn decision_on_t1() {
        for cfg in all_configs() {
            let mut m = model(fixtures::T1);
            match solve_decision(&mut m, 3, &cfg).unwrap().0 {
                Decision::Sat(sol) => assert_eq!(sol.period_of, vec![1, 2]),
                other => panic!("{other:?}"),
            }
            assert_eq!(solve_decision(&mut m, 2, &cfg).unwrap().0, Decision::Unsat);
            assert_eq!(
                solve_decision(&mut m, 1, &cfg),
                Err(SearchError::BoundBelowBeta { bound: 1, beta: 2 })
            );
        }
    }

    #[test]
    fn decision_on_t3_chain_is_unsat() {
        let inst = CurriculumInstance::parse(fixtures::T3).unwrap();
        for cfg in all_configs() {
            for k in [0, 3, 99] {
                assert_eq!(decide(&inst, k, &cfg).unwrap().0, Decision::Unsat);
            }
        }
    }

    #[test]
    fn decision_restores_the_store() {
        let mut m = model(fixtures::T2);
        let before = m.store.domains().to_vec();
        let cfg = SearchConfig::default();
        assert!(matches!(
            solve_decision(&mut m, 7, &cfg).unwrap().0,
            Decision::Sat(_)
        ));
        assert_eq!(m.store.domains(), &before[..]);
        assert_eq!(solve_decision(&mut m, 6, &cfg).unwrap().0, Decision::Unsat);
        assert_eq!(m.store.domains(), &before[..]);
    }

    #[test]
    fn minimize_t1() {
        for cfg in all_configs() {
            let r = minimize(&mut model(fixtures::T1), &cfg);
            assert_eq!(r.status, OptStatus::Optimal);
            assert_eq!(r.objective(), Some(3));
            assert_eq!(r.anytime.len(), 1);
            assert_eq!(r.anytime[0].objective, 3);
        }
    }

    #[test]
    fn minimize_t2() {
        for cfg in all_configs() {
            let r = minimize(&mut model(fixtures::T2), &cfg);
            assert_eq!(r.status, OptStatus::Optimal, "{cfg:?}");
            assert_eq!(r.objective(), Some(7), "{cfg:?}");
            let objs: Vec<_> = r.anytime.iter().map(|e| e.objective).collect();
            assert!(objs.windows(2).all(|w| w[0] > w[1]), "{objs:?}");
            assert_eq!(*objs.last().unwrap(), 7);
            assert!(r.stats.failures <= r.stats.nodes + 1);
        }
    }

    #[test]
    fn infeasible_instance() {
        let inst = CurriculumInstance::parse(fixtures::T3).unwrap();
        let r = optimize(&inst, &SearchConfig::default());
        assert_eq!(r.status, OptStatus::Infeasible);
        assert!(r.best.is_none());
    }

    #[test]
    fn node_limit_gives_incomplete() {
        let cfg = SearchConfig::default().with_node_limit(1);
        let r = minimize(&mut model(fixtures::T2), &cfg);
        assert_eq!(r.status, OptStatus::Incomplete);
        assert!(r.stats.nodes <= 1);
        let (d, stats) = solve_decision(&mut model(fixtures::T2), 7, &cfg).unwrap();
        assert_eq!(d, Decision::LimitReached(stats));
    }

    #[test]
    fn select_branch_examples() {
        let m = model(fixtures::T2);
        for order in MatrixOrder::ALL {
            let cfg = SearchConfig::new(order, ValueOrder::OneFirst);
            assert_eq!(
                select_branch(&m, &cfg),
                Branch::On {
                    var: m.x[0][0],
                    value: 1
                }
            );
        }
        let cfg = SearchConfig::new(MatrixOrder::ByCourse, ValueOrder::ZeroFirst);
        assert_eq!(
            select_branch(&m, &cfg),
            Branch::On {
                var: m.x[0][0],
                value: 0
            }
        );
        assert_eq!(select_branch(&model(fixtures::T1), &cfg), Branch::AllFixed);
    }

    #[test]
    fn select_branch_skips_fixed_prefix() {
        let mut m = model(fixtures::T2);
        m.store.assign(m.x[0][0], 0).unwrap();
        let by_course = SearchConfig::new(MatrixOrder::ByCourse, ValueOrder::OneFirst);
        let by_period = SearchConfig::new(MatrixOrder::ByPeriod, ValueOrder::OneFirst);
        assert_eq!(
            select_branch(&m, &by_course),
            Branch::On {
                var: m.x[0][1],
                value: 1
            }
        );
        assert_eq!(
            select_branch(&m, &by_period),
            Branch::On {
                var: m.x[1][0],
                value: 1
            }
        );
    }

    #[test]
    fn parse_config_names() {
        assert_eq!(
            "by-course".parse::<MatrixOrder>().unwrap(),
            MatrixOrder::ByCourse
        );
        assert_eq!(
            "zero-first".parse::<ValueOrder>().unwrap(),
            ValueOrder::ZeroFirst
        );
        assert_eq!(
            "continue".parse::<BoundMode>().unwrap(),
            BoundMode::ContinueInTree
        );
        assert!("sideways".parse::<MatrixOrder>().is_err());
    }
}
