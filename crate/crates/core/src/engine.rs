//! A small finite-domain kernel over interval domains.
//!
//! Variables carry `[lb, ub]` bounds. Constraints are linear
//! (`Σ w·v  {≤,=,≥}  rhs`) and are filtered to bounds consistency. Changes
//! are recorded on a trail so that [`Store::restore`] can undo everything
//! done since the matching [`Store::save`].

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(usize);

impl VarId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstraintId(usize);

impl ConstraintId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    pub lb: i64,
    pub ub: i64,
}

impl Domain {
    pub fn is_fixed(self) -> bool {
        self.lb == self.ub
    }

    pub fn contains(self, v: i64) -> bool {
        self.lb <= v && v <= self.ub
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `Σ coefficient·var  relation  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub terms: Vec<(i64, VarId)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    pub fn new(terms: Vec<(i64, VarId)>, relation: Relation, rhs: i64) -> Self {
        LinearConstraint {
            terms,
            relation,
            rhs,
        }
    }

    /// Unit-coefficient sum over `vars`.
    pub fn sum(vars: impl IntoIterator<Item = VarId>, relation: Relation, rhs: i64) -> Self {
        Self::new(vars.into_iter().map(|v| (1, v)).collect(), relation, rhs)
    }

    /// Evaluates the constraint on fixed values.
    pub fn holds(&self, value: impl Fn(VarId) -> i64) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(w, v)| w * value(v)).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationOutcome {
    Fixpoint,
    /// Names the first constraint found violated, or `None` when a direct
    /// bound update emptied a domain.
    Conflict(Option<ConstraintId>),
}

impl PropagationOutcome {
    pub fn is_conflict(self) -> bool {
        matches!(self, PropagationOutcome::Conflict(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid bounds [{lb}, {ub}]")]
    InvalidBounds { lb: i64, ub: i64 },
    #[error("unknown variable {0:?}")]
    UnknownVariable(VarId),
    #[error("constraint mentions {0:?} twice")]
    RepeatedVariable(VarId),
    #[error("zero coefficient on {0:?}")]
    ZeroCoefficient(VarId),
    #[error("value {value} outside domain [{lb}, {ub}]")]
    ValueOutsideDomain { value: i64, lb: i64, ub: i64 },
    #[error("save mark is stale or was already restored")]
    InvalidMark,
}

/// Handle returned by [`Store::save`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mark {
    level: usize,
    serial: u64,
}

#[derive(Debug, Clone, Copy)]
struct TrailEntry {
    var: VarId,
    old: Domain,
}

/// Variables, constraints, and the propagation queue.
///
/// Single owner; clone it to fork independent copies.
#[derive(Debug, Clone, Default)]
pub struct Store {
    domains: Vec<Domain>,
    constraints: Vec<LinearConstraint>,
    watchers: Vec<Vec<ConstraintId>>,
    queue: VecDeque<ConstraintId>,
    queued: Vec<bool>,
    trail: Vec<TrailEntry>,
    marks: Vec<(u64, usize)>,
    next_serial: u64,
    /// Set on conflict: the cause and the mark depth at which it happened.
    failed: Option<(Option<ConstraintId>, usize)>,
}

impl Store {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_var(&mut self, lb: i64, ub: i64) -> Result<VarId, EngineError> {
        if lb > ub {
            return Err(EngineError::InvalidBounds { lb, ub });
        }
        self.domains.push(Domain { lb, ub });
        self.watchers.push(Vec::new());
        Ok(VarId(self.domains.len() - 1))
    }

    pub fn num_vars(&self) -> usize {
        self.domains.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn domain(&self, v: VarId) -> Domain {
        self.domains[v.0]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn is_fixed(&self, v: VarId) -> bool {
        self.domains[v.0].is_fixed()
    }

    pub fn all_fixed(&self) -> bool {
        self.domains.iter().all(|d| d.is_fixed())
    }

    pub fn constraint(&self, c: ConstraintId) -> &LinearConstraint {
        &self.constraints[c.0]
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    /// Registers a constraint. It is queued but not filtered until the next
    /// propagation.
    pub fn post(&mut self, c: LinearConstraint) -> Result<ConstraintId, EngineError> {
        let mut seen = std::collections::HashSet::with_capacity(c.terms.len());
        for &(w, v) in &c.terms {
            if v.0 >= self.domains.len() {
                return Err(EngineError::UnknownVariable(v));
            }
            if w == 0 {
                return Err(EngineError::ZeroCoefficient(v));
            }
            if !seen.insert(v) {
                return Err(EngineError::RepeatedVariable(v));
            }
        }
        let id = ConstraintId(self.constraints.len());
        for &(_, v) in &c.terms {
            self.watchers[v.0].push(id);
        }
        self.constraints.push(c);
        self.queued.push(false);
        self.enqueue(id);
        Ok(id)
    }

    /// Fixes `v` to `value`, then propagates.
    pub fn assign(&mut self, v: VarId, value: i64) -> Result<PropagationOutcome, EngineError> {
        self.check_var(v)?;
        if self.failed.is_some() {
            return Ok(self.propagate());
        }
        let d = self.domains[v.0];
        if !d.contains(value) {
            return Err(EngineError::ValueOutsideDomain {
                value,
                lb: d.lb,
                ub: d.ub,
            });
        }
        self.set_domain(
            v,
            Domain {
                lb: value,
                ub: value,
            },
        );
        Ok(self.propagate())
    }

    /// Intersects the domain of `v` with `[lb, ub]`, then propagates.
    pub fn restrict(
        &mut self,
        v: VarId,
        lb: i64,
        ub: i64,
    ) -> Result<PropagationOutcome, EngineError> {
        self.check_var(v)?;
        if self.failed.is_some() {
            return Ok(self.propagate());
        }
        let d = self.domains[v.0];
        let nd = Domain {
            lb: d.lb.max(lb),
            ub: d.ub.min(ub),
        };
        if nd.lb > nd.ub {
            return Ok(self.fail(None));
        }
        self.set_domain(v, nd);
        Ok(self.propagate())
    }

    /// Runs queued constraints to a fixpoint or the first conflict.
    ///
    /// A failed store keeps reporting its conflict until a restore undoes it.
    pub fn propagate(&mut self) -> PropagationOutcome {
        if let Some((cause, _)) = self.failed {
            self.clear_queue();
            return PropagationOutcome::Conflict(cause);
        }
        while let Some(c) = self.queue.pop_front() {
            self.queued[c.0] = false;
            if !self.filter(c) {
                return self.fail(Some(c));
            }
        }
        PropagationOutcome::Fixpoint
    }

    pub fn is_failed(&self) -> bool {
        self.failed.is_some()
    }

    fn fail(&mut self, cause: Option<ConstraintId>) -> PropagationOutcome {
        self.clear_queue();
        if self.failed.is_none() {
            self.failed = Some((cause, self.marks.len()));
        }
        PropagationOutcome::Conflict(cause)
    }

    pub fn save(&mut self) -> Mark {
        self.next_serial += 1;
        let serial = self.next_serial;
        self.marks.push((serial, self.trail.len()));
        Mark {
            level: self.marks.len() - 1,
            serial,
        }
    }

    /// Undoes every domain change made since `mark` was taken. Marks taken
    /// after `mark` are consumed too.
    pub fn restore(&mut self, mark: Mark) -> Result<(), EngineError> {
        match self.marks.get(mark.level) {
            Some(&(serial, _)) if serial == mark.serial => {}
            _ => return Err(EngineError::InvalidMark),
        }
        let (_, trail_len) = self.marks[mark.level];
        self.marks.truncate(mark.level);
        if matches!(self.failed, Some((_, depth)) if mark.level < depth) {
            self.failed = None;
        }
        while self.trail.len() > trail_len {
            let e = self.trail.pop().expect("trail shorter than mark");
            self.domains[e.var.0] = e.old;
        }
        self.clear_queue();
        Ok(())
    }

    /// Number of live save marks.
    pub fn depth(&self) -> usize {
        self.marks.len()
    }

    fn check_var(&self, v: VarId) -> Result<(), EngineError> {
        if v.0 < self.domains.len() {
            Ok(())
        } else {
            Err(EngineError::UnknownVariable(v))
        }
    }

    fn clear_queue(&mut self) {
        for c in self.queue.drain(..) {
            self.queued[c.0] = false;
        }
    }

    fn enqueue(&mut self, c: ConstraintId) {
        if !self.queued[c.0] {
            self.queued[c.0] = true;
            self.queue.push_back(c);
        }
    }

    fn set_domain(&mut self, v: VarId, nd: Domain) {
        let old = self.domains[v.0];
        if old == nd {
            return;
        }
        debug_assert!(nd.lb >= old.lb && nd.ub <= old.ub && nd.lb <= nd.ub);
        if !self.marks.is_empty() {
            self.trail.push(TrailEntry { var: v, old });
        }
        self.domains[v.0] = nd;
        for i in 0..self.watchers[v.0].len() {
            let c = self.watchers[v.0][i];
            self.enqueue(c);
        }
    }

    /// Bounds filtering of one constraint. Returns `false` on conflict.
    fn filter(&mut self, c: ConstraintId) -> bool {
        let relation = self.constraints[c.0].relation;
        let ok_le = !matches!(relation, Relation::Le | Relation::Eq) || self.filter_le(c, 1);
        ok_le && (!matches!(relation, Relation::Ge | Relation::Eq) || self.filter_le(c, -1))
    }

    /// Filters `Σ sign·w·v ≤ sign·rhs`.
    fn filter_le(&mut self, c: ConstraintId, sign: i64) -> bool {
        let rhs = sign * self.constraints[c.0].rhs;
        let mut min_sum = 0i64;
        for &(w, v) in &self.constraints[c.0].terms {
            let w = sign * w;
            let d = self.domains[v.0];
            min_sum += if w > 0 { w * d.lb } else { w * d.ub };
        }
        let slack = rhs - min_sum;
        if slack < 0 {
            return false;
        }
        for k in 0..self.constraints[c.0].terms.len() {
            let (w, v) = self.constraints[c.0].terms[k];
            let w = sign * w;
            let d = self.domains[v.0];
            // Each term may grow from its minimum by at most `slack`.
            if w > 0 {
                let ub = d.lb + slack / w;
                if ub < d.ub {
                    self.set_domain(v, Domain { lb: d.lb, ub });
                }
            } else {
                let lb = d.ub - slack / (-w);
                if lb > d.lb {
                    self.set_domain(v, Domain { lb, ub: d.ub });
                }
            }
        }
        true
    }
}
