//! Curriculum data: courses, periods, load and course-count bounds, prerequisites.
//!
//! Also holds the plain-text instance and solution formats and the solution
//! checker. The checker evaluates the integer-programming formulation
//! directly and is the ground truth the solver is tested against.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use thiserror::Error;

/// Credits carried by a course or accumulated by a period.
pub type Credits = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Course {
    pub id: String,
    pub credits: Credits,
}

/// A prerequisite pair over course indices: `course` must be placed in a
/// strictly later period than `requires`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prerequisite {
    pub course: usize,
    pub requires: usize,
}

/// One Balanced Academic Curriculum Problem instance.
///
/// Course indices are 0-based positions in `courses` (the curriculum order);
/// periods are 1-based everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurriculumInstance {
    pub courses: Vec<Course>,
    pub periods: usize,
    pub load_min: Credits,
    pub load_max: Credits,
    pub courses_min: usize,
    pub courses_max: usize,
    /// Sorted and free of duplicates.
    pub prerequisites: Vec<Prerequisite>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("course `{0}` declared twice")]
    DuplicateCourse(String),
    #[error("unknown course `{0}`")]
    UnknownCourse(String),
    #[error("cyclic prerequisites: {}", .0.join(" -> "))]
    CyclicPrerequisites(Vec<String>),
    #[error("missing directive `{0}`")]
    MissingDirective(&'static str),
    #[error("course `{0}` must carry at least one credit")]
    NonPositiveCredits(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("course {course} is mapped to period {period}, outside 1..={periods}")]
    OutOfRangePeriod {
        course: usize,
        period: usize,
        periods: usize,
    },
    #[error("assignment covers {got} courses, instance has {expected}")]
    WrongLength { expected: usize, got: usize },
}

const DIRECTIVES: [&str; 5] = [
    "periods",
    "load_min",
    "load_max",
    "courses_min",
    "courses_max",
];

impl CurriculumInstance {
    pub fn num_courses(&self) -> usize {
        self.courses.len()
    }

    pub fn total_credits(&self) -> u64 {
        self.courses.iter().map(|c| u64::from(c.credits)).sum()
    }

    pub fn course_index(&self, id: &str) -> Option<usize> {
        self.courses.iter().position(|c| c.id == id)
    }

    /// Parses the line-oriented instance format.
    ///
    /// The five bound directives must each appear once, before any `course`
    /// line. `prereq b a` may only name courses declared above it.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut bounds: [Option<u64>; 5] = [None; 5];
        let mut courses: Vec<Course> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut prereqs: BTreeSet<Prerequisite> = BTreeSet::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, args)) = tokens.split_first() else {
                continue;
            };
            let syntax = |message: String| ParseError::Syntax { line, message };
            let expect_args = |want: usize| {
                if args.len() == want {
                    Ok(())
                } else {
                    Err(syntax(format!(
                        "`{keyword}` takes {want} argument(s), found {}",
                        args.len()
                    )))
                }
            };

            if let Some(slot) = DIRECTIVES.iter().position(|d| *d == keyword) {
                expect_args(1)?;
                if !courses.is_empty() {
                    return Err(syntax(format!("`{keyword}` must precede all course lines")));
                }
                if bounds[slot].is_some() {
                    return Err(syntax(format!("`{keyword}` given more than once")));
                }
                let value = args[0]
                    .parse::<u64>()
                    .map_err(|_| syntax(format!("`{}` is not a non-negative integer", args[0])))?;
                bounds[slot] = Some(value);
                continue;
            }

            match keyword {
                "course" => {
                    expect_args(2)?;
                    if let Some(missing) = DIRECTIVES.iter().zip(&bounds).find(|(_, b)| b.is_none())
                    {
                        return Err(ParseError::MissingDirective(missing.0));
                    }
                    let id = args[0];
                    if !is_valid_id(id) {
                        return Err(syntax(format!("invalid course id `{id}`")));
                    }
                    let credits = args[1]
                        .parse::<i64>()
                        .map_err(|_| syntax(format!("`{}` is not an integer", args[1])))?;
                    if credits < 1 {
                        return Err(ParseError::NonPositiveCredits(id.to_string()));
                    }
                    let credits = Credits::try_from(credits)
                        .map_err(|_| syntax(format!("credit value {credits} too large")))?;
                    if index.contains_key(id) {
                        return Err(ParseError::DuplicateCourse(id.to_string()));
                    }
                    index.insert(id.to_string(), courses.len());
                    courses.push(Course {
                        id: id.to_string(),
                        credits,
                    });
                }
                "prereq" => {
                    expect_args(2)?;
                    let lookup = |id: &str| {
                        index
                            .get(id)
                            .copied()
                            .ok_or_else(|| ParseError::UnknownCourse(id.to_string()))
                    };
                    let course = lookup(args[0])?;
                    let requires = lookup(args[1])?;
                    if course == requires {
                        return Err(ParseError::CyclicPrerequisites(vec![
                            args[0].to_string(),
                            args[0].to_string(),
                        ]));
                    }
                    prereqs.insert(Prerequisite { course, requires });
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }

        let mut values = [0u64; 5];
        for (slot, name) in DIRECTIVES.iter().enumerate() {
            values[slot] = bounds[slot].ok_or(ParseError::MissingDirective(name))?;
        }
        let too_big = |name: &str| ParseError::Syntax {
            line: 0,
            message: format!("`{name}` out of range"),
        };
        let periods = usize::try_from(values[0]).map_err(|_| too_big("periods"))?;
        if periods == 0 {
            return Err(ParseError::Syntax {
                line: 0,
                message: "`periods` must be positive".into(),
            });
        }
        let load_min = Credits::try_from(values[1]).map_err(|_| too_big("load_min"))?;
        let load_max = Credits::try_from(values[2]).map_err(|_| too_big("load_max"))?;
        let courses_min = usize::try_from(values[3]).map_err(|_| too_big("courses_min"))?;
        let courses_max = usize::try_from(values[4]).map_err(|_| too_big("courses_max"))?;
        if load_min > load_max {
            return Err(ParseError::Syntax {
                line: 0,
                message: format!("load_min {load_min} exceeds load_max {load_max}"),
            });
        }
        if courses_min > courses_max {
            return Err(ParseError::Syntax {
                line: 0,
                message: format!("courses_min {courses_min} exceeds courses_max {courses_max}"),
            });
        }

        let inst = CurriculumInstance {
            courses,
            periods,
            load_min,
            load_max,
            courses_min,
            courses_max,
            prerequisites: prereqs.into_iter().collect(),
        };
        if let Some(cycle) = inst.find_cycle() {
            return Err(ParseError::CyclicPrerequisites(
                cycle
                    .into_iter()
                    .map(|i| inst.courses[i].id.clone())
                    .collect(),
            ));
        }
        Ok(inst)
    }

    /// Canonical text form: directives in fixed order, courses in curriculum
    /// order, prerequisites sorted by index.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "periods {}", self.periods);
        let _ = writeln!(out, "load_min {}", self.load_min);
        let _ = writeln!(out, "load_max {}", self.load_max);
        let _ = writeln!(out, "courses_min {}", self.courses_min);
        let _ = writeln!(out, "courses_max {}", self.courses_max);
        for c in &self.courses {
            let _ = writeln!(out, "course {} {}", c.id, c.credits);
        }
        for p in &self.prerequisites {
            let _ = writeln!(
                out,
                "prereq {} {}",
                self.courses[p.course].id, self.courses[p.requires].id
            );
        }
        out
    }

    /// Returns one cycle of the prerequisite graph as a closed walk of
    /// course indices, or `None` when the relation is acyclic.
    fn find_cycle(&self) -> Option<Vec<usize>> {
        let m = self.courses.len();
        let mut succ = vec![Vec::new(); m];
        for p in &self.prerequisites {
            succ[p.requires].push(p.course);
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; m];
        let mut parent = vec![usize::MAX; m];
        for root in 0..m {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&child) = succ[node].get(*next) {
                    *next += 1;
                    match state[child] {
                        0 => {
                            state[child] = 1;
                            parent[child] = node;
                            stack.push((child, 0));
                        }
                        1 => {
                            let mut cycle = vec![child];
                            let mut cur = node;
                            while cur != child {
                                cycle.push(cur);
                                cur = parent[cur];
                            }
                            cycle.push(child);
                            cycle.reverse();
                            return Some(cycle);
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// Necessary-condition screening by linear counting only.
    ///
    /// Checks `δ·n ≤ m ≤ ε·n`, `β·n ≤ Σ credits ≤ γ·n` and `max credits ≤ γ`.
    /// An empty result does not imply the instance is feasible.
    pub fn validate(&self) -> Vec<String> {
        let m = self.courses.len() as u64;
        let n = self.periods as u64;
        let total = self.total_credits();
        let mut defects = Vec::new();
        if (self.courses_min as u64) * n > m {
            defects.push(format!(
                "m < δ·n: {m} courses cannot give {} periods at least {} each",
                n, self.courses_min
            ));
        }
        if m > (self.courses_max as u64) * n {
            defects.push(format!(
                "m > ε·n: {m} courses exceed {} periods of at most {} each",
                n, self.courses_max
            ));
        }
        if u64::from(self.load_min) * n > total {
            defects.push(format!(
                "Σ credits < β·n: {total} credits cannot reach {} per period over {n} periods",
                self.load_min
            ));
        }
        if total > u64::from(self.load_max) * n {
            defects.push(format!(
                "Σ credits > γ·n: {total} credits exceed {} per period over {n} periods",
                self.load_max
            ));
        }
        if let Some(c) = self.courses.iter().max_by_key(|c| c.credits) {
            if c.credits > self.load_max {
                defects.push(format!(
                    "max credit exceeds γ: course `{}` has {} credits, γ = {}",
                    c.id, c.credits, self.load_max
                ));
            }
        }
        defects
    }

    /// Credits per period (index 0 holds period 1).
    pub fn compute_loads(&self, period_of: &[usize]) -> Result<Vec<Credits>, InstanceError> {
        self.check_length(period_of)?;
        let mut loads = vec![0; self.periods];
        for (course, &period) in period_of.iter().enumerate() {
            if period == 0 || period > self.periods {
                return Err(InstanceError::OutOfRangePeriod {
                    course,
                    period,
                    periods: self.periods,
                });
            }
            loads[period - 1] += self.courses[course].credits;
        }
        Ok(loads)
    }

    /// The maximum period load of a total assignment.
    pub fn objective(&self, period_of: &[usize]) -> Result<Credits, InstanceError> {
        Ok(self
            .compute_loads(period_of)?
            .into_iter()
            .max()
            .unwrap_or(0))
    }

    /// Every violated constraint occurrence of the integer model.
    ///
    /// A course whose period lies outside `1..=n` counts as unassigned; such
    /// courses contribute to no period and are skipped by prerequisite
    /// checks.
    pub fn check_solution(&self, period_of: &[usize]) -> Result<Vec<Violation>, InstanceError> {
        self.check_length(period_of)?;
        let n = self.periods;
        let in_range = |p: usize| (1..=n).contains(&p);
        let mut out = Vec::new();
        let mut loads = vec![0 as Credits; n];
        let mut counts = vec![0usize; n];

        for (i, &p) in period_of.iter().enumerate() {
            if in_range(p) {
                loads[p - 1] += self.courses[i].credits;
                counts[p - 1] += 1;
            } else {
                out.push(Violation {
                    kind: ViolationKind::Unassigned(i),
                    detail: format!("course `{}` has no period in 1..={n}", self.courses[i].id),
                });
            }
        }
        for p in &self.prerequisites {
            let (pb, pa) = (period_of[p.course], period_of[p.requires]);
            if in_range(pb) && in_range(pa) && pa >= pb {
                out.push(Violation {
                    kind: ViolationKind::PrerequisiteViolation {
                        course: p.course,
                        requires: p.requires,
                    },
                    detail: format!(
                        "course `{}` in period {pb} requires `{}`, placed in period {pa}",
                        self.courses[p.course].id, self.courses[p.requires].id
                    ),
                });
            }
        }
        for j in 0..n {
            let period = j + 1;
            if loads[j] < self.load_min {
                out.push(Violation {
                    kind: ViolationKind::LoadBelowMin(period),
                    detail: format!("period {period} load {} < {}", loads[j], self.load_min),
                });
            }
            if loads[j] > self.load_max {
                out.push(Violation {
                    kind: ViolationKind::LoadAboveMax(period),
                    detail: format!("period {period} load {} > {}", loads[j], self.load_max),
                });
            }
            if counts[j] < self.courses_min {
                out.push(Violation {
                    kind: ViolationKind::CoursesBelowMin(period),
                    detail: format!(
                        "period {period} holds {} courses < {}",
                        counts[j], self.courses_min
                    ),
                });
            }
            if counts[j] > self.courses_max {
                out.push(Violation {
                    kind: ViolationKind::CoursesAboveMax(period),
                    detail: format!(
                        "period {period} holds {} courses > {}",
                        counts[j], self.courses_max
                    ),
                });
            }
        }
        Ok(out)
    }

    fn check_length(&self, period_of: &[usize]) -> Result<(), InstanceError> {
        if period_of.len() != self.courses.len() {
            return Err(InstanceError::WrongLength {
                expected: self.courses.len(),
                got: period_of.len(),
            });
        }
        Ok(())
    }

    /// Parses the solution format (`<course_id> <period>` per line).
    pub fn parse_solution(&self, text: &str) -> Result<Vec<usize>, SolutionParseError> {
        let mut period_of: Vec<Option<usize>> = vec![None; self.courses.len()];
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens.as_slice() {
                [] => continue,
                [id, period] => {
                    let course = self
                        .course_index(id)
                        .ok_or_else(|| SolutionParseError::UnknownCourse(id.to_string()))?;
                    let period =
                        period
                            .parse::<usize>()
                            .map_err(|_| SolutionParseError::Syntax {
                                line,
                                message: format!("`{period}` is not a period number"),
                            })?;
                    if period_of[course].replace(period).is_some() {
                        return Err(SolutionParseError::DuplicateCourse(id.to_string()));
                    }
                }
                _ => {
                    return Err(SolutionParseError::Syntax {
                        line,
                        message: "expected `<course_id> <period>`".into(),
                    })
                }
            }
        }
        period_of
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                p.ok_or_else(|| SolutionParseError::MissingCourse(self.courses[i].id.clone()))
            })
            .collect()
    }

    /// Solution file text, one course per line in curriculum order.
    pub fn serialize_solution(&self, period_of: &[usize]) -> String {
        let mut out = String::new();
        for (c, p) in self.courses.iter().zip(period_of) {
            let _ = writeln!(out, "{} {}", c.id, p);
        }
        out
    }
}

fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolutionParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown course `{0}`")]
    UnknownCourse(String),
    #[error("course `{0}` listed twice")]
    DuplicateCourse(String),
    #[error("course `{0}` missing from solution")]
    MissingCourse(String),
}

/// A checked, total course-to-period map with its derived loads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// 1-based period of each course, in curriculum order.
    pub period_of: Vec<usize>,
    pub loads: Vec<Credits>,
    pub objective: Credits,
}

impl Solution {
    pub fn new(inst: &CurriculumInstance, period_of: Vec<usize>) -> Result<Self, InstanceError> {
        let loads = inst.compute_loads(&period_of)?;
        let objective = loads.iter().copied().max().unwrap_or(0);
        Ok(Solution {
            period_of,
            loads,
            objective,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Unassigned(usize),
    PrerequisiteViolation { course: usize, requires: usize },
    LoadBelowMin(usize),
    LoadAboveMax(usize),
    CoursesBelowMin(usize),
    CoursesAboveMax(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            ViolationKind::Unassigned(_) => "Unassigned",
            ViolationKind::PrerequisiteViolation { .. } => "PrerequisiteViolation",
            ViolationKind::LoadBelowMin(_) => "LoadBelowMin",
            ViolationKind::LoadAboveMax(_) => "LoadAboveMax",
            ViolationKind::CoursesBelowMin(_) => "CoursesBelowMin",
            ViolationKind::CoursesAboveMax(_) => "CoursesAboveMax",
        };
        write!(f, "{tag}: {}", self.detail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn t1() -> CurriculumInstance {
        CurriculumInstance::parse(fixtures::T1).unwrap()
    }

    fn kinds(v: &[Violation]) -> Vec<ViolationKind> {
        v.iter().map(|v| v.kind).collect()
    }

    #[test]
    fn parses_t1() {
        let inst = t1();
        assert_eq!(inst.num_courses(), 2);
        assert_eq!(inst.periods, 2);
        assert_eq!((inst.load_min, inst.load_max), (2, 5));
        assert_eq!((inst.courses_min, inst.courses_max), (1, 1));
        assert_eq!(inst.courses[0].id, "a");
        assert_eq!(
            inst.prerequisites,
            vec![Prerequisite {
                course: 1,
                requires: 0
            }]
        );
    }

    #[test]
    fn unknown_prerequisite_course() {
        let text = format!("{}prereq b z\n", fixtures::T1);
        assert_eq!(
            CurriculumInstance::parse(&text),
            Err(ParseError::UnknownCourse("z".into()))
        );
    }

    #[test]
    fn two_cycle_is_rejected() {
        let text = "periods 2\nload_min 0\nload_max 9\ncourses_min 0\ncourses_max 2\n\
                    course a 1\ncourse b 1\nprereq a b\nprereq b a\n";
        assert!(matches!(
            CurriculumInstance::parse(text),
            Err(ParseError::CyclicPrerequisites(_))
        ));
    }

    #[test]
    fn self_prerequisite_is_a_cycle() {
        let text = "periods 2\nload_min 0\nload_max 9\ncourses_min 0\ncourses_max 2\n\
                    course a 1\nprereq a a\n";
        assert!(matches!(
            CurriculumInstance::parse(text),
            Err(ParseError::CyclicPrerequisites(_))
        ));
    }

    #[test]
    fn longer_cycle_names_its_members() {
        let text = "periods 3\nload_min 0\nload_max 9\ncourses_min 0\ncourses_max 3\n\
                    course a 1\ncourse b 1\ncourse c 1\nprereq b a\nprereq c b\nprereq a c\n";
        match CurriculumInstance::parse(text) {
            Err(ParseError::CyclicPrerequisites(ids)) => {
                assert_eq!(ids.first(), ids.last());
                assert_eq!(ids.len(), 4);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        let head = "periods 2\nload_min 0\nload_max 9\ncourses_min 0\ncourses_max 2\n";
        assert_eq!(
            CurriculumInstance::parse(&format!("{head}course a 1\ncourse a 2\n")),
            Err(ParseError::DuplicateCourse("a".into()))
        );
        assert_eq!(
            CurriculumInstance::parse(&format!("{head}course a 0\n")),
            Err(ParseError::NonPositiveCredits("a".into()))
        );
        assert_eq!(
            CurriculumInstance::parse("periods 2\nload_min 0\ncourse a 1\n"),
            Err(ParseError::MissingDirective("load_max"))
        );
        assert_eq!(
            CurriculumInstance::parse("periods 2\n"),
            Err(ParseError::MissingDirective("load_min"))
        );
        assert!(matches!(
            CurriculumInstance::parse(&format!("{head}course a 1\nperiods 3\n")),
            Err(ParseError::Syntax { line: 7, .. })
        ));
        assert!(matches!(
            CurriculumInstance::parse(&format!("{head}course a-b 1\n")),
            Err(ParseError::Syntax { line: 6, .. })
        ));
        assert!(matches!(
            CurriculumInstance::parse(&format!("{head}frobnicate\n")),
            Err(ParseError::Syntax { line: 6, .. })
        ));
        assert!(matches!(
            CurriculumInstance::parse(&format!("{head}course a\n")),
            Err(ParseError::Syntax { line: 6, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\nperiods 2 # two terms\nload_min 2\nload_max 5\n\
                    courses_min 1\ncourses_max 1\n   \ncourse a 3\ncourse b 2 # late\nprereq b a\n";
        assert_eq!(CurriculumInstance::parse(text).unwrap(), t1());
    }

    #[test]
    fn validate_t1_passes() {
        assert!(t1().validate().is_empty());
    }

    #[test]
    fn validate_reports_too_many_courses() {
        let text = "periods 2\nload_min 0\nload_max 9\ncourses_min 0\ncourses_max 1\n\
                    course a 1\ncourse b 1\ncourse c 1\n";
        let defects = CurriculumInstance::parse(text).unwrap().validate();
        assert_eq!(defects.len(), 1);
        assert!(defects[0].starts_with("m > ε·n"), "{defects:?}");
    }

    #[test]
    fn validate_reports_oversized_course() {
        let text = "periods 2\nload_min 0\nload_max 4\ncourses_min 0\ncourses_max 2\n\
                    course a 5\ncourse b 5\n";
        let defects = CurriculumInstance::parse(text).unwrap().validate();
        assert!(
            defects
                .iter()
                .any(|d| d.starts_with("max credit exceeds γ")),
            "{defects:?}"
        );
    }

    #[test]
    fn validate_reports_credit_and_count_minima() {
        let text = "periods 3\nload_min 5\nload_max 9\ncourses_min 2\ncourses_max 4\n\
                    course a 1\ncourse b 1\n";
        let defects = CurriculumInstance::parse(text).unwrap().validate();
        assert!(defects.iter().any(|d| d.starts_with("m < δ·n")));
        assert!(defects.iter().any(|d| d.starts_with("Σ credits < β·n")));
    }

    #[test]
    fn loads_of_t1() {
        let inst = t1();
        assert_eq!(inst.compute_loads(&[1, 2]).unwrap(), vec![3, 2]);
        assert_eq!(inst.compute_loads(&[1, 1]).unwrap(), vec![5, 0]);
        assert_eq!(
            inst.compute_loads(&[1, 3]),
            Err(InstanceError::OutOfRangePeriod {
                course: 1,
                period: 3,
                periods: 2
            })
        );
        assert!(inst.compute_loads(&[1]).is_err());
    }

    #[test]
    fn loads_of_t2_pairing() {
        let inst = CurriculumInstance::parse(fixtures::T2).unwrap();
        // {1,6} -> 1, {2,5} -> 2, {3,4} -> 3
        let plan = [1, 2, 3, 3, 2, 1];
        assert_eq!(inst.compute_loads(&plan).unwrap(), vec![7, 7, 7]);
        assert_eq!(inst.objective(&plan).unwrap(), 7);
    }

    #[test]
    fn check_t1() {
        let inst = t1();
        assert!(inst.check_solution(&[1, 2]).unwrap().is_empty());
        assert_eq!(inst.objective(&[1, 2]).unwrap(), 3);

        let inverted = inst.check_solution(&[2, 1]).unwrap();
        assert!(
            kinds(&inverted).contains(&ViolationKind::PrerequisiteViolation {
                course: 1,
                requires: 0
            })
        );

        let crowded = kinds(&inst.check_solution(&[1, 1]).unwrap());
        for k in [
            ViolationKind::CoursesAboveMax(1),
            ViolationKind::CoursesBelowMin(2),
            ViolationKind::LoadBelowMin(2),
        ] {
            assert!(crowded.contains(&k), "missing {k:?} in {crowded:?}");
        }
    }

    #[test]
    fn check_reports_unassigned_and_overload() {
        let text = "periods 2\nload_min 0\nload_max 4\ncourses_min 0\ncourses_max 2\n\
                    course a 3\ncourse b 2\n";
        let inst = CurriculumInstance::parse(text).unwrap();
        let v = kinds(&inst.check_solution(&[0, 1]).unwrap());
        assert_eq!(v, vec![ViolationKind::Unassigned(0)]);
        let v = kinds(&inst.check_solution(&[1, 1]).unwrap());
        assert_eq!(v, vec![ViolationKind::LoadAboveMax(1)]);
    }

    #[test]
    fn solution_file_round_trip() {
        let inst = t1();
        let text = inst.serialize_solution(&[1, 2]);
        assert_eq!(text, "a 1\nb 2\n");
        assert_eq!(inst.parse_solution("b 2\n\na 1\n").unwrap(), vec![1, 2]);
        assert_eq!(
            inst.parse_solution("a 1\n"),
            Err(SolutionParseError::MissingCourse("b".into()))
        );
        assert_eq!(
            inst.parse_solution("a 1\nb 2\nq 1\n"),
            Err(SolutionParseError::UnknownCourse("q".into()))
        );
        assert_eq!(
            inst.parse_solution("a 1\na 2\nb 2\n"),
            Err(SolutionParseError::DuplicateCourse("a".into()))
        );
    }

    #[test]
    fn fixture_shapes() {
        for (text, m, n) in [
            (fixtures::BACP8, 46, 8),
            (fixtures::BACP10, 42, 10),
            (fixtures::BACP12, 66, 12),
        ] {
            let inst = CurriculumInstance::parse(text).unwrap();
            assert_eq!((inst.num_courses(), inst.periods), (m, n));
            assert!(inst.validate().is_empty());
        }
    }
}
