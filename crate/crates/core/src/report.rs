//! Run records and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::Credits;
use crate::model::MatrixOrder;
use crate::search::{
    AnytimeEntry, BoundMode, Decision, OptResult, OptStatus, SearchConfig, SearchStats, ValueOrder,
};

/// Outcome of one run, covering both minimization and decision mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RunStatus {
    Optimal,
    Infeasible,
    Incomplete,
    Sat,
    Unsat,
    LimitReached,
}

impl RunStatus {
    /// 0 solved, 1 proven infeasible, 2 stopped by a limit.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Optimal | RunStatus::Sat => 0,
            RunStatus::Infeasible | RunStatus::Unsat => 1,
            RunStatus::Incomplete | RunStatus::LimitReached => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Optimal => "Optimal",
            RunStatus::Infeasible => "Infeasible",
            RunStatus::Incomplete => "Incomplete",
            RunStatus::Sat => "Sat",
            RunStatus::Unsat => "Unsat",
            RunStatus::LimitReached => "LimitReached",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [
            RunStatus::Optimal,
            RunStatus::Infeasible,
            RunStatus::Incomplete,
            RunStatus::Sat,
            RunStatus::Unsat,
            RunStatus::LimitReached,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl From<OptStatus> for RunStatus {
    fn from(s: OptStatus) -> Self {
        match s {
            OptStatus::Optimal => RunStatus::Optimal,
            OptStatus::Infeasible => RunStatus::Infeasible,
            OptStatus::Incomplete => RunStatus::Incomplete,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub var_order: MatrixOrder,
    pub value_order: ValueOrder,
    pub bound_mode: BoundMode,
    pub status: RunStatus,
    pub objective: Option<Credits>,
    pub nodes: u64,
    pub failures: u64,
    pub seconds: f64,
    pub anytime: Vec<AnytimeEntry>,
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("malformed field `{field}`: `{value}`")]
    Field { field: &'static str, value: String },
}

pub const RECORD_CSV_HEADER: [&str; 10] = [
    "instance",
    "var_order",
    "value_order",
    "bound_mode",
    "status",
    "objective",
    "nodes",
    "failures",
    "seconds",
    "anytime",
];

impl RunRecord {
    fn base(instance: &str, config: &SearchConfig, status: RunStatus, stats: &SearchStats) -> Self {
        RunRecord {
            instance: instance.to_string(),
            var_order: config.var_order,
            value_order: config.value_order,
            bound_mode: config.bound_mode,
            status,
            objective: None,
            nodes: stats.nodes,
            failures: stats.failures,
            seconds: stats.elapsed.as_secs_f64(),
            anytime: Vec::new(),
        }
    }

    pub fn from_opt(instance: &str, config: &SearchConfig, result: &OptResult) -> Self {
        RunRecord {
            objective: result.objective(),
            anytime: result.anytime.clone(),
            ..Self::base(instance, config, result.status.into(), &result.stats)
        }
    }

    pub fn from_decision(
        instance: &str,
        config: &SearchConfig,
        decision: &Decision,
        stats: &SearchStats,
    ) -> Self {
        let (status, objective) = match decision {
            Decision::Sat(sol) => (RunStatus::Sat, Some(sol.objective)),
            Decision::Unsat => (RunStatus::Unsat, None),
            Decision::LimitReached(_) => (RunStatus::LimitReached, None),
        };
        RunRecord {
            objective,
            ..Self::base(instance, config, status, stats)
        }
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    fn csv_fields(&self) -> [String; 10] {
        let anytime = self
            .anytime
            .iter()
            .map(|e| format!("{}:{}:{}", e.objective, e.seconds, e.nodes))
            .collect::<Vec<_>>()
            .join(";");
        [
            self.instance.clone(),
            self.var_order.to_string(),
            self.value_order.to_string(),
            self.bound_mode.to_string(),
            self.status.as_str().to_string(),
            self.objective.map(|o| o.to_string()).unwrap_or_default(),
            self.nodes.to_string(),
            self.failures.to_string(),
            self.seconds.to_string(),
            anytime,
        ]
    }

    fn from_csv_fields(rec: &csv::StringRecord) -> Result<Self, ReportError> {
        let get = |k: usize| rec.get(k).unwrap_or("");
        fn bad(field: &'static str, value: &str) -> ReportError {
            ReportError::Field {
                field,
                value: value.to_string(),
            }
        }
        fn num<T: std::str::FromStr>(field: &'static str, value: &str) -> Result<T, ReportError> {
            value.parse().map_err(|_| bad(field, value))
        }
        let mut anytime = Vec::new();
        for chunk in get(9).split(';').filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = chunk.split(':').collect();
            let [o, s, n] = parts.as_slice() else {
                return Err(bad("anytime", chunk));
            };
            anytime.push(AnytimeEntry {
                objective: num("anytime", o)?,
                seconds: num("anytime", s)?,
                nodes: num("anytime", n)?,
            });
        }
        Ok(RunRecord {
            instance: get(0).to_string(),
            var_order: get(1).parse().map_err(|_| bad("var_order", get(1)))?,
            value_order: get(2).parse().map_err(|_| bad("value_order", get(2)))?,
            bound_mode: get(3).parse().map_err(|_| bad("bound_mode", get(3)))?,
            status: RunStatus::parse(get(4)).ok_or_else(|| bad("status", get(4)))?,
            objective: match get(5) {
                "" => None,
                v => Some(num("objective", v)?),
            },
            nodes: num("nodes", get(6))?,
            failures: num("failures", get(7))?,
            seconds: num("seconds", get(8))?,
            anytime,
        })
    }
}

/// Records as CSV with a header row; anytime entries are packed into one
/// `objective:seconds:nodes;...` column.
pub fn records_to_csv(records: &[RunRecord]) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RECORD_CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_fields())?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn records_from_csv(text: &str) -> Result<Vec<RunRecord>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| RunRecord::from_csv_fields(&rec?))
        .collect()
}

pub const ANYTIME_CSV_HEADER: &str = "objective,seconds,nodes";

/// The anytime log, seconds to two decimals.
pub fn anytime_csv(entries: &[AnytimeEntry]) -> String {
    let mut out = String::from(ANYTIME_CSV_HEADER);
    out.push('\n');
    for e in entries {
        let _ = writeln!(out, "{},{:.2},{}", e.objective, e.seconds, e.nodes);
    }
    out
}

pub fn parse_anytime_csv(text: &str) -> Result<Vec<AnytimeEntry>, ReportError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != ANYTIME_CSV_HEADER {
        return Err(ReportError::Field {
            field: "header",
            value: header,
        });
    }
    let mut out = Vec::new();
    for rec in r.deserialize::<(Credits, f64, u64)>() {
        let (objective, seconds, nodes) = rec?;
        out.push(AnytimeEntry {
            objective,
            seconds,
            nodes,
        });
    }
    Ok(out)
}

/// Checks the anytime log shape: objectives strictly fall, seconds and
/// nodes never fall.
pub fn anytime_is_well_formed(entries: &[AnytimeEntry]) -> bool {
    entries.windows(2).all(|w| {
        w[0].objective > w[1].objective && w[0].seconds <= w[1].seconds && w[0].nodes <= w[1].nodes
    })
}

/// Human-readable summary of one run.
pub fn table(record: &RunRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance     {}", record.instance);
    let _ = writeln!(
        out,
        "config       {} / {} / {}",
        record.var_order, record.value_order, record.bound_mode
    );
    let _ = writeln!(out, "status       {}", record.status.as_str());
    match record.objective {
        Some(o) => {
            let _ = writeln!(out, "objective    {o}");
        }
        None => {
            let _ = writeln!(out, "objective    -");
        }
    }
    let _ = writeln!(out, "nodes        {}", record.nodes);
    let _ = writeln!(out, "failures     {}", record.failures);
    let _ = writeln!(out, "seconds      {:.2}", record.seconds);
    if record.status == RunStatus::LimitReached || record.status == RunStatus::Incomplete {
        let _ = writeln!(
            out,
            "note         search limit reached before the search completed"
        );
    }
    if !record.anytime.is_empty() {
        let _ = writeln!(out, "\n  C [credits]   time [s]      nodes");
        for e in &record.anytime {
            let _ = writeln!(
                out,
                "  {:>11}   {:>8.2}   {:>8}",
                e.objective, e.seconds, e.nodes
            );
        }
    }
    out
}

/// Four-configuration comparison: time to the first (worst) solution and
/// to the proven optimum, `∞` where the run did not get there.
pub fn matrix_table(records: &[RunRecord]) -> String {
    let cell = |r: Option<&RunRecord>, optimum: bool| -> String {
        let Some(r) = r else {
            return "-".into();
        };
        if optimum {
            if r.status == RunStatus::Optimal {
                format!("{:.2}", r.anytime.last().map_or(r.seconds, |e| e.seconds))
            } else {
                "∞".into()
            }
        } else {
            r.anytime
                .first()
                .map_or("∞".into(), |e| format!("{:.2}", e.seconds))
        }
    };
    let find = |vo: MatrixOrder, val: ValueOrder| {
        records
            .iter()
            .find(|r| r.var_order == vo && r.value_order == val)
    };
    let cols = [
        (MatrixOrder::ByCourse, ValueOrder::ZeroFirst),
        (MatrixOrder::ByCourse, ValueOrder::OneFirst),
        (MatrixOrder::ByPeriod, ValueOrder::ZeroFirst),
        (MatrixOrder::ByPeriod, ValueOrder::OneFirst),
    ];
    let mut out = String::new();
    let instance = records.first().map_or("", |r| r.instance.as_str());
    let _ = writeln!(out, "{instance}");
    let _ = writeln!(
        out,
        "{:<22}| {:^25} | {:^25}",
        "", "grouped by course", "grouped by period"
    );
    let _ = writeln!(
        out,
        "{:<22}| {:>11} {:>13} | {:>11} {:>13}",
        "", "zero-first", "one-first", "zero-first", "one-first"
    );
    for (label, optimum) in [("first solution [s]", false), ("optimum [s]", true)] {
        let cells: Vec<String> = cols
            .iter()
            .map(|&(a, b)| cell(find(a, b), optimum))
            .collect();
        let _ = writeln!(
            out,
            "{:<22}| {:>11} {:>13} | {:>11} {:>13}",
            label, cells[0], cells[1], cells[2], cells[3]
        );
    }
    let objs: Vec<String> = cols
        .iter()
        .map(|&(a, b)| {
            find(a, b)
                .and_then(|r| r.objective)
                .map_or("-".into(), |o| o.to_string())
        })
        .collect();
    let _ = writeln!(
        out,
        "{:<22}| {:>11} {:>13} | {:>11} {:>13}",
        "best C [credits]", objs[0], objs[1], objs[2], objs[3]
    );
    out
}
