//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bacp::engine::{Domain, LinearConstraint, PropagationOutcome, Relation, Store, VarId};
use bacp::model::{MatrixOrder, Model, ModelError};
use bacp::oracle::{brute_force, gen_instance, GenParams, OracleResult};
use bacp::report::{anytime_is_well_formed, parse_anytime_csv};
use bacp::search::{decide, optimize, Decision, OptStatus, SearchConfig, SearchError, ValueOrder};
use bacp::{cli, fixtures, CurriculumInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn fixture(name: &str) -> CurriculumInstance {
    fixtures::load(name)
        .expect("known fixture")
        .expect("fixture parses")
}

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(format!("{name}.txt"))
}

fn c1_eight_period_optimum() -> Verdict {
    let inst = fixture("bacp8");
    let mut notes = Vec::new();
    let mut pass = true;
    for order in [MatrixOrder::ByPeriod, MatrixOrder::ByCourse] {
        let cfg =
            SearchConfig::new(order, ValueOrder::OneFirst).with_time_limit(Duration::from_secs(60));
        let t = Instant::now();
        let r = optimize(&inst, &cfg);
        let secs = t.elapsed().as_secs_f64();
        let ok = r.status == OptStatus::Optimal && r.objective() == Some(17) && secs <= 60.0;
        pass &= ok;
        notes.push(format!(
            "{order}/one-first {:?} {:?} in {secs:.2}s",
            r.status,
            r.objective()
        ));
    }
    verdict(pass, notes.join("; "))
}

fn c2_decision_consistency() -> Verdict {
    let budget = Duration::from_secs(600);
    let mut notes = Vec::new();
    let mut pass = true;
    for name in ["bacp8", "bacp10", "bacp12"] {
        let inst = fixture(name);
        let started = Instant::now();
        let mut settled = None;
        for cfg in SearchConfig::heuristic_matrix(SearchConfig::default())
            .into_iter()
            .rev()
        {
            let left = budget.saturating_sub(started.elapsed());
            if left.is_zero() {
                break;
            }
            let cfg = cfg.with_node_limit(2_000_000).with_time_limit(left);
            let r = optimize(&inst, &cfg);
            if r.status == OptStatus::Optimal {
                settled = Some((r.objective().expect("optimal has a value"), cfg));
                break;
            }
        }
        let Some((v, cfg)) = settled else {
            notes.push(format!("{name} did not complete (excluded)"));
            continue;
        };
        let at = decide(&inst, v, &cfg).map(|(d, _)| d);
        let below = match decide(&inst, v - 1, &cfg) {
            Ok((d, _)) => d == Decision::Unsat,
            Err(SearchError::BoundBelowBeta { .. }) => true,
        };
        let ok = matches!(at, Ok(Decision::Sat(_))) && below;
        pass &= ok;
        notes.push(format!(
            "{name} v={v} via {}/{}: Sat@v={} Unsat@v-1={below}",
            cfg.var_order,
            cfg.value_order,
            matches!(at, Ok(Decision::Sat(_)))
        ));
    }
    verdict(pass, notes.join("; "))
}

fn c3_heuristic_sensitivity() -> Verdict {
    let inst = fixture("bacp8");
    let limit = 1_000_000;
    let mut notes = Vec::new();
    let mut pass = true;
    for order in [MatrixOrder::ByCourse, MatrixOrder::ByPeriod] {
        let fast = optimize(
            &inst,
            &SearchConfig::new(order, ValueOrder::OneFirst).with_node_limit(limit),
        );
        let slow = optimize(
            &inst,
            &SearchConfig::new(order, ValueOrder::ZeroFirst).with_node_limit(limit),
        );
        let fast_ok = fast.status == OptStatus::Optimal && fast.objective() == Some(17);
        let slow_ok = slow.status == OptStatus::Incomplete
            || (fast_ok && slow.stats.nodes >= 10 * fast.stats.nodes);
        pass &= fast_ok && slow_ok;
        notes.push(format!(
            "{order}: one-first {:?} {} nodes, zero-first {:?} {} nodes",
            fast.status, fast.stats.nodes, slow.status, slow.stats.nodes
        ));
    }
    verdict(pass, notes.join("; "))
}

fn small_params(seed: u64) -> GenParams {
    GenParams {
        seed,
        courses: 3 + (seed % 7) as usize,
        periods: 2 + (seed % 2) as usize,
        credit_min: 1,
        credit_max: 1 + (seed % 5) as u32,
        density: [0.0, 0.15, 0.3, 0.5][(seed % 4) as usize],
        slack: [0.0, 0.25, 0.6, 1.0][((seed / 4) % 4) as usize],
    }
}

fn c4_oracle_equivalence() -> Verdict {
    let started = Instant::now();
    let mut mismatches = Vec::new();
    let (mut optimal, mut infeasible) = (0, 0);
    for seed in 1..=200 {
        let inst = gen_instance(&small_params(seed)).expect("valid parameters");
        let truth = brute_force(&inst).expect("small instance");
        let got = optimize(&inst, &SearchConfig::default());
        let agree = match &truth {
            OracleResult::Optimal { objective, .. } => {
                optimal += 1;
                got.status == OptStatus::Optimal && got.objective() == Some(*objective)
            }
            OracleResult::Infeasible => {
                infeasible += 1;
                got.status == OptStatus::Infeasible
            }
        };
        if !agree {
            mismatches.push(seed);
        }
    }
    let secs = started.elapsed().as_secs_f64();
    verdict(
        mismatches.is_empty() && secs <= 300.0,
        format!(
            "200 instances ({optimal} optimal, {infeasible} infeasible), mismatching seeds {mismatches:?}, {secs:.1}s"
        ),
    )
}

fn c5_model_checker_agreement() -> Verdict {
    let shapes = [
        (6, 3),
        (7, 3),
        (9, 3),
        (5, 4),
        (7, 4),
        (6, 5),
        (4, 6),
        (14, 2),
    ];
    let mut instances = 0;
    let mut assignments = 0u64;
    let mut accepted = 0u64;
    let mut disagreements = Vec::new();
    for k in 0..24u64 {
        let (m, n) = shapes[k as usize % shapes.len()];
        let inst = gen_instance(&GenParams {
            seed: 1000 + k,
            courses: m,
            periods: n,
            credit_min: 1,
            credit_max: 4,
            density: [0.1, 0.3][k as usize % 2],
            slack: [0.0, 0.3, 0.8][k as usize % 3],
        })
        .expect("valid parameters");
        instances += 1;
        let mut model = match Model::build(&inst) {
            Ok(model) => Some(model),
            Err(ModelError::RootConflict) => None,
            Err(e) => panic!("unexpected build error {e}"),
        };
        let gamma = inst.load_max;
        let mut plan = vec![1usize; m];
        loop {
            assignments += 1;
            let checker = inst.check_solution(&plan).expect("total plan").is_empty()
                && inst.objective(&plan).expect("in range") <= gamma;
            let network = match model.as_mut() {
                None => false,
                Some(model) => {
                    let mark = model.store.save();
                    let ok = model.impose(&plan) == PropagationOutcome::Fixpoint && {
                        let c_max = model.c_max;
                        let lb = model.store.domain(c_max).lb;
                        model.store.assign(c_max, lb) == Ok(PropagationOutcome::Fixpoint)
                            && model.store.all_fixed()
                    };
                    model.store.restore(mark).expect("live mark");
                    ok
                }
            };
            accepted += u64::from(network);
            if checker != network {
                disagreements.push((k, plan.clone()));
            }
            let mut i = 0;
            while i < m && plan[i] == n {
                plan[i] = 1;
                i += 1;
            }
            if i == m {
                break;
            }
            plan[i] += 1;
        }
    }
    verdict(
        disagreements.is_empty(),
        format!(
            "{instances} instances, {assignments} assignments, {accepted} accepted, {} disagreements",
            disagreements.len()
        ),
    )
}

fn checksum(store: &Store) -> u64 {
    store
        .domains()
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, d| {
            let h = (h ^ d.lb as u64).wrapping_mul(0x0100_0000_01b3);
            (h ^ d.ub as u64).wrapping_mul(0x0100_0000_01b3)
        })
}

fn random_store(rng: &mut ChaCha8Rng) -> (Store, Vec<VarId>) {
    let mut store = Store::new();
    let vars: Vec<VarId> = (0..rng.random_range(3..10))
        .map(|_| {
            let lb = rng.random_range(-3..=2);
            store
                .new_var(lb, lb + rng.random_range(0..=5))
                .expect("ordered bounds")
        })
        .collect();
    for _ in 0..rng.random_range(1..6) {
        let mut picked: Vec<VarId> = vars
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        if picked.is_empty() {
            picked.push(vars[0]);
        }
        let terms = picked
            .into_iter()
            .map(|v| {
                let w = rng.random_range(1..=4);
                (if rng.random_bool(0.3) { -w } else { w }, v)
            })
            .collect();
        let relation = [Relation::Le, Relation::Eq, Relation::Ge][rng.random_range(0..3)];
        store
            .post(LinearConstraint::new(
                terms,
                relation,
                rng.random_range(-4..=12),
            ))
            .expect("well-formed constraint");
    }
    (store, vars)
}

fn monotone(before: &[Domain], after: &[Domain]) -> bool {
    before
        .iter()
        .zip(after)
        .all(|(b, a)| a.lb >= b.lb && a.ub <= b.ub)
}

fn c6_engine_sequences() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let sequences = 1200;
    let (mut ops, mut fixpoints, mut restores) = (0u64, 0u64, 0u64);
    for seq in 0..sequences {
        let (mut store, vars) = random_store(&mut rng);
        store.propagate();
        let mut marks = Vec::new();
        let mut ok = true;
        for _ in 0..rng.random_range(4..20) {
            if !marks.is_empty() && rng.random_bool(0.3) {
                let (mark, sum) = marks.pop().expect("non-empty");
                store.restore(mark).expect("live mark");
                ok &= checksum(&store) == sum;
                restores += 1;
                continue;
            }
            marks.push((store.save(), checksum(&store)));
            let before = store.domains().to_vec();
            let v = vars[rng.random_range(0..vars.len())];
            let d = store.domain(v);
            let value = rng.random_range(d.lb..=d.ub);
            let outcome = if rng.random_bool(0.5) {
                store.assign(v, value)
            } else {
                store.restrict(v, value, d.ub)
            }
            .expect("value lies in the domain");
            ok &= monotone(&before, store.domains());
            ops += 1;
            if outcome == PropagationOutcome::Fixpoint {
                fixpoints += 1;
                let once = store.domains().to_vec();
                ok &= store.propagate() == PropagationOutcome::Fixpoint
                    && store.domains() == once.as_slice();
            }
        }
        while let Some((mark, sum)) = marks.pop() {
            store.restore(mark).expect("live mark");
            ok &= checksum(&store) == sum;
            restores += 1;
        }
        if !ok {
            failures.push(seq);
        }
    }
    verdict(
        failures.is_empty(),
        format!("{sequences} sequences, {ops} operations ({fixpoints} at fixpoint), {restores} restores, failing {failures:?}"),
    )
}

fn c7_anytime_logs() -> Verdict {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut notes = Vec::new();
    let mut pass = true;
    for name in ["bacp8", "bacp10", "bacp12"] {
        for cfg in SearchConfig::heuristic_matrix(SearchConfig::default()) {
            let log = dir
                .path()
                .join(format!("{name}-{}-{}.csv", cfg.var_order, cfg.value_order));
            let args = [
                "bacp".to_string(),
                "solve".into(),
                "--instance".into(),
                data_path(name).display().to_string(),
                "--var-order".into(),
                cfg.var_order.to_string(),
                "--value-order".into(),
                cfg.value_order.to_string(),
                "--node-limit".into(),
                "200000".into(),
                "--anytime-log".into(),
                log.display().to_string(),
            ];
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = cli::run(args, &mut out, &mut err);
            let entries = std::fs::read_to_string(&log)
                .ok()
                .and_then(|text| parse_anytime_csv(&text).ok());
            let ok = matches!(code, 0 | 2)
                && entries.as_ref().is_some_and(|e| {
                    anytime_is_well_formed(e)
                        && e.windows(2).all(|w| w[0].objective > w[1].objective)
                })
                && (code != 0 || entries.as_ref().is_some_and(|e| !e.is_empty()));
            pass &= ok;
            notes.push(format!(
                "{name} {}/{}: {} entries{}",
                cfg.var_order,
                cfg.value_order,
                entries.as_ref().map_or(0, Vec::len),
                if ok { "" } else { " BAD" }
            ));
        }
    }
    verdict(pass, notes.join("; "))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 eight-period optimum is 17 under both one-first orders",
            c1_eight_period_optimum,
        ),
        (
            "2 decision consistency at the optimum",
            c2_decision_consistency,
        ),
        (
            "3 heuristic sensitivity on the eight-period instance",
            c3_heuristic_sensitivity,
        ),
        (
            "4 oracle equivalence on 200 generated instances",
            c4_oracle_equivalence,
        ),
        (
            "5 model/checker agreement by enumeration",
            c5_model_checker_agreement,
        ),
        (
            "6 engine idempotence, monotonicity and restore exactness",
            c6_engine_sequences,
        ),
        ("7 anytime logs strictly decrease", c7_anytime_logs),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (title, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| title.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let v = check();
        println!(
            "criterion {title}: {} ({:.1}s) {}",
            if v.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
