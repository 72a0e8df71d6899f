//! Suite dispatch: map a named suite to its checks and assemble the report.

pub mod checks;

use std::time::Instant;

use crate::config::{Suite, SuiteConfig};
use crate::report::{CheckResult, RunReport};

type Check = fn(&SuiteConfig) -> CheckResult;

fn checks_for(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Cpm => vec![
            checks::graph_invariants,
            checks::constant_graph,
            checks::reeb_shift,
            checks::stabilization,
        ],
        Suite::Order => vec![
            checks::uniform_equivalence,
            checks::monotonicity,
            checks::separation,
        ],
        Suite::Hodograph => vec![checks::hodograph],
        Suite::Causality => vec![
            checks::sky_invariants,
            checks::sky_order,
            checks::curve_classification,
        ],
        Suite::Circle => vec![checks::circle],
        Suite::Escape => vec![checks::escape],
        Suite::All => {
            let mut all: Vec<Check> = Vec::new();
            for s in [
                Suite::Cpm,
                Suite::Order,
                Suite::Hodograph,
                Suite::Causality,
                Suite::Circle,
                Suite::Escape,
            ] {
                all.extend(checks_for(s));
            }
            all.push(determinism);
            all
        }
    }
}

/// Replaying a cheap sub-suite under the same configuration must produce a
/// byte-identical payload.
fn determinism(cfg: &SuiteConfig) -> CheckResult {
    const NAME: &str = "determinism";
    let mut sub = cfg.clone();
    sub.suite = Suite::Circle;
    let first = run_suite(&sub).to_json();
    let second = run_suite(&sub).to_json();
    if first == second {
        CheckResult::pass(
            NAME,
            format!(
                "two replays produced identical {}-byte payloads",
                first.len()
            ),
        )
    } else {
        CheckResult::fail(NAME, "replayed payloads differ")
    }
}

/// Run every check of the configured suite, sequentially and deterministically.
pub fn run_suite(cfg: &SuiteConfig) -> RunReport {
    let started = Instant::now();
    let results: Vec<CheckResult> = checks_for(cfg.suite).iter().map(|c| c(cfg)).collect();
    RunReport::new(cfg, results, started.elapsed())
}
