//! Property sweep: runs every invariant check over a batch of graphs, either
//! all small connected multigraphs or a seeded random sample, and replays the
//! bundled example fixtures.

mod checks;
mod enumerate;
mod fixtures;

pub use checks::{CheckOutcome, Subject, CHECKS};
pub use enumerate::{canonical_form, enumerate_connected, random_connected, random_sample};
pub use fixtures::{load_fixtures, replay_fixture, Fixture};

use serde::Serialize;

use crate::multigraph::Multigraph;
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub mode: SweepMode,
    pub execution: Execution,
    /// Flip one entry of every edge matrix before checking; the sweep must
    /// then report a counterexample.
    pub inject_fault: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_vertices: 4,
            max_edges: 6,
            mode: SweepMode::Exhaustive,
            execution: Execution::default(),
            inject_fault: false,
        }
    }
}

impl SweepConfig {
    pub fn graphs(&self) -> Vec<Multigraph> {
        match self.mode {
            SweepMode::Exhaustive => enumerate_connected(self.max_vertices, self.max_edges),
            SweepMode::Random { samples, seed } => {
                random_sample(seed, samples, self.max_vertices, self.max_edges)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub detail: String,
    pub graph: Multigraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub graphs: usize,
    pub checks: Vec<CheckTally>,
    pub fixtures_passed: usize,
    pub fixtures_failed: usize,
    /// First failure in enumeration order, fixtures last.
    pub counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn tally(&self, name: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|t| t.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("graphs checked: {}\n", self.graphs);
        for t in &self.checks {
            out.push_str(&format!(
                "{:<18} pass {:>5}  fail {:>3}  skip {:>4}\n",
                t.name, t.passed, t.failed, t.skipped
            ));
        }
        out.push_str(&format!(
            "fixtures           pass {:>5}  fail {:>3}\n",
            self.fixtures_passed, self.fixtures_failed
        ));
        match &self.counterexample {
            None => out.push_str("all invariants hold\n"),
            Some(c) => out.push_str(&format!("counterexample ({}): {}\n", c.check, c.detail)),
        }
        out
    }
}

/// Outcomes of every check on one graph, in [`CHECKS`] order.
pub fn check_graph(graph: &Multigraph, inject_fault: bool) -> Vec<CheckOutcome> {
    let mut subject = match Subject::new(graph.clone()) {
        Ok(s) => s,
        Err(e) => return vec![CheckOutcome::Fail(e.to_string()); CHECKS.len()],
    };
    if inject_fault {
        subject.a.flip(0, 0);
    }
    CHECKS.iter().map(|(_, check)| check(&subject)).collect()
}

pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let graphs = config.graphs();
    let results = par::map(&graphs, config.execution, |g| {
        check_graph(g, config.inject_fault)
    });

    let mut checks: Vec<CheckTally> = CHECKS
        .iter()
        .map(|(name, _)| CheckTally {
            name,
            ..Default::default()
        })
        .collect();
    let mut counterexample = None;
    for (graph, outcomes) in graphs.iter().zip(&results) {
        for (k, outcome) in outcomes.iter().enumerate() {
            match outcome {
                CheckOutcome::Pass => checks[k].passed += 1,
                CheckOutcome::Skip => checks[k].skipped += 1,
                CheckOutcome::Fail(detail) => {
                    checks[k].failed += 1;
                    counterexample.get_or_insert_with(|| Counterexample {
                        check: CHECKS[k].0.to_string(),
                        detail: detail.clone(),
                        graph: graph.clone(),
                    });
                }
            }
        }
    }

    let fixtures = load_fixtures();
    let fixture_results = par::map(&fixtures, config.execution, replay_fixture);
    let mut fixtures_failed = 0;
    for (fx, result) in fixtures.iter().zip(fixture_results) {
        if let Err(detail) = result {
            fixtures_failed += 1;
            counterexample.get_or_insert_with(|| Counterexample {
                check: format!("fixture {}", fx.name),
                detail,
                graph: fx.graph().expect("fixture graphs are valid"),
            });
        }
    }

    SweepReport {
        graphs: graphs.len(),
        checks,
        fixtures_passed: fixtures.len() - fixtures_failed,
        fixtures_failed,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(inject_fault: bool, execution: Execution) -> SweepConfig {
        SweepConfig {
            max_vertices: 3,
            max_edges: 4,
            inject_fault,
            execution,
            ..Default::default()
        }
    }

    #[test]
    fn small_sweep_passes() {
        let r = run_sweep(&small(false, Execution::Parallel));
        assert!(r.passed(), "{:?}", r.counterexample);
        assert!(r.graphs > 20);
        let t = r.tally("snf_theorem").unwrap();
        assert_eq!(t.passed, r.graphs);
        assert!(r.fixtures_passed > 0 && r.fixtures_failed == 0);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        assert_eq!(
            run_sweep(&small(false, Execution::Sequential)),
            run_sweep(&small(false, Execution::Parallel))
        );
    }

    #[test]
    fn injected_fault_is_reported() {
        let r = run_sweep(&small(true, Execution::Parallel));
        let c = r.counterexample.as_ref().expect("fault must be detected");
        assert_eq!(c.graph, enumerate_connected(3, 4)[0]);
        assert!(r.tally("snf_theorem").unwrap().failed > 0);
    }

    #[test]
    fn random_mode_is_seeded() {
        let cfg = SweepConfig {
            max_vertices: 4,
            max_edges: 6,
            mode: SweepMode::Random {
                samples: 30,
                seed: 9,
            },
            ..Default::default()
        };
        let r = run_sweep(&cfg);
        assert!(r.passed(), "{:?}", r.counterexample);
        assert_eq!(r.graphs, 30);
        assert_eq!(r, run_sweep(&cfg));
    }
}
