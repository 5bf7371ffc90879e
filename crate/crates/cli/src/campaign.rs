//! Seeded fuzz campaigns over random pairs, run in parallel.
//!
//! Instances are generated from `(seed, index)` alone and collected in index
//! order, so the summary does not depend on scheduling. Every failing
//! instance is written to its own reproducer file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use edgereg_core::lab::{
    check_product_bounds, random_pair, run_check, Check, CheckOutcome, PairMode, RandomPairSpec, RegularityOracle,
    Verdict,
};
use edgereg_core::Graph;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::reports;

#[derive(Clone, Debug, PartialEq)]
pub struct FuzzSpec {
    pub pairs: RandomPairSpec,
    pub count: u64,
    pub checks: Vec<Check>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub inapplicable: u64,
    pub skipped: u64,
}

impl Tally {
    fn count(&mut self, v: &Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail(_) => self.fail += 1,
            Verdict::Inapplicable => self.inapplicable += 1,
            Verdict::Skipped(_) => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub index: u64,
    pub h: Graph,
    pub g: Graph,
    pub outcomes: Vec<CheckOutcome>,
}

impl InstanceResult {
    pub fn failed(&self) -> bool {
        self.outcomes.iter().any(|o| matches!(o.verdict, Verdict::Fail(_)))
    }
}

#[derive(Clone, Debug)]
pub struct CampaignSummary {
    pub spec: FuzzSpec,
    pub tallies: BTreeMap<&'static str, Tally>,
    pub failures: Vec<InstanceResult>,
}

impl CampaignSummary {
    pub fn total_failures(&self) -> u64 {
        self.tallies.values().map(|t| t.fail).sum()
    }
}

fn run_instance(spec: &FuzzSpec, index: u64, oracle: &(dyn RegularityOracle + Sync)) -> Result<InstanceResult, String> {
    let (h, g) = random_pair(&spec.pairs, index).map_err(|e| e.to_string())?;
    let outcomes = spec.checks.iter().map(|&c| run_check(c, &h, &g, oracle)).collect();
    Ok(InstanceResult { index, h, g, outcomes })
}

pub fn run_campaign(spec: &FuzzSpec, oracle: &(dyn RegularityOracle + Sync)) -> Result<CampaignSummary, String> {
    spec.pairs.validate().map_err(|e| e.to_string())?;
    let results: Vec<InstanceResult> = (0..spec.count)
        .into_par_iter()
        .map(|k| run_instance(spec, k, oracle))
        .collect::<Result<_, _>>()?;
    let mut tallies: BTreeMap<&'static str, Tally> = spec.checks.iter().map(|c| (c.name(), Tally::default())).collect();
    for r in &results {
        for o in &r.outcomes {
            tallies
                .get_mut(o.check.name())
                .expect("tally per check")
                .count(&o.verdict);
        }
    }
    Ok(CampaignSummary {
        spec: spec.clone(),
        tallies,
        failures: results.into_iter().filter(InstanceResult::failed).collect(),
    })
}

fn mode_name(m: PairMode) -> &'static str {
    match m {
        PairMode::Subgraph => "subgraph",
        PairMode::Induced => "induced",
    }
}

fn spec_json(spec: &FuzzSpec) -> Value {
    let p = &spec.pairs;
    json!({
        "seed": p.seed,
        "count": spec.count,
        "n_min": p.n_min,
        "n_max": p.n_max,
        "edge_probability": p.edge_probability,
        "mode": mode_name(p.mode),
        "checks": spec.checks.iter().map(|c| c.name()).collect::<Vec<_>>(),
    })
}

/// Everything needed to replay one failing instance.
pub fn reproducer(spec: &FuzzSpec, r: &InstanceResult, oracle: &dyn RegularityOracle) -> Value {
    let outcomes: Vec<Value> = r
        .outcomes
        .iter()
        .map(|o| {
            let mut v = reports::verdict(&o.verdict);
            v["check"] = json!(o.check.name());
            v
        })
        .collect();
    let bounds = match check_product_bounds(&r.h, &r.g, oracle) {
        Ok(rep) => reports::bound_report(&rep),
        Err(e) => json!({"error": e.to_string()}),
    };
    json!({
        "campaign": spec_json(spec),
        "instance": r.index,
        "H": reports::graph(&r.h),
        "G": reports::graph(&r.g),
        "outcomes": outcomes,
        "bound_report": bounds,
    })
}

pub fn reproducer_path(dir: &Path, seed: u64, index: u64) -> PathBuf {
    dir.join(format!("fuzz-seed{seed}-instance{index}.json"))
}

/// Writes one file per failing instance; returns the paths.
pub fn write_reproducers(
    summary: &CampaignSummary,
    dir: &Path,
    oracle: &dyn RegularityOracle,
) -> std::io::Result<Vec<PathBuf>> {
    if summary.failures.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir)?;
    summary
        .failures
        .iter()
        .map(|r| {
            let path = reproducer_path(dir, summary.spec.pairs.seed, r.index);
            fs::write(&path, reports::pretty(&reproducer(&summary.spec, r, oracle)))?;
            Ok(path)
        })
        .collect()
}

pub fn summary_json(s: &CampaignSummary, reproducers: &[PathBuf]) -> Value {
    json!({
        "campaign": spec_json(&s.spec),
        "tallies": s.tallies,
        "failures": s.failures.iter().map(|r| r.index).collect::<Vec<_>>(),
        "reproducers": reproducers.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
    })
}
