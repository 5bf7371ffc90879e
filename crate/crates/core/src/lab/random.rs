//! Seeded instance generation and single-instance checks for campaigns.
//!
//! Instance `k` of a campaign with seed `s` draws from ChaCha8 seeded with
//! `s` on stream `k`, so instances are independent of evaluation order.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::{
    check_class_bounds, check_linear_resolution_theorem, check_precise_formulas, check_product_bounds,
};
use super::RegularityOracle;
use crate::betti::{betti_table, Engine, Field, Limits};
use crate::colon::{colon_by_theorem, direct_colon};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    cochord_cover, cochord_cover_number, induced_matching_number, is_cochordal, matching_number, min_maximal_matching,
};
use crate::monomial::{edge_ideal, Monomial, MonomialIdeal};
use crate::transfer::transfer_cover;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairMode {
    /// Each edge of `G` kept in `H` with probability ½.
    Subgraph,
    /// `H` induced on a random vertex subset.
    Induced,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomPairSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub edge_probability: f64,
    pub mode: PairMode,
    pub seed: u64,
}

impl RandomPairSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max || self.n_max > 64 {
            return Err(Error::Precondition(format!(
                "vertex range {}..={} must satisfy 2 <= min <= max <= 64",
                self.n_min, self.n_max
            )));
        }
        if !(self.edge_probability > 0.0 && self.edge_probability <= 1.0) {
            return Err(Error::Precondition("edge probability must lie in (0, 1]".into()));
        }
        Ok(())
    }
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `G(n, p)` on `x1..xn`, redrawn until it has an edge.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((a, b));
                }
            }
        }
        if !pairs.is_empty() {
            return Graph::from_indexed(names(n), pairs);
        }
    }
}

/// Instance `index` of the campaign: `(H, G)` with `H` a nonempty subgraph
/// (or induced subgraph) of `G`.
pub fn random_pair(spec: &RandomPairSpec, index: u64) -> Result<(Graph, Graph)> {
    spec.validate()?;
    let mut rng = instance_rng(spec.seed, index);
    let n = rng.gen_range(spec.n_min..=spec.n_max);
    let g = random_graph(&mut rng, n, spec.edge_probability);
    loop {
        let h = match spec.mode {
            PairMode::Subgraph => {
                let kept: Vec<(&str, &str)> = g.edge_names().into_iter().filter(|_| rng.gen_bool(0.5)).collect();
                let mut vs: Vec<&str> = kept.iter().flat_map(|&(a, b)| [a, b]).collect();
                vs.sort_by_key(|v| g.index_of(v));
                vs.dedup();
                Graph::new(&vs, &kept)?
            }
            PairMode::Induced => {
                let keep: Vec<&str> = g
                    .names()
                    .iter()
                    .map(String::as_str)
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                g.induced_subgraph(&keep)?
            }
        };
        if h.edge_count() > 0 {
            return Ok((h, g));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomIdealSpec {
    pub max_vars: usize,
    pub max_gens: usize,
    pub max_exponent: u32,
    pub seed: u64,
}

/// A nonzero, non-unit monomial ideal with up to `max_gens` generators.
pub fn random_ideal(spec: &RandomIdealSpec, index: u64) -> Result<MonomialIdeal> {
    let mut rng = instance_rng(spec.seed, index);
    let nvars = rng.gen_range(1..=spec.max_vars.max(1));
    let ngens = rng.gen_range(1..=spec.max_gens.max(1));
    let mut gens = Vec::with_capacity(ngens);
    while gens.len() < ngens {
        let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=spec.max_exponent)).collect();
        if exps.iter().any(|&e| e > 0) {
            gens.push(Monomial::from_exponents(exps));
        }
    }
    MonomialIdeal::new(names(nvars), gens)
}

/// `J_1 ⊆ … ⊆ J_d = K_n`: each graph keeps every edge of the next with
/// probability ½ (redrawn until nonempty).
pub fn random_chain(seed: u64, index: u64, n: usize, d: usize) -> Result<Vec<Graph>> {
    if d < 2 || n < 2 {
        return Err(Error::Precondition("chains need d >= 2 and n >= 2".into()));
    }
    let mut rng = instance_rng(seed, index);
    let mut chain = alloc::vec![Graph::complete(n)?];
    for _ in 1..d {
        let next = chain.last().expect("nonempty");
        let sub = loop {
            let keep: Vec<usize> = (0..next.edge_count()).filter(|_| rng.gen_bool(0.5)).collect();
            if !keep.is_empty() {
                break next.with_edge_subset(&keep);
            }
        };
        chain.push(sub);
    }
    chain.reverse();
    Ok(chain)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Colon,
    Transfer,
    Sandwich,
    ProductBounds,
    Precise,
    LinearResolution,
    ClassBounds,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Colon,
        Check::Transfer,
        Check::Sandwich,
        Check::ProductBounds,
        Check::Precise,
        Check::LinearResolution,
        Check::ClassBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Colon => "colon",
            Check::Transfer => "transfer",
            Check::Sandwich => "sandwich",
            Check::ProductBounds => "product-bounds",
            Check::Precise => "precise",
            Check::LinearResolution => "linear-resolution",
            Check::ClassBounds => "class-bounds",
        }
    }

    pub fn from_name(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Inapplicable,
    /// Out of engine scale; nothing was asserted.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub verdict: Verdict,
}

fn fail_on_error(r: Result<Verdict>) -> Verdict {
    match r {
        Ok(v) => v,
        Err(Error::LimitExceeded(why)) => Verdict::Skipped(why),
        Err(e) => Verdict::Fail(format!("{e}")),
    }
}

/// Runs one check on one pair. Errors other than limits become failures.
pub fn run_check(check: Check, h: &Graph, g: &Graph, oracle: &dyn RegularityOracle) -> CheckOutcome {
    let verdict = fail_on_error(match check {
        Check::Colon => colon_check(h, g),
        Check::Transfer => transfer_check(h, g),
        Check::Sandwich => sandwich_check(g, oracle),
        Check::ProductBounds => check_product_bounds(h, g, oracle).map(|r| {
            let bad: Vec<&str> = r.failures().map(|t| t.name).collect();
            if !bad.is_empty() {
                Verdict::Fail(format!("violated: {}", bad.join(", ")))
            } else if r.reg_ij.is_none() {
                Verdict::Skipped("reg(IJ) out of scale".into())
            } else {
                Verdict::Pass
            }
        }),
        Check::Precise => check_precise_formulas(h, g, oracle).map(|r| match r.holds() {
            None if r.applicable() => Verdict::Skipped("reg(IJ) out of scale".into()),
            None => Verdict::Inapplicable,
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail(format!("reg(IJ) = {:?}, expected {}", r.reg_ij, r.expected())),
        }),
        Check::LinearResolution => check_linear_resolution_theorem(h, g, oracle).map(|r| match r.holds() {
            None if r.g_cochordal => Verdict::Skipped("regularity out of scale".into()),
            None => Verdict::Inapplicable,
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail(format!("reg(I) = {:?}, reg(IJ) = {:?}", r.reg_i, r.reg_ij)),
        }),
        Check::ClassBounds => check_class_bounds(h, g, oracle).map(|r| {
            let v = r.verdicts();
            if r.any_failure() {
                Verdict::Fail(format!("reg(IJ) = {:?}, clauses {:?}", r.reg_ij, r.clauses))
            } else if v.contains(&Some(true)) {
                Verdict::Pass
            } else if r.clauses.iter().any(|c| c.applicable) {
                Verdict::Skipped("reg(IJ) out of scale".into())
            } else {
                Verdict::Inapplicable
            }
        }),
    });
    CheckOutcome { check, verdict }
}

fn colon_check(h: &Graph, g: &Graph) -> Result<Verdict> {
    for (a, b) in h.edge_names() {
        let by_theorem = colon_by_theorem(h, g, (a, b))?;
        let direct = direct_colon(h, g, (a, b))?;
        if by_theorem.ideal != direct {
            return Ok(Verdict::Fail(format!(
                "edge {a}{b}: theorem gives {}, direct colon is {direct}",
                by_theorem.ideal
            )));
        }
        if let Some(m) = direct.gens().iter().find(|m| m.degree() != 2) {
            return Ok(Verdict::Fail(format!(
                "edge {a}{b}: generator {} is not quadratic",
                m.display(direct.vars())
            )));
        }
    }
    Ok(Verdict::Pass)
}

fn transfer_check(h: &Graph, g: &Graph) -> Result<Verdict> {
    let (k, cover) = cochord_cover(g)?;
    for (a, b) in h.edge_names() {
        let out = transfer_cover(h, g, (a, b), &cover)?;
        if !out.verdict.is_valid() || out.cover.len() != k {
            return Ok(Verdict::Fail(format!(
                "edge {a}{b}: transferred cover of {} classes fails: {:?}",
                out.cover.len(),
                out.verdict
            )));
        }
    }
    Ok(Verdict::Pass)
}

fn sandwich_check(g: &Graph, oracle: &dyn RegularityOracle) -> Result<Verdict> {
    let j = edge_ideal(g);
    let reg = oracle.betti(&j)?.value;
    let nu = induced_matching_number(g)?;
    let cc = cochord_cover_number(g)?;
    if !(nu + 1 <= reg && reg <= cc + 1) {
        return Ok(Verdict::Fail(format!(
            "nu + 1 = {}, reg = {reg}, cochord + 1 = {}",
            nu + 1,
            cc + 1
        )));
    }
    let (mm, mat) = (min_maximal_matching(g)?, matching_number(g)?);
    if !(nu <= cc && cc <= mm && mm <= mat) {
        return Ok(Verdict::Fail(format!(
            "chain broken: nu {nu}, cochord {cc}, MM {mm}, mat {mat}"
        )));
    }
    let cochordal = is_cochordal(g)?;
    if (reg == 2) != cochordal {
        return Ok(Verdict::Fail(format!("reg = {reg} but co-chordal = {cochordal}")));
    }
    Ok(Verdict::Pass)
}

/// Engine agreement on one ideal (used by campaigns over random ideals).
pub fn engine_agreement(i: &MonomialIdeal, field: Field, limits: Limits) -> Verdict {
    fail_on_error(betti_table(i, Engine::Both, field, limits).map(|_| Verdict::Pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::LabOptions;

    #[test]
    fn replay_is_deterministic() {
        let spec = RandomPairSpec {
            n_min: 3,
            n_max: 7,
            edge_probability: 0.5,
            mode: PairMode::Subgraph,
            seed: 7,
        };
        for k in 0..20 {
            let (h1, g1) = random_pair(&spec, k).unwrap();
            let (h2, g2) = random_pair(&spec, k).unwrap();
            assert_eq!((h1.clone(), g1.clone()), (h2, g2));
            assert!(h1.subgraph_relation(&g1).is_subgraph());
            assert!(h1.edge_count() > 0);
        }
    }

    #[test]
    fn induced_mode_gives_induced_subgraphs() {
        let spec = RandomPairSpec {
            n_min: 4,
            n_max: 8,
            edge_probability: 0.5,
            mode: PairMode::Induced,
            seed: 11,
        };
        for k in 0..20 {
            let (h, g) = random_pair(&spec, k).unwrap();
            assert_eq!(h.subgraph_relation(&g), crate::graph::SubgraphRelation::InducedSubgraph);
        }
    }

    #[test]
    fn chain_shape() {
        for k in 0..5 {
            let c = random_chain(3, k, 4, 3).unwrap();
            assert_eq!(c.len(), 3);
            assert!(c[0].subgraph_relation(&c[1]).is_subgraph());
            assert_eq!(c[2].edge_count(), 6);
        }
    }

    #[test]
    fn small_campaign_passes() {
        let spec = RandomPairSpec {
            n_min: 3,
            n_max: 6,
            edge_probability: 0.5,
            mode: PairMode::Subgraph,
            seed: 1,
        };
        let opts = LabOptions::default();
        for k in 0..6 {
            let (h, g) = random_pair(&spec, k).unwrap();
            for c in Check::ALL {
                let out = run_check(c, &h, &g, &opts);
                assert!(!matches!(out.verdict, Verdict::Fail(_)), "{k} {out:?}");
            }
        }
    }
}
