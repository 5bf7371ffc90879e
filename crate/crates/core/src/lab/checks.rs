use alloc::string::String;
use alloc::vec::Vec;

use super::{regularity_within_scale, RegularityOracle};
use crate::error::{Error, Result};
use crate::graph::{Graph, SubgraphRelation};
use crate::invariants::classes::{claw_free_threshold, cycle_length};
use crate::invariants::{
    cochord_cover_number, induced_matching_number, is_cochordal, matching_number, min_maximal_matching, nu_gh,
    recognize_class, GraphClass,
};
use crate::monomial::{edge_ideal, MonomialIdeal};

/// `lower ≤ value ≤ upper` for one named statement; missing bounds are open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremRecord {
    pub name: &'static str,
    /// What is being bounded, e.g. `reg(IJ)`.
    pub subject: &'static str,
    pub value: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub applicable: bool,
    /// A bound whose ingredients were out of scale; no verdict possible.
    pub incomplete: bool,
}

impl TheoremRecord {
    /// `None` when inapplicable or when a needed number is missing.
    pub fn holds(&self) -> Option<bool> {
        if !self.applicable || self.incomplete {
            return None;
        }
        let v = self.value?;
        Some(self.lower.is_none_or(|l| l <= v) && self.upper.is_none_or(|u| v <= u))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairInvariants {
    pub nu_h: usize,
    pub nu_g: usize,
    pub nu_gh: usize,
    pub mat_g: usize,
    pub mm_g: usize,
    pub cochord_h: usize,
    pub cochord_g: usize,
}

impl PairInvariants {
    pub fn compute(h: &Graph, g: &Graph) -> Result<PairInvariants> {
        Ok(PairInvariants {
            nu_h: induced_matching_number(h)?,
            nu_g: induced_matching_number(g)?,
            nu_gh: nu_gh(h, g)?,
            mat_g: matching_number(g)?,
            mm_g: min_maximal_matching(g)?,
            cochord_h: cochord_cover_number(h)?,
            cochord_g: cochord_cover_number(g)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub h: Graph,
    pub g: Graph,
    pub relation: SubgraphRelation,
    pub invariants: PairInvariants,
    pub reg_i: Option<usize>,
    pub reg_j: Option<usize>,
    pub reg_ij: Option<usize>,
    /// Why some regularity is missing.
    pub notes: Vec<String>,
    pub records: Vec<TheoremRecord>,
}

impl BoundReport {
    pub fn failures(&self) -> impl Iterator<Item = &TheoremRecord> {
        self.records.iter().filter(|r| r.holds() == Some(false))
    }

    pub fn all_hold(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn record(&self, name: &str) -> Option<&TheoremRecord> {
        self.records.iter().find(|r| r.name == name)
    }
}

fn require_pair(h: &Graph, g: &Graph) -> Result<SubgraphRelation> {
    let rel = h.subgraph_relation(g);
    if !rel.is_subgraph() {
        return Err(Error::Precondition("H is not a subgraph of G".into()));
    }
    if h.edge_count() == 0 {
        return Err(Error::Precondition("H has no edges, so I(H) is zero".into()));
    }
    Ok(rel)
}

/// `I(H)`, `J = I(G)` and `IJ`, all over the ring `V(G)`.
pub fn product_ideals(h: &Graph, g: &Graph) -> Result<(MonomialIdeal, MonomialIdeal, MonomialIdeal)> {
    let j = edge_ideal(g);
    let i = edge_ideal(h).extend_ring(j.vars())?;
    let ij = i.product(&j)?;
    Ok((i, j, ij))
}

fn opt_max(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a?.max(b?))
}

pub fn check_product_bounds(h: &Graph, g: &Graph, oracle: &dyn RegularityOracle) -> Result<BoundReport> {
    let relation = require_pair(h, g)?;
    let inv = PairInvariants::compute(h, g)?;
    let (i, j, ij) = product_ideals(h, g)?;
    let mut notes = Vec::new();
    let reg_i = regularity_within_scale(oracle, &i, &mut notes, "reg(I)")?;
    let reg_j = regularity_within_scale(oracle, &j, &mut notes, "reg(J)")?;
    let reg_ij = regularity_within_scale(oracle, &ij, &mut notes, "reg(IJ)")?;
    let induced = relation == SubgraphRelation::InducedSubgraph;

    let rec =
        |name, subject, value, lower: Option<usize>, upper: Option<usize>, applicable, incomplete| TheoremRecord {
            name,
            subject,
            value,
            lower,
            upper,
            applicable,
            incomplete,
        };
    let upper_reg_i = opt_max(Some(inv.cochord_g + 3), reg_i);
    let upper_reg_j = opt_max(reg_j.map(|r| r + 3), reg_i);
    let records = alloc::vec![
        rec(
            "lower-induced-matching",
            "reg(IJ)",
            reg_ij,
            Some(inv.nu_gh + 3),
            None,
            true,
            false
        ),
        rec(
            "upper-cochord-reg-i",
            "reg(IJ)",
            reg_ij,
            None,
            upper_reg_i,
            true,
            upper_reg_i.is_none()
        ),
        rec(
            "upper-cochord",
            "reg(IJ)",
            reg_ij,
            None,
            Some((inv.cochord_g + 3).max(inv.cochord_h + 1)),
            true,
            false
        ),
        rec(
            "upper-matching",
            "reg(IJ)",
            reg_ij,
            None,
            Some(inv.mat_g + 3),
            true,
            false
        ),
        rec(
            "induced-subgraph",
            "reg(IJ)",
            reg_ij,
            Some(inv.nu_h + 3),
            Some(inv.cochord_g + 3),
            induced,
            false
        ),
        rec(
            "upper-reg-j",
            "reg(IJ)",
            reg_ij,
            None,
            upper_reg_j,
            true,
            upper_reg_j.is_none()
        ),
        rec(
            "invariant-chain",
            "cochord(G)",
            Some(inv.cochord_g),
            Some(inv.nu_g),
            Some(inv.mm_g),
            true,
            false
        ),
        rec(
            "matching-chain",
            "MM(G)",
            Some(inv.mm_g),
            Some(inv.cochord_g),
            Some(inv.mat_g),
            true,
            false
        ),
        rec(
            "nu-gh",
            "nu_GH",
            Some(inv.nu_gh),
            None,
            Some(inv.nu_h.min(inv.nu_g)),
            true,
            false
        ),
        rec(
            "sandwich-j",
            "reg(J)",
            reg_j,
            Some(inv.nu_g + 1),
            Some(inv.cochord_g + 1),
            true,
            false
        ),
        rec(
            "sandwich-i",
            "reg(I)",
            reg_i,
            Some(inv.nu_h + 1),
            Some(inv.cochord_h + 1),
            true,
            false
        ),
    ];
    Ok(BoundReport {
        h: h.clone(),
        g: g.clone(),
        relation,
        invariants: inv,
        reg_i,
        reg_j,
        reg_ij,
        notes,
        records,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PreciseClass {
    /// Cycle whose length is a multiple of three.
    CycleThreeN,
    WeaklyChordal,
    UnmixedBipartite,
    BipartiteRegularityThree,
    DominatingInducedMatching,
}

impl PreciseClass {
    pub fn name(self) -> &'static str {
        match self {
            PreciseClass::CycleThreeN => "cycle-3n",
            PreciseClass::WeaklyChordal => "weakly-chordal",
            PreciseClass::UnmixedBipartite => "unmixed-bipartite",
            PreciseClass::BipartiteRegularityThree => "bipartite-reg-3",
            PreciseClass::DominatingInducedMatching => "dominating-induced-matching",
        }
    }
}

/// `reg(IJ) = ν(G) + 3` when `H` is induced, `ν(H) = ν(G)` and `G` lies in
/// one of the listed classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreciseRecord {
    pub induced: bool,
    pub nu_h: usize,
    pub nu_g: usize,
    pub classes: Vec<PreciseClass>,
    pub reg_ij: Option<usize>,
}

impl PreciseRecord {
    pub fn applicable(&self) -> bool {
        self.induced && self.nu_h == self.nu_g && !self.classes.is_empty()
    }

    pub fn expected(&self) -> usize {
        self.nu_g + 3
    }

    pub fn holds(&self) -> Option<bool> {
        if !self.applicable() {
            return None;
        }
        Some(self.reg_ij? == self.expected())
    }
}

pub fn check_precise_formulas(h: &Graph, g: &Graph, oracle: &dyn RegularityOracle) -> Result<PreciseRecord> {
    let relation = require_pair(h, g)?;
    let induced = relation == SubgraphRelation::InducedSubgraph;
    let nu_h = induced_matching_number(h)?;
    let nu_g = induced_matching_number(g)?;
    let mut record = PreciseRecord {
        induced,
        nu_h,
        nu_g,
        classes: Vec::new(),
        reg_ij: None,
    };
    if !induced || nu_h != nu_g {
        return Ok(record);
    }
    let mut notes = Vec::new();
    if cycle_length(g).is_some_and(|k| k % 3 == 0) {
        record.classes.push(PreciseClass::CycleThreeN);
    }
    if recognize_class(g, GraphClass::WeaklyChordal)? {
        record.classes.push(PreciseClass::WeaklyChordal);
    }
    if recognize_class(g, GraphClass::UnmixedBipartite)? {
        record.classes.push(PreciseClass::UnmixedBipartite);
    }
    if recognize_class(g, GraphClass::Bipartite)?
        && regularity_within_scale(oracle, &edge_ideal(g), &mut notes, "reg(J)")? == Some(3)
    {
        record.classes.push(PreciseClass::BipartiteRegularityThree);
    }
    if recognize_class(g, GraphClass::DominatingInducedMatching)? {
        record.classes.push(PreciseClass::DominatingInducedMatching);
    }
    if !record.classes.is_empty() {
        let (_, _, ij) = product_ideals(h, g)?;
        record.reg_ij = regularity_within_scale(oracle, &ij, &mut notes, "reg(IJ)")?;
    }
    Ok(record)
}

/// With `J` linear (`G` co-chordal): `reg(IJ) = 4` if `reg(I) ≤ 4`, else
/// `reg(IJ) = reg(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearResolutionRecord {
    pub g_cochordal: bool,
    pub reg_i: Option<usize>,
    pub reg_ij: Option<usize>,
}

impl LinearResolutionRecord {
    pub fn expected(&self) -> Option<usize> {
        let r = self.reg_i?;
        Some(if r <= 4 { 4 } else { r })
    }

    pub fn holds(&self) -> Option<bool> {
        if !self.g_cochordal {
            return None;
        }
        Some(self.reg_ij? == self.expected()?)
    }
}

pub fn check_linear_resolution_theorem(
    h: &Graph,
    g: &Graph,
    oracle: &dyn RegularityOracle,
) -> Result<LinearResolutionRecord> {
    require_pair(h, g)?;
    let g_cochordal = is_cochordal(g)?;
    let mut record = LinearResolutionRecord {
        g_cochordal,
        reg_i: None,
        reg_ij: None,
    };
    if g_cochordal {
        let (i, _, ij) = product_ideals(h, g)?;
        let mut notes = Vec::new();
        record.reg_i = regularity_within_scale(oracle, &i, &mut notes, "reg(I)")?;
        record.reg_ij = regularity_within_scale(oracle, &ij, &mut notes, "reg(IJ)")?;
    }
    Ok(record)
}

/// `J_1 ⊆ … ⊆ J_d`, `J_d` complete, `d ∈ {3, 4}`; with `r = reg(J_1⋯J_{d-1})`:
/// `r ≤ 2d` makes the full product linear in degree `2d`, `r > 2d` keeps `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainRecord {
    pub d: usize,
    pub reg_prefix: usize,
    pub reg_product: usize,
    /// Common generator degree of the full product, if equigenerated.
    pub product_degree: Option<usize>,
}

impl ChainRecord {
    pub fn holds(&self) -> bool {
        let two_d = 2 * self.d;
        if self.reg_prefix <= two_d {
            self.product_degree == Some(two_d) && self.reg_product == two_d
        } else {
            self.reg_product == self.reg_prefix
        }
    }
}

pub fn check_product_chain(graphs: &[Graph], oracle: &dyn RegularityOracle) -> Result<ChainRecord> {
    let d = graphs.len();
    if d != 3 && d != 4 {
        return Err(Error::Precondition(alloc::format!(
            "chains have length 3 or 4, got {d}"
        )));
    }
    let last = &graphs[d - 1];
    let n = last.vertex_count();
    if last.edge_count() != n * n.saturating_sub(1) / 2 {
        return Err(Error::Precondition(
            "the last graph of the chain must be complete".into(),
        ));
    }
    for w in graphs.windows(2) {
        if !w[0].subgraph_relation(&w[1]).is_subgraph() {
            return Err(Error::Precondition(
                "chain graphs must each be a subgraph of the next".into(),
            ));
        }
    }
    if graphs[0].edge_count() == 0 {
        return Err(Error::Precondition("the first graph has no edges".into()));
    }
    let ring = edge_ideal(last);
    let mut prefix = edge_ideal(&graphs[0]).extend_ring(ring.vars())?;
    for g in &graphs[1..d - 1] {
        prefix = prefix.product(&edge_ideal(g).extend_ring(ring.vars())?)?;
    }
    let product = prefix.product(&ring)?;
    let stats = product.stats();
    Ok(ChainRecord {
        d,
        reg_prefix: oracle.betti(&prefix)?.value,
        reg_product: oracle.betti(&product)?.value,
        product_degree: stats.equigenerated.then_some(stats.max_gen_degree as usize),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBoundClause {
    pub clause: usize,
    pub applicable: bool,
    pub bound: Option<usize>,
    pub detail: String,
}

/// Bounds for gap-free families and for cycles spanning a vertex cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBoundRecord {
    pub clauses: Vec<ClassBoundClause>,
    pub reg_ij: Option<usize>,
}

impl ClassBoundRecord {
    /// Per clause: `None` when inapplicable or `reg(IJ)` is missing.
    pub fn verdicts(&self) -> Vec<Option<bool>> {
        self.clauses
            .iter()
            .map(|c| {
                if !c.applicable {
                    return None;
                }
                Some(self.reg_ij? <= c.bound?)
            })
            .collect()
    }

    pub fn any_failure(&self) -> bool {
        self.verdicts().contains(&Some(false))
    }
}

fn gap_free_family(g: &Graph) -> Result<bool> {
    Ok(recognize_class(g, GraphClass::GapFree)?
        && (!recognize_class(g, GraphClass::ContainsInducedCricket)?
            || !recognize_class(g, GraphClass::ContainsInducedDiamond)?
            || !recognize_class(g, GraphClass::ContainsInducedC4)?))
}

pub fn check_class_bounds(h: &Graph, g: &Graph, oracle: &dyn RegularityOracle) -> Result<ClassBoundRecord> {
    require_pair(h, g)?;
    let mut clauses = Vec::new();

    let fam = gap_free_family(g)? && gap_free_family(h)?;
    clauses.push(ClassBoundClause {
        clause: 1,
        applicable: fam,
        bound: fam.then_some(6),
        detail: "G and H gap-free and free of a cricket, a diamond or a C4".into(),
    });

    let gap_free = recognize_class(g, GraphClass::GapFree)? && recognize_class(h, GraphClass::GapFree)?;
    let claw = if gap_free {
        Some(claw_free_threshold(g)?.max(claw_free_threshold(h)?))
    } else {
        None
    };
    clauses.push(ClassBoundClause {
        clause: 2,
        applicable: gap_free,
        bound: claw.map(|n| n + 3),
        detail: match claw {
            Some(n) => alloc::format!("G and H gap-free and {n}-claw-free"),
            None => "G or H has a gap".into(),
        },
    });

    let cycle = cycle_length(h);
    let covers = g
        .edge_names()
        .iter()
        .all(|(a, b)| h.index_of(a).is_some() || h.index_of(b).is_some());
    let cyc_ok = cycle.is_some() && covers;
    clauses.push(ClassBoundClause {
        clause: 3,
        applicable: cyc_ok,
        bound: cycle.filter(|_| covers).map(|k| k.div_ceil(2) + 3),
        detail: match cycle {
            Some(k) if covers => alloc::format!("H = C{k} and V(H) covers E(G)"),
            Some(k) => alloc::format!("H = C{k} but V(H) misses an edge of G"),
            None => "H is not a cycle".into(),
        },
    });

    let mut reg_ij = None;
    if clauses.iter().any(|c| c.applicable) {
        let (_, _, ij) = product_ideals(h, g)?;
        reg_ij = regularity_within_scale(oracle, &ij, &mut Vec::new(), "reg(IJ)")?;
    }
    Ok(ClassBoundRecord { clauses, reg_ij })
}
