//! Regularity bounds for `IJ`, `I = I(H) ⊆ J = I(G)`, checked on concrete
//! pairs.
//!
//! Every record stores the numbers it compares; [`TheoremRecord::holds`]
//! recomputes the verdict from them on each call.

mod checks;
mod golden;
mod random;

use alloc::string::String;
use alloc::vec::Vec;

use crate::betti::{betti_table, Engine, Field, Limits, Regularity};
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

pub use checks::{
    check_class_bounds, check_linear_resolution_theorem, check_precise_formulas, check_product_bounds,
    check_product_chain, product_ideals, BoundReport, ChainRecord, ClassBoundClause, ClassBoundRecord,
    LinearResolutionRecord, PairInvariants, PreciseClass, PreciseRecord, TheoremRecord,
};
pub use golden::{reproduce_paper, GoldenRow};
pub use random::{
    engine_agreement, instance_rng, random_chain, random_graph, random_ideal, random_pair, run_check, Check,
    CheckOutcome, PairMode, RandomIdealSpec, RandomPairSpec, Verdict,
};

/// Source of Betti tables for the lab; lets callers swap in a parallel runner.
pub trait RegularityOracle {
    fn betti(&self, i: &MonomialIdeal) -> Result<Regularity>;
}

/// Sequential oracle. With `Engine::Both`, an ideal that fits only one
/// engine's limits is computed by that engine alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabOptions {
    pub field: Field,
    pub limits: Limits,
    pub engine: Engine,
}

impl Default for LabOptions {
    fn default() -> LabOptions {
        LabOptions {
            field: Field::Rational,
            limits: Limits::default(),
            engine: Engine::Both,
        }
    }
}

impl RegularityOracle for LabOptions {
    fn betti(&self, i: &MonomialIdeal) -> Result<Regularity> {
        match betti_table(i, self.engine, self.field, self.limits) {
            Err(Error::LimitExceeded(_)) if self.engine == Engine::Both => {
                betti_table(i, Engine::Auto, self.field, self.limits)
            }
            other => other,
        }
    }
}

impl<T: RegularityOracle + ?Sized> RegularityOracle for &T {
    fn betti(&self, i: &MonomialIdeal) -> Result<Regularity> {
        (**self).betti(i)
    }
}

/// `Ok(None)` when the ideal is beyond every engine's limits.
pub(crate) fn regularity_within_scale(
    oracle: &dyn RegularityOracle,
    i: &MonomialIdeal,
    notes: &mut Vec<String>,
    what: &str,
) -> Result<Option<usize>> {
    match oracle.betti(i) {
        Ok(r) => Ok(Some(r.value)),
        Err(Error::LimitExceeded(why)) => {
            notes.push(alloc::format!("{what} not computed: {why}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}
