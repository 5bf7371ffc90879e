//! Betti tables with the per-subset and per-lattice-element sums spread over
//! the current rayon pool. Tables are sums of nonnegative counts, so the
//! split never changes the result.

use edgereg_core::betti::{
    auto_engine, compare_tables, BettiTable, Engine, HochsterPlan, HomologyMemo, LcmPlan, Regularity,
};
use edgereg_core::lab::{LabOptions, RegularityOracle};
use edgereg_core::monomial::MonomialIdeal;
use edgereg_core::{Error, Result};
use rayon::prelude::*;

fn add_all(table: &mut BettiTable, entries: Vec<(usize, usize, u64)>) {
    for (i, j, r) in entries {
        table.add(i, j, r);
    }
}

fn merged(mut a: BettiTable, b: BettiTable) -> BettiTable {
    a.merge(&b);
    a
}

fn hochster(i: &MonomialIdeal, opts: &LabOptions) -> Result<BettiTable> {
    let plan = HochsterPlan::new(&i.polarize().target, opts.field, opts.limits.max_vars)?;
    if plan.subsets().is_empty() {
        return Ok(plan.run());
    }
    Ok(plan
        .subsets()
        .par_iter()
        .fold(
            || (HomologyMemo::new(), BettiTable::new()),
            |(mut memo, mut table), &w| {
                add_all(&mut table, plan.contribution(w, &mut memo));
                (memo, table)
            },
        )
        .map(|(_, table)| table)
        .reduce(BettiTable::new, merged))
}

fn lcm(i: &MonomialIdeal, opts: &LabOptions) -> Result<BettiTable> {
    let plan = LcmPlan::new(i, opts.field, opts.limits.max_gens)?;
    Ok(plan
        .elements()
        .par_iter()
        .fold(BettiTable::new, |mut table, b| {
            add_all(&mut table, plan.contribution(b));
            table
        })
        .reduce(BettiTable::new, merged))
}

/// Same results as [`LabOptions`], computed on the rayon pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelOracle(pub LabOptions);

impl ParallelOracle {
    fn run(&self, i: &MonomialIdeal, engine: Engine) -> Result<Regularity> {
        let opts = &self.0;
        if i.is_zero() {
            return Err(Error::Ideal("the zero ideal has no regularity".into()));
        }
        let (table, engines) = match engine {
            Engine::Auto => return self.run(i, auto_engine(i, opts.limits)?),
            Engine::Hochster => (hochster(i, opts)?, vec![Engine::Hochster]),
            Engine::Lcm => (lcm(i, opts)?, vec![Engine::Lcm]),
            Engine::Both => {
                let (h, l) = rayon::join(|| hochster(i, opts), || lcm(i, opts));
                let (h, l) = (h?, l?);
                compare_tables(&h, &l)?;
                (h, vec![Engine::Hochster, Engine::Lcm])
            }
        };
        Ok(Regularity {
            value: table.regularity().expect("a nonzero ideal has generators"),
            table,
            engines,
        })
    }
}

impl RegularityOracle for ParallelOracle {
    fn betti(&self, i: &MonomialIdeal) -> Result<Regularity> {
        match self.run(i, self.0.engine) {
            Err(Error::LimitExceeded(_)) if self.0.engine == Engine::Both => self.run(i, Engine::Auto),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use edgereg_core::betti::{Field, Limits};
    use edgereg_core::lab::{random_ideal, RandomIdealSpec};
    use edgereg_core::monomial::edge_ideal;
    use edgereg_core::Graph;

    #[test]
    fn agrees_with_sequential() {
        let spec = RandomIdealSpec {
            max_vars: 6,
            max_gens: 6,
            max_exponent: 3,
            seed: 11,
        };
        for engine in [Engine::Auto, Engine::Hochster, Engine::Lcm, Engine::Both] {
            let opts = LabOptions {
                field: Field::Rational,
                limits: Limits::default(),
                engine,
            };
            for k in 0..20 {
                let i = random_ideal(&spec, k).unwrap();
                let seq = opts.betti(&i);
                let par = ParallelOracle(opts).betti(&i);
                assert_eq!(seq, par, "{i}");
            }
        }
    }

    #[test]
    fn pool_width_does_not_matter() {
        let i = edge_ideal(&Graph::cycle(9).unwrap());
        let opts = LabOptions::default();
        let tables: Vec<_> = [1, 2, 4]
            .into_iter()
            .map(|n| {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
                pool.install(|| ParallelOracle(opts).betti(&i).unwrap())
            })
            .collect();
        assert!(tables.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(tables[0].value, 4);
    }
}
