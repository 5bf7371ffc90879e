//! Graded Betti numbers and regularity of monomial ideals.
//!
//! Two engines: Hochster's formula on the polarization and homology of
//! intervals in the lcm lattice. Tables are always those of the ideal `I`
//! (not of `S/I`), so `β_{0,d}` counts minimal generators of degree `d` and
//! `reg(I) = max (j - i)`.

mod complex;
mod hochster;
mod lcm;
mod linalg;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;

pub use complex::{reduced_euler_characteristic, reduced_homology_ranks, SimplicialComplex};
pub use hochster::{betti_hochster, stanley_reisner_complex, used_variable_count, HochsterPlan, HomologyMemo};
pub use lcm::{betti_lcm, lcm_lattice, LcmPlan};
pub use linalg::{rank, SparseRow};

pub const DEFAULT_MAX_VARS: usize = 16;
pub const DEFAULT_MAX_GENS: usize = 24;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// `0` for the rationals, otherwise a prime below `2^31`.
    pub fn from_characteristic(c: u32) -> Result<Field> {
        if c == 0 {
            return Ok(Field::Rational);
        }
        let prime = (2..1 << 31).contains(&c) && (2..).take_while(|d: &u32| d * d <= c).all(|d| !c.is_multiple_of(d));
        if prime {
            Ok(Field::Prime(c))
        } else {
            Err(Error::Precondition(format!(
                "characteristic {c} is neither 0 nor a prime below 2^31"
            )))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

/// `β_{i,j}(I)`: homological degree `i`, internal degree `j`, nonzero ranks only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> BettiTable {
        BettiTable::default()
    }

    pub fn add(&mut self, i: usize, j: usize, rank: u64) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    pub fn merge(&mut self, other: &BettiTable) {
        for (&(i, j), &r) in &other.entries {
            self.add(i, j, r);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `(i, j, rank)` in increasing `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// First differing entry as `(i, j, self, other)`.
    pub fn first_difference(&self, other: &BettiTable) -> Option<(usize, usize, u64, u64)> {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|&(i, j)| (i, j, self.get(i, j), other.get(i, j)))
            .filter(|&(_, _, a, b)| a != b)
            .min()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    /// Hochster when the polarization fits the variable limit, else lcm.
    Auto,
    Hochster,
    Lcm,
    /// Both engines; their tables must agree.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Variables in use after polarization, for Hochster.
    pub max_vars: usize,
    /// Minimal generators, for the lcm lattice.
    pub max_gens: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_vars: DEFAULT_MAX_VARS,
            max_gens: DEFAULT_MAX_GENS,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Limits {
        Limits {
            max_vars: usize::MAX,
            max_gens: usize::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub value: usize,
    pub table: BettiTable,
    /// Engines that actually ran, in order.
    pub engines: Vec<Engine>,
}

/// The engine [`regularity`] picks for `Engine::Auto`.
pub fn auto_engine(i: &MonomialIdeal, limits: Limits) -> Result<Engine> {
    let pol_vars = used_variable_count(&i.polarize().target);
    if pol_vars <= limits.max_vars {
        Ok(Engine::Hochster)
    } else if i.gens().len() <= limits.max_gens {
        Ok(Engine::Lcm)
    } else {
        Err(Error::LimitExceeded(format!(
            "{pol_vars} polarized variables (limit {}) and {} generators (limit {})",
            limits.max_vars,
            i.gens().len(),
            limits.max_gens
        )))
    }
}

/// Betti table of `I` from one engine. Hochster runs on the polarization,
/// which has the same graded Betti numbers.
pub fn betti_table(i: &MonomialIdeal, engine: Engine, field: Field, limits: Limits) -> Result<Regularity> {
    if i.is_zero() {
        return Err(Error::Ideal("the zero ideal has no regularity".into()));
    }
    let (table, engines) = match engine {
        Engine::Auto => return betti_table(i, auto_engine(i, limits)?, field, limits),
        Engine::Hochster => (
            betti_hochster(&i.polarize().target, field, limits.max_vars)?,
            alloc::vec![Engine::Hochster],
        ),
        Engine::Lcm => (betti_lcm(i, field, limits.max_gens)?, alloc::vec![Engine::Lcm]),
        Engine::Both => {
            let h = betti_hochster(&i.polarize().target, field, limits.max_vars)?;
            let l = betti_lcm(i, field, limits.max_gens)?;
            compare_tables(&h, &l)?;
            (h, alloc::vec![Engine::Hochster, Engine::Lcm])
        }
    };
    Ok(Regularity {
        value: table.regularity().expect("a nonzero ideal has generators"),
        table,
        engines,
    })
}

pub fn regularity(i: &MonomialIdeal, engine: Engine, field: Field, limits: Limits) -> Result<usize> {
    Ok(betti_table(i, engine, field, limits)?.value)
}

pub fn compare_tables(hochster: &BettiTable, lcm: &BettiTable) -> Result<()> {
    match hochster.first_difference(lcm) {
        None => Ok(()),
        Some((i, j, a, b)) => Err(Error::EngineMismatch(format!(
            "beta_{{{i},{j}}}: Hochster {a}, lcm lattice {b}"
        ))),
    }
}

/// Equigenerated in some degree `d` with `reg(I) = d`.
pub fn has_linear_resolution(i: &MonomialIdeal, field: Field, limits: Limits) -> Result<bool> {
    let stats = i.stats();
    if !stats.equigenerated {
        return Ok(false);
    }
    Ok(regularity(i, Engine::Auto, field, limits)? == stats.max_gen_degree as usize)
}
