//! Graded Betti numbers from the lcm lattice `L` of the minimal generators:
//!
//! ```text
//! β_{i,b}(I) = dim H̃_{i-1}((0̂, b)),   b ∈ L,
//! ```
//!
//! totalized to `β_{i, deg b}`. The open interval `(0̂, b)` is replaced by a
//! homotopy-equivalent complex that stays small. By the crosscut theorem
//! (crosscut = atoms below `b`) it is equivalent to the complex of generator
//! sets whose lcm is not `b`. A set has lcm ≠ `b` exactly when all its members
//! fall short of `b` in some common variable `k`, so that complex is the union
//! of the simplices `A_k = {g | b : g_k < b_k}`, and by the nerve theorem it is
//! equivalent to the nerve of `{A_k}`, a complex on at most `nvars` vertices.
//! For a generator `b` the interval is empty and its order complex is `{∅}`,
//! contributing `β_{0, deg b} = 1`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::complex::{group_by_size, shifted_homology};
use super::{BettiTable, Field};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

/// Prepared lattice; elements can be split across workers.
#[derive(Clone, Debug)]
pub struct LcmPlan {
    gens: Vec<Monomial>,
    elements: Vec<Monomial>,
    field: Field,
}

/// Every lcm of a nonempty set of minimal generators, ascending.
pub fn lcm_lattice(i: &MonomialIdeal) -> Vec<Monomial> {
    let mut seen: BTreeSet<Monomial> = i.gens().iter().cloned().collect();
    let mut frontier: Vec<Monomial> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in i.gens() {
                let y = x.lcm(g);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen.into_iter().collect()
}

impl LcmPlan {
    pub fn new(i: &MonomialIdeal, field: Field, max_gens: usize) -> Result<LcmPlan> {
        if i.is_zero() {
            return Err(Error::Ideal("the zero ideal has no resolution to measure".into()));
        }
        let n = i.gens().len();
        if n > max_gens {
            return Err(Error::LimitExceeded(alloc::format!(
                "lcm engine: {n} generators, limit {max_gens}"
            )));
        }
        if n > 128 || i.nvars() > 64 {
            return Err(Error::LimitExceeded(
                "lcm engine handles at most 128 generators in at most 64 variables".into(),
            ));
        }
        Ok(LcmPlan {
            gens: i.gens().to_vec(),
            elements: lcm_lattice(i),
            field,
        })
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    /// Entries `(i, deg b, rank)` contributed by the lattice element `b`.
    pub fn contribution(&self, b: &Monomial) -> Vec<(usize, usize, u64)> {
        let h = interval_homology(&self.gens, b, self.field);
        let d = b.degree() as usize;
        h.iter()
            .enumerate()
            .filter(|&(_, &r)| r > 0)
            .map(|(i, &r)| (i, d, r as u64))
            .collect()
    }

    pub fn run(&self) -> BettiTable {
        let mut table = BettiTable::new();
        for b in &self.elements {
            for (i, j, r) in self.contribution(b) {
                table.add(i, j, r);
            }
        }
        table
    }
}

pub fn betti_lcm(i: &MonomialIdeal, field: Field, max_gens: usize) -> Result<BettiTable> {
    Ok(LcmPlan::new(i, field, max_gens)?.run())
}

/// Shifted reduced homology (entry `p` is `H̃_{p-1}`) of `(0̂, b)`.
fn interval_homology(gens: &[Monomial], b: &Monomial, field: Field) -> Vec<usize> {
    if gens.contains(b) {
        return alloc::vec![1];
    }
    let below: Vec<&Monomial> = gens.iter().filter(|g| g.divides(b)).collect();
    let mut cover: Vec<u128> = Vec::new();
    for (k, &e) in b.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let a: u128 = below
            .iter()
            .enumerate()
            .filter(|(_, g)| g.exponents()[k] < e)
            .map(|(t, _)| 1u128 << t)
            .sum();
        if a != 0 {
            cover.push(a);
        }
    }
    // only maximal simplices matter for the union
    cover.sort_unstable();
    cover.dedup();
    let maximal: Vec<u128> = cover
        .iter()
        .copied()
        .filter(|&a| !cover.iter().any(|&c| c != a && c & a == a))
        .collect();
    let mut faces = alloc::vec![0u64];
    let mut stack = alloc::vec![(0u64, u128::MAX, 0usize)];
    while let Some((face, common, next)) = stack.pop() {
        for (v, &a) in maximal.iter().enumerate().skip(next) {
            let meet = common & a;
            if meet != 0 {
                let grown = face | 1 << v;
                faces.push(grown);
                stack.push((grown, meet, v + 1));
            }
        }
    }
    shifted_homology(&group_by_size(faces.into_iter()), field)
}

/// Reference: homology of the order complex of `(0̂, b)` in the lattice,
/// built chain by chain. Only for small lattices.
#[cfg(test)]
pub(crate) fn interval_homology_by_chains(i: &MonomialIdeal, b: &Monomial, field: Field) -> Vec<usize> {
    let mut below: Vec<Monomial> = lcm_lattice(i).into_iter().filter(|x| x != b && x.divides(b)).collect();
    assert!(below.len() <= 64, "reference order complex is for small lattices");
    below.sort_by_key(Monomial::degree);
    let mut faces = alloc::vec![0u64];
    let mut stack: Vec<(u64, Option<usize>)> = alloc::vec![(0, None)];
    while let Some((face, top)) = stack.pop() {
        for v in top.map_or(0, |t| t + 1)..below.len() {
            let extends = match top {
                None => true,
                Some(t) => below[t] != below[v] && below[t].divides(&below[v]),
            };
            if extends {
                let grown = face | 1 << v;
                faces.push(grown);
                stack.push((grown, Some(v)));
            }
        }
    }
    shifted_homology(&group_by_size(faces.into_iter()), field)
}
