//! Graded Betti numbers of a squarefree monomial ideal from the
//! Stanley–Reisner complex:
//!
//! ```text
//! β_{i,j}(I) = Σ_{|W| = j} dim H̃_{j-i-2}(Δ|_W)
//! ```
//!
//! Only subsets `W` that are unions of generator supports can contribute:
//! any other `W` has a vertex lying in no generator inside `W`, and `Δ|_W`
//! is a cone over it. For the remaining `W`, `Δ|_W` is the join of the
//! restrictions to the connected components of the generators inside `W`;
//! component homology is memoized on a relabelled key and combined by the
//! join formula `H̃_{n+1}(A * B) = ⊕_{i+j=n} H̃_i(A) ⊗ H̃_j(B)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::complex::{group_by_size, shifted_homology, SimplicialComplex};
use super::{BettiTable, Field};
use crate::error::{Error, Result};
use crate::invariants::bits::ones;
use crate::monomial::MonomialIdeal;

/// Above this many (used) variables the candidate subsets are generated as
/// unions of generator supports instead of by scanning every mask.
const EXHAUSTIVE_SCAN_VARS: usize = 20;

/// Prepared Hochster computation; [`HochsterPlan::subsets`] can be split
/// across workers, each holding its own [`HomologyMemo`].
#[derive(Clone, Debug)]
pub struct HochsterPlan {
    /// Generator supports over the used variables.
    gens: Vec<u64>,
    subsets: Vec<u64>,
    field: Field,
    unit: bool,
}

/// Homology of connected pieces, keyed by their relabelled generator masks.
#[derive(Clone, Debug, Default)]
pub struct HomologyMemo {
    seen: BTreeMap<Vec<u64>, Vec<usize>>,
}

impl HomologyMemo {
    pub fn new() -> HomologyMemo {
        HomologyMemo::default()
    }

    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }
}

/// Number of variables that occur in some generator.
pub fn used_variable_count(i: &MonomialIdeal) -> usize {
    (0..i.nvars())
        .filter(|&v| i.gens().iter().any(|g| g.exponents()[v] > 0))
        .count()
}

impl HochsterPlan {
    pub fn new(i: &MonomialIdeal, field: Field, max_vars: usize) -> Result<HochsterPlan> {
        if i.is_zero() {
            return Err(Error::Ideal("the zero ideal has no resolution to measure".into()));
        }
        if !i.stats().is_squarefree {
            return Err(Error::Ideal("Hochster's formula needs a squarefree ideal".into()));
        }
        let used: Vec<usize> = (0..i.nvars())
            .filter(|&v| i.gens().iter().any(|g| g.exponents()[v] > 0))
            .collect();
        if used.len() > max_vars {
            return Err(Error::LimitExceeded(alloc::format!(
                "Hochster engine: {} variables in use, limit {max_vars}",
                used.len()
            )));
        }
        if used.len() > 64 {
            return Err(Error::LimitExceeded(
                "Hochster engine handles at most 64 variables".into(),
            ));
        }
        let gens: Vec<u64> = i
            .gens()
            .iter()
            .map(|g| {
                used.iter()
                    .enumerate()
                    .filter(|&(_, &v)| g.exponents()[v] > 0)
                    .map(|(k, _)| 1u64 << k)
                    .sum()
            })
            .collect();
        let unit = i.is_unit();
        let subsets = if unit {
            Vec::new()
        } else if used.len() <= EXHAUSTIVE_SCAN_VARS {
            (1u64..1 << used.len())
                .filter(|&w| covered_part(&gens, w) == w)
                .collect()
        } else {
            union_family(&gens)
        };
        Ok(HochsterPlan {
            gens,
            subsets,
            field,
            unit,
        })
    }

    /// Candidate subsets `W` (non-cones), ascending.
    pub fn subsets(&self) -> &[u64] {
        &self.subsets
    }

    /// Entries `(i, j, rank)` contributed by `W`.
    pub fn contribution(&self, w: u64, memo: &mut HomologyMemo) -> Vec<(usize, usize, u64)> {
        let inside: Vec<u64> = self.gens.iter().copied().filter(|&g| g & !w == 0).collect();
        let mut h = alloc::vec![1usize];
        for comp in components(&inside) {
            let piece = component_homology(&comp, self.field, memo);
            h = join(&h, &piece);
            if h.is_empty() {
                return Vec::new();
            }
        }
        let j = w.count_ones() as usize;
        h.iter()
            .enumerate()
            .filter(|&(p, &r)| r > 0 && p < j)
            .map(|(p, &r)| (j - p - 1, j, r as u64))
            .collect()
    }

    pub fn run(&self) -> BettiTable {
        let mut table = BettiTable::new();
        if self.unit {
            table.add(0, 0, 1);
            return table;
        }
        let mut memo = HomologyMemo::new();
        for &w in &self.subsets {
            for (i, j, r) in self.contribution(w, &mut memo) {
                table.add(i, j, r);
            }
        }
        table
    }
}

pub fn betti_hochster(i: &MonomialIdeal, field: Field, max_vars: usize) -> Result<BettiTable> {
    Ok(HochsterPlan::new(i, field, max_vars)?.run())
}

/// Stanley–Reisner complex: subsets containing no generator support.
pub fn stanley_reisner_complex(i: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !i.stats().is_squarefree {
        return Err(Error::Ideal("Stanley–Reisner complex needs a squarefree ideal".into()));
    }
    if i.nvars() > 64 {
        return Err(Error::LimitExceeded("at most 64 variables".into()));
    }
    let gens: Vec<u64> = i
        .gens()
        .iter()
        .map(|g| g.support().iter().map(|&v| 1u64 << v).sum())
        .collect();
    if gens.contains(&0) {
        return SimplicialComplex::void(i.vars().to_vec());
    }
    let faces = avoiding_faces(i.nvars(), &gens);
    let facets: Vec<u64> = faces
        .iter()
        .copied()
        .filter(|&f| (0..i.nvars()).all(|v| f >> v & 1 == 1 || !is_face(&gens, f | 1 << v)))
        .collect();
    SimplicialComplex::from_facets(i.vars().to_vec(), &facets)
}

fn is_face(gens: &[u64], f: u64) -> bool {
    !gens.iter().any(|&g| g & !f == 0)
}

fn covered_part(gens: &[u64], w: u64) -> u64 {
    gens.iter().filter(|&&g| g & !w == 0).fold(0, |acc, &g| acc | g)
}

fn union_family(gens: &[u64]) -> Vec<u64> {
    let mut family: BTreeSet<u64> = BTreeSet::new();
    for &g in gens {
        let grown: Vec<u64> = family.iter().map(|&u| u | g).collect();
        family.insert(g);
        family.extend(grown);
    }
    family.into_iter().collect()
}

/// Generators grouped into connected components (sharing a vertex).
fn components(gens: &[u64]) -> Vec<Vec<u64>> {
    let mut comps: Vec<(u64, Vec<u64>)> = Vec::new();
    for &g in gens {
        let mut merged = (g, alloc::vec![g]);
        let mut k = 0;
        while k < comps.len() {
            if comps[k].0 & merged.0 != 0 {
                let (mask, list) = comps.swap_remove(k);
                merged.0 |= mask;
                merged.1.extend(list);
            } else {
                k += 1;
            }
        }
        comps.push(merged);
    }
    comps.into_iter().map(|(_, list)| list).collect()
}

/// Relabels the vertices of a component to `0..k` in increasing order.
fn compress(comp: &[u64]) -> (usize, Vec<u64>) {
    let support = comp.iter().fold(0u64, |a, &g| a | g);
    let positions: Vec<usize> = ones(support).collect();
    let mut masks: Vec<u64> = comp
        .iter()
        .map(|&g| {
            positions
                .iter()
                .enumerate()
                .filter(|&(_, &v)| g >> v & 1 == 1)
                .map(|(k, _)| 1u64 << k)
                .sum()
        })
        .collect();
    masks.sort_unstable();
    (positions.len(), masks)
}

fn component_homology(comp: &[u64], field: Field, memo: &mut HomologyMemo) -> Vec<usize> {
    let (k, masks) = compress(comp);
    let mut key = alloc::vec![k as u64];
    key.extend(&masks);
    if let Some(h) = memo.seen.get(&key) {
        return h.clone();
    }
    // the nerve has at most 2^m faces; the direct complex grows with k
    let h = if 2 * masks.len() <= k {
        dual_homology(k, &masks, field)
    } else {
        direct_homology(k, &masks, field)
    };
    memo.seen.insert(key, h.clone());
    h
}

/// Homology of the complex on `0..k` whose minimal non-faces are `masks`,
/// from its faces.
fn direct_homology(k: usize, masks: &[u64], field: Field) -> Vec<usize> {
    shifted_homology(&group_by_size(avoiding_faces(k, masks).into_iter()), field)
}

/// Same homology by Alexander duality. The dual complex on `0..k` has the
/// facets `full \ g`; they and their intersections are simplices, so it has
/// the homology of its nerve, whose faces are the generator sets with union
/// short of `full`. With `H̃_i(Δ) ≅ H̃_{k-i-3}(Δ^∨)` the shifted vectors
/// are reverses of each other: `h_Δ[p] = h_N[k-1-p]`.
fn dual_homology(k: usize, masks: &[u64], field: Field) -> Vec<usize> {
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    if masks == [full] {
        // boundary of a simplex
        let mut h = alloc::vec![0usize; k];
        h[k - 1] = 1;
        return h;
    }
    let mut faces = alloc::vec![0u64];
    let mut stack = alloc::vec![(0u64, 0u64, 0usize)];
    while let Some((set, union, next)) = stack.pop() {
        for (i, &g) in masks.iter().enumerate().skip(next) {
            let grown = union | g;
            if grown != full {
                faces.push(set | 1 << i);
                stack.push((set | 1 << i, grown, i + 1));
            }
        }
    }
    let nerve = shifted_homology(&group_by_size(faces.into_iter()), field);
    let mut h: Vec<usize> = (0..k).map(|p| nerve.get(k - 1 - p).copied().unwrap_or(0)).collect();
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// All subsets of `0..n` containing no mask of `gens`, by depth-first search.
fn avoiding_faces(n: usize, gens: &[u64]) -> Vec<u64> {
    let mut by_vertex: Vec<Vec<u64>> = alloc::vec![Vec::new(); n];
    for &g in gens {
        if g != 0 {
            by_vertex[63 - g.leading_zeros() as usize].push(g);
        }
    }
    let mut faces = alloc::vec![0u64];
    let mut stack = alloc::vec![(0u64, 0usize)];
    while let Some((face, next)) = stack.pop() {
        for v in next..n {
            let grown = face | 1 << v;
            // a generator newly contained must have v as its top vertex
            if by_vertex[v].iter().all(|&g| g & !grown != 0) {
                faces.push(grown);
                stack.push((grown, v + 1));
            }
        }
    }
    faces
}

/// Shifted homology of a join: plain convolution.
fn join(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0usize; a.len() + b.len() - 1];
    for (p, &x) in a.iter().enumerate() {
        for (q, &y) in b.iter().enumerate() {
            out[p + q] += x * y;
        }
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Plain Hochster sum over every subset with no shortcuts, for cross-checks.
#[cfg(test)]
pub(crate) fn betti_hochster_exhaustive(i: &MonomialIdeal, field: Field) -> BettiTable {
    let n = i.nvars();
    assert!(n <= 16, "exhaustive reference is for small rings");
    let gens: Vec<u64> = i
        .gens()
        .iter()
        .map(|g| g.support().iter().map(|&v| 1u64 << v).sum())
        .collect();
    let mut table = BettiTable::new();
    for w in 0u64..1 << n {
        let local: Vec<u64> = gens.iter().copied().filter(|&g| g & !w == 0).collect();
        let faces: Vec<u64> = avoiding_faces(n, &local).into_iter().filter(|&f| f & !w == 0).collect();
        let h = shifted_homology(&group_by_size(faces.into_iter()), field);
        let j = w.count_ones() as usize;
        for (p, &r) in h.iter().enumerate() {
            if r > 0 && p < j {
                table.add(j - p - 1, j, r as u64);
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::monomial::{edge_ideal, ring, Monomial};
    use alloc::vec;

    fn table(t: &BettiTable) -> Vec<(usize, usize, u64)> {
        t.entries().collect()
    }

    #[test]
    fn single_generator() {
        let i = MonomialIdeal::new(ring(&["x", "y"]), vec![Monomial::from_exponents(vec![1, 1])]).unwrap();
        let t = betti_hochster(&i, Field::Rational, 16).unwrap();
        assert_eq!(table(&t), [(0, 2, 1)]);
        assert_eq!(t.regularity(), Some(2));
    }

    #[test]
    fn triangle() {
        let t = betti_hochster(&edge_ideal(&Graph::complete(3).unwrap()), Field::Rational, 16).unwrap();
        assert_eq!(table(&t), [(0, 2, 3), (1, 3, 2)]);
    }

    #[test]
    fn stanley_reisner_of_edge_ideals() {
        let sr = stanley_reisner_complex(&edge_ideal(&Graph::complete(3).unwrap())).unwrap();
        assert_eq!(sr.facets(), [0b001, 0b010, 0b100]);
        let sr = stanley_reisner_complex(&edge_ideal(&Graph::cycle(5).unwrap())).unwrap();
        // independence complex of C5 is again a 5-cycle
        assert_eq!(sr.f_vector(), [1, 5, 5]);
        let h: Vec<_> = super::super::complex::reduced_homology_ranks(&sr, Field::Rational)
            .into_iter()
            .collect();
        assert_eq!(h, [(1, 1)]);
        let xy = MonomialIdeal::new(ring(&["x", "y"]), vec![Monomial::from_exponents(vec![1, 1])]).unwrap();
        assert_eq!(stanley_reisner_complex(&xy).unwrap().facets(), [0b01, 0b10]);
        let sq = MonomialIdeal::new(ring(&["x"]), vec![Monomial::from_exponents(vec![2])]).unwrap();
        assert!(stanley_reisner_complex(&sq).is_err());
    }

    #[test]
    fn c5_regularity_three() {
        let t = betti_hochster(&edge_ideal(&Graph::cycle(5).unwrap()), Field::Rational, 16).unwrap();
        assert_eq!(t.regularity(), Some(3));
    }

    #[test]
    fn limit_refused() {
        let i = edge_ideal(&Graph::path(6).unwrap());
        assert!(matches!(
            betti_hochster(&i, Field::Rational, 5),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn union_family_matches_scan() {
        let g = Graph::cycle(7).unwrap();
        let gens: Vec<u64> = g.edges().iter().map(|&(a, b)| 1 << a | 1 << b).collect();
        let scanned: Vec<u64> = (1u64..1 << 7).filter(|&w| covered_part(&gens, w) == w).collect();
        assert_eq!(union_family(&gens), scanned);
    }

    fn arb_squarefree() -> impl proptest::strategy::Strategy<Value = MonomialIdeal> {
        use proptest::prelude::*;
        proptest::collection::vec(1u64..128, 1..7).prop_map(|masks| {
            let gens = masks
                .iter()
                .map(|&m| Monomial::from_exponents((0..7).map(|v| (m >> v & 1) as u32).collect()))
                .collect();
            MonomialIdeal::new(ring(&["a", "b", "c", "d", "e", "f", "g"]), gens).unwrap()
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn shortcuts_match_plain_sum(i in arb_squarefree()) {
            let fast = betti_hochster(&i, Field::Rational, 16).unwrap();
            proptest::prop_assert_eq!(fast, betti_hochster_exhaustive(&i, Field::Rational));
        }

        #[test]
        fn duality_matches_faces(
            k in 1usize..9,
            raw in proptest::collection::vec(1u64..512, 1..7),
            p in proptest::sample::select(vec![0u32, 2, 3]),
        ) {
            let full = (1u64 << k) - 1;
            let masks: Vec<u64> = raw.iter().map(|&m| m & full).filter(|&m| m != 0).collect();
            proptest::prop_assume!(!masks.is_empty());
            let field = Field::from_characteristic(p).unwrap();
            proptest::prop_assert_eq!(dual_homology(k, &masks, field), direct_homology(k, &masks, field));
        }
    }
}
