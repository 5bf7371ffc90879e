//! Co-chordal covers.
//!
//! A graph is co-chordal iff its edges admit an order in which every prefix
//! graph is 2K2-free (Benzaken). Every prefix of such an order is again
//! co-chordal, which is what [`cochordal_edge_order`] searches for.
//!
//! The cover number works on the complement: an edge set `F ⊆ E(G)` is
//! co-chordal iff the complement of `(V, F)` is a chordal supergraph of `G^c`,
//! so the inclusion-maximal co-chordal classes are exactly the complements of
//! the minimal triangulations of `G^c`. Those are enumerated by an elimination
//! DP over vertex subsets, then a minimum set cover is found by iterative
//! deepening from `ν(G)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::bits::{ones, ones128};
use super::chordal::is_cochordal;
use super::matching::induced_matching_number;

type Edge = (usize, usize);

/// Vertex limit of the exact cover search (the DP visits every vertex subset).
pub const COVER_VERTEX_LIMIT: usize = 20;
/// Edge limit of the exact cover search and of edge-order backtracking.
pub const COVER_EDGE_LIMIT: usize = 128;

/// Result of a prefix check: either every prefix is 2K2-free or the first
/// prefix `r` (1-based) where the new edge forms a 2K2 with an earlier one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixCheck {
    Pass,
    Fail { prefix: usize, earlier: Edge, later: Edge },
}

impl PrefixCheck {
    pub fn passed(&self) -> bool {
        matches!(self, PrefixCheck::Pass)
    }
}

/// Checks every prefix of `order`, which must be a permutation of `E(g)`.
pub fn benzaken_prefix_check(g: &Graph, order: &[Edge]) -> Result<PrefixCheck> {
    let mut seen = alloc::vec![false; g.edge_count()];
    for &(a, b) in order {
        let id = g
            .edge_index(a, b)
            .ok_or_else(|| Error::Cover(format!("{a}-{b} is not an edge")))?;
        if core::mem::replace(&mut seen[id], true) {
            return Err(Error::Cover(format!("edge {a}-{b} repeated in order")));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Cover("order does not list every edge".into()));
    }
    Ok(prefix_check(g.vertex_count(), order))
}

/// Prefix check of an arbitrary edge sequence on `n` vertices.
pub(crate) fn prefix_check(n: usize, order: &[Edge]) -> PrefixCheck {
    let mut adj = alloc::vec![Vec::<usize>::new(); n];
    for (r, &(a, b)) in order.iter().enumerate() {
        for &(c, d) in &order[..r] {
            if forms_gap(&adj, (a, b), (c, d)) {
                return PrefixCheck::Fail {
                    prefix: r + 1,
                    earlier: (c, d),
                    later: (a, b),
                };
            }
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    PrefixCheck::Pass
}

fn forms_gap(adj: &[Vec<usize>], (a, b): Edge, (c, d): Edge) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let joined = |x: usize| adj[x].contains(&c) || adj[x].contains(&d);
    !joined(a) && !joined(b)
}

/// An edge order of `g` whose prefixes are all 2K2-free, or `None` when `g`
/// is not co-chordal.
pub fn cochordal_edge_order(g: &Graph) -> Result<Option<Vec<Edge>>> {
    if g.edge_count() > COVER_EDGE_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "{} edges exceeds the {COVER_EDGE_LIMIT}-edge order search limit",
            g.edge_count()
        )));
    }
    if !is_cochordal(g)? {
        return Ok(None);
    }
    g.adjacency_masks()?;
    let edges = g.edges();
    let mut padj = alloc::vec![0u64; g.vertex_count()];
    let mut order = Vec::with_capacity(edges.len());
    let mut dead = BTreeSet::new();
    let found = extend_order(edges, &mut padj, 0, &mut order, &mut dead);
    debug_assert!(found, "co-chordal graph must admit a prefix order");
    Ok(found.then(|| order.iter().map(|&id| edges[id]).collect()))
}

fn extend_order(
    edges: &[Edge],
    padj: &mut [u64],
    used: u128,
    order: &mut Vec<usize>,
    dead: &mut BTreeSet<u128>,
) -> bool {
    if order.len() == edges.len() {
        return true;
    }
    if dead.contains(&used) {
        return false;
    }
    for (id, &(a, b)) in edges.iter().enumerate() {
        if used >> id & 1 == 1 {
            continue;
        }
        let gap = ones128(used).any(|f| {
            let (c, d) = edges[f];
            let touch = (1u64 << c) | (1u64 << d);
            a != c && a != d && b != c && b != d && (padj[a] | padj[b]) & touch == 0
        });
        if gap {
            continue;
        }
        padj[a] |= 1 << b;
        padj[b] |= 1 << a;
        order.push(id);
        if extend_order(edges, padj, used | 1 << id, order, dead) {
            return true;
        }
        order.pop();
        padj[a] &= !(1 << b);
        padj[b] &= !(1 << a);
    }
    dead.insert(used);
    false
}

/// Ordered co-chordal classes covering a host graph, by vertex name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CochordalCover {
    pub classes: Vec<Vec<(String, String)>>,
}

impl CochordalCover {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub(crate) fn from_indexed(g: &Graph, classes: &[Vec<Edge>]) -> CochordalCover {
        CochordalCover {
            classes: classes
                .iter()
                .map(|c| c.iter().map(|&(a, b)| (g.name(a).into(), g.name(b).into())).collect())
                .collect(),
        }
    }

    /// Classes as index pairs of `g`; errors on edges outside `E(g)`.
    pub fn to_indexed(&self, g: &Graph) -> Result<Vec<Vec<Edge>>> {
        self.classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|(a, b)| {
                        let (i, j) = (g.index_of(a), g.index_of(b));
                        match (i, j) {
                            (Some(i), Some(j)) if g.has_edge(i, j) => Ok((i, j)),
                            _ => Err(Error::Cover(format!("{a}-{b} is not an edge of the host"))),
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Outcome of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverVerdict {
    Valid,
    MissingEdge(String, String),
    PrefixViolation {
        class: usize,
        prefix: usize,
        earlier: (String, String),
        later: (String, String),
    },
}

impl CoverVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CoverVerdict::Valid)
    }
}

/// Checks that the classes union to `E(g)` and that each ordered class has
/// 2K2-free prefixes.
pub fn verify_cover(g: &Graph, cover: &CochordalCover) -> Result<CoverVerdict> {
    let classes = cover.to_indexed(g)?;
    let mut covered = alloc::vec![false; g.edge_count()];
    for class in &classes {
        for &(a, b) in class {
            covered[g.edge_index(a, b).expect("checked above")] = true;
        }
    }
    if let Some(id) = covered.iter().position(|c| !c) {
        let (a, b) = g.edges()[id];
        return Ok(CoverVerdict::MissingEdge(g.name(a).into(), g.name(b).into()));
    }
    for (k, class) in classes.iter().enumerate() {
        if let PrefixCheck::Fail { prefix, earlier, later } = prefix_check(g.vertex_count(), class) {
            let named = |(a, b): Edge| (String::from(g.name(a)), String::from(g.name(b)));
            return Ok(CoverVerdict::PrefixViolation {
                class: k,
                prefix,
                earlier: named(earlier),
                later: named(later),
            });
        }
    }
    Ok(CoverVerdict::Valid)
}

/// Every inclusion-maximal co-chordal edge subset of `g`, as masks over
/// edge ids.
pub fn maximal_cochordal_classes(g: &Graph) -> Result<Vec<u128>> {
    let n = g.vertex_count();
    if n > COVER_VERTEX_LIMIT || g.edge_count() > COVER_EDGE_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "cover search handles at most {COVER_VERTEX_LIMIT} vertices and \
             {COVER_EDGE_LIMIT} edges, got {n} and {}",
            g.edge_count()
        )));
    }
    if g.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let adj = g.adjacency_masks()?;
    let full = (1u64 << n) - 1;
    let cadj: Vec<u64> = (0..n).map(|v| full & !adj[v] & !(1 << v)).collect();
    let mut edge_id = alloc::vec![alloc::vec![usize::MAX; n]; n];
    for (id, &(a, b)) in g.edges().iter().enumerate() {
        edge_id[a][b] = id;
        edge_id[b][a] = id;
    }

    // fills[S]: minimal G-edge fill sets reachable after eliminating S
    let states = 1usize << n;
    let mut fills: Vec<Vec<u128>> = alloc::vec![Vec::new(); states];
    fills[0].push(0);
    for s in 0..states {
        let current = core::mem::take(&mut fills[s]);
        if current.is_empty() || s == states - 1 {
            fills[s] = current;
            continue;
        }
        let s64 = s as u64;
        for v in ones(full & !s64) {
            let reach = reach_through(&cadj, v, s64) & !s64 & !(1 << v);
            let mut added = 0u128;
            for w in ones(reach) {
                if adj[v] >> w & 1 == 1 {
                    added |= 1 << edge_id[v][w];
                }
            }
            let next = s | 1 << v;
            for &f in &current {
                insert_minimal(&mut fills[next], f | added);
            }
        }
    }
    let all: u128 = if g.edge_count() == 128 {
        u128::MAX
    } else {
        (1u128 << g.edge_count()) - 1
    };
    let mut classes: Vec<u128> = fills[states - 1].iter().map(|f| all & !f).collect();
    classes.sort_unstable();
    classes.dedup();
    Ok(classes)
}

/// Vertices reachable from `v` by complement paths whose interior lies in `inner`.
fn reach_through(cadj: &[u64], v: usize, inner: u64) -> u64 {
    let mut reached = cadj[v];
    let mut frontier = reached & inner;
    let mut expanded = 0u64;
    while frontier != 0 {
        expanded |= frontier;
        let mut next = 0;
        for x in ones(frontier) {
            next |= cadj[x];
        }
        reached |= next;
        frontier = next & inner & !expanded;
    }
    reached
}

fn insert_minimal(list: &mut Vec<u128>, f: u128) {
    if list.iter().any(|&e| e & f == e) {
        return;
    }
    list.retain(|&e| e & f != f);
    list.push(f);
}

/// Exact `cochord(G)` with an ordered certificate.
pub fn cochord_cover(g: &Graph) -> Result<(usize, CochordalCover)> {
    if g.edge_count() == 0 {
        return Ok((0, CochordalCover::default()));
    }
    let classes = maximal_cochordal_classes(g)?;
    let m = g.edge_count();
    let all: u128 = if m == 128 { u128::MAX } else { (1u128 << m) - 1 };
    let mut by_edge: Vec<Vec<u128>> = alloc::vec![Vec::new(); m];
    for &c in &classes {
        for e in ones128(c) {
            by_edge[e].push(c);
        }
    }
    for list in &mut by_edge {
        // larger classes first, then mask order for determinism
        list.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    }
    let lower = induced_matching_number(g)?.max(1);
    let mut chosen = Vec::new();
    let mut k = lower;
    loop {
        let mut failed = BTreeSet::new();
        if set_cover(&by_edge, all, 0, k, &mut chosen, &mut failed) {
            break;
        }
        k += 1;
    }
    let mut ordered = Vec::with_capacity(chosen.len());
    for &mask in &chosen {
        let ids: Vec<usize> = ones128(mask).collect();
        let class_graph = g.with_edge_subset(&ids);
        let order = cochordal_edge_order(&class_graph)?
            .ok_or_else(|| Error::Cover("maximal class is not co-chordal".into()))?;
        ordered.push(order);
    }
    Ok((k, CochordalCover::from_indexed(g, &ordered)))
}

pub fn cochord_cover_number(g: &Graph) -> Result<usize> {
    Ok(cochord_cover(g)?.0)
}

fn set_cover(
    by_edge: &[Vec<u128>],
    all: u128,
    covered: u128,
    budget: usize,
    chosen: &mut Vec<u128>,
    failed: &mut BTreeSet<(u128, usize)>,
) -> bool {
    if covered == all {
        return true;
    }
    if budget == 0 || failed.contains(&(covered, budget)) {
        return false;
    }
    let first = (all & !covered).trailing_zeros() as usize;
    for &c in &by_edge[first] {
        chosen.push(c);
        if set_cover(by_edge, all, covered | c, budget - 1, chosen, failed) {
            return true;
        }
        chosen.pop();
    }
    failed.insert((covered, budget));
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::chordal::is_chordal;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    /// Oracle: co-chordality of every edge subset via complement chordality,
    /// then the smallest family of subsets whose union is everything.
    fn brute_cochord(g: &Graph) -> usize {
        let m = g.edge_count();
        if m == 0 {
            return 0;
        }
        let good: Vec<u32> = (1u32..1 << m)
            .filter(|&mask| {
                let ids: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
                is_chordal(&g.with_edge_subset(&ids).complement()).unwrap()
            })
            .collect();
        let all = (1u32 << m) - 1;
        let maximal: Vec<u32> = good
            .iter()
            .copied()
            .filter(|&a| !good.iter().any(|&b| b != a && b & a == a))
            .collect();
        for k in 1..=m {
            let mut idx = alloc::vec![0usize; k];
            fn rec(pos: usize, start: usize, idx: &mut [usize], sets: &[u32], all: u32) -> bool {
                if pos == idx.len() {
                    return idx.iter().fold(0, |acc, &i| acc | sets[i]) == all;
                }
                for i in start..sets.len() {
                    idx[pos] = i;
                    if rec(pos + 1, i, idx, sets, all) {
                        return true;
                    }
                }
                false
            }
            if rec(0, 0, &mut idx, &maximal, all) {
                return k;
            }
        }
        unreachable!()
    }

    fn c8_paper_cover() -> CochordalCover {
        let p = |a: &str, b: &str| (String::from(a), String::from(b));
        CochordalCover {
            classes: alloc::vec![
                alloc::vec![p("x1", "x2"), p("x2", "x3"), p("x3", "x4")],
                alloc::vec![p("x4", "x5"), p("x5", "x6"), p("x6", "x7")],
                alloc::vec![p("x7", "x8"), p("x1", "x8")],
            ],
        }
    }

    #[test]
    fn prefix_check_examples() {
        let k2 = Graph::path(2).unwrap();
        assert!(benzaken_prefix_check(&k2, &[(0, 1)]).unwrap().passed());
        let gap = Graph::disjoint_edges(2).unwrap();
        assert_eq!(
            benzaken_prefix_check(&gap, &[(0, 1), (2, 3)]).unwrap(),
            PrefixCheck::Fail {
                prefix: 2,
                earlier: (0, 1),
                later: (2, 3)
            }
        );
        let c4 = Graph::cycle(4).unwrap();
        let order = [(0, 1), (1, 2), (2, 3), (0, 3)];
        assert!(benzaken_prefix_check(&c4, &order).unwrap().passed());
        assert!(benzaken_prefix_check(&c4, &order[..3]).is_err());
        assert!(benzaken_prefix_check(&c4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).is_err());
    }

    #[test]
    fn edge_orders() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(cochordal_edge_order(&k3).unwrap().map(|o| o.len()), Some(3));
        assert_eq!(cochordal_edge_order(&Graph::disjoint_edges(2).unwrap()).unwrap(), None);
        let c4 = Graph::cycle(4).unwrap();
        let order = cochordal_edge_order(&c4).unwrap().expect("C4 is co-chordal");
        assert!(benzaken_prefix_check(&c4, &order).unwrap().passed());
    }

    #[test]
    fn cover_numbers() {
        let c8 = Graph::cycle(8).unwrap();
        let (k, cert) = cochord_cover(&c8).unwrap();
        assert_eq!(k, 3);
        assert_eq!(verify_cover(&c8, &cert).unwrap(), CoverVerdict::Valid);
        assert_eq!(cochord_cover_number(&Graph::complete(5).unwrap()).unwrap(), 1);
        assert_eq!(brute_cochord(&Graph::cycle(5).unwrap()), 2);
        assert_eq!(cochord_cover_number(&Graph::cycle(5).unwrap()).unwrap(), 2);
        let empty = Graph::new(&["a"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(cochord_cover(&empty).unwrap(), (0, CochordalCover::default()));
    }

    #[test]
    fn verify_paper_cover_of_c8() {
        let c8 = Graph::cycle(8).unwrap();
        assert!(verify_cover(&c8, &c8_paper_cover()).unwrap().is_valid());
        let mut dropped = c8_paper_cover();
        dropped.classes.pop();
        assert_eq!(
            verify_cover(&c8, &dropped).unwrap(),
            CoverVerdict::MissingEdge("x1".into(), "x8".into())
        );
        let mut bad = c8_paper_cover();
        bad.classes[0] = alloc::vec![
            ("x1".into(), "x2".into()),
            ("x3".into(), "x4".into()),
            ("x2".into(), "x3".into()),
        ];
        assert!(matches!(
            verify_cover(&c8, &bad).unwrap(),
            CoverVerdict::PrefixViolation {
                class: 0,
                prefix: 2,
                ..
            }
        ));
        let mut foreign = c8_paper_cover();
        foreign.classes[0].push(("x1".into(), "x5".into()));
        assert!(verify_cover(&c8, &foreign).is_err());
    }

    #[test]
    fn cover_number_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 40 {
            let n = rng.gen_range(3..8);
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) {
                        pairs.push((i, j));
                    }
                }
            }
            if pairs.len() > 10 {
                continue;
            }
            let g = Graph::from_indexed(names(n), pairs);
            let (k, cert) = cochord_cover(&g).unwrap();
            assert_eq!(k, brute_cochord(&g), "graph {:?}", g.edge_names());
            assert!(verify_cover(&g, &cert).unwrap().is_valid());
            assert_eq!(cert.len(), k);
            checked += 1;
        }
    }
}
