//! Graph-class recognition by exhaustive search.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::bits::{low_bit, ones};

/// Vertex limit for the exponential recognizers (induced cycles, vertex
/// covers, dominating induced matchings).
pub const CLASS_VERTEX_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClass {
    GapFree,
    WeaklyChordal,
    Bipartite,
    UnmixedBipartite,
    DominatingInducedMatching,
    ContainsInducedC4,
    ContainsInducedDiamond,
    ContainsInducedCricket,
    /// `K_{1,n}` as an induced subgraph.
    ContainsInducedClaw(usize),
}

/// Small pattern graphs as edge lists on vertices `0..k`.
pub mod patterns {
    pub const GAP: (usize, &[(usize, usize)]) = (4, &[(0, 1), (2, 3)]);
    pub const C4: (usize, &[(usize, usize)]) = (4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    /// a-b, b-c, a-c, a-d, c-d
    pub const DIAMOND: (usize, &[(usize, usize)]) = (4, &[(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)]);
    /// w1-w3, w2-w3, w3-w4, w3-w5, w4-w5
    pub const CRICKET: (usize, &[(usize, usize)]) = (5, &[(0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]);
}

pub fn recognize_class(g: &Graph, class: GraphClass) -> Result<bool> {
    use GraphClass::*;
    match class {
        GapFree => Ok(!contains_induced(g, patterns::GAP.0, patterns::GAP.1)?),
        ContainsInducedC4 => contains_induced(g, patterns::C4.0, patterns::C4.1),
        ContainsInducedDiamond => contains_induced(g, patterns::DIAMOND.0, patterns::DIAMOND.1),
        ContainsInducedCricket => contains_induced(g, patterns::CRICKET.0, patterns::CRICKET.1),
        ContainsInducedClaw(n) => {
            if n == 0 {
                return Err(Error::Precondition("n-claw needs n >= 1".into()));
            }
            let edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
            contains_induced(g, n + 1, &edges)
        }
        Bipartite => Ok(bipartition(g).is_some()),
        WeaklyChordal => {
            limit(g)?;
            Ok(!has_long_induced_cycle(g, 5)? && !has_long_induced_cycle(&g.complement(), 5)?)
        }
        UnmixedBipartite => {
            limit(g)?;
            Ok(bipartition(g).is_some() && is_unmixed(g)?)
        }
        DominatingInducedMatching => {
            limit(g)?;
            Ok(dominating_induced_matching(g)?.is_some())
        }
    }
}

fn limit(g: &Graph) -> Result<()> {
    if g.vertex_count() > CLASS_VERTEX_LIMIT {
        return Err(Error::LimitExceeded(format!(
            "class recognition handles at most {CLASS_VERTEX_LIMIT} vertices, got {}",
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Is the pattern `(k, edges)` an induced subgraph of `g`? Backtracking over
/// injective vertex maps.
pub fn contains_induced(g: &Graph, k: usize, edges: &[(usize, usize)]) -> Result<bool> {
    let adj = g.adjacency_masks()?;
    let mut padj = alloc::vec![0u64; k];
    for &(a, b) in edges {
        padj[a] |= 1 << b;
        padj[b] |= 1 << a;
    }
    let mut image = Vec::with_capacity(k);
    Ok(embed(&adj, &padj, &mut image, 0))
}

fn embed(adj: &[u64], padj: &[u64], image: &mut Vec<usize>, used: u64) -> bool {
    let i = image.len();
    if i == padj.len() {
        return true;
    }
    for v in 0..adj.len() {
        if used >> v & 1 == 1 {
            continue;
        }
        let ok = image
            .iter()
            .enumerate()
            .all(|(j, &w)| (padj[i] >> j & 1 == 1) == (adj[v] >> w & 1 == 1));
        if ok {
            image.push(v);
            if embed(adj, padj, image, used | 1 << v) {
                return true;
            }
            image.pop();
        }
    }
    false
}

/// Two-colouring (`true` side) when bipartite.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = alloc::vec![None; n];
    for s in 0..n {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = alloc::vec![s];
        while let Some(x) = stack.pop() {
            let c = colour[x].expect("coloured");
            for &y in g.neighbors(x) {
                match colour[y] {
                    None => {
                        colour[y] = Some(!c);
                        stack.push(y);
                    }
                    Some(d) if d == c => return None,
                    _ => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.unwrap_or(false)).collect())
}

/// Searches for an induced cycle with at least `min_len` vertices.
pub fn has_long_induced_cycle(g: &Graph, min_len: usize) -> Result<bool> {
    let adj = g.adjacency_masks()?;
    let n = g.vertex_count();
    // the cycle's smallest vertex is `s`; paths grow through larger vertices
    fn grow(adj: &[u64], s: usize, path: &mut Vec<usize>, inner: u64, min_len: usize) -> bool {
        let last = *path.last().expect("non-empty path");
        let above_s = !((1u64 << s) | ((1u64 << s) - 1));
        let mut cand = adj[last] & above_s & !inner & !(1 << last);
        for &p in path.iter().take(path.len() - 1) {
            cand &= !(1 << p);
        }
        while let Some(w) = low_bit(cand) {
            cand &= cand - 1;
            // w may touch only `last` and possibly `s` among path vertices
            let interior = inner & !(1 << s);
            if adj[w] & interior != 0 {
                continue;
            }
            if adj[w] >> s & 1 == 1 {
                if path.len() + 1 >= min_len && path.len() >= 3 {
                    return true;
                }
                continue;
            }
            path.push(w);
            if grow(adj, s, path, inner | 1 << last, min_len) {
                return true;
            }
            path.pop();
        }
        false
    }
    for s in 0..n {
        for v in ones(adj[s]) {
            if v < s {
                continue;
            }
            let mut path = alloc::vec![s, v];
            if grow(&adj, s, &mut path, 1 << s, min_len) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Maximal independent sets, as bitmasks (Bron–Kerbosch with pivoting on
/// the complement).
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<u64>> {
    let adj = g.adjacency_masks()?;
    let n = g.vertex_count();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let non: Vec<u64> = (0..n).map(|v| full & !adj[v] & !(1 << v)).collect();
    let mut out = Vec::new();
    fn bk(non: &[u64], r: u64, p: u64, x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = low_bit(p | x).expect("p or x non-empty");
        let mut cand = p & !non[pivot];
        let (mut p, mut x) = (p, x);
        while let Some(v) = low_bit(cand) {
            cand &= cand - 1;
            bk(non, r | 1 << v, p & non[v], x & non[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    bk(&non, 0, full, 0, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// All minimal vertex covers have the same size.
pub fn is_unmixed(g: &Graph) -> Result<bool> {
    let sets = maximal_independent_sets(g)?;
    let n = g.vertex_count() as u32;
    let mut sizes = sets.iter().map(|s| n - s.count_ones());
    let first = sizes.next();
    Ok(sizes.all(|s| Some(s) == first))
}

/// An induced matching that is also a maximal matching, if any.
pub fn dominating_induced_matching(g: &Graph) -> Result<Option<Vec<(usize, usize)>>> {
    let adj = g.adjacency_masks()?;
    let edges = g.edges();
    fn rec(
        adj: &[u64],
        edges: &[(usize, usize)],
        next: usize,
        blocked: u64,
        covered: u64,
        current: &mut Vec<(usize, usize)>,
    ) -> bool {
        if edges
            .iter()
            .all(|&(a, b)| covered >> a & 1 == 1 || covered >> b & 1 == 1)
        {
            return true;
        }
        for k in next..edges.len() {
            let (a, b) = edges[k];
            if blocked >> a & 1 == 1 || blocked >> b & 1 == 1 {
                continue;
            }
            current.push((a, b));
            let block = adj[a] | adj[b] | 1 << a | 1 << b;
            if rec(adj, edges, k + 1, blocked | block, covered | 1 << a | 1 << b, current) {
                return true;
            }
            current.pop();
        }
        false
    }
    let mut current = Vec::new();
    Ok(rec(&adj, edges, 0, 0, 0, &mut current).then_some(current))
}

/// `Some(k)` when `g` is a single cycle `C_k` on all of its vertices.
pub fn cycle_length(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    if n < 3 || g.edge_count() != n || (0..n).any(|v| g.degree(v) != 2) {
        return None;
    }
    let mut prev = usize::MAX;
    let mut cur = 0;
    for step in 0..n {
        let nb = g.neighbors(cur);
        let next = if nb[0] != prev { nb[0] } else { nb[1] };
        prev = cur;
        cur = next;
        if cur == 0 {
            return (step + 1 == n).then_some(n);
        }
    }
    None
}

/// Smallest `n >= 1` such that `g` has no induced `n`-claw.
pub fn claw_free_threshold(g: &Graph) -> Result<usize> {
    let mut n = 1;
    while recognize_class(g, GraphClass::ContainsInducedClaw(n))? {
        n += 1;
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_recognitions() {
        let c4 = Graph::cycle(4).unwrap();
        let c8 = Graph::cycle(8).unwrap();
        assert!(recognize_class(&c4, GraphClass::GapFree).unwrap());
        assert!(!recognize_class(&c8, GraphClass::WeaklyChordal).unwrap());
        assert!(recognize_class(&c4, GraphClass::WeaklyChordal).unwrap());
        let m2 = Graph::disjoint_edges(2).unwrap();
        assert!(recognize_class(&m2, GraphClass::DominatingInducedMatching).unwrap());
        assert!(!recognize_class(&m2, GraphClass::GapFree).unwrap());
        assert!(recognize_class(&c4, GraphClass::ContainsInducedC4).unwrap());
        assert!(!recognize_class(&Graph::complete(4).unwrap(), GraphClass::ContainsInducedC4).unwrap());
        assert!(recognize_class(&c8, GraphClass::Bipartite).unwrap());
        assert!(!recognize_class(&Graph::cycle(5).unwrap(), GraphClass::Bipartite).unwrap());
    }

    #[test]
    fn patterns_and_claws() {
        let diamond = Graph::from_indexed(
            (0..4).map(|i| alloc::format!("d{i}")).collect(),
            patterns::DIAMOND.1.to_vec(),
        );
        assert!(recognize_class(&diamond, GraphClass::ContainsInducedDiamond).unwrap());
        assert!(!recognize_class(&Graph::complete(4).unwrap(), GraphClass::ContainsInducedDiamond).unwrap());
        let cricket = Graph::from_indexed(
            (0..5).map(|i| alloc::format!("w{i}")).collect(),
            patterns::CRICKET.1.to_vec(),
        );
        assert!(recognize_class(&cricket, GraphClass::ContainsInducedCricket).unwrap());
        let star = Graph::from_indexed(
            (0..4).map(|i| alloc::format!("s{i}")).collect(),
            alloc::vec![(0, 1), (0, 2), (0, 3)],
        );
        assert!(recognize_class(&star, GraphClass::ContainsInducedClaw(3)).unwrap());
        assert!(!recognize_class(&star, GraphClass::ContainsInducedClaw(4)).unwrap());
        assert_eq!(claw_free_threshold(&star).unwrap(), 4);
        assert_eq!(claw_free_threshold(&Graph::complete(5).unwrap()).unwrap(), 2);
        assert!(recognize_class(&star, GraphClass::ContainsInducedClaw(0)).is_err());
    }

    #[test]
    fn unmixed_examples() {
        // C4: minimal covers {1,3},{2,4}
        assert!(recognize_class(&Graph::cycle(4).unwrap(), GraphClass::UnmixedBipartite).unwrap());
        // P4 a-b-c-d: covers {b,c}, {a,c}, {b,d}; all size 2
        assert!(recognize_class(&Graph::path(4).unwrap(), GraphClass::UnmixedBipartite).unwrap());
        // P3: covers {b} and {a,c}
        assert!(!recognize_class(&Graph::path(3).unwrap(), GraphClass::UnmixedBipartite).unwrap());
        assert!(!recognize_class(&Graph::cycle(6).unwrap(), GraphClass::UnmixedBipartite).unwrap());
    }

    #[test]
    fn gap_free_iff_complement_has_no_induced_c4() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..9);
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        pairs.push((i, j));
                    }
                }
            }
            let g = Graph::from_indexed((0..n).map(|i| alloc::format!("v{i}")).collect(), pairs);
            assert_eq!(
                recognize_class(&g, GraphClass::GapFree).unwrap(),
                !recognize_class(&g.complement(), GraphClass::ContainsInducedC4).unwrap()
            );
            let long = has_long_induced_cycle(&g, 4).unwrap();
            assert_eq!(long, !crate::invariants::chordal::is_chordal(&g).unwrap());
        }
    }

    #[test]
    fn cycle_detection() {
        assert_eq!(cycle_length(&Graph::cycle(6).unwrap()), Some(6));
        assert_eq!(cycle_length(&Graph::path(6).unwrap()), None);
        let two_triangles = Graph::from_indexed(
            (0..6).map(|i| alloc::format!("t{i}")).collect(),
            alloc::vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        );
        assert_eq!(cycle_length(&two_triangles), None);
    }
}
