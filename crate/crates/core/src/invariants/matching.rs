//! Matching numbers by branch-and-bound over vertex bitmasks.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::bits::{low_bit, ones};

type Edge = (usize, usize);

/// Vertices of `avail` that still have a neighbour inside `avail`.
fn active(adj: &[u64], avail: u64) -> u64 {
    let mut act = 0;
    for v in ones(avail) {
        if adj[v] & avail != 0 {
            act |= 1 << v;
        }
    }
    act
}

/// Maximum matching size `mat(G)` with one witness matching.
pub fn maximum_matching(g: &Graph) -> Result<Vec<Edge>> {
    let adj = g.adjacency_masks()?;
    let mut best = greedy_matching(&adj, full_mask(g.vertex_count()));
    let mut current = Vec::new();
    max_matching_rec(&adj, full_mask(g.vertex_count()), &mut current, &mut best);
    Ok(sorted(best))
}

pub fn matching_number(g: &Graph) -> Result<usize> {
    Ok(maximum_matching(g)?.len())
}

fn greedy_matching(adj: &[u64], mut avail: u64) -> Vec<Edge> {
    let mut m = Vec::new();
    while let Some(v) = low_bit(active(adj, avail)) {
        let w = low_bit(adj[v] & avail).expect("active vertex has a neighbour");
        m.push((v, w));
        avail &= !((1 << v) | (1 << w));
    }
    m
}

fn max_matching_rec(adj: &[u64], avail: u64, current: &mut Vec<Edge>, best: &mut Vec<Edge>) {
    let act = active(adj, avail);
    if current.len() + act.count_ones() as usize / 2 <= best.len() {
        return;
    }
    let Some(v) = low_bit(act) else {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    };
    for w in ones(adj[v] & avail) {
        current.push((v, w));
        max_matching_rec(adj, avail & !((1 << v) | (1 << w)), current, best);
        current.pop();
    }
    max_matching_rec(adj, avail & !(1 << v), current, best);
}

/// Maximum induced matching `ν(G)` with one witness.
pub fn maximum_induced_matching(g: &Graph) -> Result<Vec<Edge>> {
    let adj = g.adjacency_masks()?;
    Ok(sorted(induced_search(&adj, &adj, full_mask(g.vertex_count()))))
}

pub fn induced_matching_number(g: &Graph) -> Result<usize> {
    Ok(maximum_induced_matching(g)?.len())
}

/// Largest set of `h`-edges that is an induced matching of `g`, as edges of `g`.
pub fn maximum_nu_gh(h: &Graph, g: &Graph) -> Result<Vec<Edge>> {
    if !h.subgraph_relation(g).is_subgraph() {
        return Err(Error::Precondition("H is not a subgraph of G".into()));
    }
    let gadj = g.adjacency_masks()?;
    let mut hadj = alloc::vec![0u64; g.vertex_count()];
    for &(i, j) in h.edges() {
        let (a, b) = (
            g.index_of(h.name(i)).expect("subgraph vertex"),
            g.index_of(h.name(j)).expect("subgraph vertex"),
        );
        hadj[a] |= 1 << b;
        hadj[b] |= 1 << a;
    }
    Ok(sorted(induced_search(&hadj, &gadj, full_mask(g.vertex_count()))))
}

pub fn nu_gh(h: &Graph, g: &Graph) -> Result<usize> {
    Ok(maximum_nu_gh(h, g)?.len())
}

/// Induced matchings built from `pick` edges, induced with respect to `host`.
fn induced_search(pick: &[u64], host: &[u64], avail: u64) -> Vec<Edge> {
    fn rec(pick: &[u64], host: &[u64], avail: u64, current: &mut Vec<Edge>, best: &mut Vec<Edge>) {
        let act = active(pick, avail);
        if current.len() + act.count_ones() as usize / 2 <= best.len() && !best.is_empty() {
            return;
        }
        let Some(v) = low_bit(act) else {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        };
        for w in ones(pick[v] & avail) {
            current.push((v, w));
            let blocked = host[v] | host[w] | (1 << v) | (1 << w);
            rec(pick, host, avail & !blocked, current, best);
            current.pop();
        }
        rec(pick, host, avail & !(1 << v), current, best);
    }
    let mut best = Vec::new();
    rec(pick, host, avail, &mut Vec::new(), &mut best);
    best
}

/// Smallest maximal matching `MM(G)` with one witness.
pub fn minimum_maximal_matching(g: &Graph) -> Result<Vec<Edge>> {
    let adj = g.adjacency_masks()?;
    let n = g.vertex_count();
    let mut best = greedy_matching(&adj, full_mask(n));
    let mut current = Vec::new();
    mm_rec(&adj, g.edges(), 0, 0, &mut current, &mut best);
    Ok(sorted(best))
}

pub fn min_maximal_matching(g: &Graph) -> Result<usize> {
    Ok(minimum_maximal_matching(g)?.len())
}

/// `matched`: endpoints of the partial matching; `single`: vertices committed
/// to staying unmatched. The branch point is the first edge with both ends
/// unmatched; maximality forces one of its endpoints into the matching.
fn mm_rec(adj: &[u64], edges: &[Edge], matched: u64, single: u64, current: &mut Vec<Edge>, best: &mut Vec<Edge>) {
    if current.len() >= best.len() {
        return;
    }
    let open = edges
        .iter()
        .find(|&&(u, v)| (matched >> u) & 1 == 0 && (matched >> v) & 1 == 0);
    let Some(&(u, v)) = open else {
        *best = current.clone();
        return;
    };
    let free = !(matched | single);
    if (single >> u) & 1 == 0 {
        for w in ones(adj[u] & free) {
            current.push((u.min(w), u.max(w)));
            mm_rec(adj, edges, matched | (1 << u) | (1 << w), single, current, best);
            current.pop();
        }
    }
    if (single >> v) & 1 == 0 {
        let single = single | (1 << u);
        let free = free & !(1 << u);
        for w in ones(adj[v] & free) {
            current.push((v.min(w), v.max(w)));
            mm_rec(adj, edges, matched | (1 << v) | (1 << w), single, current, best);
            current.pop();
        }
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn sorted(mut m: Vec<Edge>) -> Vec<Edge> {
    for e in &mut m {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    m.sort_unstable();
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn butterfly() -> Graph {
        Graph::new(
            &["x1", "x2", "x3", "x4", "x5"],
            &[
                ("x1", "x2"),
                ("x1", "x3"),
                ("x1", "x4"),
                ("x1", "x5"),
                ("x2", "x3"),
                ("x4", "x5"),
            ],
        )
        .unwrap()
    }

    /// Exhaustive oracle over all edge subsets.
    fn brute(g: &Graph) -> (usize, usize, usize) {
        let edges = g.edges();
        let m = edges.len();
        let (mut mat, mut nu, mut mm) = (0, 0, usize::MAX);
        for mask in 0u32..(1 << m) {
            let chosen: Vec<Edge> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| edges[k]).collect();
            let disjoint = chosen.iter().enumerate().all(|(a, e)| {
                chosen[a + 1..]
                    .iter()
                    .all(|f| e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1)
            });
            if !disjoint {
                continue;
            }
            mat = mat.max(chosen.len());
            let induced = chosen.iter().enumerate().all(|(a, e)| {
                chosen[a + 1..].iter().all(|f| {
                    !g.has_edge(e.0, f.0) && !g.has_edge(e.0, f.1) && !g.has_edge(e.1, f.0) && !g.has_edge(e.1, f.1)
                })
            });
            if induced {
                nu = nu.max(chosen.len());
            }
            let touched = |x: usize| chosen.iter().any(|e| e.0 == x || e.1 == x);
            if edges.iter().all(|&(a, b)| touched(a) || touched(b)) {
                mm = mm.min(chosen.len());
            }
        }
        (mat, nu, mm)
    }

    #[test]
    fn paper_and_trivial_values() {
        assert_eq!(matching_number(&butterfly()).unwrap(), 2);
        let c8 = Graph::cycle(8).unwrap();
        assert_eq!(matching_number(&c8).unwrap(), 4);
        assert_eq!(induced_matching_number(&c8).unwrap(), 2);
        assert_eq!(induced_matching_number(&Graph::cycle(16).unwrap()).unwrap(), 5);
        for n in 2..7 {
            assert_eq!(induced_matching_number(&Graph::complete(n).unwrap()).unwrap(), 1);
        }
        let empty = Graph::new(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(matching_number(&empty).unwrap(), 0);
        assert_eq!(induced_matching_number(&empty).unwrap(), 0);
        assert_eq!(min_maximal_matching(&empty).unwrap(), 0);
    }

    #[test]
    fn minimum_maximal_matching_values() {
        // frozen from the exhaustive oracle below
        assert_eq!(brute(&Graph::cycle(8).unwrap()).2, 3);
        assert_eq!(brute(&Graph::complete(4).unwrap()).2, 2);
        assert_eq!(min_maximal_matching(&Graph::cycle(8).unwrap()).unwrap(), 3);
        assert_eq!(min_maximal_matching(&Graph::complete(4).unwrap()).unwrap(), 2);
        assert_eq!(min_maximal_matching(&Graph::path(2).unwrap()).unwrap(), 1);
    }

    #[test]
    fn nu_gh_examples() {
        let c8 = Graph::cycle(8).unwrap();
        let h = Graph::new(&["x1", "x2", "x3", "x4"], &[("x1", "x2"), ("x3", "x4")]).unwrap();
        assert_eq!(nu_gh(&h, &c8).unwrap(), 1);
        assert_eq!(induced_matching_number(&h).unwrap(), 2);
        let hb = Graph::new(&["x2", "x3", "x4", "x5"], &[("x2", "x3"), ("x4", "x5")]).unwrap();
        assert_eq!(nu_gh(&hb, &butterfly()).unwrap(), 2);
        assert_eq!(nu_gh(&c8, &c8).unwrap(), 2);
        assert!(nu_gh(&Graph::complete(3).unwrap(), &c8).is_err());
    }

    #[test]
    fn agrees_with_exhaustive_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(2..8);
            let names: Vec<alloc::string::String> = (0..n).map(|i| alloc::format!("v{i}")).collect();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.45) {
                        edges.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
            let g = Graph::new(&names, &edges).unwrap();
            if g.edge_count() > 14 {
                continue;
            }
            let (mat, nu, mm) = brute(&g);
            let mm = if g.edge_count() == 0 { 0 } else { mm };
            assert_eq!(matching_number(&g).unwrap(), mat);
            assert_eq!(induced_matching_number(&g).unwrap(), nu);
            assert_eq!(min_maximal_matching(&g).unwrap(), mm);
        }
    }
}
