//! Chordality by maximum cardinality search, with certificates both ways.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::error::Result;
use crate::graph::Graph;

/// Evidence returned by [`chordality`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination ordering (vertex indices, eliminated first to last).
    Chordal(Vec<usize>),
    /// The vertices of an induced cycle of length at least four, in cycle order.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search; returns the visit order.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = alloc::vec![0usize; n];
    let mut done = alloc::vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // ties go to the smallest index
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        done[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
            }
        }
    }
    order
}

/// True when every vertex's later neighbours in `order` form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    let mut pos = alloc::vec![usize::MAX; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().enumerate().all(|(i, &v)| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > i).collect();
        later
            .iter()
            .enumerate()
            .all(|(k, &a)| later[k + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

pub fn chordality(g: &Graph) -> Result<Chordality> {
    let mut peo = maximum_cardinality_search(g);
    peo.reverse();
    if is_perfect_elimination_ordering(g, &peo) {
        return Ok(Chordality::Chordal(peo));
    }
    let cycle = find_chordless_cycle(g).expect("MCS failed, so a chordless cycle exists");
    Ok(Chordality::NotChordal(cycle))
}

pub fn is_chordal(g: &Graph) -> Result<bool> {
    Ok(chordality(g)?.is_chordal())
}

pub fn is_cochordal(g: &Graph) -> Result<bool> {
    is_chordal(&g.complement())
}

/// Finds a chordless cycle of length >= 4: for some vertex `v` with two
/// non-adjacent neighbours `u`, `w`, a shortest `u`-`w` path avoiding the rest
/// of `N[v]` closes such a cycle through `v`.
pub fn find_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let nb = g.neighbors(v);
        for (k, &u) in nb.iter().enumerate() {
            for &w in &nb[k + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let mut blocked = alloc::vec![false; n];
                blocked[v] = true;
                for &x in nb {
                    if x != u && x != w {
                        blocked[x] = true;
                    }
                }
                if let Some(path) = shortest_path(g, u, w, &blocked) {
                    let mut cycle = Vec::with_capacity(path.len() + 1);
                    cycle.push(v);
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: usize, to: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut prev = alloc::vec![usize::MAX; n];
    let mut seen = alloc::vec![false; n];
    let mut queue = VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = alloc::vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !seen[y] && !blocked[y] {
                seen[y] = true;
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// Checks that `cycle` is an induced cycle of `g` of length at least four.
pub fn is_induced_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: does some vertex subset of size >= 4 induce a cycle?
    fn has_long_induced_cycle(g: &Graph) -> bool {
        let n = g.vertex_count();
        (0u32..1 << n).any(|mask| {
            let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if vs.len() < 4 {
                return false;
            }
            let sub_deg = |v: usize| vs.iter().filter(|&&u| g.has_edge(u, v)).count();
            if !vs.iter().all(|&v| sub_deg(v) == 2) {
                return false;
            }
            // 2-regular and connected means a single cycle
            let mut seen = alloc::vec![vs[0]];
            let mut i = 0;
            while i < seen.len() {
                let x = seen[i];
                for &y in &vs {
                    if g.has_edge(x, y) && !seen.contains(&y) {
                        seen.push(y);
                    }
                }
                i += 1;
            }
            seen.len() == vs.len()
        })
    }

    #[test]
    fn small_examples() {
        let c4 = Graph::cycle(4).unwrap();
        match chordality(&c4).unwrap() {
            Chordality::NotChordal(c) => {
                assert_eq!(c.len(), 4);
                assert!(is_induced_cycle(&c4, &c));
            }
            other => panic!("C4 reported chordal: {other:?}"),
        }
        assert!(is_chordal(&Graph::path(6).unwrap()).unwrap());
        assert!(is_chordal(&Graph::complete(5).unwrap()).unwrap());
        assert!(is_cochordal(&c4).unwrap());
        assert!(!is_cochordal(&Graph::cycle(5).unwrap()).unwrap());
        assert!(is_cochordal(&Graph::complete(6).unwrap()).unwrap());
    }

    #[test]
    fn complement_of_c8() {
        let c8c = Graph::cycle(8).unwrap().complement();
        let expected = !has_long_induced_cycle(&c8c);
        assert!(!expected, "complement of C8 contains an induced C4");
        assert_eq!(is_chordal(&c8c).unwrap(), expected);
        assert_eq!(is_cochordal(&Graph::cycle(8).unwrap()).unwrap(), expected);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..150 {
            let n = rng.gen_range(1..9);
            let mut pairs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        pairs.push((i, j));
                    }
                }
            }
            let names = (0..n).map(|i| alloc::format!("v{i}")).collect();
            let g = Graph::from_indexed(names, pairs);
            match chordality(&g).unwrap() {
                Chordality::Chordal(peo) => {
                    assert!(!has_long_induced_cycle(&g));
                    assert!(is_perfect_elimination_ordering(&g, &peo));
                }
                Chordality::NotChordal(c) => {
                    assert!(has_long_induced_cycle(&g));
                    assert!(is_induced_cycle(&g, &c));
                }
            }
        }
    }
}
