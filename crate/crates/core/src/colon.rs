//! Quadratic structure of `(IJ : ab)` for edge ideals `I = I(H) ⊆ J = I(G)`
//! and the graph attached to its polarization.
//!
//! For an edge `ab` of `H`,
//!
//! ```text
//! (IJ : ab) = J + (pq : p ∈ N_G(a), q ∈ N_H(b)) + (rs : r ∈ N_H(a), s ∈ N_G(b))
//! ```
//!
//! where `p = q` contributes the square `p²`. [`colon_by_theorem`] builds the
//! right-hand side; [`direct_colon`] computes the left-hand side from the
//! product, and the two are compared by the callers.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::monomial::{edge_ideal, Monomial, MonomialIdeal};

/// `J + K1 + K2` with its pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonDecomposition {
    pub edge: (String, String),
    /// `J`, the edge ideal of `G`.
    pub base: MonomialIdeal,
    /// `pq` with `p ∈ N_G(a)`, `q ∈ N_H(b)`, before minimalization.
    pub k1: Vec<Monomial>,
    /// `rs` with `r ∈ N_H(a)`, `s ∈ N_G(b)`, before minimalization.
    pub k2: Vec<Monomial>,
    /// Minimal generators of `J + K1 + K2`.
    pub ideal: MonomialIdeal,
}

impl ColonDecomposition {
    /// Minimal generators of the colon that are not generators of `J`.
    pub fn extra_generators(&self) -> Vec<Monomial> {
        self.ideal
            .gens()
            .iter()
            .filter(|g| !self.base.gens().contains(g))
            .cloned()
            .collect()
    }
}

/// Validated indices of `a`, `b` in `g` and of `h`'s neighbourhoods mapped into `g`.
struct Setup {
    a: usize,
    b: usize,
    h_nbrs_a: Vec<usize>,
    h_nbrs_b: Vec<usize>,
}

fn setup(h: &Graph, g: &Graph, (a, b): (&str, &str)) -> Result<Setup> {
    if !h.subgraph_relation(g).is_subgraph() {
        return Err(Error::Precondition("H is not a subgraph of G".into()));
    }
    if !h.has_edge_named(a, b) {
        return Err(Error::Precondition(format!("{a}-{b} is not an edge of H")));
    }
    let to_g = |v: usize| g.index_of(h.name(v)).expect("H is a subgraph of G");
    let (ha, hb) = (h.require_index(a)?, h.require_index(b)?);
    let mut h_nbrs_a: Vec<usize> = h.neighbors(ha).iter().map(|&v| to_g(v)).collect();
    let mut h_nbrs_b: Vec<usize> = h.neighbors(hb).iter().map(|&v| to_g(v)).collect();
    h_nbrs_a.sort_unstable();
    h_nbrs_b.sort_unstable();
    Ok(Setup {
        a: g.require_index(a)?,
        b: g.require_index(b)?,
        h_nbrs_a,
        h_nbrs_b,
    })
}

pub fn colon_by_theorem(h: &Graph, g: &Graph, ab: (&str, &str)) -> Result<ColonDecomposition> {
    let s = setup(h, g, ab)?;
    let n = g.vertex_count();
    let products = |left: &[usize], right: &[usize]| -> Vec<Monomial> {
        left.iter()
            .flat_map(|&p| right.iter().map(move |&q| Monomial::squarefree(n, &[p, q])))
            .collect()
    };
    let k1 = products(g.neighbors(s.a), &s.h_nbrs_b);
    let k2 = products(&s.h_nbrs_a, g.neighbors(s.b));
    let base = edge_ideal(g);
    let gens = base.gens().iter().chain(&k1).chain(&k2).cloned().collect();
    let ideal = MonomialIdeal::new(g.names().to_vec(), gens)?;
    Ok(ColonDecomposition {
        edge: (ab.0.into(), ab.1.into()),
        base,
        k1,
        k2,
        ideal,
    })
}

/// `(I(H) I(G) : ab)` computed from the product, over the ring `V(G)`.
pub fn direct_colon(h: &Graph, g: &Graph, ab: (&str, &str)) -> Result<MonomialIdeal> {
    let s = setup(h, g, ab)?;
    let j = edge_ideal(g);
    let i = edge_ideal(h).extend_ring(j.vars())?;
    let m = Monomial::squarefree(g.vertex_count(), &[s.a, s.b]);
    i.product(&j)?.colon(&m)
}

/// The graph `P` of the polarized colon ideal, with the fresh vertex `z_x`
/// recorded for every square `x²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedGraph {
    pub graph: Graph,
    /// `(x, z_x)` pairs, in vertex order of `x`.
    pub fresh_vertex_map: Vec<(String, String)>,
}

impl AssociatedGraph {
    pub fn fresh_partner(&self, x: &str) -> Option<&str> {
        self.fresh_vertex_map
            .iter()
            .find(|(v, _)| v == x)
            .map(|(_, z)| z.as_str())
    }
}

/// Name used for the fresh partner of `x`: `z_<x>`, primed until unused in `g`.
pub fn fresh_partner_name(g: &Graph, x: &str) -> String {
    let mut name = format!("z_{x}");
    while g.index_of(&name).is_some() {
        name.push('\'');
    }
    name
}

pub fn associated_graph(h: &Graph, g: &Graph, ab: (&str, &str)) -> Result<AssociatedGraph> {
    let colon = colon_by_theorem(h, g, ab)?.ideal;
    if let Some(bad) = colon.gens().iter().find(|m| m.degree() != 2) {
        return Err(Error::Precondition(format!(
            "internal: colon generator {} is not quadratic",
            bad.display(colon.vars())
        )));
    }
    let pol = colon.polarize();
    let mut names: Vec<String> = g.names().to_vec();
    let mut fresh_vertex_map = Vec::new();
    let mut target_to_vertex = Vec::with_capacity(pol.copies.len());
    for &(src, copy) in &pol.copies {
        if copy == 1 {
            target_to_vertex.push(src);
        } else {
            let x = g.name(src);
            let z = fresh_partner_name(g, x);
            fresh_vertex_map.push((String::from(x), z.clone()));
            target_to_vertex.push(names.len());
            names.push(z);
        }
    }
    let pairs = pol
        .target
        .gens()
        .iter()
        .map(|m| {
            let sup = m.support();
            (target_to_vertex[sup[0]], target_to_vertex[sup[1]])
        })
        .collect();
    Ok(AssociatedGraph {
        graph: Graph::from_indexed(names, pairs),
        fresh_vertex_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SubgraphRelation;

    pub(crate) fn paper_pair() -> (Graph, Graph) {
        let names = ["x1", "x2", "x3", "x4", "x5", "x6"];
        let g = Graph::new(
            &names,
            &[
                ("x1", "x2"),
                ("x2", "x3"),
                ("x3", "x4"),
                ("x4", "x5"),
                ("x5", "x6"),
                ("x1", "x6"),
                ("x4", "x6"),
            ],
        )
        .unwrap();
        let h = Graph::new(&["x4", "x5", "x6"], &[("x4", "x5"), ("x5", "x6"), ("x4", "x6")]).unwrap();
        (h, g)
    }

    fn butterfly() -> (Graph, Graph) {
        let g = Graph::new(
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
        .unwrap();
        let h = Graph::new(&["x2", "x3", "x4", "x5"], &[("x2", "x3"), ("x4", "x5")]).unwrap();
        (h, g)
    }

    #[test]
    fn paper_colon_example() {
        let (h, g) = paper_pair();
        let d = colon_by_theorem(&h, &g, ("x4", "x5")).unwrap();
        assert_eq!(d.ideal, direct_colon(&h, &g, ("x4", "x5")).unwrap());
        let mut shown: Vec<String> = d
            .extra_generators()
            .iter()
            .map(|m| format!("{}", m.display(d.ideal.vars())))
            .collect();
        shown.sort();
        assert_eq!(shown, ["x3*x6", "x6^2"]);
    }

    #[test]
    fn single_edge() {
        let e = Graph::path(2).unwrap();
        let d = colon_by_theorem(&e, &e, ("x1", "x2")).unwrap();
        assert_eq!(d.ideal, edge_ideal(&e));
        let p = associated_graph(&e, &e, ("x1", "x2")).unwrap();
        assert_eq!(p.graph, e);
        assert!(p.fresh_vertex_map.is_empty());
    }

    #[test]
    fn butterfly_matches_direct_colon_on_every_edge() {
        let (h, g) = butterfly();
        for (a, b) in h.edge_names() {
            let d = colon_by_theorem(&h, &g, (a, b)).unwrap();
            assert_eq!(d.ideal, direct_colon(&h, &g, (a, b)).unwrap());
        }
    }

    #[test]
    fn butterfly_product_minimal_generators() {
        // oracle: pairwise divisibility over the 12 raw products
        let (h, g) = butterfly();
        let j = edge_ideal(&g);
        let i = edge_ideal(&h).extend_ring(j.vars()).unwrap();
        let raw: Vec<Monomial> = i
            .gens()
            .iter()
            .flat_map(|a| j.gens().iter().map(move |b| a.mul(b)))
            .collect();
        assert_eq!(raw.len(), 12);
        let mut expected: Vec<Monomial> = raw
            .iter()
            .filter(|m| !raw.iter().any(|o| o != *m && o.divides(m)))
            .cloned()
            .collect();
        expected.sort();
        expected.dedup();
        let mut got = i.product(&j).unwrap().gens().to_vec();
        got.sort();
        assert_eq!(got, expected);
        assert!(i.product(&j).unwrap().stats().equigenerated);
        assert_eq!(i.product(&j).unwrap().stats().max_gen_degree, 4);
    }

    #[test]
    fn associated_graph_of_paper_example() {
        let (h, g) = paper_pair();
        let p = associated_graph(&h, &g, ("x4", "x5")).unwrap();
        assert_eq!(g.subgraph_relation(&p.graph), SubgraphRelation::Subgraph);
        let z = p.fresh_partner("x6").unwrap();
        assert_eq!(z, "z_x6");
        let mut new_edges: Vec<(&str, &str)> = p
            .graph
            .edge_names()
            .into_iter()
            .filter(|(a, b)| !g.has_edge_named(a, b))
            .collect();
        new_edges.sort();
        assert_eq!(new_edges, [("x3", "x6"), ("x6", "z_x6")]);
    }

    #[test]
    fn triangle_gets_pendants() {
        let k3 = Graph::complete(3).unwrap();
        let p = associated_graph(&k3, &k3, ("x1", "x2")).unwrap();
        // N(x1) \ {x2} = N(x2) \ {x1} = {x3}: the square x3² appears
        assert_eq!(p.fresh_vertex_map, [("x3".into(), "z_x3".into())]);
        assert_eq!(p.graph.edge_count(), 4);
        assert!(p.graph.has_edge_named("x3", "z_x3"));
    }

    #[test]
    fn preconditions() {
        let (h, g) = paper_pair();
        assert!(colon_by_theorem(&h, &g, ("x1", "x2")).is_err());
        assert!(colon_by_theorem(&g, &h, ("x4", "x5")).is_err());
    }
}
