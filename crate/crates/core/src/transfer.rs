//! Transfer of a co-chordal cover of `G` to the graph `P` of the polarized
//! colon ideal `(IJ : ab)~`.
//!
//! Each ordered class of the cover is walked in order; after every trigger
//! edge a block of new edges is spliced in:
//!
//! * `{a, a_μ}` (any G-neighbour of `a`): `[a_μ, b_1] < … < [a_μ, b_β']`
//! * `{b, b_μ}` (any G-neighbour of `b`): `[b_μ, a_1] < … < [b_μ, a_α']`
//! * `{a, b}`: `{a, a_1} < … < {a, a_α'}`, then `{b, b_1} < … < {b, b_β'}`,
//!   then `[a_p, b_q]` for `p ≤ α'`, `q ≤ β'` in lexicographic order.
//!
//! Here `a_1, …, a_α` lists `N_G(a) \ {b}` with the `α'` H-neighbours first,
//! and `[x, x]` is the pendant edge `{x, z_x}`. Repeated edges keep their
//! first position. The result has as many classes as the input and is checked
//! by [`verify_cover`], which does not know how it was built.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::colon::{associated_graph, fresh_partner_name, AssociatedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::cover::{verify_cover, CochordalCover, CoverVerdict};

type NamedEdge = (String, String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferOutcome {
    pub associated: AssociatedGraph,
    pub cover: CochordalCover,
    /// Every edge spliced in by a block, per class, in insertion order.
    pub inserted: Vec<Vec<NamedEdge>>,
    pub verdict: CoverVerdict,
}

struct Neighbours {
    a: String,
    b: String,
    /// `N_G(a) \ {b}`, H-neighbours first.
    a_list: Vec<String>,
    a_h: usize,
    b_list: Vec<String>,
    b_h: usize,
}

fn ordered_neighbours(h: &Graph, g: &Graph, x: &str, other: &str) -> Result<(Vec<String>, usize)> {
    let gx = g.require_index(x)?;
    let in_h = |v: &str| h.has_edge_named(x, v);
    let (mut first, mut rest) = (Vec::new(), Vec::new());
    for &v in g.neighbors(gx) {
        let name = g.name(v);
        if name == other {
            continue;
        }
        if in_h(name) {
            first.push(String::from(name));
        } else {
            rest.push(String::from(name));
        }
    }
    let count = first.len();
    first.extend(rest);
    Ok((first, count))
}

/// Runs the transfer and verifies the result on `P`.
pub fn transfer_cover(h: &Graph, g: &Graph, ab: (&str, &str), cover: &CochordalCover) -> Result<TransferOutcome> {
    let input_verdict = verify_cover(g, cover)?;
    if !input_verdict.is_valid() {
        return Err(Error::Cover(alloc::format!(
            "input cover does not verify on G: {input_verdict:?}"
        )));
    }
    let associated = associated_graph(h, g, ab)?;
    let (a_list, a_h) = ordered_neighbours(h, g, ab.0, ab.1)?;
    let (b_list, b_h) = ordered_neighbours(h, g, ab.1, ab.0)?;
    let nb = Neighbours {
        a: ab.0.into(),
        b: ab.1.into(),
        a_list,
        a_h,
        b_list,
        b_h,
    };
    let bracket = |x: &str, y: &str| -> NamedEdge {
        if x == y {
            (String::from(x), fresh_partner_name(g, x))
        } else {
            (String::from(x), String::from(y))
        }
    };
    let is = |e: &NamedEdge, x: &str, y: &str| (e.0 == x && e.1 == y) || (e.0 == y && e.1 == x);

    let mut classes = Vec::with_capacity(cover.len());
    let mut inserted = Vec::with_capacity(cover.len());
    for class in &cover.classes {
        let mut out: Vec<NamedEdge> = Vec::new();
        let mut spliced = Vec::new();
        for f in class {
            out.push(f.clone());
            let mut block: Vec<NamedEdge> = Vec::new();
            if is(f, &nb.a, &nb.b) {
                for ai in &nb.a_list[..nb.a_h] {
                    block.push((nb.a.clone(), ai.clone()));
                }
                for bj in &nb.b_list[..nb.b_h] {
                    block.push((nb.b.clone(), bj.clone()));
                }
                for ai in &nb.a_list[..nb.a_h] {
                    for bj in &nb.b_list[..nb.b_h] {
                        block.push(bracket(ai, bj));
                    }
                }
            } else if let Some(am) = nb.a_list.iter().find(|x| is(f, &nb.a, x)) {
                for bj in &nb.b_list[..nb.b_h] {
                    block.push(bracket(am, bj));
                }
            } else if let Some(bm) = nb.b_list.iter().find(|x| is(f, &nb.b, x)) {
                for ai in &nb.a_list[..nb.a_h] {
                    block.push(bracket(bm, ai));
                }
            }
            spliced.extend(block.iter().cloned());
            out.extend(block);
        }
        classes.push(dedup_first(out));
        inserted.push(spliced);
    }
    let cover = CochordalCover { classes };
    let verdict = verify_cover(&associated.graph, &cover)?;
    Ok(TransferOutcome {
        associated,
        cover,
        inserted,
        verdict,
    })
}

fn dedup_first(edges: Vec<NamedEdge>) -> Vec<NamedEdge> {
    let mut seen = BTreeSet::new();
    edges
        .into_iter()
        .filter(|(x, y)| {
            let key = if x < y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            };
            seen.insert(key)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cover::cochord_cover;

    fn named(pairs: &[(&str, &str)]) -> Vec<NamedEdge> {
        pairs.iter().map(|&(a, b)| (a.into(), b.into())).collect()
    }

    #[test]
    fn single_edge_passes_through() {
        let e = Graph::path(2).unwrap();
        let cover = CochordalCover {
            classes: alloc::vec![named(&[("x1", "x2")])],
        };
        let out = transfer_cover(&e, &e, ("x1", "x2"), &cover).unwrap();
        assert_eq!(out.cover, cover);
        assert!(out.verdict.is_valid());
    }

    #[test]
    fn paper_colon_example_two_classes() {
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
        let (k, cover) = cochord_cover(&g).unwrap();
        assert_eq!(k, 2);
        let out = transfer_cover(&h, &g, ("x4", "x5"), &cover).unwrap();
        assert_eq!(out.cover.len(), 2);
        assert!(out.verdict.is_valid(), "{:?}", out.verdict);
        // every new edge of P was spliced in by some block
        for (x, y) in out.associated.graph.edge_names() {
            if !g.has_edge_named(x, y) {
                assert!(out
                    .inserted
                    .iter()
                    .flatten()
                    .any(|(p, q)| (p == x && q == y) || (p == y && q == x)));
            }
        }
    }

    #[test]
    fn c8_three_classes() {
        let g = Graph::cycle(8).unwrap();
        let h = Graph::new(&["x1", "x2", "x4", "x5"], &[("x1", "x2"), ("x4", "x5")]).unwrap();
        let (_, cover) = cochord_cover(&g).unwrap();
        let out = transfer_cover(&h, &g, ("x1", "x2"), &cover).unwrap();
        assert_eq!(out.cover.len(), 3);
        assert!(out.verdict.is_valid(), "{:?}", out.verdict);
    }

    #[test]
    fn rejects_bad_input_cover() {
        let g = Graph::cycle(8).unwrap();
        let cover = CochordalCover {
            classes: alloc::vec![named(&[("x1", "x2")])],
        };
        assert!(transfer_cover(&g, &g, ("x1", "x2"), &cover).is_err());
    }

    fn arb_pair() -> impl proptest::strategy::Strategy<Value = (Graph, Graph)> {
        use proptest::prelude::*;
        (2usize..=7)
            .prop_flat_map(|n| {
                let m = n * (n - 1) / 2;
                (
                    Just(n),
                    proptest::collection::vec(any::<bool>(), m),
                    proptest::collection::vec(any::<bool>(), m),
                )
            })
            .prop_map(|(n, ge, he)| {
                let mut pairs = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        pairs.push((i, j));
                    }
                }
                let names = (1..=n).map(|i| alloc::format!("x{i}")).collect::<Vec<_>>();
                let g_pairs: Vec<_> = pairs.iter().zip(&ge).filter(|(_, &k)| k).map(|(p, _)| *p).collect();
                let g = Graph::from_indexed(names, g_pairs);
                let keep: Vec<usize> = (0..g.edge_count()).filter(|&e| he[e]).collect();
                (g.with_edge_subset(&keep), g)
            })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(64))]
        #[test]
        fn transferred_cover_verifies((h, g) in arb_pair()) {
            let (_, cover) = cochord_cover(&g).unwrap();
            for (a, b) in h.edge_names() {
                let out = transfer_cover(&h, &g, (a, b), &cover).unwrap();
                proptest::prop_assert!(out.verdict.is_valid(), "{:?} {:?} {:?}", (a, b), out.cover, out.verdict);
                proptest::prop_assert_eq!(out.cover.len(), cover.len());
            }
        }
    }
}
