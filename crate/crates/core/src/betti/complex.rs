//! Finite simplicial complexes on at most 64 vertices and their reduced
//! homology.
//!
//! Faces are bitmasks over the vertex list. The void complex (no faces at
//! all) and the irrelevant complex `{∅}` are different values: the first has
//! zero reduced homology everywhere, the second has `H̃_{-1}` of rank one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::linalg::{rank, SparseRow};
use super::Field;
use crate::error::{Error, Result};
use crate::invariants::bits::ones;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Maximal faces, sorted; empty for the void complex, `[0]` for `{∅}`.
    facets: Vec<u64>,
}

impl SimplicialComplex {
    pub fn void(vertices: Vec<String>) -> Result<SimplicialComplex> {
        check_width(&vertices)?;
        Ok(SimplicialComplex {
            vertices,
            facets: Vec::new(),
        })
    }

    pub fn irrelevant(vertices: Vec<String>) -> Result<SimplicialComplex> {
        check_width(&vertices)?;
        Ok(SimplicialComplex {
            vertices,
            facets: alloc::vec![0],
        })
    }

    /// The complex generated by `facets` (non-maximal entries are dropped).
    pub fn from_facets(vertices: Vec<String>, facets: &[u64]) -> Result<SimplicialComplex> {
        check_width(&vertices)?;
        let all = full_mask(vertices.len());
        if let Some(f) = facets.iter().find(|&&f| f & !all != 0) {
            return Err(Error::Precondition(alloc::format!(
                "face {f:#x} uses a vertex outside the vertex list"
            )));
        }
        let mut kept: Vec<u64> = facets
            .iter()
            .copied()
            .filter(|&f| !facets.iter().any(|&g| g != f && g & f == f))
            .collect();
        kept.sort_unstable();
        kept.dedup();
        Ok(SimplicialComplex { vertices, facets: kept })
    }

    /// Accepts an explicit face list, which must be closed under subsets.
    pub fn from_faces(vertices: Vec<String>, faces: &[u64]) -> Result<SimplicialComplex> {
        let set: BTreeSet<u64> = faces.iter().copied().collect();
        for &f in &set {
            for v in ones(f) {
                if !set.contains(&(f & !(1 << v))) {
                    return Err(Error::Precondition(alloc::format!(
                        "face {f:#x} is present but its facet without vertex {v} is not"
                    )));
                }
            }
        }
        SimplicialComplex::from_facets(vertices, faces)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| f & face == face)
    }

    /// All faces grouped by cardinality (index `k` holds faces with `k` vertices).
    pub fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let mut set = BTreeSet::new();
        for &f in &self.facets {
            // subsets of f by the standard sub-mask walk
            let mut s = f;
            loop {
                set.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        group_by_size(set.into_iter())
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_size().iter().map(Vec::len).collect()
    }
}

fn check_width(vertices: &[String]) -> Result<()> {
    if vertices.len() > 64 {
        return Err(Error::LimitExceeded(alloc::format!(
            "simplicial complexes hold at most 64 vertices, got {}",
            vertices.len()
        )));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn group_by_size(faces: impl Iterator<Item = u64>) -> Vec<Vec<u64>> {
    let mut by: Vec<Vec<u64>> = Vec::new();
    for f in faces {
        let k = f.count_ones() as usize;
        if by.len() <= k {
            by.resize(k + 1, Vec::new());
        }
        by[k].push(f);
    }
    for layer in &mut by {
        layer.sort_unstable();
    }
    by
}

/// Reduced Betti numbers shifted by one: entry `p` is the rank of `H̃_{p-1}`.
/// Input faces are grouped by cardinality and sorted within each group.
pub(crate) fn shifted_homology(faces: &[Vec<u64>], field: Field) -> Vec<usize> {
    if faces.first().is_none_or(Vec::is_empty) {
        return Vec::new();
    }
    // ranks[p] = rank of the boundary map from size-p faces to size-(p-1) faces
    let mut ranks = alloc::vec![0usize; faces.len() + 1];
    for p in 1..faces.len() {
        if p == 1 {
            ranks[1] = usize::from(!faces[1].is_empty());
            continue;
        }
        let lower = &faces[p - 1];
        let rows: Vec<SparseRow> = faces[p]
            .iter()
            .map(|&f| {
                let mut row: SparseRow = ones(f)
                    .enumerate()
                    .map(|(t, v)| {
                        let col = lower.binary_search(&(f & !(1 << v))).expect("closed under subsets");
                        (col, if t % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                row.sort_unstable_by_key(|&(c, _)| c);
                row
            })
            .collect();
        ranks[p] = rank(&rows, field);
    }
    let mut h: Vec<usize> = (0..faces.len())
        .map(|p| faces[p].len() - ranks[p] - ranks[p + 1])
        .collect();
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

/// Nonzero reduced homology ranks by dimension (`-1` and up).
pub fn reduced_homology_ranks(c: &SimplicialComplex, field: Field) -> BTreeMap<isize, usize> {
    shifted_homology(&c.faces_by_size(), field)
        .into_iter()
        .enumerate()
        .filter(|&(_, r)| r > 0)
        .map(|(p, r)| (p as isize - 1, r))
        .collect()
}

/// Reduced Euler characteristic `Σ (-1)^d f_d` over faces including `∅`.
pub fn reduced_euler_characteristic(c: &SimplicialComplex) -> i64 {
    c.f_vector()
        .iter()
        .enumerate()
        .map(|(p, &n)| if p % 2 == 1 { n as i64 } else { -(n as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ring;

    fn complex(n: usize, facets: &[u64]) -> SimplicialComplex {
        let names: Vec<String> = (0..n).map(|i| alloc::format!("v{i}")).collect();
        SimplicialComplex::from_facets(names, facets).unwrap()
    }

    fn ranks(c: &SimplicialComplex) -> Vec<(isize, usize)> {
        reduced_homology_ranks(c, Field::Rational).into_iter().collect()
    }

    #[test]
    fn conventions() {
        let v = SimplicialComplex::void(ring(&["a"])).unwrap();
        assert!(ranks(&v).is_empty());
        let e = SimplicialComplex::irrelevant(ring(&["a"])).unwrap();
        assert_eq!(ranks(&e), [(-1, 1)]);
        assert_ne!(v, e);
    }

    #[test]
    fn small_spaces() {
        assert_eq!(ranks(&complex(2, &[0b01, 0b10])), [(0, 1)]);
        assert_eq!(ranks(&complex(3, &[0b011, 0b110, 0b101])), [(1, 1)]);
        assert!(ranks(&complex(3, &[0b111])).is_empty());
        // boundary of the tetrahedron
        assert_eq!(ranks(&complex(4, &[0b0111, 0b1011, 0b1101, 0b1110])), [(2, 1)]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // six-vertex triangulation of RP²
        let tris: [[usize; 3]; 10] = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 1, 5],
            [1, 2, 4],
            [2, 3, 5],
            [1, 3, 4],
            [1, 3, 5],
            [2, 4, 5],
        ];
        let facets: Vec<u64> = tris.iter().map(|t| t.iter().map(|&v| 1u64 << v).sum()).collect();
        let c = complex(6, &facets);
        assert_eq!(reduced_euler_characteristic(&c), 0);
        assert!(ranks(&c).is_empty());
        let mod2: Vec<_> = reduced_homology_ranks(&c, Field::Prime(2)).into_iter().collect();
        assert_eq!(mod2, [(1, 1), (2, 1)]);
    }

    #[test]
    fn closure_checked() {
        let names = ring(&["a", "b"]);
        assert!(SimplicialComplex::from_faces(names.clone(), &[0, 0b11]).is_err());
        assert!(SimplicialComplex::from_faces(names, &[0, 1, 2, 3]).is_ok());
    }

    proptest::proptest! {
        #[test]
        fn euler_characteristic_matches_homology(facets in proptest::collection::vec(0u64..128, 1..6)) {
            let c = complex(7, &facets);
            let chi: i64 = reduced_homology_ranks(&c, Field::Rational)
                .into_iter()
                .map(|(d, r)| if d % 2 == 0 { r as i64 } else { -(r as i64) })
                .sum();
            proptest::prop_assert_eq!(chi, reduced_euler_characteristic(&c));
        }
    }
}
