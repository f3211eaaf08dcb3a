//! Verification: distance-regularity by BFS from every vertex, explicit
//! isomorphism certificates, 2-design checks and incidence p-rank.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{Design, DesignParameters};
use crate::error::{Error, Result};
use crate::gf::{is_prime, Field};
use crate::graph::Graph;
use crate::linalg::{gf2::BitMatrix, Matrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    /// `b_0, ..., b_{d-1}`
    pub b: Vec<u64>,
    /// `c_1, ..., c_d`
    pub c: Vec<u64>,
    pub d: usize,
}

impl IntersectionArray {
    /// Sizes `k_0 = 1, k_1, ..., k_d` of the distance classes, from `k_{i+1} = k_i b_i / c_{i+1}`.
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut k = vec![1u64];
        for i in 0..self.d {
            k.push(k[i] * self.b[i] / self.c[i]);
        }
        k
    }

    /// `{b_0, ...; c_1, ...}` flattened, as printed by the CLI.
    pub fn flat(&self) -> Vec<u64> {
        self.b.iter().chain(&self.c).copied().collect()
    }
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        write!(f, "{{{}; {}}}", join(&self.b), join(&self.c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    B,
    C,
}

/// First triple `(base, vertex, distance)` at which a count disagrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NotDrgWitness {
    pub base: usize,
    pub vertex: usize,
    pub distance: usize,
    pub base_label: String,
    pub vertex_label: String,
    pub parameter: Parameter,
    pub expected: u64,
    pub found: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DrgOutcome {
    DistanceRegular(IntersectionArray),
    NotDrg(NotDrgWitness),
}

struct Local {
    dist: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
}

fn bfs_counts(g: &Graph, base: usize) -> Local {
    let n = g.vertex_count();
    let mut dist = vec![u32::MAX; n];
    dist[base] = 0;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[u] + 1;
                queue.push_back(w as usize);
            }
        }
    }
    let mut up = vec![0; n];
    let mut down = vec![0; n];
    for u in (0..n).filter(|&u| dist[u] != u32::MAX) {
        for &w in g.neighbors(u) {
            let dw = dist[w as usize];
            if dw == dist[u] + 1 {
                up[u] += 1;
            } else if dw + 1 == dist[u] {
                down[u] += 1;
            }
        }
    }
    Local { dist, up, down }
}

/// Checks distance-regularity from every base vertex.
///
/// Errors on an empty, disconnected or irregular graph; a regular connected
/// graph that is not distance-regular yields [`DrgOutcome::NotDrg`] with the
/// lexicographically smallest witness.
pub fn intersection_array(g: &Graph) -> Result<DrgOutcome> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::GraphShape("empty"));
    }
    if g.regular_degree().is_none() {
        return Err(Error::GraphShape("not regular"));
    }
    let reference = bfs_counts(g, 0);
    if reference.dist.contains(&u32::MAX) {
        return Err(Error::GraphShape("disconnected"));
    }
    let d = *reference.dist.iter().max().expect("nonempty") as usize;
    // The array read off base 0 at the first vertex of each distance class.
    let mut b = vec![None; d + 1];
    let mut c = vec![None; d + 1];
    for u in 0..n {
        let i = reference.dist[u] as usize;
        b[i].get_or_insert(reference.up[u] as u64);
        c[i].get_or_insert(reference.down[u] as u64);
    }
    let b: Vec<u64> = b.into_iter().map(|x| x.expect("every distance occurs")).collect();
    let c: Vec<u64> = c.into_iter().map(|x| x.expect("every distance occurs")).collect();

    let witness = (0..n)
        .into_par_iter()
        .map(|v| {
            let local = if v == 0 { None } else { Some(bfs_counts(g, v)) };
            let local = local.as_ref().unwrap_or(&reference);
            (0..n).find_map(|u| {
                let i = local.dist[u] as usize;
                if i > d {
                    return Some((u, i, Parameter::B, 0, local.up[u] as u64));
                }
                if local.up[u] as u64 != b[i] {
                    return Some((u, i, Parameter::B, b[i], local.up[u] as u64));
                }
                if local.down[u] as u64 != c[i] {
                    return Some((u, i, Parameter::C, c[i], local.down[u] as u64));
                }
                None
            })
            .map(|w| (v, w))
        })
        .find_first(|x| x.is_some())
        .flatten();

    Ok(match witness {
        Some((base, (vertex, distance, parameter, expected, found))) => DrgOutcome::NotDrg(NotDrgWitness {
            base,
            vertex,
            distance,
            base_label: g.label(base).to_string(),
            vertex_label: g.label(vertex).to_string(),
            parameter,
            expected,
            found,
        }),
        None => DrgOutcome::DistanceRegular(IntersectionArray { b: b[..d].to_vec(), c: c[1..].to_vec(), d }),
    })
}

/// A vertex map from one graph onto another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    pub mapping: Vec<u32>,
    pub source: String,
    pub target: String,
}

impl IsoCertificate {
    pub fn new(mapping: Vec<u32>, source: impl Into<String>, target: impl Into<String>) -> Result<IsoCertificate> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            let slot = seen
                .get_mut(m as usize)
                .ok_or_else(|| Error::InvalidArgument(format!("certificate maps to {m}, outside 0..{}", mapping.len())))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidArgument(format!("certificate maps two vertices to {m}")));
            }
        }
        Ok(IsoCertificate { mapping, source: source.into(), target: target.into() })
    }

    pub fn identity(n: usize, name: &str) -> IsoCertificate {
        IsoCertificate { mapping: (0..n as u32).collect(), source: name.into(), target: name.into() }
    }

    /// Swaps two image entries; the result is still a bijection.
    pub fn with_swap(&self, i: usize, j: usize) -> IsoCertificate {
        let mut c = self.clone();
        c.mapping.swap(i, j);
        c
    }
}

/// First pair `(u, v)`, `u < v`, whose adjacency is not preserved by `cert`.
pub fn isomorphism_mismatch(g1: &Graph, g2: &Graph, cert: &IsoCertificate) -> Result<Option<(usize, usize)>> {
    let n = g1.vertex_count();
    if g2.vertex_count() != n || cert.mapping.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "graphs on {} and {} vertices with a map of size {}",
            n,
            g2.vertex_count(),
            cert.mapping.len()
        )));
    }
    let m = &cert.mapping;
    Ok((0..n)
        .into_par_iter()
        .map(|u| {
            (u + 1..n)
                .find(|&v| g1.is_adjacent(u, v) != g2.is_adjacent(m[u] as usize, m[v] as usize))
                .map(|v| (u, v))
        })
        .find_first(|x| x.is_some())
        .flatten())
}

/// True iff `cert` maps edges to edges and non-edges to non-edges.
pub fn check_isomorphism(g1: &Graph, g2: &Graph, cert: &IsoCertificate) -> Result<bool> {
    isomorphism_mismatch(g1, g2, cert).map(|m| m.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DesignViolation {
    BlockSize { block: usize, expected: u64, found: u64 },
    Replication { point: usize, expected: u64, found: u64 },
    PairCount { points: (usize, usize), expected: u64, found: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DesignOutcome {
    Design(DesignParameters),
    NotDesign(DesignViolation),
}

/// Verifies that `d` is a 2-design by counting blocks through every point and pair.
pub fn check_2design(d: &Design) -> Result<DesignOutcome> {
    let b = d.block_count();
    if b == 0 {
        return Err(Error::EmptyDesign);
    }
    let v = d.point_count();
    let k = d.block(0).len();
    if let Some(i) = d.blocks().iter().position(|bl| bl.len() != k) {
        return Ok(DesignOutcome::NotDesign(DesignViolation::BlockSize {
            block: i,
            expected: k as u64,
            found: d.block(i).len() as u64,
        }));
    }
    let mut rep = vec![0u64; v];
    let mut pairs = vec![0u64; v * v];
    for bl in d.blocks() {
        for (i, &x) in bl.iter().enumerate() {
            rep[x as usize] += 1;
            for &y in &bl[i + 1..] {
                pairs[x as usize * v + y as usize] += 1;
            }
        }
    }
    let r = rep[0];
    if let Some(p) = rep.iter().position(|&c| c != r) {
        return Ok(DesignOutcome::NotDesign(DesignViolation::Replication { point: p, expected: r, found: rep[p] }));
    }
    let lambda = if v > 1 { pairs[1] } else { 0 };
    for x in 0..v {
        for y in x + 1..v {
            let c = pairs[x * v + y];
            if c != lambda {
                return Ok(DesignOutcome::NotDesign(DesignViolation::PairCount {
                    points: (x, y),
                    expected: lambda,
                    found: c,
                }));
            }
        }
    }
    Ok(DesignOutcome::Design(DesignParameters { v: v as u64, b: b as u64, r, k: k as u64, lambda }))
}

/// Rank over GF(p) of the b x v incidence matrix.
pub fn p_rank(d: &Design, p: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == 2 {
        let mut m = BitMatrix::new(d.point_count());
        for bl in d.blocks() {
            m.push_row_from_indices(bl.iter().map(|&x| x as usize));
        }
        return Ok(m.rank());
    }
    let field = Field::prime(p)?;
    Ok(incidence_matrix(d, &field).rank())
}

/// The 0/1 incidence matrix, rows = blocks, columns = points.
pub fn incidence_matrix(d: &Design, field: &Field) -> Matrix {
    let v = d.point_count();
    let mut m = Matrix::zeros(field, d.block_count(), v);
    for (i, bl) in d.blocks().iter().enumerate() {
        for &x in bl {
            m.set(i, x as usize, crate::gf::FieldElement::ONE);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        Graph::unlabeled(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::unlabeled(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn hypercube(d: usize) -> Graph {
        let n = 1 << d;
        Graph::unlabeled(n, (0..n).flat_map(|i| (0..d).map(move |b| (i, i ^ (1 << b))).filter(|(i, j)| i < j))).unwrap()
    }

    fn fano() -> Design {
        Design::from_blocks(7, (0..7).map(|i| [0, 1, 3].iter().map(|d| (i + d) % 7).collect()).collect()).unwrap()
    }

    fn array(g: &Graph) -> IntersectionArray {
        match intersection_array(g).unwrap() {
            DrgOutcome::DistanceRegular(a) => a,
            DrgOutcome::NotDrg(w) => panic!("not distance-regular: {w:?}"),
        }
    }

    #[test]
    fn sanity_graphs() {
        let k5 = array(&complete(5));
        assert_eq!((k5.b, k5.c, k5.d), (vec![4], vec![1], 1));
        let c7 = array(&cycle(7));
        assert_eq!((c7.b, c7.c), (vec![2, 1, 1], vec![1, 1, 1]));
        let c8 = array(&cycle(8));
        assert_eq!((c8.b, c8.c), (vec![2, 1, 1, 1], vec![1, 1, 1, 2]));
        let q4 = array(&hypercube(4));
        assert_eq!((q4.b, q4.c), (vec![4, 3, 2, 1], vec![1, 2, 3, 4]));
    }

    #[test]
    fn counting_identity_holds() {
        for g in [cycle(9), hypercube(5), complete(6)] {
            let a = array(&g);
            let k = a.class_sizes();
            assert_eq!(k.iter().sum::<u64>(), g.vertex_count() as u64);
            for i in 0..a.d {
                assert_eq!(k[i] * a.b[i], k[i + 1] * a.c[i]);
            }
        }
    }

    #[test]
    fn shape_errors_and_witness() {
        let two_triangles = Graph::unlabeled(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(matches!(intersection_array(&two_triangles), Err(Error::GraphShape("disconnected"))));
        let path = Graph::unlabeled(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(intersection_array(&path), Err(Error::GraphShape("not regular"))));
        // triangular prism: regular, connected, not distance-regular
        let prism = Graph::unlabeled(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        match intersection_array(&prism).unwrap() {
            DrgOutcome::NotDrg(w) => {
                assert_eq!(w.base, 0);
                assert_eq!(w.vertex_label, w.vertex.to_string());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn isomorphism_checks() {
        let g = cycle(6);
        assert!(check_isomorphism(&g, &g, &IsoCertificate::identity(6, "c6")).unwrap());
        let bad = IsoCertificate::identity(6, "c6").with_swap(0, 2);
        assert!(!check_isomorphism(&g, &g, &bad).unwrap());
        let shift = IsoCertificate::new((0..6).map(|i| (i + 1) % 6).collect(), "c6", "c6").unwrap();
        assert!(check_isomorphism(&g, &g, &shift).unwrap());
        assert!(check_isomorphism(&g, &cycle(7), &IsoCertificate::identity(6, "x")).is_err());
        assert!(IsoCertificate::new(vec![0, 0], "a", "b").is_err());
        assert!(IsoCertificate::new(vec![0, 2], "a", "b").is_err());
    }

    #[test]
    fn design_checks() {
        assert_eq!(
            check_2design(&fano()).unwrap(),
            DesignOutcome::Design(DesignParameters { v: 7, b: 7, r: 3, k: 3, lambda: 1 })
        );
        assert!(matches!(check_2design(&fano().without_block(0)).unwrap(), DesignOutcome::NotDesign(_)));
        assert!(matches!(check_2design(&Design::from_blocks(3, vec![]).unwrap()), Err(Error::EmptyDesign)));
        let uneven = Design::from_blocks(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            check_2design(&uneven).unwrap(),
            DesignOutcome::NotDesign(DesignViolation::BlockSize { block: 1, .. })
        ));
    }

    #[test]
    fn fano_ranks() {
        assert_eq!(p_rank(&fano(), 2).unwrap(), 4);
        assert_eq!(p_rank(&fano(), 3).unwrap(), 6);
        assert_eq!(p_rank(&fano(), 7).unwrap(), 7);
        assert!(p_rank(&fano(), 4).is_err());
    }

    #[test]
    fn p_rank_invariant_under_relabeling() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = fano();
        for _ in 0..20 {
            let mut perm: Vec<u32> = (0..7).collect();
            perm.shuffle(&mut rng);
            let mut order: Vec<usize> = (0..7).collect();
            order.shuffle(&mut rng);
            let e = d.permuted(&perm, &order).unwrap();
            for p in [2, 3, 5] {
                assert_eq!(p_rank(&e, p).unwrap(), p_rank(&d, p).unwrap());
            }
        }
    }
}
