//! Grassmann and twisted Grassmann graphs, the geometric design PG_e(2e, q),
//! the Jungnickel-Tonchev design, and the block map between them.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::design::{popcount_and, BlockFamily, BlockIndex, BlockLabel, Design, DesignParameters};
use crate::drg::IsoCertificate;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::graph::{Family, Graph, VertexLabel};
use crate::linalg::Matrix;
use crate::polarity::Polarity;
use crate::subspace::{PointTable, Subspace};

/// The hyperplane `x_n = 0`, spanned by the first `n - 1` standard basis vectors.
pub fn standard_hyperplane(field: &Field, n: usize) -> Result<Subspace> {
    if n == 0 {
        return Err(Error::OutOfRange("ambient dimension 0".into()));
    }
    Subspace::coordinate(field, n, &(0..n - 1).collect::<Vec<_>>())
}

fn sum_dim(a: &Subspace, b: &Subspace) -> usize {
    let m = Matrix::from_element_rows(a.field(), a.ambient_dim(), a.basis_rows().chain(b.basis_rows()))
        .expect("same ambient space");
    m.rank()
}

/// `J_q(n, k)`: k-subspaces of GF(q)^n, adjacent when they meet in dimension k - 1.
pub fn grassmann_graph(field: &Field, n: usize, k: usize) -> Result<Graph> {
    if k < 1 || k + 1 > n {
        return Err(Error::OutOfRange(format!("Grassmann graph J({n}, {k}) needs 1 <= k <= n - 1")));
    }
    let vertices: Vec<Subspace> = Subspace::full(field, n).k_subspaces(k)?.collect();
    let g = Graph::from_predicate(
        vertices
            .iter()
            .map(|w| VertexLabel::Subspace { family: Family::Grassmann, space: w.clone() })
            .collect(),
        |i, j| sum_dim(&vertices[i], &vertices[j]) == k + 1,
    );
    Ok(g)
}

fn check_twisted_setup(field: &Field, e: usize, h: &Subspace, s: Option<&Polarity>) -> Result<()> {
    if e < 2 {
        return Err(Error::InvalidArgument("e must be >= 2".into()));
    }
    if h.field() != field {
        return Err(Error::FieldMismatch);
    }
    if h.ambient_dim() != 2 * e + 1 {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimension {} for e = {e}",
            h.ambient_dim()
        )));
    }
    if !h.is_hyperplane() {
        return Err(Error::NotHyperplane);
    }
    if let Some(s) = s {
        if s.hyperplane() != h {
            return Err(Error::InvalidArgument("polarity is defined on a different hyperplane".into()));
        }
    }
    Ok(())
}

/// `A`: (e+1)-subspaces of V not contained in H, in enumeration order.
pub fn a_family(field: &Field, e: usize, h: &Subspace) -> Result<Vec<Subspace>> {
    check_twisted_setup(field, e, h, None)?;
    let v = Subspace::full(field, 2 * e + 1);
    let mut out = Vec::new();
    for w in v.k_subspaces(e + 1)? {
        if !h.contains(&w)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// `B`: (e-1)-subspaces of H, in enumeration order.
pub fn b_family(field: &Field, e: usize, h: &Subspace) -> Result<Vec<Subspace>> {
    check_twisted_setup(field, e, h, None)?;
    Ok(h.k_subspaces(e - 1)?.collect())
}

/// The twisted Grassmann graph on `A ∪ B` (A first). The polarity plays no
/// role in the adjacency and is only checked for consistency.
pub fn twisted_grassmann(field: &Field, e: usize, h: &Subspace, s: &Polarity) -> Result<Graph> {
    check_twisted_setup(field, e, h, Some(s))?;
    let a = a_family(field, e, h)?;
    let b = b_family(field, e, h)?;
    let na = a.len();
    let labels: Vec<VertexLabel> = a
        .iter()
        .map(|w| VertexLabel::Subspace { family: Family::A, space: w.clone() })
        .chain(b.iter().map(|w| VertexLabel::Subspace { family: Family::B, space: w.clone() }))
        .collect();
    let vertex = |i: usize| if i < na { &a[i] } else { &b[i - na] };
    Ok(Graph::from_predicate(labels, |i, j| {
        let (wi, wj) = (vertex(i), vertex(j));
        match (i < na, j < na) {
            // dim W1 ∩ W2 = e  <=>  dim W1 + W2 = e + 2
            (true, true) => sum_dim(wi, wj) == e + 2,
            (true, false) => wi.contains(wj).expect("same ambient"),
            (false, true) => wj.contains(wi).expect("same ambient"),
            // dim W1 ∩ W2 = e - 2  <=>  dim W1 + W2 = e
            (false, false) => sum_dim(wi, wj) == e,
        }
    }))
}

/// `PG_e(2e, q)`: points of V = GF(q)^(2e+1), blocks `[W]` for every (e+1)-subspace W.
pub fn pg_design(field: &Field, e: usize) -> Result<Design> {
    if e < 1 {
        return Err(Error::InvalidArgument("e must be >= 1".into()));
    }
    let n = 2 * e + 1;
    let table = PointTable::new(field, n)?;
    let spaces: Vec<Subspace> = Subspace::full(field, n).k_subspaces(e + 1)?.collect();
    let blocks = spaces.par_iter().map(|w| table.indices(w)).collect();
    let labels = spaces
        .into_iter()
        .map(|w| BlockLabel { family: BlockFamily::Geometric, source: Some(w) })
        .collect();
    Design::new(table.len(), table.points().to_vec(), blocks, labels)
}

/// The block map `f`: for W in A, `[sigma(W ∩ H) ∪ (W \ H)]`; for W in B, `[sigma(W)]`.
/// Returns sorted point indices from `table`.
pub fn f_map(w: &Subspace, h: &Subspace, s: &Polarity, table: &PointTable) -> Result<Vec<u32>> {
    if !h.dim().is_multiple_of(2) || !h.is_hyperplane() {
        return Err(Error::NotHyperplane);
    }
    if s.hyperplane() != h {
        return Err(Error::InvalidArgument("polarity is defined on a different hyperplane".into()));
    }
    if table.dim() != h.ambient_dim() || table.field() != h.field() {
        return Err(Error::DimensionMismatch("point table does not match the ambient space".into()));
    }
    let e = h.dim() / 2;
    let inside = h.contains(w)?;
    let mut out = if w.dim() == e + 1 && !inside {
        let mut pts = table.indices(&s.apply(&w.intersect(h)?)?);
        pts.extend(w.affine_points(h)?.iter().map(|p| table.index_of(p)));
        pts
    } else if w.dim() + 1 == e && inside {
        table.indices(&s.apply(w)?)
    } else {
        return Err(Error::InvalidArgument(format!("{w} is in neither vertex family")));
    };
    out.sort_unstable();
    Ok(out)
}

/// The Jungnickel-Tonchev design: blocks `f(W)` for W in A, then `[W]` for
/// the (e+1)-subspaces W of H.
pub fn jt_design(field: &Field, e: usize, h: &Subspace, s: &Polarity) -> Result<Design> {
    check_twisted_setup(field, e, h, Some(s))?;
    let table = PointTable::new(field, 2 * e + 1)?;
    let a = a_family(field, e, h)?;
    let b_prime: Vec<Subspace> = h.k_subspaces(e + 1)?.collect();
    let mut blocks: Vec<Vec<u32>> = a
        .par_iter()
        .map(|w| f_map(w, h, s, &table))
        .collect::<Result<_>>()?;
    blocks.extend(b_prime.iter().map(|w| table.indices(w)));
    let labels = a
        .into_iter()
        .map(|w| BlockLabel { family: BlockFamily::APrime, source: Some(w) })
        .chain(b_prime.into_iter().map(|w| BlockLabel { family: BlockFamily::BPrime, source: Some(w) }))
        .collect();
    Design::new(table.len(), table.points().to_vec(), blocks, labels)
}

/// Graph on the blocks of `d`, adjacent when they share exactly `threshold` points.
pub fn block_graph(d: &Design, threshold: usize) -> Graph {
    let bits = d.block_bits();
    Graph::from_predicate(
        (0..d.block_count()).map(VertexLabel::Block).collect(),
        |i, j| popcount_and(&bits[i], &bits[j]) == threshold,
    )
}

/// Multiset of `|B1 ∩ B2|` over unordered pairs of distinct blocks, as size -> count.
pub fn intersection_spectrum(d: &Design) -> BTreeMap<usize, u64> {
    let bits = d.block_bits();
    let b = bits.len();
    (0..b)
        .into_par_iter()
        .map(|i| {
            let mut local = BTreeMap::new();
            for j in i + 1..b {
                *local.entry(popcount_and(&bits[i], &bits[j])).or_insert(0u64) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, m| {
            for (k, c) in m {
                *acc.entry(k).or_insert(0) += c;
            }
            acc
        })
}

/// The vertex-to-block permutation induced by `f`, from the twisted graph
/// to the block graph of `jt`.
pub fn f_certificate(twisted: &Graph, jt: &Design, s: &Polarity, table: &PointTable) -> Result<IsoCertificate> {
    let h = s.hyperplane();
    let index = BlockIndex::new(jt);
    let mapping = (0..twisted.vertex_count())
        .into_par_iter()
        .map(|v| {
            let w = twisted
                .label(v)
                .subspace()
                .ok_or_else(|| Error::InvalidArgument(format!("vertex {v} has no subspace label")))?;
            let block = f_map(w, h, s, table)?;
            index
                .get(&block)
                .map(|b| b as u32)
                .ok_or_else(|| Error::InvalidArgument(format!("f({w}) is not a block of the design")))
        })
        .collect::<Result<Vec<u32>>>()?;
    IsoCertificate::new(mapping, "twisted-grassmann", "jt-block-graph")
}

/// `(q^m - 1)/(q - 1)` as a plain usize for small instances.
pub fn points_in_dim(m: usize, q: u32) -> usize {
    if m == 0 {
        0
    } else {
        ((q as usize).pow(m as u32) - 1) / (q as usize - 1)
    }
}

/// Parameters of PG_e(2e, q) (and of the Jungnickel-Tonchev design) from
/// the closed formulas for v, k and lambda; r and b follow from the counting
/// identities.
pub fn design_parameter_formulas(q: u64, e: u32) -> Result<DesignParameters> {
    if e < 1 {
        return Err(Error::InvalidArgument("e must be >= 1".into()));
    }
    let overflow = || Error::Overflow(format!("design parameters for q = {q}, e = {e}"));
    let pow = |i: u32| (q as u128).checked_pow(i).ok_or_else(overflow);
    let v = (pow(2 * e + 1)? - 1) / (q as u128 - 1);
    let k = (pow(e + 1)? - 1) / (q as u128 - 1);
    let mut num = 1u128;
    for i in e + 1..2 * e {
        num = num.checked_mul(pow(i)? - 1).ok_or_else(overflow)?;
    }
    let mut den = 1u128;
    for i in 1..e {
        den = den.checked_mul(pow(i)? - 1).ok_or_else(overflow)?;
    }
    let lambda = num / den;
    let r = lambda * (v - 1) / (k - 1);
    let b = v * r / k;
    let narrow = |x: u128| u64::try_from(x).map_err(|_| overflow());
    Ok(DesignParameters { v: narrow(v)?, b: narrow(b)?, r: narrow(r)?, k: narrow(k)?, lambda: narrow(lambda)? })
}

/// One problem instance: V = GF(q)^(2e+1), H = {x_(2e+1) = 0}, and a polarity of H.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Field,
    pub e: usize,
    pub h: Subspace,
    pub polarity: Polarity,
    pub table: PointTable,
}

impl Instance {
    pub fn new(field: &Field, e: usize, gram: Option<Matrix>) -> Result<Instance> {
        if e < 1 {
            return Err(Error::InvalidArgument("e must be >= 1".into()));
        }
        let n = 2 * e + 1;
        let h = standard_hyperplane(field, n)?;
        let polarity = Polarity::new(&h, gram)?;
        let table = PointTable::new(field, n)?;
        Ok(Instance { field: field.clone(), e, h, polarity, table })
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn n(&self) -> usize {
        2 * self.e + 1
    }

    pub fn a_family(&self) -> Result<Vec<Subspace>> {
        a_family(&self.field, self.e, &self.h)
    }

    pub fn b_family(&self) -> Result<Vec<Subspace>> {
        b_family(&self.field, self.e, &self.h)
    }

    pub fn twisted_graph(&self) -> Result<Graph> {
        twisted_grassmann(&self.field, self.e, &self.h, &self.polarity)
    }

    /// `J_q(2e+1, e)`, the graph sharing parameters with the twisted graph.
    pub fn grassmann_graph(&self) -> Result<Graph> {
        grassmann_graph(&self.field, self.n(), self.e)
    }

    pub fn pg_design(&self) -> Result<Design> {
        pg_design(&self.field, self.e)
    }

    pub fn jt_design(&self) -> Result<Design> {
        jt_design(&self.field, self.e, &self.h, &self.polarity)
    }

    pub fn f_map(&self, w: &Subspace) -> Result<Vec<u32>> {
        f_map(w, &self.h, &self.polarity, &self.table)
    }

    pub fn f_certificate(&self, twisted: &Graph, jt: &Design) -> Result<IsoCertificate> {
        f_certificate(twisted, jt, &self.polarity, &self.table)
    }

    /// Block-graph adjacency threshold `(q^e - 1)/(q - 1)`.
    pub fn threshold(&self) -> usize {
        points_in_dim(self.e, self.q())
    }

    pub fn block_size(&self) -> usize {
        points_in_dim(self.e + 1, self.q())
    }
}

/// Groups pairs of subspaces by the case of the dimension chain
/// `dim sigma(W1∩H) ∩ sigma(W2∩H) - dim W1∩W2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairCase {
    /// Both in A, `W1 ∩ W2 ⊆ H`: offset 0.
    AAInside,
    /// Both in A, `W1 ∩ W2 ⊄ H`: offset -1.
    AAOutside,
    /// One in A, one in B: offset +1.
    AB,
    /// Both in B: offset +2.
    BB,
}

impl PairCase {
    pub fn offset(self) -> i64 {
        match self {
            PairCase::AAInside => 0,
            PairCase::AAOutside => -1,
            PairCase::AB => 1,
            PairCase::BB => 2,
        }
    }

    pub fn classify(fam1: Family, fam2: Family, w1: &Subspace, w2: &Subspace, h: &Subspace) -> Result<PairCase> {
        Ok(match (fam1, fam2) {
            (Family::A, Family::A) => {
                if h.contains(&w1.intersect(w2)?)? {
                    PairCase::AAInside
                } else {
                    PairCase::AAOutside
                }
            }
            (Family::A, Family::B) | (Family::B, Family::A) => PairCase::AB,
            (Family::B, Family::B) => PairCase::BB,
            _ => return Err(Error::InvalidArgument("pair is not from the twisted vertex families".into())),
        })
    }
}

/// `dim sigma(W1 ∩ H) ∩ sigma(W2 ∩ H)`.
pub fn sigma_meet_dim(w1: &Subspace, w2: &Subspace, s: &Polarity) -> Result<usize> {
    let h = s.hyperplane();
    let a = s.apply(&w1.intersect(h)?)?;
    let b = s.apply(&w2.intersect(h)?)?;
    Ok(a.intersect(&b)?.dim())
}

/// Number of blocks in each family.
pub fn family_sizes(d: &Design) -> HashMap<BlockFamily, usize> {
    let mut m = HashMap::new();
    for l in d.labels() {
        *m.entry(l.family).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::{check_2design, check_isomorphism, intersection_array, DrgOutcome, DesignOutcome};
    use crate::subspace::gaussian_binomial;

    fn inst(q: u32, e: usize) -> Instance {
        Instance::new(&Field::with_order(q).unwrap(), e, None).unwrap()
    }

    fn coord(k: &Field, idx: &[usize]) -> Subspace {
        Subspace::coordinate(k, 5, idx).unwrap()
    }

    #[test]
    fn parameter_formulas() {
        let p = design_parameter_formulas(2, 2).unwrap();
        assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (31, 155, 35, 7, 7));
        assert!(p.satisfies_counting_identities());
        let fano = design_parameter_formulas(2, 1).unwrap();
        assert_eq!((fano.v, fano.b, fano.r, fano.k, fano.lambda), (7, 7, 3, 3, 1));
        for q in [2, 3, 4, 5] {
            for e in 1..4 {
                let p = design_parameter_formulas(q, e).unwrap();
                assert!(p.satisfies_counting_identities());
                assert_eq!(p.b, gaussian_binomial(2 * e + 1, e + 1, q).unwrap());
            }
        }
    }

    #[test]
    fn grassmann_examples() {
        let k = Field::prime(2).unwrap();
        let g = grassmann_graph(&k, 5, 2).unwrap();
        assert_eq!(g.vertex_count(), 155);
        // q [k]_q [n-k]_q = 2 * 3 * 7
        assert_eq!(g.regular_degree(), Some(42));
        let k1 = grassmann_graph(&k, 4, 1).unwrap();
        assert_eq!(k1.vertex_count(), 15);
        assert_eq!(k1.edge_count(), 15 * 14 / 2);
        assert_eq!(grassmann_graph(&k, 5, 3).unwrap().vertex_count(), 155);
        assert!(grassmann_graph(&k, 5, 0).is_err());
        assert!(grassmann_graph(&k, 5, 5).is_err());
    }

    #[test]
    fn twisted_examples() {
        let i = inst(2, 2);
        let a = i.a_family().unwrap();
        let b = i.b_family().unwrap();
        assert_eq!(a.len() as u64, gaussian_binomial(5, 3, 2).unwrap() - gaussian_binomial(4, 3, 2).unwrap());
        assert_eq!(a.len(), 140);
        assert_eq!(b.len(), 15);
        let g = i.twisted_graph().unwrap();
        assert_eq!(g.vertex_count(), 155);
        assert_eq!(g.regular_degree(), Some(42));
        let k = &i.field;
        let w1 = a.iter().position(|w| *w == coord(k, &[0, 1, 4])).unwrap();
        let e1 = 140 + b.iter().position(|w| *w == coord(k, &[0])).unwrap();
        let e3 = 140 + b.iter().position(|w| *w == coord(k, &[2])).unwrap();
        assert!(g.is_adjacent(w1, e1));
        assert!(!g.is_adjacent(w1, e3));
        assert!(matches!(inst(2, 1).twisted_graph(), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn pg_examples() {
        let k = Field::prime(2).unwrap();
        let d = pg_design(&k, 2).unwrap();
        assert_eq!((d.point_count(), d.block_count()), (31, 155));
        assert!(d.blocks().iter().all(|b| b.len() == 7));
        let fano = pg_design(&k, 1).unwrap();
        assert_eq!(
            check_2design(&fano).unwrap(),
            DesignOutcome::Design(crate::DesignParameters { v: 7, b: 7, r: 3, k: 3, lambda: 1 })
        );
        let k3 = Field::prime(3).unwrap();
        assert!(pg_design(&k3, 1).unwrap().blocks().iter().all(|b| b.len() == 4));
    }

    #[test]
    fn f_map_examples() {
        let i = inst(2, 2);
        let k = &i.field;
        let pts = |b: &[u32]| -> Vec<Vec<u32>> {
            b.iter()
                .map(|&x| i.table.points()[x as usize].rep().iter().map(|v| v.value()).collect())
                .collect()
        };
        let from_b = i.f_map(&coord(k, &[0])).unwrap();
        assert_eq!(from_b, i.table.indices(&coord(k, &[1, 2, 3])));
        assert_eq!(from_b.len(), 7);
        let from_a = i.f_map(&coord(k, &[0, 1, 4])).unwrap();
        let mut expected: Vec<Vec<u32>> = vec![
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 1, 1, 0],
            vec![0, 0, 0, 0, 1],
            vec![1, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 1],
            vec![1, 1, 0, 0, 1],
        ];
        expected.sort();
        let mut got = pts(&from_a);
        got.sort();
        assert_eq!(got, expected);
        assert!(i.f_map(&coord(k, &[0, 1])).is_err());
        assert!(i.f_map(&coord(k, &[0, 1, 2])).is_err());
    }

    #[test]
    fn jt_examples() {
        let i = inst(2, 2);
        let d = i.jt_design().unwrap();
        assert_eq!((d.point_count(), d.block_count()), (31, 155));
        assert!(d.blocks().iter().all(|b| b.len() == 7));
        let sizes = family_sizes(&d);
        assert_eq!(sizes[&BlockFamily::APrime], 140);
        assert_eq!(sizes[&BlockFamily::BPrime], 15);
        match check_2design(&d).unwrap() {
            DesignOutcome::Design(p) => {
                assert_eq!((p.v, p.b, p.r, p.k, p.lambda), (31, 155, 35, 7, 7));
                assert!(p.satisfies_counting_identities());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spectra_and_block_graphs() {
        let i = inst(2, 2);
        let jt = i.jt_design().unwrap();
        let pg = i.pg_design().unwrap();
        let s_jt = intersection_spectrum(&jt);
        let s_pg = intersection_spectrum(&pg);
        assert_eq!(s_jt.keys().copied().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s_jt.keys().collect::<Vec<_>>(), s_pg.keys().collect::<Vec<_>>());
        assert_eq!(s_jt.values().sum::<u64>(), 155 * 154 / 2);
        let single = Design::from_blocks(3, vec![vec![0, 1]]).unwrap();
        assert!(intersection_spectrum(&single).is_empty());
        assert_eq!(block_graph(&jt, 8).edge_count(), 0);
        assert_eq!(block_graph(&jt, 3).regular_degree(), Some(42));
    }

    #[test]
    fn pg_block_graph_is_grassmann() {
        let k = Field::prime(2).unwrap();
        let pg = pg_design(&k, 2).unwrap();
        let bg = block_graph(&pg, 3);
        let j = grassmann_graph(&k, 5, 3).unwrap();
        // both are indexed by the same enumeration of 3-subspaces
        for (l, b) in j.labels().iter().zip(pg.labels()) {
            assert_eq!(l.subspace(), b.source.as_ref());
        }
        assert!(check_isomorphism(&j, &bg, &crate::drg::IsoCertificate::identity(155, "J")).unwrap());
    }

    #[test]
    fn block_graph_isomorphism_small() {
        let i = inst(2, 2);
        let g = i.twisted_graph().unwrap();
        let d = i.jt_design().unwrap();
        let cert = i.f_certificate(&g, &d).unwrap();
        assert!(check_isomorphism(&g, &block_graph(&d, i.threshold()), &cert).unwrap());
        match intersection_array(&g).unwrap() {
            DrgOutcome::DistanceRegular(a) => assert_eq!(a.flat(), vec![42, 24, 1, 9]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symplectic_polarity_also_works() {
        let k = Field::prime(2).unwrap();
        let h = standard_hyperplane(&k, 5).unwrap();
        let s = Polarity::symplectic(&h).unwrap();
        let d = jt_design(&k, 2, &h, &s).unwrap();
        assert!(matches!(check_2design(&d).unwrap(), DesignOutcome::Design(_)));
        let g = twisted_grassmann(&k, 2, &h, &s).unwrap();
        let t = PointTable::new(&k, 5).unwrap();
        let cert = f_certificate(&g, &d, &s, &t).unwrap();
        assert!(check_isomorphism(&g, &block_graph(&d, 3), &cert).unwrap());
    }

    #[test]
    fn dimension_chain_cases() {
        let i = inst(2, 2);
        let g = i.twisted_graph().unwrap();
        let fam = |v: usize| match g.label(v) {
            VertexLabel::Subspace { family, space } => (*family, space.clone()),
            _ => unreachable!(),
        };
        let mut seen = std::collections::HashSet::new();
        for u in (0..155).step_by(3) {
            for v in (u + 1..155).step_by(5) {
                let (f1, w1) = fam(u);
                let (f2, w2) = fam(v);
                let case = PairCase::classify(f1, f2, &w1, &w2, &i.h).unwrap();
                let lhs = sigma_meet_dim(&w1, &w2, &i.polarity).unwrap() as i64;
                assert_eq!(lhs, w1.intersect(&w2).unwrap().dim() as i64 + case.offset(), "{case:?}");
                seen.insert(case);
            }
        }
        assert_eq!(seen.len(), 4);
    }
}
