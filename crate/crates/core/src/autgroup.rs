//! Semilinear maps stabilizing H, their lift to point permutations of the
//! Jungnickel-Tonchev design, and automorphism checks.
//!
//! A semilinear map acts on column vectors as `x -> M * frob^i(x)`: the
//! Frobenius power is applied coordinatewise first, then the matrix.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::design::{BlockIndex, Design};
use crate::drg::IsoCertificate;
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field, FieldElement};
use crate::graph::Graph;
use crate::linalg::{gf2::BitMatrix, Matrix};
use crate::polarity::Polarity;
use crate::subspace::{PointTable, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    matrix: Matrix,
    frob: u32,
}

impl Serialize for SemilinearMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            matrix: Vec<Vec<u32>>,
            frob: u32,
        }
        Repr { matrix: self.matrix.to_rows(), frob: self.frob }.serialize(s)
    }
}

impl SemilinearMap {
    pub fn new(matrix: Matrix, frob: u32) -> Result<SemilinearMap> {
        if !matrix.is_invertible() {
            return Err(Error::InvalidArgument("semilinear map needs an invertible matrix".into()));
        }
        if frob >= matrix.field().degree() {
            return Err(Error::OutOfRange(format!(
                "Frobenius power {frob} for {}",
                matrix.field()
            )));
        }
        Ok(SemilinearMap { matrix, frob })
    }

    pub fn identity(field: &Field, n: usize) -> SemilinearMap {
        SemilinearMap { matrix: Matrix::identity(field, n), frob: 0 }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn frob(&self) -> u32 {
        self.frob
    }

    pub fn field(&self) -> &Field {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply_vector(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let k = self.field();
        let twisted: Vec<FieldElement> = x.iter().map(|&v| k.frobenius(v, self.frob)).collect();
        self.matrix.apply(&twisted)
    }

    pub fn apply(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of GF(q)^{} under a map on GF(q)^{}",
                w.ambient_dim(),
                self.dim()
            )));
        }
        let images = w.basis_rows().map(|r| self.apply_vector(r)).collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), self.dim(), images.iter().map(Vec::as_slice))
    }

    /// `self ∘ other`: `x -> A frob^i(B frob^j(x)) = (A frob^i(B)) frob^(i+j)(x)`.
    pub fn compose(&self, other: &SemilinearMap) -> Result<SemilinearMap> {
        let m = self.matrix.mul(&other.matrix.frobenius(self.frob))?;
        Ok(SemilinearMap { matrix: m, frob: (self.frob + other.frob) % self.field().degree() })
    }

    /// `c * self`.
    pub fn scaled(&self, c: FieldElement) -> Result<SemilinearMap> {
        if c.is_zero() {
            return Err(Error::InvalidArgument("scalar must be nonzero".into()));
        }
        Ok(SemilinearMap { matrix: self.matrix.scale(c), frob: self.frob })
    }

    /// Every basis vector of `h` maps into `h`.
    pub fn stabilizes(&self, h: &Subspace) -> Result<bool> {
        for r in h.basis_rows() {
            if !h.contains_vector(&self.apply_vector(r)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Uniformly random invertible m x m matrix, by rejection.
fn random_invertible<R: Rng>(field: &Field, m: usize, rng: &mut R) -> Matrix {
    let q = field.order();
    loop {
        let data = (0..m * m).map(|_| field.elem(rng.gen_range(0..q)).expect("in range")).collect();
        let a = Matrix::new(field, m, m, data).expect("shape");
        if a.is_invertible() {
            return a;
        }
    }
}

/// Block matrix `[[A, b], [0, c]]` over the standard basis; it stabilizes
/// the hyperplane `x_n = 0`.
pub fn stabilizer_matrix(a: &Matrix, column: &[FieldElement], corner: FieldElement) -> Result<Matrix> {
    let m = a.rows();
    if a.cols() != m || column.len() != m {
        return Err(Error::DimensionMismatch("stabilizer blocks".into()));
    }
    let n = m + 1;
    let mut out = Matrix::zeros(a.field(), n, n);
    for (r, &b) in column.iter().enumerate() {
        for c in 0..m {
            out.set(r, c, a.get(r, c));
        }
        out.set(r, m, b);
    }
    out.set(m, m, corner);
    Ok(out)
}

/// A uniformly random element of `ΓL(V)_H` for `V = GF(q)^(2e+1)` and `H = {x_(2e+1) = 0}`.
pub fn random_stabilizer_element_with<R: Rng>(field: &Field, e: usize, rng: &mut R) -> SemilinearMap {
    let m = 2 * e;
    let q = field.order();
    let a = random_invertible(field, m, rng);
    let column: Vec<FieldElement> = (0..m).map(|_| field.elem(rng.gen_range(0..q)).expect("in range")).collect();
    let corner = field.elem(rng.gen_range(1..q)).expect("in range");
    let frob = rng.gen_range(0..field.degree());
    let matrix = stabilizer_matrix(&a, &column, corner).expect("square blocks");
    SemilinearMap { matrix, frob }
}

pub fn random_stabilizer_element(field: &Field, e: usize, seed: u64) -> SemilinearMap {
    random_stabilizer_element_with(field, e, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// A permutation of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PointPermutation {
    perm: Vec<u32>,
}

impl PointPermutation {
    pub fn new(perm: Vec<u32>) -> Result<PointPermutation> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            match seen.get_mut(p as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidArgument(format!("{p} is repeated or out of range"))),
            }
        }
        Ok(PointPermutation { perm })
    }

    pub fn identity(n: usize) -> PointPermutation {
        PointPermutation { perm: (0..n as u32).collect() }
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.perm[x as usize]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PointPermutation) -> PointPermutation {
        PointPermutation { perm: other.perm.iter().map(|&x| self.perm[x as usize]).collect() }
    }

    /// Swaps the images of two points.
    pub fn transposition(n: usize, a: u32, b: u32) -> PointPermutation {
        let mut p = PointPermutation::identity(n);
        p.perm.swap(a as usize, b as usize);
        p
    }
}

/// Precomputed data for lifting many maps against one polarity.
pub struct Lifter<'a> {
    polarity: &'a Polarity,
    table: &'a PointTable,
    /// `sigma(<x>)` for points in H, `None` for points off H.
    hyperplanes: Vec<Option<Subspace>>,
}

impl<'a> Lifter<'a> {
    pub fn new(polarity: &'a Polarity, table: &'a PointTable) -> Result<Lifter<'a>> {
        let h = polarity.hyperplane();
        if table.dim() != h.ambient_dim() || table.field() != h.field() {
            return Err(Error::DimensionMismatch("point table does not match the polarity".into()));
        }
        let hyperplanes = table
            .points()
            .iter()
            .map(|p| {
                if h.contains_point(p)? {
                    polarity.apply(&p.span(h.field())).map(Some)
                } else {
                    Ok(None)
                }
            })
            .collect::<Result<_>>()?;
        Ok(Lifter { polarity, table, hyperplanes })
    }

    /// `phi'`: `sigma phi sigma` on points of H, `phi` elsewhere.
    pub fn lift(&self, phi: &SemilinearMap) -> Result<PointPermutation> {
        if phi.dim() != self.table.dim() || phi.field() != self.table.field() {
            return Err(Error::DimensionMismatch("map does not act on the point space".into()));
        }
        if !phi.stabilizes(self.polarity.hyperplane())? {
            return Err(Error::NotStabilizing);
        }
        let perm = self
            .table
            .points()
            .iter()
            .zip(&self.hyperplanes)
            .map(|(p, hyper)| match hyper {
                Some(hp) => {
                    let image = self.polarity.apply(&phi.apply(hp)?)?;
                    debug_assert_eq!(image.dim(), 1);
                    Ok(self.table.index_of_vector(image.basis().row(0)).expect("nonzero"))
                }
                None => Ok(self.table.index_of_vector(&phi.apply_vector(p.rep())?).expect("invertible map")),
            })
            .collect::<Result<Vec<u32>>>()?;
        PointPermutation::new(perm)
    }
}

/// The point permutation `phi'` induced by `phi` and the polarity.
pub fn lift(phi: &SemilinearMap, s: &Polarity, table: &PointTable) -> Result<PointPermutation> {
    Lifter::new(s, table)?.lift(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AutOutcome {
    Automorphism,
    /// The first block whose image is not a block.
    NotAutomorphism { block: usize },
}

/// The block permutation induced by `p`, or the first block whose image is not a block.
pub fn block_permutation(index: &BlockIndex<'_>, d: &Design, p: &PointPermutation) -> Result<Result<Vec<u32>, usize>> {
    if p.len() != d.point_count() {
        return Err(Error::DimensionMismatch(format!(
            "permutation of {} points for a design on {}",
            p.len(),
            d.point_count()
        )));
    }
    let mut buf = Vec::new();
    let mut out = Vec::with_capacity(d.block_count());
    for (i, b) in d.blocks().iter().enumerate() {
        buf.clear();
        buf.extend(b.iter().map(|&x| p.apply(x)));
        buf.sort_unstable();
        match index.get(&buf) {
            Some(j) => out.push(j as u32),
            None => return Ok(Err(i)),
        }
    }
    Ok(Ok(out))
}

pub fn is_design_automorphism(d: &Design, p: &PointPermutation) -> Result<AutOutcome> {
    let index = BlockIndex::new(d);
    Ok(match block_permutation(&index, d, p)? {
        Ok(_) => AutOutcome::Automorphism,
        Err(block) => AutOutcome::NotAutomorphism { block },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LiftRelation {
    Holds,
    /// The lift does not even permute the blocks.
    LiftNotAutomorphism { block: usize },
    /// `alpha(f(W)) != f(phi(W))` at this vertex.
    Fails { vertex: usize, label: String, expected_block: u32, found_block: u32 },
}

/// Checks `alpha ∘ f = f ∘ phi` on every vertex of the twisted graph, where
/// `alpha` is the block permutation induced by `lift(phi)` and `f` is given
/// by `cert`.
pub fn check_lift_relation(
    d: &Design,
    g: &Graph,
    cert: &IsoCertificate,
    phi: &SemilinearMap,
    s: &Polarity,
    table: &PointTable,
) -> Result<LiftRelation> {
    let lifter = Lifter::new(s, table)?;
    let index = BlockIndex::new(d);
    let vertices = VertexIndex::new(g)?;
    lift_relation_with(&lifter, &index, &vertices, d, cert, phi)
}

/// Subspace-label lookup for graph vertices.
pub struct VertexIndex<'a> {
    labels: Vec<&'a Subspace>,
    map: HashMap<&'a Subspace, usize>,
}

impl<'a> VertexIndex<'a> {
    pub fn new(g: &'a Graph) -> Result<VertexIndex<'a>> {
        let labels = g
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| l.subspace().ok_or_else(|| Error::InvalidArgument(format!("vertex {i} has no subspace label"))))
            .collect::<Result<Vec<_>>>()?;
        let map = labels.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        Ok(VertexIndex { labels, map })
    }
}

pub fn lift_relation_with(
    lifter: &Lifter<'_>,
    index: &BlockIndex<'_>,
    vertices: &VertexIndex<'_>,
    d: &Design,
    cert: &IsoCertificate,
    phi: &SemilinearMap,
) -> Result<LiftRelation> {
    if cert.mapping.len() != vertices.labels.len() {
        return Err(Error::DimensionMismatch("certificate and graph sizes differ".into()));
    }
    let point_perm = lifter.lift(phi)?;
    let alpha = match block_permutation(index, d, &point_perm)? {
        Ok(a) => a,
        Err(block) => return Ok(LiftRelation::LiftNotAutomorphism { block }),
    };
    for (v, w) in vertices.labels.iter().enumerate() {
        let image = phi.apply(w)?;
        let target = *vertices
            .map
            .get(&image)
            .ok_or_else(|| Error::InvalidArgument(format!("phi({w}) is not a vertex")))?;
        let expected = cert.mapping[target];
        let found = alpha[cert.mapping[v] as usize];
        if expected != found {
            return Ok(LiftRelation::Fails { vertex: v, label: w.to_string(), expected_block: expected, found_block: found });
        }
    }
    Ok(LiftRelation::Holds)
}

/// `|GL(m, q)| = prod_{i<m} (q^m - q^i)`.
pub fn gl_order(m: u32, q: u64) -> Result<u128> {
    let overflow = || Error::Overflow(format!("|GL({m}, {q})|"));
    let qm = (q as u128).checked_pow(m).ok_or_else(overflow)?;
    (0..m).try_fold(1u128, |acc, i| acc.checked_mul(qm - (q as u128).pow(i)).ok_or_else(overflow))
}

/// `|PΓL(V)_H| = q^(2e) |GL(2e, q)| f` for `q = p^f`.
pub fn stabilizer_order(q: u64, e: u32, f: u32) -> Result<u128> {
    let (_, degree) = u32::try_from(q)
        .ok()
        .and_then(prime_power)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    if degree != f {
        return Err(Error::InvalidArgument(format!("{q} is not p^{f}")));
    }
    let overflow = || Error::Overflow(format!("|PΓL(V)_H| for q = {q}, e = {e}"));
    let translations = (q as u128).checked_pow(2 * e).ok_or_else(overflow)?;
    translations
        .checked_mul(gl_order(2 * e, q)?)
        .and_then(|x| x.checked_mul(f as u128))
        .ok_or_else(overflow)
}

/// All invertible m x m matrices, in the order of their entry encodings.
/// Refuses anything above `2^20` candidate matrices.
pub fn enumerate_gl(field: &Field, m: usize) -> Result<Vec<Matrix>> {
    let q = field.order() as u64;
    let total = q
        .checked_pow((m * m) as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::Unsupported(format!("enumerating GL({m}, {q})")))?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut data = vec![FieldElement::ZERO; m * m];
            for slot in data.iter_mut().rev() {
                *slot = field.elem((code % q) as u32).expect("in range");
                code /= q;
            }
            let a = Matrix::new(field, m, m, data).expect("shape");
            let invertible = if q == 2 { BitMatrix::from_matrix(&a).rank() == m } else { a.is_invertible() };
            invertible.then_some(a)
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveReport {
    pub group_elements: u64,
    pub expected_order: u128,
    pub automorphisms: u64,
    pub failures: Vec<ExhaustiveFailure>,
    pub distinct_lifts: u64,
    pub identity_lifts: u64,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self.group_elements as u128 == self.expected_order
            && self.automorphisms == self.group_elements
            && self.distinct_lifts == self.group_elements
            && self.identity_lifts == 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExhaustiveFailure {
    pub map: SemilinearMap,
    pub block: usize,
}

/// Lifts every element of `GL(5, 2)_H` (which equals `ΓL(V)_H` and, since
/// the only scalar is 1, also `PΓL(V)_H`) and checks that each lift is a
/// distinct automorphism of `d`. Only `q = 2, e = 2` is supported.
///
/// `progress` receives `(done, total)` counts of GL(4, 2) blocks.
pub fn exhaustive_lift_check(
    d: &Design,
    s: &Polarity,
    table: &PointTable,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> Result<ExhaustiveReport> {
    let field = table.field();
    if field.order() != 2 || table.dim() != 5 {
        return Err(Error::Unsupported("exhaustive lift check is limited to q = 2, e = 2".into()));
    }
    let m = 4;
    let blocks = enumerate_gl(field, m)?;
    let lifter = Lifter::new(s, table)?;
    let index = BlockIndex::new(d);
    let columns: Vec<Vec<FieldElement>> = (0..16u32)
        .map(|c| (0..m).map(|i| field.elem(c >> (m - 1 - i) & 1).expect("bit")).collect())
        .collect();
    let done = AtomicUsize::new(0);
    let total = blocks.len();

    type Chunk = (Vec<Vec<u8>>, Vec<ExhaustiveFailure>);
    let results: Vec<Chunk> = blocks
        .par_iter()
        .map(|a| -> Result<Chunk> {
            let mut perms = Vec::with_capacity(columns.len());
            let mut failures = Vec::new();
            for col in &columns {
                let map = SemilinearMap { matrix: stabilizer_matrix(a, col, FieldElement::ONE)?, frob: 0 };
                let p = lifter.lift(&map)?;
                match block_permutation(&index, d, &p)? {
                    Ok(_) => perms.push(p.as_slice().iter().map(|&x| x as u8).collect()),
                    Err(block) => failures.push(ExhaustiveFailure { map, block }),
                }
            }
            let n = done.fetch_add(1, Ordering::Relaxed) + 1;
            if n.is_multiple_of(1000) || n == total {
                progress(n, total);
            }
            Ok((perms, failures))
        })
        .collect::<Result<_>>()?;

    let identity: Vec<u8> = (0..table.len() as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::with_capacity(total * columns.len());
    let mut automorphisms = 0u64;
    let mut identity_lifts = 0u64;
    let mut failures = Vec::new();
    for (perms, fails) in results {
        automorphisms += perms.len() as u64;
        failures.extend(fails);
        for p in perms {
            if p == identity {
                identity_lifts += 1;
            }
            seen.insert(p);
        }
    }
    Ok(ExhaustiveReport {
        group_elements: (total * columns.len()) as u64,
        expected_order: stabilizer_order(2, 2, 1)?,
        automorphisms,
        failures,
        distinct_lifts: seen.len() as u64,
        identity_lifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Instance;

    fn inst(q: u32) -> Instance {
        Instance::new(&Field::with_order(q).unwrap(), 2, None).unwrap()
    }

    #[test]
    fn stabilizer_order_examples() {
        assert_eq!(gl_order(4, 2).unwrap(), 20160);
        assert_eq!(gl_order(4, 3).unwrap(), 80 * 78 * 72 * 54);
        assert_eq!(stabilizer_order(2, 2, 1).unwrap(), 322560);
        assert_eq!(stabilizer_order(3, 2, 1).unwrap(), 1965150720);
        assert_eq!(stabilizer_order(3, 0, 1).unwrap(), 1);
        assert_eq!(stabilizer_order(4, 1, 2).unwrap(), 16 * 180 * 2);
        assert!(stabilizer_order(6, 2, 1).is_err());
        assert!(stabilizer_order(4, 2, 1).is_err());
        assert!(matches!(stabilizer_order(65521, 40, 1), Err(Error::Overflow(_))));
    }

    #[test]
    fn gl_enumeration_count() {
        let k = Field::prime(2).unwrap();
        assert_eq!(enumerate_gl(&k, 3).unwrap().len(), 168);
        assert_eq!(enumerate_gl(&k, 4).unwrap().len() as u128, gl_order(4, 2).unwrap());
        assert!(enumerate_gl(&Field::prime(3).unwrap(), 4).is_err());
    }

    #[test]
    fn sampler_is_reproducible_and_stabilizes() {
        let i = inst(2);
        let a = random_stabilizer_element(&i.field, 2, 99);
        let b = random_stabilizer_element(&i.field, 2, 99);
        assert_eq!(a, b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = random_stabilizer_element_with(&i.field, 2, &mut rng);
            assert!(g.stabilizes(&i.h).unwrap());
            assert!(g.matrix().is_invertible());
        }
    }

    #[test]
    fn sampler_hits_every_frobenius_power() {
        let k = Field::with_order(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let powers: HashSet<u32> = (0..1000).map(|_| random_stabilizer_element_with(&k, 2, &mut rng).frob()).collect();
        assert_eq!(powers, HashSet::from([0, 1]));
    }

    #[test]
    fn lift_examples() {
        let i = inst(2);
        let k = &i.field;
        let id = SemilinearMap::identity(k, 5);
        assert!(lift(&id, &i.polarity, &i.table).unwrap().is_identity());

        let i3 = inst(3);
        let two = SemilinearMap::identity(&i3.field, 5).scaled(i3.field.elem(2).unwrap()).unwrap();
        assert!(lift(&two, &i3.polarity, &i3.table).unwrap().is_identity());

        let swap = Matrix::from_rows(
            k,
            5,
            &[[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
        )
        .unwrap();
        let phi = SemilinearMap::new(swap, 0).unwrap();
        let p = lift(&phi, &i.polarity, &i.table).unwrap();
        let e1 = Subspace::coordinate(k, 5, &[0]).unwrap();
        let e2 = Subspace::coordinate(k, 5, &[1]).unwrap();
        let idx = |w: &Subspace| i.table.indices(w)[0];
        assert_eq!(p.apply(idx(&e1)), idx(&e2));

        let bad = Matrix::from_rows(
            k,
            5,
            &[[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [1, 0, 0, 0, 1]],
        )
        .unwrap();
        let off = SemilinearMap::new(bad, 0).unwrap();
        assert!(matches!(lift(&off, &i.polarity, &i.table), Err(Error::NotStabilizing)));
    }

    #[test]
    fn automorphism_examples() {
        let i = inst(2);
        let d = i.jt_design().unwrap();
        assert_eq!(is_design_automorphism(&d, &PointPermutation::identity(31)).unwrap(), AutOutcome::Automorphism);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let phi = random_stabilizer_element_with(&i.field, 2, &mut rng);
            let p = lift(&phi, &i.polarity, &i.table).unwrap();
            assert_eq!(is_design_automorphism(&d, &p).unwrap(), AutOutcome::Automorphism);
        }
        // a point of H and a point off H lie in different numbers of B' blocks
        let in_h = i.table.indices(&Subspace::coordinate(&i.field, 5, &[0]).unwrap())[0];
        let off_h = i.table.indices(&Subspace::coordinate(&i.field, 5, &[4]).unwrap())[0];
        let t = PointPermutation::transposition(31, in_h, off_h);
        assert!(matches!(is_design_automorphism(&d, &t).unwrap(), AutOutcome::NotAutomorphism { .. }));
        assert!(is_design_automorphism(&d, &PointPermutation::identity(7)).is_err());
    }

    #[test]
    fn lift_is_a_homomorphism_and_ignores_scalars() {
        for q in [2, 3, 4] {
            let i = inst(q);
            let lifter = Lifter::new(&i.polarity, &i.table).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..25 {
                let phi = random_stabilizer_element_with(&i.field, 2, &mut rng);
                let psi = random_stabilizer_element_with(&i.field, 2, &mut rng);
                let both = lifter.lift(&phi.compose(&psi).unwrap()).unwrap();
                assert_eq!(both, lifter.lift(&phi).unwrap().compose(&lifter.lift(&psi).unwrap()));
                for c in i.field.nonzero_elements() {
                    assert_eq!(lifter.lift(&phi.scaled(c).unwrap()).unwrap(), lifter.lift(&phi).unwrap());
                }
            }
        }
    }

    #[test]
    fn lift_relation_examples() {
        let i = inst(2);
        let g = i.twisted_graph().unwrap();
        let d = i.jt_design().unwrap();
        let cert = i.f_certificate(&g, &d).unwrap();
        let id = SemilinearMap::identity(&i.field, 5);
        let check = |c: &IsoCertificate, phi: &SemilinearMap| {
            check_lift_relation(&d, &g, c, phi, &i.polarity, &i.table).unwrap()
        };
        assert_eq!(check(&cert, &id), LiftRelation::Holds);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let phis: Vec<_> = (0..10).map(|_| random_stabilizer_element_with(&i.field, 2, &mut rng)).collect();
        for phi in &phis {
            assert_eq!(check(&cert, phi), LiftRelation::Holds);
        }
        let corrupted = cert.with_swap(0, 150);
        assert!(phis.iter().any(|phi| matches!(check(&corrupted, phi), LiftRelation::Fails { .. })));
    }
}
