//! Subspaces of GF(q)^n in canonical RREF form, projective points, and
//! k-subspace enumeration.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{rref_in_place, Matrix};

/// A subspace of GF(q)^n. The basis is the reduced row echelon form with no
/// zero rows, so equal subspaces have identical data.
#[derive(Clone)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis.cols() == other.basis.cols() && self.basis.entries() == other.basis.entries()
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.cols().hash(state);
        self.basis.entries().hash(state);
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.basis.cols(), self.dim(), self.basis.entries()).cmp(&(
            other.basis.cols(),
            other.dim(),
            other.basis.entries(),
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.field().order() > 10 { "," } else { "" };
        write!(f, "<")?;
        for (i, row) in self.basis.row_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", row.iter().map(|v| v.to_string()).join(sep))?;
        }
        write!(f, ">")
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.to_rows().serialize(s)
    }
}

impl Subspace {
    fn from_canonical(basis: Matrix, pivots: Vec<usize>) -> Subspace {
        Subspace { basis, pivots }
    }

    /// Canonical span of the given vectors in GF(q)^n.
    pub fn span<'a, I>(field: &Field, n: usize, vectors: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = &'a [FieldElement]>,
    {
        let m = Matrix::from_element_rows(field, n, vectors)?;
        Ok(Subspace::from_matrix(&m))
    }

    /// Canonical row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let r = m.rref();
        let basis = Matrix::from_element_rows(m.field(), m.cols(), r.matrix.row_iter().take(r.rank))
            .expect("rows come from a matrix of the same width");
        Subspace::from_canonical(basis, r.pivots)
    }

    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, n: usize, rows: &[R]) -> Result<Subspace> {
        Ok(Subspace::from_matrix(&Matrix::from_rows(field, n, rows)?))
    }

    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace::from_canonical(Matrix::zeros(field, 0, n), Vec::new())
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace::from_canonical(Matrix::identity(field, n), (0..n).collect())
    }

    /// Span of the standard basis vectors `e_i` for the given 0-based indices.
    pub fn coordinate(field: &Field, n: usize, indices: &[usize]) -> Result<Subspace> {
        let mut rows = Vec::new();
        for &i in indices {
            if i >= n {
                return Err(Error::OutOfRange(format!("coordinate {i} in dimension {n}")));
            }
            let mut r = vec![0u32; n];
            r[i] = 1;
            rows.push(r);
        }
        Subspace::from_rows(field, n, &rows)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[FieldElement]> + '_ {
        self.basis.row_iter()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let m = Matrix::from_element_rows(self.field(), self.ambient_dim(), self.basis_rows().chain(other.basis_rows()))?;
        Ok(Subspace::from_matrix(&m))
    }

    /// Annihilator under the standard dot product, as a matrix of row vectors.
    fn annihilator(&self) -> Matrix {
        self.basis.kernel_basis()
    }

    /// `U ∩ W`, computed as the annihilator of `ann(U) + ann(W)`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let a = self.annihilator();
        let b = other.annihilator();
        let stacked = Matrix::from_element_rows(self.field(), self.ambient_dim(), a.row_iter().chain(b.row_iter()))?;
        Ok(Subspace::from_matrix(&stacked.kernel_basis()))
    }

    /// Reduces `v` against the echelon basis; the remainder is zero iff `v` lies in the subspace.
    fn reduce(&self, v: &mut [FieldElement]) {
        let k = self.field();
        for (row, &c) in self.basis_rows().zip(&self.pivots) {
            let coeff = v[c];
            if coeff.is_zero() {
                continue;
            }
            let neg = k.neg(coeff);
            for (x, &r) in v.iter_mut().zip(row) {
                *x = k.add(*x, k.mul(neg, r));
            }
        }
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in dimension {}",
                v.len(),
                self.ambient_dim()
            )));
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(|x| x.is_zero()))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in other.basis_rows() {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, p: &ProjectivePoint) -> Result<bool> {
        self.contains_vector(&p.rep)
    }

    /// Coefficients of `v` with respect to the canonical basis, if `v` is a member.
    pub fn coordinates(&self, v: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&c| v[c]).collect()))
    }

    /// Linear combination `sum coeffs[i] * basis[i]`.
    pub fn combine(&self, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        let k = self.field();
        let mut out = vec![FieldElement::ZERO; self.ambient_dim()];
        for (row, &c) in self.basis_rows().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (x, &r) in out.iter_mut().zip(row) {
                *x = k.add(*x, k.mul(c, r));
            }
        }
        out
    }

    pub fn is_hyperplane(&self) -> bool {
        self.ambient_dim() > 0 && self.dim() + 1 == self.ambient_dim()
    }

    /// All k-dimensional subspaces of `self`, each exactly once.
    ///
    /// Order: pivot column sets of the k x dim coefficient RREF in
    /// lexicographic order, then free entries as a base-q counter with the
    /// first free position most significant.
    pub fn k_subspaces(&self, k: usize) -> Result<KSubspaces<'_>> {
        if k > self.dim() {
            return Err(Error::OutOfRange(format!("subspace dimension {k} in a {}-dimensional space", self.dim())));
        }
        Ok(KSubspaces::new(self, k))
    }

    /// The projective points `[W]`, sorted by encoding.
    pub fn projective_points(&self) -> Vec<ProjectivePoint> {
        let k = self.field();
        let q = k.order();
        let d = self.dim();
        let mut out = Vec::new();
        // Coefficient vectors whose first nonzero entry is 1 give monic vectors,
        // because the leading coordinate of sum c_i b_i is the first nonzero c_i.
        for lead in 0..d {
            let tail = d - lead - 1;
            let mut coeffs = vec![FieldElement::ZERO; d];
            coeffs[lead] = FieldElement::ONE;
            for t in 0..(q as u64).pow(tail as u32) {
                let mut x = t;
                for slot in (lead + 1..d).rev() {
                    coeffs[slot] = FieldElement::from_index((x % q as u64) as u32);
                    x /= q as u64;
                }
                out.push(ProjectivePoint { rep: self.combine(&coeffs) });
            }
        }
        out.sort();
        out
    }

    /// Points of `[W]` not lying in the hyperplane `h`.
    pub fn affine_points(&self, h: &Subspace) -> Result<Vec<ProjectivePoint>> {
        self.check_compatible(h)?;
        if !h.is_hyperplane() {
            return Err(Error::NotHyperplane);
        }
        let mut out = Vec::new();
        for p in self.projective_points() {
            if !h.contains_point(&p)? {
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// Streaming enumeration of k-subspaces; see [`Subspace::k_subspaces`].
pub struct KSubspaces<'a> {
    ambient: &'a Subspace,
    k: usize,
    q: u32,
    combos: Box<dyn Iterator<Item = Vec<usize>> + 'a>,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    exhausted_pattern: bool,
    done: bool,
}

impl<'a> KSubspaces<'a> {
    fn new(ambient: &'a Subspace, k: usize) -> KSubspaces<'a> {
        let m = ambient.dim();
        let mut it = KSubspaces {
            ambient,
            k,
            q: ambient.field().order(),
            combos: Box::new((0..m).combinations(k)),
            pivots: Vec::new(),
            free: Vec::new(),
            counter: Vec::new(),
            exhausted_pattern: true,
            done: false,
        };
        it.next_pattern();
        it
    }

    fn next_pattern(&mut self) {
        match self.combos.next() {
            None => self.done = true,
            Some(p) => {
                let m = self.ambient.dim();
                self.free = p
                    .iter()
                    .enumerate()
                    .flat_map(|(row, &pc)| (pc + 1..m).filter(|c| !p.contains(c)).map(move |c| (row, c)))
                    .collect();
                self.counter = vec![0; self.free.len()];
                self.pivots = p;
                self.exhausted_pattern = false;
            }
        }
    }

    fn current(&self) -> Subspace {
        let field = self.ambient.field();
        let m = self.ambient.dim();
        let mut coeffs = Matrix::zeros(field, self.k, m);
        for (row, &pc) in self.pivots.iter().enumerate() {
            coeffs.set(row, pc, FieldElement::ONE);
        }
        for (&(row, c), &v) in self.free.iter().zip(&self.counter) {
            coeffs.set(row, c, FieldElement::from_index(v));
        }
        let vectors: Vec<Vec<FieldElement>> = coeffs.row_iter().map(|r| self.ambient.combine(r)).collect();
        let n = self.ambient.ambient_dim();
        let mut data: Vec<FieldElement> = vectors.concat();
        let (rank, pivots) = rref_in_place(field, &mut data, self.k, n);
        debug_assert_eq!(rank, self.k);
        let basis = Matrix::new(field, self.k, n, data).expect("shape preserved");
        Subspace::from_canonical(basis, pivots)
    }

    fn advance(&mut self) {
        for digit in self.counter.iter_mut().rev() {
            *digit += 1;
            if *digit < self.q {
                return;
            }
            *digit = 0;
        }
        self.exhausted_pattern = true;
    }
}

impl Iterator for KSubspaces<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        if self.exhausted_pattern {
            self.next_pattern();
        }
        Some(out)
    }
}

/// Number of k-dimensional subspaces of an n-dimensional space over GF(q).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<u64> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} with n = {n}")));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!("q = {q}")));
    }
    let overflow = || Error::Overflow(format!("gaussian binomial [{n} {k}]_{q}"));
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = (q as u128).checked_pow(n - i).ok_or_else(overflow)? - 1;
        let den = (q as u128).checked_pow(i + 1).ok_or_else(overflow)? - 1;
        // acc is [n i]_q, so acc * num is divisible by den
        acc = acc.checked_mul(num).ok_or_else(overflow)? / den;
    }
    u64::try_from(acc).map_err(|_| overflow())
}

/// `(q^m - 1)/(q - 1)`, the number of points of an m-dimensional space.
pub fn point_count(m: u32, q: u64) -> Result<u64> {
    if m == 0 {
        return Ok(0);
    }
    gaussian_binomial(m, 1, q)
}

/// A 1-dimensional subspace, stored as its monic representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjectivePoint {
    rep: Vec<FieldElement>,
}

impl ProjectivePoint {
    /// `<v>` for nonzero `v`; `None` for the zero vector.
    pub fn normalize(field: &Field, v: &[FieldElement]) -> Option<ProjectivePoint> {
        let lead = v.iter().copied().find(|x| !x.is_zero())?;
        let inv = field.inv(lead).expect("lead is nonzero");
        Some(ProjectivePoint { rep: v.iter().map(|&x| field.mul(inv, x)).collect() })
    }

    pub fn rep(&self) -> &[FieldElement] {
        &self.rep
    }

    /// Base-q integer with the first coordinate most significant.
    pub fn encode(&self, q: u32) -> u64 {
        encode_vector(&self.rep, q)
    }

    pub fn span(&self, field: &Field) -> Subspace {
        Subspace::span(field, self.rep.len(), [self.rep.as_slice()]).expect("single row")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.rep.iter().map(|v| v.to_string()).join(","))
    }
}

pub fn encode_vector(v: &[FieldElement], q: u32) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * q as u64 + x.value() as u64)
}

/// Index of the points of GF(q)^n, in the sorted order of
/// [`Subspace::projective_points`] on the full space.
#[derive(Clone, Debug)]
pub struct PointTable {
    field: Field,
    n: usize,
    points: Vec<ProjectivePoint>,
    lookup: Vec<u32>,
}

/// Largest `q^n` for which a dense point lookup table is built.
pub const MAX_TABLE: u64 = 1 << 26;

impl PointTable {
    pub fn new(field: &Field, n: usize) -> Result<PointTable> {
        let size = (field.order() as u64)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_TABLE)
            .ok_or_else(|| Error::Unsupported(format!("point table for {field}^{n}")))?;
        let points = Subspace::full(field, n).projective_points();
        let mut lookup = vec![u32::MAX; size as usize];
        for (i, p) in points.iter().enumerate() {
            lookup[p.encode(field.order()) as usize] = i as u32;
        }
        Ok(PointTable { field: field.clone(), n, points, lookup })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &ProjectivePoint) -> u32 {
        self.lookup[p.encode(self.field.order()) as usize]
    }

    /// Index of `<v>`; `None` for the zero vector.
    pub fn index_of_vector(&self, v: &[FieldElement]) -> Option<u32> {
        ProjectivePoint::normalize(&self.field, v).map(|p| self.index_of(&p))
    }

    /// Sorted point indices of `[W]`.
    pub fn indices(&self, w: &Subspace) -> Vec<u32> {
        let mut out: Vec<u32> = w.projective_points().iter().map(|p| self.index_of(p)).collect();
        out.sort_unstable();
        out
    }
}
