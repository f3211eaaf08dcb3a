//! Dense matrices over GF(q): reduced row echelon form, rank, kernels.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{:?}>[", self.field)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for v in self.row(r) {
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| v.value() >= field.order()) {
            return Err(Error::OutOfRange(format!("entry {bad} of {field}")));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Builds a matrix from integer-encoded rows. All rows must share `cols`.
    pub fn from_rows<R: AsRef<[u32]>>(field: &Field, cols: usize, rows: &[R]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            for &v in r {
                data.push(field.elem(v)?);
            }
        }
        Ok(Matrix { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Stacks element rows; every row must have length `cols`.
    pub fn from_element_rows<'a, I>(field: &Field, cols: usize, rows: I) -> Result<Matrix>
    where
        I: IntoIterator<Item = &'a [FieldElement]>,
    {
        let mut data = Vec::new();
        let mut n = 0;
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            data.extend_from_slice(r);
            n += 1;
        }
        Ok(Matrix { field: field.clone(), rows: n, cols, data })
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[FieldElement]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.iter().map(|v| v.value()).collect()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = self.get(r, m);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = k.add(out.data[idx], k.mul(a, other.get(m, c)));
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let k = &self.field;
        Ok(self
            .row_iter()
            .map(|row| dot(k, row, x))
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_alternating(&self) -> bool {
        let k = &self.field;
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                self.get(r, r).is_zero() && (0..r).all(|c| self.get(r, c) == k.neg(self.get(c, r)))
            })
    }

    pub fn scale(&self, s: FieldElement) -> Matrix {
        let k = &self.field;
        Matrix {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| k.mul(s, v)).collect(),
        }
    }

    /// Applies `x -> x^(p^i)` to every entry.
    pub fn frobenius(&self, i: u32) -> Matrix {
        let k = &self.field;
        Matrix {
            field: k.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| k.frobenius(v, i)).collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = rref_in_place(&self.field, &mut m.data, self.rows, self.cols);
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.field.order() == 2 {
            return gf2::BitMatrix::from_matrix(self).rank();
        }
        let mut data = self.data.clone();
        rref_in_place(&self.field, &mut data, self.rows, self.cols).0
    }

    /// Basis, in RREF, of `{x : self * x^T = 0}`.
    pub fn kernel_basis(&self) -> Matrix {
        let Rref { matrix: r, pivots, .. } = self.rref();
        let k = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Matrix::zeros(k, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, FieldElement::ONE);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, k.neg(r.get(row, fc)));
            }
        }
        let (_, _) = rref_in_place(k, &mut out.data, out.rows, out.cols);
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> Matrix {
        Matrix::from_element_rows(
            &self.field,
            self.cols,
            self.row_iter().filter(|r| r.iter().any(|v| !v.is_zero())),
        )
        .expect("row lengths unchanged")
    }
}

#[inline]
pub(crate) fn dot(k: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
}

/// Gauss-Jordan elimination on a row-major buffer. Returns `(rank, pivots)`.
pub(crate) fn rref_in_place(k: &Field, data: &mut [FieldElement], rows: usize, cols: usize) -> (usize, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(src) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if src != r {
            for j in 0..cols {
                data.swap(src * cols + j, r * cols + j);
            }
        }
        let lead = data[r * cols + c];
        if lead != FieldElement::ONE {
            let inv = k.inv(lead).expect("pivot is nonzero");
            for j in c..cols {
                data[r * cols + j] = k.mul(inv, data[r * cols + j]);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            let neg = k.neg(factor);
            for j in c..cols {
                let v = k.mul(neg, data[r * cols + j]);
                data[i * cols + j] = k.add(data[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

pub mod gf2 {
    //! Bit-packed GF(2) rows for fast rank of large 0/1 matrices.

    use super::Matrix;

    #[derive(Clone, Debug)]
    pub struct BitMatrix {
        cols: usize,
        words: usize,
        rows: Vec<Vec<u64>>,
    }

    impl BitMatrix {
        pub fn new(cols: usize) -> BitMatrix {
            BitMatrix { cols, words: cols.div_ceil(64), rows: Vec::new() }
        }

        pub fn push_row_from_indices(&mut self, ones: impl IntoIterator<Item = usize>) {
            let mut row = vec![0u64; self.words];
            for c in ones {
                assert!(c < self.cols, "column {c} out of range");
                row[c / 64] |= 1 << (c % 64);
            }
            self.rows.push(row);
        }

        /// Reads a matrix over GF(2); entries are taken mod 2.
        pub fn from_matrix(m: &Matrix) -> BitMatrix {
            let mut b = BitMatrix::new(m.cols());
            for r in m.row_iter() {
                b.push_row_from_indices(r.iter().enumerate().filter(|(_, v)| v.value() & 1 == 1).map(|(c, _)| c));
            }
            b
        }

        pub fn rank(&self) -> usize {
            let mut rows = self.rows.clone();
            let mut rank = 0;
            for c in 0..self.cols {
                let (w, bit) = (c / 64, 1u64 << (c % 64));
                let Some(src) = (rank..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
                    continue;
                };
                rows.swap(rank, src);
                let pivot = rows[rank].clone();
                for (i, row) in rows.iter_mut().enumerate() {
                    if i != rank && row[w] & bit != 0 {
                        for (a, b) in row.iter_mut().zip(&pivot) {
                            *a ^= b;
                        }
                    }
                }
                rank += 1;
                if rank == rows.len() {
                    break;
                }
            }
            rank
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn fano(field: &Field) -> Matrix {
        // lines of PG(2,2) as {i, i+1, i+3} mod 7
        let rows: Vec<Vec<u32>> = (0..7)
            .map(|i| {
                let mut r = vec![0u32; 7];
                for d in [0, 1, 3] {
                    r[(i + d) % 7] = 1;
                }
                r
            })
            .collect();
        Matrix::from_rows(field, 7, &rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(&gf(2), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let z = Matrix::zeros(&gf(3), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());

        let m = Matrix::from_rows(&gf(3), 2, &[[2, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 2]]);
        assert_eq!((r.rank, r.pivots), (1, vec![0]));
    }

    #[test]
    fn rank_examples() {
        for q in [2, 3, 4] {
            assert_eq!(Matrix::identity(&gf(q), 5).rank(), 5);
            let same = Matrix::from_rows(&gf(q), 3, &[[1, 0, 1], [1, 0, 1], [1, 0, 1]]).unwrap();
            assert_eq!(same.rank(), 1);
        }
        assert_eq!(fano(&gf(2)).rank(), 4);
        // det N = k (r - lambda)^3 = 24 is divisible by 3, so N is singular mod 3
        assert_eq!(fano(&gf(3)).rank(), 6);
        assert_eq!(fano(&gf(5)).rank(), 7);
    }

    #[test]
    fn kernel_examples() {
        let k2 = gf(2);
        assert_eq!(Matrix::zeros(&k2, 1, 3).kernel_basis(), Matrix::identity(&k2, 3));
        assert_eq!(Matrix::identity(&k2, 3).kernel_basis().rows(), 0);
        let m = Matrix::from_rows(&k2, 3, &[[1, 1, 0]]).unwrap();
        // brute force: all x in GF(2)^3 with x1 + x2 = 0
        let solutions: Vec<[u32; 3]> = (0..8u32)
            .map(|v| [v >> 2 & 1, v >> 1 & 1, v & 1])
            .filter(|x| (x[0] + x[1]) % 2 == 0)
            .collect();
        assert_eq!(solutions.len(), 4);
        assert_eq!(m.kernel_basis().to_rows(), vec![vec![1, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn bit_packed_rank_agrees_with_generic() {
        let k = gf(2);
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..50 {
            let rows = 1 + (state % 40) as usize;
            let cols = 1 + (state / 7 % 140) as usize;
            let mut data = Vec::new();
            for _ in 0..rows * cols {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                data.push(k.elem((state & 1) as u32).unwrap());
            }
            let m = Matrix::new(&k, rows, cols, data.clone()).unwrap();
            let mut copy = data;
            let generic = rref_in_place(&k, &mut copy, rows, cols).0;
            assert_eq!(m.rank(), generic);
        }
    }

    fn arb_matrix(q: u32) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..q, r * c).prop_map(move |vals| {
                let k = gf(q);
                let data = vals.into_iter().map(|v| k.elem(v).unwrap()).collect();
                Matrix::new(&k, r, c, data).unwrap()
            })
        })
    }

    fn in_row_space(m: &Matrix, v: &[FieldElement]) -> bool {
        let mut rows: Vec<&[FieldElement]> = m.row_iter().collect();
        let base = m.rank();
        rows.push(v);
        Matrix::from_element_rows(m.field(), m.cols(), rows).unwrap().rank() == base
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop_oneof![arb_matrix(2), arb_matrix(3), arb_matrix(4)]) {
            prop_assert_eq!(m.rank() + m.kernel_basis().rows(), m.cols());
            let ker = m.kernel_basis();
            for v in ker.row_iter() {
                prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn rref_idempotent_and_row_space_preserving(m in prop_oneof![arb_matrix(2), arb_matrix(3), arb_matrix(4)]) {
            let r = m.rref();
            prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
            prop_assert_eq!(r.rank, m.rank());
            for row in r.matrix.row_iter() {
                prop_assert!(in_row_space(&m, row));
            }
            for row in m.row_iter() {
                prop_assert!(in_row_space(&r.matrix, row));
            }
            prop_assert!(r.pivots.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
