//! Polarity of a hyperplane H: orthogonal complement inside H under a
//! nondegenerate reflexive bilinear form given by its Gram matrix in the
//! coordinates of H's canonical basis.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::linalg::Matrix;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Alternating,
}

#[derive(Clone, Debug)]
pub struct Polarity {
    h: Subspace,
    gram: Matrix,
    kind: FormKind,
}

impl Polarity {
    /// Validates `gram` (dim H x dim H) as a nondegenerate symmetric or
    /// alternating form. `None` selects the identity.
    pub fn new(h: &Subspace, gram: Option<Matrix>) -> Result<Polarity> {
        let m = h.dim();
        let gram = gram.unwrap_or_else(|| Matrix::identity(h.field(), m));
        if gram.field() != h.field() {
            return Err(Error::FieldMismatch);
        }
        if gram.rows() != m || gram.cols() != m {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} gram for a {m}-dimensional space",
                gram.rows(),
                gram.cols()
            )));
        }
        let kind = if gram.is_symmetric() {
            FormKind::Symmetric
        } else if gram.is_alternating() {
            FormKind::Alternating
        } else {
            return Err(Error::BadForm("neither symmetric nor alternating"));
        };
        if gram.rank() != m {
            return Err(Error::BadForm("degenerate"));
        }
        Ok(Polarity { h: h.clone(), gram, kind })
    }

    /// The standard alternating form `sum x_{2i} y_{2i+1} - x_{2i+1} y_{2i}`.
    pub fn symplectic(h: &Subspace) -> Result<Polarity> {
        let m = h.dim();
        if !m.is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!("symplectic form needs even dimension, got {m}")));
        }
        let k = h.field();
        let mut g = Matrix::zeros(k, m, m);
        for i in (0..m).step_by(2) {
            g.set(i, i + 1, FieldElement::ONE);
            g.set(i + 1, i, k.neg(FieldElement::ONE));
        }
        Polarity::new(h, Some(g))
    }

    pub fn hyperplane(&self) -> &Subspace {
        &self.h
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// `sigma(W) = {x in H : B(x, w) = 0 for all w in W}`.
    pub fn apply(&self, w: &Subspace) -> Result<Subspace> {
        if !self.h.contains(w)? {
            return Err(Error::NotInHyperplane);
        }
        let k = self.h.field();
        let m = self.h.dim();
        let coords: Vec<FieldElement> = w
            .basis_rows()
            .flat_map(|row| self.h.pivots().iter().map(move |&c| row[c]))
            .collect();
        let wc = Matrix::new(k, w.dim(), m, coords)?;
        let perp = wc.mul(&self.gram)?.kernel_basis();
        let vectors: Vec<Vec<FieldElement>> = perp.row_iter().map(|y| self.h.combine(y)).collect();
        Subspace::span(k, self.h.ambient_dim(), vectors.iter().map(Vec::as_slice))
    }
}
