//! Tensor-shaped vector spaces and linear maps between them.
//!
//! A [`Space`] is an ordered list of factor dimensions; the empty list is the
//! base field. Basis vectors of a tensor space are indexed row-major with the
//! leftmost factor most significant, and every structure-constant matrix in
//! the crate depends on that convention.
//!
//! The 1-cell composite written `ts` throughout is realized as the tensor
//! factor order `t ⊗ s`, i.e. the left letter is the left tensor factor.

use crate::field::{FieldDesc, Scalar};
use crate::matrix::{Matrix, MatrixError};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinMapError {
    #[error("matrix is {mr}×{mc} but the declared spaces need {cod}×{dom}")]
    MatrixShape {
        mr: usize,
        mc: usize,
        cod: usize,
        dom: usize,
    },
    #[error("shape mismatch composing maps: inner dims {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// An ordered tensor product of finite-dimensional factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    shape: Vec<usize>,
}

impl Space {
    pub fn new(shape: Vec<usize>) -> Space {
        assert!(
            shape.iter().all(|&d| d >= 1),
            "factor dimensions must be ≥ 1"
        );
        Space { shape }
    }

    /// The base field as a space (empty shape, dimension 1).
    pub fn scalar() -> Space {
        Space { shape: Vec::new() }
    }

    /// A single factor of the given dimension.
    pub fn line(dim: usize) -> Space {
        Space::new(vec![dim])
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn tensor(&self, other: &Space) -> Space {
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        Space { shape }
    }

    pub fn tensor_all(spaces: &[&Space]) -> Space {
        let mut shape = Vec::new();
        for s in spaces {
            shape.extend_from_slice(&s.shape);
        }
        Space { shape }
    }

    /// Decodes a flat basis index into a multi-index over the factors.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.shape.len()];
        for (slot, &d) in out.iter_mut().zip(&self.shape).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn encode(&self, multi: &[usize]) -> usize {
        assert_eq!(multi.len(), self.shape.len());
        let mut index = 0;
        for (&i, &d) in multi.iter().zip(&self.shape) {
            debug_assert!(i < d);
            index = index * d + i;
        }
        index
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shape.is_empty() {
            return write!(f, "F");
        }
        let parts: Vec<String> = self.shape.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

/// A linear map between tensor-shaped spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: Space,
    codomain: Space,
    matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: Space, codomain: Space, matrix: Matrix) -> Result<LinMap, LinMapError> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(LinMapError::MatrixShape {
                mr: matrix.rows(),
                mc: matrix.cols(),
                cod: codomain.dim(),
                dom: domain.dim(),
            });
        }
        Ok(LinMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(space: &Space, field: FieldDesc) -> LinMap {
        LinMap {
            domain: space.clone(),
            codomain: space.clone(),
            matrix: Matrix::identity(space.dim(), field),
        }
    }

    pub fn domain(&self) -> &Space {
        &self.domain
    }

    pub fn codomain(&self) -> &Space {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> FieldDesc {
        self.matrix.field()
    }

    /// Same matrix, reinterpreted domain factorization (dimension must match).
    pub fn with_domain(mut self, domain: Space) -> LinMap {
        assert_eq!(self.domain.dim(), domain.dim(), "relabel changes dimension");
        self.domain = domain;
        self
    }

    /// Same matrix, reinterpreted codomain factorization.
    pub fn with_codomain(mut self, codomain: Space) -> LinMap {
        assert_eq!(
            self.codomain.dim(),
            codomain.dim(),
            "relabel changes dimension"
        );
        self.codomain = codomain;
        self
    }

    /// Kronecker product; factor lists concatenate, `self` leftmost.
    pub fn tensor(&self, other: &LinMap) -> LinMap {
        LinMap {
            domain: self.domain.tensor(&other.domain),
            codomain: self.codomain.tensor(&other.codomain),
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    pub fn tensor_all(maps: &[&LinMap]) -> LinMap {
        assert!(!maps.is_empty());
        let mut acc = maps[0].clone();
        for m in &maps[1..] {
            acc = acc.tensor(m);
        }
        acc
    }

    /// `self ∘ inner` (apply `inner` first). Requires matching dimensions;
    /// factorizations may differ, the codomain shape of `self` is kept.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap, LinMapError> {
        if inner.codomain.dim() != self.domain.dim() {
            return Err(LinMapError::ShapeMismatch(
                inner.codomain.dim(),
                self.domain.dim(),
            ));
        }
        Ok(LinMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.matmul(&inner.matrix)?,
        })
    }

    /// `next ∘ self`, so pipelines read like the commuting diagrams:
    /// `a.then(&b).then(&c)` is the composite a, then b, then c.
    pub fn then(&self, next: &LinMap) -> LinMap {
        next.compose(self).expect("composable maps")
    }

    /// The flip `a⊗b → b⊗a`, sending basis (i,j) to (j,i).
    pub fn flip(a: &Space, b: &Space, field: FieldDesc) -> LinMap {
        let (da, db) = (a.dim(), b.dim());
        let triplets = (0..da)
            .flat_map(|i| (0..db).map(move |j| (j * da + i, i * db + j, Scalar::one(field))));
        LinMap {
            domain: a.tensor(b),
            codomain: b.tensor(a),
            matrix: Matrix::from_triplets(db * da, da * db, field, triplets)
                .expect("flip triplets in range"),
        }
    }

    pub fn scale(&self, k: &Scalar) -> LinMap {
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(k),
        }
    }

    /// Exact equality as linear maps (dimensions and all entries).
    pub fn same_map(&self, other: &LinMap) -> bool {
        self.domain.dim() == other.domain.dim()
            && self.codomain.dim() == other.codomain.dim()
            && self.matrix == other.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldDesc = FieldDesc::Rational;

    fn map_from_ints(dom: usize, cod: usize, rows: &[Vec<i64>]) -> LinMap {
        LinMap::new(
            Space::line(dom),
            Space::line(cod),
            Matrix::from_int_rows(Q, rows),
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_identities() {
        let id2 = LinMap::identity(&Space::line(2), Q);
        let id3 = LinMap::identity(&Space::line(3), Q);
        let t = id2.tensor(&id3);
        assert_eq!(t.domain().shape(), &[2, 3]);
        assert_eq!(t.matrix(), &Matrix::identity(6, Q));
    }

    #[test]
    fn tensor_with_trivial_factor() {
        let f = map_from_ints(2, 2, &[vec![1, 2], vec![3, 4]]);
        let id1 = LinMap::identity(&Space::line(1), Q);
        let t = f.tensor(&id1);
        assert_eq!(t.domain().shape(), &[2, 1]);
        assert_eq!(t.matrix(), f.matrix());
    }

    #[test]
    fn compose_with_identity() {
        let f = map_from_ints(2, 3, &[vec![1, 0], vec![2, 1], vec![0, 5]]);
        let id = LinMap::identity(&Space::line(2), Q);
        assert_eq!(f.compose(&id).unwrap(), f);
    }

    #[test]
    fn compose_shape_mismatch() {
        let f = map_from_ints(2, 2, &[vec![1, 0], vec![0, 1]]);
        let g = map_from_ints(3, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(matches!(
            f.compose(&g),
            Err(LinMapError::ShapeMismatch(3, 2))
        ));
    }

    #[test]
    fn flip_trivial_factor_is_identity() {
        let s = LinMap::flip(&Space::line(1), &Space::line(4), Q);
        assert_eq!(s.matrix(), &Matrix::identity(4, Q));
    }

    #[test]
    fn flip_is_an_involution() {
        let (a, b) = (Space::line(2), Space::line(3));
        let s = LinMap::flip(&a, &b, Q);
        let back = LinMap::flip(&b, &a, Q);
        assert_eq!(s.then(&back).matrix(), &Matrix::identity(6, Q));
    }

    #[test]
    fn decode_encode_round_trip() {
        let s = Space::new(vec![2, 3, 2]);
        for i in 0..s.dim() {
            assert_eq!(s.encode(&s.decode(i)), i);
        }
        assert_eq!(s.decode(11), vec![1, 2, 1]);
    }

    fn small_map() -> impl Strategy<Value = LinMap> {
        proptest::collection::vec(-3i64..=3, 4)
            .prop_map(|v| map_from_ints(2, 2, &[vec![v[0], v[1]], vec![v[2], v[3]]]))
    }

    proptest! {
        // interchange: (f∘f')⊗(g∘g') = (f⊗g)∘(f'⊗g')
        #[test]
        fn interchange(f in small_map(), f2 in small_map(), g in small_map(), g2 in small_map()) {
            let lhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap());
            let rhs = f.tensor(&g).compose(&f2.tensor(&g2)).unwrap();
            prop_assert_eq!(lhs.matrix(), rhs.matrix());
        }

        // composition is associative
        #[test]
        fn compose_associative(f in small_map(), g in small_map(), h in small_map()) {
            let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
            let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        // naturality of the flip: σ∘(f⊗g) = (g⊗f)∘σ
        #[test]
        fn flip_naturality(f in small_map(), g in small_map()) {
            let s = LinMap::flip(&Space::line(2), &Space::line(2), Q);
            let lhs = s.compose(&f.tensor(&g)).unwrap();
            let rhs = g.tensor(&f).compose(&s).unwrap();
            prop_assert_eq!(lhs.matrix(), rhs.matrix());
        }
    }
}
