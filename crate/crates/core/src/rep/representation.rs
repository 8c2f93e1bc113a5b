use std::sync::Arc;

use super::RepError;
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::quiver::{ArrowId, Path, Presentation, Relation, VertexId};

/// Vector spaces at the vertices and a matrix of shape
/// `dim(target) × dim(source)` for every arrow.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<F: Field> {
    presentation: Arc<Presentation>,
    field: F,
    dims: Vec<usize>,
    mats: Vec<Matrix<F::Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationCheck {
    Holds,
    /// The first relation, in canonical order, that fails.
    Fails(String),
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        matches!(self, RelationCheck::Holds)
    }
}

impl<F: Field> Representation<F> {
    pub fn new(
        presentation: Arc<Presentation>,
        field: F,
        dims: Vec<usize>,
        mats: Vec<Matrix<F::Elem>>,
    ) -> Result<Self, RepError> {
        let q = presentation.quiver();
        if dims.len() != q.vertex_count() {
            return Err(RepError::CountMismatch {
                expected: q.vertex_count(),
                found: dims.len(),
            });
        }
        if mats.len() != q.arrow_count() {
            return Err(RepError::CountMismatch {
                expected: q.arrow_count(),
                found: mats.len(),
            });
        }
        for a in q.arrow_ids() {
            let expected = (dims[q.target(a).0], dims[q.source(a).0]);
            if mats[a.0].shape() != expected {
                return Err(RepError::ShapeMismatch {
                    arrow: q.arrow_name(a).to_string(),
                    expected,
                    found: mats[a.0].shape(),
                });
            }
        }
        Ok(Self {
            presentation,
            field,
            dims,
            mats,
        })
    }

    /// All arrows zero.
    pub fn zero_maps(presentation: Arc<Presentation>, field: F, dims: Vec<usize>) -> Result<Self, RepError> {
        let q = presentation.quiver();
        let mats = q
            .arrow_ids()
            .map(|a| Matrix::zeros(&field, *dims.get(q.target(a).0).unwrap_or(&0), *dims.get(q.source(a).0).unwrap_or(&0)))
            .collect();
        Self::new(presentation, field, dims, mats)
    }

    /// The simple representation at `v`.
    pub fn simple(presentation: Arc<Presentation>, field: F, v: VertexId) -> Self {
        let mut dims = vec![0; presentation.quiver().vertex_count()];
        dims[v.0] = 1;
        Self::zero_maps(presentation, field, dims).expect("zero maps have matching shapes")
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.presentation
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v.0]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Matrix<F::Elem>] {
        &self.mats
    }

    pub fn mat(&self, a: ArrowId) -> &Matrix<F::Elem> {
        &self.mats[a.0]
    }

    /// Matrix of a path, multiplied right to left.
    pub fn evaluate(&self, p: &Path) -> Matrix<F::Elem> {
        let f = &self.field;
        let mut acc = Matrix::identity(f, self.dim(p.source()));
        for &a in p.arrows().iter().rev() {
            acc = self.mats[a.0].mul(f, &acc);
        }
        acc
    }

    pub fn check_relations(&self) -> RelationCheck {
        let q = self.presentation.quiver();
        for r in self.presentation.relations() {
            let ok = match r {
                Relation::MonomialZero(p) => self.evaluate(p).is_zero(&self.field),
                Relation::Commutation(l, rr) => self.evaluate(l) == self.evaluate(rr),
            };
            if !ok {
                return RelationCheck::Fails(r.format(q));
            }
        }
        RelationCheck::Holds
    }

    pub fn same_algebra(&self, other: &Self) -> Result<(), RepError> {
        if self.field != other.field {
            return Err(RepError::Mismatch("different fields".into()));
        }
        if !Arc::ptr_eq(&self.presentation, &other.presentation) && self.presentation != other.presentation {
            return Err(RepError::Mismatch("different presentations".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        self.same_algebra(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Matrix::block_diag(&self.field, a, b))
            .collect();
        Self::new(self.presentation.clone(), self.field.clone(), dims, mats)
    }

    /// Subrepresentation spanned by the given subspaces, one per vertex.
    ///
    /// The subspaces must be closed under the arrows; the result is written
    /// in the subspaces' bases.
    pub fn restrict(&self, subspaces: &[Subspace<F::Elem>]) -> Self {
        let f = &self.field;
        let q = self.presentation.quiver();
        let dims = subspaces.iter().map(Subspace::dim).collect();
        let mats = q
            .arrow_ids()
            .map(|a| {
                let (s, t) = (q.source(a), q.target(a));
                subspaces[t.0]
                    .coords
                    .mul(f, &self.mats[a.0].mul(f, &subspaces[s.0].basis))
            })
            .collect();
        Self::new(self.presentation.clone(), f.clone(), dims, mats).expect("restriction keeps shapes consistent")
    }

    /// Change of basis `g_v · M(a) · g_v⁻¹`; every `g_v` must be invertible.
    pub fn transport(&self, change: &[Matrix<F::Elem>]) -> Self {
        let f = &self.field;
        let q = self.presentation.quiver();
        let mats = q
            .arrow_ids()
            .map(|a| {
                let inv = change[q.source(a).0].inverse(f).expect("invertible change of basis");
                change[q.target(a).0].mul(f, &self.mats[a.0]).mul(f, &inv)
            })
            .collect();
        Self::new(self.presentation.clone(), f.clone(), self.dims.clone(), mats).expect("same shapes")
    }
}
