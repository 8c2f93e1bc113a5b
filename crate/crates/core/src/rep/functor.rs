//! Functors between the module categories before and after one gluing or
//! blow-up.
//!
//! `F` stacks the spaces of the operated vertices (`M(i) ⊕ M(j)` at a merged
//! vertex, `M(i)` twice for a blown one) and writes every arrow as
//! `embedding · M(a) · projection`. `G` goes back: for an inessential gluing
//! it takes a quotient at `i` and an image at `j`; for a blow-up it reads
//! off the first copy.

use std::sync::Arc;

use super::decompose::{strip_simple_summands, IsoRegistry};
use super::{RepError, Representation};
use crate::construct::{build_presentation, ArrowOrigin, CopyTag, GluePair, GluedVertexMap, NodalDatum, VertexImage};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::quiver::{ArrowId, Direction, Presentation, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operation {
    Glue(GluePair),
    Blow(String),
}

/// One operation applied on top of a datum, with both presentations and the
/// correspondence between their vertices and arrows.
#[derive(Debug, Clone)]
pub struct OperationStep {
    before_datum: NodalDatum,
    operation: Operation,
    before: Arc<Presentation>,
    after: Arc<Presentation>,
    /// Per vertex of `after`: the vertices of `before` stacked there.
    blocks: Vec<Vec<VertexId>>,
    /// Per arrow of `after`: the arrow of `before` it copies.
    arrow_before: Vec<ArrowId>,
    /// Per vertex of `before`: a vertex of `after` carrying its space.
    vertex_after: Vec<VertexId>,
    /// Per arrow of `before`: its first copy in `after`.
    arrow_after: Vec<ArrowId>,
}

fn copies_of(map: &GluedVertexMap, v: VertexId) -> Vec<CopyTag> {
    match map.image(v) {
        VertexImage::Split(..) => vec![CopyTag::First, CopyTag::Second],
        _ => vec![CopyTag::Single],
    }
}

impl OperationStep {
    pub fn new(before: &NodalDatum, operation: Operation) -> Result<Self, RepError> {
        let after_datum = match &operation {
            Operation::Glue(p) => before.clone().glue(p.first.clone(), p.second.clone()),
            Operation::Blow(v) => before.clone().blow(v.clone()),
        };
        let (pb, map_b) = build_presentation(before)?;
        let (pa, map_a) = build_presentation(&after_datum)?;
        let base = &before.base;
        let blown = match &operation {
            Operation::Blow(v) => Some(base.vertex(v).map_err(crate::construct::ConstructError::from)?),
            Operation::Glue(_) => None,
        };
        let collapse = |v: VertexId, tag: CopyTag| if Some(v) == blown { CopyTag::Single } else { tag };

        let mut blocks: Vec<Vec<VertexId>> = vec![Vec::new(); pa.quiver().vertex_count()];
        let mut vertex_after = vec![VertexId(usize::MAX); pb.quiver().vertex_count()];
        let glued: Vec<VertexId> = match &operation {
            Operation::Glue(p) => vec![
                base.vertex(&p.first).map_err(crate::construct::ConstructError::from)?,
                base.vertex(&p.second).map_err(crate::construct::ConstructError::from)?,
            ],
            Operation::Blow(_) => Vec::new(),
        };
        // glued vertices first so the merged block follows the pair order
        let order = glued
            .iter()
            .copied()
            .chain(base.vertex_ids().filter(|v| !glued.contains(v)));
        for v in order {
            for tag in copies_of(&map_a, v) {
                let w = map_a.vertex(v, tag);
                let b = map_b.vertex(v, collapse(v, tag));
                if !blocks[w.0].contains(&b) {
                    blocks[w.0].push(b);
                }
                if vertex_after[b.0].0 == usize::MAX {
                    vertex_after[b.0] = w;
                }
            }
        }

        let mut arrow_before = Vec::with_capacity(pa.quiver().arrow_count());
        let mut arrow_after = vec![ArrowId(usize::MAX); pb.quiver().arrow_count()];
        for a in pa.quiver().arrow_ids() {
            let o = map_a.origin(a);
            let (s, t) = (base.source(o.base), base.target(o.base));
            let ob = ArrowOrigin {
                base: o.base,
                source_copy: collapse(s, o.source_copy),
                target_copy: collapse(t, o.target_copy),
            };
            let b = map_b.arrow(ob).expect("every copied arrow exists before the operation");
            arrow_before.push(b);
            if arrow_after[b.0].0 == usize::MAX {
                arrow_after[b.0] = a;
            }
        }
        Ok(Self {
            before_datum: before.clone(),
            operation,
            before: Arc::new(pb),
            after: Arc::new(pa),
            blocks,
            arrow_before,
            vertex_after,
            arrow_after,
        })
    }

    pub fn before(&self) -> &Arc<Presentation> {
        &self.before
    }

    pub fn after(&self) -> &Arc<Presentation> {
        &self.after
    }

    pub fn operation(&self) -> &Operation {
        &self.operation
    }

    pub fn before_datum(&self) -> &NodalDatum {
        &self.before_datum
    }

    /// Vertices of the `before` presentation touched by the operation.
    pub fn operated_vertices(&self) -> Vec<VertexId> {
        let q = self.before.quiver();
        match &self.operation {
            Operation::Glue(p) => vec![q.vertex(&p.first).unwrap(), q.vertex(&p.second).unwrap()],
            Operation::Blow(v) => vec![q.vertex(v).unwrap()],
        }
    }

    /// `(i, j)` with no arrow into `i` and none out of `j`, if the gluing is
    /// inessential.
    pub fn inessential_roles(&self) -> Option<(VertexId, VertexId)> {
        let Operation::Glue(_) = &self.operation else { return None };
        let q = self.before.quiver();
        let ops = self.operated_vertices();
        let (a, b) = (ops[0], ops[1]);
        let fits = |i: VertexId, j: VertexId| q.in_degree(i) == 0 && q.out_degree(j) == 0;
        if fits(a, b) {
            Some((a, b))
        } else if fits(b, a) {
            Some((b, a))
        } else {
            None
        }
    }

    fn check_before<F: Field>(&self, m: &Representation<F>) -> Result<(), RepError> {
        if !Arc::ptr_eq(m.presentation(), &self.before) && **m.presentation() != *self.before {
            return Err(RepError::Mismatch("representation is not over the algebra before the operation".into()));
        }
        Ok(())
    }

    fn check_after<F: Field>(&self, n: &Representation<F>) -> Result<(), RepError> {
        if !Arc::ptr_eq(n.presentation(), &self.after) && **n.presentation() != *self.after {
            return Err(RepError::Mismatch("representation is not over the algebra after the operation".into()));
        }
        Ok(())
    }

    fn stack_blocks<F: Field>(&self, m: &Representation<F>, blocks: &[Vec<VertexId>]) -> Result<Representation<F>, RepError> {
        self.check_before(m)?;
        let f = m.field();
        let qa = self.after.quiver();
        let qb = self.before.quiver();
        let dims: Vec<usize> = blocks.iter().map(|bs| bs.iter().map(|&b| m.dim(b)).sum()).collect();
        let offset = |w: VertexId, b: VertexId| -> usize {
            let bs = &blocks[w.0];
            let pos = bs.iter().position(|&x| x == b).expect("vertex lies in its block");
            bs[..pos].iter().map(|&x| m.dim(x)).sum()
        };
        let mats = qa
            .arrow_ids()
            .map(|a| {
                let ab = self.arrow_before[a.0];
                let (sa, ta) = (qa.source(a), qa.target(a));
                let (sb, tb) = (qb.source(ab), qb.target(ab));
                let proj = block_unit(f, m.dim(sb), dims[sa.0], offset(sa, sb)).transpose();
                let emb = block_unit(f, m.dim(tb), dims[ta.0], offset(ta, tb));
                emb.mul(f, &m.mat(ab).mul(f, &proj))
            })
            .collect();
        Representation::new(self.after.clone(), f.clone(), dims, mats)
    }
}

/// `total × width` matrix with an identity block starting at row `offset`.
fn block_unit<F: Field>(f: &F, width: usize, total: usize, offset: usize) -> Matrix<F::Elem> {
    let mut m = Matrix::zeros(f, total, width);
    for k in 0..width {
        m.set(offset + k, k, f.one());
    }
    m
}

/// Gluing functor with the merged space ordered as in the glue pair.
pub fn functor_f_glue<F: Field>(m: &Representation<F>, step: &OperationStep) -> Result<Representation<F>, RepError> {
    let Operation::Glue(_) = step.operation() else {
        return Err(RepError::WrongOperation("expected a gluing".into()));
    };
    step.stack_blocks(m, &step.blocks)
}

/// Gluing functor for an inessential pair, `FM(ij) = M(i) ⊕ M(j)` with `i`
/// the vertex nothing enters.
pub fn functor_f_inessential<F: Field>(m: &Representation<F>, step: &OperationStep) -> Result<Representation<F>, RepError> {
    let (i, j) = step
        .inessential_roles()
        .ok_or_else(|| RepError::WrongOperation("gluing is not inessential".into()))?;
    let mut blocks = step.blocks.clone();
    for bs in &mut blocks {
        if bs.len() == 2 && bs.contains(&i) && bs.contains(&j) {
            *bs = vec![i, j];
        }
    }
    step.stack_blocks(m, &blocks)
}

pub fn functor_f_blow<F: Field>(m: &Representation<F>, step: &OperationStep) -> Result<Representation<F>, RepError> {
    let Operation::Blow(_) = step.operation() else {
        return Err(RepError::WrongOperation("expected a blow-up".into()));
    };
    step.stack_blocks(m, &step.blocks)
}

/// Inverse of the inessential gluing functor away from the simples at `i`
/// and `j`: `GN(i) = N(ij)/N₀` with `N₀` the common kernel of the arrows
/// leaving `(ij)`, and `GN(j)` the sum of the images of the arrows entering
/// it.
pub fn functor_g_inessential<F: Field>(
    n: &Representation<F>,
    step: &OperationStep,
) -> Result<Representation<F>, RepError> {
    step.check_after(n)?;
    let (i, j) = step
        .inessential_roles()
        .ok_or_else(|| RepError::WrongOperation("gluing is not inessential".into()))?;
    let f = n.field();
    let qa = step.after.quiver();
    let qb = step.before.quiver();
    let merged = step.vertex_after[i.0];
    let d = n.dim(merged);

    let mut leaving = Matrix::zeros(f, 0, d);
    for a in qa.arrows_at(merged, Direction::Out) {
        leaving = leaving.vstack(n.mat(a));
    }
    let common_kernel = Subspace::from_basis(f, leaving.kernel(f));
    let section = common_kernel.complement(f);
    let change = common_kernel.basis.hstack(&section);
    let inverse = change.inverse(f).expect("kernel and complement span the space");
    let skip: Vec<usize> = (common_kernel.dim()..d).collect();
    let quotient = inverse.select_rows(&skip);

    let mut entering = Matrix::zeros(f, d, 0);
    for a in qa.arrows_at(merged, Direction::In) {
        entering = entering.hstack(n.mat(a));
    }
    let image = Subspace::span(f, &entering);

    let dims: Vec<usize> = qb
        .vertex_ids()
        .map(|u| {
            if u == i {
                section.cols()
            } else if u == j {
                image.dim()
            } else {
                n.dim(step.vertex_after[u.0])
            }
        })
        .collect();
    let mats = qb
        .arrow_ids()
        .map(|ab| {
            let a = step.arrow_after[ab.0];
            let (sb, tb) = (qb.source(ab), qb.target(ab));
            let pre = if sb == i {
                section.clone()
            } else if sb == j {
                image.basis.clone()
            } else {
                Matrix::identity(f, dims[sb.0])
            };
            let post = if tb == i {
                quotient.clone()
            } else if tb == j {
                image.coords.clone()
            } else {
                Matrix::identity(f, dims[tb.0])
            };
            post.mul(f, &n.mat(a).mul(f, &pre))
        })
        .collect();
    Representation::new(step.before.clone(), f.clone(), dims, mats)
}

/// Restriction to the first copy of the blown vertex.
pub fn functor_g_blow<F: Field>(n: &Representation<F>, step: &OperationStep) -> Result<Representation<F>, RepError> {
    step.check_after(n)?;
    let Operation::Blow(_) = step.operation() else {
        return Err(RepError::WrongOperation("expected a blow-up".into()));
    };
    let qb = step.before.quiver();
    let dims = qb.vertex_ids().map(|u| n.dim(step.vertex_after[u.0])).collect();
    let mats = qb.arrow_ids().map(|ab| n.mat(step.arrow_after[ab.0]).clone()).collect();
    Representation::new(step.before.clone(), n.field().clone(), dims, mats)
}

impl OperationStep {
    /// The `F` functor matching this operation.
    pub fn apply_f<F: Field>(&self, m: &Representation<F>) -> Result<Representation<F>, RepError> {
        match (&self.operation, self.inessential_roles()) {
            (Operation::Glue(_), Some(_)) => functor_f_inessential(m, self),
            (Operation::Glue(_), None) => functor_f_glue(m, self),
            (Operation::Blow(_), _) => functor_f_blow(m, self),
        }
    }

    /// The `G` functor, where one is defined: inessential gluings and
    /// blow-ups.
    pub fn apply_g<F: Field>(&self, n: &Representation<F>) -> Result<Option<Representation<F>>, RepError> {
        match (&self.operation, self.inessential_roles()) {
            (Operation::Glue(_), Some(_)) => functor_g_inessential(n, self).map(Some),
            (Operation::Glue(_), None) => Ok(None),
            (Operation::Blow(_), _) => functor_g_blow(n, self).map(Some),
        }
    }

    /// What `G ∘ F` should give back: `M` without its simple summands at
    /// glued vertices.
    pub fn expected_round_trip<F: Field>(&self, m: &Representation<F>) -> Representation<F> {
        match self.operation {
            Operation::Glue(_) => strip_simple_summands(m, &self.operated_vertices()).0,
            Operation::Blow(_) => m.clone(),
        }
    }

    /// Invariant that `F` reflects: for a gluing, the class of `M` away from
    /// the simples at the glued vertices together with how many of those
    /// simples split off; for a blow-up, the class of `M`.
    pub fn reflection_key<F: Field>(
        &self,
        m: &Representation<F>,
        registry: &mut IsoRegistry<F>,
    ) -> Result<(Vec<usize>, usize), RepError> {
        match self.operation {
            Operation::Glue(_) => {
                let (rest, counts) = strip_simple_summands(m, &self.operated_vertices());
                Ok((registry.signature(&rest)?, counts.iter().sum()))
            }
            Operation::Blow(_) => Ok((registry.signature(m)?, 0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::quiver::Quiver;
    use crate::rep::is_isomorphic;

    fn a3() -> NodalDatum {
        NodalDatum::new(
            Quiver::from_parts(
                ["1", "2", "3"],
                [
                    ("a".to_string(), "1".to_string(), "2".to_string()),
                    ("b".to_string(), "2".to_string(), "3".to_string()),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn simples_at_glued_vertices_collapse() {
        let f = PrimeField::f2();
        let step = OperationStep::new(&a3(), Operation::Glue(GluePair::new("1", "3"))).unwrap();
        assert!(step.inessential_roles().is_some());
        let s1 = Representation::simple(step.before().clone(), f, VertexId(0));
        let s3 = Representation::simple(step.before().clone(), f, VertexId(2));
        let f1 = functor_f_inessential(&s1, &step).unwrap();
        let f3 = functor_f_inessential(&s3, &step).unwrap();
        let merged = step.after().quiver().vertex("(1 3)").unwrap();
        let target = Representation::simple(step.after().clone(), f, merged);
        assert!(is_isomorphic(&f1, &target).unwrap());
        assert!(is_isomorphic(&f3, &target).unwrap());
        assert!(functor_g_inessential(&target, &step).unwrap().is_zero());
    }

    #[test]
    fn g_inverts_f_on_projective() {
        let f = PrimeField::f2();
        let step = OperationStep::new(&a3(), Operation::Glue(GluePair::new("1", "3"))).unwrap();
        let one = || Matrix::from_vec(1, 1, vec![1u32]);
        let m = Representation::new(step.before().clone(), f, vec![1, 1, 1], vec![one(), one()]).unwrap();
        let fm = functor_f_inessential(&m, &step).unwrap();
        assert_eq!(fm.dims(), &[2, 1]);
        assert!(fm.check_relations().holds());
        let back = functor_g_inessential(&fm, &step).unwrap();
        assert!(is_isomorphic(&back, &m).unwrap());
    }

    #[test]
    fn blow_duplicates_space() {
        let f = PrimeField::f2();
        let step = OperationStep::new(&a3(), Operation::Blow("2".into())).unwrap();
        let one = || Matrix::from_vec(1, 1, vec![1u32]);
        let m = Representation::new(step.before().clone(), f, vec![1, 1, 1], vec![one(), one()]).unwrap();
        let fm = functor_f_blow(&m, &step).unwrap();
        assert_eq!(fm.dims(), &[1, 1, 1, 1]);
        assert!(fm.check_relations().holds());
        assert_eq!(functor_g_blow(&fm, &step).unwrap(), m);
    }
}
