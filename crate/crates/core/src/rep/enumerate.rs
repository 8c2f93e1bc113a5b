use std::collections::BTreeSet;
use std::sync::Arc;

use super::decompose::{is_indecomposable, IsoRegistry};
use super::{RepError, Representation};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{ArrowId, Presentation, Relation, VertexId};

pub const DEFAULT_BUDGET: usize = 16;

/// Budget from `NODAL_ENUM_BUDGET`, else [`DEFAULT_BUDGET`].
pub fn enumeration_budget() -> usize {
    std::env::var("NODAL_ENUM_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsoClass<F: Field> {
    pub representative: Representation<F>,
    /// Enumerated tuples falling into this class.
    pub tuple_count: usize,
}

fn finite_elements<F: Field>(f: &F) -> Result<Vec<F::Elem>, RepError> {
    f.elements().ok_or(RepError::InfiniteField(f.spec()))
}

/// Calls `visit` with every vector of length `len` over `elements`, in
/// lexicographic order (last position fastest).
fn for_each_tuple<E: Clone>(
    elements: &[E],
    len: usize,
    mut visit: impl FnMut(&[E]) -> Result<(), RepError>,
) -> Result<(), RepError> {
    let mut counter = vec![0usize; len];
    let mut values: Vec<E> = vec![elements[0].clone(); len];
    loop {
        visit(&values)?;
        let mut k = len;
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            counter[k] += 1;
            if counter[k] < elements.len() {
                values[k] = elements[counter[k]].clone();
                break;
            }
            counter[k] = 0;
            values[k] = elements[0].clone();
        }
    }
}

fn shape(p: &Presentation, dims: &[usize], a: ArrowId) -> (usize, usize) {
    let q = p.quiver();
    (dims[q.target(a).0], dims[q.source(a).0])
}

/// Every representation with dimension vector `dims` over a finite field.
pub fn enumerate_representations<F: Field>(
    p: Arc<Presentation>,
    field: F,
    dims: &[usize],
    budget: usize,
) -> Result<Vec<Representation<F>>, RepError> {
    let elements = finite_elements(&field)?;
    let arrows: Vec<ArrowId> = p.quiver().arrow_ids().collect();
    let needed: usize = arrows.iter().map(|&a| {
        let (r, c) = shape(&p, dims, a);
        r * c
    }).sum();
    if needed > budget {
        return Err(RepError::BudgetExceeded {
            dims: dims.to_vec(),
            needed,
            budget,
        });
    }
    let mut out = Vec::new();
    for_each_tuple(&elements, needed, |entries| {
        let m = assemble(&p, &field, dims, &arrows, &[], entries)?;
        if m.check_relations().holds() {
            out.push(m);
        }
        Ok(())
    })?;
    Ok(out)
}

/// Builds a representation from fixed matrices for some arrows and a flat
/// entry list for the others, in arrow order.
fn assemble<F: Field>(
    p: &Arc<Presentation>,
    field: &F,
    dims: &[usize],
    arrows: &[ArrowId],
    fixed: &[(ArrowId, Matrix<F::Elem>)],
    entries: &[F::Elem],
) -> Result<Representation<F>, RepError> {
    let mut mats = Vec::with_capacity(arrows.len());
    let mut pos = 0;
    for &a in arrows {
        if let Some((_, m)) = fixed.iter().find(|(b, _)| *b == a) {
            mats.push(m.clone());
            continue;
        }
        let (r, c) = shape(p, dims, a);
        mats.push(Matrix::from_vec(r, c, entries[pos..pos + r * c].to_vec()));
        pos += r * c;
    }
    Representation::new(p.clone(), field.clone(), dims.to_vec(), mats)
}

/// Square-zero matrix of rank `r` in Jordan form: ones at `(r + k, k)`.
fn square_zero_form<F: Field>(f: &F, d: usize, r: usize) -> Matrix<F::Elem> {
    let mut m = Matrix::zeros(f, d, d);
    for k in 0..r {
        m.set(r + k, k, f.one());
    }
    m
}

/// Loops `α` carrying the relation `α·α = 0`, at most one per vertex.
fn square_zero_loops(p: &Presentation) -> Vec<ArrowId> {
    let q = p.quiver();
    let mut seen = BTreeSet::new();
    let mut loops = Vec::new();
    for a in q.arrow_ids() {
        let v = q.source(a);
        if v != q.target(a) || seen.contains(&v) {
            continue;
        }
        let squared = p
            .relations()
            .iter()
            .any(|r| matches!(r, Relation::MonomialZero(path) if path.arrows() == [a, a]));
        if squared {
            seen.insert(v);
            loops.push(a);
        }
    }
    loops
}

fn support_connected(p: &Presentation, dims: &[usize]) -> bool {
    let q = p.quiver();
    let support: Vec<VertexId> = q.vertex_ids().filter(|v| dims[v.0] > 0).collect();
    let Some(&start) = support.first() else { return false };
    let mut reached = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for a in q.arrow_ids() {
            let (s, t) = (q.source(a), q.target(a));
            for (x, y) in [(s, t), (t, s)] {
                if x == v && dims[y.0] > 0 && reached.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    reached.len() == support.len()
}

fn dimension_vectors(vertices: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0; vertices];
    fn rec(k: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == current.len() {
            out.push(current.clone());
            return;
        }
        for d in 0..=left {
            current[k] = d;
            rec(k + 1, left - d, current, out);
        }
        current[k] = 0;
    }
    rec(0, bound, &mut current, &mut out);
    out.retain(|d| d.iter().sum::<usize>() > 0);
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

/// Isomorphism classes of indecomposables with total dimension at most
/// `dim_bound`, over a finite field.
///
/// Dimension vectors with disconnected support are skipped. A loop with
/// `α² = 0` is fixed to its Jordan form for each rank, which loses no
/// isomorphism class; the budget bounds the remaining free matrix entries
/// per dimension vector and rank choice.
pub fn enumerate_indecomposables<F: Field>(
    p: Arc<Presentation>,
    field: F,
    dim_bound: usize,
    budget: usize,
) -> Result<Vec<IsoClass<F>>, RepError> {
    let elements = finite_elements(&field)?;
    let q = p.quiver();
    let arrows: Vec<ArrowId> = q.arrow_ids().collect();
    let loops = square_zero_loops(&p);
    let mut classes: Vec<IsoClass<F>> = Vec::new();
    for dims in dimension_vectors(q.vertex_count(), dim_bound) {
        if !support_connected(&p, &dims) {
            continue;
        }
        let free: usize = arrows
            .iter()
            .filter(|a| !loops.contains(a))
            .map(|&a| {
                let (r, c) = shape(&p, &dims, a);
                r * c
            })
            .sum();
        if free > budget {
            return Err(RepError::BudgetExceeded {
                dims,
                needed: free,
                budget,
            });
        }
        let mut registry: IsoRegistry<F> = IsoRegistry::new();
        let mut counts: Vec<usize> = Vec::new();
        for fixed in loop_forms(&field, &p, &dims, &loops) {
            for_each_tuple(&elements, free, |entries| {
                let m = assemble(&p, &field, &dims, &arrows, &fixed, entries)?;
                if !m.check_relations().holds() || !is_indecomposable(&m)? {
                    return Ok(());
                }
                match registry.find(&m)? {
                    Some(k) => counts[k] += 1,
                    None => {
                        registry.class_of(&m)?;
                        counts.push(1);
                    }
                }
                Ok(())
            })?;
        }
        for (k, count) in counts.into_iter().enumerate() {
            classes.push(IsoClass {
                representative: registry.representative(k).clone(),
                tuple_count: count,
            });
        }
    }
    classes.sort_by(|a, b| {
        let key = |c: &IsoClass<F>| (c.representative.total_dim(), c.representative.dims().to_vec());
        key(a)
            .cmp(&key(b))
            .then_with(|| a.representative.mats().cmp(b.representative.mats()))
    });
    Ok(classes)
}

/// Every combination of Jordan forms for the normalised loops.
fn loop_forms<F: Field>(
    f: &F,
    p: &Presentation,
    dims: &[usize],
    loops: &[ArrowId],
) -> Vec<Vec<(ArrowId, Matrix<F::Elem>)>> {
    let q = p.quiver();
    let mut out: Vec<Vec<(ArrowId, Matrix<F::Elem>)>> = vec![Vec::new()];
    for &a in loops {
        let d = dims[q.source(a).0];
        let mut next = Vec::new();
        for prefix in &out {
            for r in 0..=d / 2 {
                let mut choice = prefix.clone();
                choice.push((a, square_zero_form(f, d, r)));
                next.push(choice);
            }
        }
        out = next;
    }
    out
}
