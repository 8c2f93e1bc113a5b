use super::hom::{hom_space, search_coefficients, Morphism};
use super::{RepError, Representation};
use crate::field::Field;
use crate::matrix::{Matrix, Subspace};
use crate::quiver::{Direction, VertexId};

/// Splits `M = Ker fᴺ ⊕ Im fᴺ` when `f` is neither nilpotent nor invertible.
fn fitting_split<F: Field>(
    m: &Representation<F>,
    endo: &Morphism<F::Elem>,
) -> Option<(Representation<F>, Representation<F>)> {
    let f = m.field();
    if endo.is_invertible(f) {
        return None;
    }
    let power = m.dims().iter().copied().max().unwrap_or(0) as u32;
    let g = endo.pow(f, power);
    if g.is_zero(f) {
        return None;
    }
    let kernels: Vec<Subspace<F::Elem>> = g.0.iter().map(|x| Subspace::from_basis(f, x.kernel(f))).collect();
    let images: Vec<Subspace<F::Elem>> = g.0.iter().map(|x| Subspace::span(f, x)).collect();
    Some((m.restrict(&kernels), m.restrict(&images)))
}

/// A proper direct-sum splitting of `M`, or `None` when `M` is
/// indecomposable (its endomorphism ring is local).
///
/// Tries `b − λ` and `b + b' − λ` over the endomorphism basis first; if none
/// splits, every endomorphism is checked, within the search cap.
pub fn find_splitting<F: Field>(
    m: &Representation<F>,
) -> Result<Option<(Representation<F>, Representation<F>)>, RepError> {
    if m.is_zero() {
        return Ok(None);
    }
    let f = m.field();
    let end = hom_space(m, m)?;
    if end.dim() <= 1 {
        return Ok(None);
    }
    let id = Morphism::identity(f, m.dims());
    let lambdas = f
        .elements()
        .unwrap_or_else(|| vec![f.zero(), f.one(), f.neg(&f.one())]);
    let shifted = |x: &Morphism<F::Elem>, l: &F::Elem| x.add(f, &id.scale(f, &f.neg(l)));
    for b in &end.basis {
        for l in &lambdas {
            if let Some(split) = fitting_split(m, &shifted(b, l)) {
                return Ok(Some(split));
            }
        }
    }
    for (k, b) in end.basis.iter().enumerate() {
        for c in &end.basis[k + 1..] {
            let sum = b.add(f, c);
            for l in &lambdas {
                if let Some(split) = fitting_split(m, &shifted(&sum, l)) {
                    return Ok(Some(split));
                }
            }
        }
    }
    let mut found = None;
    search_coefficients(f, end.dim(), |coeffs| {
        let x = end.combination(f, coeffs, &id);
        found = fitting_split(m, &x);
        found.is_some()
    })?;
    Ok(found)
}

/// Indecomposable summands, sorted by dimension vector and matrices.
pub fn decompose<F: Field>(m: &Representation<F>) -> Result<Vec<Representation<F>>, RepError> {
    let mut pending = vec![m.clone()];
    let mut out = Vec::new();
    while let Some(x) = pending.pop() {
        if x.is_zero() {
            continue;
        }
        match find_splitting(&x)? {
            Some((a, b)) => {
                pending.push(a);
                pending.push(b);
            }
            None => out.push(x),
        }
    }
    out.sort_by(|a, b| (a.dims(), a.mats()).cmp(&(b.dims(), b.mats())));
    Ok(out)
}

pub fn is_indecomposable<F: Field>(m: &Representation<F>) -> Result<bool, RepError> {
    Ok(!m.is_zero() && find_splitting(m)?.is_none())
}

/// Isomorphism of two representations already known to be indecomposable:
/// then some Hom basis element is invertible exactly when they are
/// isomorphic, because the non-isomorphisms form a proper subspace.
pub(crate) fn iso_indecomposable<F: Field>(x: &Representation<F>, y: &Representation<F>) -> Result<bool, RepError> {
    if x.dims() != y.dims() {
        return Ok(false);
    }
    let f = x.field();
    Ok(hom_space(x, y)?.basis.iter().any(|b| b.is_invertible(f)))
}

/// Indecomposables seen so far, each with a stable class number.
#[derive(Debug, Clone)]
pub struct IsoRegistry<F: Field> {
    classes: Vec<Representation<F>>,
}

impl<F: Field> Default for IsoRegistry<F> {
    fn default() -> Self {
        Self { classes: Vec::new() }
    }
}

impl<F: Field> IsoRegistry<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representative(&self, class: usize) -> &Representation<F> {
        &self.classes[class]
    }

    /// Class of an indecomposable, registering it when new.
    pub fn class_of(&mut self, x: &Representation<F>) -> Result<usize, RepError> {
        if let Some(k) = self.find(x)? {
            return Ok(k);
        }
        self.classes.push(x.clone());
        Ok(self.classes.len() - 1)
    }

    pub fn find(&self, x: &Representation<F>) -> Result<Option<usize>, RepError> {
        for (k, c) in self.classes.iter().enumerate() {
            if iso_indecomposable(c, x)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Sorted multiset of summand classes; equal exactly for isomorphic
    /// representations.
    pub fn signature(&mut self, m: &Representation<F>) -> Result<Vec<usize>, RepError> {
        let mut sig = decompose(m)?
            .iter()
            .map(|x| self.class_of(x))
            .collect::<Result<Vec<_>, _>>()?;
        sig.sort_unstable();
        Ok(sig)
    }
}

fn empty_rows<F: Field>(f: &F, cols: usize) -> Matrix<F::Elem> {
    Matrix::zeros(f, 0, cols)
}

/// `K = ⋂ Ker` of the arrows leaving `v` and `R = Σ Im` of those entering.
fn top_socle_parts<F: Field>(m: &Representation<F>, v: VertexId) -> (Subspace<F::Elem>, Subspace<F::Elem>) {
    let f = m.field();
    let q = m.presentation().quiver();
    let d = m.dim(v);
    let mut outgoing = empty_rows(f, d);
    for a in q.arrows_at(v, Direction::Out) {
        outgoing = outgoing.vstack(m.mat(a));
    }
    let mut incoming = Matrix::zeros(f, d, 0);
    for a in q.arrows_at(v, Direction::In) {
        incoming = incoming.hstack(m.mat(a));
    }
    (
        Subspace::from_basis(f, outgoing.kernel(f)),
        Subspace::span(f, &incoming),
    )
}

/// Number of direct summands of `M` isomorphic to the simple at `v`:
/// `dim K − dim (K ∩ R)`.
pub fn simple_multiplicity<F: Field>(m: &Representation<F>, v: VertexId) -> usize {
    let (k, r) = top_socle_parts(m, v);
    k.dim() - k.intersect(m.field(), &r).dim()
}

/// Greedily picks columns of `candidates` that enlarge the span of `base`.
fn extend<F: Field>(f: &F, base: &Matrix<F::Elem>, candidates: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut current = base.clone();
    let mut chosen = Vec::new();
    for c in 0..candidates.cols() {
        let col = candidates.column(c);
        let next = current.hstack(&Matrix::from_columns(base.rows(), std::slice::from_ref(&col)));
        if next.rank(f) > current.rank(f) {
            current = next;
            chosen.push(col);
        }
    }
    Matrix::from_columns(base.rows(), &chosen)
}

/// Removes every summand isomorphic to a simple at one of `vertices`.
/// Returns the remaining representation and the removed count per vertex.
pub fn strip_simple_summands<F: Field>(
    m: &Representation<F>,
    vertices: &[VertexId],
) -> (Representation<F>, Vec<usize>) {
    let f = m.field().clone();
    let mut current = m.clone();
    let mut counts = Vec::with_capacity(vertices.len());
    for &v in vertices {
        let (k, r) = top_socle_parts(&current, v);
        let w = extend(&f, &r.basis, &k.basis);
        counts.push(w.cols());
        if w.cols() == 0 {
            continue;
        }
        let d = current.dim(v);
        let r_plus_k = r.basis.hstack(&w);
        let t = extend(&f, &r_plus_k, &Matrix::identity(&f, d));
        let c = r.basis.hstack(&t);
        let subspaces: Vec<Subspace<F::Elem>> = (0..current.dims().len())
            .map(|u| {
                if u == v.0 {
                    Subspace::from_basis(&f, c.clone())
                } else {
                    Subspace::from_basis(&f, Matrix::identity(&f, current.dims()[u]))
                }
            })
            .collect();
        current = current.restrict(&subspaces);
    }
    (current, counts)
}
