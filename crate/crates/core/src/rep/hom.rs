use super::decompose::{decompose, iso_indecomposable};
use super::{RepError, Representation};
use crate::field::Field;
use crate::matrix::Matrix;

/// Exhaustive searches stop above this many elements.
pub const SEARCH_CAP: u64 = 1 << 20;

/// A family of linear maps `f_v : M(v) → N(v)`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism<E>(pub Vec<Matrix<E>>);

impl<E: Clone + PartialEq> Morphism<E> {
    pub fn identity<F: Field<Elem = E>>(f: &F, dims: &[usize]) -> Self {
        Morphism(dims.iter().map(|&d| Matrix::identity(f, d)).collect())
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Morphism(self.0.iter().zip(&other.0).map(|(a, b)| a.add(f, b)).collect())
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        Morphism(self.0.iter().map(|a| a.scale(f, c)).collect())
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Morphism(self.0.iter().zip(&other.0).map(|(a, b)| a.mul(f, b)).collect())
    }

    pub fn is_invertible<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.0.iter().all(|m| m.is_invertible(f))
    }

    /// `self^k` for an endomorphism.
    pub fn pow<F: Field<Elem = E>>(&self, f: &F, k: u32) -> Self {
        Morphism(self.0.iter().map(|m| m.pow(f, k)).collect())
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.0.iter().all(|m| m.is_zero(f))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSpace<E> {
    pub basis: Vec<Morphism<E>>,
}

impl<E: Clone + PartialEq> HomSpace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination<F: Field<Elem = E>>(&self, f: &F, coeffs: &[E], zero_like: &Morphism<E>) -> Morphism<E> {
        let mut acc = zero_like.scale(f, &f.zero());
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !f.is_zero(c) {
                acc = acc.add(f, &b.scale(f, c));
            }
        }
        acc
    }
}

/// Solves `f_t · M(a) = N(a) · f_s` for every arrow `a : s → t`.
pub fn hom_space<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<HomSpace<F::Elem>, RepError> {
    m.same_algebra(n)?;
    let f = m.field();
    let q = m.presentation().quiver();
    let mut offsets = Vec::with_capacity(q.vertex_count());
    let mut vars = 0;
    for v in q.vertex_ids() {
        offsets.push(vars);
        vars += n.dim(v) * m.dim(v);
    }
    // entry (r, c) of f_v lives at offsets[v] + r * dim M(v) + c
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims()[v] + c;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for a in q.arrow_ids() {
        let (s, t) = (q.source(a).0, q.target(a).0);
        let (ma, na) = (m.mat(a), n.mat(a));
        for r in 0..n.dims()[t] {
            for c in 0..m.dims()[s] {
                let mut row = vec![f.zero(); vars];
                for k in 0..m.dims()[t] {
                    let idx = var(t, r, k);
                    row[idx] = f.add(&row[idx], ma.get(k, c));
                }
                for k in 0..n.dims()[s] {
                    let idx = var(s, k, c);
                    row[idx] = f.sub(&row[idx], na.get(r, k));
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let system = Matrix::from_vec(rows.len(), vars, rows.into_iter().flatten().collect());
    let kernel = system.kernel(f);
    let basis = (0..kernel.cols())
        .map(|k| {
            let column = kernel.column(k);
            Morphism(
                q.vertex_ids()
                    .map(|v| {
                        let (r, c) = (n.dim(v), m.dim(v));
                        let start = offsets[v.0];
                        Matrix::from_vec(r, c, column[start..start + r * c].to_vec())
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(HomSpace { basis })
}

/// Calls `visit` on every coefficient vector of length `len` over a finite
/// field until it returns `true`. Fails above [`SEARCH_CAP`].
pub(crate) fn search_coefficients<F: Field>(
    f: &F,
    len: usize,
    mut visit: impl FnMut(&[F::Elem]) -> bool,
) -> Result<bool, RepError> {
    let too_large = RepError::SearchSpaceTooLarge {
        field: f.spec(),
        dimension: len,
    };
    let Some(elements) = f.elements() else {
        return Err(too_large);
    };
    let q = elements.len() as u64;
    let mut total: u64 = 1;
    for _ in 0..len {
        total = total.saturating_mul(q);
        if total > SEARCH_CAP {
            return Err(too_large);
        }
    }
    let mut counter = vec![0usize; len];
    let mut coeffs: Vec<F::Elem> = vec![elements[0].clone(); len];
    loop {
        if visit(&coeffs) {
            return Ok(true);
        }
        let mut k = 0;
        loop {
            if k == len {
                return Ok(false);
            }
            counter[k] += 1;
            if counter[k] < elements.len() {
                coeffs[k] = elements[counter[k]].clone();
                break;
            }
            counter[k] = 0;
            coeffs[k] = elements[0].clone();
            k += 1;
        }
    }
}

/// Exact isomorphism test.
///
/// Cheap invariants first, then an invertible Hom basis element, then a
/// comparison of Krull–Schmidt decompositions (indecomposable summands are
/// matched through their local endomorphism rings), and finally an
/// exhaustive scan of `Hom(M, N)` within [`SEARCH_CAP`].
pub fn is_isomorphic<F: Field>(m: &Representation<F>, n: &Representation<F>) -> Result<bool, RepError> {
    m.same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let f = m.field();
    let hom = hom_space(m, n)?;
    let end_m = hom_space(m, m)?.dim();
    if hom.dim() != end_m || hom_space(n, n)?.dim() != end_m || hom_space(n, m)?.dim() != end_m {
        return Ok(false);
    }
    if hom.dim() == 0 {
        return Ok(m.is_zero());
    }
    if hom.basis.iter().any(|b| b.is_invertible(f)) {
        return Ok(true);
    }
    match (decompose(m), decompose(n)) {
        (Ok(xs), Ok(ys)) => {
            if xs.len() != ys.len() {
                return Ok(false);
            }
            let mut used = vec![false; ys.len()];
            for x in &xs {
                let mut found = false;
                for (k, y) in ys.iter().enumerate() {
                    if !used[k] && iso_indecomposable(x, y)? {
                        used[k] = true;
                        found = true;
                        break;
                    }
                }
                if !found {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (Err(RepError::SearchSpaceTooLarge { .. }), _) | (_, Err(RepError::SearchSpaceTooLarge { .. })) => {
            let zero = Morphism(hom.basis[0].0.iter().map(|x| x.scale(f, &f.zero())).collect());
            search_coefficients(f, hom.dim(), |c| hom.combination(f, c, &zero).is_invertible(f))
        }
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}
