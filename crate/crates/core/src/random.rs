//! Seeded generators for data and representations.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construct::NodalDatum;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::quiver::{Presentation, Quiver};
use crate::rep::Representation;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A line on vertices `1..=n` with arrows `a1..` of random orientation.
pub fn random_line<R: Rng>(rng: &mut R, n: usize) -> Quiver {
    let mut q = Quiver::new();
    for k in 1..=n {
        q.add_vertex(k.to_string()).expect("fresh vertex");
    }
    for k in 1..n {
        let (s, t) = (k.to_string(), (k + 1).to_string());
        let (s, t) = if rng.gen_bool(0.5) { (s, t) } else { (t, s) };
        q.add_arrow(format!("a{k}"), &s, &t).expect("fresh arrow");
    }
    q
}

/// A random acyclic quiver on `1..=n`: each pair `k < l` gets an arrow
/// `k → l` with probability `density`, sometimes two.
pub fn random_acyclic<R: Rng>(rng: &mut R, n: usize, density: f64) -> Quiver {
    let mut q = Quiver::new();
    for k in 1..=n {
        q.add_vertex(k.to_string()).expect("fresh vertex");
    }
    let mut count = 0;
    for k in 1..=n {
        for l in k + 1..=n {
            if !rng.gen_bool(density) {
                continue;
            }
            let copies = if rng.gen_bool(0.2) { 2 } else { 1 };
            for _ in 0..copies {
                count += 1;
                q.add_arrow(format!("a{count}"), &k.to_string(), &l.to_string())
                    .expect("fresh arrow");
            }
        }
    }
    q
}

/// Glues up to `pairs` disjoint pairs of distinct vertices of a random line.
pub fn random_gluing<R: Rng>(rng: &mut R, n: usize, pairs: usize) -> NodalDatum {
    let mut d = NodalDatum::new(random_line(rng, n));
    let mut vertices: Vec<usize> = (1..=n).collect();
    vertices.shuffle(rng);
    for chunk in vertices.chunks_exact(2).take(pairs) {
        d = d.glue(chunk[0].to_string(), chunk[1].to_string());
    }
    d
}

/// One blow-up at a random vertex of a random acyclic quiver.
pub fn random_blow_up<R: Rng>(rng: &mut R, n: usize, density: f64) -> NodalDatum {
    let q = random_acyclic(rng, n, density);
    let v = rng.gen_range(1..=n).to_string();
    NodalDatum::new(q).blow(v)
}

pub fn random_element<F: Field, R: Rng>(rng: &mut R, f: &F) -> F::Elem {
    match f.elements() {
        Some(all) => all.choose(rng).expect("fields are nonempty").clone(),
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_matrix<F: Field, R: Rng>(rng: &mut R, f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    let data = (0..rows * cols).map(|_| random_element(rng, f)).collect();
    Matrix::from_vec(rows, cols, data)
}

pub fn random_invertible<F: Field, R: Rng>(rng: &mut R, f: &F, n: usize) -> Matrix<F::Elem> {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// Random dimension vector with total at most `max_total`, never all zero
/// unless `max_total` is zero.
pub fn random_dims<R: Rng>(rng: &mut R, vertices: usize, max_total: usize) -> Vec<usize> {
    let mut dims = vec![0; vertices];
    if vertices == 0 {
        return dims;
    }
    let total = rng.gen_range(max_total.min(1)..=max_total);
    for _ in 0..total {
        dims[rng.gen_range(0..vertices)] += 1;
    }
    dims
}

/// Random matrices, resampled until the relations hold; `None` after
/// `attempts` failures.
pub fn random_representation<F: Field, R: Rng>(
    rng: &mut R,
    p: &Arc<Presentation>,
    f: &F,
    dims: &[usize],
    attempts: usize,
) -> Option<Representation<F>> {
    let q = p.quiver();
    for _ in 0..attempts.max(1) {
        let mats = q
            .arrow_ids()
            .map(|a| random_matrix(rng, f, dims[q.target(a).0], dims[q.source(a).0]))
            .collect();
        let m = Representation::new(p.clone(), f.clone(), dims.to_vec(), mats).expect("shapes match");
        if m.check_relations().holds() {
            return Some(m);
        }
    }
    None
}
