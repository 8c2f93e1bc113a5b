#![allow(dead_code)]

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use nodal::construct::NodalDatum;
use nodal::quiver::{ArrowId, Presentation, Quiver, Relation};

pub fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::from_parts(
        vertices.iter().copied(),
        arrows.iter().map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string())),
    )
    .unwrap()
}

/// Words of length `n` read in written order, where `w[k + 1]` is applied
/// before `w[k]`.
fn words(q: &Quiver, n: usize) -> Vec<Vec<ArrowId>> {
    let mut out: Vec<Vec<ArrowId>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            for a in q.arrow_ids() {
                if w.last().is_none_or(|&last| q.target(a) == q.source(last)) {
                    let mut longer = w.clone();
                    longer.push(a);
                    next.push(longer);
                }
            }
        }
        out = next;
    }
    out
}

fn rank(mut rows: Vec<Vec<BigRational>>, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = &rows[k][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &factor;
                    rows[k][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim kΓ/I` for a homogeneous ideal: per length `n`, the number of paths
/// minus the rank of the span of all `u·r·v`, over the rationals. Stops
/// once every path of some length lies in the ideal.
pub fn graded_dimension(p: &Presentation) -> usize {
    let q = p.quiver();
    let mut total = q.vertex_count();
    for n in 1..=64 {
        let paths = words(q, n);
        if paths.is_empty() {
            return total;
        }
        let index: HashMap<&[ArrowId], usize> = paths.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
        let mut rows = Vec::new();
        for r in p.relations() {
            let (lhs, rhs): (&[ArrowId], Option<&[ArrowId]>) = match r {
                Relation::MonomialZero(path) => (path.arrows(), None),
                Relation::Commutation(a, b) => (a.arrows(), Some(b.arrows())),
            };
            let m = lhs.len();
            if m > n {
                continue;
            }
            for w in &paths {
                for start in 0..=n - m {
                    if &w[start..start + m] != lhs {
                        continue;
                    }
                    let mut row = vec![BigRational::zero(); paths.len()];
                    row[index[w.as_slice()]] += BigRational::one();
                    if let Some(rhs) = rhs {
                        let mut other = w.clone();
                        other.splice(start..start + m, rhs.iter().copied());
                        if let Some(&k) = index.get(other.as_slice()) {
                            row[k] -= BigRational::one();
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let killed = rank(rows, paths.len());
        if killed == paths.len() {
            return total;
        }
        total += paths.len() - killed;
    }
    panic!("ideal does not contain all long paths");
}

/// Paths in an acyclic quiver, counted by dynamic programming:
/// `(paths ending at v, paths starting at v)` for each vertex, nonempty only.
pub fn path_counts(q: &Quiver) -> Vec<(usize, usize)> {
    let order = q.topological_order().expect("acyclic");
    let mut ending = vec![0usize; q.vertex_count()];
    for &v in &order {
        for a in q.arrow_ids().filter(|&a| q.target(a) == v) {
            ending[v.0] += 1 + ending[q.source(a).0];
        }
    }
    let mut starting = vec![0usize; q.vertex_count()];
    for &v in order.iter().rev() {
        for a in q.arrow_ids().filter(|&a| q.source(a) == v) {
            starting[v.0] += 1 + starting[q.target(a).0];
        }
    }
    ending.into_iter().zip(starting).collect()
}

/// `dim kΓ` for an acyclic quiver.
pub fn path_algebra_dimension(q: &Quiver) -> usize {
    q.vertex_count() + path_counts(q).iter().map(|(e, _)| e).sum::<usize>()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sink {
    /// `β` and `α₁` enter `i`, `α_n` leaves `j`, `γ` enters `j`.
    One,
    /// All arrows reversed.
    Two,
}

/// The line `b_m … b_0 - i - x_1 … x_{n-1} - j - g_0 … g_l` with the
/// segment and the two tails of the requested shape. Tail arrows beyond
/// `β` and `γ` alternate orientation when `zigzag` is set.
pub fn exceptional_datum(n: usize, m: usize, l: usize, sink: Sink, zigzag: bool) -> NodalDatum {
    assert!(n >= 1);
    let mut vertices: Vec<String> = (0..=m).rev().map(|k| format!("b{k}")).collect();
    vertices.push("i".into());
    vertices.extend((1..n).map(|k| format!("x{k}")));
    vertices.push("j".into());
    vertices.extend((0..=l).map(|k| format!("g{k}")));
    let segment: Vec<String> = std::iter::once("i".to_string())
        .chain((1..n).map(|k| format!("x{k}")))
        .chain(std::iter::once("j".to_string()))
        .collect();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let tail = |k: usize, near: String, far: String| {
        if zigzag && k % 2 == 1 {
            (near, far)
        } else {
            (far, near)
        }
    };
    arrows.push(("beta".into(), "b0".into(), "i".into()));
    for k in 1..=m {
        let (s, t) = tail(k, format!("b{}", k - 1), format!("b{k}"));
        arrows.push((format!("beta{k}"), s, t));
    }
    for k in 0..n {
        arrows.push((format!("alpha{}", k + 1), segment[k + 1].clone(), segment[k].clone()));
    }
    arrows.push(("gamma".into(), "g0".into(), "j".into()));
    for k in 1..=l {
        let (s, t) = tail(k, format!("g{}", k - 1), format!("g{k}"));
        arrows.push((format!("gamma{k}"), s, t));
    }
    if sink == Sink::Two {
        for a in &mut arrows {
            std::mem::swap(&mut a.1, &mut a.2);
        }
    }
    let q = Quiver::from_parts(vertices.iter().map(String::as_str), arrows).unwrap();
    NodalDatum::new(q).glue("i", "j")
}

/// The `n = 3` exceptional datum with its two inner segment vertices glued.
pub fn super_exceptional_datum(m: usize, l: usize, sink: Sink, zigzag: bool) -> NodalDatum {
    exceptional_datum(3, m, l, sink, zigzag).glue("x1", "x2")
}

/// Reverses every arrow.
pub fn opposite(d: &NodalDatum) -> NodalDatum {
    let q = &d.base;
    let arrows = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), q.vertex_name(a.target).to_string(), q.vertex_name(a.source).to_string()));
    let mut out = NodalDatum::new(Quiver::from_parts(q.vertex_names().iter().map(String::as_str), arrows).unwrap());
    out.glue_pairs = d.glue_pairs.clone();
    out.blow_vertices = d.blow_vertices.clone();
    out
}

/// Renames every vertex through `rename`, keeping arrow names.
pub fn renamed(d: &NodalDatum, rename: impl Fn(&str) -> String) -> NodalDatum {
    let q = &d.base;
    let vertices: Vec<String> = q.vertex_names().iter().map(|v| rename(v)).collect();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| (a.name.clone(), rename(q.vertex_name(a.source)), rename(q.vertex_name(a.target))));
    let mut out = NodalDatum::new(Quiver::from_parts(vertices.iter().map(String::as_str), arrows).unwrap());
    for p in &d.glue_pairs {
        out = out.glue(rename(&p.first), rename(&p.second));
    }
    for v in &d.blow_vertices {
        out = out.blow(rename(v));
    }
    out
}

/// Verdict table for `(n, m, l)`-exceptional gluings, written out case by
/// case.
pub fn expected_exceptional(n: usize, m: usize, l: usize) -> &'static str {
    let finite = (m == 0 && l == 0)
        || (l == 0 && m == 1 && n <= 3)
        || (l == 0 && (2..=3).contains(&m) && n == 1)
        || (m == 0 && l == 1 && n <= 2);
    let tame = (l == 0 && m == 1 && n == 4)
        || (l == 0 && m == 2 && n == 2)
        || (l == 0 && m == 4 && n == 1)
        || (m == 0 && l == 1 && n == 3);
    if finite {
        "Finite"
    } else if tame {
        "Tame"
    } else {
        "Wild"
    }
}

pub fn expected_super_exceptional(m: usize, l: usize) -> &'static str {
    match m + l {
        0 => "Finite",
        1 => "Tame",
        _ => "Wild",
    }
}

/// Small dense matrices over F₂, independent of the library's linear
/// algebra.
pub mod f2 {
    pub type Mat = Vec<Vec<u8>>;

    pub fn zeros(r: usize, c: usize) -> Mat {
        vec![vec![0; c]; r]
    }

    pub fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
        let mut out = zeros(a.len(), cols);
        for r in 0..a.len() {
            for c in 0..cols {
                let mut s = 0;
                for k in 0..inner {
                    s ^= a[r][k] & b[k][c];
                }
                out[r][c] = s;
            }
        }
        out
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = zeros(n, n);
        for k in 0..n {
            m[k][k] = 1;
        }
        m
    }

    /// `(g, g⁻¹)` for every invertible `n × n` matrix.
    pub fn general_linear(n: usize) -> Vec<(Mat, Mat)> {
        let all: Vec<Mat> = (0..1u32 << (n * n))
            .map(|bits| {
                (0..n)
                    .map(|r| (0..n).map(|c| ((bits >> (r * n + c)) & 1) as u8).collect())
                    .collect()
            })
            .collect();
        let id = identity(n);
        let mut out = Vec::new();
        for g in &all {
            if let Some(h) = all.iter().find(|h| mul(g, h, n, n) == id) {
                out.push((g.clone(), h.clone()));
            }
        }
        out
    }
}

/// Number of isomorphism classes of representations with dimension vector
/// `dims` over F₂, by explicit orbit computation under `∏ GL(d_v)`.
pub fn orbit_count(p: &Presentation, dims: &[usize]) -> usize {
    use f2::Mat;
    let q = p.quiver();
    let arrows: Vec<ArrowId> = q.arrow_ids().collect();
    let shapes: Vec<(usize, usize)> = arrows.iter().map(|&a| (dims[q.target(a).0], dims[q.source(a).0])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let decode = |bits: u64| -> Vec<Mat> {
        let mut pos = 0;
        shapes
            .iter()
            .map(|&(r, c)| {
                let m = (0..r)
                    .map(|i| (0..c).map(|j| ((bits >> (pos + i * c + j)) & 1) as u8).collect())
                    .collect();
                pos += r * c;
                m
            })
            .collect()
    };
    let encode = |mats: &[Mat]| -> u64 {
        let mut bits = 0u64;
        let mut pos = 0;
        for (m, &(r, c)) in mats.iter().zip(&shapes) {
            for i in 0..r {
                for j in 0..c {
                    bits |= (m[i][j] as u64) << (pos + i * c + j);
                }
            }
            pos += r * c;
        }
        bits
    };
    let holds = |mats: &[Mat]| {
        p.relations().iter().all(|rel| {
            let eval = |path: &nodal::quiver::Path| {
                let w = path.arrows();
                let mut acc = f2::identity(dims[q.target(w[0]).0]);
                for &a in w {
                    let (r, c) = shapes[a.0];
                    acc = f2::mul(&acc, &mats[a.0], r, c);
                }
                acc
            };
            match rel {
                Relation::MonomialZero(path) => eval(path).iter().flatten().all(|&x| x == 0),
                Relation::Commutation(a, b) => eval(a) == eval(b),
            }
        })
    };
    let groups: Vec<Vec<(Mat, Mat)>> = dims.iter().map(|&d| f2::general_linear(d)).collect();
    let mut seen = vec![false; 1 << entries];
    let mut orbits = 0;
    for start in 0..1u64 << entries {
        if seen[start as usize] {
            continue;
        }
        let mats = decode(start);
        if !holds(&mats) {
            seen[start as usize] = true;
            continue;
        }
        orbits += 1;
        let mut choice = vec![0usize; dims.len()];
        loop {
            let moved: Vec<Mat> = arrows
                .iter()
                .zip(&mats)
                .map(|(&a, m)| {
                    let (s, t) = (q.source(a).0, q.target(a).0);
                    let (g, _) = &groups[t][choice[t]];
                    let (_, h) = &groups[s][choice[s]];
                    let left = f2::mul(g, m, dims[t], dims[s]);
                    f2::mul(&left, h, dims[s], dims[s])
                })
                .collect();
            seen[encode(&moved) as usize] = true;
            let mut k = 0;
            loop {
                if k == dims.len() {
                    break;
                }
                choice[k] += 1;
                if choice[k] < groups[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == dims.len() {
                break;
            }
        }
    }
    orbits
}

/// Indecomposable classes per dimension vector from orbit counts: every
/// class is a unique multiset of indecomposables, so the indecomposables
/// of `d` are the classes of `d` minus the multisets of two or more
/// smaller indecomposables summing to `d`.
pub fn indecomposables_from_orbits(p: &Presentation, bound: usize) -> Vec<(Vec<usize>, usize)> {
    let n = p.quiver().vertex_count();
    let mut vectors: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0; n];
    fn rec(k: usize, left: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == current.len() {
            if current.iter().sum::<usize>() > 0 {
                out.push(current.clone());
            }
            return;
        }
        for d in 0..=left {
            current[k] = d;
            rec(k + 1, left - d, current, out);
        }
        current[k] = 0;
    }
    rec(0, bound, &mut current, &mut vectors);
    vectors.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
    let mut indec: Vec<(Vec<usize>, usize)> = Vec::new();
    for d in &vectors {
        let decomposable = multisets(&indec, d, 0, 0);
        let classes = orbit_count(p, d);
        indec.push((d.clone(), classes - decomposable));
    }
    indec.retain(|(_, c)| *c > 0);
    indec
}

/// Multisets of at least two items from `kinds[from..]` (with the given
/// multiplicities of choice) whose dimension vectors sum to `target`.
fn multisets(kinds: &[(Vec<usize>, usize)], target: &[usize], from: usize, picked: usize) -> usize {
    if target.iter().all(|&x| x == 0) {
        return usize::from(picked >= 2);
    }
    let mut total = 0;
    for k in from..kinds.len() {
        let (d, count) = &kinds[k];
        if *count == 0 || d.iter().zip(target).any(|(a, b)| a > b) {
            continue;
        }
        // choose how many copies of this dimension vector, as a multiset of `count` kinds
        let mut rest = target.to_vec();
        let mut copies = 0;
        while d.iter().zip(&rest).all(|(a, b)| a <= b) {
            for (r, a) in rest.iter_mut().zip(d) {
                *r -= a;
            }
            copies += 1;
            let ways = binomial(count + copies - 1, copies);
            total += ways * multisets(kinds, &rest, k + 1, picked + copies);
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
