//! Quivers, paths, relations and presented algebras `kΓ/I`.
//!
//! Paths are written the way products are: the word `a b` means "apply `b`,
//! then `a`". A [`Path`] stores its arrows in that written order, so the last
//! arrow of the vector is the first one traversed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("arrow `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("cannot compose: path ends at `{ends_at}` but the next one starts at `{starts_at}`")]
    NonComposable { ends_at: String, starts_at: String },
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
}

/// Index of a vertex inside its [`Quiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an arrow inside its [`Quiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArrowData {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    In,
    Out,
}

/// A finite directed multigraph with named vertices and arrows.
///
/// Parallel arrows and loops are allowed here; constructions that cannot
/// handle them reject them on their own.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<ArrowData>,
    vertex_index: BTreeMap<String, VertexId>,
    arrow_index: BTreeMap<String, ArrowId>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn from_parts<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (name, s, t) in arrows {
            q.add_arrow(name, &s, &t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<VertexId, QuiverError> {
        let name = name.into();
        if self.vertex_index.contains_key(&name) {
            return Err(QuiverError::DuplicateVertex(name));
        }
        let id = VertexId(self.vertices.len());
        self.vertex_index.insert(name.clone(), id);
        self.vertices.push(name);
        Ok(id)
    }

    pub fn add_arrow(
        &mut self,
        name: impl Into<String>,
        source: &str,
        target: &str,
    ) -> Result<ArrowId, QuiverError> {
        let name = name.into();
        if self.arrow_index.contains_key(&name) {
            return Err(QuiverError::DuplicateArrow(name));
        }
        let source = self.vertex(source)?;
        let target = self.vertex(target)?;
        let id = ArrowId(self.arrows.len());
        self.arrow_index.insert(name.clone(), id);
        self.arrows.push(ArrowData {
            name,
            source,
            target,
        });
        Ok(id)
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId, QuiverError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownVertex(name.to_string()))
    }

    pub fn arrow(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow_data(&self, a: ArrowId) -> &ArrowData {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[ArrowData] {
        &self.arrows
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    /// Arrows ending at (`In`) or starting at (`Out`) the vertex. A loop is
    /// reported in both directions.
    pub fn arrows_at(&self, v: VertexId, direction: Direction) -> Vec<ArrowId> {
        self.arrow_ids()
            .filter(|&a| match direction {
                Direction::In => self.target(a) == v,
                Direction::Out => self.source(a) == v,
            })
            .collect()
    }

    /// Name-based variant of [`Quiver::arrows_at`].
    pub fn arrows_at_named(
        &self,
        v: &str,
        direction: Direction,
    ) -> Result<Vec<ArrowId>, QuiverError> {
        Ok(self.arrows_at(self.vertex(v)?, direction))
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.target == v).count()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arrows.iter().filter(|a| a.source == v).count()
    }

    /// True when the quiver has no oriented cycle (loops included).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Kahn's algorithm; `None` when an oriented cycle exists.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target.0] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(VertexId(v));
            for a in &self.arrows {
                if a.source.0 == v {
                    indeg[a.target.0] -= 1;
                    if indeg[a.target.0] == 0 {
                        ready.push(a.target.0);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Connected components of the underlying undirected multigraph, each
    /// sorted by vertex index; components are ordered by their first vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for a in &self.arrows {
            let (ra, rb) = (find(&mut parent, a.source.0), find(&mut parent, a.target.0));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(VertexId(v));
        }
        groups.into_values().collect()
    }

    /// The full subquiver on the given vertices (order preserved).
    pub fn induced(&self, vertices: &[VertexId]) -> Quiver {
        let keep: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let mut q = Quiver::new();
        for &v in vertices {
            q.add_vertex(self.vertex_name(v)).expect("distinct names");
        }
        for a in &self.arrows {
            if keep.contains(&a.source) && keep.contains(&a.target) {
                q.add_arrow(
                    a.name.clone(),
                    self.vertex_name(a.source),
                    self.vertex_name(a.target),
                )
                .expect("endpoints present");
            }
        }
        q
    }

    /// The empty path `ε_v`.
    pub fn empty_path(&self, v: VertexId) -> Path {
        Path {
            arrows: Vec::new(),
            source: v,
            target: v,
        }
    }

    pub fn arrow_path(&self, a: ArrowId) -> Path {
        Path {
            arrows: vec![a],
            source: self.source(a),
            target: self.target(a),
        }
    }

    /// Builds a path from arrows in written order (`arrows[0]` applied last).
    pub fn path(&self, arrows: &[ArrowId]) -> Result<Path, QuiverError> {
        let (last, rest) = arrows
            .split_last()
            .ok_or_else(|| QuiverError::InvalidRelation("empty arrow word".into()))?;
        let mut p = self.arrow_path(*last);
        for &a in rest.iter().rev() {
            p = self.compose(&self.arrow_path(a), &p)?;
        }
        Ok(p)
    }

    /// Path from arrow names in written order.
    pub fn path_named(&self, names: &[&str]) -> Result<Path, QuiverError> {
        let ids = names
            .iter()
            .map(|n| self.arrow(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(&ids)
    }

    /// The product `p·q`: first `q`, then `p`.
    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path, QuiverError> {
        if q.target != p.source {
            return Err(QuiverError::NonComposable {
                ends_at: self.vertex_name(q.target).to_string(),
                starts_at: self.vertex_name(p.source).to_string(),
            });
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Ok(Path {
            arrows,
            source: q.source,
            target: p.target,
        })
    }

    /// Written form of a path, arrows joined by `·`; empty paths print as `e_v`.
    pub fn format_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e_{}", self.vertex_name(p.source));
        }
        p.arrows
            .iter()
            .map(|&a| self.arrow_name(a))
            .collect::<Vec<_>>()
            .join("·")
    }

    /// Reports the shape of every connected component of the underlying graph.
    pub fn underlying_shape(&self) -> ShapeReport {
        let components = self
            .components()
            .into_iter()
            .map(|vs| {
                let shape = self.component_shape(&vs);
                ComponentShape {
                    vertices: vs.iter().map(|&v| self.vertex_name(v).to_string()).collect(),
                    shape,
                }
            })
            .collect();
        ShapeReport {
            components,
            acyclic: self.is_acyclic(),
        }
    }

    fn component_shape(&self, vs: &[VertexId]) -> Shape {
        let members: BTreeSet<VertexId> = vs.iter().copied().collect();
        let edges: Vec<&ArrowData> = self
            .arrows
            .iter()
            .filter(|a| members.contains(&a.source))
            .collect();
        let n = vs.len();
        let e = edges.len();
        let mut degree: BTreeMap<VertexId, usize> = vs.iter().map(|&v| (v, 0)).collect();
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = vs.iter().map(|&v| (v, vec![])).collect();
        for a in &edges {
            *degree.get_mut(&a.source).unwrap() += 1;
            *degree.get_mut(&a.target).unwrap() += 1;
            adj.get_mut(&a.source).unwrap().push(a.target);
            adj.get_mut(&a.target).unwrap().push(a.source);
        }
        if e == n {
            return if degree.values().all(|&d| d == 2) {
                Shape::ACycle(n)
            } else {
                Shape::Other
            };
        }
        if e + 1 != n {
            return Shape::Other;
        }
        // A tree from here on: no loops, no parallel edges.
        let branch: Vec<VertexId> = vs.iter().copied().filter(|v| degree[v] >= 3).collect();
        // Number of vertices on the arm leaving `center` through `first`.
        let arm = |center: VertexId, first: VertexId| -> Option<usize> {
            let (mut prev, mut cur, mut len) = (center, first, 1);
            loop {
                match degree[&cur] {
                    1 => return Some(len),
                    2 => {
                        let next = *adj[&cur].iter().find(|&&w| w != prev)?;
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    _ => return None,
                }
            }
        };
        match branch.as_slice() {
            [] => Shape::ALine(n),
            [c] if degree[c] == 3 => {
                let mut arms: Vec<usize> = match adj[c].iter().map(|&w| arm(*c, w)).collect() {
                    Some(a) => a,
                    None => return Shape::Other,
                };
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => Shape::DynkinD(n),
                    [1, 2, 2] => Shape::DynkinE(6),
                    [1, 2, 3] => Shape::DynkinE(7),
                    [1, 2, 4] => Shape::DynkinE(8),
                    [2, 2, 2] => Shape::EuclideanE(6),
                    [1, 3, 3] => Shape::EuclideanE(7),
                    [1, 2, 5] => Shape::EuclideanE(8),
                    _ => Shape::Other,
                }
            }
            [c] if degree[c] == 4 && n == 5 => Shape::EuclideanD(4),
            [c1, c2] if degree[c1] == 3 && degree[c2] == 3 => {
                let leaves = |c: &VertexId| adj[c].iter().filter(|w| degree[*w] == 1).count();
                if leaves(c1) == 2 && leaves(c2) == 2 {
                    Shape::EuclideanD(n - 1)
                } else {
                    Shape::Other
                }
            }
            _ => Shape::Other,
        }
    }
}

/// A path `a_1 a_2 … a_k` (written order, `a_k` traversed first) or an empty
/// path `ε_v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    arrows: Vec<ArrowId>,
    source: VertexId,
    target: VertexId,
}

impl Path {
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// True when `word` occurs as a contiguous block of this path.
    pub fn contains_subword(&self, word: &[ArrowId]) -> bool {
        !word.is_empty() && self.arrows.windows(word.len()).any(|w| w == word)
    }
}

/// Generators of the ideal `I`. Only the two kinds the nodal constructions
/// produce are modelled.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `path = 0`
    MonomialZero(Path),
    /// `lhs = rhs`
    Commutation(Path, Path),
}

impl Relation {
    pub fn check(&self, q: &Quiver) -> Result<(), QuiverError> {
        let valid = |p: &Path| -> Result<(), QuiverError> {
            if p.len() < 2 {
                return Err(QuiverError::InvalidRelation(format!(
                    "`{}` has length {} < 2",
                    q.format_path(p),
                    p.len()
                )));
            }
            // Re-derive endpoints from the arrows so foreign paths are caught.
            let rebuilt = q.path(p.arrows())?;
            if rebuilt != *p {
                return Err(QuiverError::InvalidRelation(format!(
                    "`{}` is not a path of this quiver",
                    q.format_path(p)
                )));
            }
            Ok(())
        };
        match self {
            Relation::MonomialZero(p) => valid(p),
            Relation::Commutation(l, r) => {
                valid(l)?;
                valid(r)?;
                if l.source() != r.source() || l.target() != r.target() {
                    return Err(QuiverError::InvalidRelation(format!(
                        "`{}` and `{}` have different endpoints",
                        q.format_path(l),
                        q.format_path(r)
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn format(&self, q: &Quiver) -> String {
        match self {
            Relation::MonomialZero(p) => format!("{} = 0", q.format_path(p)),
            Relation::Commutation(l, r) => {
                format!("{} = {}", q.format_path(l), q.format_path(r))
            }
        }
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self, Relation::MonomialZero(_))
    }
}

/// A quiver with relations, presenting the basic algebra `kΓ/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Relation>,
}

impl Presentation {
    /// Validates every relation; duplicates collapse and the set is stored
    /// in canonical order.
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<Self, QuiverError> {
        for r in &relations {
            r.check(&quiver)?;
        }
        let relations: BTreeSet<Relation> = relations.into_iter().collect();
        let mut relations: Vec<Relation> = relations.into_iter().collect();
        relations.sort_by_cached_key(|r| relation_sort_key(&quiver, r));
        Ok(Self { quiver, relations })
    }

    pub fn hereditary(quiver: Quiver) -> Self {
        Self {
            quiver,
            relations: Vec::new(),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn zero_words(&self) -> Vec<&[ArrowId]> {
        self.relations
            .iter()
            .filter_map(|r| match r {
                Relation::MonomialZero(p) => Some(p.arrows()),
                _ => None,
            })
            .collect()
    }

    /// Relation lines in canonical order.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.format(&self.quiver)).collect()
    }
}

fn relation_sort_key(q: &Quiver, r: &Relation) -> (u8, Vec<String>, Vec<String>) {
    let names = |p: &Path| p.arrows().iter().map(|&a| q.arrow_name(a).to_string()).collect();
    match r {
        Relation::MonomialZero(p) => (0, names(p), Vec::new()),
        Relation::Commutation(l, rr) => (1, names(l), names(rr)),
    }
}

/// Shape of one connected component of the underlying graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    /// Dynkin `A_n`: a line on `n` vertices.
    ALine(usize),
    /// Euclidean `Ã_{n-1}`: a cycle on `n` vertices (a loop when `n = 1`).
    ACycle(usize),
    /// Dynkin `D_n`.
    DynkinD(usize),
    /// Dynkin `E_6`, `E_7`, `E_8`.
    DynkinE(usize),
    /// Euclidean `D̃_n` (on `n + 1` vertices).
    EuclideanD(usize),
    /// Euclidean `Ẽ_6`, `Ẽ_7`, `Ẽ_8`.
    EuclideanE(usize),
    Other,
}

impl Shape {
    pub fn is_type_a(self) -> bool {
        matches!(self, Shape::ALine(_) | Shape::ACycle(_))
    }

    pub fn is_dynkin(self) -> bool {
        matches!(self, Shape::ALine(_) | Shape::DynkinD(_) | Shape::DynkinE(_))
    }

    pub fn is_euclidean(self) -> bool {
        matches!(
            self,
            Shape::ACycle(_) | Shape::EuclideanD(_) | Shape::EuclideanE(_)
        )
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::ALine(n) => write!(f, "A{n}"),
            Shape::ACycle(n) => write!(f, "Ã{}", n - 1),
            Shape::DynkinD(n) => write!(f, "D{n}"),
            Shape::DynkinE(n) => write!(f, "E{n}"),
            Shape::EuclideanD(n) => write!(f, "D̃{n}"),
            Shape::EuclideanE(n) => write!(f, "Ẽ{n}"),
            Shape::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentShape {
    pub vertices: Vec<String>,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub components: Vec<ComponentShape>,
    pub acyclic: bool,
}
