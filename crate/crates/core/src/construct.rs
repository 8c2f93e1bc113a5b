//! Gluing and blowing up vertices of a hereditary quiver.
//!
//! A [`NodalDatum`] is an acyclic base quiver together with a symmetric
//! relation on its vertices: glue pairs `{i, j}` and blow vertices `i`, no
//! vertex used twice. [`build_presentation`] turns it into the quiver with
//! relations of the resulting nodal algebra.
//!
//! All operations are applied simultaneously rather than one after another:
//! every base vertex gets its copies (one, a merged one, or two split ones),
//! every base arrow gets one copy per choice of endpoint copies, and the
//! relations are generated on top of that. This makes the output independent
//! of the order in which operations are listed.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::quiver::{ArrowId, Direction, Path, Presentation, Quiver, QuiverError, Relation, VertexId};

pub const DEFAULT_PATH_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error("a path longer than {cap} arrows avoids every zero relation; the algebra is infinite-dimensional or the cap is too low")]
    NonNilpotentCycle { cap: usize },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Unordered pair of base vertices to identify. The stored order only
/// decides the merged id `(first second)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GluePair {
    pub first: String,
    pub second: String,
}

impl GluePair {
    pub fn new(first: impl Into<String>, second: impl Into<String>) -> Self {
        Self {
            first: first.into(),
            second: second.into(),
        }
    }

    pub fn merged_id(&self) -> String {
        format!("({} {})", self.first, self.second)
    }

    pub fn contains(&self, v: &str) -> bool {
        self.first == v || self.second == v
    }

    /// Same unordered pair.
    pub fn same_pair(&self, other: &GluePair) -> bool {
        (self.first == other.first && self.second == other.second)
            || (self.first == other.second && self.second == other.first)
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.second.clone(), self.first.clone())
    }
}

impl fmt::Display for GluePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.first, self.second)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodalDatum {
    pub base: Quiver,
    pub glue_pairs: Vec<GluePair>,
    pub blow_vertices: Vec<String>,
}

impl NodalDatum {
    pub fn new(base: Quiver) -> Self {
        Self {
            base,
            glue_pairs: Vec::new(),
            blow_vertices: Vec::new(),
        }
    }

    pub fn glue(mut self, i: impl Into<String>, j: impl Into<String>) -> Self {
        self.glue_pairs.push(GluePair::new(i, j));
        self
    }

    pub fn blow(mut self, v: impl Into<String>) -> Self {
        self.blow_vertices.push(v.into());
        self
    }

    pub fn operation_count(&self) -> usize {
        self.glue_pairs.len() + self.blow_vertices.len()
    }

    pub fn has_operations(&self) -> bool {
        self.operation_count() > 0
    }

    /// The datum restricted to some base vertices; operations touching a
    /// vertex outside the set are dropped.
    pub fn restrict(&self, vertices: &[VertexId]) -> NodalDatum {
        let base = self.base.induced(vertices);
        let inside = |v: &str| base.vertex(v).is_ok();
        NodalDatum {
            glue_pairs: self
                .glue_pairs
                .iter()
                .filter(|p| inside(&p.first) && inside(&p.second))
                .cloned()
                .collect(),
            blow_vertices: self
                .blow_vertices
                .iter()
                .filter(|v| inside(v))
                .cloned()
                .collect(),
            base,
        }
    }

    /// Connected pieces of the glued quiver, each as a sub-datum. Ordered by
    /// the first base vertex they contain.
    pub fn glued_components(&self) -> Vec<NodalDatum> {
        let n = self.base.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let union = |a: usize, b: usize, parent: &mut Vec<usize>| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        };
        for a in self.base.arrows() {
            union(a.source.0, a.target.0, &mut parent);
        }
        for p in &self.glue_pairs {
            if let (Ok(i), Ok(j)) = (self.base.vertex(&p.first), self.base.vertex(&p.second)) {
                union(i.0, j.0, &mut parent);
            }
        }
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(VertexId(v));
        }
        groups.values().map(|vs| self.restrict(vs)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BaseCyclic,
    UnknownVertex(String),
    SelfGlue(String),
    /// A vertex named by more than one operation.
    VertexReused(String),
    LoopAtBlowVertex(String),
    /// Ids containing `'` or whitespace would clash with derived ids.
    ReservedCharacter(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BaseCyclic => write!(f, "base quiver has an oriented cycle"),
            Violation::UnknownVertex(v) => write!(f, "operation names unknown vertex `{v}`"),
            Violation::SelfGlue(v) => write!(f, "vertex `{v}` glued to itself"),
            Violation::VertexReused(v) => {
                write!(f, "vertex `{v}` is used by more than one operation")
            }
            Violation::LoopAtBlowVertex(v) => write!(f, "blow vertex `{v}` carries a loop"),
            Violation::ReservedCharacter(id) => {
                write!(f, "id `{id}` contains a reserved character")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(d: &NodalDatum) -> ValidationReport {
    let mut violations = Vec::new();
    let reserved = |id: &str| id.is_empty() || id.chars().any(|c| c == '\'' || c.is_whitespace());
    for v in d.base.vertex_names() {
        if reserved(v) {
            violations.push(Violation::ReservedCharacter(v.clone()));
        }
    }
    for a in d.base.arrows() {
        if reserved(&a.name) {
            violations.push(Violation::ReservedCharacter(a.name.clone()));
        }
    }
    if !d.base.is_acyclic() {
        violations.push(Violation::BaseCyclic);
    }
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    let mut reused: BTreeSet<&str> = BTreeSet::new();
    let note = |v: &'_ str, violations: &mut Vec<Violation>| -> bool {
        if d.base.vertex(v).is_err() {
            violations.push(Violation::UnknownVertex(v.to_string()));
            return false;
        }
        true
    };
    for p in &d.glue_pairs {
        if p.first == p.second {
            violations.push(Violation::SelfGlue(p.first.clone()));
        }
        for v in [p.first.as_str(), p.second.as_str()] {
            if note(v, &mut violations) && !seen.insert(v) {
                reused.insert(v);
            }
        }
    }
    for v in &d.blow_vertices {
        if note(v, &mut violations) {
            if !seen.insert(v) {
                reused.insert(v);
            }
            let id = d.base.vertex(v).unwrap();
            if d.base.arrows().iter().any(|a| a.source == id && a.target == id) {
                violations.push(Violation::LoopAtBlowVertex(v.clone()));
            }
        }
    }
    violations.extend(reused.into_iter().map(|v| Violation::VertexReused(v.to_string())));
    ValidationReport { violations }
}

/// Which copy of a base vertex an endpoint uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyTag {
    /// The vertex is not blown up.
    Single,
    /// `v'`
    First,
    /// `v''`
    Second,
}

impl CopyTag {
    fn primes(self) -> &'static str {
        match self {
            CopyTag::Single => "",
            CopyTag::First => "'",
            CopyTag::Second => "''",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexImage {
    Same(VertexId),
    Merged(VertexId),
    Split(VertexId, VertexId),
}

/// Where a result arrow comes from: a base arrow and the copies of its
/// endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowOrigin {
    pub base: ArrowId,
    pub source_copy: CopyTag,
    pub target_copy: CopyTag,
}

/// Relates base vertices and arrows to those of the built presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluedVertexMap {
    /// Indexed by base vertex.
    pub images: Vec<VertexImage>,
    /// Indexed by result arrow.
    pub arrow_origins: Vec<ArrowOrigin>,
    arrow_lookup: HashMap<ArrowOrigin, ArrowId>,
}

impl GluedVertexMap {
    pub fn image(&self, v: VertexId) -> VertexImage {
        self.images[v.0]
    }

    /// Result vertex carrying the given copy of a base vertex.
    pub fn vertex(&self, v: VertexId, copy: CopyTag) -> VertexId {
        match (self.images[v.0], copy) {
            (VertexImage::Same(w), CopyTag::Single) | (VertexImage::Merged(w), CopyTag::Single) => w,
            (VertexImage::Split(a, _), CopyTag::First) => a,
            (VertexImage::Split(_, b), CopyTag::Second) => b,
            (img, c) => panic!("copy {c:?} does not exist for image {img:?}"),
        }
    }

    pub fn arrow(&self, origin: ArrowOrigin) -> Option<ArrowId> {
        self.arrow_lookup.get(&origin).copied()
    }

    pub fn origin(&self, a: ArrowId) -> ArrowOrigin {
        self.arrow_origins[a.0]
    }
}

fn copies(blown: bool) -> &'static [CopyTag] {
    if blown {
        &[CopyTag::First, CopyTag::Second]
    } else {
        &[CopyTag::Single]
    }
}

/// Name of an arrow copy: `a`, `a'`, `a''`, or `a'.''` when both endpoints
/// are blown (source copy first).
pub fn arrow_copy_name(base: &str, source: CopyTag, target: CopyTag) -> String {
    match (source, target) {
        (CopyTag::Single, t) => format!("{base}{}", t.primes()),
        (s, CopyTag::Single) => format!("{base}{}", s.primes()),
        (s, t) => format!("{base}{}.{}", s.primes(), t.primes()),
    }
}

/// Quiver with relations of the nodal algebra described by the datum.
pub fn build_presentation(d: &NodalDatum) -> Result<(Presentation, GluedVertexMap), ConstructError> {
    let report = validate(d);
    if !report.is_valid() {
        return Err(ConstructError::InvalidDatum(report));
    }
    let base = &d.base;
    let blown: BTreeSet<VertexId> = d
        .blow_vertices
        .iter()
        .map(|v| base.vertex(v))
        .collect::<Result<_, _>>()?;
    let mut partner: BTreeMap<VertexId, (usize, bool)> = BTreeMap::new();
    for (k, p) in d.glue_pairs.iter().enumerate() {
        partner.insert(base.vertex(&p.first)?, (k, true));
        partner.insert(base.vertex(&p.second)?, (k, false));
    }

    let mut quiver = Quiver::new();
    let mut images: Vec<Option<VertexImage>> = vec![None; base.vertex_count()];
    for v in base.vertex_ids() {
        if images[v.0].is_some() {
            continue;
        }
        let name = base.vertex_name(v);
        if let Some(&(k, _)) = partner.get(&v) {
            let pair = &d.glue_pairs[k];
            let id = quiver.add_vertex(pair.merged_id())?;
            images[base.vertex(&pair.first)?.0] = Some(VertexImage::Merged(id));
            images[base.vertex(&pair.second)?.0] = Some(VertexImage::Merged(id));
        } else if blown.contains(&v) {
            let a = quiver.add_vertex(format!("{name}'"))?;
            let b = quiver.add_vertex(format!("{name}''"))?;
            images[v.0] = Some(VertexImage::Split(a, b));
        } else {
            images[v.0] = Some(VertexImage::Same(quiver.add_vertex(name)?));
        }
    }
    let images: Vec<VertexImage> = images.into_iter().map(|i| i.expect("every vertex mapped")).collect();

    let mut map = GluedVertexMap {
        images,
        arrow_origins: Vec::new(),
        arrow_lookup: HashMap::new(),
    };
    for a in base.arrow_ids() {
        let (s, t) = (base.source(a), base.target(a));
        for &sc in copies(blown.contains(&s)) {
            for &tc in copies(blown.contains(&t)) {
                let origin = ArrowOrigin {
                    base: a,
                    source_copy: sc,
                    target_copy: tc,
                };
                let name = arrow_copy_name(base.arrow_name(a), sc, tc);
                let src = quiver.vertex_name(map.vertex(s, sc)).to_string();
                let tgt = quiver.vertex_name(map.vertex(t, tc)).to_string();
                let id = quiver.add_arrow(name, &src, &tgt)?;
                map.arrow_origins.push(origin);
                map.arrow_lookup.insert(origin, id);
            }
        }
    }

    let copies_of = |v: VertexId| copies(blown.contains(&v));
    let lookup = |a: ArrowId, sc: CopyTag, tc: CopyTag| {
        map.arrow(ArrowOrigin {
            base: a,
            source_copy: sc,
            target_copy: tc,
        })
        .expect("arrow copy exists")
    };

    let mut relations = Vec::new();
    for pair in &d.glue_pairs {
        let (i, j) = (base.vertex(&pair.first)?, base.vertex(&pair.second)?);
        for (from, into) in [(i, j), (j, i)] {
            // alpha leaves `from`, beta enters `into`: beta then alpha is zero.
            for alpha in base.arrows_at(from, Direction::Out) {
                for beta in base.arrows_at(into, Direction::In) {
                    for &atc in copies_of(base.target(alpha)) {
                        for &bsc in copies_of(base.source(beta)) {
                            let word = [
                                lookup(alpha, CopyTag::Single, atc),
                                lookup(beta, bsc, CopyTag::Single),
                            ];
                            relations.push(Relation::MonomialZero(quiver.path(&word)?));
                        }
                    }
                }
            }
        }
    }
    for v in &blown {
        for alpha in base.arrows_at(*v, Direction::Out) {
            for beta in base.arrows_at(*v, Direction::In) {
                for &tc in copies_of(base.target(alpha)) {
                    for &sc in copies_of(base.source(beta)) {
                        let lhs = [lookup(alpha, CopyTag::First, tc), lookup(beta, sc, CopyTag::First)];
                        let rhs = [lookup(alpha, CopyTag::Second, tc), lookup(beta, sc, CopyTag::Second)];
                        relations.push(Relation::Commutation(quiver.path(&lhs)?, quiver.path(&rhs)?));
                    }
                }
            }
        }
    }
    let presentation = Presentation::new(quiver, relations)?;
    Ok((presentation, map))
}

/// All paths, trivial ones included, with no zero relation as a subword.
///
/// Fails once a surviving path is longer than `cap`.
pub fn zero_free_paths(p: &Presentation, cap: usize) -> Result<Vec<Path>, ConstructError> {
    let q = p.quiver();
    let zero_words = p.zero_words();
    let mut out = Vec::new();
    let mut stack: Vec<Path> = q.vertex_ids().map(|v| q.empty_path(v)).collect();
    stack.reverse();
    while let Some(path) = stack.pop() {
        if path.len() > cap {
            return Err(ConstructError::NonNilpotentCycle { cap });
        }
        let mut next = Vec::new();
        for a in q.arrows_at(path.target(), Direction::Out) {
            let extended = q.compose(&q.arrow_path(a), &path)?;
            // only words starting at the new arrow can be new occurrences
            let dead = zero_words
                .iter()
                .any(|w| extended.arrows().len() >= w.len() && &extended.arrows()[..w.len()] == *w);
            if !dead {
                next.push(extended);
            }
        }
        out.push(path);
        stack.extend(next.into_iter().rev());
    }
    Ok(out)
}

/// Dimension of `kΓ/I` as a vector space.
///
/// The span of the zero-free paths is cut down by every `u·(lhs − rhs)·w`.
/// Each such vector is a difference of two basis paths or a single basis path
/// (when the other side contains a zero relation), so its rank is computed
/// exactly with a union–find over the basis: a class of `s` identified paths
/// contributes `s − 1`, plus one more if any member is forced to zero.
pub fn dimension(p: &Presentation, cap: usize) -> Result<usize, ConstructError> {
    let q = p.quiver();
    let paths = zero_free_paths(p, cap)?;
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let n = paths.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut killed = vec![false; n];
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

    let mut by_source: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    let mut by_target: BTreeMap<VertexId, Vec<&Path>> = BTreeMap::new();
    for path in &paths {
        by_source.entry(path.source()).or_default().push(path);
        by_target.entry(path.target()).or_default().push(path);
    }
    for r in p.relations() {
        let Relation::Commutation(lhs, rhs) = r else { continue };
        let empty = Vec::new();
        let before = by_target.get(&lhs.source()).unwrap_or(&empty);
        let after = by_source.get(&lhs.target()).unwrap_or(&empty);
        for w in before {
            for u in after {
                let term = |side: &Path| -> Result<Option<usize>, QuiverError> {
                    let full = q.compose(u, &q.compose(side, w)?)?;
                    Ok(index.get(&full).copied())
                };
                match (term(lhs)?, term(rhs)?) {
                    (Some(a), Some(b)) => {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        if ra != rb {
                            parent[ra] = rb;
                            killed[rb] |= killed[ra];
                        }
                    }
                    (Some(a), None) | (None, Some(a)) => {
                        let ra = find(&mut parent, a);
                        killed[ra] = true;
                    }
                    (None, None) => {}
                }
            }
        }
    }
    let mut rank = 0;
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..n {
        *classes.entry(find(&mut parent, k)).or_default() += 1;
    }
    for (root, size) in classes {
        rank += size - 1;
        if killed[root] {
            rank += 1;
        }
    }
    Ok(n - rank)
}
