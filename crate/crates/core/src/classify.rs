//! Representation type of nodal algebras of type A.
//!
//! Classification works one glued component at a time after inessential
//! pairs are stripped: relation-free components follow Gabriel's list,
//! degree-one operations give gentle or skewed-gentle algebras, and the
//! remaining good cases are the exceptional and super-exceptional gluings.

use std::fmt;

use thiserror::Error;

use crate::construct::{build_presentation, validate, ConstructError, GluePair, NodalDatum, ValidationReport};
use crate::quiver::{ArrowId, Direction, Presentation, Quiver, Relation, Shape, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("glue pair {0} is not part of the datum")]
    UnknownPair(GluePair),
    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("base component {{{}}} has shape {shape}, not type A", vertices.join(", "))]
    NotTypeA { vertices: Vec<String>, shape: Shape },
    #[error("invalid datum: {0}")]
    InvalidDatum(ValidationReport),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Ordered so that combining components takes the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Finite,
    Tame,
    /// Not wild, but finite versus tame is left open.
    NonWildUnresolved,
    Wild,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Finite => "Finite",
            Verdict::Tame => "Tame",
            Verdict::NonWildUnresolved => "NonWildUnresolved",
            Verdict::Wild => "Wild",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExceptionalCase {
    /// `i` is a sink for `β` and `α₁`; `α_n` leaves `j`, `γ` enters it.
    One,
    /// The dual: `β` and `α₁` leave `i`; `α_n` enters `j`, `γ` leaves it.
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExceptionalParams {
    /// Arrows on the segment between the glued vertices.
    pub n: usize,
    /// Arrows in the tail behind `β`.
    pub m: usize,
    /// Arrows in the tail behind `γ`.
    pub l: usize,
    pub case: ExceptionalCase,
    pub is_super: bool,
}

impl fmt::Display for ExceptionalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_super { "super-exceptional" } else { "exceptional" };
        let case = match self.case {
            ExceptionalCase::One => "sink shape",
            ExceptionalCase::Two => "source shape",
        };
        write!(f, "({},{},{})-{kind}, {case}", self.n, self.m, self.l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotExceptional {
    OperationCount { glue_pairs: usize, blow_vertices: usize },
    PairSpansComponents,
    /// The pair sits on a cycle-shaped component; such configurations are not
    /// recognised.
    CycleComponent,
    ShapeMismatch,
}

impl fmt::Display for NotExceptional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotExceptional::OperationCount {
                glue_pairs,
                blow_vertices,
            } => write!(
                f,
                "wrong operation count after stripping ({glue_pairs} essential glue pairs, {blow_vertices} blow vertices)"
            ),
            NotExceptional::PairSpansComponents => {
                write!(f, "glued vertices lie in different base components")
            }
            NotExceptional::CycleComponent => write!(
                f,
                "warning: pair lies on a cycle-shaped component; exceptional shapes are only recognised on lines"
            ),
            NotExceptional::ShapeMismatch => {
                write!(f, "component does not match an exceptional shape")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Clause {
    StrippedInessential(GluePair),
    Hereditary(Shape),
    QuasiGentle,
    Exceptional { params: ExceptionalParams, rule: &'static str },
    NotRecognised(Vec<String>),
    Combined,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::StrippedInessential(p) => write!(f, "inessential gluing {p} stripped"),
            Clause::Hereditary(shape) => write!(f, "hereditary, underlying graph {shape}"),
            Clause::QuasiGentle => write!(
                f,
                "quasi-gentle: every operated vertex has at most one in- and one out-arrow; finite vs tame not decided"
            ),
            Clause::Exceptional { params, rule } => write!(f, "{params}: {rule}"),
            Clause::NotRecognised(reasons) => {
                write!(f, "not quasi-gentle, exceptional or super-exceptional")?;
                if !reasons.is_empty() {
                    write!(f, " ({})", reasons.join("; "))?;
                }
                Ok(())
            }
            Clause::Combined => write!(f, "worst verdict over components"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Base vertices of the component the step is about; empty for global
    /// steps.
    pub component: Vec<String>,
    pub clause: Clause,
    pub verdict: Option<Verdict>,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.component.is_empty() {
            write!(f, "[{}] ", self.component.join(" "))?;
        }
        write!(f, "{}", self.clause)?;
        if let Some(v) = self.verdict {
            write!(f, " => {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepType {
    pub verdict: Verdict,
    pub trace: Vec<TraceStep>,
}

impl RepType {
    fn single(component: Vec<String>, clause: Clause, verdict: Verdict) -> Self {
        RepType {
            verdict,
            trace: vec![TraceStep {
                component,
                clause,
                verdict: Some(verdict),
            }],
        }
    }
}

/// True when the pair can be ordered `(i, j)` with nothing entering `i` and
/// nothing leaving `j` in the base quiver.
pub fn is_inessential(d: &NodalDatum, pair: &GluePair) -> Result<bool, ClassifyError> {
    if !d.glue_pairs.iter().any(|p| p.same_pair(pair)) {
        return Err(ClassifyError::UnknownPair(pair.clone()));
    }
    let q = &d.base;
    let (a, b) = match (q.vertex(&pair.first), q.vertex(&pair.second)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(ClassifyError::UnknownPair(pair.clone())),
    };
    let ordered = |i: VertexId, j: VertexId| q.in_degree(i) == 0 && q.out_degree(j) == 0;
    Ok(ordered(a, b) || ordered(b, a))
}

pub fn strip_inessential(d: &NodalDatum) -> NodalDatum {
    let mut out = d.clone();
    out.glue_pairs
        .retain(|p| !is_inessential(d, p).unwrap_or(false));
    out
}

fn shape_verdict(shape: Shape) -> Verdict {
    if shape.is_dynkin() {
        Verdict::Finite
    } else if shape.is_euclidean() {
        Verdict::Tame
    } else {
        Verdict::Wild
    }
}

/// Gabriel's theorem, component by component.
pub fn gabriel_type(q: &Quiver) -> Result<RepType, ClassifyError> {
    let report = q.underlying_shape();
    if !report.acyclic {
        return Err(ClassifyError::CyclicQuiver);
    }
    let parts = report
        .components
        .into_iter()
        .map(|c| RepType::single(c.vertices, Clause::Hereditary(c.shape), shape_verdict(c.shape)))
        .collect();
    Ok(combine(parts))
}

fn combine(parts: Vec<RepType>) -> RepType {
    let verdict = parts.iter().map(|p| p.verdict).max().unwrap_or(Verdict::Finite);
    let mut trace: Vec<TraceStep> = parts.into_iter().flat_map(|p| p.trace).collect();
    if trace.iter().filter(|s| s.verdict.is_some()).count() > 1 {
        trace.push(TraceStep {
            component: Vec::new(),
            clause: Clause::Combined,
            verdict: Some(verdict),
        });
    }
    RepType { verdict, trace }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleReport {
    pub gentle: bool,
    pub diagnostics: Vec<String>,
}

/// Checks the four gentle axioms: degree at most two each way, quadratic
/// monomial relations only, and the "exactly one of the two" rule on both
/// sides of every vertex.
pub fn is_gentle_presentation(p: &Presentation) -> GentleReport {
    let q = p.quiver();
    let mut diagnostics = Vec::new();
    let mut zero_pairs: Vec<(ArrowId, ArrowId)> = Vec::new();
    for r in p.relations() {
        match r {
            Relation::MonomialZero(path) if path.len() == 2 => {
                zero_pairs.push((path.arrows()[0], path.arrows()[1]));
            }
            other => diagnostics.push(format!("relation `{}` is not a zero relation of length 2", other.format(q))),
        }
    }
    let is_zero = |after: ArrowId, before: ArrowId| zero_pairs.contains(&(after, before));
    for v in q.vertex_ids() {
        let name = q.vertex_name(v);
        let outs = q.arrows_at(v, Direction::Out);
        let ins = q.arrows_at(v, Direction::In);
        if outs.len() > 2 {
            diagnostics.push(format!("{} arrows start at `{name}`", outs.len()));
        }
        if ins.len() > 2 {
            diagnostics.push(format!("{} arrows end at `{name}`", ins.len()));
        }
        if outs.len() == 2 {
            for &b in &ins {
                if is_zero(outs[0], b) == is_zero(outs[1], b) {
                    diagnostics.push(format!(
                        "arrow `{}` into `{name}` must be killed by exactly one of `{}`, `{}`",
                        q.arrow_name(b),
                        q.arrow_name(outs[0]),
                        q.arrow_name(outs[1])
                    ));
                }
            }
        }
        if ins.len() == 2 {
            for &a in &outs {
                if is_zero(a, ins[0]) == is_zero(a, ins[1]) {
                    diagnostics.push(format!(
                        "arrow `{}` out of `{name}` must kill exactly one of `{}`, `{}`",
                        q.arrow_name(a),
                        q.arrow_name(ins[0]),
                        q.arrow_name(ins[1])
                    ));
                }
            }
        }
    }
    GentleReport {
        gentle: diagnostics.is_empty(),
        diagnostics,
    }
}

fn require_type_a(d: &NodalDatum) -> Result<(), ClassifyError> {
    for c in d.base.underlying_shape().components {
        if !c.shape.is_type_a() {
            return Err(ClassifyError::NotTypeA {
                vertices: c.vertices,
                shape: c.shape,
            });
        }
    }
    Ok(())
}

/// After stripping, every vertex still touched by an operation has at most
/// one arrow in and one arrow out in the base quiver.
pub fn is_quasi_gentle(d: &NodalDatum) -> Result<bool, ClassifyError> {
    require_type_a(d)?;
    let stripped = strip_inessential(d);
    let q = &stripped.base;
    let touched = stripped
        .glue_pairs
        .iter()
        .flat_map(|p| [p.first.as_str(), p.second.as_str()])
        .chain(stripped.blow_vertices.iter().map(String::as_str));
    for v in touched {
        let id = q.vertex(v).map_err(ConstructError::from)?;
        if q.in_degree(id) > 1 || q.out_degree(id) > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertices and arrows of a line-shaped component, in walking order:
/// `arrows[k]` joins `vertices[k]` and `vertices[k + 1]`.
struct Line {
    vertices: Vec<VertexId>,
    arrows: Vec<ArrowId>,
}

fn component_of(q: &Quiver, v: VertexId) -> Vec<VertexId> {
    q.components()
        .into_iter()
        .find(|c| c.contains(&v))
        .expect("every vertex lies in a component")
}

fn walk_line(q: &Quiver, component: &[VertexId]) -> Option<Line> {
    let incident = |v: VertexId| -> Vec<ArrowId> {
        q.arrow_ids()
            .filter(|&a| q.source(a) == v || q.target(a) == v)
            .collect()
    };
    let start = *component.iter().find(|&&v| incident(v).len() <= 1)?;
    let mut vertices = vec![start];
    let mut arrows = Vec::new();
    let mut current = start;
    loop {
        let next = incident(current).into_iter().find(|a| !arrows.contains(a));
        let Some(a) = next else { break };
        let other = if q.source(a) == current { q.target(a) } else { q.source(a) };
        if vertices.contains(&other) {
            return None;
        }
        arrows.push(a);
        vertices.push(other);
        current = other;
    }
    (vertices.len() == component.len()).then_some(Line { vertices, arrows })
}

struct Match {
    params: ExceptionalParams,
    /// Vertices from `i` to `j` along the segment.
    segment: Vec<VertexId>,
}

fn match_shape(line: &Line, q: &Quiver, i: VertexId, j: VertexId) -> Option<Match> {
    let pi = line.vertices.iter().position(|&v| v == i)?;
    let pj = line.vertices.iter().position(|&v| v == j)?;
    let last = line.arrows.len();
    let (n, beta_side, gamma_side, beta, alpha_first, alpha_last, gamma, segment);
    if pi < pj {
        n = pj - pi;
        beta_side = pi;
        gamma_side = last - pj;
        if beta_side == 0 || gamma_side == 0 {
            return None;
        }
        beta = line.arrows[pi - 1];
        alpha_first = line.arrows[pi];
        alpha_last = line.arrows[pj - 1];
        gamma = line.arrows[pj];
        segment = line.vertices[pi..=pj].to_vec();
    } else {
        n = pi - pj;
        beta_side = last - pi;
        gamma_side = pj;
        if beta_side == 0 || gamma_side == 0 {
            return None;
        }
        beta = line.arrows[pi];
        alpha_first = line.arrows[pi - 1];
        alpha_last = line.arrows[pj];
        gamma = line.arrows[pj - 1];
        segment = line.vertices[pj..=pi].iter().rev().copied().collect();
    }
    let into = |a: ArrowId, v: VertexId| q.target(a) == v;
    let out_of = |a: ArrowId, v: VertexId| q.source(a) == v;
    let case = if into(beta, i) && into(alpha_first, i) && out_of(alpha_last, j) && into(gamma, j) {
        ExceptionalCase::One
    } else if out_of(beta, i) && out_of(alpha_first, i) && into(alpha_last, j) && out_of(gamma, j) {
        ExceptionalCase::Two
    } else {
        return None;
    };
    Some(Match {
        params: ExceptionalParams {
            n,
            m: beta_side - 1,
            l: gamma_side - 1,
            case,
            is_super: false,
        },
        segment,
    })
}

fn match_pair(base: &Quiver, pair: &GluePair) -> Result<Match, NotExceptional> {
    let (a, b) = match (base.vertex(&pair.first), base.vertex(&pair.second)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(NotExceptional::ShapeMismatch),
    };
    let component = component_of(base, a);
    if !component.contains(&b) {
        return Err(NotExceptional::PairSpansComponents);
    }
    let Some(line) = walk_line(base, &component) else {
        let sub = base.induced(&component);
        return Err(match sub.underlying_shape().components.first().map(|c| c.shape) {
            Some(Shape::ACycle(_)) => NotExceptional::CycleComponent,
            _ => NotExceptional::ShapeMismatch,
        });
    };
    match_shape(&line, base, a, b)
        .or_else(|| match_shape(&line, base, b, a))
        .ok_or(NotExceptional::ShapeMismatch)
}

/// Recognises a single essential exceptional gluing with no blow-ups.
pub fn detect_exceptional(d: &NodalDatum) -> Result<ExceptionalParams, NotExceptional> {
    let s = strip_inessential(d);
    if s.glue_pairs.len() != 1 || !s.blow_vertices.is_empty() {
        return Err(NotExceptional::OperationCount {
            glue_pairs: s.glue_pairs.len(),
            blow_vertices: s.blow_vertices.len(),
        });
    }
    match_pair(&s.base, &s.glue_pairs[0]).map(|m| m.params)
}

/// Recognises an exceptional gluing with `n = 3` together with an essential
/// gluing of the two inner vertices of its segment.
pub fn detect_super_exceptional(d: &NodalDatum) -> Result<ExceptionalParams, NotExceptional> {
    let s = strip_inessential(d);
    if s.glue_pairs.len() != 2 || !s.blow_vertices.is_empty() {
        return Err(NotExceptional::OperationCount {
            glue_pairs: s.glue_pairs.len(),
            blow_vertices: s.blow_vertices.len(),
        });
    }
    for (k, pair) in s.glue_pairs.iter().enumerate() {
        let other = &s.glue_pairs[1 - k];
        let Ok(found) = match_pair(&s.base, pair) else { continue };
        if found.params.n != 3 {
            continue;
        }
        let inner = GluePair::new(
            s.base.vertex_name(found.segment[1]),
            s.base.vertex_name(found.segment[2]),
        );
        // `other` survived stripping, so it is essential
        if other.same_pair(&inner) {
            return Ok(ExceptionalParams {
                is_super: true,
                ..found.params
            });
        }
    }
    Err(NotExceptional::ShapeMismatch)
}

/// Verdict for exceptional parameters, with the rule that decided it.
pub fn exceptional_type(p: &ExceptionalParams) -> RepType {
    let (verdict, rule) = exceptional_rule(p);
    RepType::single(Vec::new(), Clause::Exceptional { params: *p, rule }, verdict)
}

fn exceptional_rule(p: &ExceptionalParams) -> (Verdict, &'static str) {
    let (n, m, l) = (p.n, p.m, p.l);
    if p.is_super {
        return match m + l {
            0 => (Verdict::Finite, "finite since m = l = 0"),
            1 => (Verdict::Tame, "tame since m + l = 1"),
            _ => (Verdict::Wild, "wild since m + l > 1"),
        };
    }
    match (m, l) {
        (0, 0) => (Verdict::Finite, "finite since m = l = 0"),
        (1, 0) if n <= 3 => (Verdict::Finite, "finite since l = 0, m = 1, n <= 3"),
        (2..=3, 0) if n == 1 => (Verdict::Finite, "finite since l = 0, 2 <= m <= 3, n = 1"),
        (0, 1) if n <= 2 => (Verdict::Finite, "finite since m = 0, l = 1, n <= 2"),
        (1, 0) if n == 4 => (Verdict::Tame, "tame since l = 0, m = 1, n = 4"),
        (2, 0) if n == 2 => (Verdict::Tame, "tame since l = 0, m = 2, n = 2"),
        (4, 0) if n == 1 => (Verdict::Tame, "tame since l = 0, m = 4, n = 1"),
        (0, 1) if n == 3 => (Verdict::Tame, "tame since m = 0, l = 1, n = 3"),
        _ => (Verdict::Wild, "wild: outside the finite and tame lists"),
    }
}

fn classify_component(c: &NodalDatum) -> Result<RepType, ClassifyError> {
    let names: Vec<String> = c.base.vertex_names().to_vec();
    let (presentation, _) = build_presentation(c)?;
    if presentation.relations().is_empty() {
        let mut t = gabriel_type(presentation.quiver())?;
        for step in &mut t.trace {
            step.component = names.clone();
        }
        return Ok(t);
    }
    if is_quasi_gentle(c)? {
        return Ok(RepType::single(names, Clause::QuasiGentle, Verdict::NonWildUnresolved));
    }
    let mut reasons = Vec::new();
    for detected in [detect_super_exceptional(c), detect_exceptional(c)] {
        match detected {
            Ok(params) => {
                let (verdict, rule) = exceptional_rule(&params);
                return Ok(RepType::single(names, Clause::Exceptional { params, rule }, verdict));
            }
            Err(NotExceptional::CycleComponent) => {
                reasons.push(NotExceptional::CycleComponent.to_string())
            }
            Err(_) => {}
        }
    }
    reasons.dedup();
    Ok(RepType::single(names, Clause::NotRecognised(reasons), Verdict::Wild))
}

/// Full decision procedure for a datum over a type-A base.
pub fn classify(d: &NodalDatum) -> Result<RepType, ClassifyError> {
    let report = validate(d);
    if !report.is_valid() {
        return Err(ClassifyError::InvalidDatum(report));
    }
    require_type_a(d)?;
    let mut stripped_steps = Vec::new();
    for p in &d.glue_pairs {
        if is_inessential(d, p)? {
            stripped_steps.push(TraceStep {
                component: Vec::new(),
                clause: Clause::StrippedInessential(p.clone()),
                verdict: None,
            });
        }
    }
    let stripped = strip_inessential(d);
    let parts = stripped
        .glued_components()
        .iter()
        .map(classify_component)
        .collect::<Result<Vec<_>, _>>()?;
    let mut result = combine(parts);
    stripped_steps.append(&mut result.trace);
    result.trace = stripped_steps;
    Ok(result)
}

/// The quadratic form `x² + 2y₁² + y₂² + 2y₁y₂ − 3xy₁ − 2xy₂`.
pub fn tits_witness(x: i64, y1: i64, y2: i64) -> i64 {
    x * x + 2 * y1 * y1 + y2 * y2 + 2 * y1 * y2 - 3 * x * y1 - 2 * x * y2
}
