use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Presentation, Quiver, QuiverError, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed presentation JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("inconsistent presentation: {0}")]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct JsonArrow {
    name: String,
    source: String,
    target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum JsonRelation {
    Zero { path: Vec<String> },
    Commutation { lhs: Vec<String>, rhs: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPresentation {
    vertices: Vec<String>,
    arrows: Vec<JsonArrow>,
    relations: Vec<JsonRelation>,
}

fn arrow_names(q: &Quiver, p: &crate::quiver::Path) -> Vec<String> {
    p.arrows().iter().map(|&a| q.arrow_name(a).to_string()).collect()
}

fn to_json_model(p: &Presentation) -> JsonPresentation {
    let q = p.quiver();
    JsonPresentation {
        vertices: q.vertex_names().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| JsonArrow {
                name: a.name.clone(),
                source: q.vertex_name(a.source).to_string(),
                target: q.vertex_name(a.target).to_string(),
            })
            .collect(),
        relations: p
            .relations()
            .iter()
            .map(|r| match r {
                Relation::MonomialZero(path) => JsonRelation::Zero {
                    path: arrow_names(q, path),
                },
                Relation::Commutation(l, r) => JsonRelation::Commutation {
                    lhs: arrow_names(q, l),
                    rhs: arrow_names(q, r),
                },
            })
            .collect(),
    }
}

/// Reads the output of [`emit_presentation`] with [`Format::Json`].
pub fn presentation_from_json(text: &str) -> Result<Presentation, JsonError> {
    let model: JsonPresentation = serde_json::from_str(text)?;
    let mut q = Quiver::new();
    for v in &model.vertices {
        q.add_vertex(v.clone())?;
    }
    for a in &model.arrows {
        q.add_arrow(a.name.clone(), &a.source, &a.target)?;
    }
    let path = |names: &[String]| {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        q.path_named(&refs)
    };
    let relations = model
        .relations
        .iter()
        .map(|r| match r {
            JsonRelation::Zero { path: p } => Ok(Relation::MonomialZero(path(p)?)),
            JsonRelation::Commutation { lhs, rhs } => Ok(Relation::Commutation(path(lhs)?, path(rhs)?)),
        })
        .collect::<Result<Vec<_>, QuiverError>>()?;
    Ok(Presentation::new(q, relations)?)
}

pub fn emit_presentation(p: &Presentation, format: Format) -> String {
    match format {
        Format::Text => emit_text(p),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_json_model(p)).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Dot => emit_dot(p),
    }
}

fn emit_text(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", q.vertex_names().join(", "));
    let _ = writeln!(out, "arrows:");
    for a in q.arrows() {
        let _ = writeln!(out, "  {} : {} -> {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target));
    }
    let _ = writeln!(out, "relations:");
    for r in p.relation_strings() {
        let _ = writeln!(out, "  {r}");
    }
    out
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Glued vertices are the only ids with a space; blown copies end in a prime.
fn blown_base(v: &str) -> Option<&str> {
    v.strip_suffix("''").or_else(|| v.strip_suffix('\''))
}

fn emit_dot(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::from("digraph presentation {\n");
    for r in p.relation_strings() {
        let _ = writeln!(out, "  // relation: {r}");
    }
    let mut clusters: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for v in q.vertex_names() {
        if let Some(base) = blown_base(v) {
            clusters.entry(base).or_default().push(v);
        } else if v.contains(' ') {
            let _ = writeln!(out, "  {} [shape=doublecircle];", quoted(v));
        } else {
            let _ = writeln!(out, "  {};", quoted(v));
        }
    }
    for (base, copies) in &clusters {
        let _ = writeln!(out, "  subgraph {} {{", quoted(&format!("cluster_{base}")));
        let _ = writeln!(out, "    label={};", quoted(base));
        for c in copies {
            let _ = writeln!(out, "    {} [shape=box];", quoted(c));
        }
        let _ = writeln!(out, "  }}");
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quoted(q.vertex_name(a.source)),
            quoted(q.vertex_name(a.target)),
            quoted(&a.name)
        );
    }
    out.push_str("}\n");
    out
}
