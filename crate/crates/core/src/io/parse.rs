//! Line-oriented datum files.
//!
//! ```text
//! # comment
//! vertices 1 2 3
//! arrow a : 1 -> 2
//! glue 1 3
//! blow 2
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::construct::{validate, GluePair, NodalDatum, Violation};
use crate::quiver::{Quiver, QuiverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("error at {at}: {message}")]
    Semantic { at: Location, message: String },
}

/// A parsed datum with the position of every declaration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumFile {
    pub datum: NodalDatum,
    pub vertex_locations: BTreeMap<String, Location>,
    pub arrow_locations: BTreeMap<String, Location>,
    pub glue_locations: Vec<Location>,
    pub blow_locations: Vec<Location>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Id(String),
    Colon,
    Arrow,
}

fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '(' || c == ')'
}

fn tokenize(line: &str, line_no: usize) -> Result<Vec<(Token, Location)>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let at = Location {
            line: line_no,
            column: k + 1,
        };
        let c = chars[k];
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            k += 1;
        } else if c == ':' {
            tokens.push((Token::Colon, at));
            k += 1;
        } else if c == '-' && chars.get(k + 1) == Some(&'>') {
            tokens.push((Token::Arrow, at));
            k += 2;
        } else if is_id_char(c) {
            let start = k;
            while k < chars.len() && is_id_char(chars[k]) {
                k += 1;
            }
            tokens.push((Token::Id(chars[start..k].iter().collect()), at));
        } else {
            return Err(ParseError::Syntax {
                at,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(tokens)
}

struct Statements {
    vertices: Vec<(String, Location)>,
    arrows: Vec<(String, String, String, Location, Location, Location)>,
    glues: Vec<(String, String, Location, Location)>,
    blows: Vec<(String, Location)>,
}

fn expect_id(tokens: &[(Token, Location)], k: usize, what: &str, end: Location) -> Result<(String, Location), ParseError> {
    match tokens.get(k) {
        Some((Token::Id(s), at)) => Ok((s.clone(), *at)),
        Some((_, at)) => Err(ParseError::Syntax {
            at: *at,
            message: format!("expected {what}"),
        }),
        None => Err(ParseError::Syntax {
            at: end,
            message: format!("expected {what}"),
        }),
    }
}

fn expect(tokens: &[(Token, Location)], k: usize, token: Token, end: Location) -> Result<(), ParseError> {
    let shown = match token {
        Token::Colon => "`:`",
        Token::Arrow => "`->`",
        Token::Id(_) => "an id",
    };
    match tokens.get(k) {
        Some((t, _)) if *t == token => Ok(()),
        Some((_, at)) => Err(ParseError::Syntax {
            at: *at,
            message: format!("expected {shown}"),
        }),
        None => Err(ParseError::Syntax {
            at: end,
            message: format!("expected {shown}"),
        }),
    }
}

fn no_trailing(tokens: &[(Token, Location)], k: usize) -> Result<(), ParseError> {
    match tokens.get(k) {
        Some((_, at)) => Err(ParseError::Syntax {
            at: *at,
            message: "unexpected trailing input".into(),
        }),
        None => Ok(()),
    }
}

fn read_statements(text: &str) -> Result<Statements, ParseError> {
    let mut st = Statements {
        vertices: Vec::new(),
        arrows: Vec::new(),
        glues: Vec::new(),
        blows: Vec::new(),
    };
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let tokens = tokenize(line, line_no)?;
        let end = Location {
            line: line_no,
            column: line.chars().count() + 1,
        };
        let Some((Token::Id(keyword), kw_at)) = tokens.first().cloned() else {
            if let Some((_, at)) = tokens.first() {
                return Err(ParseError::Syntax {
                    at: *at,
                    message: "expected a keyword".into(),
                });
            }
            continue;
        };
        match keyword.as_str() {
            "vertices" => {
                if tokens.len() == 1 {
                    return Err(ParseError::Syntax {
                        at: end,
                        message: "expected at least one vertex id".into(),
                    });
                }
                for k in 1..tokens.len() {
                    st.vertices.push(expect_id(&tokens, k, "a vertex id", end)?);
                }
            }
            "arrow" => {
                let (name, name_at) = expect_id(&tokens, 1, "an arrow id", end)?;
                expect(&tokens, 2, Token::Colon, end)?;
                let (s, s_at) = expect_id(&tokens, 3, "a source vertex", end)?;
                expect(&tokens, 4, Token::Arrow, end)?;
                let (t, t_at) = expect_id(&tokens, 5, "a target vertex", end)?;
                no_trailing(&tokens, 6)?;
                st.arrows.push((name, s, t, name_at, s_at, t_at));
            }
            "glue" => {
                let (a, a_at) = expect_id(&tokens, 1, "a vertex id", end)?;
                let (b, _) = expect_id(&tokens, 2, "a second vertex id", end)?;
                no_trailing(&tokens, 3)?;
                st.glues.push((a, b, kw_at, a_at));
            }
            "blow" => {
                let (v, v_at) = expect_id(&tokens, 1, "a vertex id", end)?;
                no_trailing(&tokens, 2)?;
                st.blows.push((v, v_at));
            }
            other => {
                return Err(ParseError::Syntax {
                    at: kw_at,
                    message: format!("unknown keyword `{other}`"),
                })
            }
        }
    }
    Ok(st)
}

/// Parses and resolves names; structural validity of the datum is not
/// checked (see [`parse_datum`]).
pub fn parse_datum_file(text: &str) -> Result<DatumFile, ParseError> {
    let st = read_statements(text)?;
    let mut quiver = Quiver::new();
    let mut vertex_locations = BTreeMap::new();
    for (v, at) in &st.vertices {
        quiver.add_vertex(v.clone()).map_err(|e| ParseError::Semantic {
            at: *at,
            message: e.to_string(),
        })?;
        vertex_locations.insert(v.clone(), *at);
    }
    let mut arrow_locations = BTreeMap::new();
    for (name, s, t, name_at, s_at, t_at) in &st.arrows {
        quiver.add_arrow(name.clone(), s, t).map_err(|e| {
            let at = match &e {
                QuiverError::UnknownVertex(v) if v == s => *s_at,
                QuiverError::UnknownVertex(_) => *t_at,
                _ => *name_at,
            };
            ParseError::Semantic {
                at,
                message: e.to_string(),
            }
        })?;
        arrow_locations.insert(name.clone(), *name_at);
    }
    let known = |v: &str, at: Location| -> Result<(), ParseError> {
        if vertex_locations.contains_key(v) {
            Ok(())
        } else {
            Err(ParseError::Semantic {
                at,
                message: format!("unknown vertex `{v}`"),
            })
        }
    };
    let mut datum = NodalDatum::new(quiver);
    let mut glue_locations = Vec::new();
    for (a, b, _, at) in &st.glues {
        known(a, *at)?;
        known(b, *at)?;
        datum.glue_pairs.push(GluePair::new(a.clone(), b.clone()));
        glue_locations.push(*at);
    }
    let mut blow_locations = Vec::new();
    for (v, at) in &st.blows {
        known(v, *at)?;
        datum.blow_vertices.push(v.clone());
        blow_locations.push(*at);
    }
    Ok(DatumFile {
        datum,
        vertex_locations,
        arrow_locations,
        glue_locations,
        blow_locations,
    })
}

impl DatumFile {
    /// Where a validation problem should be reported.
    pub fn locate(&self, violation: &Violation) -> Location {
        let start = Location { line: 1, column: 1 };
        let op_at = |v: &str| {
            let glue = self
                .datum
                .glue_pairs
                .iter()
                .zip(&self.glue_locations)
                .filter(|(p, _)| p.contains(v))
                .map(|(_, at)| *at);
            let blow = self
                .datum
                .blow_vertices
                .iter()
                .zip(&self.blow_locations)
                .filter(|(b, _)| b.as_str() == v)
                .map(|(_, at)| *at);
            // the second use is the offending one
            let mut all: Vec<Location> = glue.chain(blow).collect();
            all.sort();
            all.get(1).or(all.first()).copied()
        };
        match violation {
            Violation::BaseCyclic => start,
            Violation::UnknownVertex(v)
            | Violation::SelfGlue(v)
            | Violation::VertexReused(v)
            | Violation::LoopAtBlowVertex(v) => op_at(v).unwrap_or(start),
            Violation::ReservedCharacter(id) => self
                .vertex_locations
                .get(id)
                .or(self.arrow_locations.get(id))
                .copied()
                .unwrap_or(start),
        }
    }
}

/// Parses a datum and rejects it unless it is valid.
pub fn parse_datum(text: &str) -> Result<NodalDatum, ParseError> {
    let file = parse_datum_file(text)?;
    let report = validate(&file.datum);
    if let Some(v) = report.violations.first() {
        return Err(ParseError::Semantic {
            at: file.locate(v),
            message: v.to_string(),
        });
    }
    Ok(file.datum)
}

/// Canonical text: one `vertices` line, then arrows, glue pairs and blow
/// vertices in datum order.
pub fn serialize_datum(d: &NodalDatum) -> String {
    let q = &d.base;
    let mut out = String::new();
    if q.vertex_count() > 0 {
        out.push_str("vertices ");
        out.push_str(&q.vertex_names().join(" "));
        out.push('\n');
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    for p in &d.glue_pairs {
        out.push_str(&format!("glue {} {}\n", p.first, p.second));
    }
    for v in &d.blow_vertices {
        out.push_str(&format!("blow {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_glued_a2() {
        let d = parse_datum("vertices 1 2\narrow a : 1 -> 2\nglue 1 2").unwrap();
        assert_eq!(d.base.vertex_count(), 2);
        assert_eq!(d.glue_pairs, vec![GluePair::new("1", "2")]);
    }

    #[test]
    fn whitespace_and_comments() {
        let d = parse_datum("# header\nvertices  x y # trailing\narrow a:x->y\n\n  blow y\n").unwrap();
        assert_eq!(d.base.arrow_count(), 1);
        assert_eq!(d.blow_vertices, vec!["y".to_string()]);
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_datum("vertices 1\nblow v").unwrap_err();
        assert_eq!(
            err,
            ParseError::Semantic {
                at: Location { line: 2, column: 6 },
                message: "unknown vertex `v`".into()
            }
        );
        let err = parse_datum("vertices 1 2\narrow a 1 -> 2").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { at: Location { line: 2, column: 9 }, .. }));
        let err = parse_datum("vertices 1 1").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { .. }));
        let err = parse_datum("vertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nglue 1 2\nblow 2").unwrap_err();
        assert!(matches!(err, ParseError::Semantic { at: Location { line: 5, .. }, .. }));
        assert!(matches!(parse_datum("vertices a$"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn serialize_is_canonical() {
        let text = "arrow a : 1 -> 2\nvertices 1\nvertices 2\nglue 1 2\n";
        let d = parse_datum(text).unwrap();
        let once = serialize_datum(&d);
        assert_eq!(once, "vertices 1 2\narrow a : 1 -> 2\nglue 1 2\n");
        assert_eq!(serialize_datum(&parse_datum(&once).unwrap()), once);
    }
}
