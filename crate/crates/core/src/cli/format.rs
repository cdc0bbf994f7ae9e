//! Poset input files.
//!
//! Text form:
//!
//! ```text
//! poset butterfly          # optional header
//! elements: B1 B2 A1 A2
//! covers: B1<A1 B1<A2 B2<A1 B2<A2
//! ```
//!
//! JSON form: `{"name": "butterfly", "elements": [...], "covers": [["B1", "A1"], ...]}`.
//! A document whose first non-blank character is `{` is read as JSON.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Poset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetDocument {
    pub fn from_poset(poset: &Poset, name: Option<String>) -> Self {
        PosetDocument {
            name,
            elements: poset.elements().to_vec(),
            covers: poset
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (poset.name(a).to_string(), poset.name(b).to_string()))
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset, PosetError> {
        Poset::from_cover_relations(&self.elements, &self.covers)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("poset {name}\n"));
        }
        out.push_str("elements:");
        for e in &self.elements {
            out.push(' ');
            out.push_str(e);
        }
        out.push_str("\ncovers:");
        for (a, b) in &self.covers {
            out.push_str(&format!(" {a}<{b}"));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

/// Parses either form and checks that the covers generate a partial order.
pub fn parse_poset_file(text: &str) -> Result<PosetDocument, FormatError> {
    let doc = if text.trim_start().starts_with('{') {
        serde_json::from_str(text).map_err(|e| FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    } else {
        parse_text(text)?
    };
    doc.to_poset()?;
    Ok(doc)
}

fn parse_text(text: &str) -> Result<PosetDocument, FormatError> {
    let mut name = None;
    let mut elements: Option<Vec<String>> = None;
    let mut covers: Option<Vec<(String, String)>> = None;
    let mut first = true;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| FormatError::Syntax {
            line: lineno + 1,
            column,
            message,
        };
        let indent = line.len() - line.trim_start().len();
        let content = line.trim();

        if let Some(rest) = content.strip_prefix("poset ").or(content.strip_prefix("poset\t")) {
            if !first {
                return Err(err(indent + 1, "`poset` header must come first".into()));
            }
            first = false;
            name = Some(rest.trim().to_string());
            continue;
        }
        first = false;

        let Some((key, value)) = content.split_once(':') else {
            return Err(err(indent + 1, format!("expected `key: value`, found `{content}`")));
        };
        let value_col = indent + key.len() + 2;
        let tokens = tokens(value, value_col);
        match key.trim() {
            "elements" => {
                if elements.is_some() {
                    return Err(err(indent + 1, "repeated `elements` line".into()));
                }
                elements = Some(tokens.into_iter().map(|(_, t)| t.to_string()).collect());
            }
            "covers" => {
                if covers.is_some() {
                    return Err(err(indent + 1, "repeated `covers` line".into()));
                }
                let mut pairs = Vec::new();
                for (col, tok) in tokens {
                    match tok.split_once('<') {
                        Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('<') => {
                            pairs.push((a.to_string(), b.to_string()))
                        }
                        _ => return Err(err(col, format!("expected `a<b`, found `{tok}`"))),
                    }
                }
                covers = Some(pairs);
            }
            other => return Err(err(indent + 1, format!("unknown key `{other}`"))),
        }
    }

    let elements = elements.ok_or(FormatError::Syntax {
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `elements` line".into(),
    })?;
    Ok(PosetDocument {
        name,
        elements,
        covers: covers.unwrap_or_default(),
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(value: &str, start_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in value.split_whitespace() {
        let at = value[offset..].find(tok).expect("token comes from value") + offset;
        out.push((start_col + at, tok));
        offset = at + tok.len();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_chain() {
        let doc = parse_poset_file("elements: a b c\ncovers: a<b b<c").unwrap();
        assert_eq!(doc.elements, vec!["a", "b", "c"]);
        assert_eq!(
            doc.covers,
            vec![("a".into(), "b".into()), ("b".into(), "c".into())]
        );
        assert!(doc.to_poset().unwrap().leq(0, 2));
    }

    #[test]
    fn json_antichain() {
        let doc = parse_poset_file(r#"{"elements":["x","y"],"covers":[]}"#).unwrap();
        assert_eq!(doc.elements, vec!["x", "y"]);
        assert!(doc.covers.is_empty());
    }

    #[test]
    fn duplicate_element() {
        assert_eq!(
            parse_poset_file("elements: a a\ncovers:"),
            Err(FormatError::Poset(PosetError::DuplicateElement("a".into())))
        );
    }

    #[test]
    fn header_and_comments() {
        let doc = parse_poset_file("# a comment\nposet wedge\nelements: a b c # trailing\ncovers: a<c b<c\n")
            .unwrap();
        assert_eq!(doc.name.as_deref(), Some("wedge"));
        assert_eq!(doc.covers.len(), 2);
    }

    #[test]
    fn syntax_positions() {
        assert_eq!(
            parse_poset_file("elements: a b\ncovers: a<b b-a"),
            Err(FormatError::Syntax {
                line: 2,
                column: 13,
                message: "expected `a<b`, found `b-a`".into()
            })
        );
        assert!(matches!(
            parse_poset_file("covers: a<b"),
            Err(FormatError::Syntax { message, .. }) if message.contains("missing")
        ));
        assert!(matches!(
            parse_poset_file("elements a b"),
            Err(FormatError::Syntax { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse_poset_file("{\"elements\": [1]}"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn unknown_cover_endpoint() {
        assert_eq!(
            parse_poset_file("elements: a\ncovers: a<q"),
            Err(FormatError::Poset(PosetError::UnknownElement("q".into())))
        );
    }

    #[test]
    fn emit_text() {
        let doc = PosetDocument {
            name: Some("v".into()),
            elements: vec!["m".into(), "u".into()],
            covers: vec![("m".into(), "u".into())],
        };
        assert_eq!(doc.to_text(), "poset v\nelements: m u\ncovers: m<u\n");
        assert_eq!(doc.to_json(), r#"{"name":"v","elements":["m","u"],"covers":[["m","u"]]}"#);
    }
}
