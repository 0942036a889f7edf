//! Tree-structured reports with sorted keys, rendered as indented text or
//! as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportNode {
    Bool(bool),
    Int(i64),
    Text(String),
    List(Vec<ReportNode>),
    Map(BTreeMap<String, ReportNode>),
}

impl ReportNode {
    pub fn map() -> Self {
        ReportNode::Map(BTreeMap::new())
    }

    /// Adds a key to a map node. Panics on other nodes.
    pub fn with(mut self, key: &str, value: impl Into<ReportNode>) -> Self {
        self.insert(key, value);
        self
    }

    pub fn insert(&mut self, key: &str, value: impl Into<ReportNode>) {
        match self {
            ReportNode::Map(m) => {
                m.insert(key.to_string(), value.into());
            }
            _ => panic!("insert on a non-map report node"),
        }
    }

    pub fn get(&self, key: &str) -> Option<&ReportNode> {
        match self {
            ReportNode::Map(m) => m.get(key),
            _ => None,
        }
    }

    pub fn list<I, T>(items: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<ReportNode>,
    {
        ReportNode::List(items.into_iter().map(Into::into).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReportNode::Bool(b) => Value::Bool(*b),
            ReportNode::Int(i) => Value::from(*i),
            ReportNode::Text(s) => Value::String(s.clone()),
            ReportNode::List(l) => Value::Array(l.iter().map(ReportNode::to_json).collect()),
            ReportNode::Map(m) => {
                Value::Object(m.iter().map(|(k, v)| (k.clone(), v.to_json())).collect())
            }
        }
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self {
            ReportNode::Map(_) | ReportNode::List(_) => self.write_block(&mut out, 0),
            leaf => {
                let _ = writeln!(out, "{}", leaf.scalar().unwrap());
            }
        }
        out
    }

    fn scalar(&self) -> Option<String> {
        match self {
            ReportNode::Bool(b) => Some(b.to_string()),
            ReportNode::Int(i) => Some(i.to_string()),
            ReportNode::Text(s) => Some(s.clone()),
            ReportNode::List(l) if l.is_empty() => Some("[]".into()),
            ReportNode::Map(m) if m.is_empty() => Some("{}".into()),
            _ => None,
        }
    }

    fn write_block(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            ReportNode::Map(m) => {
                for (k, v) in m {
                    match v.scalar() {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}{k}: {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}{k}:");
                            v.write_block(out, indent + 1);
                        }
                    }
                }
            }
            ReportNode::List(l) => {
                for v in l {
                    match v.scalar() {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            v.write_block(out, indent + 1);
                        }
                    }
                }
            }
            leaf => {
                let _ = writeln!(out, "{pad}{}", leaf.scalar().unwrap());
            }
        }
    }
}

impl From<bool> for ReportNode {
    fn from(b: bool) -> Self {
        ReportNode::Bool(b)
    }
}

impl From<i64> for ReportNode {
    fn from(i: i64) -> Self {
        ReportNode::Int(i)
    }
}

impl From<u32> for ReportNode {
    fn from(i: u32) -> Self {
        ReportNode::Int(i64::from(i))
    }
}

impl From<usize> for ReportNode {
    fn from(i: usize) -> Self {
        ReportNode::Int(i as i64)
    }
}

impl From<String> for ReportNode {
    fn from(s: String) -> Self {
        ReportNode::Text(s)
    }
}

impl From<&str> for ReportNode {
    fn from(s: &str) -> Self {
        ReportNode::Text(s.to_string())
    }
}

impl From<Vec<ReportNode>> for ReportNode {
    fn from(l: Vec<ReportNode>) -> Self {
        ReportNode::List(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportNode {
        ReportNode::map()
            .with("zeta", 3u32)
            .with("alpha", true)
            .with("items", ReportNode::list(["x", "y"]))
            .with("nested", ReportNode::map().with("k", "v"))
            .with("empty", ReportNode::list(Vec::<ReportNode>::new()))
    }

    #[test]
    fn text_sorted() {
        let t = sample().render_text();
        assert_eq!(
            t,
            "alpha: true\nempty: []\nitems:\n  - x\n  - y\nnested:\n  k: v\nzeta: 3\n"
        );
    }

    #[test]
    fn json_sorted() {
        let j = sample().render_json();
        let a = j.find("\"alpha\"").unwrap();
        let z = j.find("\"zeta\"").unwrap();
        assert!(a < z);
        let back: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(back["nested"]["k"], "v");
    }
}
