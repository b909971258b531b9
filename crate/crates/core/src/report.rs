//! Ordered key-value report documents, rendered as indented text or JSON.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Str(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Str(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Str(s)
    }
}

impl<T: Into<Value>> From<Vec<T>> for Value {
    fn from(v: Vec<T>) -> Self {
        Value::List(v.into_iter().map(Into::into).collect())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or_else(|| Value::Str("none".into()), Into::into)
    }
}

/// Builder for map values; keys keep insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Doc(Vec<(String, Value)>);

impl Doc {
    pub fn new() -> Self {
        Doc(Vec::new())
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, key: &str, v: impl Into<Value>) {
        self.0.push((key.to_string(), v.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl From<Doc> for Value {
    fn from(d: Doc) -> Self {
        Value::Map(d.0)
    }
}

/// Anything that can be emitted as a report document.
pub trait ToReport {
    fn to_report(&self) -> Doc;
}

impl Value {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::Value as J;
        match self {
            Value::Bool(b) => J::Bool(*b),
            Value::Int(n) => J::from(*n),
            Value::Str(s) => J::String(s.clone()),
            Value::List(v) => J::Array(v.iter().map(Value::to_json).collect()),
            Value::Map(m) => J::Object(m.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()),
        }
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        match self {
            Value::Map(m) => write_map(&mut out, m, 0),
            Value::List(v) => write_list(&mut out, v, 0),
            scalar => {
                let _ = writeln!(out, "{}", scalar_text(scalar));
            }
        }
        out
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Bool(true) => "pass".into(),
        Value::Bool(false) => "FAIL".into(),
        Value::Int(n) => n.to_string(),
        Value::Str(s) => s.clone(),
        Value::List(v) if v.is_empty() => "[]".into(),
        Value::Map(m) if m.is_empty() => "{}".into(),
        _ => unreachable!("containers are rendered structurally"),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::List(l) => l.is_empty(),
        Value::Map(m) => m.is_empty(),
        _ => true,
    }
}

fn write_map(out: &mut String, m: &[(String, Value)], depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        if is_leaf(v) {
            let _ = writeln!(out, "{pad}{k}: {}", scalar_text(v));
        } else {
            let _ = writeln!(out, "{pad}{k}:");
            match v {
                Value::Map(inner) => write_map(out, inner, depth + 1),
                Value::List(inner) => write_list(out, inner, depth + 1),
                _ => unreachable!(),
            }
        }
    }
}

fn write_list(out: &mut String, v: &[Value], depth: usize) {
    let pad = "  ".repeat(depth);
    for item in v {
        match item {
            Value::Map(m) if !m.is_empty() => {
                let _ = writeln!(out, "{pad}-");
                write_map(out, m, depth + 1);
            }
            Value::List(l) if !l.is_empty() => {
                let _ = writeln!(out, "{pad}-");
                write_list(out, l, depth + 1);
            }
            leaf => {
                let _ = writeln!(out, "{pad}- {}", scalar_text(leaf));
            }
        }
    }
}
