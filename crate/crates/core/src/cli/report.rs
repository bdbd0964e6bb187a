//! Reports: a JSON document with sorted keys plus a plain-text rendering.

use serde::Serialize;
use serde_json::{Map, Value};

/// Whether the computation found what it was checking for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailure,
}

#[derive(Clone, Debug, Default)]
pub struct TextTable {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        TextTable { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        self.rows.push(cells);
        self
    }

    fn render(&self, out: &mut String) {
        let ncols = self.rows.iter().map(Vec::len).chain([self.header.len()]).max().unwrap_or(0);
        let mut widths = vec![0; ncols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        if !self.title.is_empty() {
            out.push_str(&self.title);
            out.push('\n');
        }
        let line = |cells: &[String], out: &mut String| {
            let mut s = String::new();
            for (k, c) in cells.iter().enumerate() {
                if k > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                if k + 1 < cells.len() {
                    s.extend(std::iter::repeat(' ').take(widths[k] - c.chars().count()));
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        if !self.header.is_empty() {
            line(&self.header, out);
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            line(&rule, out);
        }
        for r in &self.rows {
            line(r, out);
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Report {
    json: Map<String, Value>,
    tables: Vec<TextTable>,
    pub status: Status,
}

impl Default for Report {
    fn default() -> Self {
        Report { json: Map::new(), tables: Vec::new(), status: Status::Ok }
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Report::default();
        r.set("command", command);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.json.insert(key.to_string(), v);
        self
    }

    pub fn table(&mut self, t: TextTable) -> &mut Self {
        self.tables.push(t);
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.status = Status::PropertyFailure;
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::PropertyFailure => 1,
        }
    }

    pub fn value(&self) -> Value {
        Value::Object(self.json.clone())
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.value()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, t) in self.tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            t.render(&mut out);
        }
        out
    }
}
