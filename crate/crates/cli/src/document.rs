//! Report documents and their three renderings.
//!
//! Integers are emitted as decimal strings in JSON. Every format carries the
//! same fields and rows.

use std::fmt::Write as _;

use serde_json::{Map, Value as Json};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i128),
    Text(String),
    Bool(bool),
    Empty,
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Empty => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(n) => Json::String(n.to_string()),
            Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::Empty => Json::Null,
        }
    }
}

macro_rules! int_value {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(n: $t) -> Self {
                Value::Int(n as i128)
            }
        }
    )*};
}
int_value!(i64, u64, usize, u32, u8);

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Empty, Into::into)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// Sections in output order.
const SECTIONS: [&str; 3] = ["input", "result", "provenance"];

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub command: String,
    fields: Vec<(&'static str, String, Value)>,
    pub table: Option<Table>,
}

impl Document {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), ..Self::default() }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push(("input", key.to_string(), value.into()));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push(("result", key.to_string(), value.into()));
        self
    }

    pub fn provenance(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push(("provenance", key.to_string(), value.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Json => self.json(),
            Format::Csv => self.csv(),
        }
    }

    fn section(&self, name: &str) -> impl Iterator<Item = &(&'static str, String, Value)> {
        let name = name.to_string();
        self.fields.iter().filter(move |f| f.0 == name)
    }

    fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        let width = self.fields.iter().map(|f| f.1.len()).max().unwrap_or(0);
        for name in SECTIONS {
            let mut fields = self.section(name).peekable();
            if fields.peek().is_none() {
                continue;
            }
            let _ = writeln!(out, "{name}");
            for (_, key, value) in fields {
                let _ = writeln!(out, "  {key:width$}  {}", value.render());
            }
        }
        if let Some(table) = &self.table {
            let cells: Vec<Vec<String>> = table.rows.iter().map(|r| r.iter().map(Value::render).collect()).collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(j, c)| cells.iter().map(|r| r[j].len()).chain([c.len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(table.columns.clone()));
            for row in &cells {
                let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
            }
        }
        out
    }

    fn json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Json::String(self.command.clone()));
        for name in SECTIONS {
            let map: Map<String, Json> = self.section(name).map(|(_, k, v)| (k.clone(), v.json())).collect();
            if !map.is_empty() {
                root.insert(name.into(), Json::Object(map));
            }
        }
        if let Some(table) = &self.table {
            let rows = table
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Json> =
                        table.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect();
                    Json::Object(obj)
                })
                .collect();
            root.insert("rows".into(), Json::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(root)).expect("serializable");
        s.push('\n');
        s
    }

    /// Fields as `section,key,value` records; a table follows after a blank
    /// line with its own header.
    fn csv(&self) -> String {
        let mut out = Vec::new();
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["section", "key", "value"]).expect("in-memory write");
            w.write_record(["command", "command", &self.command]).expect("in-memory write");
            for name in SECTIONS {
                for (_, key, value) in self.section(name) {
                    w.write_record([name, key.as_str(), &value.render()]).expect("in-memory write");
                }
            }
            w.flush().expect("in-memory write");
        }
        if let Some(table) = &self.table {
            out.push(b'\n');
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&table.columns).expect("in-memory write");
            for row in &table.rows {
                w.write_record(row.iter().map(Value::render)).expect("in-memory write");
            }
            w.flush().expect("in-memory write");
        }
        String::from_utf8(out).expect("utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new("coh F2 -2,-4");
        d.input("surface", "F2").result("h0", 0u64).result("note", "a, \"quoted\" b");
        d.table = Some(Table { columns: vec!["x", "ok"], rows: vec![vec![Value::Int(12), true.into()]] });
        d
    }

    #[test]
    fn json_integers_are_strings() {
        let j: Json = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(j["result"]["h0"], Json::String("0".into()));
        assert_eq!(j["rows"][0]["x"], Json::String("12".into()));
        assert_eq!(j["rows"][0]["ok"], Json::Bool(true));
    }

    #[test]
    fn csv_quotes_per_rfc4180() {
        let c = sample().render(Format::Csv);
        assert!(c.contains("result,note,\"a, \"\"quoted\"\" b\""), "{c}");
        assert!(c.contains("\nx,ok\n12,true\n"), "{c}");
    }

    #[test]
    fn text_is_aligned() {
        let t = sample().render(Format::Text);
        assert!(t.starts_with("coh F2 -2,-4\ninput\n  surface  F2\n"), "{t}");
        assert!(t.contains("x   ok\n12  true\n"), "{t}");
    }
}
