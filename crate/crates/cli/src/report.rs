use handelman::rational::{approx, Bound, Q};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Rational(Q),
    Bound(Bound),
    Int(usize),
    Text(String),
    Flag(bool),
    Missing,
}

impl Cell {
    fn exact(&self) -> String {
        match self {
            Cell::Rational(v) => v.to_string(),
            Cell::Bound(b) => b.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
            Cell::Missing => "-".into(),
        }
    }

    fn decimal(&self) -> Option<f64> {
        match self {
            Cell::Rational(v) => Some(approx(v)),
            Cell::Bound(Bound::Finite(v)) => Some(approx(v)),
            Cell::Bound(Bound::Infinite) => Some(f64::INFINITY),
            _ => None,
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Rational(_) | Cell::Bound(_) | Cell::Text(_) => Value::String(self.exact()),
            Cell::Int(v) => json!(v),
            Cell::Flag(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<Q> for Cell {
    fn from(v: Q) -> Self {
        Cell::Rational(v)
    }
}

impl From<Bound> for Cell {
    fn from(v: Bound) -> Self {
        Cell::Bound(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Output of one command: named scalars, an optional table and free text
/// lines that only the text format shows.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub fields: Vec<(String, Cell)>,
    pub table: Option<Table>,
    pub text_lines: Vec<String>,
    /// Hide the table in text output; `text_lines` already cover it.
    pub table_hidden_in_text: bool,
}

impl Report {
    pub fn field(mut self, name: &str, value: impl Into<Cell>) -> Self {
        self.fields.push((name.into(), value.into()));
        self
    }

    pub fn render(&self, format: Format, with_approx: bool) -> String {
        match format {
            Format::Text => self.text(with_approx),
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&self.json(with_approx)).expect("serializable");
                out.push('\n');
                out
            }
            Format::Tsv => self.tsv(with_approx),
        }
    }

    fn text(&self, with_approx: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v.decimal().filter(|_| with_approx) {
                Some(d) => out.push_str(&format!("{k} = {} ({d:.6})\n", v.exact())),
                None => out.push_str(&format!("{k} = {}\n", v.exact())),
            }
        }
        for line in &self.text_lines {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(table) = self.table.as_ref().filter(|_| !self.table_hidden_in_text) {
            let (header, rows) = expand(table, with_approx);
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                out.push_str(cells.join("  ").trim_end());
                out.push('\n');
            }
        }
        out
    }

    fn json(&self, with_approx: bool) -> Value {
        let mut obj = Map::new();
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.json());
            if let Some(d) = v.decimal().filter(|_| with_approx) {
                obj.insert(format!("{k}_approx"), decimal_json(d));
            }
        }
        if let Some(table) = &self.table {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let mut r = Map::new();
                    for (k, v) in table.columns.iter().zip(row) {
                        r.insert(k.clone(), v.json());
                        if let Some(d) = v.decimal().filter(|_| with_approx) {
                            r.insert(format!("{k}_approx"), decimal_json(d));
                        }
                    }
                    Value::Object(r)
                })
                .collect();
            obj.insert(table.name.clone(), Value::Array(rows));
        }
        Value::Object(obj)
    }

    fn tsv(&self, with_approx: bool) -> String {
        let (header, rows) = match &self.table {
            Some(table) => expand(table, with_approx),
            None => {
                let t = Table {
                    name: String::new(),
                    columns: self.fields.iter().map(|(k, _)| k.clone()).collect(),
                    rows: vec![self.fields.iter().map(|(_, v)| v.clone()).collect()],
                };
                expand(&t, with_approx)
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }
}

fn decimal_json(d: f64) -> Value {
    serde_json::Number::from_f64(d).map_or(Value::String("inf".into()), Value::Number)
}

fn expand(table: &Table, with_approx: bool) -> (Vec<String>, Vec<Vec<String>>) {
    let numeric: Vec<bool> = (0..table.columns.len())
        .map(|i| with_approx && table.rows.iter().any(|r| r[i].decimal().is_some()))
        .collect();
    let mut header = Vec::new();
    for (c, &num) in table.columns.iter().zip(&numeric) {
        header.push(c.clone());
        if num {
            header.push(format!("{c}_approx"));
        }
    }
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let mut out = Vec::new();
            for (cell, &num) in row.iter().zip(&numeric) {
                out.push(cell.exact());
                if num {
                    out.push(cell.decimal().map_or("-".into(), |d| format!("{d:.6}")));
                }
            }
            out
        })
        .collect();
    (header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use handelman::rational::qf;

    #[test]
    fn exact_rationals_in_every_format() {
        let r = Report::default().field("alpha_star", qf(5, 2)).field("rank", 3usize);
        assert_eq!(r.render(Format::Text, false), "alpha_star = 5/2\nrank = 3\n");
        assert_eq!(r.render(Format::Tsv, false), "alpha_star\trank\n5/2\t3\n");
        let v: Value = serde_json::from_str(&r.render(Format::Json, false)).unwrap();
        assert_eq!(v["alpha_star"], "5/2");
        assert!(r.render(Format::Text, true).contains("5/2 (2.500000)"));
    }

    #[test]
    fn tables_gain_decimal_columns() {
        let mut t = Table::new("trace", &["t", "bound"]);
        t.push(vec![1usize.into(), Bound::Infinite.into()]);
        t.push(vec![2usize.into(), qf(5, 2).into()]);
        let r = Report {
            table: Some(t),
            ..Report::default()
        };
        assert_eq!(r.render(Format::Tsv, true), "t\tbound\tbound_approx\n1\tINF\tinf\n2\t5/2\t2.500000\n");
    }
}
