//! Rendering of results as CSV (with `#` metadata) or JSON.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // adding zero turns -0 into +0
            Cell::Num(v) => format!("{:.10e}", v + 0.0),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Named columns plus `key=value` metadata.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), ..Self::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// `{"meta": {...}, "rows": [{column: value}, ...]}`, or a single flat
    /// object when the table holds one row and no metadata.
    pub fn to_json(&self) -> String {
        let row_obj = |row: &Vec<Cell>| {
            let mut m = Map::new();
            for (c, v) in self.columns.iter().zip(row) {
                m.insert(c.clone(), v.json());
            }
            Value::Object(m)
        };
        let value = if self.meta.is_empty() && self.rows.len() == 1 {
            row_obj(&self.rows[0])
        } else {
            let mut meta = Map::new();
            for (k, v) in &self.meta {
                meta.insert(k.clone(), Value::from(v.as_str()));
            }
            let mut top = Map::new();
            top.insert("meta".into(), Value::Object(meta));
            top.insert("rows".into(), Value::Array(self.rows.iter().map(row_obj).collect()));
            Value::Object(top)
        };
        let mut s = serde_json::to_string_pretty(&value).expect("tables serialize");
        s.push('\n');
        s
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
