//! Machine-readable run reports.

use std::fmt::Display;

use serde::Serialize;

/// Rows of a tabular result such as a rank profile or fitted coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// One document per CLI run. Exact integers are decimal strings so that no
/// JSON consumer rounds them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    pub command: Vec<String>,
    pub subcommand: String,
    pub parameters: Vec<(String, String)>,
    pub results: Vec<(String, String)>,
    pub table: Option<Table>,
    pub algorithm: String,
    pub threads: usize,
    pub shards: usize,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>, subcommand: &str) -> Self {
        RunReport {
            command,
            subcommand: subcommand.to_string(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, name: &str, value: impl Display) -> &mut Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn result(&mut self, name: &str, value: impl Display) -> &mut Self {
        self.results.push((name.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.results.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn to_json(&self) -> String {
        let obj = |pairs: &[(String, String)]| {
            serde_json::Value::Object(
                pairs
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect(),
            )
        };
        let mut doc = serde_json::json!({
            "command": self.command,
            "subcommand": self.subcommand,
            "parameters": obj(&self.parameters),
            "results": obj(&self.results),
            "algorithm": self.algorithm,
            "threads": self.threads,
            "shards": self.shards,
            "elapsed_ms": self.elapsed_ms,
        });
        if let Some(t) = &self.table {
            doc["table"] = serde_json::to_value(t).expect("tables serialize");
        }
        serde_json::to_string_pretty(&doc).expect("reports serialize")
    }

    /// The table if there is one, else the scalar results as `name,value`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory write");
                }
            }
            None => {
                w.write_record(["name", "value"]).expect("in-memory write");
                for (k, v) in &self.results {
                    w.write_record([k, v]).expect("in-memory write");
                }
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_csv() {
        let mut r = RunReport::new(vec!["count".into()], "count");
        r.param("q", 2).result("count", "123456789012345678901234567890");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["results"]["count"], "123456789012345678901234567890");
        assert_eq!(v["parameters"]["q"], "2");
        assert!(v.get("table").is_none());
        assert_eq!(r.to_csv(), "name,value\ncount,123456789012345678901234567890\n");
        let mut t = Table::new(&["rank", "count"]);
        t.push(vec!["0".into(), "1".into()]);
        r.table = Some(t);
        assert_eq!(r.to_csv(), "rank,count\n0,1\n");
        assert_eq!(r.get("count"), Some("123456789012345678901234567890"));
    }
}
