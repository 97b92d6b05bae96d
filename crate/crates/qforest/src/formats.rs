//! Plain-text input formats.
//!
//! * Edge list: the first non-comment line is the vertex count `n`, then one
//!   `u v` pair per line with 1-based vertices. `#` starts a comment.
//! * Support pattern: first line `n`, then `n` lines of `n` characters from
//!   `{0, 1}`.
//! * Basis list: first line `s r`, then one basis of `r` integers per line.
//! * Values CSV: header `q,count`, one row per prime power.

use std::path::Path;

use num_bigint::BigInt;
use qforest_core::counting::SupportPattern;
use qforest_core::fit::Point;
use qforest_core::matroid::Matroid;
use qforest_core::{Graph, PrimePower};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] qforest_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {tok:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| syntax(1, "missing vertex count"))?;
    let n = parse_usize(l0, header, "a vertex count")?;
    let mut edges = Vec::new();
    for (line, content) in lines {
        let toks: Vec<&str> = content.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(syntax(line, format!("expected `u v`, found {content:?}")));
        };
        edges.push((parse_usize(line, u, "a vertex")?, parse_usize(line, v, "a vertex")?));
    }
    Ok(Graph::new(n, edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_pattern(text: &str, symmetric: bool) -> Result<SupportPattern> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| syntax(1, "missing pattern size"))?;
    let n = parse_usize(l0, header, "a pattern size")?;
    let mut mask = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, content) in lines {
        if rows == n {
            return Err(syntax(line, format!("more than {n} rows")));
        }
        let row: Vec<char> = content.chars().filter(|c| !c.is_whitespace()).collect();
        if row.len() != n {
            return Err(syntax(line, format!("row has {} cells, expected {n}", row.len())));
        }
        for c in row {
            match c {
                '0' => mask.push(false),
                '1' => mask.push(true),
                other => return Err(syntax(line, format!("unexpected cell {other:?}"))),
            }
        }
        rows += 1;
    }
    if rows != n {
        return Err(syntax(l0, format!("expected {n} rows, found {rows}")));
    }
    Ok(SupportPattern::from_mask(n, mask, symmetric)?)
}

pub fn write_pattern(s: &SupportPattern) -> String {
    let mut out = format!("{}\n", s.n());
    for row in s.rows() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn parse_basis_list(text: &str) -> Result<Matroid> {
    let mut lines = content_lines(text);
    let (l0, header) = lines.next().ok_or_else(|| syntax(1, "missing `s r` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [s, r] = toks[..] else {
        return Err(syntax(l0, format!("expected `s r`, found {header:?}")));
    };
    let s = parse_usize(l0, s, "a ground set size")?;
    let r = parse_usize(l0, r, "a rank")?;
    let mut bases = Vec::new();
    for (line, content) in lines {
        let basis = content
            .split_whitespace()
            .map(|t| parse_usize(line, t, "an element"))
            .collect::<Result<Vec<_>>>()?;
        if basis.len() != r {
            return Err(syntax(line, format!("basis has {} elements, expected {r}", basis.len())));
        }
        bases.push(basis);
    }
    Ok(Matroid::from_bases(s, bases)?)
}

pub fn write_basis_list(m: &Matroid) -> String {
    let mut out = format!("{} {}\n", m.ground_size(), m.rank());
    for b in m.bases() {
        let items: Vec<String> = b.iter().map(ToString::to_string).collect();
        out.push_str(&items.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, serde::Deserialize)]
struct ValueRow {
    q: String,
    count: String,
}

/// Reads `q,count` rows. Every `q` must be a prime power (`9` or `3^2`).
pub fn parse_values_csv(text: &str) -> Result<Vec<Point>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["q", "count"] {
        return Err(syntax(1, format!("expected header `q,count`, found {:?}", headers.as_slice())));
    }
    let mut points = Vec::new();
    for (i, row) in reader.deserialize::<ValueRow>().enumerate() {
        let row = row?;
        let line = i + 2;
        let q = row.q.parse::<PrimePower>()?.q();
        let count: BigInt = row
            .count
            .parse()
            .map_err(|_| syntax(line, format!("count {:?} is not an integer", row.count)))?;
        points.push((q, count));
    }
    Ok(points)
}

pub fn write_values_csv(points: &[Point]) -> String {
    let mut out = String::from("q,count\n");
    for (q, c) in points {
        out.push_str(&format!("{q},{c}\n"));
    }
    out
}
