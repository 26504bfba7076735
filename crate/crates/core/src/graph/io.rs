//! Edge-list text format: a header line `n m`, then `m` lines `u v`
//! (0-indexed). Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = fields.next().ok_or_else(|| parse_err(line_no, format!("missing {what}")))?;
        tok.parse().map_err(|_| parse_err(line_no, format!("invalid {what} `{tok}`")))
    };
    let pair = (next("first field")?, next("second field")?);
    if fields.next().is_some() {
        return Err(parse_err(line_no, "trailing fields"));
    }
    Ok(pair)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n m`"))?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        if u >= n || v >= n {
            return Err(parse_err(line_no, format!("vertex out of range for n = {n}")));
        }
        if u == v {
            return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(header_line, format!("header declares {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "{} {}", e.0, e.1).expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments() {
        let g = parse_edge_list("# square\n4 4\n0 1\n1 2\n\n2 3\n# close\n3 0\n").unwrap();
        assert_eq!(g, Graph::cycle(4).unwrap());
    }

    #[test]
    fn roundtrip() {
        let g = Graph::petersen();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("3 1\n0 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 1\n1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1 2\n"), Err(Error::Parse { .. })));
    }
}
