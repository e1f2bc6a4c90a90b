//! Text formats for matrices, row splits and edge lists.
//!
//! A matrix file holds optional `#` comment lines, a header `m n`, and `m`
//! rows of `n` characters over `{0,1}`. A split file is a matrix followed by
//! a blank line and one line `i: j1 j2 ...` per source row, all 1-based.

use std::fmt::Write as _;

use thiserror::Error;

use crate::matrix::{BinaryMatrix, MatrixError, RowSplit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
        }
    }

    /// Next line that is neither blank nor a comment, with its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }
}

fn parse_matrix_lines(lines: &mut Lines<'_>) -> Result<BinaryMatrix, ParseError> {
    let (hline, header) = lines
        .next_content()
        .ok_or_else(|| ParseError::Truncated("missing header \"m n\"".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [m, n] = dims[..] else {
        return Err(syntax(hline, format!("expected header \"m n\", found {header:?}")));
    };
    let parse_dim = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| syntax(hline, format!("bad dimension {s:?}")))
    };
    let (m, n) = (parse_dim(m)?, parse_dim(n)?);
    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let (line, text) = lines
            .next_content()
            .ok_or_else(|| ParseError::Truncated(format!("expected {m} rows, found {r}")))?;
        if text.chars().count() != n {
            return Err(syntax(line, format!("expected {n} columns, found {}", text.chars().count())));
        }
        let row = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(syntax(line, format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        rows.push(row);
    }
    Ok(BinaryMatrix::new(rows)?)
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix, ParseError> {
    let mut lines = Lines::new(text);
    let matrix = parse_matrix_lines(&mut lines)?;
    if let Some((line, _)) = lines.next_content() {
        return Err(syntax(line, "trailing content after the last row"));
    }
    Ok(matrix)
}

pub fn write_matrix(matrix: &BinaryMatrix) -> String {
    let mut out = format!("{} {}\n", matrix.rows(), matrix.cols());
    for row in matrix.row_strings() {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Parses a split file. Group lines must appear for source rows `1..=m` in
/// order; `m` is taken from the number of group lines.
pub fn parse_split(text: &str) -> Result<RowSplit, ParseError> {
    let mut lines = Lines::new(text);
    let split = parse_matrix_lines(&mut lines)?;
    let mut groups = Vec::new();
    while let Some((line, text)) = lines.next_content() {
        let (head, tail) = text
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected \"i: j1 j2 ...\""))?;
        let i: usize = head
            .trim()
            .parse()
            .map_err(|_| syntax(line, format!("bad row index {head:?}")))?;
        if i != groups.len() + 1 {
            return Err(syntax(line, format!("expected row {}, found {i}", groups.len() + 1)));
        }
        let group = tail
            .split_whitespace()
            .map(|j| match j.parse::<usize>() {
                Ok(j) if j >= 1 => Ok(j - 1),
                _ => Err(syntax(line, format!("bad split-row index {j:?}"))),
            })
            .collect::<Result<Vec<usize>, _>>()?;
        groups.push(group);
    }
    if groups.is_empty() {
        return Err(ParseError::Truncated("missing row groups".into()));
    }
    Ok(RowSplit { split, groups })
}

pub fn write_split(split: &RowSplit) -> String {
    let mut out = write_matrix(&split.split);
    out.push('\n');
    for (i, group) in split.groups.iter().enumerate() {
        write!(out, "{}:", i + 1).expect("writing to a String");
        for j in group {
            write!(out, " {}", j + 1).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Parses `u v` pairs, one per line, ignoring blank and `#` lines. Returns
/// the vertex count (one more than the largest endpoint) and the edges.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>), ParseError> {
    let mut lines = Lines::new(text);
    let mut edges = Vec::new();
    while let Some((line, text)) = lines.next_content() {
        let ends: Vec<&str> = text.split_whitespace().collect();
        let [u, v] = ends[..] else {
            return Err(syntax(line, format!("expected \"u v\", found {text:?}")));
        };
        let parse = |s: &str| s.parse::<usize>().map_err(|_| syntax(line, format!("bad vertex {s:?}")));
        edges.push((parse(u)?, parse(v)?));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Ok((n, edges))
}

pub fn write_edge_list(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(u, v)| format!("{u} {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let text = "# sample\n3 2\n11\n10\n01\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.row_strings(), vec!["11", "10", "01"]);
        assert_eq!(write_matrix(&m), "3 2\n11\n10\n01\n");
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_matrix(""), Err(ParseError::Truncated(_))));
        assert!(matches!(parse_matrix("2 2\n11\n"), Err(ParseError::Truncated(_))));
        assert_eq!(
            parse_matrix("1 2\n1x\n"),
            Err(ParseError::Syntax {
                line: 2,
                msg: "unexpected character 'x'".into()
            })
        );
        assert!(matches!(parse_matrix("1 2\n101\n"), Err(ParseError::Syntax { line: 2, .. })));
        assert!(matches!(parse_matrix("2 2\n11\n00\n"), Err(ParseError::Matrix(_))));
        assert!(matches!(parse_matrix("1 1\n1\n1\n"), Err(ParseError::Syntax { line: 3, .. })));
    }

    #[test]
    fn split_round_trip() {
        let text = "4 2\n10\n01\n10\n01\n\n1: 1 2\n2: 3\n3: 4\n";
        let s = parse_split(text).unwrap();
        assert_eq!(s.groups, vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(write_split(&s), text);
    }

    #[test]
    fn split_rows_must_be_in_order() {
        assert!(matches!(
            parse_split("1 1\n1\n\n2: 1\n"),
            Err(ParseError::Syntax { line: 4, .. })
        ));
        assert!(matches!(parse_split("1 1\n1\n\n1: 0\n"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn edge_lists() {
        let (n, edges) = parse_edge_list("# k2\n0 1\n\n1 2\n").unwrap();
        assert_eq!(n, 3);
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert_eq!(write_edge_list(&edges), "0 1\n1 2\n");
        assert!(parse_edge_list("0 1 2\n").is_err());
    }
}
