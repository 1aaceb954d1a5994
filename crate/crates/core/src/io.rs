//! Plain-text matrix files.
//!
//! ```text
//! # comment
//! 2
//! 1 -1
//! -1 1/2
//! ```
//!
//! The first non-comment line is the order `n`, followed by `n` rows of `n`
//! entries written as `p` or `p/q` with `q > 0`. Blank lines and lines starting
//! with `#` are ignored. The matrix must be exactly symmetric.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rational, SymMatrix, Vector};

fn parse_error(line: usize, col: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}, column {col}: {msg}"))
}

pub fn parse_rational(token: &str) -> Option<Rational> {
    let (p, q) = match token.split_once('/') {
        Some((p, q)) => (p, q),
        None => (token, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() || q.is_negative() {
        return None;
    }
    Some(Rational::new(p, q))
}

/// Tokens of a line paired with their one-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let header_tokens = tokens(header);
    let order: usize = match header_tokens.as_slice() {
        [(_, tok)] => tok
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 1)
            .ok_or_else(|| parse_error(header_line, 1, format!("invalid order `{tok}`")))?,
        _ => return Err(parse_error(header_line, 1, "expected a single order on the first line")),
    };

    let mut rows: Vec<Vector> = Vec::with_capacity(order);
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        if rows.len() == order {
            return Err(parse_error(line_no, 1, format!("more than {order} rows")));
        }
        let toks = tokens(line);
        if toks.len() != order {
            return Err(parse_error(
                line_no,
                1,
                format!("expected {order} entries, found {}", toks.len()),
            ));
        }
        let row = toks
            .iter()
            .map(|&(col, tok)| {
                parse_rational(tok)
                    .ok_or_else(|| parse_error(line_no, col, format!("invalid entry `{tok}`")))
            })
            .collect::<Result<Vector>>()?;
        rows.push(row);
    }
    if rows.len() != order {
        return Err(parse_error(
            last_line,
            1,
            format!("expected {order} rows, found {}", rows.len()),
        ));
    }
    SymMatrix::from_rows(&rows)
}

pub fn read_matrix(path: &Path) -> Result<SymMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Inverse of [`parse_matrix`].
pub fn format_matrix(a: &SymMatrix) -> String {
    let mut out = format!("{}\n", a.order());
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// `1/2,1/2,0`
pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
