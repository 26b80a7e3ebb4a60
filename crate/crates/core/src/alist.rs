//! Reader and writer for the alist sparse-matrix format.
//!
//! ```text
//! n m                      (columns, rows)
//! max_col_deg max_row_deg
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based row indices of each column, zero-padded>
//! <m lines: 1-based column indices of each row, zero-padded>
//! ```
//!
//! A CSS code is stored as two files, one for `H_X` and one for `H_Z`.

use std::fmt::Write as _;
use std::path::Path;

use crate::code::CssCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Whitespace-separated non-negative integers, each tagged with its line.
struct Tokens<'a> {
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: Box::new(
                text.lines()
                    .enumerate()
                    .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t))),
            ),
            line: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<usize> {
        let (line, tok) = self
            .inner
            .next()
            .ok_or_else(|| parse_err(self.line, format!("unexpected end of input while reading {what}")))?;
        self.line = line;
        tok.parse::<usize>()
            .map_err(|_| parse_err(line, format!("'{tok}' is not a non-negative integer")))
    }

    fn take(&mut self, count: usize, what: &str) -> Result<Vec<usize>> {
        (0..count).map(|_| self.next(what)).collect()
    }
}

/// Parses an alist matrix. Neighbor lists must be zero-padded to the
/// declared maximum degree; column and row lists must agree.
pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let mut toks = Tokens::new(text);
    let n = toks.next("dimensions")?;
    let m = toks.next("dimensions")?;
    let max_col = toks.next("maximum degrees")?;
    let max_row = toks.next("maximum degrees")?;
    let col_deg = toks.take(n, "column degrees")?;
    let row_deg = toks.take(m, "row degrees")?;
    if col_deg.iter().any(|&d| d > max_col) || row_deg.iter().any(|&d| d > max_row) {
        return Err(parse_err(toks.line, "a degree exceeds the declared maximum"));
    }

    let mut from_cols = BitMatrix::zeros(m, n);
    for (c, &deg) in col_deg.iter().enumerate() {
        let rows: Vec<usize> = toks.take(max_col, "column lists")?.into_iter().filter(|&r| r != 0).collect();
        if rows.len() != deg {
            return Err(parse_err(toks.line, format!("column {} lists {} entries, degree says {deg}", c + 1, rows.len())));
        }
        for r in rows {
            if r > m {
                return Err(parse_err(toks.line, format!("row index {r} out of range 1..={m}")));
            }
            from_cols.set(r - 1, c, true);
        }
    }
    let mut from_rows = BitMatrix::zeros(m, n);
    for (r, &deg) in row_deg.iter().enumerate() {
        let cols: Vec<usize> = toks.take(max_row, "row lists")?.into_iter().filter(|&c| c != 0).collect();
        if cols.len() != deg {
            return Err(parse_err(toks.line, format!("row {} lists {} entries, degree says {deg}", r + 1, cols.len())));
        }
        for c in cols {
            if c > n {
                return Err(parse_err(toks.line, format!("column index {c} out of range 1..={n}")));
            }
            from_rows.set(r, c - 1, true);
        }
    }
    if from_rows != from_cols {
        return Err(parse_err(toks.line, "column lists and row lists describe different matrices"));
    }
    if toks.inner.next().is_some() {
        return Err(parse_err(toks.line, "trailing data after row lists"));
    }
    Ok(from_rows)
}

pub fn write_alist(h: &BitMatrix) -> String {
    let (m, n) = (h.num_rows(), h.num_cols());
    let row_lists: Vec<Vec<usize>> = h.rows().iter().map(|r| r.support()).collect();
    let mut col_lists = vec![Vec::new(); n];
    for (r, cols) in row_lists.iter().enumerate() {
        for &c in cols {
            col_lists[c].push(r);
        }
    }
    let max_col = col_lists.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = row_lists.iter().map(Vec::len).max().unwrap_or(0);

    let join = |xs: &mut dyn Iterator<Item = usize>| xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let padded = |list: &[usize], width: usize| {
        join(&mut list.iter().map(|&x| x + 1).chain(std::iter::repeat(0)).take(width))
    };

    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut col_lists.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut row_lists.iter().map(Vec::len)));
    for list in &col_lists {
        let _ = writeln!(out, "{}", padded(list, max_col));
    }
    for list in &row_lists {
        let _ = writeln!(out, "{}", padded(list, max_row));
    }
    out
}

pub fn read_alist_file(path: &Path) -> std::io::Result<Result<BitMatrix>> {
    Ok(parse_alist(&std::fs::read_to_string(path)?))
}

/// Builds a CSS code from the alist texts of `H_X` and `H_Z`.
pub fn parse_css_pair(name: &str, hx_text: &str, hz_text: &str) -> Result<CssCode> {
    CssCode::new(name, parse_alist(hx_text)?, parse_alist(hz_text)?)
}
