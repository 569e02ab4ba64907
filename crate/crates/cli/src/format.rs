//! Line-oriented quiver and point files.
//!
//! ```text
//! # quiver file
//! n 3
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! psi 1 a
//! psi 2 a
//! ```
//!
//! ```text
//! # point file, one block per arrow
//! matrix a
//! 0 0 1
//! 0 -1 7/2
//! 1 0 0
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::BigRational;
use quiver_uinv::field::format_rational;
use quiver_uinv::quiver::{Model, QuiverDecl};
use quiver_uinv::{Matrix, Quiver, Rational, RepPoint};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("E005 line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

pub fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Non-blank lines with comments stripped, tagged with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        (!words.is_empty()).then_some((idx + 1, words))
    })
}

fn ident(line: usize, word: &str) -> Result<String, ParseError> {
    if is_ident(word) {
        Ok(word.to_string())
    } else {
        Err(err(line, format!("invalid identifier '{word}'")))
    }
}

pub fn parse_quiver(text: &str) -> Result<QuiverDecl, ParseError> {
    let mut decl = QuiverDecl::default();
    let mut n_line: Option<usize> = None;
    for (line, words) in content_lines(text) {
        let arity = |expected: usize| {
            if words.len() == expected + 1 {
                Ok(())
            } else {
                Err(err(
                    line,
                    format!("'{}' takes {expected} argument(s), found {}", words[0], words.len() - 1),
                ))
            }
        };
        match words[0] {
            "n" => {
                arity(1)?;
                if let Some(first) = n_line {
                    return Err(err(line, format!("duplicate 'n' (first on line {first})")));
                }
                decl.n = words[1]
                    .parse()
                    .map_err(|_| err(line, format!("invalid dimension '{}'", words[1])))?;
                n_line = Some(line);
            }
            "vertex" => {
                arity(1)?;
                decl.vertices.push(ident(line, words[1])?);
            }
            "arrow" => {
                arity(3)?;
                decl.arrows
                    .push((ident(line, words[1])?, ident(line, words[2])?, ident(line, words[3])?));
            }
            "psi" => {
                arity(2)?;
                decl.psi.push((ident(line, words[1])?, ident(line, words[2])?));
            }
            other => return Err(err(line, format!("unknown directive '{other}'"))),
        }
    }
    if n_line.is_none() {
        let last = text.lines().count().max(1);
        return Err(err(last, "missing 'n' directive"));
    }
    Ok(decl)
}

pub fn parse_rational(word: &str) -> Option<Rational> {
    if let Some((p, q)) = word.split_once('/') {
        if q.starts_with(['-', '+']) || q.is_empty() || p.is_empty() {
            return None;
        }
    }
    BigRational::from_str(word).ok()
}

/// Parses one block per arrow of `model`, in any order.
pub fn parse_point(text: &str, model: &Model) -> Result<RepPoint<Rational>, ParseError> {
    let quiver = &model.quiver;
    let n = model.n;
    let mut blocks: Vec<Option<Matrix<Rational>>> = vec![None; quiver.arrow_count()];
    let mut lines = content_lines(text).peekable();
    while let Some((line, words)) = lines.next() {
        if words[0] != "matrix" || words.len() != 2 {
            return Err(err(line, "expected 'matrix <arrow>'"));
        }
        let arrow = quiver
            .find_arrow(words[1])
            .ok_or_else(|| err(line, format!("unknown arrow '{}'", words[1])))?;
        if blocks[arrow.0].is_some() {
            return Err(err(line, format!("duplicate block for arrow '{}'", words[1])));
        }
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        let mut last = line;
        for _ in 0..n {
            let Some((row_line, row)) = lines.next_if(|(_, w)| w[0] != "matrix") else {
                return Err(err(last, format!("matrix {} needs {n} rows", words[1])));
            };
            if row.len() != n {
                return Err(err(row_line, format!("expected {n} entries, found {}", row.len())));
            }
            let parsed = row
                .iter()
                .map(|w| parse_rational(w).ok_or_else(|| err(row_line, format!("invalid rational '{w}'"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
            last = row_line;
        }
        if let Some((extra, _)) = lines.next_if(|(_, w)| w[0] != "matrix") {
            return Err(err(extra, format!("matrix {} has more than {n} rows", words[1])));
        }
        blocks[arrow.0] = Some(Matrix::from_rows(rows).expect("square by construction"));
    }
    let last = text.lines().count().max(1);
    let matrices = blocks
        .into_iter()
        .enumerate()
        .map(|(idx, m)| {
            m.ok_or_else(|| {
                err(
                    last,
                    format!(
                        "missing block for arrow '{}'",
                        quiver.arrow_name(quiver_uinv::ArrowId(idx))
                    ),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RepPoint::new(quiver, matrices).expect("one matrix per arrow"))
}

pub fn write_matrix_block(out: &mut String, name: &str, m: &Matrix<Rational>) {
    let _ = writeln!(out, "matrix {name}");
    for i in 1..=m.n() {
        let row: Vec<String> = (1..=m.n()).map(|j| format_rational(m.get(i, j))).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

pub fn format_point(quiver: &Quiver, h: &RepPoint<Rational>) -> String {
    let mut out = String::new();
    for a in quiver.arrow_ids() {
        write_matrix_block(&mut out, quiver.arrow_name(a), h.matrix(a));
    }
    out
}
