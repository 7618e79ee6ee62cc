//! The form-file format.
//!
//! ```text
//! # comment lines start with '#'
//! 2
//! 2 1
//! 1 2
//! ```
//!
//! The first line holds the dimension `d`, followed by `d` rows of `d`
//! rationals (`p/q` or integers) separated by whitespace. Blank lines are
//! ignored and `#` also ends a line early.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use venkov_core::lattice::{MAX_DIM, MIN_DIM};
use venkov_core::{QuadraticForm, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] venkov_core::Error),
}

/// A parsed and validated form.
#[derive(Debug, Clone)]
pub struct FormFile {
    pub path: Option<PathBuf>,
    pub dim: usize,
    pub form: QuadraticForm,
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> FormError {
    FormError::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Non-comment tokens of one line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
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

pub fn parse_form(text: &str) -> Result<FormFile, FormError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing dimension line"))?;
    if header.len() != 1 {
        return Err(parse_error(line, header[1].0, "expected a single dimension"));
    }
    let (col, tok) = header[0];
    let d: usize = tok
        .parse()
        .map_err(|_| parse_error(line, col, format!("invalid dimension {tok:?}")))?;
    if !(MIN_DIM..=MAX_DIM).contains(&d) {
        return Err(venkov_core::Error::UnsupportedDimension(d).into());
    }

    let mut rows = Vec::with_capacity(d);
    let mut last_line = line;
    for r in 0..d {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| parse_error(last_line + 1, 1, format!("missing row {} of {d}", r + 1)))?;
        last_line = line;
        if toks.len() != d {
            let col = toks.get(d).map_or(toks.last().map_or(1, |t| t.0), |t| t.0);
            return Err(parse_error(line, col, format!("expected {d} entries, found {}", toks.len())));
        }
        let row = toks
            .iter()
            .map(|&(col, tok)| {
                Rational::from_str(tok).map_err(|_| parse_error(line, col, format!("invalid rational {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if let Some((line, toks)) = lines.next() {
        return Err(parse_error(line, toks[0].0, "unexpected content after the matrix"));
    }
    let form = QuadraticForm::new(RationalMatrix::from_rows(rows)?)?;
    Ok(FormFile {
        path: None,
        dim: d,
        form,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Form { path: PathBuf, source: FormError },
}

pub fn load_form(path: &Path) -> Result<FormFile, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut f = parse_form(&text).map_err(|source| LoadError::Form {
        path: path.to_owned(),
        source,
    })?;
    f.path = Some(path.to_owned());
    Ok(f)
}

/// Renders a Gram matrix in the form-file format.
pub fn format_form(gram: &RationalMatrix, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for l in c.lines() {
            out.push_str("# ");
            out.push_str(l);
            out.push('\n');
        }
    }
    out.push_str(&format!("{}\n", gram.rows()));
    for r in 0..gram.rows() {
        let row: Vec<String> = gram.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use venkov_core::Error;

    #[test]
    fn hexagon() {
        let f = parse_form("2\n2 1\n1 2\n").unwrap();
        assert_eq!(f.dim, 2);
    }

    #[test]
    fn comments_rationals_and_blank_lines() {
        let f = parse_form("# hexagon, halved\n\n2\n1 1/2   # off-diagonal\n1/2 1\n").unwrap();
        assert_eq!(f.form.gram().get(0, 1), &Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn not_positive_definite() {
        assert_eq!(
            parse_form("2\n1 2\n2 1\n").unwrap_err(),
            FormError::Invalid(Error::NotPositiveDefinite { pivot: 1 })
        );
    }

    #[test]
    fn missing_row() {
        assert!(matches!(
            parse_form("3\n1 0 0\n0 1 0\n"),
            Err(FormError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn bad_entries_report_their_position() {
        assert_eq!(
            parse_form("2\n1 x\n0 1\n").unwrap_err(),
            FormError::Parse {
                line: 2,
                col: 3,
                message: "invalid rational \"x\"".into()
            }
        );
        assert!(matches!(parse_form("2\n1 0 0\n0 1\n"), Err(FormError::Parse { line: 2, col: 5, .. })));
        assert!(matches!(parse_form("2\n1 1/0\n0 1\n"), Err(FormError::Parse { line: 2, col: 3, .. })));
        assert!(matches!(parse_form("2\n1 0\n0 1\n7\n"), Err(FormError::Parse { line: 4, .. })));
        assert!(matches!(parse_form(""), Err(FormError::Parse { line: 1, .. })));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            parse_form("2\n1 1\n0 1\n"),
            Err(FormError::Invalid(Error::NotSymmetric { .. }))
        ));
        assert_eq!(
            parse_form("7\n").unwrap_err(),
            FormError::Invalid(Error::UnsupportedDimension(7))
        );
        assert_eq!(
            parse_form("1\n1\n").unwrap_err(),
            FormError::Invalid(Error::UnsupportedDimension(1))
        );
    }

    #[test]
    fn round_trip() {
        let f = parse_form("3\n2 -1 0\n-1 2 1/3\n0 1/3 2\n").unwrap();
        let text = format_form(f.form.gram(), Some("test"));
        let g = parse_form(&text).unwrap();
        assert_eq!(f.form, g.form);
    }
}
