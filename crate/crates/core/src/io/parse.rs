use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arrangement::{AffineArrangement, Arrangement, ArrangementError, Matroid};
use crate::bits::{self, IndexSet};
use crate::kernel::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] ArrangementError),
    #[error("unknown input {key:?}; registered examples: {available}")]
    UnknownKey { key: String, available: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

/// Either kind of combinatorial input.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Arrangement(Arrangement),
    Matroid(Matroid),
}

impl Input {
    pub fn matroid(&self) -> Matroid {
        match self {
            Input::Arrangement(a) => a.matroid(),
            Input::Matroid(m) => m.clone(),
        }
    }

    pub fn arrangement(&self) -> Option<&Arrangement> {
        match self {
            Input::Arrangement(a) => Some(a),
            Input::Matroid(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Input::Arrangement(a) => a.len(),
            Input::Matroid(m) => m.ground_size(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

/// Parse `a` or `a/b` with integers `a`, `b` and `b != 0`.
pub fn parse_rational(tok: &str, line: usize) -> Result<Rational, ParseError> {
    let bad = || syntax(line, format!("malformed rational {tok:?}"));
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (BigInt::from_str(n).map_err(|_| bad())?, BigInt::from_str(d).map_err(|_| bad())?),
        None => (BigInt::from_str(tok).map_err(|_| bad())?, BigInt::from(1)),
    };
    if d.is_zero() {
        return Err(syntax(line, format!("zero denominator in {tok:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Non-empty lines with comments removed, paired with 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect()
}

fn parse_count(tok: Option<&&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok()).ok_or_else(|| syntax(line, format!("expected {what}")))
}

/// Parse any of the `arr`, `aff`, `matroid` and `blocks` formats.
pub fn parse_text(text: &str) -> Result<Input, ParseError> {
    let lines = content_lines(text);
    let Some((hl, header)) = lines.first() else {
        return Err(syntax(1, "empty input"));
    };
    let body = &lines[1..];
    match header[0] {
        "arr" | "aff" => {
            let n = parse_count(header.get(1), *hl, "hyperplane count")?;
            let ell = parse_count(header.get(2), *hl, "dimension")?;
            let affine = header[0] == "aff";
            let width = if affine { ell + 1 } else { ell };
            if body.len() != n {
                return Err(syntax(*hl, format!("header announces {n} rows, found {}", body.len())));
            }
            let mut rows = Vec::with_capacity(n);
            for (line, toks) in body {
                if toks.len() != width {
                    return Err(syntax(*line, format!("expected {width} numbers, found {}", toks.len())));
                }
                rows.push(toks.iter().map(|t| parse_rational(t, *line)).collect::<Result<Vec<_>, _>>()?);
            }
            if affine {
                let rows = rows
                    .into_iter()
                    .map(|mut r| {
                        let c = r.pop().expect("width is ell + 1");
                        (r, c)
                    })
                    .collect();
                Ok(Input::Arrangement(Arrangement::cone(&AffineArrangement { dim: ell, rows })?))
            } else {
                Ok(Input::Arrangement(Arrangement::new(ell, rows)?))
            }
        }
        "matroid" => {
            let n = parse_count(header.get(1), *hl, "ground set size")?;
            let rank = parse_count(header.get(2), *hl, "rank")?;
            let mut circuits: Vec<IndexSet> = Vec::new();
            for (line, toks) in body {
                if toks[0] != "circuit" {
                    return Err(syntax(*line, "expected `circuit i1 i2 ...`"));
                }
                let mut c: IndexSet = 0;
                for t in &toks[1..] {
                    let i: usize = t.parse().map_err(|_| syntax(*line, format!("bad index {t:?}")))?;
                    if i == 0 || i > n {
                        return Err(syntax(*line, format!("index {i} outside 1..={n}")));
                    }
                    c |= bits::singleton(i - 1);
                }
                circuits.push(c);
            }
            Ok(Input::Matroid(Matroid::from_circuits(n, circuits, Some(rank))?))
        }
        "blocks" => {
            let n = parse_count(header.get(1), *hl, "point count")?;
            let mut blocks = Vec::new();
            for (line, toks) in body {
                for t in toks {
                    let mut b: IndexSet = 0;
                    for ch in t.chars() {
                        let i = (ch as u32).wrapping_sub('a' as u32) as usize;
                        if !ch.is_ascii_lowercase() || i >= n {
                            return Err(syntax(*line, format!("point {ch:?} outside a..{n} letters")));
                        }
                        b |= bits::singleton(i);
                    }
                    blocks.push(b);
                }
            }
            Ok(Input::Matroid(Matroid::from_block_design(&blocks, n)?))
        }
        other => Err(syntax(*hl, format!("unknown format {other:?}"))),
    }
}
