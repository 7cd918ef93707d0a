//! The arrangement text format.
//!
//! ```text
//! # optional comments anywhere
//! field r=<conductor>
//! dim <l>
//! <l whitespace-separated scalar tokens per hyperplane line>
//! ```
//!
//! Scalar tokens use the textual scalar syntax without internal whitespace
//! (`1/2+3*z^2-z`). Printing emits canonical tokens, so
//! parse -> print -> parse is the identity.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// What to do when an input line repeats a hyperplane already seen
/// (after canonical scaling).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// Drop the duplicate and record a warning.
    #[default]
    Warn,
    /// Fail parsing.
    Error,
}

#[derive(Debug)]
pub struct ParsedArrangement {
    pub arrangement: Arrangement,
    /// 1-based line numbers of dropped duplicate hyperplane lines.
    pub duplicate_lines: Vec<usize>,
}

pub fn parse_arrangement(text: &str, on_duplicate: DuplicatePolicy) -> Result<ParsedArrangement> {
    let mut field: Option<FieldSpec> = None;
    let mut dim: Option<usize> = None;
    let mut normals: Vec<Vec<Scalar>> = Vec::new();
    let mut line_of_normal: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        if field.is_none() {
            let rest = line
                .strip_prefix("field")
                .ok_or_else(|| err("expected `field r=<conductor>`".into()))?;
            let rest = rest.trim();
            let r: u32 = rest
                .strip_prefix("r=")
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| err(format!("bad field declaration `{line}`")))?;
            field =
                Some(FieldSpec::cyclotomic(r).map_err(|_| err("conductor must be >= 1".into()))?);
            continue;
        }
        if dim.is_none() {
            let rest = line
                .strip_prefix("dim")
                .ok_or_else(|| err("expected `dim <l>`".into()))?;
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| err(format!("bad dimension `{line}`")))?;
            dim = Some(d);
            continue;
        }
        let f = field.as_ref().unwrap();
        let d = dim.unwrap();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != d {
            return Err(err(format!(
                "expected {d} scalar tokens, found {}",
                tokens.len()
            )));
        }
        let mut normal = Vec::with_capacity(d);
        for tok in tokens {
            let s = Scalar::parse(tok, f).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { line: lineno, msg },
                other => other,
            })?;
            normal.push(s);
        }
        normals.push(normal);
        line_of_normal.push(lineno);
    }

    let field = field.ok_or(Error::Parse {
        line: 0,
        msg: "missing `field` line".into(),
    })?;
    let dim = dim.ok_or(Error::Parse {
        line: 0,
        msg: "missing `dim` line".into(),
    })?;

    // Detect duplicates before deduplicating construction.
    let mut canon = std::collections::HashSet::new();
    let mut duplicate_lines = Vec::new();
    for (normal, &lineno) in normals.iter().zip(&line_of_normal) {
        let hp = crate::arrangement::Hyperplane::new(normal.clone()).map_err(|e| match e {
            Error::ZeroNormal => Error::Parse {
                line: lineno,
                msg: "zero covector".into(),
            },
            other => other,
        })?;
        if !canon.insert(hp) {
            duplicate_lines.push(lineno);
        }
    }
    if on_duplicate == DuplicatePolicy::Error && !duplicate_lines.is_empty() {
        return Err(Error::Parse {
            line: duplicate_lines[0],
            msg: "duplicate hyperplane".into(),
        });
    }

    let arrangement = Arrangement::new(dim, field, normals)?;
    Ok(ParsedArrangement {
        arrangement,
        duplicate_lines,
    })
}

/// Canonical printing; round-trips exactly through `parse_arrangement`.
pub fn print_arrangement(arr: &Arrangement) -> String {
    let mut out = String::new();
    out.push_str(&format!("field r={}\n", arr.field().conductor()));
    out.push_str(&format!("dim {}\n", arr.dim()));
    for hp in arr.hyperplanes() {
        out.push_str(&hp.to_string());
        out.push('\n');
    }
    out
}
