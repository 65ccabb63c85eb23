//! Line-oriented element files.
//!
//! One coefficient per line: `g=<word>; row0; row1; ...`, each row holding
//! whitespace-separated complex literals. Blank lines and `#` comments are
//! ignored. Repeated words are summed.

use std::path::Path;
use std::sync::Arc;

use super::CpElement;
use crate::coeffalg::{format_complex, parse_complex, CoeffOp, GroupAction};
use crate::error::{Error, Result};

pub fn parse_element_file(ctx: Arc<GroupAction>, text: &str) -> Result<CpElement> {
    let n = ctx.dim();
    let group = ctx.group().clone();
    let mut terms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = lineno + 1;
        let mut fields = line.split(';');
        let head = fields.next().unwrap_or("").trim();
        let word = head
            .strip_prefix("g=")
            .ok_or_else(|| Error::parse("element file", at, "line must start with `g=`"))?;
        let g = group.parse_element(word).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::parse("element file", at, format!("word `{word}`: {msg}")),
            other => other,
        })?;
        let mut entries = Vec::with_capacity(n * n);
        let mut rows = 0;
        for row in fields {
            let row = row.trim();
            if row.is_empty() {
                continue;
            }
            rows += 1;
            let vals: Vec<_> = row.split_whitespace().collect();
            if vals.len() != n {
                return Err(Error::parse(
                    "element file",
                    at,
                    format!("row `{row}` has {} entries, expected {n}", vals.len()),
                ));
            }
            for v in vals {
                entries.push(
                    parse_complex(v)
                        .map_err(|_| Error::parse("element file", at, format!("bad entry `{v}`")))?,
                );
            }
        }
        if rows != n {
            return Err(Error::parse(
                "element file",
                at,
                format!("{rows} rows, expected {n}"),
            ));
        }
        terms.push((g, CoeffOp::from_rows(n, &entries)?));
    }
    CpElement::from_terms(ctx, terms)
}

pub fn format_element_file(x: &CpElement) -> String {
    let group = x.group();
    let n = x.dim();
    let mut out = String::new();
    for (g, a) in x.terms() {
        out.push_str("g=");
        out.push_str(&group.format_element(g));
        for i in 0..n {
            out.push(';');
            for j in 0..n {
                out.push(' ');
                out.push_str(&format_complex(a.get(i, j)));
            }
        }
        out.push('\n');
    }
    out
}

pub fn read_element_file(ctx: Arc<GroupAction>, path: &Path) -> Result<CpElement> {
    parse_element_file(ctx, &std::fs::read_to_string(path)?)
}

pub fn write_element_file(x: &CpElement, path: &Path) -> Result<()> {
    std::fs::write(path, format_element_file(x))?;
    Ok(())
}
