//! Text form of a kernel matrix: rows separated by `;`, entries by commas.
//!
//! Each row may be wrapped in parentheses, as in `(0,0,1)` or
//! `(1,0,0); (0,1,-1)`. Entries use the scalar text form, so commas inside
//! `z(N,k)` are not separators.

use c5cone::CycloScalar;

use crate::CliError;

/// Split at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>, CliError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CliError::Kernel(format!("unbalanced ')' in {s:?}")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CliError::Kernel(format!("unbalanced '(' in {s:?}")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// Strip one pair of parentheses enclosing the whole row.
fn unwrap_row(row: &str) -> &str {
    let t = row.trim();
    if !(t.starts_with('(') && t.ends_with(')')) {
        return t;
    }
    let mut depth = 0;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < t.len() {
                    return t;
                }
            }
            _ => {}
        }
    }
    &t[1..t.len() - 1]
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<CycloScalar>>, CliError> {
    let rows = split_top(text, ';')?
        .into_iter()
        .filter(|r| !r.trim().is_empty())
        .map(|row| {
            split_top(unwrap_row(row), ',')?
                .into_iter()
                .map(|e| {
                    e.trim()
                        .parse::<CycloScalar>()
                        .map_err(|err| CliError::Kernel(format!("entry {:?}: {err}", e.trim())))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.is_empty() {
        return Err(CliError::Kernel("no rows".into()));
    }
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(CliError::Kernel("rows have different lengths".into()));
    }
    Ok(rows)
}
