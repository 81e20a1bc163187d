//! Text grammar shared by pairs and families.
//!
//! A list is comma separated; an entry is `v` or `v^m` (also `v^(m)`),
//! meaning `m` copies of `v`. Whitespace is ignored everywhere.

use crate::error::{Error, Result};

pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for entry in compact.split(',') {
        let (value, mult) = match entry.split_once('^') {
            Some((v, m)) => {
                let m = m
                    .strip_prefix('(')
                    .and_then(|m| m.strip_suffix(')'))
                    .unwrap_or(m);
                (parse_positive(v, entry)?, parse_positive(m, entry)?)
            }
            None => (parse_positive(entry, entry)?, 1),
        };
        if mult > 1_000_000 {
            return Err(Error::Parse(format!("multiplicity too large in `{entry}`")));
        }
        out.extend(std::iter::repeat_n(value, mult as usize));
    }
    Ok(out)
}

fn parse_positive(token: &str, entry: &str) -> Result<u64> {
    match token.parse::<u64>() {
        Ok(v) if v > 0 => Ok(v),
        Ok(_) => Err(Error::Parse(format!("entries must be positive: `{entry}`"))),
        Err(_) => Err(Error::Parse(format!("invalid entry `{entry}`"))),
    }
}

/// Splits `degrees / weights` at the single slash.
pub fn split_halves(text: &str) -> Result<(&str, &str)> {
    let mut parts = text.split('/');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(d), Some(a), None) => Ok((d, a)),
        _ => Err(Error::Parse(format!(
            "expected `degrees / weights`, got `{text}`"
        ))),
    }
}

pub fn encode_plain(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Run-length encoding of consecutive equal entries.
pub fn encode_runs(values: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let v = values[i];
        let run = values[i..].iter().take_while(|&&x| x == v).count();
        parts.push(if run > 1 {
            format!("{v}^{run}")
        } else {
            v.to_string()
        });
        i += run;
    }
    parts.join(",")
}

pub(crate) fn sorted_desc(mut values: Vec<u64>) -> Vec<u64> {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values
}
