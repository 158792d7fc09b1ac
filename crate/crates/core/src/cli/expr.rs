use serde_json::Value;

use crate::catalog::lookup;
use crate::polyrat::{compose, RationalMap, Surface};

use super::json::map_from_json;
use super::CliError;

/// `NAME | compose(expr, expr) | id:SURFACE | {inline JSON map}`.
///
/// `compose(g, f)` applies `f` first.
pub fn parse_map_expr(expr: &str) -> Result<RationalMap, CliError> {
    let e = expr.trim();
    if e.is_empty() {
        return Err(CliError::Grammar("empty map expression".into()));
    }
    if e.starts_with('{') {
        let v: Value = serde_json::from_str(e).map_err(|err| CliError::Grammar(format!("inline map: {err}")))?;
        return map_from_json(&v);
    }
    if let Some(s) = e.strip_prefix("id:") {
        return Ok(RationalMap::identity(s.trim().parse::<Surface>()?));
    }
    if let Some(rest) = e.strip_prefix("compose") {
        let inner = rest
            .trim_start()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| CliError::Grammar(format!("expected compose(g, f) in {e:?}")))?;
        let (g, f) = split_top_comma(inner).ok_or_else(|| CliError::Grammar(format!("compose needs two arguments in {e:?}")))?;
        let (g, f) = (parse_map_expr(g)?, parse_map_expr(f)?);
        return Ok(compose(&g, &f)?);
    }
    if e.contains(['(', ')', ',', '{', '}']) && !e.starts_with("monomial:") {
        return Err(CliError::Grammar(format!("cannot parse {e:?}")));
    }
    Ok(lookup(e)?)
}

/// Splits at the single comma not nested in brackets or strings.
fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let (mut depth, mut in_str, mut escaped) = (0i32, false, false);
    let mut at = None;
    for (i, ch) in s.char_indices() {
        if in_str {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_str = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' => in_str = true,
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                if at.is_some() {
                    return None;
                }
                at = Some(i);
            }
            _ => {}
        }
    }
    at.map(|i| (&s[..i], &s[i + 1..]))
}
