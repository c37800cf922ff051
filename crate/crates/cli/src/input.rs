//! Plain-text input format for presentation matrices.
//!
//! ```text
//! # comment
//! field 32003
//! vars x1 x2 x3
//! row x2, x1 + x3, 0
//! row x3, x2, x1 + x2
//! row 0, x3, x2
//! row x2 + x3, 0, x3
//! point 1 0 0
//! u 1
//! ```
//!
//! `field` is a prime below `2^31` or `qq`; `vars` names the base
//! variables; each `row` lists comma-separated entries, zero or linear in
//! the named variables; `point` optionally supplies a straightening point
//! as integers; `u` optionally declares the expected straightening index.
//! Text after `#` is ignored.

use blowup_core::parse::parse_polynomial;
use blowup_core::ring::Ring;
use blowup_core::{BlockRole, CoeffField, LinearMatrix, Polynomial, Scalar};

#[derive(Debug)]
pub struct InputFile {
    pub phi: LinearMatrix,
    pub point: Option<Vec<Scalar>>,
    pub declared_u: Option<usize>,
}

/// Acceptable variable name: an identifier that cannot collide with the
/// fiber variables `t1, t2, ...` added behind the scenes.
fn valid_var(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(c0) = chars.next() else {
        return false;
    };
    if !c0.is_ascii_alphabetic() || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    let rest = &name[1..];
    let fiber_like =
        (c0 == 't' || c0 == 'T') && !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit());
    !fiber_like
}

/// `qq`, `rationals`, or a prime number.
pub fn parse_field_token(tok: &str) -> Result<CoeffField, String> {
    match tok.to_ascii_lowercase().as_str() {
        "qq" | "rationals" => Ok(CoeffField::rationals()),
        _ => {
            let p: u64 = tok
                .parse()
                .map_err(|_| format!("field must be a prime or `qq`, got `{tok}`"))?;
            CoeffField::prime(p).map_err(|e| e.to_string())
        }
    }
}

pub fn parse_input(text: &str) -> Result<InputFile, String> {
    let mut field: Option<CoeffField> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut rows: Vec<(String, usize)> = Vec::new();
    let mut point_raw: Option<(Vec<i64>, usize)> = None;
    let mut declared_u: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(char::is_whitespace)
            .unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "field" => {
                if field.is_some() {
                    return Err(format!("line {line_no}: duplicate `field` directive"));
                }
                field = Some(parse_field_token(rest).map_err(|e| format!("line {line_no}: {e}"))?);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(format!("line {line_no}: duplicate `vars` directive"));
                }
                let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if names.len() < 2 {
                    return Err(format!("line {line_no}: need at least two variables"));
                }
                for name in &names {
                    if !valid_var(name) {
                        return Err(format!(
                            "line {line_no}: `{name}` is not a usable variable name \
                             (identifiers only, and t<number> is reserved)"
                        ));
                    }
                }
                vars = Some(names);
            }
            "row" => rows.push((rest.to_string(), line_no)),
            "point" => {
                if point_raw.is_some() {
                    return Err(format!("line {line_no}: duplicate `point` directive"));
                }
                let mut coords = Vec::new();
                for tok in rest.split_whitespace() {
                    let v: i64 = tok.parse().map_err(|_| {
                        format!("line {line_no}: point coordinates must be integers, got `{tok}`")
                    })?;
                    coords.push(v);
                }
                if coords.is_empty() {
                    return Err(format!("line {line_no}: empty point"));
                }
                point_raw = Some((coords, line_no));
            }
            "u" => {
                if declared_u.is_some() {
                    return Err(format!("line {line_no}: duplicate `u` directive"));
                }
                let v: usize = rest.parse().map_err(|_| {
                    format!("line {line_no}: `u` takes a nonnegative integer, got `{rest}`")
                })?;
                declared_u = Some(v);
            }
            other => {
                return Err(format!("line {line_no}: unknown directive `{other}`"));
            }
        }
    }

    let field = field.ok_or("missing `field` directive")?;
    let vars = vars.ok_or("missing `vars` directive")?;
    if rows.is_empty() {
        return Err("no `row` directives".to_string());
    }
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let ring = Ring::base_ring(field, &var_refs).map_err(|e| e.to_string())?;

    let mut entries: Vec<Polynomial> = Vec::new();
    let mut cols: Option<usize> = None;
    for (raw, line_no) in &rows {
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        match cols {
            None => cols = Some(parts.len()),
            Some(c) if c != parts.len() => {
                return Err(format!(
                    "line {line_no}: row has {} entries, expected {c}",
                    parts.len()
                ));
            }
            _ => {}
        }
        for part in parts {
            if part.is_empty() {
                return Err(format!("line {line_no}: empty matrix entry"));
            }
            let p = parse_polynomial(part, &ring)
                .map_err(|e| format!("line {line_no}: {e}"))?;
            entries.push(p);
        }
    }
    let phi = LinearMatrix::new(
        ring.clone(),
        BlockRole::Base,
        rows.len(),
        cols.unwrap_or(0),
        entries,
    )
    .map_err(|e| e.to_string())?;

    let point = match point_raw {
        Some((coords, line_no)) => {
            if coords.len() != vars.len() {
                return Err(format!(
                    "line {line_no}: point has {} coordinates, expected {}",
                    coords.len(),
                    vars.len()
                ));
            }
            Some(coords.into_iter().map(|v| field.from_i64(v)).collect())
        }
        None => None,
    };

    Ok(InputFile {
        phi,
        point,
        declared_u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = "\
# sample
field 32003
vars x1 x2 x3
row x2, x1, x3
row x3, x2, 0   # trailing comment
row 0, x3, x2
row x2 + x3, 0, x3
point 1 0 0
u 1
";

    #[test]
    fn parses_a_full_file() {
        let input = parse_input(GOOD).unwrap();
        assert_eq!(input.phi.rows(), 4);
        assert_eq!(input.phi.cols(), 3);
        assert_eq!(input.declared_u, Some(1));
        assert_eq!(input.point.as_ref().map(Vec::len), Some(3));
        assert_eq!(input.phi.entry(1, 2).to_string(), "0");
        assert_eq!(input.phi.entry(3, 0).to_string(), "x2 + x3");
    }

    #[test]
    fn rejects_unknown_directives_and_bad_names() {
        assert!(parse_input("field 7\nvars x y\nrow x, y\nrow y, x\nrow x, x\nfoo 1")
            .unwrap_err()
            .contains("unknown directive"));
        assert!(parse_input("field 7\nvars t1 x\nrow x, t1\nrow t1, x")
            .unwrap_err()
            .contains("reserved"));
        assert!(parse_input("field 9\nvars x y\nrow x, y")
            .unwrap_err()
            .contains("not prime"));
    }

    #[test]
    fn rejects_ragged_and_nonlinear_rows() {
        assert!(parse_input("field 7\nvars x y\nrow x, y\nrow x")
            .unwrap_err()
            .contains("expected 2"));
        let e = parse_input("field 7\nvars x y\nrow x*y, y\nrow x, y\nrow y, x").unwrap_err();
        assert!(e.contains("not zero or a homogeneous linear form"), "{e}");
    }

    #[test]
    fn point_length_must_match() {
        let e = parse_input("field 7\nvars x y\nrow x, y\nrow y, x\nrow x, x\npoint 1 0 0")
            .unwrap_err();
        assert!(e.contains("expected 2"), "{e}");
    }
}
