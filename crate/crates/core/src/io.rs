//! Plain-text matrices and the JSON shapes used for winners and constraint systems.
//!
//! Text format: a header line `rows cols`, then one line per row; `-inf` is ⊥.
//! Blank lines and `#` comments are ignored. JSON numbers are exact strings.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::commutant::Winner;
use crate::error::{Error, Result};
use crate::ext::{Bottom, ExtReal};
use crate::matrix::TropMatrix;
use crate::polytope::DiffConstraintSystem;
use crate::scalar::Scalar;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses the text format; errors carry 1-based line numbers.
pub fn parse_matrix<T: Scalar>(text: &str) -> Result<TropMatrix<T>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `rows cols` header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(hline, format!("header needs two integers, found `{header}`")));
    }
    let dim = |s: &str| s.parse::<usize>().map_err(|_| parse_err(hline, format!("bad dimension `{s}`")));
    let (rows, cols) = (dim(dims[0])?, dim(dims[1])?);

    let mut entries = Vec::with_capacity(rows * cols);
    let mut last = hline;
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {rows} rows, found {r}")))?;
        last = ln;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(parse_err(ln, format!("expected {cols} entries, found {}", tokens.len())));
        }
        for tok in tokens {
            let v = ExtReal::parse(tok).ok_or_else(|| parse_err(ln, format!("bad entry `{tok}`")))?;
            entries.push(v);
        }
    }
    if let Some((ln, line)) = lines.next() {
        return Err(parse_err(ln, format!("unexpected trailing line `{line}`")));
    }
    TropMatrix::new(rows, cols, entries)
}

pub fn read_matrix<T: Scalar>(path: impl AsRef<Path>) -> Result<TropMatrix<T>> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// Serialises to the text format. Integers round-trip exactly.
pub fn write_matrix<T: Scalar>(m: &TropMatrix<T>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|e| e.to_exact_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Rows of exact strings.
pub fn matrix_to_json<T: Scalar>(m: &TropMatrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.to_exact_string())).collect()))
            .collect(),
    )
}

fn json_err(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn scalar_from_json<T: Scalar>(v: &Value) -> Result<ExtReal<T>> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(json_err(format!("expected a number, got {other}"))),
    };
    ExtReal::parse(&text).ok_or_else(|| json_err(format!("bad number `{text}`")))
}

fn index_from_json(v: &Value, n: usize, what: &str) -> Result<usize> {
    let k = v.as_u64().ok_or_else(|| json_err(format!("{what} must be a positive integer")))? as usize;
    if k == 0 || k > n {
        return Err(json_err(format!("{what} = {k} outside 1..={n}")));
    }
    Ok(k - 1)
}

/// `{"n": 4, "entries": {"1,2": [1, 1], ...}}`, 1-based.
pub fn winner_to_json(w: &Winner) -> Value {
    let mut entries = Map::new();
    for ((i, j), (a, b)) in w.iter() {
        entries.insert(format!("{},{}", i + 1, j + 1), json!([a + 1, b + 1]));
    }
    json!({ "n": w.order(), "entries": entries })
}

/// Positions missing from `entries` default to the trivial choice `(i, j)`.
pub fn winner_from_json(v: &Value) -> Result<Winner> {
    let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| json_err("winner needs `n`"))? as usize;
    let entries = v.get("entries").and_then(Value::as_object).ok_or_else(|| json_err("winner needs `entries`"))?;
    let mut w = Winner::identity(n);
    for (key, val) in entries {
        let (i, j) = key.split_once(',').ok_or_else(|| json_err(format!("bad key `{key}`")))?;
        let parse = |s: &str| -> Result<usize> {
            let k: usize = s.trim().parse().map_err(|_| json_err(format!("bad key `{key}`")))?;
            index_from_json(&json!(k), n, "index")
        };
        let (i, j) = (parse(i)?, parse(j)?);
        let pair = val.as_array().filter(|a| a.len() == 2).ok_or_else(|| json_err(format!("`{key}` needs a pair")))?;
        let a = index_from_json(&pair[0], n, "winner index")?;
        let b = index_from_json(&pair[1], n, "winner index")?;
        w.set(i, j, (a, b))?;
    }
    Ok(w)
}

fn upper_json<T: Scalar>(hi: &Option<T>) -> Value {
    match hi {
        Some(v) => Value::String(v.to_exact_string()),
        None => Value::Null,
    }
}

/// `{"nvars", "vars", "box": [[lo, hi], ...], "diff": [{"i","k","lo","hi"}, ...]}`;
/// a missing lower bound is `"-inf"`, a missing upper bound is `null`.
pub fn system_to_json<T: Scalar>(s: &DiffConstraintSystem<T>) -> Value {
    let n = s.nvars();
    let boxes: Vec<Value> = (0..n)
        .map(|k| {
            let (lo, hi) = s.box_bounds(k);
            json!([lo.to_exact_string(), upper_json(&hi)])
        })
        .collect();
    let mut diffs = Vec::new();
    for i in 0..n {
        for k in i + 1..n {
            let (lo, hi) = s.diff_bounds(i, k);
            if lo.is_bottom() && hi.is_none() {
                continue;
            }
            diffs.push(json!({ "i": i + 1, "k": k + 1, "lo": lo.to_exact_string(), "hi": upper_json(&hi) }));
        }
    }
    json!({ "nvars": n, "vars": s.names(), "box": boxes, "diff": diffs })
}

fn upper_from_json<T: Scalar>(v: &Value) -> Result<Option<T>> {
    match v {
        Value::Null => Ok(None),
        other => match scalar_from_json::<T>(other)? {
            Bottom => Err(json_err("upper bound cannot be -inf")),
            ExtReal::Finite(x) => Ok(Some(x)),
        },
    }
}

pub fn system_from_json<T: Scalar>(v: &Value) -> Result<DiffConstraintSystem<T>> {
    let n = v.get("nvars").and_then(Value::as_u64).ok_or_else(|| json_err("system needs `nvars`"))? as usize;
    let names: Vec<String> = match v.get("vars") {
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(|| json_err("`vars` must hold strings")))
            .collect::<Result<_>>()?,
        None | Some(Value::Null) => (1..=n).map(|k| format!("y_{k}")).collect(),
        Some(_) => return Err(json_err("`vars` must be an array")),
    };
    if names.len() != n {
        return Err(json_err(format!("`vars` has {} names for {n} variables", names.len())));
    }
    let mut s = DiffConstraintSystem::unconstrained(names);
    if let Some(boxes) = v.get("box") {
        let boxes = boxes.as_array().ok_or_else(|| json_err("`box` must be an array"))?;
        if boxes.len() != n {
            return Err(json_err(format!("`box` has {} entries for {n} variables", boxes.len())));
        }
        for (k, b) in boxes.iter().enumerate() {
            let pair = b.as_array().filter(|a| a.len() == 2).ok_or_else(|| json_err("box entries are [lo, hi]"))?;
            if let ExtReal::Finite(lo) = scalar_from_json::<T>(&pair[0])? {
                s.require_lower(k, lo);
            }
            if let Some(hi) = upper_from_json::<T>(&pair[1])? {
                s.require_upper(k, hi);
            }
        }
    }
    if let Some(diffs) = v.get("diff") {
        let diffs = diffs.as_array().ok_or_else(|| json_err("`diff` must be an array"))?;
        for d in diffs {
            let field = |name: &str| d.get(name).ok_or_else(|| json_err(format!("diff entry needs `{name}`")));
            let i = index_from_json(field("i")?, n, "i")?;
            let k = index_from_json(field("k")?, n, "k")?;
            if i == k {
                return Err(json_err("diff entry with i = k"));
            }
            if let ExtReal::Finite(lo) = scalar_from_json::<T>(d.get("lo").unwrap_or(&Value::Null)).or_else(
                |e| if d.get("lo").map_or(true, Value::is_null) { Ok(Bottom) } else { Err(e) },
            )? {
                s.require_diff_lower(i, k, lo);
            }
            if let Some(hi) = upper_from_json::<T>(d.get("hi").unwrap_or(&Value::Null))? {
                s.require_diff_upper(i, k, hi);
            }
        }
    }
    Ok(s)
}
