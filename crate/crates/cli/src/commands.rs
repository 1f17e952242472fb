//! Subcommand implementations. Each produces a [`Report`]: a JSON value, a
//! text rendering of it, and whether every checked assertion held.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use tropcomm::commutant::{self, neigh_identity_box, neigh_zero_box, omega_w_dim_bound, omega_w_empty_quick};
use tropcomm::io::{self, matrix_to_json, system_to_json};
use tropcomm::oracle::run_grid_oracle;
use tropcomm::perturb::{self, ClauseOutcome, PerturbationSpec};
use tropcomm::polytope::{self, upper_set_system, Relabeling};
use tropcomm::section::section_complex;
use tropcomm::svg::{write_svg, RenderOptions};
use tropcomm::{sample, ExtRat, Matrix, Rat, Scalar, DiffConstraintSystem};

use crate::{Cli, Command, Format, PerturbCommand};

pub struct Report {
    pub ok: bool,
    pub json: Value,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { ok: true, json }
    }

    pub fn emit(&self, cli: &Cli) -> Result<()> {
        let body = match cli.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json)?),
            Format::Text => to_text(&self.json),
        };
        match &cli.out {
            Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

fn is_matrix(v: &Value) -> bool {
    matches!(v, Value::Array(rows) if !rows.is_empty()
        && rows.iter().all(|r| matches!(r, Value::Array(c) if c.iter().all(Value::is_string))))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines; matrices are printed in the text matrix format.
fn to_text(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{}\n", scalar_text(v));
    };
    for (key, value) in map {
        if is_matrix(value) {
            let rows = value.as_array().expect("matrix");
            let cols = rows[0].as_array().map_or(0, Vec::len);
            out.push_str(&format!("{key}:\n{} {cols}\n", rows.len()));
            for r in rows {
                let cells: Vec<String> = r.as_array().expect("row").iter().map(scalar_text).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        } else if let Value::Array(items) = value {
            if items.iter().all(|i| i.is_object()) && !items.is_empty() {
                out.push_str(&format!("{key}:\n"));
                for item in items {
                    let parts: Vec<String> = item
                        .as_object()
                        .expect("object")
                        .iter()
                        .filter(|(_, v)| !v.is_null())
                        .map(|(k, v)| format!("{k}={}", if v.is_object() || v.is_array() { v.to_string() } else { scalar_text(v) }))
                        .collect();
                    out.push_str(&format!("  {}\n", parts.join(" ")));
                }
            } else {
                out.push_str(&format!("{key}: {}\n", items.iter().map(scalar_text).collect::<Vec<_>>().join(" ")));
            }
        } else if value.is_null() {
            continue;
        } else if value.is_object() {
            out.push_str(&format!("{key}: {value}\n"));
        } else {
            out.push_str(&format!("{key}: {}\n", scalar_text(value)));
        }
    }
    out
}

fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_matrix(&text).with_context(|| path.display().to_string())
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| path.display().to_string())
}

fn parse_scalar(token: &str) -> Result<Rat> {
    Rat::parse_decimal(token.trim()).ok_or_else(|| anyhow!("bad number `{token}`"))
}

fn parse_list(text: &str) -> Result<Vec<Rat>> {
    text.split(',').map(parse_scalar).collect()
}

fn parse_ext_list(text: &str) -> Result<Vec<ExtRat>> {
    text.split(',').map(|t| ExtRat::parse(t).ok_or_else(|| anyhow!("bad entry `{t}`"))).collect()
}

fn strings(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_exact_string())).collect())
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::CheckCommute { a, x } => check_commute(&read_matrix(a)?, &read_matrix(x)?),
        Command::Kleene { a } => Ok(Report::ok(json!({ "star": matrix_to_json(&read_matrix(a)?.kleene_star()?) }))),
        Command::Pow { a, k } => Ok(Report::ok(json!({ "power": matrix_to_json(&read_matrix(a)?.mat_pow(*k)?) }))),
        Command::Underline { a } => {
            Ok(Report::ok(json!({ "underline": matrix_to_json(&polytope::compute_underline(&read_matrix(a)?)?) })))
        }
        Command::Overline { a, dump_h, dump_hstar } => overline(&read_matrix(a)?, *dump_h, *dump_hstar),
        Command::Dim { a } => {
            let a = read_matrix(a)?;
            let sys = upper_set_system(&a, &Relabeling::row_major(a.order()?))?;
            Ok(Report::ok(json!({ "dim": polytope::polytope_dim(&sys)? })))
        }
        Command::OmegaW { a, winner } => omega_w(&read_matrix(a)?, &read_json(winner)?),
        Command::Feasible { system } => feasible(&read_json(system)?, cli.seed),
        Command::NeighTest { a, samples } => neigh_test(&read_matrix(a)?, *samples, cli.seed),
        Command::Perturb(cmd) => perturb_cmd(cmd, cli.seed),
        Command::SpanMember { a, point } => span_member(&read_matrix(a)?, point),
        Command::SpanContains { a, b } => {
            let c = tropcomm::span_contains(&read_matrix(a)?, &read_matrix(b)?)?;
            Ok(Report::ok(json!({ "contains": c.contains, "failing_column": c.failing_column.map(|j| j + 1) })))
        }
        Command::Render { matrices, output, labels } => render(matrices, output, labels),
        Command::GridOracle { a, alphabet, cap } => grid_oracle(&read_matrix(a)?, alphabet, *cap),
        Command::PaperSuite => {
            let rows = crate::suite::run_all();
            let ok = rows.iter().all(|r| r.passed);
            let items: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "check": r.name, "status": if r.passed { "PASS" } else { "FAIL" }, "detail": r.detail }))
                .collect();
            let passed = rows.iter().filter(|r| r.passed).count();
            Ok(Report { ok, json: json!({ "passed": passed, "total": rows.len(), "checks": items }) })
        }
    }
}

fn check_commute(a: &Matrix, x: &Matrix) -> Result<Report> {
    let rep = commutant::commutes(a, x)?;
    let mut out = Map::new();
    out.insert("commutes".into(), json!(rep.commutes));
    if let Some(p) = &rep.product {
        out.insert("product".into(), matrix_to_json(p));
    } else {
        out.insert("ax".into(), matrix_to_json(&a.mat_mul(x)?));
        out.insert("xa".into(), matrix_to_json(&x.mat_mul(a)?));
    }
    out.insert("in_omega_A".into(), json!(rep.in_omega_a));
    out.insert("in_omega_prime".into(), json!(rep.in_omega_prime));
    let count = rep.witnesses.as_ref().map_or(0, |w| w.count());
    out.insert("witness_count".into(), Value::String(count.to_string()));
    if let Some(w) = &rep.witnesses {
        out.insert("witness".into(), io::winner_to_json(&w.first()));
    }
    Ok(Report::ok(Value::Object(out)))
}

fn overline(a: &Matrix, dump_h: bool, dump_hstar: bool) -> Result<Report> {
    let n = a.order()?;
    let mut out = Map::new();
    out.insert("overline".into(), matrix_to_json(&polytope::compute_overline(a)?));
    if dump_h || dump_hstar {
        let sys = upper_set_system(a, &Relabeling::row_major(n))?;
        out.insert("vars".into(), json!(sys.names()));
        if dump_h {
            out.insert("h".into(), matrix_to_json(sys.matrix()));
        }
        if dump_hstar {
            out.insert("hstar".into(), matrix_to_json(sys.tighten()?.matrix()));
        }
    }
    Ok(Report::ok(Value::Object(out)))
}

fn omega_w(a: &Matrix, winner: &Value) -> Result<Report> {
    let w = io::winner_from_json(winner)?;
    let sys = commutant::omega_w_system(a, &w)?;
    let mut out = system_to_json(&sys);
    let obj = out.as_object_mut().expect("system object");
    obj.insert("empty".into(), json!(sys.is_empty()));
    obj.insert("quick_empty".into(), json!(omega_w_empty_quick(a, &w)?));
    obj.insert("dim_bound".into(), json!(omega_w_dim_bound(&w)));
    Ok(Report::ok(out))
}

fn feasible(system: &Value, seed: u64) -> Result<Report> {
    let sys: DiffConstraintSystem<Rat> = io::system_from_json(system)?;
    if sys.is_empty() {
        return Ok(Report::ok(json!({ "feasible": false })));
    }
    let tight = sys.tighten()?;
    let point = sys.sample_point(seed).ok_or_else(|| anyhow!("no sample point in a feasible system"))?;
    Ok(Report::ok(json!({
        "feasible": true,
        "dim": polytope::polytope_dim(&sys)?,
        "sample": strings(&point),
        "tightened": system_to_json(&tight),
    })))
}

fn neigh_test(a: &Matrix, samples: usize, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = neigh_identity_box(a)?;
    let mut failures = Vec::new();
    for _ in 0..samples {
        let x = sample::sample_box(&lo, &hi, &mut rng);
        if a.mat_mul(&x)? != *a || x.mat_mul(a)? != *a {
            failures.push(matrix_to_json(&x));
        }
    }
    let identity = json!({ "samples": samples, "failures": failures.len(), "first_failure": failures.first() });
    let mut ok = failures.is_empty();
    let zero = if a.is_strictly_normal() {
        let (lo, hi) = neigh_zero_box(a)?;
        let mut failures = Vec::new();
        for _ in 0..samples {
            let x = sample::sample_box(&lo, &hi, &mut rng);
            if a.mat_mul(&x)? != x || x.mat_mul(a)? != x {
                failures.push(matrix_to_json(&x));
            }
        }
        ok &= failures.is_empty();
        json!({ "samples": samples, "failures": failures.len(), "first_failure": failures.first() })
    } else {
        json!({ "skipped": "matrix is not strictly normal" })
    };
    Ok(Report { ok, json: json!({ "identity_box": identity, "zero_box": zero }) })
}

fn clause_json(c: &ClauseOutcome<Rat>) -> Value {
    match c {
        ClauseOutcome::Skipped(why) => json!({ "status": "skipped", "reason": why }),
        ClauseOutcome::Checked(c) => json!({
            "status": if c.passed { "passed" } else { "failed" },
            "forward": matrix_to_json(&c.forward),
            "backward": matrix_to_json(&c.backward),
            "expected": matrix_to_json(&c.expected),
        }),
    }
}

fn perturb_cmd(cmd: &PerturbCommand, seed: u64) -> Result<Report> {
    match cmd {
        PerturbCommand::MakeP(b) => {
            let m = perturb::make_p(&parse_list(&b.p)?, &parse_scalar(&b.eps)?)?;
            Ok(Report::ok(json!({ "p": matrix_to_json(&m) })))
        }
        PerturbCommand::MakeQ(b) => {
            let m = perturb::make_q(&parse_list(&b.p)?, &parse_scalar(&b.eps)?)?;
            Ok(Report::ok(json!({ "q": matrix_to_json(&m) })))
        }
        PerturbCommand::Check { p, delta, eps } => {
            let spec = PerturbationSpec::new(parse_list(p)?, parse_scalar(eps)?, parse_scalar(delta)?)?;
            let rep = perturb::check_pq_theorem(&spec)?;
            Ok(Report {
                ok: !rep.any_failed(),
                json: json!({
                    "hypothesis": spec.hypothesis_holds(),
                    "p_clause": clause_json(&rep.p_clause),
                    "q_clause": clause_json(&rep.q_clause),
                }),
            })
        }
        PerturbCommand::BoxPair { r, n } => {
            let (a, b) = perturb::make_box_pair(&parse_scalar(r)?, *n, seed)?;
            let criterion = commutant::max_product_criterion(&a, &b)?;
            let sum = a.mat_add(&b)?;
            let ok = criterion && a.mat_mul(&b)? == sum && b.mat_mul(&a)? == sum;
            Ok(Report {
                ok,
                json: json!({ "a": matrix_to_json(&a), "b": matrix_to_json(&b), "sum": matrix_to_json(&sum), "criterion": criterion }),
            })
        }
    }
}

fn span_member(a: &Matrix, point: &str) -> Result<Report> {
    let x = parse_list(point)?;
    let m = tropcomm::span_member(a, &x)?;
    Ok(Report::ok(json!({ "member": m.member, "certificate": strings(&m.certificate), "image": strings(&m.image) })))
}

fn render(paths: &[std::path::PathBuf], output: &Path, labels: &[String]) -> Result<Report> {
    let mut sections = Vec::new();
    let mut panels = Vec::new();
    for (k, path) in paths.iter().enumerate() {
        let a = read_matrix(path)?;
        if a.rows() != 3 || a.cols() != 3 {
            bail!("{}: rendering needs 3x3 matrices", path.display());
        }
        let s = section_complex(&a)?;
        let gens: Vec<Value> = s.generators.iter().map(|g| json!([g.x.to_exact_string(), g.y.to_exact_string()])).collect();
        panels.push(json!({
            "input": path.display().to_string(),
            "label": labels.get(k),
            "generators": gens,
            "vertices": s.vertices.len(),
            "edges": s.edges.len(),
            "faces": s.faces.len(),
            "cells": { "2": s.cell_count(2), "1": s.cell_count(1), "0": s.cell_count(0) },
            "connected": s.is_connected(),
        }));
        sections.push(s);
    }
    write_svg(&sections, output, &RenderOptions { labels: labels.to_vec() })
        .with_context(|| format!("writing {}", output.display()))?;
    Ok(Report::ok(json!({ "output": output.display().to_string(), "panels": panels })))
}

fn grid_oracle(a: &Matrix, alphabet: &str, cap: u64) -> Result<Report> {
    let alpha = parse_ext_list(alphabet)?;
    let r = run_grid_oracle(a, &alpha, cap)?;
    let checks: Vec<Value> = r.checked.iter().map(|(c, k)| json!({ "check": c.name(), "applied": k })).collect();
    let violations: Vec<Value> = r
        .violations
        .iter()
        .map(|v| json!({ "check": v.check.name(), "index": v.index, "x": matrix_to_json(&v.x) }))
        .collect();
    Ok(Report {
        ok: r.passed(),
        json: json!({
            "a": matrix_to_json(&r.a),
            "alphabet": r.alphabet.iter().map(|v| v.to_exact_string()).collect::<Vec<_>>(),
            "candidates": r.candidates,
            "commuting": r.commuting,
            "omega_A": r.omega_a,
            "omega_prime": r.omega_prime,
            "winners": r.winners,
            "zero_commutes": r.zero_commutes,
            "identity_commutes": r.identity_commutes,
            "checks": checks,
            "violations": violations,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_of_reports() {
        let v = json!({ "m": [["0", "-inf"], ["-1", "0"]], "ok": true, "none": null, "xs": ["1", "2"] });
        assert_eq!(to_text(&v), "m:\n2 2\n0 -inf\n-1 0\nok: true\nxs: 1 2\n");
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("1, -2.5,3/4").unwrap().len(), 3);
        assert!(parse_list("1,,2").is_err());
        assert_eq!(parse_ext_list("0,-inf").unwrap()[1], ExtRat::Bottom);
    }
}
