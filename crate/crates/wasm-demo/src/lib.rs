//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string: `{"ok": true, ...}` on success and
//! `{"ok": false, "error": "..."}` otherwise, so the page never has to catch.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use rescomp::complexes::{buchsbaum_eisenbud_exact, cohen_macaulay_check, free_resolution};
use rescomp::parser::{parse_polynomial, parse_session_with};
use rescomp::residue::hickel_test;
use rescomp::session::{emit_report, run_session, OutputFormat, SessionOptions};
use rescomp::{Ideal, MonomialOrder, Polynomial, Ring};

fn respond<T: Serialize>(r: Result<T, String>) -> String {
    let v = match r {
        Ok(body) => {
            let mut v = serde_json::to_value(body).unwrap_or(Value::Null);
            if let Value::Object(m) = &mut v {
                m.insert("ok".into(), Value::Bool(true));
            }
            v
        }
        Err(e) => json!({ "ok": false, "error": e }),
    };
    v.to_string()
}

fn ring_and_polys(vars: &str, polys: &str, order: &str) -> Result<(std::sync::Arc<Ring>, Vec<Polynomial>), String> {
    let order: MonomialOrder = order.parse().map_err(|e: rescomp::AlgebraError| e.to_string())?;
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let ring = Ring::new(names, order).map_err(|e| e.to_string())?;
    let ps = polys
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_polynomial(s, &ring).map_err(|e| format!("`{s}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if ps.is_empty() {
        return Err("no polynomials given".into());
    }
    Ok((ring, ps))
}

/// Minimal free resolution of the ideal, its exactness report and the
/// Cohen–Macaulay verdict. `vars` and `generators` are comma-separated.
#[wasm_bindgen]
pub fn resolve(vars: &str, generators: &str, order: &str) -> String {
    respond((|| {
        let (ring, gens) = ring_and_polys(vars, generators, order)?;
        let ideal = Ideal::new(&ring, gens).map_err(|e| e.to_string())?;
        let e = free_resolution(&ideal, None).map_err(|e| e.to_string())?;
        let exact = buchsbaum_eisenbud_exact(&e).map_err(|e| e.to_string())?;
        let cm = cohen_macaulay_check(&ideal).map_err(|e| e.to_string())?;
        Ok(json!({
            "ranks": e.ranks(),
            "maps": e.maps().iter().map(|m| m.to_strings()).collect::<Vec<_>>(),
            "exact": exact.exact,
            "expected_ranks": exact.expected_ranks,
            "cm": cm,
        }))
    })())
}

/// Jacobian determinant of an `n`-tuple and whether it lies in the ideal.
#[wasm_bindgen]
pub fn jacobian_test(vars: &str, polys: &str, order: &str) -> String {
    respond((|| {
        let (_, f) = ring_and_polys(vars, polys, order)?;
        let v = hickel_test(&f).map_err(|e| e.to_string())?;
        Ok(json!({
            "jacobian": v.jacobian.to_string(),
            "codim": v.codim,
            "member": v.member,
            "certificate": v.certificate.map(|c| c.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        }))
    })())
}

/// Runs a full session script; `text` carries the plain-text report and
/// `document` the structured one.
#[wasm_bindgen]
pub fn run_script(src: &str, order: &str) -> String {
    respond((|| {
        let order: MonomialOrder = order.parse().map_err(|e: rescomp::AlgebraError| e.to_string())?;
        let cmds = parse_session_with(src, order).map_err(|e| format!("line {e}"))?;
        let (run, error) = match run_session(&cmds, SessionOptions::default()) {
            Ok(r) => (r, None),
            Err(f) => (f.partial, Some(f.error)),
        };
        let text = emit_report(&run, error.as_ref(), OutputFormat::Text);
        let doc: Value = serde_json::from_str(&emit_report(&run, error.as_ref(), OutputFormat::Json))
            .map_err(|e| e.to_string())?;
        Ok(json!({ "text": text, "document": doc }))
    })())
}
