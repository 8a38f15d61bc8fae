//! WebAssembly entry points for the static demo page `index.html`.
//!
//! Every function takes plain text and returns a JSON string, either the
//! result or `{"error": "..."}`, so the page needs no bindings beyond strings.

use serde_json::{json, Value};
use twistcode::chartab::compute_table;
use twistcode::ctbl_io::{parse_matrep, parse_permgroup, parse_table_with};
use twistcode::twist::{
    app_pairs, code_report, orbit_representatives, signature_of, sp_weil_params, su_weil_params, AppOptions, Family,
};
use twistcode::verifier::{analyse, DEFAULT_EXPANSION_CAP};
use twistcode::CharacterTable;
use wasm_bindgen::prelude::*;

// Browser tabs are single-threaded and slow to fail, so the demo refuses
// groups that would take long to enumerate.
const DEMO_GROUP_CAP: u128 = 20_000;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn header(text: &str) -> &str {
    text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("")
}

/// Table plus the defining character when the input is a matrix group.
fn load(text: &str, validate: bool) -> Result<(CharacterTable, Option<usize>), String> {
    let h = header(text);
    if h.starts_with("CTBL") {
        Ok((parse_table_with(text, validate).map_err(|e| e.to_string())?, None))
    } else if h.starts_with("PERMGROUP") {
        let g = parse_permgroup(text).map_err(|e| e.to_string())?;
        if g.order() > DEMO_GROUP_CAP {
            return Err(format!("group of order {} is too large for the demo", g.order()));
        }
        Ok((compute_table(&g).map_err(|e| e.to_string())?, None))
    } else if h.starts_with("MATREP") {
        let rep = parse_matrep(text).map_err(|e| e.to_string())?;
        let a = analyse(&rep, DEFAULT_EXPANSION_CAP).map_err(|e| e.to_string())?;
        Ok((a.table, Some(a.f_row)))
    } else {
        Err("expected a CTBL, PERMGROUP or MATREP header".into())
    }
}

fn table_summary(t: &CharacterTable) -> Value {
    let rows: Vec<Value> = (0..t.n_characters())
        .map(|r| {
            json!({
                "signature": signature_of(t, r).to_string(),
                "values": t.characters[r].iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "group": t.name,
        "order": t.order.to_string(),
        "class_sizes": t.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "element_orders": t.element_orders,
        "validated": t.validated,
        "characters": rows,
    })
}

/// Parses and validates a table, or computes one from generators.
#[wasm_bindgen]
pub fn character_table(text: &str, validate: bool) -> String {
    respond(load(text, validate).map(|(t, _)| table_summary(&t)))
}

/// APP pairs of a table or group with the smallest code of each orbit.
#[wasm_bindgen]
pub fn app_report(text: &str, n_max: u32) -> String {
    respond((|| {
        let (t, f_row) = load(text, true)?;
        let pairs: Vec<_> = app_pairs(&t, AppOptions { include_trivial: false, n_max })
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|p| f_row.map_or(true, |f| p.f == f))
            .collect();
        let codes = orbit_representatives(&pairs)
            .into_iter()
            .map(|p| code_report(&t, p, 6).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let labelled: Vec<Value> = codes
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).expect("serializable");
                v["label"] = json!(c.label());
                v
            })
            .collect();
        Ok(json!({ "group": t.name, "order": t.order.to_string(), "pairs": pairs.len(), "codes": labelled }))
    })())
}

/// Weil character degrees and code parameters for `sp` or `su`.
#[wasm_bindgen]
pub fn weil_parameters(family: &str, b: u32) -> String {
    respond((|| {
        if b == 0 {
            return Err("b must be positive".to_string());
        }
        let p = match family.parse::<Family>()? {
            Family::Sp2b3 => sp_weil_params(b),
            Family::SUb2 => su_weil_params(b),
        };
        serde_json::to_value(p).map_err(|e| e.to_string())
    })())
}
