use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};
use twistcode::ctbl_io::{parse_matrep, parse_table_with, write_table};
use twistcode::twist::{
    app_pairs, code_report, haar_moment, is_twisted_1group, min_n, orbit_representatives, signature_of,
    sp_weil_params, su_weil_params, AppOptions, Family, FamilyParams, Signature,
};
use twistcode::verifier::{analyse, certify, CertifyOptions, DEFAULT_EXPANSION_CAP};
use twistcode::CharacterTable;

use crate::input::{self, CliError};
use crate::{Format, Options};

/// A command result in all three output formats.
pub struct Output {
    json: Value,
    text: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).map(|s| s + "\n").map_err(|e| e.to_string()),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for r in &self.rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
        }
    }
}

fn strings<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn parse_sig(s: &str) -> Result<Signature, CliError> {
    Ok(s.parse::<Signature>()?)
}

pub fn table(path: &Path, cap: Option<u64>, opts: &Options) -> Result<Output, CliError> {
    let t = input::load(path, !opts.no_validate, cap)?.table;
    let ctbl = write_table(&t);
    let degrees: Vec<String> = t.degrees().iter().map(|d| d.to_string()).collect();
    let mut header = strings(["character", "signature"]);
    header.extend((1..=t.n_classes()).map(|c| format!("class{c}")));
    let rows = (0..t.n_characters())
        .map(|r| {
            let mut row = vec![(r + 1).to_string(), signature_of(&t, r).to_string()];
            row.extend(t.characters[r].iter().map(|v| v.to_string()));
            row
        })
        .collect();
    Ok(Output {
        json: json!({
            "group": t.name,
            "order": t.order.to_string(),
            "classes": t.n_classes(),
            "class_sizes": t.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "element_orders": t.element_orders,
            "degrees": degrees,
            "validated": t.validated,
            "ctbl": ctbl,
        }),
        text: ctbl,
        header,
        rows,
    })
}

pub fn app(path: &Path, f: Option<&str>, opts: &Options) -> Result<Output, CliError> {
    let loaded = input::load(path, !opts.no_validate, None)?;
    let t = &loaded.table;
    let f_rows = match f {
        Some(s) => Some(parse_sig(s)?.resolve_all(t)?),
        None => loaded.f_row.map(|r| vec![r]),
    };
    let pairs: Vec<_> = app_pairs(t, AppOptions { include_trivial: opts.include_trivial, n_max: opts.n_max })?
        .into_iter()
        .filter(|p| f_rows.as_ref().map_or(true, |rows| rows.contains(&p.f)))
        .collect();
    let codes = orbit_representatives(&pairs)
        .into_iter()
        .map(|p| code_report(t, p, opts.t_max))
        .collect::<Result<Vec<_>, _>>()?;

    let mut text = format!("{} (order {}): {} orbit(s) of APP pairs\n", t.name, t.order, codes.len());
    let mut rows = Vec::new();
    for c in &codes {
        let physical = c.n.map_or("-".to_string(), |n| format!("{}^{n}", c.q));
        let _ = writeln!(
            text,
            "  f={} lambda={} {} N={} |G_T|={} unitary_t={} twisted_2={} multiplicity={}",
            c.f_signature,
            c.lambda_signature,
            c.label(),
            physical,
            c.transversal_order,
            c.unitary_t,
            if c.twisted_2_moment_passes { "pass" } else { "fail" },
            c.multiplicity,
        );
        rows.push(vec![
            c.group.clone(),
            c.group_order.to_string(),
            c.f_signature.clone(),
            c.lambda_signature.clone(),
            c.q.to_string(),
            c.k.to_string(),
            c.n.map_or(String::new(), |n| n.to_string()),
            c.d.to_string(),
            physical,
            c.transversal_order.to_string(),
            c.multiplicity.to_string(),
            c.unitary_t.to_string(),
            c.twisted_2_moment_passes.to_string(),
            c.orbit_id.to_string(),
        ]);
    }
    Ok(Output {
        json: json!({
            "group": t.name,
            "order": t.order.to_string(),
            "f_restricted_to": f_rows.map(|rows| rows.iter().map(|&r| signature_of(t, r).to_string()).collect::<Vec<_>>()),
            "pairs": pairs,
            "codes": codes,
        }),
        text,
        header: strings([
            "group",
            "order",
            "f",
            "lambda",
            "q",
            "K",
            "n",
            "d",
            "N",
            "transversal_order",
            "multiplicity",
            "unitary_t",
            "twisted_2_moment",
            "orbit",
        ]),
        rows,
    })
}

pub fn minn(path: &Path, f: &str, lambda: &str, opts: &Options) -> Result<Output, CliError> {
    let t = input::load(path, !opts.no_validate, None)?.table;
    let fs = parse_sig(f)?.resolve_all(&t)?;
    let ls = parse_sig(lambda)?.resolve_all(&t)?;
    let mut results = Vec::new();
    let mut text = String::new();
    let mut rows = Vec::new();
    for &fr in &fs {
        for &lr in &ls {
            let m = min_n(&t, fr, lr, opts.n_max)?;
            let (fsig, lsig) = (signature_of(&t, fr).to_string(), signature_of(&t, lr).to_string());
            let _ = writeln!(text, "f={fsig} lambda={lsig} min_n={m}");
            rows.push(vec![fsig.clone(), lsig.clone(), m.n().map_or(String::new(), |n| n.to_string()), m.to_string()]);
            results.push(json!({ "f": fsig, "lambda": lsig, "min_n": m }));
        }
    }
    Ok(Output {
        json: json!({ "group": t.name, "n_max": opts.n_max, "results": results }),
        text,
        header: strings(["f", "lambda", "n", "status"]),
        rows,
    })
}

fn check_consistent(computed: &CharacterTable, given: &CharacterTable) -> Result<(), CliError> {
    let sorted = |v: Vec<String>| {
        let mut v = v;
        v.sort();
        v
    };
    let sizes = |t: &CharacterTable| sorted(t.class_sizes.iter().map(|s| s.to_string()).collect());
    let degrees = |t: &CharacterTable| sorted(t.degrees().iter().map(|s| s.to_string()).collect());
    if computed.order != given.order || sizes(computed) != sizes(given) || degrees(computed) != degrees(given) {
        return Err(CliError::new(
            "table_mismatch",
            format!(
                "table `{}` (order {}) does not match the matrix group (order {})",
                given.name, given.order, computed.order
            ),
        ));
    }
    Ok(())
}

pub fn verify(
    path: &Path,
    lambda: &str,
    n: usize,
    table: Option<&Path>,
    weight: usize,
    opts: &Options,
) -> Result<Output, CliError> {
    let (kind, text) = input::read(path)?;
    if kind != input::Kind::Rep {
        return Err(CliError::new("parse", format!("{}: verify needs a MATREP file", path.display())));
    }
    let rep = parse_matrep(&text)?;
    let a = analyse(&rep, DEFAULT_EXPANSION_CAP)?;
    if let Some(tp) = table {
        let (_, ttext) = input::read(tp)?;
        check_consistent(&a.table, &parse_table_with(&ttext, !opts.no_validate)?)?;
    }
    let t = &a.table;
    let sig = parse_sig(lambda)?;
    let candidates = sig.resolve_all(t)?;
    // among several matches prefer the unique partner of f
    let chosen = if candidates.len() == 1 {
        candidates[0]
    } else {
        let partners: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&l| is_twisted_1group(t, a.f_row, l).unwrap_or(false))
            .collect();
        match partners.as_slice() {
            [one] => *one,
            _ => {
                let names: Vec<String> = candidates.iter().map(|&r| signature_of(t, r).to_string()).collect();
                return Err(CliError::new(
                    "ambiguous",
                    format!("`{lambda}` matches {}; pick one of {}", candidates.len(), names.join(", ")),
                ));
            }
        }
    };
    let cert = certify(&rep, &a, chosen, n, CertifyOptions { weight, tol: opts.tol, seed: opts.seed })?;
    let f_sig = signature_of(t, a.f_row).to_string();
    let l_sig = signature_of(t, chosen).to_string();
    let mut json = serde_json::to_value(&cert).map_err(|e| CliError::new("internal", e.to_string()))?;
    json["f"] = json!(f_sig);
    json["lambda"] = json!(l_sig);
    json["twisted_1group"] = json!(is_twisted_1group(t, a.f_row, chosen)?);

    let kl: Vec<String> = cert.kl_residual.iter().map(|r| format!("{r:.3e}")).collect();
    let mut text = String::new();
    let _ = writeln!(text, "{} f={f_sig} lambda={l_sig}: {}", cert.group, cert.label());
    let _ = writeln!(text, "  multiplicity {} (trace {:.6}), projector rank {}", cert.multiplicity, cert.projector_trace, cert.projector_rank);
    let _ = writeln!(text, "  idempotency residual {:.3e}, isometry residual {:.3e}", cert.idempotency_residual, cert.isometry_residual);
    let _ = writeln!(text, "  Knill-Laflamme residual by weight: {} (tol {:.3e})", kl.join(", "), cert.tol);
    let _ = writeln!(
        text,
        "  transversal residual {:.3e}; logical group order {} ({} up to phase)",
        cert.transversal_residual, cert.logical_group_order, cert.logical_group_order_projective
    );
    let row = vec![
        cert.group.clone(),
        f_sig,
        l_sig,
        cert.n.to_string(),
        cert.k.to_string(),
        cert.q.to_string(),
        cert.multiplicity.to_string(),
        cert.achieved_distance.to_string(),
        kl.join(" "),
        format!("{:.3e}", cert.transversal_residual),
        cert.logical_group_order.to_string(),
        cert.logical_group_order_projective.to_string(),
        format!("{:.3e}", cert.tol),
        cert.seed.to_string(),
    ];
    Ok(Output {
        json,
        text,
        header: strings([
            "group",
            "f",
            "lambda",
            "n",
            "K",
            "q",
            "multiplicity",
            "distance",
            "kl_residual",
            "transversal_residual",
            "logical_order",
            "logical_order_projective",
            "tol",
            "seed",
        ]),
        rows: vec![row],
    })
}

pub fn family(family: Family, b: u32) -> Output {
    let p: FamilyParams = match family {
        Family::Sp2b3 => sp_weil_params(b),
        Family::SUb2 => su_weil_params(b),
    };
    let name = match family {
        Family::Sp2b3 => format!("Sp({},3)", 2 * b),
        Family::SUb2 => format!("SU({b},2)"),
    };
    let degrees: Vec<String> = p.degrees.iter().map(|d| d.to_string()).collect();
    let k = p.k.as_ref().map_or("-".to_string(), |v| v.to_string());
    let q = p.q.as_ref().map_or("-".to_string(), |v| v.to_string());
    let text = if p.applicable {
        format!("{name}: Weil degrees {}; K={} q={}\n", degrees.join(", "), k, q)
    } else {
        format!("{name}: Weil degrees {}; no codes from this family (f is not faithful)\n", degrees.join(", "))
    };
    let row = vec![
        name,
        b.to_string(),
        degrees.join(" "),
        k,
        q,
        p.applicable.to_string(),
    ];
    Output {
        json: serde_json::to_value(&p).expect("serializable"),
        text,
        header: strings(["group", "b", "degrees", "K", "q", "applicable"]),
        rows: vec![row],
    }
}

pub fn moment(q: u32, t: u32) -> Output {
    let m = haar_moment(q, t).to_string();
    Output {
        json: json!({ "q": q, "t": t, "moment": m }),
        text: format!("{m}\n"),
        header: strings(["q", "t", "moment"]),
        rows: vec![vec![q.to_string(), t.to_string(), m]],
    }
}
