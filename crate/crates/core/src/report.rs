//! Renderers that turn computed invariants into JSON values and aligned
//! text tables. JSON objects use sorted keys throughout, so serialized
//! output is byte-stable across runs.

use serde_json::{json, Value};

use crate::cohomology::{
    betti, cohomology, delta_bc, delta_full, hard_lefschetz, harmonic, inclusion_check,
    j_subgroups, lefschetz_degree_check, selfdual_split, v_space, Theory,
};
use crate::deformation::{sweep, DeformationError, DeformationFamily, SweepReport};
use crate::manifest::Model;
use crate::operators::Context;
use crate::rational::format_rational;

/// One block of output: a stable key for JSON assembly and filtering, and
/// both renderings of the same data.
pub struct Section {
    pub key: &'static str,
    pub json: Value,
    pub text: String,
}

fn render_table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut width = vec![0usize; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(i, cell)| {
                    if i == 0 {
                        format!("{:<w$}", cell, w = width[0])
                    } else {
                        format!("{:>w$}", cell, w = width[i])
                    }
                })
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn degree_header(dim: usize, corner: &str) -> Vec<String> {
    let mut row = vec![corner.to_string()];
    row.extend((0..=dim).map(|k| k.to_string()));
    row
}

fn dims_row<T: ToString>(label: &str, dims: &[T]) -> Vec<String> {
    let mut row = vec![label.to_string()];
    row.extend(dims.iter().map(|d| d.to_string()));
    row
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------------------
// sections

pub fn validate_section(model: &Model) -> Section {
    let ctx = &model.context;
    let json = json!({
        "name": model.name,
        "dimension": ctx.dim(),
        "symplectic": ctx.symplectic().omega().to_string(),
        "almost_complex": ctx.j().is_some(),
        "metric": ctx.has_metric(),
        "deformations": model.deformations.len(),
        "valid": true,
    });
    let mut text = String::new();
    if let Some(name) = &model.name {
        text.push_str(&format!("model: {name}\n"));
    }
    text.push_str(&format!(
        "ok: dimension {}, symplectic form {}\nalmost-complex structure: {}\nmetric: {}\ndeformation families: {}",
        ctx.dim(),
        ctx.symplectic().omega(),
        yesno(ctx.j().is_some()),
        yesno(ctx.has_metric()),
        model.deformations.len(),
    ));
    Section {
        key: "validate",
        json,
        text,
    }
}

pub fn betti_section(ctx: &Context) -> Section {
    let dim = ctx.dim();
    let dims: Vec<usize> = (0..=dim).map(|k| betti(ctx, k)).collect();
    let json = json!({ "betti": dims });
    let text = render_table(&[degree_header(dim, "degree"), dims_row("b_k", &dims)]);
    Section {
        key: "betti",
        json,
        text,
    }
}

pub fn cohomology_section(ctx: &Context, theories: &[Theory], degree: Option<usize>) -> Section {
    let dim = ctx.dim();
    let mut obj = serde_json::Map::new();
    let mut rows = vec![degree_header(dim, "degree")];
    let mut detail = String::new();
    for &theory in theories {
        let dims: Vec<usize> = (0..=dim).map(|k| cohomology(ctx, theory, k).dim()).collect();
        match degree {
            None => {
                obj.insert(theory.key().to_string(), json!({ "dims": dims }));
                rows.push(dims_row(theory.key(), &dims));
            }
            Some(k) => {
                let group = cohomology(ctx, theory, k);
                let reps: Vec<String> = group
                    .representative_forms(ctx)
                    .iter()
                    .map(|f| f.to_string())
                    .collect();
                obj.insert(
                    theory.key().to_string(),
                    json!({ "degree": k, "dim": group.dim(), "representatives": reps }),
                );
                detail.push_str(&format!("{} degree {}: dim {}\n", theory.key(), k, group.dim()));
                for r in &reps {
                    detail.push_str(&format!("  {r}\n"));
                }
            }
        }
    }
    let text = match degree {
        None => render_table(&rows),
        Some(_) => detail.trim_end().to_string(),
    };
    Section {
        key: "cohomology",
        json: Value::Object(obj),
        text,
    }
}

pub fn harmonic_section(ctx: &Context, theories: &[Theory], degree: Option<usize>) -> Section {
    let dim = ctx.dim();
    let mut obj = serde_json::Map::new();
    let mut rows = vec![degree_header(dim, "degree")];
    let mut detail = String::new();
    for &theory in theories {
        let spaces: Vec<_> = (0..=dim).map(|k| harmonic(ctx, theory, k)).collect();
        let dims: Vec<usize> = spaces.iter().map(|h| h.dim()).collect();
        match degree {
            None => {
                obj.insert(theory.key().to_string(), json!({ "dims": dims }));
                rows.push(dims_row(theory.key(), &dims));
            }
            Some(k) => {
                let forms: Vec<String> =
                    spaces[k].forms(ctx).iter().map(|f| f.to_string()).collect();
                obj.insert(
                    theory.key().to_string(),
                    json!({ "degree": k, "dim": dims[k], "basis": forms }),
                );
                detail.push_str(&format!("{} degree {}: dim {}\n", theory.key(), k, dims[k]));
                for f in &forms {
                    detail.push_str(&format!("  {f}\n"));
                }
            }
        }
    }
    let text = match degree {
        None => render_table(&rows),
        Some(_) => detail.trim_end().to_string(),
    };
    Section {
        key: "harmonic",
        json: Value::Object(obj),
        text,
    }
}

pub fn hlc_section(ctx: &Context) -> Section {
    let report = hard_lefschetz(ctx);
    let powers: Vec<Value> = report
        .powers
        .iter()
        .map(|p| {
            json!({
                "power": p.power,
                "source_degree": p.source_degree,
                "target_degree": p.target_degree,
                "source_dim": p.source_dim,
                "target_dim": p.target_dim,
                "rank": p.rank,
                "injective": p.injective,
                "surjective": p.surjective,
                "isomorphism": p.isomorphism,
            })
        })
        .collect();
    let json = json!({ "powers": powers, "holds": report.holds });
    let mut lines: Vec<String> = report
        .powers
        .iter()
        .map(|p| {
            format!(
                "L^{}: H^{} -> H^{}  rank {} ({} -> {})  isomorphism: {}",
                p.power,
                p.source_degree,
                p.target_degree,
                p.rank,
                p.source_dim,
                p.target_dim,
                yesno(p.isomorphism)
            )
        })
        .collect();
    lines.push(format!("hard Lefschetz: {}", if report.holds { "holds" } else { "fails" }));
    Section {
        key: "hlc",
        json,
        text: lines.join("\n"),
    }
}

pub fn delta_section(ctx: &Context) -> Section {
    let dim = ctx.dim();
    let bc: Vec<i64> = (0..=dim).map(|k| delta_bc(ctx, k)).collect();
    let full: Vec<i64> = (0..=dim).map(|k| delta_full(ctx, k)).collect();
    let all_zero = bc.iter().all(|&v| v == 0);
    let json = json!({ "delta_bc": bc, "delta_full": full, "all_zero": all_zero });
    let table = render_table(&[
        degree_header(dim, "degree"),
        dims_row("delta_bc", &bc),
        dims_row("delta_full", &full),
    ]);
    let text = format!(
        "{table}\nall zero: {} (equivalent to hard Lefschetz)",
        yesno(all_zero)
    );
    Section {
        key: "delta",
        json,
        text,
    }
}

pub fn lefschetz_section(ctx: &Context, with_groups: bool) -> Section {
    let dim = ctx.dim();
    let mut degrees = Vec::new();
    let mut lines = Vec::new();
    for k in 0..=dim {
        let check = lefschetz_degree_check(ctx, k);
        let groups: Vec<Value> = check
            .groups
            .iter()
            .map(|g| {
                let mut entry = serde_json::Map::new();
                entry.insert("r".to_string(), json!(g.r));
                entry.insert("s".to_string(), json!(g.s));
                entry.insert("dim".to_string(), json!(g.dim));
                if with_groups {
                    let reps: Vec<String> = g
                        .classes
                        .basis_rows()
                        .to_vecs()
                        .iter()
                        .map(|row| format_class_coords(row))
                        .collect();
                    entry.insert("classes".to_string(), json!(reps));
                }
                Value::Object(entry)
            })
            .collect();
        degrees.push(json!({
            "degree": k,
            "groups": groups,
            "sum_dim": check.sum_dim,
            "total_dim": check.total_dim,
            "direct": check.direct,
            "spans": check.spans,
        }));
        let parts: Vec<String> = check
            .groups
            .iter()
            .map(|g| format!("({},{}) dim {}", g.r, g.s, g.dim))
            .collect();
        lines.push(format!(
            "degree {k}: {}  sum {} of {}  direct: {}  spans: {}",
            if parts.is_empty() {
                "-".to_string()
            } else {
                parts.join(", ")
            },
            check.sum_dim,
            check.total_dim,
            yesno(check.direct),
            yesno(check.spans),
        ));
    }
    let all_direct = degrees
        .iter()
        .all(|d| d["direct"].as_bool().unwrap() && d["spans"].as_bool().unwrap());
    lines.push(format!(
        "decomposition in every degree: {}",
        yesno(all_direct)
    ));
    Section {
        key: "lefschetz",
        json: json!({ "degrees": degrees, "decomposes": all_direct }),
        text: lines.join("\n"),
    }
}

fn format_class_coords(row: &[crate::rational::Rational]) -> String {
    let parts: Vec<String> = row.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

pub fn jdecomp_section(ctx: &Context) -> Section {
    let sub = j_subgroups(ctx);
    let mut obj = serde_json::Map::new();
    let labeled = |space: &crate::cohomology::LabeledClassSpace| -> Value {
        json!({
            "dim": space.dim,
            "representatives": space
                .representative_forms
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>(),
        })
    };
    obj.insert("invariant".to_string(), labeled(&sub.plus));
    obj.insert("anti_invariant".to_string(), labeled(&sub.minus));
    obj.insert("total_dim".to_string(), json!(sub.total_dim));
    obj.insert("direct".to_string(), json!(sub.direct));
    obj.insert("spans".to_string(), json!(sub.spans));
    let mut lines = vec![
        format!("J-invariant classes in degree 2: dim {}", sub.plus.dim),
    ];
    for f in &sub.plus.representative_forms {
        lines.push(format!("  {f}"));
    }
    lines.push(format!(
        "J-anti-invariant classes in degree 2: dim {}",
        sub.minus.dim
    ));
    for f in &sub.minus.representative_forms {
        lines.push(format!("  {f}"));
    }
    lines.push(format!(
        "sum {} of {}  direct: {}  spans: {}",
        sub.plus.dim + sub.minus.dim,
        sub.total_dim,
        yesno(sub.direct),
        yesno(sub.spans),
    ));
    if ctx.dim() == 4 && ctx.has_metric() {
        let split = selfdual_split(ctx);
        obj.insert(
            "selfdual".to_string(),
            json!({
                "plus": {
                    "dim": split.plus.dim(),
                    "basis": split.plus.forms(ctx).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                },
                "minus": {
                    "dim": split.minus.dim(),
                    "basis": split.minus.forms(ctx).iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                },
            }),
        );
        lines.push(format!(
            "self-dual / anti-self-dual harmonic 2-forms: {} / {}",
            split.plus.dim(),
            split.minus.dim()
        ));
    }
    Section {
        key: "jdecomp",
        json: Value::Object(obj),
        text: lines.join("\n"),
    }
}

pub fn vspace_section(ctx: &Context) -> Section {
    let v = v_space(ctx);
    let forms: Vec<String> = v.forms(ctx).iter().map(|f| f.to_string()).collect();
    let gap = delta_bc(ctx, 2);
    let json = json!({ "dim": v.dim(), "basis": forms, "delta_bc_2": gap });
    let mut lines = vec![format!("dim V = {}", v.dim())];
    for f in &forms {
        lines.push(format!("  {f}"));
    }
    lines.push(format!("delta_bc in degree 2 = {gap}"));
    Section {
        key: "vspace",
        json,
        text: lines.join("\n"),
    }
}

pub fn inclusion_section(ctx: &Context, degree: Option<usize>) -> Section {
    let dim = ctx.dim();
    let degrees: Vec<usize> = match degree {
        Some(k) => vec![k],
        None => (0..=dim).collect(),
    };
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    for k in degrees {
        let check = inclusion_check(ctx, k);
        let mut entry = serde_json::Map::new();
        entry.insert("degree".to_string(), json!(check.degree));
        entry.insert("dr_dim".to_string(), json!(check.dr_dim));
        entry.insert("bc_dim".to_string(), json!(check.bc_dim));
        entry.insert("included".to_string(), json!(check.included));
        if let Some(w) = &check.witness {
            entry.insert("witness".to_string(), json!(w.to_string()));
        }
        entries.push(Value::Object(entry));
        let mut line = format!(
            "degree {}: d-harmonic (dim {}) inside mixed-harmonic (dim {}): {}",
            check.degree,
            check.dr_dim,
            check.bc_dim,
            yesno(check.included)
        );
        if let Some(w) = &check.witness {
            line.push_str(&format!("  witness: {w}"));
        }
        lines.push(line);
    }
    Section {
        key: "inclusion",
        json: json!({ "degrees": entries }),
        text: lines.join("\n"),
    }
}

pub fn deform_section(ctx: &Context, families: &[DeformationFamily]) -> Result<Section, DeformationError> {
    let algebra = ctx.algebra();
    let omega = ctx.symplectic().omega();
    let mut family_values = Vec::new();
    let mut blocks = Vec::new();
    for (i, family) in families.iter().enumerate() {
        let report = sweep(algebra, omega, family)?;
        family_values.push(sweep_json(family, &report));
        blocks.push(sweep_text(ctx.dim(), i + 1, family, &report));
    }
    Ok(Section {
        key: "deform",
        json: json!({ "families": family_values }),
        text: blocks.join("\n\n"),
    })
}

fn sweep_json(family: &DeformationFamily, report: &SweepReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "t": format_rational(&r.t),
                "d_lambda": r.d_lambda,
                "bott_chern": r.bott_chern,
                "aeppli": r.aeppli,
                "delta_bc": r.delta_bc,
            })
        })
        .collect();
    let excluded: Vec<Value> = report
        .excluded
        .iter()
        .map(|e| json!({ "t": format_rational(&e.t), "reason": e.reason }))
        .collect();
    let jumps: Vec<Value> = report
        .jumps
        .iter()
        .map(|j| {
            json!({
                "t": format_rational(&j.t),
                "theory": j.theory.key(),
                "direction": j.direction.key(),
                "changes": j.changes.iter().map(|(k, from, to)| {
                    json!({ "degree": k, "from": from, "to": to })
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "t": format_rational(&v.t),
                "theory": v.theory.key(),
                "degree": v.degree,
                "baseline": v.baseline,
                "value": v.value,
            })
        })
        .collect();
    json!({
        "theta": family.theta.to_string(),
        "effective_theta": family.effective_theta().to_string(),
        "betti": report.betti,
        "rows": rows,
        "excluded": excluded,
        "jumps": jumps,
        "semicontinuity_bound": format_rational(&report.semicontinuity_bound),
        "semicontinuity_violations": violations,
    })
}

fn sweep_text(dim: usize, index: usize, family: &DeformationFamily, report: &SweepReport) -> String {
    let mut out = String::new();
    let eff = family.effective_theta();
    out.push_str(&format!("family {index}: theta = {}", family.theta));
    if eff != family.theta {
        out.push_str(&format!(" (applied as {eff})"));
    }
    out.push('\n');
    out.push_str(&render_table(&[
        degree_header(dim, "degree"),
        dims_row("b_k", &report.betti),
    ]));
    out.push('\n');
    for (label, pick) in [
        ("d_lambda", 0usize),
        ("bott_chern", 1),
        ("aeppli", 2),
        ("delta_bc", 3),
    ] {
        let mut rows = vec![degree_header(dim, &format!("{label}  t"))];
        for r in &report.rows {
            let dims: Vec<String> = match pick {
                0 => r.d_lambda.iter().map(|d| d.to_string()).collect(),
                1 => r.bott_chern.iter().map(|d| d.to_string()).collect(),
                2 => r.aeppli.iter().map(|d| d.to_string()).collect(),
                _ => r.delta_bc.iter().map(|d| d.to_string()).collect(),
            };
            let mut row = vec![format_rational(&r.t)];
            row.extend(dims);
            rows.push(row);
        }
        out.push_str(&render_table(&rows));
        out.push('\n');
    }
    if report.excluded.is_empty() {
        out.push_str("excluded samples: none\n");
    } else {
        for e in &report.excluded {
            out.push_str(&format!(
                "excluded: t = {} ({})\n",
                format_rational(&e.t),
                e.reason
            ));
        }
    }
    if report.jumps.is_empty() {
        out.push_str("dimension jumps: none\n");
    } else {
        for j in &report.jumps {
            let changes: Vec<String> = j
                .changes
                .iter()
                .map(|(k, from, to)| format!("degree {k}: {from} -> {to}"))
                .collect();
            out.push_str(&format!(
                "jump: t = {} {} {} ({})\n",
                format_rational(&j.t),
                j.theory.key(),
                j.direction.key(),
                changes.join(", ")
            ));
        }
    }
    if report.violations.is_empty() {
        out.push_str(&format!(
            "semicontinuity violations within |t| <= {}: none",
            format_rational(&report.semicontinuity_bound)
        ));
    } else {
        let lines: Vec<String> = report
            .violations
            .iter()
            .map(|v| {
                format!(
                    "semicontinuity violation: t = {} {} degree {}: {} > {}",
                    format_rational(&v.t),
                    v.theory.key(),
                    v.degree,
                    v.value,
                    v.baseline
                )
            })
            .collect();
        out.push_str(&lines.join("\n"));
    }
    out
}

/// The full diagnostic report: every section that the model's data
/// supports, optionally filtered by an explicit list of section keys.
pub fn full_report(model: &Model) -> Result<(Value, String), DeformationError> {
    let ctx = &model.context;
    let all = Theory::all();
    let mut sections = vec![betti_section(ctx), cohomology_section(ctx, &all, None)];
    if ctx.has_metric() {
        sections.push(harmonic_section(ctx, &all, None));
    }
    sections.push(hlc_section(ctx));
    sections.push(delta_section(ctx));
    sections.push(lefschetz_section(ctx, false));
    if ctx.j().is_some() {
        sections.push(jdecomp_section(ctx));
    }
    if ctx.has_metric() {
        sections.push(vspace_section(ctx));
        sections.push(inclusion_section(ctx, None));
    }
    if !model.deformations.is_empty() {
        sections.push(deform_section(ctx, &model.deformations)?);
    }
    if let Some(wanted) = &model.outputs {
        sections.retain(|s| wanted.iter().any(|w| w == s.key));
    }
    let mut obj = serde_json::Map::new();
    obj.insert("dimension".to_string(), json!(ctx.dim()));
    if let Some(name) = &model.name {
        obj.insert("name".to_string(), json!(name));
    }
    let mut blocks = Vec::new();
    let mut header = String::new();
    if let Some(name) = &model.name {
        header.push_str(&format!("model: {name}\n"));
    }
    header.push_str(&format!(
        "dimension {}, symplectic form {}",
        ctx.dim(),
        ctx.symplectic().omega()
    ));
    blocks.push(header);
    for section in sections {
        obj.insert(section.key.to_string(), section.json);
        blocks.push(format!("== {} ==\n{}", section.key, section.text));
    }
    Ok((Value::Object(obj), blocks.join("\n\n")))
}
