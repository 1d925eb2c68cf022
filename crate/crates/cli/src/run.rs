//! Command bodies. Each returns a JSON report and whether the verdict is affirmative.

use std::path::Path;

use c5cone::auxiliary::{AuxKind, AuxRecord};
use c5cone::c5::{analyze as analyze_cone, bound1, bound2, product_equation, C5Cone, C5Options, Provenance};
use c5cone::geometry::Curve;
use c5cone::invariants::{
    bilipschitz_equivalent, pair_intersection_multiplicity, profile, InvariantProfile,
};
use c5cone::oracle::{self, OracleConfig};
use c5cone::projection::{
    apply_projection, coordinate_name, find_generic_projection, is_c5_generic, LinearProjection,
    verify_projection_invariance,
};
use c5cone::CycloScalar;
use serde_json::{json, Value};

use crate::document::CurveDocument;
use crate::report::{matrix, plane, vector};
use crate::CliError;

pub fn load(path: &Path) -> Result<Curve, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    CurveDocument::from_json(&text)?.to_curve()
}

fn pair(i: usize, j: usize) -> Value {
    json!([i + 1, j + 1])
}

fn record(r: &AuxRecord) -> Value {
    let (head, theta) = match r.kind {
        AuxKind::Characteristic { branch, theta } => (json!({"kind": "characteristic", "branch": branch + 1}), theta),
        AuxKind::Contact { pair: (i, j), theta } => (json!({"kind": "contact", "pair": pair(i, j)}), theta),
    };
    let mut v = head;
    v["theta"] = json!({"order": theta.order, "pow": theta.k, "text": theta.to_string()});
    v["m_theta"] = json!(r.m_theta);
    v["v_theta"] = vector(r.v_theta.as_slice());
    v["plane"] = plane(&r.plane);
    v
}

fn provenance(p: &Provenance) -> String {
    match p {
        Provenance::Aux(AuxKind::Characteristic { branch, theta }) => {
            format!("branch {} theta {theta}", branch + 1)
        }
        Provenance::Aux(AuxKind::Contact { pair: (i, j), theta }) => {
            format!("pair ({},{}) theta {theta}", i + 1, j + 1)
        }
        Provenance::NonTangent { pair: (i, j) } => {
            format!("pair ({},{}) tangents", i + 1, j + 1)
        }
    }
}

fn cone_json(cone: &C5Cone, n: usize) -> Result<Value, CliError> {
    Ok(match cone {
        C5Cone::Line(d) => json!({
            "kind": "line",
            "count": 1,
            "components": [{"index": 1, "direction": vector(d.as_slice())}],
            "product": null,
        }),
        C5Cone::Planes(comps) => {
            let components: Vec<Value> = comps
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut v = plane(&c.plane);
                    v["index"] = json!(k + 1);
                    v["sources"] = json!(c.provenance.iter().map(provenance).collect::<Vec<_>>());
                    v
                })
                .collect();
            let product = if n == 3 {
                json!(product_equation(cone, n)?.to_string())
            } else {
                Value::Null
            };
            json!({"kind": "planes", "count": comps.len(), "components": components, "product": product})
        }
    })
}

fn profile_json(c: &Curve, p: &InvariantProfile) -> Value {
    // Intersection multiplicities need a plane model of the curve.
    let plane_model = if c.n() == 2 {
        Some(c.clone())
    } else {
        find_generic_projection(c)
            .and_then(|pi| apply_projection(c, &pi)?.to_curve())
            .ok()
    };
    let cham: Vec<Value> = p
        .cham
        .iter()
        .enumerate()
        .map(|(i, ch)| json!({"branch": i + 1, "m": ch.m, "values": ch.values}))
        .collect();
    let coam: Vec<Value> = p
        .coam
        .iter()
        .zip(&p.tangent)
        .map(|(((i, j), s), (_, t))| {
            let im = plane_model
                .as_ref()
                .and_then(|m| pair_intersection_multiplicity(m, *i, *j).ok());
            json!({
                "pair": pair(*i, *j),
                "sequence": s.sequence,
                "tangent": t,
                "intersection_multiplicity": im,
            })
        })
        .collect();
    json!({"r": p.r, "cham": cham, "coam": coam})
}

pub fn analyze(c: &Curve) -> Result<Value, CliError> {
    let a = analyze_cone(c, C5Options::default())?;
    let prof = profile(c)?;
    let n = c.n();
    let branches: Vec<Value> = c
        .branches()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i + 1,
                "label": b.label(),
                "multiplicity": b.multiplicity(),
                "tangent": vector(b.tangent().as_slice()),
                "special_coordinates": b.special_coords().iter().map(|&s| coordinate_name(s, n)).collect::<Vec<_>>(),
                "singular": b.is_singular(),
            })
        })
        .collect();
    let cl = &a.classification;
    let mut records = a.records.clone();
    records.sort_by_key(|x| x.kind);
    let planes = match &a.cone {
        C5Cone::Line(_) => 0,
        C5Cone::Planes(p) => p.len() as u64,
    };
    let b2 = bound2(c);
    let prof_json = profile_json(c, &prof);
    Ok(json!({
        "n": n,
        "r": c.r(),
        "conductor": c.conductor(),
        "branches": branches,
        "classification": {
            "singular": cl.singular.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "tangent_pairs": cl.tangent.iter().map(|&(i, j)| pair(i, j)).collect::<Vec<_>>(),
            "non_tangent_pairs": cl.non_tangent.iter().map(|&(i, j)| pair(i, j)).collect::<Vec<_>>(),
        },
        "records": records.iter().map(record).collect::<Vec<_>>(),
        "cham": prof_json["cham"],
        "coam": prof_json["coam"],
        "cone": cone_json(&a.cone, n)?,
        "bounds": {
            "bound1": bound1(c),
            "bound2": b2,
            "planes": planes,
            "bound2_attained": planes == b2,
        },
    }))
}

pub fn compare(x: &Curve, y: &Curve) -> Result<(Value, bool), CliError> {
    let eq = bilipschitz_equivalent(x, y)?;
    let witness = eq.witness.as_ref().map(|w| {
        w.iter()
            .enumerate()
            .map(|(i, k)| json!({"left": i + 1, "right": k + 1}))
            .collect::<Vec<_>>()
    });
    let report = json!({
        "equivalent": eq.equivalent,
        "witness": witness,
        "left": profile_json(x, &profile(x)?),
        "right": profile_json(y, &profile(y)?),
    });
    Ok((report, eq.equivalent))
}

fn projection_json(pi: &LinearProjection) -> Value {
    json!({
        "matrix": matrix(pi.matrix()),
        "kernel": matrix(pi.kernel()),
        "text": pi.to_string(),
    })
}

pub fn project_kernel(c: &Curve, kernel: Vec<Vec<CycloScalar>>) -> Result<(Value, bool), CliError> {
    let pi = LinearProjection::from_kernel(kernel.clone(), c.n())?;
    let g = is_c5_generic(c, &pi)?;
    let violating = match g.violating {
        None => Value::Null,
        Some(idx) => {
            let cone = analyze_cone(c, C5Options::default())?.cone;
            let mut v = match &cone {
                C5Cone::Line(d) => json!({"direction": vector(d.as_slice())}),
                C5Cone::Planes(p) => plane(&p[idx].plane),
            };
            v["index"] = json!(idx + 1);
            v
        }
    };
    let report = json!({
        "mode": "kernel",
        "kernel": matrix(&kernel),
        "projection": projection_json(&pi),
        "generic": g.generic,
        "violating": violating,
    });
    Ok((report, g.generic))
}

pub fn project_auto(c: &Curve) -> Result<(Value, bool), CliError> {
    let pi = find_generic_projection(c)?;
    let image = apply_projection(c, &pi)?.to_curve()?;
    let invariance = verify_projection_invariance(c, &pi)?;
    let doc = serde_json::to_value(CurveDocument::from_curve(&image)).expect("document serializes");
    let text: Vec<String> = image
        .branches()
        .iter()
        .map(|b| format!("{}: {}", b.label(), b.param()))
        .collect();
    let report = json!({
        "mode": "auto",
        "projection": projection_json(&pi),
        "projected": doc,
        "projected_text": text,
        "invariance": invariance,
    });
    Ok((report, invariance))
}

pub fn verify(c: &Curve, config: &OracleConfig) -> Result<(Value, bool), CliError> {
    let a = analyze_cone(c, C5Options::default())?;
    let rep = oracle::verify(c, &a, config);
    let components: Vec<Value> = rep
        .attained
        .iter()
        .enumerate()
        .map(|(k, at)| json!({"index": k + 1, "attained": at}))
        .collect();
    let witnesses: Vec<Value> = rep
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "label": w.report.label,
                "component": w.component + 1,
                "k": w.report.k,
                "u_values": w.report.u_values,
                "distances": w.report.distances,
                "limit_error": w.report.limit_error(),
                "plane_distance": w.plane_distance,
                "monotone": w.report.monotone,
            })
        })
        .collect();
    let per_radius: Vec<Value> = rep
        .sampling
        .per_radius
        .iter()
        .map(|s| {
            json!({
                "radius": s.radius,
                "samples": s.samples,
                "degenerate": s.degenerate,
                "max_distance": s.max_distance,
            })
        })
        .collect();
    let report = json!({
        "seed": config.seed,
        "radii": config.radii,
        "samples": config.samples,
        "tolerance": config.tolerance,
        "per_radius": per_radius,
        "max_plane_distance": rep.sampling.max_plane_distance,
        "components": components,
        "witnesses": witnesses,
        "passed": rep.passed,
    });
    Ok((report, rep.passed))
}
