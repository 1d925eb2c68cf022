//! JSON building blocks and the plain-text renderings of command reports.

use std::fmt::Write as _;

use c5cone::geometry::Plane;
use c5cone::projection::linear_form_text;
use c5cone::CycloScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

pub fn scalar(c: &CycloScalar) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[CycloScalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &[Vec<CycloScalar>]) -> Value {
    Value::Array(m.iter().map(|r| vector(r)).collect())
}

/// Scale a rational form to coprime integers with positive leading entry;
/// forms with irrational entries are returned unchanged.
pub fn integer_normalized(form: &[CycloScalar]) -> Vec<CycloScalar> {
    let Some(qs) = form.iter().map(CycloScalar::to_rational).collect::<Option<Vec<_>>>() else {
        return form.to_vec();
    };
    let den = qs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| (q * &den).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return form.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.iter()
        .map(|x| CycloScalar::from_rational(BigRational::from_integer(x / &g)))
        .collect()
}

pub fn plane(p: &Plane) -> Value {
    let forms: Vec<Vec<CycloScalar>> = p.equations().iter().map(|f| integer_normalized(f)).collect();
    json!({
        "basis": matrix(p.basis()),
        "equations": forms.iter().map(|f| linear_form_text(f)).collect::<Vec<_>>(),
        "forms": matrix(&forms),
    })
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|x| match x {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect()
        })
        .unwrap_or_default()
}

fn tuple(v: &Value) -> String {
    format!("({})", strs(v).join(", "))
}

fn plane_text(p: &Value) -> String {
    format!("V({})", strs(&p["equations"]).join(", "))
}

fn pair_text(p: &Value) -> String {
    format!("({})", strs(p).join(","))
}

fn list_text(v: &Value) -> String {
    let items = strs(v);
    if items.is_empty() {
        "none".into()
    } else {
        items.join(" ")
    }
}

pub fn analyze_text(r: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "curve in C^{}, r = {}, coefficients in Q(z{})",
        r["n"], r["r"], r["conductor"]
    );
    for b in r["branches"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  branch {} [{}]: m = {}, tangent {}, special {}",
            b["index"],
            b["label"].as_str().unwrap_or(""),
            b["multiplicity"],
            tuple(&b["tangent"]),
            strs(&b["special_coordinates"]).join(" ")
        );
    }
    let cl = &r["classification"];
    let pairs = |v: &Value| {
        let items: Vec<String> = v.as_array().into_iter().flatten().map(pair_text).collect();
        if items.is_empty() {
            "none".to_string()
        } else {
            items.join(" ")
        }
    };
    let _ = writeln!(out, "singular: {}", list_text(&cl["singular"]));
    let _ = writeln!(out, "tangent pairs: {}", pairs(&cl["tangent_pairs"]));
    let _ = writeln!(out, "non-tangent pairs: {}", pairs(&cl["non_tangent_pairs"]));

    let _ = writeln!(out, "auxiliary records:");
    for rec in r["records"].as_array().into_iter().flatten() {
        let who = match rec["kind"].as_str() {
            Some("characteristic") => format!("branch {}", rec["branch"]),
            _ => format!("pair {}", pair_text(&rec["pair"])),
        };
        let _ = writeln!(
            out,
            "  {who} theta {}: m = {}, v = {}, plane {}",
            rec["theta"]["text"].as_str().unwrap_or(""),
            rec["m_theta"],
            tuple(&rec["v_theta"]),
            plane_text(&rec["plane"])
        );
    }
    for c in r["cham"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "ChAM branch {}: m = {}, {{{}}}",
            c["branch"],
            c["m"],
            strs(&c["values"]).join(", ")
        );
    }
    for c in r["coam"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "CoAM {}: {}",
            pair_text(&c["pair"]),
            strs(&c["sequence"]).join(" <= ")
        );
    }
    let cone = &r["cone"];
    if cone["kind"] == "line" {
        let _ = writeln!(out, "C5 cone: tangent line {}", tuple(&cone["components"][0]["direction"]));
    } else {
        let _ = writeln!(out, "C5 cone: {} planes", cone["count"]);
        for c in cone["components"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "  {}. {}", c["index"], plane_text(c));
        }
        if let Some(p) = cone["product"].as_str() {
            let _ = writeln!(out, "product: {p} = 0");
        }
    }
    let b = &r["bounds"];
    let _ = writeln!(
        out,
        "bound1 = {}, bound2 = {}, planes = {}{}",
        b["bound1"],
        b["bound2"],
        b["planes"],
        if b["bound2_attained"] == true { " (bound2 attained)" } else { "" }
    );
    out
}

fn profile_text(out: &mut String, name: &str, p: &Value) {
    let _ = writeln!(out, "{name}: r = {}", p["r"]);
    for c in p["cham"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "  ChAM {}: {{{}}}", c["branch"], strs(&c["values"]).join(", "));
    }
    for c in p["coam"].as_array().into_iter().flatten() {
        let im = match &c["intersection_multiplicity"] {
            Value::Null => String::new(),
            v => format!(" (intersection multiplicity {v})"),
        };
        let _ = writeln!(
            out,
            "  CoAM {}: {}{im}",
            pair_text(&c["pair"]),
            strs(&c["sequence"]).join(" <= ")
        );
    }
}

pub fn compare_text(r: &Value) -> String {
    let mut out = String::new();
    profile_text(&mut out, "left", &r["left"]);
    profile_text(&mut out, "right", &r["right"]);
    if r["equivalent"] == true {
        let map: Vec<String> = r["witness"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|w| format!("{} -> {}", w["left"], w["right"]))
            .collect();
        let _ = writeln!(out, "bi-Lipschitz equivalent, branch bijection {}", map.join(", "));
    } else {
        let _ = writeln!(out, "not bi-Lipschitz equivalent");
    }
    out
}

pub fn project_text(r: &Value) -> String {
    let mut out = String::new();
    if r["mode"] == "kernel" {
        let _ = writeln!(out, "kernel {}", r["kernel"].as_array().into_iter().flatten().map(tuple).collect::<Vec<_>>().join("; "));
        match &r["violating"] {
            Value::Null => {
                let _ = writeln!(out, "C5-generic: kernel meets every cone component only at the origin");
            }
            v => {
                let what = if v["equations"].is_array() {
                    plane_text(v)
                } else {
                    format!("line {}", tuple(&v["direction"]))
                };
                let _ = writeln!(out, "not C5-generic: kernel meets component {} {what}", v["index"]);
            }
        }
    } else {
        let _ = writeln!(out, "projection {}", r["projection"]["text"].as_str().unwrap_or(""));
        for b in r["projected_text"].as_array().into_iter().flatten() {
            let _ = writeln!(out, "  {}", b.as_str().unwrap_or(""));
        }
        let _ = writeln!(
            out,
            "auxiliary multiplicities preserved: {}",
            if r["invariance"] == true { "yes" } else { "no" }
        );
    }
    out
}

pub fn verify_text(r: &Value) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed {}, {} samples per combination, tolerance {}", r["seed"], r["samples"], r["tolerance"]);
    for s in r["per_radius"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  radius {:e}: max distance {:e} over {} secants",
            s["radius"].as_f64().unwrap_or(f64::NAN),
            s["max_distance"].as_f64().unwrap_or(f64::NAN),
            s["samples"]
        );
    }
    for c in r["components"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  component {}: {}",
            c["index"],
            if c["attained"] == true { "attained" } else { "not attained" }
        );
    }
    for w in r["witnesses"].as_array().into_iter().flatten() {
        let _ = writeln!(
            out,
            "  witness {}: limit error {:e}, plane distance {:e}{}",
            w["label"].as_str().unwrap_or(""),
            w["limit_error"].as_f64().unwrap_or(f64::NAN),
            w["plane_distance"].as_f64().unwrap_or(f64::NAN),
            if w["monotone"] == true { "" } else { ", not monotone" }
        );
    }
    let _ = writeln!(out, "{}", if r["passed"] == true { "PASSED" } else { "FAILED" });
    out
}
