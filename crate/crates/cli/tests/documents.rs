//! Fixture documents: golden comparison against the built-in curves and
//! canonical round trips. Set `UPDATE_FIXTURES=1` to rewrite the files.

use std::path::PathBuf;

use c5cone::fixtures;
use c5cone_cli::document::{scalar_summands, CurveDocument};
use c5cone::CycloScalar;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn fixture_files_match_builtin_curves() {
    let update = std::env::var("UPDATE_FIXTURES").is_ok_and(|v| v == "1");
    for (name, curve) in fixtures::all() {
        let path = fixture_dir().join(format!("{name}.json"));
        let expected = CurveDocument::from_curve(&curve).to_canonical_json();
        if update {
            std::fs::write(&path, &expected).unwrap();
        }
        let found = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(found, expected, "{name}");
    }
}

#[test]
fn canonical_round_trip_is_identity() {
    for (name, curve) in fixtures::all() {
        let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap();
        let doc = CurveDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_canonical_json(), text, "{name}");
        let parsed = doc.to_curve().unwrap();
        assert_eq!(&parsed, &curve, "{name}");
        assert_eq!(CurveDocument::from_curve(&parsed), doc, "{name}");
    }
}

#[test]
fn user_summands_are_kept() {
    // 1/2 + 1/2 is not collapsed when the document is re-serialized.
    let text = r#"{"branches":[{"coords":[[{"coeff":[{"den":1,"num":1,"zeta_order":1,"zeta_pow":0}],"exp":2}],[{"coeff":[{"den":2,"num":1,"zeta_order":1,"zeta_pow":0},{"den":2,"num":1,"zeta_order":1,"zeta_pow":0}],"exp":3}]],"label":"A"}],"n":2,"version":1}"#;
    let doc = CurveDocument::from_json(text).unwrap();
    let canon = doc.to_canonical_json();
    assert_eq!(CurveDocument::from_json(&canon).unwrap(), doc);
    assert_eq!(canon.matches("\"den\": 2").count(), 2);
    let c = doc.to_curve().unwrap();
    assert_eq!(c.branch(0).param().coords()[1].terms()[0].1, CycloScalar::one());
}

#[test]
fn large_integers_survive() {
    let q: CycloScalar = "123456789012345678901234567891/2".parse().unwrap();
    let s = scalar_summands(&q);
    assert_eq!(s[0].num.to_string(), "123456789012345678901234567891");
    assert_eq!(s[0].value().unwrap(), q);
}

#[test]
fn rejects_bad_documents() {
    let bad = [
        r#"{"branches":[],"n":2,"version":2}"#,
        r#"{"branches":[{"coords":[[{"coeff":[{"den":0,"num":1,"zeta_order":1,"zeta_pow":0}],"exp":2}]],"label":"A"}],"n":1,"version":1}"#,
        r#"{"branches":[{"coords":[[{"coeff":[{"den":1,"num":1.5,"zeta_order":1,"zeta_pow":0}],"exp":2}]],"label":"A"}],"n":1,"version":1}"#,
        r#"{"branches":[],"extra":1,"n":2,"version":1}"#,
    ];
    for b in bad {
        let r = CurveDocument::from_json(b).and_then(|d| d.to_curve());
        assert!(r.is_err(), "{b}");
    }
}
