use facelab_web::{certify_json, polytope_json, ridge_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn polytope_summary_matches_lattice() {
    let v = parse(polytope_json("cube", 3, 0, 0));
    assert_eq!(v["f_vector"], serde_json::json!([8, 12, 6]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 12);
    assert_eq!(v["points"][7], serde_json::json!([1.0, 1.0, 1.0]));
    assert_eq!(v["vertices"][7], serde_json::json!(["1", "1", "1"]));

    let c = parse(polytope_json("cyclic", 4, 7, 0));
    assert_eq!(c["f_vector"], serde_json::json!([7, 21, 28, 14]));
}

#[test]
fn certificate_passes_for_every_k() {
    for (family, dim) in [("cube", 3), ("cross", 4), ("random", 3)] {
        let v = parse(certify_json(family, dim, 8, 3));
        assert_eq!(v["pass"], true, "{family}");
        assert_eq!(v["checks"].as_array().unwrap().len(), dim);
    }
}

#[test]
fn ridge_demo_is_verified_and_deterministic() {
    for seed in 0..6 {
        let a = ridge_json("cube", 4, 0, 0, 2, 2, seed).unwrap();
        assert_eq!(a, ridge_json("cube", 4, 0, 0, 2, 2, seed).unwrap());
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["verified"], true);
        let blocked: Vec<&Value> = v["blocked"]
            .as_array()
            .unwrap()
            .iter()
            .map(|f| &f["id"])
            .collect();
        assert!(v["path"]
            .as_array()
            .unwrap()
            .iter()
            .all(|f| !blocked.contains(&&f["id"])));
    }
}

#[test]
fn demo_inputs_are_bounded() {
    assert!(polytope_json("cube", 5, 0, 0).is_err());
    assert!(polytope_json("cyclic", 4, 40, 0).is_err());
    assert!(polytope_json("dodecahedron", 3, 0, 0).is_err());
    assert!(ridge_json("cube", 3, 0, 0, 3, 0, 0).is_err());
    assert!(ridge_json("cube", 3, 0, 0, 1, 2, 0).is_err());
}
