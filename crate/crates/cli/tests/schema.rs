use cdscope::document::AnalysisDocument;
use cdscope_core::analysis::CdContext;
use cdscope_core::expr::build;
use cdscope_core::Limits;
use serde_json::Value;

const SCHEMA: &str = include_str!("../schema/analysis.schema.json");

fn document_json(src: &str) -> String {
    let limits = Limits::default();
    let g = build(src, &limits).unwrap().into_group();
    let ctx = CdContext::new(&g, &limits).unwrap();
    AnalysisDocument::build(&ctx).unwrap().to_json()
}

fn no_floats_or_nulls(v: &Value) -> bool {
    match v {
        Value::Null => false,
        Value::Number(n) => n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats_or_nulls),
        Value::Object(o) => o.values().all(no_floats_or_nulls),
        _ => true,
    }
}

#[test]
fn documents_validate() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for src in [
        "C(1)",
        "S(3)",
        "A(4)",
        "D(8)",
        "Q(16)",
        "Heis(2,2)",
        "D(8) x C(3)",
        "S(4)",
        "C(2) x C(2) x C(2)",
    ] {
        let doc: Value = serde_json::from_str(&document_json(src)).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{src}: {errors:?}");
        assert!(no_floats_or_nulls(&doc), "{src}");
    }
}

#[test]
fn schema_rejects_drift() {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut doc: Value = serde_json::from_str(&document_json("S(3)")).unwrap();
    doc["numbers"]["width"] = Value::Null;
    assert!(!validator.is_valid(&doc));
    let mut doc: Value = serde_json::from_str(&document_json("S(3)")).unwrap();
    doc["group"]["extra"] = Value::from(1);
    assert!(!validator.is_valid(&doc));
}

#[test]
fn key_order_is_fixed() {
    let json = document_json("D(8)");
    let top: Vec<&str> = json
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim_start().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        top,
        vec![
            "group",
            "subgroups",
            "hasse",
            "flags",
            "numbers",
            "measure",
            "cd",
            "cent",
            "nilpotency_class",
            "witnesses"
        ]
    );
    assert_eq!(json, document_json("D(8)"));
}

#[test]
fn absent_numbers_are_omitted() {
    let doc: Value = serde_json::from_str(&document_json("S(3)")).unwrap();
    let numbers = doc["numbers"].as_object().unwrap();
    assert!(!numbers.contains_key("a") && !numbers.contains_key("b"));
    let doc: Value = serde_json::from_str(&document_json("Heis(2,1)")).unwrap();
    assert_eq!(doc["numbers"]["a"], 3);
    assert_eq!(doc["numbers"]["b"], 1);
}
