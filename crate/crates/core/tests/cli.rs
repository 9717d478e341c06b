mod common;

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ramify2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramify2"))
        .args(args)
        .env_remove("RAMIFY2_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn schema(file: &str, def: Option<&str>) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schema")
        .join(file);
    let mut s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    if let Some(def) = def {
        s["$ref"] = Value::String(format!("#/$defs/{def}"));
    }
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}\n{doc:#}");
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = ramify2(&all);
    (
        code(&o),
        serde_json::from_str(&stdout(&o)).expect("json output"),
    )
}

#[test]
fn gms_of_a_table_entry() {
    let o = ramify2(&["gms", "[3,4,5]_1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "31/8\n");
}

#[test]
fn gms_accepts_another_prime() {
    let o = ramify2(&["gms", "[3/2]_2", "-p", "3"]);
    assert_eq!(code(&o), 0);
    // (1/3)(2*3/2 + 1/2)
    assert_eq!(stdout(&o), "7/6\n");
}

#[test]
fn compose_with_wild_cap() {
    let o = ramify2(&["compose", "[2,3,7/2]_9", "[2,3,4]_15", "--max-wild", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[2,3,7/2,4]_45\n");
    let o = ramify2(&["compose", "[2,3,7/2]_9", "[2,3,4]_15"]);
    assert_eq!(stdout(&o), "[2,2,3,3,7/2,4]_45\n");
}

#[test]
fn infeasible_cap_is_a_domain_error() {
    let o = ramify2(&["compose", "[2,3,7/2]_9", "[2,3,4]_15", "--max-wild", "3"]);
    assert_eq!(code(&o), 1);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn check_reports_consistency_through_the_status() {
    let ok = ramify2(&["check", "[2,3]_1", "[3,4]_1", "[2,3,4]_1"]);
    assert_eq!((code(&ok), stdout(&ok).as_str()), (0, "consistent\n"));
    let bad = ramify2(&["check", "[2,3]_1", "[3,4]_1", "[2,4]_1"]);
    assert_eq!((code(&bad), stdout(&bad).as_str()), (1, "inconsistent\n"));
}

#[test]
fn maximal_tower() {
    let o = ramify2(&[
        "tower", "-p", "2", "-e", "1", "-f", "1", "--nu", "max", "--steps", "3",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("step 1: nu=3 c=3 S=3"), "{text}");
    assert!(text.contains("step 3: nu=9 c=31 S=5 dS=1"), "{text}");
}

#[test]
fn tower_with_explicit_base_exponent() {
    let o = ramify2(&[
        "tower", "-p", "2", "-e", "3", "-f", "1", "--c0", "2", "--nu", "6,13", "--steps", "2",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bad = ramify2(&[
        "tower", "-p", "2", "-e", "3", "-f", "1", "--c0", "5", "--nu", "3", "--steps", "1",
    ]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn bound_from_fraction_and_decimal() {
    for g in ["97/24", "4.0416"] {
        let o = ramify2(&["bound", "--gms", g]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), "110\n");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["gms"],
        &["gms", "[3,4"],
        &["gms", "3,4]_1"],
        &["compose", "[2]_1", "--max-wild", "x"],
        &["tower", "-p", "2", "-e", "1", "-f", "1", "--nu", "max"],
        &["tower", "-p", "2", "-e", "1", "-f", "1", "--nu", "1,x"],
        &[
            "tower", "-p", "2", "-e", "1", "-f", "1", "--nu", "3,5", "--steps", "3",
        ],
        &["bound", "--gms", "four"],
        &["caps", "--degree", "9", "--mode", "lazy"],
        &["eliminate", "--degree", "9"],
        &["report", "--format", "yaml"],
    ];
    for args in cases {
        let o = ramify2(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_with_one() {
    let cases: &[&[&str]] = &[
        &["gms", "[1]_1"],
        &["gms", "[3]_2"],
        &["gms", "[3]_1", "-p", "4"],
        &[
            "tower", "-p", "2", "-e", "2", "-f", "1", "--nu", "max", "--steps", "1",
        ],
        &[
            "tower", "-p", "2", "-e", "1", "-f", "1", "--nu", "99", "--steps", "1",
        ],
        &["caps", "--degree", "8"],
        &[
            "eliminate",
            "--degree",
            "9",
            "--catalog",
            "/nonexistent/groups.dat",
        ],
    ];
    for args in cases {
        let o = ramify2(args);
        assert_eq!(
            code(&o),
            1,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(code(&ramify2(&["--help"])), 0);
    assert_eq!(code(&ramify2(&["--version"])), 0);
}

#[test]
fn fractions_never_print_as_decimals() {
    let o = ramify2(&["caps", "--degree", "12"]);
    let text = stdout(&o);
    assert!(!text.contains('.'), "{text}");
    assert!(text.contains("495/112"));
}

#[test]
fn json_matches_schema_and_text() {
    let cases: &[(&str, &[&str])] = &[
        ("gms", &["gms", "[2,3,7/2,4,17/4,5]_7"]),
        (
            "compose",
            &["compose", "[2,3,7/2]_9", "[2,3,4]_15", "--max-wild", "5"],
        ),
        ("check", &["check", "[3]_1", "[3]_1", "[3,3]_1"]),
        (
            "tower",
            &[
                "tower", "-p", "3", "-e", "2", "-f", "2", "--nu", "min", "--steps", "3",
            ],
        ),
        ("bound", &["bound", "--gms", "107/24"]),
        ("caps", &["caps", "--degree", "9", "--mode", "exhaustive"]),
        ("caps", &["caps", "--degree", "15"]),
    ];
    for (def, args) in cases {
        let (status, doc) = json(args);
        assert_eq!(status, 0, "{args:?}");
        assert_valid(&schema("commands.schema.json", Some(def)), &doc);
        let text = stdout(&ramify2(args));
        // every computed scalar in the JSON appears in the text form
        for fact in scalar_facts(&doc)
            .into_iter()
            .filter(|f| !args.contains(&f.as_str()))
        {
            assert!(
                text.contains(&fact),
                "{args:?}: {fact} missing from\n{text}"
            );
        }
    }
}

fn scalar_facts(doc: &Value) -> Vec<String> {
    let mut out = Vec::new();
    collect(doc, None, &mut out);
    out
}

fn collect(v: &Value, key: Option<&str>, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| collect(x, Some(k), out)),
        Value::Array(a) => a.iter().for_each(|x| collect(x, key, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Number(n) if !matches!(key, Some("p" | "e" | "max_wild")) => out.push(n.to_string()),
        Value::Bool(b) if key == Some("consistent") => {
            out.push(if *b { "consistent" } else { "inconsistent" }.to_string())
        }
        _ => {}
    }
}

#[test]
fn eliminate_degree_fifteen() {
    let catalog = common::catalog_path();
    let o = ramify2(&[
        "eliminate",
        "--degree",
        "15",
        "--catalog",
        catalog.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with("survivors: none"));
}

#[test]
fn catalog_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ramify2"))
        .args(["eliminate", "--degree", "13", "--format", "json"])
        .env("RAMIFY2_CATALOG", common::catalog_path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_valid(&schema("commands.schema.json", Some("eliminate")), &doc);
    assert_eq!(doc["survivors"], Value::Array(vec![]));
}

#[test]
fn report_json_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let catalog = common::catalog_path();
    let o = ramify2(&[
        "report",
        "--catalog",
        catalog.to_str().unwrap(),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(
        text.starts_with("theorem: REPRODUCED (7 degrees, 0 survivors)"),
        "{text}"
    );
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_valid(&schema("report.schema.json", None), &written);
    let (status, doc) = json(&["report", "--catalog", catalog.to_str().unwrap()]);
    assert_eq!(status, 0);
    assert_eq!(doc, written);
    assert_eq!(doc["status"], "REPRODUCED");
}
