use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn schema(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join(format!("schemas/v1/{name}.schema.json"))).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    jsonschema::draft202012::new(&v).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn read(path: PathBuf) -> Value {
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn corpus_documents_match_the_schema() {
    let s = schema("document");
    let mut seen = 0;
    for entry in std::fs::read_dir(root().join("corpus")).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let doc = read(p.clone());
            let errors: Vec<String> = s.iter_errors(&doc).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{}: {errors:?}", p.display());
            seen += 1;
        }
    }
    assert_eq!(seen, 10);
    let d = schema("divisor");
    assert!(d.is_valid(&read(root().join("corpus/divisors/ex48.json"))));
    assert!(!d.is_valid(&serde_json::json!({ "m": 0 })));
    assert!(!d.is_valid(&serde_json::json!({ "m": 1, "mults": { "H": 0.5 } })));
}

#[test]
fn outputs_match_their_schemas() {
    let bin = env!("CARGO_BIN_EXE_katoskel");
    let run = |args: &[&str]| Command::new(bin).args(args).current_dir(root()).output().unwrap();
    let err = run(&["fan", "--input", "no_such_input"]);
    assert!(schema("error").is_valid(&serde_json::from_slice(&err.stderr).unwrap()));
    let ok = run(&["validate", "--input", "crates/cli/tests/data/bad_action.json"]);
    assert!(schema("validate").is_valid(&serde_json::from_slice(&ok.stdout).unwrap()));
}
