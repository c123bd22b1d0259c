use std::path::PathBuf;

use katoskel::corpus::{self, NAMES};
use katoskel::io::{parse_document, to_canonical_json};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Set `KATOSKEL_BLESS=1` to rewrite the files from the built-in documents.
#[test]
fn corpus_files_are_canonical_and_round_trip() {
    let bless = std::env::var_os("KATOSKEL_BLESS").is_some();
    for name in NAMES {
        let doc = corpus::document(name).unwrap();
        let canonical = to_canonical_json(&doc);
        let path = corpus_dir().join(format!("{name}.json"));
        if bless {
            std::fs::write(&path, &canonical).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, canonical, "{name} on disk differs from the built-in document");
        let parsed = parse_document(&text).unwrap();
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(to_canonical_json(&parsed), text, "{name} is not byte-stable");
    }
}
