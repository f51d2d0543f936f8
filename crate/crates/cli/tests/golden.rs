mod common;

use common::{golden_dir, invoke, CASES};

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for (name, args) in CASES {
        let (code, out, err) = invoke(args);
        assert_eq!(code, 0, "{name}: {err}");
        let path = golden_dir().join(name);
        if update {
            std::fs::write(&path, &out).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if out != expected {
            stale.push(*name);
        }
    }
    assert!(
        stale.is_empty(),
        "outputs differ from golden files: {stale:?} (rerun with UPDATE_GOLDEN=1 after review)"
    );
}

#[test]
fn repeated_runs_are_identical() {
    for (name, args) in CASES {
        let first = invoke(args);
        let second = invoke(args);
        assert_eq!(first, second, "{name}");
    }
}

#[test]
fn json_goldens_parse() {
    for (name, _) in CASES.iter().filter(|(n, _)| n.ends_with(".json")) {
        let text = std::fs::read_to_string(golden_dir().join(name)).unwrap();
        assert!(text.ends_with('\n'));
        serde_json::from_str::<serde_json::Value>(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
