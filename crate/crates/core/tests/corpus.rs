use std::path::PathBuf;
use std::time::Instant;

use nsg_core::corpus::{load_dir, run_cases};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/corpus")
}

#[test]
fn every_corpus_case_passes() {
    let cases = load_dir(&corpus_dir()).unwrap();
    assert!(cases.len() >= 30, "corpus has only {} cases", cases.len());
    let start = Instant::now();
    let outcomes = run_cases(&cases);
    let mut failed = Vec::new();
    for o in &outcomes {
        println!("{} {} ({})", if o.passed { "ok  " } else { "FAIL" }, o.id, o.anchor);
        if !o.passed {
            failed.push(format!("{}: {:?} {:?}", o.id, o.error, o.mismatches));
        }
    }
    println!("{} cases in {:?}", outcomes.len(), start.elapsed());
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn ids_match_file_names_and_are_unique() {
    let dir = corpus_dir();
    let cases = load_dir(&dir).unwrap();
    let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
    for id in &ids {
        assert!(dir.join(format!("{id}.json")).exists(), "{id}");
    }
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), cases.len());
}
