use std::collections::BTreeSet;

use gm_core::enumeration::{sweep, sweep_persistent, Check};
use gm_core::partition::DEFAULT_TOLERANCE;

fn checks() -> BTreeSet<Check> {
    [Check::Gm, Check::Decompose].into_iter().collect()
}

#[test]
fn sweep_is_deterministic() {
    let base = sweep(5, &checks(), 1).unwrap();
    assert_eq!(base.total_classes, 34);
    assert!(base.counterexamples.is_empty());
    for workers in [2, 3, 8] {
        let r = sweep(5, &checks(), workers).unwrap();
        assert_eq!(r.to_csv(), base.to_csv());
        assert_eq!(r.summary_json(), base.summary_json());
    }
}

#[test]
fn persistent_sweep_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let (first, resumed) = sweep_persistent(5, &checks(), 2, DEFAULT_TOLERANCE, dir.path()).unwrap();
    assert!(!resumed);
    let (second, resumed) = sweep_persistent(5, &checks(), 4, DEFAULT_TOLERANCE, dir.path()).unwrap();
    assert!(resumed);
    assert_eq!(first.to_csv(), second.to_csv());
    let on_disk = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(on_disk, first.to_csv());
}
