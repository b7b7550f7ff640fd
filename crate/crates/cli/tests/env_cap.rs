use std::fs;

use insep_cli::{dispatch, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};

fn chase(path: &str, extra: &[&str]) -> i32 {
    let mut argv = vec!["insep"];
    argv.extend_from_slice(extra);
    argv.extend(["chase", "--kb", path]);
    dispatch(argv, &mut Vec::new(), &mut Vec::new())
}

// Single test: the process environment is shared by every test in a binary.
#[test]
fn witness_cap_from_environment() {
    let d = tempfile::tempdir().unwrap();
    let p = d.path().join("kb.dl");
    fs::write(&p, "(sub A (some r B))\n(sub B (some r C))\n(sub C (some r D))\n(ca A a)\n").unwrap();
    let p = p.to_string_lossy().into_owned();
    assert_eq!(chase(&p, &[]), EXIT_OK);
    std::env::set_var("INSEP_WITNESS_CAP", "2");
    assert_eq!(chase(&p, &[]), EXIT_RESOURCE);
    assert_eq!(chase(&p, &["--witness-cap", "10"]), EXIT_OK);
    std::env::set_var("INSEP_WITNESS_CAP", "many");
    assert_eq!(chase(&p, &[]), EXIT_USAGE);
    std::env::remove_var("INSEP_WITNESS_CAP");
    assert_eq!(chase(&p, &[]), EXIT_OK);
}
