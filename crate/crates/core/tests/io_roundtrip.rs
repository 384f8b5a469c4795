use std::fs;
use std::path::PathBuf;

use derange::algebra::Algebra;
use derange::io;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn with_ext(ext: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    v.sort();
    v
}

fn owner(path: &PathBuf) -> Algebra {
    let stem = path.file_stem().unwrap().to_str().unwrap();
    let name = stem.split('_').next().unwrap();
    let p = io::read_algebra(&fixture_dir().join(format!("{name}.alg"))).unwrap();
    Algebra::build(p).unwrap()
}

#[test]
fn algebra_files_are_fixed_points() {
    let files = with_ext("alg");
    assert!(files.len() >= 10);
    for f in files {
        let text = fs::read_to_string(&f).unwrap();
        let p = io::parse_algebra(&text).unwrap();
        assert_eq!(io::write_algebra(&p), text, "{}", f.display());
    }
}

#[test]
fn complex_files_are_fixed_points() {
    for f in with_ext("cx") {
        let alg = owner(&f);
        let text = fs::read_to_string(&f).unwrap();
        let x = io::parse_complex(&alg, &text).unwrap();
        assert_eq!(io::write_complex(&alg, &x), text, "{}", f.display());
    }
}

#[test]
fn module_files_are_fixed_points() {
    for f in with_ext("mod") {
        let alg = owner(&f);
        let text = fs::read_to_string(&f).unwrap();
        let m = io::parse_module(&alg, &text).unwrap();
        assert_eq!(io::write_module(&alg, &m), text, "{}", f.display());
    }
}

#[test]
fn functor_files_resolve() {
    for f in with_ext("functor") {
        io::read_functor(&f).unwrap();
    }
}

#[test]
fn errors_carry_positions() {
    let bad = "{\n  \"prime\": 2,\n  \"vertices\": [\"1\"],\n  \"arrows\": [ oops ]\n}";
    let msg = io::parse_algebra(bad).unwrap_err().to_string();
    assert!(msg.contains("line 4"), "{msg}");
}
