use std::panic::catch_unwind;
use std::process::Command;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use systole_cli::run;

const BUILTINS: [&str; 6] = ["torus-square", "torus-hex", "torus-rect", "genus2-octagon", "rp2-icosa", "sphere-tetra"];

fn results(stdout: &str) -> Value {
    serde_json::from_str::<Value>(stdout).unwrap()["results"].clone()
}

#[test]
fn generated_surfaces_validate() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTINS {
        for k in 0..=3 {
            let path = dir.path().join(format!("{name}-{k}.json"));
            let p = path.to_str().unwrap();
            let gen = run(["gen", name, "-k", &k.to_string(), "--out", p]);
            assert_eq!(gen.code, 0, "{name} k={k}: {}", gen.stderr);
            let check = run(["validate", "--input", p]);
            assert_eq!(check.code, 0, "{name} k={k}: {}", check.stderr);
            let r = results(&check.stdout);
            assert_eq!(r["valid"], true);
            assert_eq!(r, results(&gen.stdout), "{name} k={k}");
        }
    }
}

#[test]
fn generator_examples() {
    let r = results(&run(["validate", "--input", "torus-square", "-k", "2"]).stdout);
    assert_eq!((r["genus"].as_i64(), r["area"].as_f64()), (Some(1), Some(1.0)));
    let r = results(&run(["validate", "--input", "genus2-octagon", "-k", "1"]).stdout);
    assert_eq!(r["euler_characteristic"], -2);
    let r = results(&run(["validate", "--input", "rp2-icosa"]).stdout);
    assert_eq!((r["euler_characteristic"].as_i64(), r["orientable"].as_bool()), (Some(1), Some(false)));
    assert_eq!(run(["gen", "klein-bottle"]).code, 1);
    assert_eq!(run(["gen", "torus-hex", "-k", "9"]).code, 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["systole", "--input", "genus2-octagon"],
        vec!["ratio", "--input", "torus-rect", "-k", "1"],
        vec!["pack", "--input", "torus-hex", "-k", "2", "--radius", "0.1"],
        vec!["nerve", "--input", "torus-square", "-k", "2", "--alpha", "26"],
        vec!["admissible", "--input", "torus-hex", "-k", "2", "--alpha", "30", "--an", "0.05"],
        vec!["entropy", "--input", "rp2-icosa", "-k", "1"],
        vec!["entropy", "--input", "torus-square", "--format", "csv"],
        vec!["check", "--input", "torus-hex", "--suite", "constants"],
        vec!["check", "--input", "genus2-octagon", "--suite", "sabourau", "--alpha", "0.05", "--beta", "0.1"],
        vec!["optimize", "--seed", "17"],
        vec!["optimize", "--input", "torus-square", "--format", "csv"],
    ];
    for cmd in commands {
        let (a, b) = (run(cmd.clone()), run(cmd.clone()));
        assert_eq!(a.code, 0, "{cmd:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
    }
    let with_threads = run(["optimize", "--seed", "17", "--threads", "1"]);
    assert_eq!(results(&with_threads.stdout), results(&run(["optimize", "--seed", "17"]).stdout));
}

#[test]
fn spec_examples() {
    let r = results(&run(["systole", "--input", "torus-square", "-k", "2"]).stdout);
    assert_eq!((r["systole"].as_f64(), r["kind"].as_str(), r["certified"].as_bool()), (Some(1.0), Some("homotopy"), Some(true)));
    let r = results(&run(["check", "--input", "torus-hex", "--suite", "constants"]).stdout);
    let loewner = r["checks"].as_array().unwrap().iter().find(|c| c["check"] == "loewner").unwrap();
    assert_eq!(loewner["verdict"], true);
    assert_eq!(run(["systole", "--input", "missing.json"]).code, 1);
    let csv = run(["entropy", "--input", "torus-square", "--format", "csv"]).stdout;
    assert!(csv.starts_with("L,count\n"));
    assert_eq!(run(["entropy", "--input", "torus-square", "--format", "xml"]).code, 1);
    let r = results(&run(["check", "--input", "genus2-octagon", "--suite", "sabourau"]).stdout);
    assert_eq!(r["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["--help"]).code, 0);
    assert_eq!(run(["frobnicate"]).code, 1);
    assert_eq!(run(["systole"]).code, 1);
    assert_eq!(run(["pack", "--input", "torus-hex"]).code, 1);
    assert_eq!(run(["pack", "--input", "torus-hex", "--radius", "-1"]).code, 1);
    assert_eq!(run(["admissible", "--input", "torus-hex", "--alpha", "20"]).code, 1);
    assert_eq!(run(["entropy", "--input", "torus-hex", "--window", "5:2"]).code, 1);
    assert_eq!(run(["systole", "--input", "sphere-tetra"]).code, 1);
    assert_eq!(run(["check", "--input", "torus-hex", "--suite", "nope"]).code, 1);
    assert_eq!(run(["systole", "--input", "torus-hex", "--threads", "0"]).code, 1);
    // Developing the genus-2 cover to length 9 exceeds the vertex cap.
    assert_eq!(run(["entropy", "--input", "genus2-octagon", "--window", "6:9"]).code, 2);
}

/// Edits of a valid surface file that break the format or the surface axioms.
fn structural_breaks(valid: &Value) -> Vec<String> {
    let mut out = Vec::new();
    let edit = |f: &dyn Fn(&mut Value)| {
        let mut v = valid.clone();
        f(&mut v);
        v.to_string()
    };
    out.push(edit(&|v| v["lengths"][0][1] = Value::from(-1.0)));
    out.push(edit(&|v| v["lengths"][0][1] = Value::from(100.0)));
    out.push(edit(&|v| v["lengths"][2] = Value::from("x")));
    out.push(edit(&|v| v["triangles"][0][0] = Value::from(-3)));
    out.push(edit(&|v| v["triangles"][0][0] = Value::from(10_000)));
    out.push(edit(&|v| v["triangles"][0][2] = v["triangles"][0][0].clone()));
    out.push(edit(&|v| {
        v["triangles"].as_array_mut().unwrap().pop();
        v["lengths"].as_array_mut().unwrap().pop();
    }));
    out.push(edit(&|v| {
        v["lengths"].as_array_mut().unwrap().pop();
    }));
    out.push(edit(&|v| {
        v.as_object_mut().unwrap().remove("lengths");
    }));
    out.push(edit(&|v| {
        let t = v["triangles"][0].clone();
        v["triangles"].as_array_mut().unwrap().push(t);
        let l = v["lengths"][0].clone();
        v["lengths"].as_array_mut().unwrap().push(l);
    }));
    out.push(edit(&|v| v["triangles"] = Value::Array(Vec::new())));
    out.push("[1, 2, 3]".into());
    out.push("{\"basis\": [[1, 0], [2, 0]]}".into());
    out.push("{\"tau\": [0.5, -1]}".into());
    out.push("{\"basis\": [[1, 0, 0], [0, 1]]}".into());
    out.push(String::new());
    out
}

#[test]
fn malformed_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = run(["gen", "torus-hex"]).stdout;
    let valid: Value = serde_json::from_str(&text).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases = structural_breaks(&valid);
    for _ in 0..60 {
        let cut = rng.gen_range(0..text.trim_end().len() - 1);
        cases.push(text[..cut].to_string());
    }
    for (i, case) in cases.iter().enumerate() {
        let path = dir.path().join(format!("case{i}.json"));
        std::fs::write(&path, case).unwrap();
        let p = path.to_str().unwrap().to_string();
        for verb in ["validate", "systole", "ratio"] {
            let out = catch_unwind(|| run([verb, "--input", &p])).unwrap_or_else(|_| panic!("{verb} panicked on case {i}"));
            assert_eq!(out.code, 1, "{verb} case {i}: {case:.80}");
            assert!(!out.stderr.is_empty(), "{verb} case {i}");
        }
    }
    // Random byte flips either still parse to a valid object or exit with 1.
    let bytes = text.as_bytes();
    for i in 0..200 {
        let mut b = bytes.to_vec();
        for _ in 0..rng.gen_range(1..4) {
            let at = rng.gen_range(0..b.len());
            let alphabet = b"{}[],:0123456789.-\"ax ";
            b[at] = alphabet[rng.gen_range(0..alphabet.len())];
        }
        let path = dir.path().join(format!("flip{i}.json"));
        std::fs::write(&path, &b).unwrap();
        let p = path.to_str().unwrap().to_string();
        let out = catch_unwind(|| run(["validate", "--input", &p])).unwrap_or_else(|_| panic!("flip {i} panicked"));
        assert!(out.code == 0 || out.code == 1, "flip {i}: {}", out.code);
        if out.code == 0 {
            assert_eq!(results(&out.stdout)["valid"], true);
        }
    }
}

#[test]
fn cache_directory_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_systole-lab");
    let go = || {
        Command::new(bin)
            .args(["entropy", "--input", "genus2-octagon", "--window", "2:4"])
            .env("SYSTOLE_LAB_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = go();
    assert_eq!(first.stdout, second.stdout);
    let plain = Command::new(bin)
        .args(["entropy", "--input", "genus2-octagon", "--window", "2:4"])
        .env_remove("SYSTOLE_LAB_CACHE")
        .output()
        .unwrap();
    assert_eq!(first.stdout, plain.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(["ratio", "--input", "torus-hex", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let ratio = results(&written)["ratio"].as_f64().unwrap();
    assert!((ratio - 0.866025403784).abs() < 1e-12);
}
