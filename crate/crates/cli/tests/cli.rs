use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use steinberg_core::{builtin, HermSpace, ScalarMode};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steinberg-lab")).args(args).env_remove("STEINBERG_LAB_SEED").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steinberg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn spectral_a2_trivial_mod_2_has_order_168() {
    let out = bin(&["spectral", "--family", "a2", "--algebra", "trivial", "--mod", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 168);
    assert!(v["gap"].as_f64().unwrap() > 0.0);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn spectral_cap_and_generator_files() {
    let out = bin(&["spectral", "--algebra", "trivial", "--mod", "3", "--cap", "100"]);
    assert_eq!(out.status.code(), Some(2));
    // G_{w1-w2}(1) and G_{w2-w1}(1) generate SL2(F3), of order 24.
    let path = scratch("gens.json");
    std::fs::write(&path, r#"[{"root": "w1-w2", "param": ["1"]}, {"root": "w2-w1", "param": [1]}]"#).unwrap();
    let out = bin(&["spectral", "--algebra", "trivial", "--mod", "3", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["order"], 24);
    std::fs::write(&path, r#"[{"root": "2w1", "param": ["1"]}]"#).unwrap();
    let out = bin(&["spectral", "--algebra", "trivial", "--mod", "3", "--generators", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn table_has_one_row_per_nonzero_product() {
    let out = bin(&["table", "--algebra", "split-octonions", "--mod", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let h = HermSpace::new(&builtin("split-octonions", ScalarMode::Modular(5)).unwrap()).unwrap();
    let mut expected = 0;
    for a in 0..h.dim() {
        for b in 0..h.dim() {
            expected += usize::from(!h.u_basis(a, b).is_zero()) + h.triple_basis_row(a, b).len();
        }
    }
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("product,x,y,z,value"));
    assert_eq!(lines.count(), expected);
}

#[test]
fn dump_tkk_reports_dimensions() {
    let out = bin(&["dump-tkk", "--algebra", "octonions"]);
    let v = json(&out);
    assert_eq!(v["dim"], 133);
    assert_eq!(v["dim_l0"], 79);
    assert_eq!(v["dim_plus"], 27);
}

#[test]
fn corrupted_algebra_files_name_the_axiom() {
    let o = builtin("quaternions", ScalarMode::Rational).unwrap();
    let mut v = o.to_json();
    v["unit"] = Value::from(2);
    let path = scratch("bad-unit.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let out = bin(&["verify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("axiom `unit`"));

    // Conjugation that fixes i but not j and k no longer reverses products.
    let mut v = o.to_json();
    v["involution"][1][1] = Value::from(1);
    std::fs::write(&path, v.to_string()).unwrap();
    let out = bin(&["verify", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("involution reverses products"), "{}", String::from_utf8_lossy(&out.stderr));

    let good = scratch("quaternions.json");
    std::fs::write(&good, o.to_json().to_string()).unwrap();
    let out = bin(&["verify", "--algebra", good.to_str().unwrap(), "--trials", "2", "--suite", "jordan", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(bin(&["verify", "--algebra", good.to_str().unwrap(), "--mod", "5"]).status.code(), Some(3));
}

#[test]
fn configuration_errors_exit_3() {
    for args in [
        &["verify", "--algebra", "sedenions"][..],
        &["verify", "--trials", "0"],
        &["verify", "--suite", "nope"],
        &["verify", "--mod", "1"],
        &["verify", "--unknown-flag"],
        &["table", "--format", "human"],
    ] {
        assert_eq!(bin(args).status.code(), Some(3), "{args:?}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_steinberg-lab"))
        .args(["verify", "--suite", "algebra"])
        .env("STEINBERG_LAB_SEED", "x")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn trivial_algebra_fails_only_the_printed_relations_4_to_6() {
    let out = bin(&["verify", "--algebra", "trivial", "--trials", "5", "--format", "json"]);
    let v = json(&out);
    let checks: Vec<&Value> = v["suites"].as_array().unwrap().iter().flat_map(|s| s["checks"].as_array().unwrap()).collect();
    let failing: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "fail").map(|c| c["id"].as_str().unwrap()).collect();
    // The printed forms of relations 4-6 fail in every algebra.
    assert_eq!(failing, ["c3-relation-4", "c3-relation-5", "c3-relation-6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(checks.iter().all(|c| !c["anchor"].as_str().unwrap().is_empty()));
    for id in ["c3-relation-4-computed", "c3-relation-5-computed", "c3-relation-6-computed", "a2-relation-b"] {
        assert!(checks.iter().any(|c| c["id"] == id && c["status"] == "pass"), "{id}");
    }
}

#[test]
fn seed_variable_overrides_the_flag() {
    let run = |seed_flag: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_steinberg-lab"));
        c.args(["commutators", "--algebra", "trivial", "--mod", "5", "--trials", "2", "--seed", seed_flag]);
        match env {
            Some(e) => c.env("STEINBERG_LAB_SEED", e),
            None => c.env_remove("STEINBERG_LAB_SEED"),
        };
        c.output().unwrap().stdout
    };
    assert_eq!(run("1", Some("7")), run("7", None));
    assert_ne!(run("1", None), run("7", None));
}

#[test]
fn human_reports_print_anchors() {
    let out = bin(&["verify", "--algebra", "quaternions", "--trials", "2", "--suite", "c3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("c3-relation-7: relation (7): [G_{wi-wj}(r), G_{wi+wj}(s)] = G_{2wi}(-rs*-sr*)"), "{text}");
    assert!(text.contains("[g,h] = g^-1 h^-1 g h"));
}
