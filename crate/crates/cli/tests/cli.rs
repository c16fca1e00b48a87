use std::process::{Command, Output};

use serde_json::Value;

use matroid_zeta::io::MatroidSpec;
use matroid_zeta::named::corpus;
use matroid_zeta::zeta::zeta;
use matroid_zeta::{LaurentPoly, Matroid, RationalQT, ZetaKind};

fn mzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn spec_json(m: &Matroid) -> String {
    MatroidSpec::of_matroid(m).to_json().to_string()
}

#[test]
fn char_of_a_coloop() {
    let o = mzeta(&["char", "--uniform", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "chi = q - 1");
}

#[test]
fn topzeta_of_m1() {
    let o = mzeta(&["topzeta", "--named", "M1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("Z^top = (-120*s^6 + 20*s^5"), "{out}");
    assert!(out.contains("Z^top(0) = 1\n"));
    assert!(out.contains("Z^top'(0) = -7\n"));
}

#[test]
fn verify_n1_passes() {
    let o = mzeta(&["verify", "--named", "N1", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report = json_of(&mzeta(&[
        "verify",
        "--named",
        "N1",
        "--suite",
        "functional",
        "--format",
        "json",
    ]));
    assert_eq!(report["passed"], true);
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        mzeta(&["char", "--json", "{\"type\":\"bases\",\"n\":4,\"bases\":[[0,1],[2,3]]}"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mzeta(&["char", "--named", "petersen"]).status.code(), Some(2));
    assert_eq!(
        mzeta(&["verify", "--uniform", "2", "3", "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mzeta(&["char", "--uniform", "2", "10"]).status.code(), Some(3));
    assert_eq!(
        mzeta(&["char", "--uniform", "2", "10", "--force"]).status.code(),
        Some(0)
    );
    assert_eq!(
        mzeta(&["oracle", "--uniform", "2", "8", "--tmax", "2"]).status.code(),
        Some(3)
    );
    assert_eq!(
        mzeta(&["oracle", "--uniform", "2", "3", "--tmax", "11"]).status.code(),
        Some(3)
    );
    assert_eq!(mzeta(&["poincare", "--uniform", "0", "2"]).status.code(), Some(2));
}

#[test]
fn expansion_agrees_with_oracle_on_corpus() {
    for (name, m) in corpus() {
        let spec = spec_json(&m);
        for kind in ["full", "local", "reduced"] {
            let z = json_of(&mzeta(&[
                "zeta", "--json", &spec, "--kind", kind, "--expand", "5", "--format", "json",
            ]));
            let o = json_of(&mzeta(&[
                "oracle", "--json", &spec, "--kind", kind, "--tmax", "5", "--format", "json",
            ]));
            assert_eq!(z["series"], o["series"], "{name} {kind}");
        }
    }
}

#[test]
fn json_round_trips() {
    let v = json_of(&mzeta(&[
        "zeta", "--named", "fano", "--kind", "reduced", "--format", "json",
    ]));
    let parsed = RationalQT::from_json(&v["zeta"]).unwrap();
    let expected = zeta(&matroid_zeta::named::fano(), ZetaKind::Reduced)
        .unwrap()
        .collapse();
    assert_eq!(parsed, expected);
    let c = json_of(&mzeta(&["char", "--named", "k4", "--format", "json"]));
    let chi = LaurentPoly::from_json(&c["chi"]).unwrap();
    assert_eq!(chi, "q^3 - 6*q^2 + 11*q - 6".parse().unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["zeta", "--named", "nonfano", "--building-set", "min", "--expand", "3"];
    assert_eq!(mzeta(&args).stdout, mzeta(&args).stdout);
    let args = ["verify", "--named", "k4", "--format", "json"];
    assert_eq!(mzeta(&args).stdout, mzeta(&args).stdout);
}

#[test]
fn building_set_from_file() {
    let dir = std::env::temp_dir().join(format!("mzeta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("atoms.json");
    std::fs::write(&good, "[[0],[1],[2],[0,1,2]]").unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "[[0],[1],[2]]").unwrap();
    let by_file = mzeta(&["zeta", "--uniform", "2", "3", "--building-set", good.to_str().unwrap()]);
    let by_max = mzeta(&["zeta", "--uniform", "2", "3"]);
    assert!(by_file.status.success());
    assert_eq!(by_file.stdout, by_max.stdout);
    assert_eq!(
        mzeta(&["zeta", "--uniform", "2", "3", "--building-set", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn poincare_of_a_line() {
    let out = stdout(&mzeta(&["poincare", "--uniform", "2", "3"]));
    assert!(out.contains("Hilbert series = q^2 + 1\n"), "{out}");
}
