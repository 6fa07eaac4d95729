use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use stabforge_core::speclang::build_group_spec;
use stabforge_core::Limits;

fn stabforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabforge"))
        .args(args)
        .env_remove("STABFORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| {
            l.strip_prefix(key)
                .filter(|rest| rest.starts_with("  "))
                .map(str::trim)
        })
        .unwrap_or_else(|| panic!("no {key} line in\n{text}"))
}

#[test]
fn find_as8_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = stabforge(&[
        "find",
        "AS(2,3)",
        "--pair",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&path);
    let keys: Vec<&str> = doc
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "format_version",
            "spec",
            "degree",
            "group_order",
            "delta",
            "stabilizer",
            "nice_pair",
            "trace",
            "bounds",
            "census",
            "rng_seed",
            "modulus_table_version"
        ]
    );
    assert_eq!(doc["group_order"], "168");
    assert!(["1", "3"].contains(&doc["stabilizer"]["o2_order"].as_str().unwrap()));
    assert_eq!(doc["stabilizer"]["verdict"]["required_structure"], true);
    assert_eq!(doc["stabilizer"]["verdict"]["is_2_group"], false);
    let pair = &doc["nice_pair"];
    let (d1, d2) = (
        pair["delta1"].as_array().unwrap(),
        pair["delta2"].as_array().unwrap(),
    );
    assert!(d1.len() < d2.len() && 2 * d2.len() <= 8);
}

#[test]
fn find_s4_wr_s4_not_nilpotent() {
    let out = stabforge(&["find", "wr(Sym(4),Sym(4))"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(field(&text, "required structure"), "true");
    assert_eq!(field(&text, "nilpotent"), "false");
}

#[test]
fn find_exit_codes() {
    assert_eq!(code(&stabforge(&["find", "Sym(5)"])), 3);
    assert_eq!(code(&stabforge(&["find", "Sym("])), 2);
    assert_eq!(code(&stabforge(&["find", "Frob(7)"])), 2);
    assert_eq!(
        code(&stabforge(&["--degree-cap", "10", "find", "AGL(1,11)"])),
        5
    );
    assert_eq!(
        code(&stabforge(&[
            "--elem-cap",
            "100",
            "find",
            "AS(2,3)",
            "--bounds"
        ])),
        5
    );
}

#[test]
fn verify_exit_codes() {
    let out = stabforge(&["verify", "AS(2,3)", "--set", "1,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "stabilizer order"), "6");

    let out = stabforge(&["verify", "AS(2,3)", "--set", ""]);
    assert_eq!(code(&out), 1);
    assert_eq!(field(&stdout(&out), "stabilizer order"), "168");

    assert_eq!(code(&stabforge(&["verify", "AS(2,3)", "--set", "9"])), 2);
    assert_eq!(code(&stabforge(&["verify", "AS(2,3)", "--set", "1,x"])), 2);
    assert_eq!(code(&stabforge(&["verify", "AS(2,", "--set", "1"])), 2);
}

#[test]
fn verify_asl_order_three_set() {
    let g = build_group_spec("ASL(2,3)", &Limits::default()).unwrap();
    let t = g
        .elements(1000)
        .unwrap()
        .find(|x| x.order() == 3 && x.fixed_count() > 0)
        .unwrap();
    let fixed = (0..9).find(|&p| t.image(p) == p).unwrap();
    let cycle = t.cycles().into_iter().find(|c| c.len() == 3).unwrap();
    let mut points: Vec<usize> = std::iter::once(fixed).chain(cycle).map(|p| p + 1).collect();
    points.sort();
    let set: Vec<String> = points.iter().map(ToString::to_string).collect();
    let out = stabforge(&["verify", "ASL(2,3)", "--set", &set.join(",")]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "stabilizer order"), "3");
}

#[test]
fn certificate_replays_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for spec in [
        "AS(2,3)",
        "wr(Sym(4),Sym(4))",
        "prodwr(Sym(3),Sym(3))",
        "wr(Cyc(2),AGL(1,11))",
        "AGL(2,3)",
    ] {
        let cert = dir.path().join("cert.json");
        let ver = dir.path().join("verify.json");
        assert_eq!(
            code(&stabforge(&[
                "find",
                spec,
                "--json",
                cert.to_str().unwrap()
            ])),
            0,
            "{spec}"
        );
        let doc = read_json(&cert);
        let set: Vec<String> = doc["delta"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        let out = stabforge(&[
            "verify",
            spec,
            "--set",
            &set.join(","),
            "--json",
            ver.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "{spec}");
        let replay = read_json(&ver);
        assert_eq!(
            serde_json::to_string(&replay["stabilizer"]).unwrap(),
            serde_json::to_string(&doc["stabilizer"]).unwrap(),
            "{spec}"
        );
    }
}

#[test]
fn find_is_reproducible_under_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = stabforge(&[
            "find",
            "wr(Cyc(2),AGL(1,11))",
            "--pair",
            "--seed",
            "7",
            "--json",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(read_json(&a)["rng_seed"], 7);
}

#[test]
fn find_with_bounds_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = stabforge(&[
        "find",
        "AGL(1,7)",
        "--bounds",
        "--census",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = read_json(&path);
    assert_eq!(doc["bounds"]["degree"], 7);
    let rows = doc["census"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let examined: u64 = rows.iter().map(|r| r["examined"].as_u64().unwrap()).sum();
    assert_eq!(examined, 128);
}

#[test]
fn scan_as8_bitmap() {
    let out = stabforge(&["scan", "AS(2,3)", "--exhaustive", "--bitmap"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("G0-hit subsets: 256/256"));
}

#[test]
fn scan_as32_small_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = stabforge(&[
        "scan",
        "AS(2,5)",
        "--bitmap",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let doc = read_json(&path);
    for row in doc["hits_by_size"].as_array().unwrap() {
        if [3, 4].contains(&row["size"].as_u64().unwrap()) {
            assert_eq!(row["hit_by_g0"], 0);
        }
    }
}

#[test]
fn scan_is_deterministic_across_threads() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let path = dir.path().join(format!("scan{threads}.json"));
        let out = stabforge(&[
            "scan",
            "prodwr(Sym(3),Sym(3)) ",
            "--sample",
            "2000",
            "--seed",
            "1",
            "--threads",
            threads,
            "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        outputs.push((stdout(&out), std::fs::read(&path).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);

    let bitmap = |threads: &str| {
        stdout(&stabforge(&[
            "scan",
            "AGL(1,7)",
            "--bitmap",
            "--threads",
            threads,
        ]))
    };
    assert_eq!(bitmap("1"), bitmap("3"));
}

#[test]
fn scan_cap_errors() {
    assert_eq!(code(&stabforge(&["scan", "Sym(17)", "--exhaustive"])), 5);
    assert_eq!(
        code(&stabforge(&[
            "scan",
            "AS(2,3)",
            "--bitmap",
            "--elem-cap",
            "10"
        ])),
        5
    );
    assert_eq!(code(&stabforge(&["scan", "Sym("])), 2);
}

#[test]
fn report_bounds_product_action() {
    let out = stabforge(&["report", "bounds", "prodwr(Sym(3),Sym(3))"]);
    assert_eq!(code(&out), 0);
    let max: usize = field(&stdout(&out), "max cycle count").parse().unwrap();
    assert!(max <= 15);
    assert_eq!(
        code(&stabforge(&[
            "--elem-cap",
            "10",
            "report",
            "bounds",
            "AS(2,3)"
        ])),
        5
    );
}

#[test]
fn report_demos() {
    for demo in ["analytic", "as8", "ex34", "lemma24"] {
        let out = stabforge(&["report", "demo", demo]);
        assert_eq!(code(&out), 0, "{demo}:\n{}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
    }
    // exit 1 exactly when some claim fails
    let out = stabforge(&["report", "demo", "lemma23"]);
    let failed = stdout(&out)
        .lines()
        .filter(|l| l.contains(" FAIL "))
        .count();
    assert_eq!(code(&out), if failed == 0 { 0 } else { 1 });
}
