use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn knotforge(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_knotforge"))
        .args(args)
        .env_remove("KNOTFORGE_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(s) = stdin {
        child.stdin.take().unwrap().write_all(s.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = knotforge(args, None);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    knotforge(args, None).status.code().expect("exit code")
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn realize_eval_round_trip() {
    let cases = [
        ("1-2z^2+2z^4", "1"),
        ("1 + z^2", "1"),
        ("1 - z^2", "1"),
        ("1 + 3z^2 - z^4", "1"),
        ("z + z^3", "2"),
        ("-2z + z^3 - z^5", "2"),
        ("z^2 + z^4", "3"),
        ("z^3", "4"),
    ];
    for (poly, n) in cases {
        let cert = ok(&["realize", "--nabla", poly, "--components", n, "--json"]);
        let o = knotforge(&["eval", "--pd", "-"], Some(&cert));
        assert!(o.status.success());
        let canonical: Value =
            serde_json::from_str(&ok(&["parse", "--nabla", poly, "--json"])).unwrap();
        let first = stdout(&o).lines().next().unwrap().to_string();
        assert_eq!(
            first,
            format!("nabla: {}", canonical["nabla"].as_str().unwrap())
        );
    }
}

#[test]
fn delta_input() {
    let out = ok(&["realize", "--delta", "t - 1 + t^-1"]);
    assert!(out.starts_with("nabla: 1 + z^2\n"));
}

#[test]
fn documented_examples() {
    assert_eq!(
        ok(&["surgery", "triples", "--k", "1", "--n", "2"]),
        "8 5 -3\n"
    );
    assert_eq!(ok(&["normalize", "M(-1/3;0)"]), "M(2/3;-1)\n");
    assert!(ok(&["eval", "--conway", "0"]).starts_with("nabla: 0\n"));
    let r = ok(&["realize", "--nabla", "1-2z^2+2z^4", "--components", "1"]);
    assert!(r.lines().any(|l| l == "d: 2"));
    assert!(r.lines().any(|l| l == "canonical genus: 2"));
    let r = ok(&["realize", "--nabla", "z^2+z^4", "--components", "3"]);
    assert!(r.lines().any(|l| l == "components: 3"));
    assert_eq!(ok(&["surgery", "v2", "-3", "5", "7"]), "0\n");
    assert_eq!(
        ok(&["surgery", "volume", "--q-max", "7"]),
        "7 5 -3\n17 7 -5\n"
    );
}

#[test]
fn bound_reports_twists() {
    let cert = ok(&["realize", "--nabla", "1 - 2z^2 + 2z^4", "--json"]);
    let o = knotforge(&["bound", "--pd", "-", "--json"], Some(&cert));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let t = v["t_strong"].as_f64().unwrap();
    let b = v["volume_bound"].as_f64().unwrap();
    assert!((b - 10.0 * 1.0149416064096536 * (t - 1.0)).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["surgery", "triples", "--k", "1", "--n", "2"]), 0);
    assert_eq!(code(&["realize", "--nabla", "z^2", "--components", "3"]), 3);
    assert_eq!(code(&["realize", "--nabla", "1 + z"]), 2);
    assert_eq!(code(&["realize", "--nabla", "1 + z^"]), 2);
    assert_eq!(code(&["realize", "--nabla", "0", "--components", "2"]), 2);
    assert_eq!(code(&["surgery", "triples", "--k", "0", "--n", "2"]), 2);
    assert_eq!(code(&["surgery", "v2", "2", "1", "1"]), 2);
    assert_eq!(code(&["normalize", "M(3/2;0)"]), 2);
    assert_eq!(code(&["eval", "--pd", "/nonexistent/file.pd"]), 2);
    assert_eq!(code(&["eval", "--conway", "(2,"]), 2);
    assert_eq!(code(&["--limit", "2", "eval", "--conway", "3"]), 4);
    assert_eq!(code(&["eval", "--bogus"]), 2);
    assert_eq!(code(&[]), 2);
    let o = knotforge(&["eval", "--pd", "-"], Some("X[1,2,3] +1\n"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn limit_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_knotforge"))
        .args(["eval", "--conway", "5"])
        .env("KNOTFORGE_LIMIT", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn json_outputs_match_schema() {
    let v = schema();
    let cert = ok(&["realize", "--nabla", "1 + z^2", "--json"]);
    let pd = serde_json::from_str::<Value>(&cert).unwrap()["pd"]
        .as_str()
        .unwrap()
        .to_string();
    let mut outputs = vec![cert.clone()];
    for args in [
        &[
            "realize",
            "--nabla",
            "z + z^3",
            "--components",
            "2",
            "--json",
        ][..],
        &[
            "realize",
            "--nabla",
            "z^2 + z^4",
            "--components",
            "3",
            "--json",
        ],
        &["realize", "--nabla", "1", "--json"],
        &["eval", "--conway", "(2,2,-2)(2,-2,2,-2,2)", "--json"],
        &["eval", "--conway", "0", "--json"],
        &["parse", "--nabla", "1 - z^2", "--json"],
        &["parse", "--delta", "t^2 - t + 1 - t^-1 + t^-2", "--json"],
        &["parse", "--conway", "2 1 3", "--json"],
        &["normalize", "M(-1/3,1/2,1/5;0)", "--json"],
        &["surgery", "triples", "--k", "2", "--n", "-1", "--json"],
        &["surgery", "volume", "--q-max", "11", "--json"],
        &["surgery", "v2", "1", "1", "1", "--json"],
        &["family", "--nabla", "1 + z^2", "--count", "2", "--json"],
        &[
            "family",
            "--nabla",
            "z^3",
            "--components",
            "4",
            "--count",
            "2",
            "--json",
        ],
    ] {
        outputs.push(ok(args));
    }
    for (args, input) in [
        (&["eval", "--pd", "-", "--json"][..], &cert),
        (&["parse", "--pd", "-", "--json"], &pd),
        (&["bound", "--pd", "-", "--json"], &pd),
        (
            &[
                "surgery",
                "apply",
                "--pd",
                "-",
                "--site",
                "0,1",
                "--n",
                "2",
                "--mirrored",
                "--json",
            ],
            &pd,
        ),
    ] {
        let o = knotforge(args, Some(input));
        assert!(
            o.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        outputs.push(stdout(&o));
    }
    for out in outputs {
        for line in out.lines() {
            let inst: Value = serde_json::from_str(line).unwrap();
            let errors: Vec<String> = v.iter_errors(&inst).map(|e| e.to_string()).collect();
            assert!(errors.is_empty(), "{line}: {errors:?}");
        }
    }
}
