use std::process::Command;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::Value;
use tame2::{AutoMap, Coeff, Monomial, Poly2, Ring};
use tame2_cli::grammar::{format_map, format_poly, format_ring, parse_map, parse_poly, parse_ring};
use tame2_cli::{run, Outcome};

fn tame2(args: &[&str]) -> Outcome {
    tame2_env(args, None)
}

fn tame2_env(args: &[&str], bounds: Option<&str>) -> Outcome {
    let mut full = vec!["tame2"];
    full.extend_from_slice(args);
    run(full, bounds)
}

fn json(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out))
}

fn rings() -> Vec<Ring> {
    let qq = Ring::rationals();
    let f5 = Ring::prime_field(5).unwrap();
    vec![
        Ring::integers(),
        qq.clone(),
        Ring::prime_field(2).unwrap(),
        f5.clone(),
        Ring::dual(&f5).unwrap(),
        Ring::truncated(&qq, 3).unwrap(),
        Ring::dual(&Ring::integers()).unwrap(),
    ]
}

fn coeff_strategy(ring: Ring) -> impl Strategy<Value = Coeff> {
    let len = if ring.is_truncated() {
        ring.nil_len()
    } else {
        1
    };
    prop::collection::vec((-20i64..20, 1i64..5), len).prop_map(move |parts| {
        let base = if ring.is_truncated() {
            ring.base().clone()
        } else {
            ring.clone()
        };
        let layer = |(n, d): (i64, i64)| {
            let d = if base.contains_rationals() { d } else { 1 };
            let q = BigRational::new(BigInt::from(n), BigInt::from(d));
            base.from_rational(&q).unwrap()
        };
        if ring.is_truncated() {
            ring.from_layers(parts.into_iter().map(layer).collect())
        } else {
            layer(parts[0])
        }
    })
}

fn poly_strategy(ring: Ring) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..5, 0u32..5, coeff_strategy(ring.clone())), 0..6).prop_map(
        move |terms| {
            Poly2::from_terms(
                &ring,
                terms.into_iter().map(|(x, y, c)| (Monomial::new(x, y), c)),
            )
        },
    )
}

fn ring_and_map() -> impl Strategy<Value = (Ring, AutoMap)> {
    prop::sample::select(rings()).prop_flat_map(|ring| {
        (poly_strategy(ring.clone()), poly_strategy(ring.clone()))
            .prop_map(move |(f, g)| (ring.clone(), AutoMap::new(f, g).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn maps_round_trip((ring, map) in ring_and_map()) {
        let text = format_map(&map);
        prop_assert_eq!(parse_map(&text, &ring).unwrap(), map);
        prop_assert_eq!(parse_ring(&format_ring(&ring)).unwrap(), ring);
    }

    #[test]
    fn polys_round_trip_with_spacing((ring, map) in ring_and_map()) {
        let text = format_poly(map.f()).replace(' ', "  ").replace('*', " * ");
        prop_assert_eq!(&parse_poly(&text, &ring).unwrap(), map.f());
    }
}

#[test]
fn grammar_accepts_display_notation() {
    let q = Ring::rationals();
    let a = parse_poly("3/2 X^2 Y - (X + Y)^2 + 2(X - 1/3)", &q).unwrap();
    let b = parse_poly("3/2*X^2*Y - X^2 - 2*X*Y - Y^2 + 2*X - 2/3", &q).unwrap();
    assert_eq!(a, b);
    let r = parse_ring("GF(2)[t]/(t^2)").unwrap();
    assert!(r.is_dual());
    let phi = parse_map("(X + t*X^2*Y, Y - t*X*Y^2)", &r).unwrap();
    assert_eq!(phi.to_string(), "(X + t*X^2*Y, Y + t*X*Y^2)");
}

#[test]
fn syntax_errors_report_position() {
    let out = tame2(&["--json", "invert", "(X + *Y, Y)"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "SyntaxError");
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("line 1, column 6"));
    let out = tame2(&["--ring", "RR", "invert", "(X, Y)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("unknown ring RR"));
    assert!(out.stdout.is_empty());
}

#[test]
fn non_automorphism_parses_then_fails() {
    let out = tame2(&["--json", "is-automorphism", "(X, X)"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["automorphism"], false);
    let out = tame2(&["--json", "decompose", "(X, X)"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["error"]["kind"], "NotAnAutomorphism");
    let out = tame2(&["--json", "is-automorphism", "(X + Y^2, Y)"]);
    assert_eq!(json(&out)["automorphism"], true);
}

#[test]
fn basic_commands() {
    let out = tame2(&["compose", "(X + Y^2, Y)", "(X, Y + X)"]);
    assert_eq!(out.stdout, "(X^2 + 2*X*Y + Y^2 + X, X + Y)\n");
    let out = tame2(&["invert", "(X + Y^2, Y)"]);
    assert_eq!(out.stdout, "(-Y^2 + X, Y)\n");
    let out = tame2(&["--ring", "GF(5)", "jacobian", "(2*X + Y^3, X^2 + Y)"]);
    assert_eq!(out.stdout, "4*X*Y^2 + 2\n");
    let out = tame2(&["--ring", "ZZ", "invert", "(X + Y^2, Y)"]);
    assert_eq!(out.code, 0);
    let out = tame2(&["--json", "--ring", "ZZ", "invert", "(2*X + Y^2, Y)"]);
    assert_eq!(json(&out)["error"]["kind"], "NotInvertible");
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(
        tame2(&["charp-check", "--p", "3", "(X + t*X^3*Y^2, Y)"]).code,
        2
    );
    assert_eq!(
        tame2(&["charp-check", "--p", "2", "(X + t*X^2*Y, Y - t*X*Y^2)"]).code,
        0
    );
    assert_eq!(
        tame2(&["charp-check", "--p", "2", "(X + t*X^3*Y^2, Y - t*X^2*Y^3)"]).code,
        3
    );
    assert_eq!(tame2(&["charp-check", "--p", "4", "(X, Y)"]).code, 1);
    assert_eq!(tame2(&["no-such-command"]).code, 1);
    assert_eq!(tame2(&["--help"]).code, 0);
    assert_eq!(tame2(&["paper-examples"]).code, 0);
}

#[test]
fn charp_check_reports_witness() {
    let out = tame2(&["--json", "charp-check", "--p", "3", "(X + t*X^3*Y^2, Y)"]);
    let v = json(&out);
    assert_eq!(v["verdict"], "not_tame");
    assert_eq!(v["witness"]["monomial"], serde_json::json!([3, 3]));
    assert_eq!(v["witness"]["modulus"], 3);
    assert_eq!(v["factors"], serde_json::json!([]));
    let human = tame2(&["charp-check", "--p", "3", "(X + t*X^3*Y^2, Y)"]);
    assert!(human.stdout.contains("verdict: not_tame"));
    assert!(human.stdout.contains("reason:"));
}

#[test]
fn search_bounds_come_from_env_and_flags() {
    let map = "(X + t*X^2*Y, Y - t*X*Y^2)";
    let tight = tame2_env(
        &["charp-check", "--p", "2", map],
        Some("max_power=2,aux_degree=2"),
    );
    assert_eq!(tight.code, 3, "{}", tight.stdout);
    let restored = tame2_env(
        &[
            "charp-check",
            "--p",
            "2",
            "--max-power",
            "24",
            "--aux-degree",
            "12",
            map,
        ],
        Some("max_power=2,aux_degree=2"),
    );
    assert_eq!(restored.code, 0);
    let bad = tame2_env(&["charp-check", "--p", "2", map], Some("depth=3"));
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("unknown key"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec![
            "--json",
            "charp-check",
            "--p",
            "2",
            "(X + t*X^2*Y, Y - t*X*Y^2)",
        ],
        vec![
            "--json",
            "decompose",
            "--elementary",
            "(X + 3*Y + X^3, 2*Y + X)",
        ],
        vec!["reference-examples"],
    ] {
        let a = tame2(&args);
        let b = tame2(&args);
        assert_eq!(a, b);
    }
    let timed = tame2(&["--timing", "jacobian", "(X, Y)"]);
    assert!(timed.stderr.starts_with("elapsed: "));
    assert_eq!(timed.stdout, tame2(&["jacobian", "(X, Y)"]).stdout);
}

fn roundtrip(args: &[&str]) -> Value {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let path_s = path.to_str().unwrap().to_string();
    let mut full: Vec<&str> = vec!["--json"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path_s]);
    let out = tame2(&full);
    assert!(out.code != 1, "{args:?}: {}", out.stderr);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, json(&out));
    let verified = tame2(&["verify-cert", &path_s]);
    assert_eq!(verified.code, 0, "{args:?}: {}", verified.stderr);
    written
}

#[test]
fn emitted_certificates_verify() {
    roundtrip(&["decompose", "(X + Y^2, Y + (X + Y^2)^3)"]);
    roundtrip(&["decompose", "--elementary", "(X + Y^2, Y + (X + Y^2)^3)"]);
    roundtrip(&["--ring", "GF(5)", "decompose", "(2*X + Y^2 + 1, 3*Y)"]);
    roundtrip(&[
        "--ring",
        "GF(7)",
        "decompose",
        "--elementary",
        "(3*X + Y, 5*Y)",
    ]);
    roundtrip(&["--ring", "QQ[t]/(t^2)", "decompose", "(X + t*Y^2, Y + t*X)"]);
    let cubed = tame2(&[
        "--ring",
        "QQ[t]/(t^3)",
        "compose",
        "(X + t*Y^2, Y)",
        "(X, Y - 1/2*t*X^2 + t^2*X^3)",
    ]);
    roundtrip(&["--ring", "QQ[t]/(t^3)", "decompose", cubed.stdout.trim()]);
    roundtrip(&["charp-check", "--p", "3", "(X + t*X^3*Y^2, Y)"]);
    roundtrip(&["charp-check", "--p", "2", "(X + t*X^2*Y, Y - t*X*Y^2)"]);
    roundtrip(&["charp-check", "--p", "2", "(X + t*X^3*Y^2, Y - t*X^2*Y^3)"]);
    roundtrip(&["charp-check", "--p", "5", "((1 + t)*X + t*Y^4, Y)"]);
    let jac = roundtrip(&["charp-check", "--p", "3", "(X + t*X^2, Y)"]);
    assert_eq!(jac["witness"]["jacobian"], "1 + 2*t*X");
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = tame2(&[
        "--json",
        "charp-check",
        "--p",
        "2",
        "(X + t*X^2*Y, Y - t*X*Y^2)",
    ]);
    let mut v = json(&out);
    v["factors"].as_array_mut().unwrap().pop();
    std::fs::write(&path, v.to_string()).unwrap();
    let res = tame2(&["--json", "verify-cert", path.to_str().unwrap()]);
    assert_eq!(res.code, 1);
    assert_eq!(json(&res)["error"]["kind"], "InvalidCertificate");

    let out = tame2(&["--json", "charp-check", "--p", "3", "(X + t*X^3*Y^2, Y)"]);
    let mut v = json(&out);
    v["witness"]["congruences"] = serde_json::json!([[1, 1], [1, 1]]);
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(tame2(&["verify-cert", path.to_str().unwrap()]).code, 1);

    let mut v = json(&out);
    v["verdict"] = "tame".into();
    std::fs::write(&path, v.to_string()).unwrap();
    assert_eq!(tame2(&["verify-cert", path.to_str().unwrap()]).code, 1);

    std::fs::write(&path, "{").unwrap();
    assert_eq!(tame2(&["verify-cert", path.to_str().unwrap()]).code, 1);
    assert_eq!(tame2(&["verify-cert", "/nonexistent/cert.json"]).code, 1);
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_tame2"))
        .args(["--json", "charp-check", "--p", "5", "(X + t*X^5*Y^4, Y)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["monomial"], serde_json::json!([5, 5]));
    let out = Command::new(env!("CARGO_BIN_EXE_tame2"))
        .args(["charp-check", "--p", "2", "(X + t*X^2*Y, Y - t*X*Y^2)"])
        .env(tame2_cli::BOUNDS_ENV, "max_power=2,aux_degree=2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
