use std::process::Command;

use proptest::prelude::*;
use superdual::cli::{run, EXIT_CAP, EXIT_PASS, EXIT_USAGE};
use superdual::duality::DualityReport;

fn sd(args: &str) -> superdual::cli::Outcome {
    run(std::iter::once("superdual").chain(args.split_whitespace()))
}

fn json(args: &str) -> DualityReport {
    let out = sd(&format!("{args} --format json"));
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(sd("verify sergeev --m 1 --n 2 --d 2").code, EXIT_PASS);
    let out = sd("verify cyclotomic --m 1 --n 2 --d 2 --c 0,0");
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.contains("minimal x^2"), "{}", out.stdout);
    let out = run(["superdual", "verify", "vust", "--m", "1", "--n", "2", "--d", "2", "--partitions", "1|1,1"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
}

#[test]
fn every_verify_command_passes_small() {
    for cmd in [
        "verify trunc-poly --m 1 --n 2 --d 2",
        "verify hecke-relations --m 1 --n 2 --d 3 --c 1,2",
        "verify hecke-dc --m 1 --n 2 --d 2 --c 1/2,3",
        "verify filtration --m 1 --n 2 --d 2",
        "verify centralizer --m 2 --n 3",
        "verify theta --m 1 --n 2 --d 2",
        "verify theta-sigma --m 1 --n 2 --d 3 --seed 5",
        "wchi discover --m 1 --n 1 --max-kazhdan 4",
        "wchi hilbert --m 1 --n 2 --max-kazhdan 4",
    ] {
        let out = sd(cmd);
        assert_eq!(out.code, EXIT_PASS, "{cmd}: {}{}", out.stdout, out.stderr);
        assert!(out.stdout.starts_with("PASS "), "{cmd}");
    }
}

#[test]
fn negative_c_is_accepted() {
    let r = json("verify hecke-relations --m 1 --n 2 --d 2 --c -1/2,3");
    assert_eq!(r.params.c.as_deref(), Some("-1/2,3"));
}

#[test]
fn exit_codes() {
    assert_eq!(sd("verify sergeev --m 2 --n 2 --d 4").code, EXIT_CAP);
    assert!(sd("verify sergeev --m 2 --n 2 --d 4").stderr.contains("256"));
    assert_eq!(sd("verify sergeev --m 2 --n 2 --d 4 --size-cap 256").code, EXIT_PASS);
    assert_eq!(sd("verify sergeev --m 1 --n 2").code, EXIT_USAGE);
    assert_eq!(sd("verify sergeev --m 2 --n 1 --d 2").code, EXIT_USAGE);
    assert_eq!(sd("verify nonsense").code, EXIT_USAGE);
    assert_eq!(sd("verify sergeev --m x --n 2 --d 2").code, EXIT_USAGE);
    assert_eq!(sd("verify cyclotomic --m 1 --n 2 --d 2 --c 1,2,3").code, EXIT_USAGE);
    assert_eq!(
        run(["superdual", "verify", "vust", "--m", "1", "--n", "2", "--d", "2", "--partitions", "2|1"]).code,
        EXIT_USAGE
    );
    assert_eq!(sd("verify sergeev --m 1 --n 2 --d 2 --format yaml").code, EXIT_USAGE);
    assert_eq!(sd("--help").code, EXIT_PASS);
}

#[test]
fn json_round_trip_and_schema() {
    let out = sd("verify hecke-dc --m 1 --n 2 --d 2 --c 1,2 --format json");
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["theorem", "params", "lhs_dim", "rhs_dim", "equal", "checks", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    for c in v["checks"].as_array().unwrap() {
        assert!(c.get("name").is_some() && c.get("pass").is_some() && c.get("detail").is_some());
    }
    let r: DualityReport = serde_json::from_value(v).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, out.stdout);
}

#[test]
fn identical_config_is_byte_identical() {
    let a = sd("verify theta-sigma --m 1 --n 2 --d 2 --seed 11 --format json");
    let b = sd("verify theta-sigma --m 1 --n 2 --d 2 --seed 11 --format json");
    assert_eq!(a, b);
    assert!(a.stdout.contains("\"elapsed_ms\": 0"));
}

#[test]
fn timing_flag_is_opt_in() {
    let r = json("verify sergeev --m 1 --n 3 --d 3 --timing");
    assert!(r.equal);
}

#[test]
fn binary_exit_codes_and_env_override() {
    let bin = env!("CARGO_BIN_EXE_superdual");
    let st = Command::new(bin).args(["verify", "sergeev", "--m", "1", "--n", "2", "--d", "2"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
    let st = Command::new(bin)
        .args(["verify", "sergeev"])
        .env("SUPERDUAL_M", "1")
        .env("SUPERDUAL_N", "1")
        .env("SUPERDUAL_D", "3")
        .env("SUPERDUAL_FORMAT", "json")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(EXIT_PASS));
    let r: DualityReport = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!((r.params.m, r.params.n, r.params.d), (1, 1, Some(3)));
    let st = Command::new(bin).args(["verify", "sergeev", "--m", "3", "--n", "3", "--d", "3"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_CAP));
    let st = Command::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(st.status.code(), Some(EXIT_USAGE));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sergeev_reports_round_trip(m in 1usize..=2, extra in 0usize..=1, d in 1usize..=2) {
        let n = m + extra;
        let out = sd(&format!("verify sergeev --m {m} --n {n} --d {d} --format json"));
        prop_assert_eq!(out.code, EXIT_PASS);
        let r: DualityReport = serde_json::from_str(&out.stdout).unwrap();
        prop_assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);
    }

    #[test]
    fn cyclotomic_for_random_c(a in -5i64..=5, b in -5i64..=5, q in 1i64..=3) {
        let out = run(["superdual".to_string(), "verify".into(), "cyclotomic".into(), "--m".into(), "1".into(),
            "--n".into(), "2".into(), "--d".into(), "2".into(), "--c".into(), format!("{a}/{q},{b}")]);
        prop_assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
    }
}
