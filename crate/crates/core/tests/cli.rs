use std::process::{Command, Output};

use padic_euler::characters::{CharacterJson, DirichletCharacter};
use padic_euler::cyclotomic::CycElemJson;
use padic_euler::lfunction::{l_padic, PadicLQuery, SValue};
use padic_euler::lvalues::{l_value_neg, LNegQuery};
use padic_euler::padic::PadicJson;
use padic_euler::rational::{rat, RationalJson};
use padic_euler::{CycElem, PadicContext, PadicNum, Rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-euler"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn euler_json_round_trips() {
    let out = run(&["euler", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"num":"1","den":"4"}"#);
    let j: RationalJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(Rational::try_from(&j).unwrap(), rat(1, 4));

    let out = run(&["euler", "--n", "2", "--r", "2"]);
    let j: RationalJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(Rational::try_from(&j).unwrap(), rat(1, 2));
}

#[test]
fn plval_worked_value() {
    let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--r", "1", "--s", "0", "--prec", "10"]);
    assert!(out.status.success());
    let j: PadicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    let x = PadicNum::from_json(&j).unwrap();
    assert_eq!(x, PadicNum::from_int(5, -4, 10));
    assert_eq!(j.unit_digits, vec![1, 4, 4, 4, 4, 4, 4, 4, 4, 4]);

    let out = run(&["--format", "table", "plval", "--p", "5", "--f", "3", "--chi", "1", "--s", "0", "--prec", "10"]);
    assert_eq!(stdout(&out).trim(), "l_p(0) = 1444444444 + O(5^10)  (= -4)");
}

#[test]
fn plval_matches_library() {
    let chi = DirichletCharacter::from_index(3, 1).unwrap();
    let q = PadicLQuery::minimal(2, chi, PadicContext::new(5, 8).unwrap()).unwrap();
    for (s, arg) in [(SValue::Integer(-3), "-3"), (SValue::Integer(4), "4")] {
        let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--r", "2", "--s", arg, "--prec", "8"]);
        assert!(out.status.success(), "{out:?}");
        let j: PadicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
        assert_eq!(PadicNum::from_json(&j).unwrap(), l_padic(&s, &q).unwrap());
    }
    let wide = q.with_modulus(45).unwrap();
    let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--r", "2", "--s", "-1", "--prec", "8", "--F-mult", "3"]);
    let j: PadicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(PadicNum::from_json(&j).unwrap(), l_padic(&SValue::Integer(-1), &wide).unwrap());
}

#[test]
fn rational_and_digit_arguments() {
    let chi = DirichletCharacter::from_index(3, 1).unwrap();
    let ctx = PadicContext::new(5, 8).unwrap();
    let q = PadicLQuery::minimal(1, chi, ctx).unwrap();
    let s = SValue::Padic(ctx.rational(&rat(1, 3)));
    let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--s", "1/3", "--prec", "8"]);
    let j: PadicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(PadicNum::from_json(&j).unwrap(), l_padic(&s, &q).unwrap());

    // 18 digits of 3 = 3 + O(5^18), enough for 8 digits after the guard
    let digits = format!("digits:3{}", "0".repeat(17));
    let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--s", &digits, "--prec", "8"]);
    assert!(out.status.success(), "{out:?}");
    let j: PadicJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(PadicNum::from_json(&j).unwrap(), l_padic(&SValue::Integer(3), &q).unwrap());
}

#[test]
fn lneg_and_chars_round_trip() {
    let out = run(&["lneg", "--f", "5", "--chi", "1", "--r", "2", "--n", "3"]);
    assert!(out.status.success());
    let j: CycElemJson = serde_json::from_str(stdout(&out).trim()).unwrap();
    let chi = DirichletCharacter::from_index(5, 1).unwrap();
    let want = l_value_neg(&LNegQuery::new(3, 2, chi, 5).unwrap()).unwrap();
    assert_eq!(CycElem::from_json(&j).unwrap(), want);

    let out = run(&["chars", "--f", "15", "--primitive-only"]);
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 3);
    for line in &lines {
        let j: CharacterJson = serde_json::from_str(line).unwrap();
        let chi = DirichletCharacter::from_json(&j).unwrap();
        assert!(chi.is_primitive());
        assert_eq!(serde_json::to_string(&chi.to_json()).unwrap(), *line);
    }
}

#[test]
fn gfcheck_reports_agreement() {
    let out = run(&["gfcheck", "--f", "5", "--chi", "2", "--r", "2", "--nmax", "5"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> =
        stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["agree"] == serde_json::Value::Bool(true)));
}

#[test]
fn pderiv_methods() {
    let base = ["pderiv", "--p", "5", "--f", "3", "--chi", "1", "--prec", "12"];
    let get = |extra: &[&str]| {
        let mut args = base.to_vec();
        args.extend_from_slice(extra);
        let out = run(&args);
        assert!(out.status.success(), "{out:?}");
        PadicNum::from_json(&serde_json::from_str(stdout(&out).trim()).unwrap()).unwrap()
    };
    let direct = get(&["--method", "direct"]);
    let c2 = get(&["--method", "corollary2"]);
    let fd = get(&["--method", "fd", "--fd-k", "6"]);
    assert!(direct.agreement(&fd).unwrap() >= 6);
    assert_eq!(c2.try_sub(&direct).unwrap(), PadicNum::from_int(5, -4, 12));

    let mut args = base.to_vec();
    args.extend_from_slice(&["--format", "table"]);
    let table = stdout(&run(&args));
    for label in ["corollary2", "direct", "fd k=4", "c2 - direct"] {
        assert!(table.contains(label), "{table}");
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["plval", "--p", "4", "--f", "3", "--chi", "1", "--s", "0"]), 2);
    assert_eq!(code(&["plval", "--p", "5", "--f", "4", "--chi", "1", "--s", "0"]), 2);
    assert_eq!(code(&["plval", "--p", "5", "--f", "3", "--chi", "2", "--s", "0"]), 2);
    assert_eq!(code(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--s", "0", "--F-mult", "2"]), 2);
    assert_eq!(code(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--s", "1/5"]), 2);
    assert_eq!(code(&["plval", "--p", "5", "--f", "15", "--chi", "5", "--s", "0"]), 2);
    assert_eq!(code(&["euler", "--n", "2", "--r", "0"]), 2);
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);

    let out = run(&["plval", "--p", "7", "--f", "5", "--chi", "1", "--s", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("p=7") && err.contains("order=4"), "{err}");

    let out = run(&["plval", "--p", "5", "--f", "3", "--chi", "1", "--s", "digits:12", "--prec", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let args = ["verify", "--suite", "all", "--p", "5", "--f", "3", "--prec", "15"];
    let one = run(&[&["--threads", "1"][..], &args[..]].concat());
    let four = run(&[&["--threads", "4"][..], &args[..]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    for line in stdout(&one).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], serde_json::Value::Bool(true), "{line}");
    }
    let table = run(&["--format", "table", "verify", "--suite", "euler"]);
    assert!(stdout(&table).contains("7 checks, 0 failed"));
}
