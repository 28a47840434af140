use std::process::Command as Process;

use conjlogic::{CzChoice, Theory, TheoryVariant};
use conjlogic_cli::{execute, parse_command, render_json, Command, OutputFormat};
use serde_json::Value;

fn run(args: &[&str]) -> conjlogic_cli::Outcome {
    execute(std::iter::once("conjlogic").chain(args.iter().copied()))
}

fn parse(args: &[&str]) -> Command {
    parse_command(std::iter::once("conjlogic").chain(args.iter().copied())).unwrap().command
}

#[test]
fn parses_documented_invocations() {
    match parse(&["predict", "<XZ,ZX>", "<YY>"]) {
        Command::Predict { generators, queries, n, theory } => {
            assert_eq!(generators.len(), 2);
            assert_eq!(queries.len(), 1);
            assert_eq!(n, 2);
            assert_eq!(theory, Theory::QUANTUM);
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(parse(&["pm", "--theory", "toy"]), Command::Pm { variant: TheoryVariant::SpekkensToy });
    assert!(matches!(parse(&["reduce", "<XYZIZY>"]), Command::Reduce { ref props, .. } if props.len() == 1));
    assert_eq!(parse(&["--cz", "tilde", "consistency"]), Command::Consistency { cz: CzChoice::Tilde });
}

#[test]
fn predict_prints_the_value() {
    let out = run(&["predict", "<XZ,ZX>", "<YY>"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "1\n"));
    let out = run(&["predict", "<ZZ>", "<ZI>", "<-ZZ>"]);
    assert_eq!(out.stdout, "?\n0\n");
    let out = run(&["predict", "<>", "<II>", "<-II>"]);
    assert_eq!(out.stdout, "1\n0\n");
    let out = run(&["predict", "--theory", "toy", "<XX,ZZ>", "<YY>"]);
    assert_eq!(out.stdout, "1\n");
}

#[test]
fn consistency_exit_codes() {
    let out = run(&["consistency", "--cz", "tilde"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("derived: <YIY>, <-YIY>"), "{}", out.stdout);
    let out = run(&["consistency"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("derived: <YIY>\n"));
}

#[test]
fn laws_table_lists_every_law() {
    let out = run(&["laws"]);
    assert_eq!(out.code, 0);
    let heads: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with(' ')).collect();
    assert_eq!(heads.len(), 21);
    let failing: Vec<&str> =
        heads.iter().filter(|l| l.contains("FAILS")).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(failing, vec!["E9", "E11", "I6"]);
}

#[test]
fn reduce_trace_shows_each_layer() {
    let out = run(&["reduce", "--trace", "<XYZIZY>"]);
    assert!(out.stdout.starts_with("transcript: S@2; S@6; H@2; H@6; CZ@(1,2); CZ@(1,3); CZ@(1,5); CZ@(1,6)\n"));
    for s in ["<XXZIZX> after S@6", "<XZZIZZ> after H@6", "<XIIIII> after CZ@(1,6)"] {
        assert!(out.stdout.contains(s), "{s}");
    }
    let out = run(&["reduce", "<IX>", "<IY>"]);
    assert!(out.stdout.ends_with("relation: incompatible-same-system\n"));
}

#[test]
fn measure_replays_are_deterministic() {
    let args = ["measure", "--seed", "42", "<ZI,IZ>", "<XI>", "<XX>", "<IX>", "<XI>"];
    let a = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a, run(&args));
    let lines: Vec<&str> = a.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    // The last question repeats the first, which has stayed determined.
    assert_eq!(lines[0].split("  ").next(), lines[3].split("  ").next());
}

#[test]
fn json_output_round_trips() {
    let commands: &[&[&str]] = &[
        &["eval", "(p->q)&p"],
        &["eval", "p->q", "--equiv", "~p|q"],
        &["laws"],
        &["laws", "--tables"],
        &["reduce", "<XYZIZY>"],
        &["reduce", "<ZX>", "<XZ>"],
        &["predict", "<XZ,ZX>", "<YY>", "<ZZ>"],
        &["closure", "<XX,ZZ>"],
        &["measure", "--seed", "7", "<ZI>", "<XI>"],
        &["apply", "S@2; CZ@(1,2)", "<XY>"],
        &["pm"],
        &["pm", "--theory", "toy"],
        &["consistency", "--cz", "tilde"],
        &["bench", "--n", "16", "--k", "4", "--reps", "2"],
    ];
    for args in commands {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let out = run(&full);
        assert!(out.code == 0 || out.code == 2, "{args:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(render_json(&v), out.stdout, "{args:?}");
    }
}

#[test]
fn json_state_shape() {
    let out = run(&["--format", "json", "closure", "<XZ,ZX>"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["state"]["variant"], "quantum");
    assert_eq!(v["state"]["cz"], "standard");
    assert_eq!(v["closure"].as_array().unwrap().len(), 4);
    let out = run(&["--format", "json", "reduce", "<IZ>"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["systems"][0], 2);
}

#[test]
fn errors_go_to_stderr_and_fail() {
    let cases: &[&[&str]] = &[
        &["bogus"],
        &["reduce", "<ZQ>"],
        &["reduce", "<XY"],
        &["predict", "<ZI,IZ>", "<ZZZ>"],
        &["predict", "<ZI,XI>", "<ZZ>"],
        &["measure", "<ZI>", "<XI>"],
        &["laws", "--theory", "toy"],
        &["eval", "p", "--seed", "3"],
        &["pm", "--cz", "tilde"],
        &["consistency", "--theory", "toy"],
        &["bench", "--n", "4", "--k", "5"],
        &["apply", "Q@1", "<X>"],
        &["apply", "H@3", "<XX>"],
        &["closure", "<>"],
        &["reduce", "<III>"],
        &["reduce", "<XY>", "<-XY>"],
        &["eval", "p &"],
        &["--format", "yaml", "pm"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.code, 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_errors_report_positions() {
    let out = run(&["reduce", "<ZI,IQ>"]);
    assert!(out.stderr.contains("at character 5"), "{}", out.stderr);
}

#[test]
fn help_and_version_succeed() {
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("consistency"));
    assert_eq!(run(&["--version"]).code, 0);
}

#[test]
fn binary_honours_environment_format() {
    let bin = env!("CARGO_BIN_EXE_conjlogic");
    let out = Process::new(bin).args(["predict", "<XZ,ZX>", "<YY>"]).env("CONJLOGIC_FORMAT", "json").output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["predictions"][0]["value"], "1");

    let out = Process::new(bin).args(["consistency", "--cz", "tilde"]).env_remove("CONJLOGIC_FORMAT").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Process::new(bin).args(["reduce", "<ZQ>"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn default_format_is_text() {
    let inv = parse_command(["conjlogic", "pm"]).unwrap();
    if std::env::var_os("CONJLOGIC_FORMAT").is_none() {
        assert_eq!(inv.format, OutputFormat::Text);
    }
}
