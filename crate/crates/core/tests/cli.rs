use std::process::{Command, Output};

use serde_json::Value;

fn charvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = charvar(&full);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

const FOUR_PUNCTURES: [&str; 7] = [
    "mh",
    "--genus",
    "0",
    "--punctures",
    "4",
    "--mu",
    "1,1;1,1;1,1;1,1",
];

#[test]
fn help_and_version() {
    assert_eq!(charvar(&["--help"]).status.code(), Some(0));
    assert_eq!(charvar(&["--version"]).status.code(), Some(0));
    assert_eq!(charvar(&["module", "--help"]).status.code(), Some(0));
}

#[test]
fn mixed_hodge_text_and_json() {
    let o = charvar(&FOUR_PUNCTURES);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q + t + 4");
    let v = json(&FOUR_PUNCTURES);
    assert_eq!(v["mh"], "q + t + 4");
    assert_eq!(v["is_polynomial"], true);
    assert_eq!(v["mu"][3], serde_json::json!([1, 1]));
}

#[test]
fn point_count_flag() {
    let mut args = FOUR_PUNCTURES.to_vec();
    args.push("--point-count");
    let v = json(&args);
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["point_count"], "q^2 + 4*q + 1");
}

#[test]
fn exit_codes() {
    assert_eq!(charvar(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        charvar(&["mh", "--genus", "0", "--punctures", "4", "--mu", "1,x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        charvar(&[
            "mh",
            "--genus",
            "0",
            "--punctures",
            "3",
            "--mu",
            "1,1;1,1;1,1;1,1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        charvar(&[
            "mh",
            "--genus",
            "0",
            "--punctures",
            "4",
            "--mu",
            "2;2;2;2",
            "--max-rank",
            "1"
        ])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        charvar(&["markov", "generic", "--lambdas", "1,3,5,7"])
            .status
            .code(),
        Some(2)
    );
    let o = charvar(&["mh", "--genus", "0", "--punctures", "4", "--mu", "1,x"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid partition"));
}

#[test]
fn twisted_plog_json() {
    let v = json(&["twisted", "--k", "2", "--max-rank", "2", "--plog"]);
    let series = v["series"].as_array().unwrap();
    assert_eq!(series.len(), 3);
    assert_eq!(series[0]["coeff"], "0");
    assert_eq!(series[2]["rank"], 2);
}

#[test]
fn module_commands() {
    let v = json(&[
        "module",
        "conjecture",
        "--n",
        "2",
        "--k",
        "2",
        "--cap-x",
        "3",
        "--cap-y",
        "3",
    ]);
    assert_eq!(v["passed"], true);
    let o = charvar(&[
        "module", "hilbert", "--n", "2", "--k", "1", "--cap-x", "2", "--cap-y", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n = 2, k = 1"));
}

#[test]
fn randomized_commands_are_reproducible() {
    let args = [
        "multiform",
        "kunneth",
        "--n",
        "1",
        "--genus",
        "1",
        "--trials",
        "3",
        "--seed",
        "9",
    ];
    let a = charvar(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).starts_with("seed: 9"));
    assert_eq!(stdout(&a), stdout(&charvar(&args)));
    let m = charvar(&["markov", "verify", "--samples", "5", "--seed", "3"]);
    assert_eq!(m.status.code(), Some(0));
    assert!(stdout(&m).trim_end().ends_with("PASS"));
}

#[test]
fn trace_word_and_genericity() {
    assert_eq!(
        stdout(&charvar(&["markov", "trace-word", "--word", "1,1"])).trim(),
        "a1^2 - 2"
    );
    assert_eq!(
        stdout(&charvar(&["markov", "generic", "--lambdas", "2,3,5,7"])).trim(),
        "true"
    );
    assert_eq!(
        stdout(&charvar(&[
            "generic-check",
            "--mu",
            "1,1;1,1",
            "--eigenvalues",
            "2,3;5,7"
        ]))
        .trim(),
        "false"
    );
}

#[test]
fn json_round_trips_byte_identically() {
    let cases: [&[&str]; 5] = [
        &FOUR_PUNCTURES,
        &[
            "omega",
            "--genus",
            "0",
            "--punctures",
            "1",
            "--max-rank",
            "2",
        ],
        &["twisted", "--k", "1", "--max-rank", "2", "--plog"],
        &[
            "module",
            "primitive",
            "--n",
            "2",
            "--k",
            "2",
            "--cap-x",
            "2",
            "--cap-y",
            "2",
        ],
        &["markov", "verify", "--samples", "3", "--seed", "1"],
    ];
    for args in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let raw = stdout(&charvar(&full));
        let v: Value = serde_json::from_str(&raw).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&v).unwrap(),
            raw.trim_end(),
            "{args:?}"
        );
    }
}

#[test]
fn help_lists_every_subcommand() {
    let top = stdout(&charvar(&["--help"]));
    for c in [
        "mh",
        "omega",
        "twisted",
        "chi-hilb",
        "module",
        "multiform",
        "markov",
        "generic-check",
    ] {
        assert!(top.contains(&format!("  {c} ")), "{c}");
    }
    let module = stdout(&charvar(&["module", "--help"]));
    for c in ["hilbert", "primitive", "coha-check", "generators-check"] {
        assert!(module.contains(c), "{c}");
    }
    let markov = stdout(&charvar(&["markov", "--help"]));
    for c in ["verify", "trace-word", "generic"] {
        assert!(markov.contains(c), "{c}");
    }
    assert!(stdout(&charvar(&["multiform", "--help"])).contains("kunneth"));
}

#[test]
fn twisted_plog_text() {
    let o = stdout(&charvar(&[
        "twisted",
        "--k",
        "1",
        "--max-rank",
        "2",
        "--plog",
    ]));
    let lines: Vec<&str> = o.lines().collect();
    assert_eq!(lines[1], "z^1: -1/(q*t - q - t + 1)");
    assert_eq!(lines[2], "z^2: 0");
}
