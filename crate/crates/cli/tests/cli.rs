use std::process::{Command, Output};

fn fproots(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fproots"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

/// CSV body without the leading comment line.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn roots_plain_and_json() {
    let out = fproots(&["roots", "--modulus", "7", "--poly", "6,0,0,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "1\n2\n4\n");

    let out = fproots(&["roots", "--modulus", "7", "--poly", "6,1"]);
    assert_eq!(stdout(&out), "1\n");

    let out = fproots(&[
        "roots",
        "--modulus",
        "10007",
        "--poly",
        "-6,11,-6,1",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let roots: Vec<u64> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(roots, [1, 2, 3]);
}

#[test]
fn roots_record_is_self_describing() {
    let out = fproots(&[
        "roots",
        "--modulus",
        "10007",
        "--poly",
        "-6,11,-6,1",
        "--record",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["command"], "roots");
    assert_eq!(v["parameters"]["p"], 10007);
    assert_eq!(v["parameters"]["h"], 201);
    assert_eq!(v["counters"]["powmods"], 202);
    assert_eq!(v["outputs"], serde_json::json!([1, 2, 3]));
}

#[test]
fn input_errors_exit_2() {
    let out = fproots(&["roots", "--modulus", "9", "--poly", "1,1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("modulus not prime"));
    assert_eq!(
        code(&fproots(&["roots", "--modulus", "7", "--poly", "1,x"])),
        2
    );
    assert_eq!(
        code(&fproots(&["roots", "--modulus", "7", "--poly", "0"])),
        2
    );
    assert_eq!(
        code(&fproots(&[
            "roots",
            "--modulus",
            "7",
            "--poly",
            "1,1",
            "--c-all",
            "0.5"
        ])),
        2
    );
    assert_eq!(code(&fproots(&["roots", "--modulus", "7"])), 2);
}

#[test]
fn root_outputs() {
    let out = fproots(&["root", "--modulus", "7", "--poly", "6,0,0,1"]);
    assert_eq!(code(&out), 0);
    let r: u64 = stdout(&out).trim().parse().unwrap();
    assert!([1, 2, 4].contains(&r));

    let out = fproots(&["root", "--modulus", "10007", "--poly", "9990,1"]);
    assert_eq!(stdout(&out), "17\n");

    let out = fproots(&["root", "--modulus", "7", "--poly", "1,0,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "no-root\n");
}

#[test]
fn root_uses_the_sweep_above_the_cutoff() {
    let out = fproots(&[
        "root",
        "--modulus",
        "10007",
        "--poly",
        "-6,11,-6,1",
        "--small-p-cutoff",
        "0",
        "--record",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["counters"]["brute_force"], false);
    assert!([1, 2, 3].contains(&v["outputs"].as_u64().unwrap()));
}

#[test]
fn refine_outputs() {
    let out = fproots(&[
        "refine",
        "--modulus",
        "7",
        "--poly",
        "6,5,1",
        "--poly",
        "3,4,1",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[1, 1], [2, 1], [3, 1]]));
    assert_eq!(v["exponents"], serde_json::json!([[0, 1, 1], [1, 0, 1]]));

    let out = fproots(&["refine", "--modulus", "7", "--poly", "1,1,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[1, 1, 1]]));

    let out = fproots(&["refine", "--modulus", "7", "--poly", "1,1", "--poly", "1,1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[1, 1]]));
    assert_eq!(v["exponents"], serde_json::json!([[1], [1]]));
}

#[test]
fn tchi_csv_shape_and_empty_sets() {
    let out = fproots(&[
        "experiment",
        "tchi",
        "--p-list",
        "1009,10007",
        "--trials",
        "3",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().contains("prng=chacha8 seed=5"));
    assert!(!text.contains('\r'));
    let rows = csv_rows(&text);
    assert_eq!(rows[0], ["p", "h", "set_size", "trial", "T", "ratio"]);
    assert_eq!(rows.len(), 1 + 6);

    let out = fproots(&[
        "experiment",
        "tchi",
        "--p-list",
        "101",
        "--trials",
        "2",
        "--set-size",
        "0",
    ]);
    let rows = csv_rows(&stdout(&out));
    assert!(rows[1..].iter().all(|r| r[4] == "0"));
}

#[test]
fn experiments_are_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        stdout(&fproots(&[
            "experiment",
            "tchi",
            "--p-list",
            "1009,10007",
            "--trials",
            "6",
            "--seed",
            "9",
            "--threads",
            threads,
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("3"));
}

#[test]
fn energy_verify_and_caps() {
    let out = fproots(&[
        "experiment",
        "energy",
        "--p-list",
        "1009",
        "--trials",
        "2",
        "--verify",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(
        rows[0],
        ["p", "h", "L", "set_size", "count_W", "sum_W_sq", "ratio22", "ratio23"]
    );
    assert_eq!(rows.len(), 3);

    let out = fproots(&[
        "experiment",
        "energy",
        "--p-list",
        "1000003",
        "--trials",
        "1",
        "--h",
        "100",
        "--l",
        "50",
        "--set-size",
        "100",
        "--verify",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn weil_rows_are_within_bound() {
    let out = fproots(&[
        "experiment",
        "weil",
        "--p-list",
        "101,1009",
        "--trials",
        "20",
    ]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0], ["p", "deg", "N", "abs_sum", "bound", "ok"]);
    assert_eq!(rows.len(), 41);
    assert!(rows[1..].iter().all(|r| r[5] == "true"));
}

#[test]
fn experiment_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weil.csv");
    let out = fproots(&[
        "experiment",
        "weil",
        "--p-list",
        "101",
        "--trials",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(csv_rows(&std::fs::read_to_string(&path).unwrap()).len(), 5);
}

#[test]
fn bench_counters_are_deterministic() {
    let args = [
        "bench",
        "roots",
        "--modulus",
        "10007",
        "--degrees",
        "8,16",
        "--trials",
        "2",
        "--seed",
        "3",
    ];
    let counters = |text: String| -> Vec<Vec<String>> {
        csv_rows(&text)
            .into_iter()
            .map(|mut r| {
                r.remove(4); // wall_ms
                r
            })
            .collect()
    };
    let a = counters(stdout(&fproots(&args)));
    assert_eq!(a, counters(stdout(&fproots(&args))));
    assert_eq!(a.len(), 5);
    // The shift sweep has h + 1 = 202 residue parts whatever the degree.
    assert!(a[1..].iter().all(|r| r[4] == "202"));

    let out = fproots(&[
        "bench",
        "root",
        "--modulus",
        "10007",
        "--degrees",
        "8",
        "--trials",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(csv_rows(&stdout(&out)).len(), 1);
}
