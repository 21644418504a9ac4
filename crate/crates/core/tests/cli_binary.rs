use std::process::{Command, Output};

fn rmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmt-source"))
        .args(args)
        .env("RMT_SOURCE_WORKERS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn duality_fr_example() {
    let o = rmt(&[
        "duality",
        "--check",
        "fr",
        "--beta",
        "3",
        "--N",
        "3",
        "--x",
        "0.7,-0.7,0",
        "--lambda",
        "1.2",
        "--samples",
        "100000",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "rmt-source/duality/v1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["params"]["workers"], 2);
}

#[test]
fn softedge_example_csv() {
    let o = rmt(&[
        "softedge",
        "--which",
        "gauss",
        "--r",
        "1",
        "--X",
        "0",
        "--s",
        "0",
        "--sizes",
        "50,100,200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: rmt-source/softedge/v1"));
    assert_eq!(lines.next(), Some("size,X,s1,finite,limit,abs_error"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn sample_csv_header() {
    let o = rmt(&[
        "sample",
        "--ensemble",
        "goe",
        "--s",
        "1,0",
        "--samples",
        "5",
        "--seed",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema: rmt-source/samples/v1");
    assert_eq!(lines[2], "# goe,1,2,4");
    assert_eq!(lines.len(), 8);
}

#[test]
fn exit_codes_and_stderr_json() {
    let o = rmt(&[
        "sample",
        "--ensemble",
        "wishart-real",
        "--n",
        "1",
        "--p",
        "2",
        "--mu",
        "0,0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    let v: serde_json::Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
    assert_eq!(v["schema"], "rmt-source/error/v1");

    let o = rmt(&["nonsense"]);
    assert_eq!(o.status.code(), Some(2));

    let o = rmt(&[
        "duality",
        "--check",
        "w2",
        "--beta",
        "2",
        "--N",
        "1",
        "--n",
        "1",
        "--x",
        "0.5",
        "--samples",
        "100",
        "--threshold",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn worker_count_changes_streams_not_validity() {
    let base = [
        "duality",
        "--check",
        "dr2",
        "--beta",
        "2",
        "--a",
        "0",
        "--s",
        "0.5",
        "--m",
        "1.5",
        "--samples",
        "20000",
    ];
    let a = rmt(&[&base[..], &["--workers", "1"]].concat());
    let b = rmt(&[&base[..], &["--workers", "5"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn help_lists_subcommands() {
    let o = rmt(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for sub in [
        "specfun", "sample", "charpoly", "duality", "softedge", "selftest",
    ] {
        assert!(text.contains(sub), "{sub}");
    }
}
