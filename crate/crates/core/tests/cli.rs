use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_wallcross");

fn fixtures() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn run(args: &[&str], fixture_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("WALLCROSS_FIXTURES");
    if let Some(dir) = fixture_env {
        cmd.env("WALLCROSS_FIXTURES", dir);
    }
    cmd.output().unwrap()
}

fn copy_fixtures() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    dir
}

#[test]
fn empty_fixture_dir_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify", "all"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("manifest"));

    std::fs::write(
        dir.path().join("manifest.json"),
        r#"{"format":"manifest/1","files":{}}"#,
    )
    .unwrap();
    let out = run(&["verify", "poincare"], Some(dir.path()));
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn env_var_redirects_fixtures_and_flag_wins() {
    let dir = copy_fixtures();
    let path = dir.path().join("poincare.json");
    let text = std::fs::read_to_string(&path)
        .unwrap()
        .replace("\"version\": 1", "\"version\": 2");
    std::fs::write(&path, text).unwrap();

    let out = run(&["verify", "poincare"], Some(dir.path()));
    assert_eq!(
        out.status.code(),
        Some(2),
        "version mismatch must be rejected"
    );

    let out = run(
        &[
            "verify",
            "poincare",
            "--fixtures",
            fixtures().to_str().unwrap(),
        ],
        Some(dir.path()),
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn broken_fixture_fails_the_suite() {
    let dir = copy_fixtures();
    let path = dir.path().join("b2_ext.json");
    let text = std::fs::read_to_string(&path)
        .unwrap()
        .replacen("[0,0,3,0,0]", "[0,0,2,0,0]", 1);
    std::fs::write(&path, text).unwrap();
    let out = run(&["verify", "ktheory", "--emit", "json"], Some(dir.path()));
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn json_output_is_byte_identical() {
    for args in [
        &["verify", "walls", "--emit", "json"][..],
        &["cohomology", "--l", "3", "--op", "invert", "--emit", "json"][..],
        &["charge", "--l", "4", "--what", "z", "--emit", "json"][..],
        &[
            "cross-wall",
            "--group",
            "b2",
            "--wall",
            "z2",
            "--emit",
            "json",
        ][..],
    ] {
        let a = run(args, None);
        let b = run(args, None);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn exit_status_tracks_checks() {
    assert_eq!(run(&["verify", "ktheory"], None).status.code(), Some(0));
    assert_eq!(run(&["verify", "charge"], None).status.code(), Some(1));
    assert_eq!(
        run(
            &["rvsc", "--group", "b2", "--wall", "2a-2b-1", "--grid", "8"],
            None
        )
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(
            &["rvsc", "--group", "b2", "--wall", "a+3", "--grid", "8"],
            None
        )
        .status
        .code(),
        Some(1)
    );
    let p = [
        "poincare", "--n", "3", "--l", "2", "--m", "1,0,1", "--p", "7", "--i", "1", "--trunc", "40",
    ];
    assert_eq!(run(&p, None).status.code(), Some(0));
    assert_eq!(
        run(&["cohomology", "--l", "1", "--op", "ch"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn cross_wall_reports_classes_and_gram() {
    let out = run(
        &[
            "cross-wall",
            "--group",
            "b2",
            "--wall",
            "z0",
            "--emit",
            "json",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["simples"][3], "-3[L0] + [L3]");
    assert_eq!(v["projectives"][0], "[V0] + [V1] + [V2] + 3[V3] - 2[V4]");
    assert_eq!(v["gram"][0][3], "-6");
}

#[test]
fn csv_output_is_a_table() {
    let out = run(
        &["charge", "--group", "b2", "--what", "z", "--emit", "csv"],
        None,
    );
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["label", "poly"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[4][0], "L4");
    assert_eq!(&rows[4][1], "-a^2 - b^2 + 1/4");
}

#[test]
fn mutate_reads_a_quiver_file() {
    let quiver = fixtures().join("perv_p2.json");
    let q = quiver.to_str().unwrap();
    let base = [
        "mutate", "--quiver", q, "--theta", "A2", "--steps", "1", "--trunc", "6", "--emit", "json",
    ];
    let out = run(&base, None);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["steps"][0]["dim_vector"], serde_json::json!([1, 1, 0]));

    let mut zero = base.to_vec();
    zero.extend(["--section", "zero"]);
    assert_eq!(run(&zero, None).status.code(), Some(1));

    let tuned = [
        "mutate",
        "--quiver",
        q,
        "--theta",
        "A2",
        "--steps",
        "2",
        "--degrees",
        "2=1,2,1",
    ];
    assert_eq!(run(&tuned, None).status.code(), Some(0));
}
