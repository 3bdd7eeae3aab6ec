//! CLI behavior: exit codes, output formats, and byte-identical JSON for
//! identical configuration and seed.

use std::process::Command;

fn dilates() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dilates"))
}

fn tmpdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dilates-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn hconst_prints_certified_interval() {
    let out = dilates()
        .args(["hconst", "--field", "t^2-2", "--dilate", "t"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("5.82842712"), "missing interval: {}", text);
}

#[test]
fn hconst_json_is_deterministic() {
    let dir = tmpdir();
    let p1 = dir.join("h1.json");
    let p2 = dir.join("h2.json");
    for p in [&p1, &p2] {
        let out = dilates()
            .args([
                "hconst",
                "--field",
                "t^2-2",
                "--dilate",
                "t",
                "--seed",
                "7",
                "--json",
                p.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    assert_eq!(
        std::fs::read(&p1).unwrap(),
        std::fs::read(&p2).unwrap(),
        "identical config + seed must give byte-identical JSON"
    );
}

#[test]
fn unknown_flag_exits_2() {
    let out = dilates()
        .args(["hconst", "--field", "t^2-2", "--no-such-flag"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_polynomial_exits_2() {
    let out = dilates()
        .args(["hconst", "--field", "t^^", "--dilate", "t"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn subfield_system_exits_2() {
    let out = dilates()
        .args(["hconst", "--field", "t^2-2", "--dilate", "3/2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_refusal_exits_1() {
    let dir = tmpdir();
    let pts = dir.join("big.txt");
    let mut content = String::new();
    for i in 0..2000 {
        content.push_str(&format!("{}\n", i));
    }
    std::fs::write(&pts, content).unwrap();
    let out = dilates()
        .args([
            "sumset",
            "--set",
            pts.to_str().unwrap(),
            "--mats",
            "[[[1]],[[2]],[[3]]]",
            "--cap",
            "1000000",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn analyze_reports_skew_family() {
    let dir = tmpdir();
    let mats = dir.join("skew.json");
    std::fs::write(
        &mats,
        "[[[0,1,0],[-1,0,0],[0,0,0]],[[0,0,1],[0,0,0],[-1,0,0]],[[0,0,0],[0,0,1],[0,-1,0]]]",
    )
    .unwrap();
    let out = dilates()
        .args(["analyze", "--mats", mats.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pre_commuting: Some(false)"));
    assert!(text.contains("irreducible:   True"));
    assert!(text.contains("coprime:       Some(true)"));
}

#[test]
fn ld_reproduces_worked_example() {
    let dir = tmpdir();
    let residues = dir.join("residues.txt");
    std::fs::write(&residues, "0\n1\n3\n9\n").unwrap();
    let out = dilates()
        .args([
            "ld",
            "--period",
            "[[12]]",
            "--residues",
            residues.to_str().unwrap(),
            "--flag",
            "[[[3]],[[1]]]",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("volume: 1/3"), "{}", text);
    assert!(text.contains("3/4"), "{}", text);
}

#[test]
fn sumset_roundtrip_through_files() {
    let dir = tmpdir();
    let pts = dir.join("a.txt");
    std::fs::write(&pts, "0\n1\n2\n").unwrap();
    let out_file = dir.join("sum.txt");
    let out = dilates()
        .args([
            "sumset",
            "--set",
            pts.to_str().unwrap(),
            "--mats",
            "[[[1]],[[2]]]",
            "--out",
            out_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(&out_file).unwrap();
    let lines: Vec<&str> = written.lines().collect();
    assert_eq!(lines.len(), 7); // {0..6}
}

#[test]
fn extremal_runs_small_schedule() {
    let out = dilates()
        .args([
            "extremal",
            "--field",
            "rational",
            "--dilate",
            "3/2",
            "--basis",
            "rational",
            "--schedule",
            "5,10",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() >= 3);
}

#[test]
fn flags_subcommand_reports_ideals() {
    let out = dilates()
        .args([
            "flags",
            "--field",
            "t^2-2",
            "--dilate",
            "1/2*t",
            "--basis",
            "quadratic:2",
            "--n",
            "1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("denominator ideal norm: 2"));
}

#[test]
fn verify_cts_interval_passes() {
    let out = dilates()
        .args([
            "verify-cts",
            "--box",
            "0:1",
            "--eigen",
            r#"{"blocks":[{"dim":1,"scales":[1.0,2.0]}]}"#,
            "--resolution",
            "64",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}

#[test]
fn regularize_runs_from_config() {
    let dir = tmpdir();
    let pts = dir.join("dense.txt");
    let mut content = String::new();
    for i in 0..64 {
        if i % 3 != 1 {
            content.push_str(&format!("{}\n", i));
        }
    }
    std::fs::write(&pts, content).unwrap();
    let conf = dir.join("reg.conf");
    std::fs::write(
        &conf,
        format!(
            "field: rational\ndilates: [\"3/2\"]\nbasis: rational\npoints: {}\nbig_n: 64\nm: 2\ndelta: 1/5\nlevel: 1\n",
            pts.display()
        ),
    )
    .unwrap();
    let out = dilates()
        .args(["regularize", "--config", conf.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("stabilized at r ="));
}
