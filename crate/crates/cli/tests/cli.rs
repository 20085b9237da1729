use std::process::{Command, Output};

use minkowski_cli::output::Envelope;
use minkowski_cli::records::{ConstantsRecord, HexagonRow, MatroidRecord, ModuliRecord};
use minkowski_core::Exponent;

const BIN: &str = env!("CARGO_BIN_EXE_minkowski");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(i).unwrap().to_string())
        .collect()
}

#[test]
fn constants_disk_and_limits() {
    let env: Envelope<Vec<ConstantsRecord>> =
        serde_json::from_str(&stdout(&["constants", "--p", "2,3,1,inf"])).unwrap();
    assert_eq!(env.meta.command, "constants");
    let [two, three, one, inf] = &env.data[..] else {
        panic!()
    };
    assert!((two.delta0 - 0.866_025_403_784_438_6).abs() < 1e-12);
    assert!((two.delta1 - two.delta0).abs() < 1e-12);
    assert!((three.tau_p - 0.20406).abs() < 5e-5);
    assert!(one.limit && (one.volume - 2.0).abs() < 1e-12);
    assert_eq!(inf.p, Exponent::Infinity);
    assert!(inf.limit && inf.volume == 4.0);
}

#[test]
fn csv_layout() {
    let s = stdout(&["constants", "--p", "2", "--format", "csv"]);
    assert!(
        s.starts_with("p,regime,limit,sigma_p,tau_p,delta0,delta1,delta_crit,volume,davis_p0\n")
    );
    assert!(!s.contains('\r'));
    assert_eq!(column(&s, "delta0"), ["0.866025403784"]);
}

#[test]
fn sweep_sigma_disk_is_constant() {
    let s = stdout(&[
        "sweep", "sigma", "--p", "2", "--grid", "1:1.7:5", "--format", "csv",
    ]);
    assert_eq!(s.lines().next().unwrap(), "p,sigma,tau,delta,A,residual");
    let a = column(&s, "A");
    assert_eq!(a.len(), 5);
    assert!(a.iter().all(|x| x.starts_with("2.598076211")));
}

#[test]
fn sweep_sigma_endpoints_at_three() {
    let env: Envelope<Vec<ModuliRecord>> =
        serde_json::from_str(&stdout(&["sweep", "sigma", "--p", "3"])).unwrap();
    assert_eq!(env.data.len(), 11);
    assert!((env.data[0].area - 2.8589).abs() < 1e-4);
    assert!((env.data[10].area - 2.8694).abs() < 1e-4);
    assert!(env.data.iter().all(|r| r.residual < 1e-9));
}

#[test]
fn sweep_sigma_rejects_out_of_domain_grid() {
    let out = run(&["sweep", "sigma", "--p", "3", "--grid", "0.5:1.5:3"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("[1, sigma_p]"));
}

#[test]
fn section_table() {
    let s = stdout(&[
        "sweep", "section", "--alpha", "2", "--grid", "2:4:3", "--format", "csv",
    ]);
    assert_eq!(s.lines().count(), 4);
    assert!(column(&s, "A")[0].starts_with("2.598076211"));
}

#[test]
fn shell_export_rows() {
    let s = stdout(&[
        "export", "shells", "--p", "3", "--kind", "lambda0", "--format", "csv",
    ]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "p,lattice_kind,idx,x,y");
    assert_eq!(lines.count(), 6);
}

#[test]
fn hexagon_export_disk() {
    let s = stdout(&["export", "hexagons", "--p", "2", "--kind", "inscribed-max"]);
    let env: Envelope<Vec<HexagonRow>> = serde_json::from_str(&s).unwrap();
    assert!((env.data[0].area - 2.598_076_2).abs() < 1e-7);
    let csv = stdout(&["export", "hexagons", "--p", "2", "--format", "csv"]);
    assert!(csv.starts_with("p,kind,v1x,v1y,v2x,v2y,v3x,v3y,v4x,v4y,v5x,v5y,v6x,v6y,area\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn empty_selection_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hex.csv");
    let out = run(&[
        "export",
        "hexagons",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        text,
        "p,kind,v1x,v1y,v2x,v2y,v3x,v3y,v4x,v4y,v5x,v5y,v6x,v6y,area\n"
    );
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = run(&[
        "constants",
        "--p",
        "2",
        "--out",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("i/o"));
}

#[test]
fn bad_inputs_exit_nonzero() {
    for args in [
        &["constants", "--p", "0.9"][..],
        &["lattice"],
        &["constants", "--grid", "1:2"],
        &["constants", "--grid", "1:2:0"],
        &["lattice", "--p", "3", "--tol", "-1"],
        &["matroid", "uniform", "--k", "3", "--n", "2"],
        &["curves", "genus", "--n", "0"],
    ] {
        assert!(!run(args).status.success(), "{args:?}");
    }
}

#[test]
fn tolerance_flag_is_recorded() {
    let s = stdout(&["lattice", "--p", "3", "--tol", "1e-8"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["meta"]["params"]["tol"], 1e-8);
    assert_eq!(v["data"].as_array().unwrap().len(), 2);
}

#[test]
fn matroid_commands() {
    let env: Envelope<Vec<MatroidRecord>> = serde_json::from_str(&stdout(&[
        "matroid",
        "shell",
        "--p",
        "3",
        "--reading",
        "lattice-basis",
    ]))
    .unwrap();
    let r = &env.data[0];
    assert_eq!(r.ground, ["a", "b"]);
    assert!((r.metric[0].volume - 0.5 * 7f64.cbrt()).abs() < 1e-10);

    let env: Envelope<Vec<MatroidRecord>> = serde_json::from_str(&stdout(&[
        "matroid", "vectors", "--vector", "a=1,0", "--vector", "b=2,0",
    ]))
    .unwrap();
    assert_eq!(env.data[0].bases, [vec!["a"], vec!["b"]]);
    assert_eq!(
        env.data[0].flats,
        [Vec::<String>::new(), vec!["a".into(), "b".into()]]
    );
}

#[test]
fn curves_commands() {
    let s = stdout(&["curves", "ceil", "--x", "-1.5,0,1.5", "--format", "csv"]);
    assert_eq!(column(&s, "value"), ["-2", "1", "2"]);
    let s = stdout(&[
        "curves", "euler", "--deg", "-3", "--g", "2", "--format", "csv",
    ]);
    assert_eq!(column(&s, "value"), ["-4"]);
}

#[test]
fn report_text_lists_both_volumes() {
    let s = stdout(&["report", "--format", "text"]);
    assert!(s.contains("3.52"));
    assert!(s.contains("3.53327750057"));
    assert!(s.contains("1.0567397178"));
}
