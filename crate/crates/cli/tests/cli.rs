use std::fs;
use std::process::{Command, Output};

fn k0spec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k0spec")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sweep_to_stdout() {
    let o = k0spec(&["sweep", "--coupling", "1", "--m-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "C,m,count,seto_closed,seto_numeric,eps0,E0_physical,lower_bound,gap,flags"
    );
    assert!(lines[1].starts_with("1.0,0,1,1.5,2.0,-0.0946571"), "{}", lines[1]);
    assert!(lines[2].starts_with("1.0,1,0,0.5,0.5,,,"), "{}", lines[2]);
}

#[test]
fn physical_params_mode() {
    let o = k0spec(&["sweep", "--params", "1,1,0.5,1", "--params", "1,1,1,1", "--m-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][0], "1.0");
    assert_eq!(rows[1][0], "2.0");
    assert!(!rows[0][6].is_empty());
    assert_eq!(rows[1][8], "0.25");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("table.csv");
    fs::write(
        &cfg,
        format!("couplings = 0.5, 1\nm_max = 2\nout = {}\n", out.display()),
    )
    .unwrap();
    let o = k0spec(&["sweep", "--config", cfg.to_str().unwrap(), "--m-max", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(stdout(&o).is_empty());
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(k0spec(&["sweep"]).status.code(), Some(2));
    assert_eq!(k0spec(&["sweep", "--coupling", "-1"]).status.code(), Some(2));
    assert_eq!(k0spec(&["sweep", "--coupling", "abc"]).status.code(), Some(2));
    assert_eq!(k0spec(&["sweep", "--params", "1,1,1"]).status.code(), Some(2));
    assert_eq!(
        k0spec(&["potential", "--coupling", "1", "--potential-range", "0:1:5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        k0spec(&["sweep", "--config", "/nonexistent/cfg"]).status.code(),
        Some(2)
    );
    assert_eq!(k0spec(&["bogus"]).status.code(), Some(2));
}

#[test]
fn potential_curves_long_format() {
    let o = k0spec(&[
        "potential",
        "--coupling",
        "1",
        "--m-max",
        "1",
        "--potential-range",
        "1:2:2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "C m s v_eff");
    assert_eq!(lines.len(), 5);
    let first: Vec<f64> = lines[1].split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert_eq!(&first[..3], &[1.0, 0.0, 1.0]);
    assert!((first[3] + 0.671_024_4).abs() < 1e-7);
}

#[test]
fn verify_passes_with_documented_discrepancies() {
    let o = k0spec(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("int_s_k0: pass"));
    assert!(text.contains("int_s_k0_sq: expected-discrepancy measured=0.49999"));
    assert!(text.contains("published=1.5707963267948966"));
    assert!(text.lines().any(|l| l == "result: pass"));
}
