use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ws-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn help_and_version_exit_zero() {
    let o = run(&["--help"]);
    assert_eq!(code(&o), 0);
    for cmd in [
        "spectrum",
        "wavefunction",
        "verify",
        "nu-solve",
        "sweep",
        "check-symmetry",
    ] {
        assert!(stdout(&o).contains(cmd), "{cmd} missing from help");
    }
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn spectrum_csv_has_header_and_levels() {
    let o = run(&[
        "spectrum",
        "--variant",
        "pt",
        "--C",
        "0",
        "--n-max",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# ws-spectra v"));
    assert!(lines[0].ends_with("schema=spectrum"));
    assert_eq!(lines[1], "n,eps_re,eps_im,E_re,E_im,admissible,reason");
    assert_eq!(lines.len(), 5);
    assert!(lines[2].starts_with("0,-0.25,0,"));
    assert!(stderr(&o).contains("empty_by_amgm=true"));
}

#[test]
fn json_lines_parse() {
    let o = run(&[
        "spectrum",
        "--variant",
        "nonpt",
        "--V0I",
        "0.5",
        "--R0",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let records: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records[0]["schema"], "spectrum");
    assert_eq!(records[1]["n"], 0);
    assert_eq!(records[1]["reason"], "complex_spectrum");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("well.cfg");
    std::fs::write(&cfg, "# test\nvariant=pt\nV0R=1\nalphaI=0.5\nC=1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let from_file = run(&["spectrum", "--config", cfg, "--format", "csv"]);
    let overridden = run(&["spectrum", "--config", cfg, "--C", "0", "--format", "csv"]);
    let direct = run(&["spectrum", "--variant", "pt", "--C", "0", "--format", "csv"]);
    assert_eq!(code(&from_file), 0);
    assert_ne!(stdout(&from_file), stdout(&overridden));
    assert_eq!(stdout(&overridden), stdout(&direct));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["spectrum"])), 2, "missing variant");
    assert_eq!(code(&run(&["spectrum", "--variant", "sideways"])), 2);
    assert_eq!(
        code(&run(&["spectrum", "--variant", "pt", "--format", "xml"])),
        2
    );
    assert_eq!(
        code(&run(&["wavefunction", "--variant", "pt", "--points", "10"])),
        2
    );
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let o = run(&[
        "sweep", "--beta", "0:1:1000", "--gamma", "0:1:1000", "--q-grid", "1,2",
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("limit"));
    let o = run(&[
        "nu-solve",
        "--sigma",
        "1,0,0",
        "--tau-tilde",
        "eps,0",
        "--sigma-tilde",
        "eps,0,-1",
    ]);
    assert_eq!(code(&o), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "variant=pt\nV0R\n").unwrap();
    let o = run(&["spectrum", "--config", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn failed_run_writes_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.csv");
    let o = run(&["spectrum", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(!Path::new(&out).exists());
}

#[test]
fn closure_failure_exits_three() {
    let o = run(&["spectrum", "--variant", "pt", "--tol-residual", "1e-300"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("quantization closure fails"));
}

#[test]
fn inconsistent_level_exits_four() {
    let o = run(&[
        "wavefunction",
        "--variant",
        "pt",
        "--n",
        "1",
        "--epsilon-override",
        "3,1",
    ]);
    assert_eq!(code(&o), 4);
    assert!(stdout(&o).is_empty());
}

#[test]
fn verify_invariant_failure_exits_five() {
    let ok = run(&["verify", "--variant", "pt", "--n-max", "1"]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    let o = run(&[
        "verify",
        "--variant",
        "pt",
        "--n-max",
        "1",
        "--epsilon-override",
        "5",
    ]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("invariant failed: quantization closure n=0"));
}

#[test]
fn symmetry_gate() {
    let o = run(&["check-symmetry", "--variant", "pt", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("x,v_re,v_im,mirror_re,mirror_im,defect"));
    let o = run(&["check-symmetry", "--variant", "nonpt", "--V0I", "0.5"]);
    assert_eq!(code(&o), 0, "non-PT asymmetry is reported, not fatal");
}

#[test]
fn wavefunction_window_and_points() {
    let o = run(&[
        "wavefunction",
        "--variant",
        "nonpt",
        "--V0I",
        "0.5",
        "--R0",
        "1",
        "--n",
        "1",
        "--x-min",
        "-2",
        "--x-max",
        "2",
        "--points",
        "101",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 101);
    assert!(rows[0].starts_with("-2,"));
    assert!(rows[100].starts_with("2,"));
}

#[test]
fn nu_solve_oscillator() {
    let o = run(&[
        "nu-solve",
        "--sigma",
        "1,0,0",
        "--tau-tilde",
        "0,0",
        "--sigma-tilde",
        "eps,0,-1",
        "--n-max",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("schema=nu-branches"));
    let eigen: Vec<&str> = text
        .lines()
        .skip_while(|l| !l.contains("schema=nu-eigen"))
        .collect();
    assert_eq!(eigen[1], "n,eps_re,eps_im,residual,iterations");
    assert!(eigen[2].starts_with("0,1,0,"));

    let fixed = run(&[
        "nu-solve",
        "--sigma",
        "1,0,0",
        "--tau-tilde",
        "0,0",
        "--sigma-tilde",
        "1,0,-1",
    ]);
    assert_eq!(code(&fixed), 0);
    assert!(!stdout(&fixed).contains("nu-eigen"));
}

#[test]
fn single_point_sweep_matches_spectrum() {
    let sweep = run(&[
        "sweep",
        "--variant",
        "pt",
        "--beta",
        "2",
        "--gamma",
        "0",
        "--q-grid",
        "1",
        "--format",
        "csv",
    ]);
    let spectrum = run(&[
        "spectrum",
        "--variant",
        "pt",
        "--V0R",
        "1",
        "--alphaI",
        "0.5",
        "--C",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&sweep), 0);
    // drop the four tag columns and the trailing empty_by_amgm
    let sweep_rows: Vec<String> = stdout(&sweep)
        .lines()
        .skip(2)
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            cells[4..cells.len() - 1].join(",")
        })
        .collect();
    let spectrum_text = stdout(&spectrum);
    let spectrum_rows: Vec<&str> = spectrum_text.lines().skip(2).take(4).collect();
    assert_eq!(sweep_rows, spectrum_rows);
}
