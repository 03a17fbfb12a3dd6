use std::path::Path;
use std::process::{Command, Output};

fn wavedict(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavedict"))
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

#[test]
fn families_lists_all_filters() {
    let o = wavedict(&["families"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1 + 17);
    let o = wavedict(&["families", "--name", "Short3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('h'));
}

#[test]
fn dict_reports_shape_and_ind() {
    let o = wavedict(&["dict", "--family", "Short3", "--n-b", "33", "--levels", "2:3", "--b", "1/4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("33 x 97"), "{out}");
    assert!(out.contains("ind = [27, 27, 43]"), "{out}");

    let o = wavedict(&["dict", "--family", "CW2", "--n-b", "33", "--levels", "2,3", "--b", "1"]);
    assert!(o.status.success());
    let cols: usize = stdout(&o).lines().next().unwrap().split(" x ").nth(1).unwrap().trim().parse().unwrap();
    assert!(cols < 97);
}

#[test]
fn dict_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = wavedict(&[
        "dict", "--family", "Short3", "--n-b", "33", "--levels", "2:3", "--b", "0.25", "--out", out, "--matrix",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let desc = std::fs::read_to_string(dir.path().join("descriptors.jsonl")).unwrap();
    assert_eq!(desc.lines().count(), 97);
    let v: serde_json::Value = serde_json::from_str(desc.lines().nth(29).unwrap()).unwrap();
    assert_eq!(v["level"], 2);
    assert_eq!(v["shift"], -9);
    let ind: Vec<usize> = serde_json::from_str(&std::fs::read_to_string(dir.path().join("ind.json")).unwrap()).unwrap();
    assert_eq!(ind, vec![27, 27, 43]);
    let matrix = std::fs::read_to_string(dir.path().join("matrix.csv")).unwrap();
    assert_eq!(matrix.lines().count(), 33);
    assert_eq!(matrix.lines().next().unwrap().split(',').count(), 97);
}

#[test]
fn gen_writes_generators() {
    let dir = tempfile::tempdir().unwrap();
    let o = wavedict(&["gen", "--family", "CW3", "--u", "3", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(dir.path().join("phi.csv").exists());
    assert!(dir.path().join("psi.csv").exists());
}

#[test]
fn invalid_parameters_exit_nonzero() {
    let o = wavedict(&["dict", "--b", "0.3"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("2^r"), "{}", stderr(&o));

    let o = wavedict(&["dict", "--family", "Haar"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("wrong name"));

    let o = wavedict(&["approx", "--input", "/nonexistent/file.csv"]);
    assert!(!o.status.success());

    let o = wavedict(&["dict", "--levels", "x"]);
    assert!(!o.status.success());
}

fn approx(input: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["approx", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    wavedict(&args)
}

#[test]
fn approx_on_constant_signal() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("flat.csv");
    std::fs::write(&input, "5\n".repeat(1000)).unwrap();
    let o = approx(&input, &dir.path().join("run"), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PRD = 0.0000"), "{out}");
    assert!(out.contains("SR = 500.0000"), "{out}");
    for f in ["model.jsonl", "reconstruction.csv", "overlay.csv", "sparsity.csv"] {
        assert!(dir.path().join("run").join(f).exists());
    }
}

#[test]
fn approx_reads_packed_records() {
    let dir = tempfile::tempdir().unwrap();
    let samples: Vec<u16> = (0..1200).map(|i| 1024 + ((i % 90) as u16)).collect();
    let input = dir.path().join("rec.dat");
    std::fs::write(&input, wavedict::ecg_io::pack_ubit11(&samples, wavedict::ecg_io::BitOrder::LsbFirst)).unwrap();
    let o = approx(&input, &dir.path().join("run"), &["--format", "ubit11", "--family", "Db4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("Q = 2"), "{}", stdout(&o));
}
