use std::process::{Command, Output};

use cube_spectra::cube_fourier::CubeFunction;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cube-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lambda_examples() {
    let o = cli(&["lambda", "--n", "4", "--r", "2", "--exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"lambda\":3.16227766"));
    let o = cli(&[
        "lambda",
        "--n",
        "2",
        "--r",
        "1",
        "--recurrence",
        "--format",
        "text",
    ]);
    assert_eq!(
        stdout(&o),
        "# seed=0\nlambda = 1.41421356\np = 1\nprofile = 1 0.707106781\n"
    );
}

#[test]
fn seed_is_echoed() {
    let o = cli(&[
        "verify",
        "--n",
        "6",
        "--random-general",
        "--trials",
        "50",
        "--seed",
        "17",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"seed\":17"));
    let again = cli(&[
        "verify",
        "--n",
        "6",
        "--random-general",
        "--trials",
        "50",
        "--seed",
        "17",
        "--threads",
        "4",
    ]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn malformed_code_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "010\n11\n").unwrap();
    let p = path.to_str().unwrap();
    for args in [
        vec!["cover", "--code", p, "--r", "1"],
        vec!["wht", "--code", p],
        vec!["verify", "--code", p, "--r", "1"],
    ] {
        let o = cli(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    }
    assert_eq!(
        cli(&["cover", "--code", "/nonexistent/code.txt", "--r", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(
        cli(&["bound", "--n", "5", "--d", "9"]).status.code(),
        Some(2)
    );
    assert_eq!(cli(&["bound", "--delta", "-0.1"]).status.code(), Some(2));
    assert_eq!(
        cli(&["lambda", "--n", "0", "--r", "0", "--exact"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cli(&["verify", "--n", "9", "--all-linear"]).status.code(),
        Some(2)
    );
}

#[test]
fn dimension_cap_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rep.txt");
    std::fs::write(&path, "000000\n111111\n").unwrap();
    let p = path.to_str().unwrap();
    let capped = Command::new(env!("CARGO_BIN_EXE_cube-spectra"))
        .args(["cover", "--code", p, "--r", "1"])
        .env("CUBE_SPECTRA_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(
        cli(&["cover", "--code", p, "--r", "1"]).status.code(),
        Some(0)
    );
}

#[test]
fn wht_formats_and_binary_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("rep.txt");
    std::fs::write(&code, "00\n11\n").unwrap();
    let out = dir.path().join("hat.bin");
    let o = cli(&[
        "wht",
        "--code",
        code.to_str().unwrap(),
        "--binary-out",
        out.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "index,value\n0,0.5\n1,0\n2,0\n3,0.5\n");
    let stored = CubeFunction::from_bytes(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(stored.values(), &[0.5, 0.0, 0.0, 0.5]);

    let text = dir.path().join("f.txt");
    let f = CubeFunction::new(1, vec![1.0, 3.0]).unwrap();
    let mut buf = Vec::new();
    f.write_text(&mut buf).unwrap();
    std::fs::write(&text, buf).unwrap();
    let o = cli(&["wht", "--function", text.to_str().unwrap()]);
    assert_eq!(stdout(&o), "{\"n\":1,\"values\":[2,-1]}\n");
    let o = cli(&["wht", "--function", out.to_str().unwrap()]);
    // transforming twice divides by 2ⁿ
    assert_eq!(stdout(&o), "{\"n\":2,\"values\":[0.25,0,0,0.25]}\n");
}

#[test]
fn csv_outputs() {
    let o = cli(&["bound", "--n", "4", "--d", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,d,r_star,lambda,bound\n4,2,1,2,20\n");
    let o = cli(&["rate-table", "--deltas", "0,0.1,0.5", "--format", "csv"]);
    assert_eq!(stdout(&o), "delta,rate\n0,1\n0.1,0.721928095\n0.5,0\n");
}
