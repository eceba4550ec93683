//! End-to-end checks of the command-line surface: exit codes, file
//! round trips and cache reuse.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symring"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("symring-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn dims_prints_table_and_footer() {
    let out = run(&["dims", "--n", "7"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("(5 2)"));
    assert!(text.contains("38416"));
    assert!(text.contains("1500625"));
    assert!(text.contains("sum d^2 = 5040"));

    let out = run(&["dims", "--n", "1"]);
    let text = stdout_of(&out);
    assert!(text.contains("(1)"));
}

#[test]
fn dims_rejects_out_of_range() {
    let out = run(&["dims", "--n", "11"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_is_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plam_starmap_pipeline_with_cache() {
    let dir = tmpdir("pipeline");
    let plam = dir.join("p.plam");
    let smap1 = dir.join("m1.smap");
    let smap2 = dir.join("m2.smap");
    let cache = dir.join("cache");

    let out = run(&["plam", "--n", "5", "--lambda", "4,1", "--out", plam.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&plam).unwrap();
    assert!(text.starts_with("PLAM N=5 LAMBDA 4 1 COUNT 16"));

    let out = run(&[
        "starmap",
        "--n",
        "5",
        "--lambda",
        "4,1",
        "--plam",
        plam.to_str().unwrap(),
        "--method",
        "basis",
        "--out",
        smap1.to_str().unwrap(),
        "--cache-dir",
        cache.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // direct method, fresh output; must agree with the basis path
    let out = run(&[
        "starmap",
        "--n",
        "5",
        "--lambda",
        "4,1",
        "--method",
        "direct",
        "--out",
        smap2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&smap1).unwrap(),
        std::fs::read_to_string(&smap2).unwrap()
    );

    // second run with the same cache reports reuse
    let out = run(&[
        "starmap",
        "--n",
        "5",
        "--lambda",
        "4,1",
        "--method",
        "direct",
        "--out",
        smap2.to_str().unwrap(),
        "--cache-dir",
        cache.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("reused cached map"));

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn starmap_rejects_mismatched_lambda() {
    let out = run(&["starmap", "--n", "5", "--lambda", "4,2", "--out", "/tmp/x.smap"]);
    assert_eq!(out.status.code(), Some(2));
}

fn write_symmetrizer_gre(path: &Path, n: usize) {
    use symring::{GroupRingElement, Permutation};
    let fact: i64 = (1..=n as i64).product();
    let e = GroupRingElement::from_terms(
        n,
        Permutation::all(n)
            .into_iter()
            .map(|p| (p, symring::Coefficient::from_ratio(1, fact))),
    )
    .unwrap();
    symring::io::write_gre(path, &e).unwrap();
}

#[test]
fn decompose_both_modes() {
    let dir = tmpdir("decompose");
    let input = dir.join("e.gre");
    write_symmetrizer_gre(&input, 3);

    for mode in ["ring", "spectral"] {
        let out_dir = dir.join(mode);
        let out = run(&[
            "decompose",
            "--input",
            input.to_str().unwrap(),
            "--mode",
            mode,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let ext = if mode == "ring" { "gre" } else { "spec" };
        assert!(out_dir.join(format!("part-01.{ext}")).exists());
        let audit = std::fs::read_to_string(out_dir.join("audit.txt")).unwrap();
        assert!(audit.contains("seed_index="));
        assert!(audit.contains("alpha="));
    }

    // the symmetrizer is primitive: exactly one part either way
    let ring_part = symring::io::read_gre(&dir.join("ring/part-01.gre")).unwrap();
    let original = symring::io::read_gre(&input).unwrap();
    assert!(ring_part.equals(&original));
    let spec_part = symring::io::read_spec(&dir.join("spectral/part-01.spec")).unwrap();
    assert!(spec_part.equals(&symring::dft(&original)));

    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn decompose_rejects_non_idempotent() {
    let dir = tmpdir("reject");
    let input = dir.join("two.gre");
    use symring::{Coefficient, GroupRingElement};
    let a = GroupRingElement::identity(3).scale(&Coefficient::from_integer(2));
    symring::io::write_gre(&input, &a).unwrap();
    let out = run(&[
        "decompose",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.join("parts").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn apply_operator_to_ket() {
    let dir = tmpdir("apply");
    let op = dir.join("a.gre");
    let vec = dir.join("u.ket");
    write_symmetrizer_gre(&op, 2);
    std::fs::write(&vec, "KET N=2 K=2\n1/1 0/1 : 2 1\n").unwrap();
    let out = run(&["apply", "--op", op.to_str().unwrap(), "--vec", vec.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("KET N=2 K=2"));
    assert!(text.contains("1/2 0/1 : 1 2"));
    assert!(text.contains("1/2 0/1 : 2 1"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn hamiltonian_matrix_file() {
    let dir = tmpdir("ham");
    let path = dir.join("h.mat");
    let out = run(&[
        "hamiltonian",
        "--n",
        "2",
        "--j",
        "1",
        "--type",
        "ferro",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("MAT ROWS=4 COLS=4"));
    assert!(text.contains("-1/2"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn example_s5_passes_both_modes_and_fails_when_tampered() {
    for mode in ["ring", "spectral"] {
        let out = run(&["example-s5", "--mode", mode]);
        assert!(out.status.success(), "mode {mode}");
        let text = stdout_of(&out);
        assert!(text.contains("PASS example-s5"));
        assert!(text.contains("-30/1"));
        assert!(text.contains("-1/4"));
    }
    let out = run(&["example-s5", "--mode", "spectral", "--tamper"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL F*F = F"));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "dft", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("PASS dft/n=4/multiplicativity"));
    assert!(text.contains("0 failed"));

    let out = run(&["verify", "--suite", "all", "--n", "3"]);
    assert!(out.status.success());

    let out = run(&["verify", "--suite", "bogus", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
