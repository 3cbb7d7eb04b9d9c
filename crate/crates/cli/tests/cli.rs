use std::path::Path;
use std::process::{Command, Output};

fn crystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crystal")).args(args).env_remove("CRYSTAL_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_line(o: &Output) -> String {
    assert!(!o.status.success());
    String::from_utf8(o.stderr.clone()).unwrap().lines().last().unwrap().to_string()
}

const M14: &str = "4:14:2167C3498ED5BA3619D2AE47CB584791EB2D3C6A8558AB1ED2C34976";
const RP3: &str = "4:8:21678345361872544781652358761432";

#[test]
fn gen_writes_catalogues_and_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let text = stdout(&crystal(&["gen", "--vertices", "16", "--out", out, "--threads", "1"]));
    let last = text.lines().last().unwrap();
    assert_eq!(last, "vertices 16 bipartite 3 nonbipartite 1");
    assert_eq!(text.lines().count(), 8);
    let file = dir.path().join("gems-14-nonbipartite.txt");
    let body = std::fs::read_to_string(&file).unwrap();
    assert_eq!(body, format!("GEMS v1 14 nonbipartite 1\n{M14}\n"));

    // resume reads the files back, so a tampered count shows up
    std::fs::write(&file, "GEMS v1 14 nonbipartite 0\n").unwrap();
    let again = stdout(&crystal(&["gen", "--vertices", "16", "--out", out, "--resume"]));
    assert!(again.contains("vertices 14 bipartite 1 nonbipartite 0"), "{again}");
    let fresh = stdout(&crystal(&["gen", "--vertices", "16", "--out", out]));
    assert_eq!(fresh, text);
}

#[test]
fn gen_output_ignores_thread_count() {
    let one = stdout(&crystal(&["gen", "--vertices", "18", "--threads", "1"]));
    let out = Command::new(env!("CARGO_BIN_EXE_crystal"))
        .args(["gen", "--vertices", "18"])
        .env("CRYSTAL_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), one);
    let bad = Command::new(env!("CARGO_BIN_EXE_crystal"))
        .args(["gen", "--vertices", "4"])
        .env("CRYSTAL_THREADS", "many")
        .output()
        .unwrap();
    assert!(error_line(&bad).starts_with("error: cli: CRYSTAL_THREADS"));
}

#[test]
fn classify_writes_a_class_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    stdout(&crystal(&["gen", "--vertices", "20", "--out", out]));
    let known = dir.path().join("known.txt");
    std::fs::write(&known, format!("# names\n{M14} S1 x~ S2\n")).unwrap();
    let classes = dir.path().join("classes.txt");
    let cats: Vec<String> = (14..=20)
        .step_by(2)
        .map(|n| dir.path().join(format!("gems-{n}-nonbipartite.txt")).to_str().unwrap().to_string())
        .collect();
    let mut args = vec!["classify", "--catalogues"];
    args.extend(cats.iter().map(String::as_str));
    args.extend(["--known", known.to_str().unwrap(), "--out", classes.to_str().unwrap()]);
    let text = stdout(&crystal(&args));
    assert!(text.contains("graphs 12\n"), "{text}");
    assert!(text.contains("named 1\n"), "{text}");
    let body = std::fs::read_to_string(&classes).unwrap();
    assert!(body.starts_with("CLASSES v1 "));
    assert!(body.contains("class 0 ") && body.contains(" S1 x~ S2\n"));
    assert!(body.contains(&format!("{M14} 0\n")));
}

#[test]
fn invariants_of_census_members() {
    let text = stdout(&crystal(&["invariants", "--code", M14, "--pi1", "0,1"]));
    assert!(text.contains("H0 = Z\nH1 = Z\nH2 = Z2\nH3 = 0\n"), "{text}");
    assert!(text.contains("pi1 = <"));
    let text = stdout(&crystal(&["invariants", "--code", RP3]));
    assert_eq!(text, "H0 = Z\nH1 = Z2\nH2 = 0\nH3 = Z\n");

    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("codes.txt");
    std::fs::write(&list, format!("{M14}\n{RP3}\n")).unwrap();
    let text = stdout(&crystal(&["invariants", "--file", list.to_str().unwrap()]));
    assert_eq!(text.matches("code ").count(), 2);
    assert!(error_line(&crystal(&["invariants", "--code", "4:3:xyz"])).starts_with("error: "));
    assert!(!crystal(&["invariants", "--code", M14, "--pi1", "1,1"]).status.success());
}

#[test]
fn split_recovers_summands() {
    let a = crystal::canon::decode_str(M14).unwrap();
    let b = crystal::canon::decode_str(RP3).unwrap();
    let sum = crystal::code(&crystal::connected_sum(&a, &b, 3, 5).unwrap()).unwrap();
    let text = stdout(&crystal(&["split", "--code", sum.as_str()]));
    let mut pieces: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("piece ")).collect();
    pieces.sort();
    let mut want = vec![M14, RP3];
    want.sort();
    assert_eq!(pieces, want);
}

#[test]
fn ingest_and_normalize() {
    let dir = tempfile::tempdir().unwrap();
    let gluing = dir.path().join("s3.txt");
    std::fs::write(
        &gluing,
        "tet 0: face 0 -> tet 1 face 0 perm 123\n\
         tet 0: face 1 -> tet 1 face 1 perm 023\n\
         tet 0: face 2 -> tet 1 face 2 perm 013\n\
         tet 0: face 3 -> tet 1 face 3 perm 012\n",
    )
    .unwrap();
    let out = dir.path().join("s3.code");
    let text = stdout(&crystal(&["ingest", "--gluing", gluing.to_str().unwrap(), "--out", out.to_str().unwrap()]));
    assert_eq!(text, "vertices 2\nhandles 0\ncode 4:2:21212121\n");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "4:2:21212121\n");

    std::fs::write(&gluing, "tet 0: face 0 -> tet 1 face 0 perm 123\n").unwrap();
    let line = error_line(&crystal(&["ingest", "--gluing", gluing.to_str().unwrap()]));
    assert!(line.starts_with("error: gluing: ") && line.contains("dangling face"), "{line}");

    let raw = dir.path().join("raw.txt");
    std::fs::write(&raw, "2 1\n2 1\n2 1\n2 1\n").unwrap();
    assert_eq!(stdout(&crystal(&["code", "--normalize", raw.to_str().unwrap()])), "4:2:21212121\n");
    assert_eq!(stdout(&crystal(&["code", "--normalize", "4:2:21212121"])), "4:2:21212121\n");
    std::fs::write(&raw, "2 1\n1 2\n").unwrap();
    assert!(error_line(&crystal(&["code", "--normalize", raw.to_str().unwrap()])).starts_with("error: "));
    assert!(!Path::new("nonexistent-file").exists());
    assert!(error_line(&crystal(&["code", "--normalize", "nonexistent-file"])).starts_with("error: cli: "));
}
