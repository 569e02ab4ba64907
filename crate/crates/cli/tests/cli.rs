use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quiver_uinv::quiver::sample_omega_point;
use quiver_uinv::{Rational, Rationals, RepPoint};
use quiver_uinv_cli::commands::model_from_text;
use quiver_uinv_cli::format::format_point;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn quinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_four_vertex() {
    let out = quinv(&["validate", path(&data("four_vertex.quiver"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stderr(&out), "");
}

#[test]
fn validate_reports_missing_and_non_incident_psi() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(data("four_vertex.quiver")).unwrap();

    let missing = write_temp(&dir, "missing.quiver", &text.replace("psi 3 a3\n", ""));
    let out = quinv(&["validate", &missing]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).lines().any(|l| l.starts_with("E003")), "{}", stderr(&out));

    let wrong = write_temp(&dir, "wrong.quiver", &text.replace("psi 3 a3", "psi 3 a1"));
    let out = quinv(&["validate", &wrong]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).lines().any(|l| l.starts_with("E002")), "{}", stderr(&out));

    let isolated = write_temp(&dir, "isolated.quiver", &format!("{text}vertex 5\npsi 5 a1\n"));
    let out = quinv(&["validate", &isolated]);
    assert!(stderr(&out).lines().any(|l| l.starts_with("E004")), "{}", stderr(&out));

    let unknown = write_temp(&dir, "unknown.quiver", &format!("{text}arrow b 1 9\n"));
    let out = quinv(&["validate", &unknown]);
    assert!(stderr(&out).lines().any(|l| l.starts_with("E001")), "{}", stderr(&out));
}

#[test]
fn parse_errors_exit_two_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_temp(&dir, "bad.quiver", "n 2\nvertex q\narrow a q\n");
    let out = quinv(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("E005 line 3:"), "{}", stderr(&out));
    let out = quinv(&["count", "/nonexistent/file.quiver"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn section_golden() {
    let out = quinv(&["section", "--format", "json", path(&data("four_vertex.quiver"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        std::fs::read_to_string(data("four_vertex.section.jsonl")).unwrap()
    );
    let text = stdout(&quinv(&["section", path(&data("four_vertex.quiver"))]));
    let shapes: Vec<&str> = text
        .lines()
        .skip(1)
        .take(4)
        .map(|l| l.split(' ').nth(1).unwrap())
        .collect();
    assert_eq!(shapes, ["S-", "Mat", "S+", "Lambda"]);
}

#[test]
fn generators_golden() {
    let out = quinv(&["generators", "--format", "json", path(&data("four_vertex.quiver"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(
        text,
        std::fs::read_to_string(data("four_vertex.generators.jsonl")).unwrap()
    );
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["id", "kind", "arrows", "i", "k", "leading", "side"] {
            assert!(v.get(key).is_some(), "{key} missing in {line}");
        }
    }
    let listing = stdout(&quinv(&["generators", path(&data("four_vertex.quiver"))]));
    assert!(listing.contains("Rplus(a1,a2)"));
    assert!(listing.contains("Rminus(a2,a4)"));
}

#[test]
fn n_one_count_equals_arrow_count() {
    let dir = tempfile::tempdir().unwrap();
    let q = write_temp(
        &dir,
        "n1.quiver",
        "n 1\nvertex u\nvertex v\narrow a u v\narrow b u v\narrow c v v\npsi u a\npsi v c\n",
    );
    let out = quinv(&["count", "--format", "json", &q]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["total"], 3);
    assert_eq!(v["section_dim"], 3);
}

#[test]
fn eval_anti_identity_one_loop() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "j.point", "matrix a\n0 1\n1 0\n");
    let out = quinv(&["eval", path(&data("one_loop.quiver")), "--point", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 -1\n1 1\n2 0\n");
}

#[test]
fn eval_unknown_arrow_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.point", "matrix zz\n0 1\n1 0\n");
    let out = quinv(&["eval", path(&data("one_loop.quiver")), "--point", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("E005 line 1:"));
}

fn reduced_block(output: &str) -> String {
    let start = output.find("# reduced point\n").unwrap() + "# reduced point\n".len();
    let end = output.find("# shape\n").unwrap();
    output[start..end].to_string()
}

#[test]
fn reduce_anti_identity_is_fixed() {
    let dir = tempfile::tempdir().unwrap();
    let j = "matrix a1\n0 0 1\n0 1 0\n1 0 0\n";
    let point: String = ["a1", "a2", "a3", "a4"].iter().map(|a| j.replace("a1", a)).collect();
    let p = write_temp(&dir, "j.point", &point);
    let out = quinv(&["reduce", path(&data("four_vertex.quiver")), "--point", &p]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(reduced_block(&text), point);
    for v in ["1", "2", "3", "4"] {
        assert!(text.contains(&format!("matrix {v}\n1 0 0\n0 1 0\n0 0 1\n")));
    }
    assert_eq!(text.lines().filter(|l| l.ends_with(" ok")).count(), 4);
}

#[test]
fn reduce_random_points_and_eval_invariance() {
    let dir = tempfile::tempdir().unwrap();
    let quiver_path = data("four_vertex.quiver");
    let model = model_from_text(&std::fs::read_to_string(&quiver_path).unwrap()).unwrap();
    for seed in 0..5 {
        let h: RepPoint<Rational> = sample_omega_point(&model.quiver, model.n, &Rationals, seed).unwrap();
        let p = write_temp(&dir, "h.point", &format_point(&model.quiver, &h));
        let out = quinv(&["reduce", path(&quiver_path), "--point", &p]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let text = stdout(&out);
        let shape_lines: Vec<&str> = text.lines().skip_while(|l| *l != "# shape").skip(1).collect();
        assert_eq!(shape_lines.len(), 4);
        assert!(shape_lines.iter().all(|l| l.ends_with(" ok")), "{text}");

        let r = write_temp(&dir, "r.point", &reduced_block(&text));
        let before = quinv(&["eval", path(&quiver_path), "--point", &p]);
        let after = quinv(&["eval", path(&quiver_path), "--point", &r]);
        assert_eq!(before.status.code(), Some(0));
        assert_eq!(stdout(&before), stdout(&after));
    }
}

#[test]
fn reduce_singular_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "s.point", "matrix a\n1 2\n2 4\n");
    let out = quinv(&["reduce", path(&data("one_loop.quiver")), "--point", &p]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stderr(&out), "not in Omega: arrow a, k=1\n");
}

#[test]
fn verify_four_vertex_passes() {
    let out = quinv(&["verify", path(&data("four_vertex.quiver"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["config"]["prime"], 2147483647u64);
    assert_eq!(v["config"]["trials"], 100);
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_paper_mode_two_loops_fails_coverage() {
    let q = data("two_loops.quiver");
    let out = quinv(&["verify", "--mode", "paper", path(&q)]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coverage = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "coverage")
        .unwrap();
    assert_ne!(coverage["passes"], coverage["trials"]);
    assert_eq!(quinv(&["verify", path(&q)]).status.code(), Some(0));
}

#[test]
fn verify_rejects_composite_prime() {
    let out = quinv(&["verify", "--prime", "91", path(&data("one_loop.quiver"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_deterministic() {
    let q = data("four_vertex.quiver");
    let a = quinv(&["verify", "--seed", "17", "--trials", "20", path(&q)]);
    let b = quinv(&["verify", "--seed", "17", "--trials", "20", path(&q)]);
    assert_eq!(a.stdout, b.stdout);
    let c = quinv(&["verify", "--seed", "18", "--trials", "20", path(&q)]);
    assert_ne!(a.stdout, c.stdout);
}
