use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use indef_cli::document::EmbeddingDocument;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indef-embed"))
        .args(args)
        .env_remove("INDEF_EMBED_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solver_output_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    for method in ["greene", "spanning", "gluing"] {
        let out = dir.path().join(format!("{method}.json"));
        let o = run(&[
            "embed",
            s(&data("triangle.json")),
            "--method",
            method,
            "-o",
            s(&out),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{method}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v = run(&["verify", s(&out), s(&data("triangle.json"))]);
        assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
        assert!(stdout(&v).contains("embedding: pass"));
    }
}

#[test]
fn embed_dimensions_match_targets() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("triangle.json", "greene", 6),
        ("k5.json", "spanning", 13),
        ("k5.json", "gluing", 848),
    ];
    for (file, method, width) in cases {
        let out = dir.path().join("out.json");
        let o = run(&["embed", s(&data(file)), "--method", method, "-o", s(&out)]);
        assert_eq!(o.status.code(), Some(0));
        let doc = EmbeddingDocument::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!(
            doc.coordinates.iter().all(|r| r.len() == width),
            "{file} {method}"
        );
        assert!(doc.residual <= 1e-10 * 1e4, "{}", doc.residual);
        if method == "gluing" {
            assert_eq!((doc.signature.p, doc.signature.q), (424, 424));
            assert_eq!(doc.mu.as_ref().unwrap().len(), 5);
        }
    }
}

#[test]
fn hand_written_wide_triangle_passes() {
    let v = run(&[
        "verify",
        s(&data("triangle_embedding.json")),
        s(&data("triangle.json")),
    ]);
    assert_eq!(v.status.code(), Some(0));
    let text = stdout(&v);
    assert!(text.contains("isometry: pass") && text.contains("embedding: pass"));
}

#[test]
fn perturbed_vertex_fails_verification() {
    let text = std::fs::read_to_string(data("triangle_embedding.json")).unwrap();
    let mut doc = EmbeddingDocument::parse(&text).unwrap();
    doc.coordinates[1][0] += 1e-3;
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bent.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let v = run(&["verify", s(&path), s(&data("triangle.json")), "--tol", "1e-6"]);
    assert_eq!(v.status.code(), Some(4));
    let out = stdout(&v);
    let residual: f64 = out
        .lines()
        .next()
        .unwrap()
        .split(' ')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    // Edge 1–2 changes by about 2 · 100 · 1e-3.
    assert!((0.05..0.5).contains(&residual), "{residual}");
    assert!(out.contains("isometry: fail"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(run(&["info", s(&garbage)]).status.code(), Some(3));
    assert_eq!(
        run(&["info", s(&dir.path().join("missing.json"))]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let spanning_local = run(&[
        "embed",
        s(&data("k5.json")),
        "--method",
        "spanning",
        "--mode",
        "local",
    ]);
    assert_eq!(spanning_local.status.code(), Some(3));
    // A tolerance below rounding cannot be met.
    let starved = run(&[
        "embed",
        s(&data("k5.json")),
        "--tol",
        "1e-30",
        "--max-newton-iters",
        "3",
        "--max-lambda-doublings",
        "0",
    ]);
    assert_eq!(starved.status.code(), Some(2));
    assert!(!starved.stderr.is_empty());
    let mismatch = run(&["verify", s(&data("triangle_embedding.json")), s(&data("k5.json"))]);
    assert_eq!(mismatch.status.code(), Some(3));
}

#[test]
fn classify_and_obstruct() {
    let c = stdout(&run(&["classify", s(&data("unit_triangle.json"))]));
    assert!(c.starts_with("kind: Euclidean"));
    assert!(c.contains("0,1,2\t2\t0\t0"));
    let c = stdout(&run(&["classify", s(&data("edge_null.json"))]));
    assert!(c.starts_with("kind: Degenerate"));
    let o = stdout(&run(&["obstruct", s(&data("k5.json"))]));
    assert!(o.starts_with("p_min: 4\nq_min: 0\n"));
    let o = stdout(&run(&["obstruct", s(&data("k5_timelike.json"))]));
    assert!(o.starts_with("p_min: 0\nq_min: 4\n"));
    assert_eq!(
        run(&["obstruct", s(&data("unit_triangle.json")), "--clique-cap", "2"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn seed_comes_from_environment() {
    let with_env = Command::new(env!("CARGO_BIN_EXE_indef-embed"))
        .args(["embed", s(&data("triangle.json"))])
        .env("INDEF_EMBED_SEED", "9")
        .output()
        .unwrap();
    let with_flag = run(&["embed", s(&data("triangle.json")), "--seed", "9"]);
    assert_eq!(with_env.stdout, with_flag.stdout);
    assert_ne!(
        with_flag.stdout,
        run(&["embed", s(&data("triangle.json"))]).stdout
    );
}

#[test]
fn export_csv_lists_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("coords.csv");
    let o = run(&["embed", s(&data("triangle.json")), "--export-csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "vertex,label,x0,x1,x2,x3,x4,x5");
    assert!(lines[2].starts_with("1,l,"));
    assert_eq!(lines.len(), 4);
}

#[test]
fn bench_csv() {
    let o = run(&["bench", "--family", "grid", "--sizes", ""]);
    assert_eq!(stdout(&o), "method,n,d,V,E,p,q,residual,iters,millis\n");
    let o = run(&[
        "bench",
        "--family",
        "skeleton",
        "--methods",
        "greene",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    for (row, d) in rows.iter().zip(4..) {
        assert_eq!(row[2], d.to_string());
        assert_eq!(row[6], d.to_string());
        assert_eq!(row[9], "0");
    }
    assert_eq!(
        out,
        stdout(&run(&[
            "bench",
            "--family",
            "skeleton",
            "--methods",
            "greene",
            "--no-timing"
        ]))
    );
    assert_eq!(run(&["bench", "--family", "torus"]).status.code(), Some(3));
}

#[test]
fn grid_gluing_dimension_is_size_independent() {
    let o = run(&[
        "bench",
        "--family",
        "grid",
        "--sizes",
        "3,4",
        "--methods",
        "gluing",
        "--no-timing",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let ps: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(5).unwrap())
        .collect();
    assert_eq!(ps, ["2244", "2244"]);
}
