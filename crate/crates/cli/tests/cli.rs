use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

const K3: &str = "0 1\n1 2\n2 0\n";
const OCTAHEDRON: &str = "0 1\n0 2\n0 3\n0 4\n1 2\n2 3\n3 4\n4 1\n5 1\n5 2\n5 3\n5 4\n";

fn intrep(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_intrep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn intrep");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// A scratch file unique to this test process.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("intrep-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn represent_prints_json_and_status() {
    let o = intrep(&["represent", "-"], Some(K3));
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["vertices"].as_object().unwrap().len(), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("OK depth="));
}

#[test]
fn represented_output_verifies() {
    let g = scratch("oct.txt", OCTAHEDRON);
    let rep = intrep(&["represent", g.to_str().unwrap()], None);
    assert!(rep.status.success());
    let r = scratch("oct.json", &stdout(&rep));
    let o = intrep(&["verify", g.to_str().unwrap(), r.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.is_object());
}

#[test]
fn parse_error_exits_3() {
    let o = intrep(&["represent", "-", "--format", "edges"], Some("0 x\n"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn nonplanar_exits_4() {
    let mut k5 = String::new();
    for a in 0..5 {
        for b in a + 1..5 {
            k5.push_str(&format!("{a} {b}\n"));
        }
    }
    let o = intrep(&["represent", "-"], Some(&k5));
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_failure_exits_5() {
    let g = scratch("k3.txt", K3);
    // 0 and 2 do not touch, so edge 0-2 is missing
    let r = scratch("bad.json", r#"{"vertices":{"0":[["0","1"]],"1":[["1","2"]],"2":[["2","3"]]}}"#);
    let o = intrep(&["verify", g.to_str().unwrap(), r.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn validation_exits_7() {
    // not a 4-connected triangulation
    let o = intrep(&["represent", "-", "--depth2"], Some(K3));
    assert_eq!(o.status.code(), Some(7));
    let o = intrep(&["decompose", "-", "--outer", "0,1"], Some(OCTAHEDRON));
    assert_eq!(o.status.code(), Some(7));
}

#[test]
fn missing_file_exits_1() {
    let o = intrep(&["represent", "/nonexistent/graph.txt"], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn generated_graphs_feed_represent() {
    let gen = intrep(&["gen", "--seed", "3", "--n", "40", "--flips", "60", "--format", "g6"], None);
    assert!(gen.status.success());
    let o = intrep(&["represent", "-"], Some(&stdout(&gen)));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn decompose_emits_three_parts() {
    let o = intrep(&["decompose", "-"], Some(OCTAHEDRON));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let d: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let obj = d.as_object().unwrap();
    assert!(obj.len() >= 3, "{d}");
    let sched = intrep(&["decompose", "-", "--schedule"], Some(K3));
    assert!(sched.status.success());
    serde_json::from_str::<serde_json::Value>(&stdout(&sched)).unwrap();
}

#[test]
fn depth2_on_octahedron() {
    let o = intrep(&["represent", "-", "--depth2"], Some(OCTAHEDRON));
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("depth=2"));
}

#[test]
fn render_formats() {
    let rep = intrep(&["represent", "-"], Some(K3));
    let r = scratch("k3.json", &stdout(&rep));
    let ascii = intrep(&["render", r.to_str().unwrap()], None);
    assert!(ascii.status.success());
    assert!(stdout(&ascii).contains("[0"));
    let svg = intrep(&["render", r.to_str().unwrap(), "--render", "svg", "--highlight"], None);
    assert!(stdout(&svg).contains("<svg"));
}

#[test]
fn output_is_deterministic() {
    let gen = stdout(&intrep(&["gen", "--seed", "9", "--n", "30", "--flips", "30"], None));
    assert_eq!(gen, stdout(&intrep(&["gen", "--seed", "9", "--n", "30", "--flips", "30"], None)));
    let a = intrep(&["represent", "-"], Some(&gen));
    let b = intrep(&["represent", "-"], Some(&gen));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
