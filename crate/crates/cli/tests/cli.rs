use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use network::gen;
use network::Network;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn ppn(args: &[&str], stdin: Option<&str>) -> Out {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ppn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn ppn");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            pipe.write_all(s.as_bytes()).unwrap();
        }
    }
    let o = child.wait_with_output().unwrap();
    Out {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read_golden(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn gen_json(args: &[&str]) -> String {
    let mut a = vec!["gen"];
    a.extend_from_slice(args);
    let o = ppn(&a, None);
    assert_eq!(o.code, 0, "{}", o.stderr);
    o.stdout
}

#[test]
fn gen_then_measure_is_the_golden_matrix() {
    let net = gen_json(&["fig1"]);
    assert_eq!(net, read_golden("fig1.json"));
    let o = ppn(&["measure"], Some(&net));
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, read_golden("fig1_measure.txt"));
}

#[test]
fn gen_then_grassmannian_is_the_golden_matrix() {
    let o = ppn(&["grassmannian"], Some(&gen_json(&["g24"])));
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, read_golden("g24_grassmannian.txt"));
}

#[test]
fn faces_output_is_golden() {
    let o = ppn(&["faces", golden("g24.json").to_str().unwrap()], None);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, read_golden("g24_faces.txt"));
    assert_eq!(o.stdout.lines().filter(|l| l.contains(" bounded ")).count(), 1);
}

#[test]
fn generated_networks_round_trip() {
    let cases: Vec<(Vec<&str>, Option<Network>)> = vec![
        (vec!["fig1"], Some(gen::fig1_symbolic())),
        (vec!["fig1", "--x"], Some(gen::fig1())),
        (vec!["g24"], Some(gen::g24())),
        (vec!["chord"], None),
        (vec!["diag", "3"], None),
        (vec!["e-minus", "3", "2"], None),
        (vec!["e-plus", "3", "3"], None),
        (vec!["rho-minus", "2", "2"], None),
        (vec!["rho-plus", "3", "2"], None),
        (vec!["sl3"], None),
        (vec!["hex", "2", "3"], None),
        (vec!["random", "--seed", "4"], None),
    ];
    for (args, lib) in cases {
        let text = gen_json(&args);
        let net = Network::from_json(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(net.to_json(), text, "{args:?}");
        assert_eq!(Network::from_json(&net.to_json()).unwrap(), net);
        if let Some(lib) = lib {
            assert_eq!(net, lib, "{args:?}");
        }
        assert_eq!(ppn(&["validate"], Some(&text)).stdout, "ok\n", "{args:?}");
    }
}

#[test]
fn random_generation_depends_only_on_the_seed() {
    assert_eq!(gen_json(&["random", "--seed", "9"]), gen_json(&["random", "--seed", "9"]));
    assert_ne!(gen_json(&["random", "--seed", "9"]), gen_json(&["random", "--seed", "10"]));
    assert_eq!(gen_json(&["random"]), gen_json(&["random", "--seed", "1"]));
}

#[test]
fn invalid_networks_are_reported() {
    // the white vertex X loses its only incoming edge
    let text = read_golden("fig1.json").replace("\"from\": \"b2\"", "\"from\": \"b1\"");
    let o = ppn(&["validate"], Some(&text));
    assert_eq!(o.code, 1);
    assert!(!o.stdout.is_empty() && o.stdout != "ok\n");
    let o = ppn(&["measure"], Some(&text));
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("invalid network"), "{}", o.stderr);
}

#[test]
fn malformed_input_gives_a_location() {
    let o = ppn(&["measure"], Some("{\n  \"n\": 2,\n  oops\n}"));
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    let o = ppn(&["measure", "/nonexistent/net.json"], None);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("/nonexistent/net.json"));
}

#[test]
fn usage_errors() {
    assert_ne!(ppn(&["frobnicate"], None).code, 0);
    assert_ne!(ppn(&["gen", "diag"], None).code, 0);
    let o = ppn(&["gen", "hex", "1", "3"], None);
    assert_eq!(o.code, 2);
    let o = ppn(&["dual", "--alpha", "(", golden("g24.json").to_str().unwrap()], None);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("bad expression"));
}

#[test]
fn help_lists_every_subcommand() {
    let o = ppn(&["--help"], None);
    for s in [
        "validate",
        "measure",
        "grassmannian",
        "plucker",
        "faces",
        "dual",
        "bracket",
        "verify-psme",
        "verify-mcybe",
        "verify-jacobi",
        "cluster-compat",
        "concat",
        "gen",
    ] {
        assert!(o.stdout.contains(s), "{s}");
    }
}

#[test]
fn verify_psme_with_named_parameters() {
    let o = ppn(&["verify-psme", "--net", "fig1", "--alpha", "a", "--beta", "b"], None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[6], "PASS (6 checks)");
    for l in &lines[..6] {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["check"], "psme");
        assert_eq!(v["status"], true);
        for key in ["instance", "lhs", "rhs"] {
            assert!(v[key].is_string());
        }
    }
}

#[test]
fn verify_psme_output_does_not_depend_on_jobs() {
    let args = ["verify-psme", "--net", "g24", "--random", "3", "--max-internal", "3", "--six-parameter"];
    let one = ppn(&[&args[..], &["--jobs", "1"]].concat(), None);
    assert_eq!(one.code, 0);
    for _ in 0..4 {
        let four = ppn(&[&args[..], &["--jobs", "4"]].concat(), None);
        assert_eq!(one.stdout, four.stdout);
    }
    let checks: Vec<String> = one
        .stdout
        .lines()
        .filter(|l| l.starts_with('{'))
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["check"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted);
    assert!(checks.iter().any(|c| c == "psme-six-parameter"));
}

#[test]
fn verify_psme_on_a_file() {
    let o = ppn(&["verify-psme", "--net", golden("g24.json").to_str().unwrap(), "--alpha", "1/2", "--beta", "-3"], None);
    assert_eq!(o.code, 0);
    assert!(o.stdout.ends_with("PASS (6 checks)\n"));
}

#[test]
fn plucker_relations_pass_on_g24() {
    let o = ppn(&["plucker", golden("g24.json").to_str().unwrap()], None);
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[1].starts_with("x{1,3}\t1"));
    assert!(lines[6].starts_with("PASS"));
}

#[test]
fn dual_edges_cross_bichromatic_edges() {
    let o = ppn(&["dual", "--alpha", "5", "--beta", "2", golden("g24.json").to_str().unwrap()], None);
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 8);
    for l in lines {
        let parts: Vec<&str> = l.split('\t').collect();
        assert!(parts[0].contains(" -> "));
        assert!(["3", "5", "-2"].contains(&parts[1]), "{l}");
    }
}

#[test]
fn entry_brackets_list_every_pair() {
    let o = ppn(&["bracket", "--alpha", "1", "--beta", "0", golden("fig1.json").to_str().unwrap()], None);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().count(), 6);
    assert!(o.stdout.starts_with("{M(b1,b3), M(b1,b4)}\t"));
}

#[test]
fn concat_check_multiplies_matrices() {
    let dir = std::env::temp_dir().join(format!("ppn-concat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    std::fs::write(&a, gen_json(&["e-minus", "2", "2"])).unwrap();
    std::fs::write(&b, gen_json(&["rho-plus", "2", "2"])).unwrap();
    let (sa, sb) = (a.to_str().unwrap(), b.to_str().unwrap());
    let o = ppn(&["concat", sa, sb, "--check"], None);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(o.stdout.ends_with("PASS matrix of the concatenation equals the product\n"));
    let glued = ppn(&["concat", sa, sb], None);
    assert_eq!(glued.code, 0);
    assert_eq!(ppn(&["validate"], Some(&glued.stdout)).stdout, "ok\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn small_verify_runs() {
    let o = ppn(&["verify-mcybe", "--max-k", "2", "--trials", "10"], None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(o.stdout.lines().count(), 11);
    let o = ppn(&["verify-mcybe", "--max-k", "2", "--sample", "3,1"], None);
    assert_eq!(o.code, 0);
    let o = ppn(&["verify-jacobi", "--max-n", "4", "--identities-max-n", "5"], None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.ends_with("PASS (7 checks)\n"), "{}", o.stdout);
    assert_ne!(ppn(&["verify-mcybe", "--sample", "3"], None).code, 0);
}

#[test]
fn cluster_compat_report() {
    let o = ppn(&["cluster-compat", "2", "3"], None);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.starts_with("B~:\n"));
    assert!(o.stdout.contains("factor: alpha - beta\n"));
    assert!(o.stdout.ends_with("PASS k=2 m=3\n"));
    let o = ppn(&["cluster-compat", "2", "2", "--alpha", "2", "--beta", "1/2"], None);
    assert!(o.stdout.contains("factor: 3/2\n"), "{}", o.stdout);
    assert_eq!(o.code, 0);
}
