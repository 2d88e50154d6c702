use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn k2local(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k2local")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against tests/golden/<name>; UPDATE_GOLDEN=1 rewrites it.
fn golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}; run with UPDATE_GOLDEN=1", path.display()));
    assert!(expected == actual, "{name} differs from its golden file");
}

#[test]
fn picard_solve_prints_the_word_and_congruence() {
    let o = k2local(&["picard", "solve"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("I_2 = S^2 ^ S<det> ^ P\n48·1+74 ≡ -22 (mod 144)\n"));
    golden("picard_solve.txt", &out);
}

#[test]
fn picard_solve_json() {
    let o = k2local(&["picard", "solve", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rendered"], "I_2 = S^2 ^ S<det> ^ P");
    assert_eq!(v["solution"]["word"]["exotic"]["a"], 1);
    assert_eq!(v["solution"]["candidates"].as_array().unwrap().len(), 9);
}

#[test]
fn picard_smash_and_q_error() {
    let o = k2local(&["picard", "smash", "P", "P"]);
    assert!(stdout(&o).contains("= S^0 ^ P^2"));
    let o = k2local(&["picard", "smash", "Q", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("not a suspension"));
    let o = k2local(&["picard", "smash", "1,2", "P"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_det_passes() {
    let o = k2local(&["picard", "check-det", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exponents"].as_array().unwrap().len(), 10);
    assert_eq!(v["units"], 8);
}

#[test]
fn chart_text_golden() {
    let o = k2local(&["chart", "g24-v1"]);
    assert!(o.status.success());
    golden("g24-v1.txt", &stdout(&o));
}

#[test]
fn chart_svg_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.svg");
    let o = k2local(&["chart", "g24-v1", "--format", "svg", "-o", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<circle").count(), 54);
    assert!(svg.contains("viewBox"));
    golden("fig1.svg", &svg);
}

#[test]
fn chart_output_dir_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k2.toml");
    std::fs::write(&cfg, format!("output_dir = {:?}\nstem_max = 71\n", dir.path().join("charts"))).unwrap();
    let o = k2local(&["--config", cfg.to_str().unwrap(), "chart", "g24-v1", "--format", "svg", "-o", "a.svg"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(dir.path().join("charts/a.svg")).unwrap();
    assert_eq!(svg.matches("<circle").count(), 27);
    // the flag wins over the file
    let o = k2local(&["--config", cfg.to_str().unwrap(), "--stem-max", "20", "chart", "g24-v1"]);
    assert!(stdout(&o).contains("stems 0..20"));
}

#[test]
fn figure2_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.svg");
    let o = k2local(&["chart", "g21-v1", "--format", "svg", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    for label in [">1<", ">wα<", ">a35wβ<", ">a35α<"] {
        assert!(svg.contains(label), "missing {label}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(k2local(&["nonsense"]).status.code(), Some(2));
    assert_eq!(k2local(&["cohomology", "G7"]).status.code(), Some(2));
    assert_eq!(k2local(&["resolution", "algebraic-G3"]).status.code(), Some(2));
    assert_eq!(k2local(&["chart", "g24-v1", "--stem-max", "500"]).status.code(), Some(2));
    assert_eq!(k2local(&["specseq", "run", "/no/such/file", "G24"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(k2local(&["--config", cfg.to_str().unwrap(), "picard", "solve"]).status.code(), Some(2));
}

#[test]
fn failing_rules_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let rules = dir.path().join("bad.rules");
    // a35 is not in the G24 E2 term
    std::fs::write(&rules, "d5 w^(i+3) -> alpha*beta^2*w^i*a35  where i mod 9 in {0}  linear alpha,beta,w^9\n").unwrap();
    let o = k2local(&["specseq", "run", rules.to_str().unwrap(), "G24", "--stem-max", "60"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn specseq_run_g24() {
    let o = k2local(&["specseq", "run", "g24", "G24", "--stem-max", "71", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims = v["dims"].as_object().unwrap();
    assert_eq!(dims.values().filter(|d| d.as_u64() == Some(1)).count(), 27);
    assert!(v["run"]["issues"].as_array().unwrap().is_empty());
}

#[test]
fn specseq_sign_convention() {
    let args = ["specseq", "run", "g24", "G24", "--stem-min", "-10", "--stem-max", "0", "--differentials"];
    let sym = stdout(&k2local(&args));
    assert!(sym.contains("d5(w*v2^-1) = -1 alpha*beta^2*v2^-2"));
    let mut res = args.to_vec();
    res.extend(["--sign", "residue"]);
    assert!(stdout(&k2local(&res)).contains("d5(w*v2^-1) = 2 alpha*beta^2*v2^-2"));
}

#[test]
fn cohomology_json_module() {
    let o = k2local(&["cohomology", "SD16", "--stem-min", "-32", "--stem-max", "32", "--s-max", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identified"], true);
    assert_eq!(v["report"]["total_dim_f3"], 5);
}

#[test]
fn resolution_towers() {
    for tower in ["algebraic-G2^1", "algebraic-G2", "topological-sphere", "topological-N"] {
        let o = k2local(&["resolution", tower, "--stem-min", "-10", "--stem-max", "80", "--json"]);
        assert!(o.status.success(), "{tower}: {}", String::from_utf8_lossy(&o.stderr));
        let _: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    }
}

#[test]
fn verify_all_passes() {
    let o = k2local(&["verify", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("11/11 passed"));
    assert_eq!(out.lines().filter(|l| l.contains("  pass  ")).count(), 11);
    let o = k2local(&["verify", "all", "--only", "12"]);
    assert_eq!(o.status.code(), Some(2));
}
