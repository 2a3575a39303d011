use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvachay")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn curvature_of_three_involutions() {
    let o = run(&["curvature", "--raach", "a:2,b:2,c:2", "--laplacian", "norm"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("# curvachay curvature seed=0"));
    assert!(s.contains("-2/3 (-0.666666666667)"));
}

#[test]
fn curvature_of_cyclic_group_of_order_four() {
    let o = run(&["curvature", "--group", "<a,b | a^4, b^-1 a^2>", "--laplacian", "nonnorm", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 0);
    for row in v["rows"].as_array().unwrap() {
        let want = if row["quantity"] == "K" { "3" } else { "4" };
        assert_eq!(row["brute_force"]["value_rational"], want, "{row}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["verify", "properties", "--max-gens", "2", "--seed", "7", "--edges", "10"]));
    let b = stdout(&run(&["verify", "properties", "--max-gens", "2", "--seed", "7", "--edges", "10"]));
    assert_eq!(a, b);
    assert!(a.lines().next().unwrap().contains("\"seed\":7"));
}

#[test]
fn verify_suites_pass() {
    for suite in ["or", "be", "cycles"] {
        let o = run(&["verify", suite, "--max-gens", "2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
        assert!(stdout(&o).contains("\"violated\":0"));
    }
}

#[test]
fn monotonicity_flags_the_unweighted_quotient() {
    let o = run(&["verify", "monotonicity", "--pairs", "builtin"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.contains("monotonicity.unweighted.decrease") && l.contains("z4-to-z2") && l.contains("\"decreases\"")));
}

#[test]
fn pair_without_relator_inclusion_is_rejected() {
    let dir = std::env::temp_dir().join(format!("curvachay-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("pairs.txt");
    // the relator of the target is missing from the source
    std::fs::write(&file, "bad: <a | a^4> -> <a | a^3>\n").unwrap();
    let o = run(&["verify", "monotonicity", "--pairs", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ball_of_a_triangle() {
    let o = run(&["ball", "--raach", "a:3", "--radius", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("// curvachay ball seed=0"));
    assert_eq!(s.matches(" -- ").count(), 3);
}

#[test]
fn eliminate_sample_words() {
    let s = stdout(&run(&["eliminate", "--r4", "s0"]));
    assert!(s.contains("s0^-1 s1 s0^2 s2^-1 s0  ->  s0' s0'' s0' s1 s0'' s0' s2^-1 s0''"));
    let s = stdout(&run(&["eliminate", "--rinf", "s0"]));
    assert!(s.contains("s0^-2 s1 s0^2 s2 s0  ->  s0'' s0' s1 s0' s0'' s2 s0'"));
}

#[test]
fn spectrum_of_a_square() {
    let s = stdout(&run(&["spectrum", "--raach", "a:2,b:2; commute (a,b)"]));
    assert!(s.contains("lambda2 = 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["curvature", "--raach", "a:5"]).status.code(), Some(2));
    assert_eq!(run(&["curvature", "--raach", "a:2", "--radius", "2"]).status.code(), Some(2));
    assert_eq!(run(&["curvature", "--group", "<a | a^1000>", "--max-cosets", "50"]).status.code(), Some(3));
    assert_eq!(run(&["curvature"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("curvachay-out-{}.csv", std::process::id()));
    let o = run(&["curvature", "--raach", "a:inf", "--format", "csv", "--seed", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# seed=3\nquantity,"));
    let _ = std::fs::remove_file(path);
}
