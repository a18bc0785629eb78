use std::path::Path;
use std::process::{Command, Output};

fn momst(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momst")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.graph");
    assert_eq!(code(&momst(&[])), 1);
    assert_eq!(code(&momst(&["gen", "--family", "nope", "--n", "8", "--out", &g])), 1);
    assert_eq!(code(&momst(&["gen", "--family", "g1", "--n", "10", "--out", &g])), 1);
    let out = momst(&["gen", "--family", "g2m", "--n", "16", "--k", "20", "--out", &g]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k > u + n + 1"));
    assert_eq!(code(&momst(&["gen", "--family", "g1", "--n", "8", "--front-out", &g, "--out", &g])), 1);
    assert_eq!(
        code(&momst(&["scale", "--algo", "ea", "--strategy", "um", "--family", "g1", "--sizes", "8", "--out", &g])),
        1
    );
    assert_eq!(code(&momst(&["--help"])), 0);
}

#[test]
fn guard_and_instance_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let k9 = path(dir.path(), "k9.graph");
    let out = path(dir.path(), "out.csv");
    assert!(momst(&["gen", "--family", "ceg", "--n", "9", "--seed", "1", "--out", &k9]).status.success());
    let refused = momst(&["pareto", "--graph", &k9, "--method", "exact", "--out", &out]);
    assert_eq!(code(&refused), 2);
    assert!(String::from_utf8_lossy(&refused.stderr).contains("4782969"));
    assert_eq!(code(&momst(&["run", "--algo", "gsemo", "--strategy", "um", "--graph", &k9, "--out", &out])), 2);
    // the weighted-sum method has no guard
    assert!(momst(&["pareto", "--graph", &k9, "--method", "wsum", "--out", &out]).status.success());

    let disconnected = path(dir.path(), "bad.graph");
    std::fs::write(&disconnected, "momst 1\n3 1 1\n0 1 5\n").unwrap();
    assert_eq!(code(&momst(&["run", "--algo", "ea", "--strategy", "um", "--graph", &disconnected, "--out", &out])), 2);
    let missing = path(dir.path(), "missing.graph");
    assert_eq!(code(&momst(&["run", "--algo", "ea", "--strategy", "um", "--graph", &missing, "--out", &out])), 2);
}

#[test]
fn ea_run_reports_successes() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g1.graph");
    let out = path(dir.path(), "runs.csv");
    assert!(momst(&["gen", "--family", "g1", "--n", "16", "--out", &g]).status.success());
    let run =
        momst(&["run", "--algo", "ea", "--strategy", "bm", "--graph", &g, "--reps", "5", "--seed", "2", "--out", &out]);
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "5/5 runs succeeded");
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "seed,graph,algo,n,m,iterations,success,final_w1,final_w2,budget,wall_ms");
    assert_eq!(lines.count(), 5);
}

#[test]
fn gsemo_run_and_pareto_agree_with_generated_front() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g1m.graph");
    let front = path(dir.path(), "front.csv");
    let exact = path(dir.path(), "exact.csv");
    let runs = path(dir.path(), "runs.csv");
    assert!(momst(&["gen", "--family", "g1m", "--n", "8", "--out", &g, "--front-out", &front]).status.success());
    assert!(momst(&["pareto", "--graph", &g, "--method", "exact", "--out", &exact]).status.success());
    let expected = "w1,w2\n13,17\n14,16\n15,15\n";
    assert_eq!(std::fs::read_to_string(&front).unwrap(), expected);
    assert_eq!(std::fs::read_to_string(&exact).unwrap(), expected);
    let run = momst(&[
        "run",
        "--algo",
        "gsemo",
        "--strategy",
        "um",
        "--graph",
        &g,
        "--front",
        &front,
        "--reps",
        "3",
        "--out",
        &runs,
    ]);
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "3/3 runs succeeded");
}

#[test]
fn estimate_and_fit_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let pm = path(dir.path(), "pm.csv");
    let est = momst(&["estimate-pm", "--family", "ceg", "--n", "10", "--instances", "5", "--seed", "1", "--out", &pm]);
    assert!(est.status.success());
    assert!(std::fs::read_to_string(&pm).unwrap().starts_with("rank,p_hat,count\n"));
    let fit = momst(&["fit-beta", "--in", &pm, "--n", "10"]);
    assert!(fit.status.success());
    let text = String::from_utf8_lossy(&fit.stdout).into_owned();
    assert!(text.starts_with("beta=") && text.contains(" r2=") && text.contains(" rmse="), "{text}");
    assert_eq!(code(&momst(&["estimate-pm", "--family", "g1", "--n", "10", "--out", &pm])), 1);
}

#[test]
fn scale_prints_exponent_and_writes_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "scale.csv");
    let runs = path(dir.path(), "runs.csv");
    let res = momst(&[
        "scale",
        "--algo",
        "ea",
        "--strategy",
        "um",
        "--family",
        "g1",
        "--sizes",
        "8,16,24",
        "--reps",
        "10",
        "--seed",
        "4",
        "--out",
        &out,
        "--runs-out",
        &runs,
    ]);
    assert!(res.status.success());
    assert!(String::from_utf8_lossy(&res.stdout).starts_with("alpha="));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 4);
    assert_eq!(std::fs::read_to_string(&runs).unwrap().lines().count(), 31);
}

#[test]
fn reruns_are_byte_identical_apart_from_wall_time() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "g.graph");
    assert!(momst(&["gen", "--family", "g2", "--n", "16", "--out", &g]).status.success());
    let strip = |file: &str| -> Vec<String> {
        std::fs::read_to_string(file).unwrap().lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    let mut outs = Vec::new();
    for round in 0..2 {
        let out = path(dir.path(), &format!("{round}.csv"));
        let run = momst(&[
            "run",
            "--algo",
            "ea",
            "--strategy",
            "mm",
            "--graph",
            &g,
            "--reps",
            "6",
            "--seed",
            "9",
            "--out",
            &out,
        ]);
        assert!(run.status.success());
        outs.push(strip(&out));
    }
    assert_eq!(outs[0], outs[1]);
    for round in 0..2 {
        let out = path(dir.path(), &format!("deg{round}.graph"));
        assert!(momst(&["gen", "--family", "deg", "--n", "40", "--seed", "3", "--out", &out]).status.success());
    }
    assert_eq!(
        std::fs::read(path(dir.path(), "deg0.graph")).unwrap(),
        std::fs::read(path(dir.path(), "deg1.graph")).unwrap()
    );
}
