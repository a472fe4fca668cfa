use extraspecial::report::VerificationReport;
use extraspecial_cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("extraspecial").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    assert_eq!(run(&["verify", "--help"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["verify", "--p", "4", "--n", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("p must be an odd prime"));
    assert_eq!(run(&["verify", "--p", "3", "--n", "1", "--suite", "prop81"]).0, 2);
    assert_eq!(run(&["verify", "--p", "3", "--n", "3"]).0, 2);
    assert_eq!(run(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(run(&["verify", "--jobs", "0"]).0, 2);
    assert_eq!(run(&["show", "zeta", "--p", "9", "--n", "1", "--i", "1"]).0, 2);
}

#[test]
fn passing_suites_exit_zero() {
    let (code, out, _) = run(&["verify", "--p", "3", "--n", "1", "--suite", "thm52", "--suite", "thm72"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().any(|l| l.starts_with("PASS theorem_5_2")));
    assert!(out.lines().any(|l| l.starts_with("PASS thm_7_2_control")));
    assert!(out.ends_with("9 reports, 0 failed\n"));
}

#[test]
fn a_failed_report_exits_one() {
    let (code, out, _) = run(&["verify", "--p", "3", "--n", "1", "--suite", "lemma71"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL lemma_7_1"));
    assert!(out.contains("difference: "));
}

#[test]
fn json_output_round_trips() {
    let (code, out, _) = run(&["verify", "--p", "3", "--n", "1", "--suite", "symplectic", "--format", "json"]);
    assert_eq!(code, 0);
    let reports: Vec<VerificationReport> = serde_json::from_str(&out).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].theorem_id, "zeta_invariance");
    assert!(reports.iter().all(|r| r.elapsed_ms.is_none()));
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, out);
}

#[test]
fn timing_is_opt_in() {
    let (_, out, _) = run(&["verify", "--p", "3", "--n", "1", "--suite", "prop64", "--format", "json", "--timing"]);
    let reports: Vec<VerificationReport> = serde_json::from_str(&out).unwrap();
    assert!(reports[0].elapsed_ms.is_some());
}

#[test]
fn all_skips_suites_that_need_rank_two() {
    let (code, out, err) = run(&["verify", "--p", "3", "--n", "1", "--jobs", "2"]);
    assert_eq!(code, 1, "only the literal degree check fails");
    assert!(err.contains("skipped prop81"));
    assert!(err.contains("skipped lemma83"));
    assert_eq!(out.lines().filter(|l| l.starts_with("FAIL")).count(), 1);
}

#[test]
fn flags_override_the_config_file() {
    let path = std::env::temp_dir().join(format!("extraspecial-cli-{}.conf", std::process::id()));
    std::fs::write(&path, "# small grid\np = 5\nn = 1\nsuite = thm52\nformat = json\n").unwrap();
    let (code, out, _) = run(&["verify", "--config", path.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("p=5")).count(), 6);
    std::fs::write(&path, "colour = blue\n").unwrap();
    let (code, _, err) = run(&["verify", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 2);
    assert!(err.contains("config line 1"));
}

#[test]
fn base_points_limit_theorem_5_2_instances() {
    let (code, out, _) = run(&["verify", "--p", "5", "--n", "1", "--suite", "thm52", "--base-points", "2"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("2 reports, 0 failed\n"));
}

#[test]
fn show_prints_invariants() {
    assert_eq!(run(&["show", "dickson", "--p", "3", "--m", "1", "--r", "0"]).1, "x0^2\n");
    assert_eq!(run(&["show", "mui", "--p", "3", "--m", "1"]).1, "x1^3 + 2*x0^2*x1\n");
    assert_eq!(run(&["show", "zeta", "--p", "3", "--n", "1", "--i", "1"]).1, "x0*x1^3 + 2*x0^3*x1\n");
    let (code, out, _) = run(&["show", "chi", "--p", "3", "--n", "1", "--r", "0", "--phi", "0,1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("degree 2\n"));
    assert!(out.contains("[[1, 0]]: 2*x0^2"));
    let (code, out, _) = run(&["show", "kappa", "--p", "3", "--n", "1", "--r", "0", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"degree\": 2"));
    assert_eq!(run(&["show", "chi", "--p", "3", "--n", "1", "--r", "0", "--phi", "1"]).0, 2);
}
