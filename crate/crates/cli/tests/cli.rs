use std::path::PathBuf;
use std::process::{Command, Output};

use clap::Parser;
use dimgroup_cli::report::{BifurcationReport, Report};
use dimgroup_cli::{config, run, Cli};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimgroup")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dimgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn in_process(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("dimgroup").chain(args.iter().copied())).unwrap();
    let settings = config::resolve(&cli).unwrap();
    run(&cli, &settings).unwrap().report
}

#[test]
fn certify_flagship_sequence() {
    let o = bin(&["certify", "--period", "3+2x"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("classification: AntiFD"));
    assert!(text.contains("tau_0 multipliers: [3, 3, 3"));
}

#[test]
fn certify_pro_fd_exit_code() {
    let o = bin(&["certify", "--period", "6+4x"]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["certify", "--period", "1+x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn initial_hom_rejects_common_factor() {
    let o = bin(&["initial-hom", "--pairs", "4,2;3,2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not coprime"));
}

#[test]
fn initial_hom_verifies() {
    let o = bin(&["initial-hom", "--pairs", "5,2;17,2;257,2", "--stages", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified: yes"));
    let o = bin(&["initial-hom", "--lacunary", "2,3,2", "--stages", "2", "--dim", "1", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dense range: yes"));
}

#[test]
fn tree_dot_export() {
    let o = bin(&["tree", "--weights", "2,3", "--depth", "2", "--export-dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph tree {"));
    assert_eq!(dot.matches("->").count(), 6);
    let o = bin(&["tree", "--weights", "2,4", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["initial-hom", "--pairs", "5,2;17,2", "--stages", "2", "--format", "json"];
    assert_eq!(bin(&args).stdout, bin(&args).stdout);
}

#[test]
fn json_round_trips() {
    for args in [
        vec!["certify", "--period", "4+2x"],
        vec!["traces", "--period", "3+2x", "--element", "2+x", "--stage", "1", "--points", "1/2"],
        vec!["initial-hom", "--pairs", "5,2;17,2", "--stages", "2"],
        vec!["tree", "--weights", "2,3", "--depth", "2"],
        vec!["lab", "critical", "--m", "2"],
        vec!["approx", "--coeffs", "1/2"],
    ] {
        let mut with_json = args.clone();
        with_json.extend(["--format", "json"]);
        let o = bin(&with_json);
        let parsed: Report = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(parsed, in_process(&args), "{args:?}");
    }
    let Report::Certify(r) = in_process(&["certify", "--period", "4+2x"]) else { panic!() };
    assert!(matches!(r.bifurcation, BifurcationReport::ProFd { .. }));
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = scratch("run.toml");
    std::fs::write(&cfg, "format = \"json\"\n[caps]\nstage = 8\n[sequence]\nperiod = [\"3 + 2x\"]\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = bin(&["certify", "--config", c]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_start().starts_with('{'));
    let o = bin(&["certify", "--config", c, "--format", "human"]);
    assert!(stdout(&o).starts_with("sequence:"));

    let bad = scratch("bad.toml");
    std::fs::write(&bad, "colour = \"red\"\n").unwrap();
    assert_eq!(bin(&["certify", "--config", bad.to_str().unwrap()]).status.code(), Some(3));
    std::fs::write(&bad, "[caps]\nstage = 0\n").unwrap();
    assert_eq!(bin(&["certify", "--period", "3+2x", "--config", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn out_flag_writes_file() {
    let out = scratch("tree.dot");
    let o = bin(&["tree", "--weights", "2,3", "--depth", "1", "--export-dot", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().contains("[label=\"3\"]"));
}

#[test]
fn usage_errors() {
    assert_eq!(bin(&["certify"]).status.code(), Some(3));
    assert_eq!(bin(&["certify", "--period", "3+"]).status.code(), Some(3));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn lab_scenarios() {
    let o = bin(&["lab", "power-pairs"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("trace generator: 1/32"));
    assert_eq!(bin(&["lab", "monomials"]).status.code(), Some(0));
    assert_eq!(bin(&["lab", "vectors", "--vec", "1,1/2", "--vec", "0,3"]).status.code(), Some(0));
}
