use std::path::{Path, PathBuf};
use std::process::Command;
use wildmono::cli::run;

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn file(name: &str) -> String {
    dir().join(name).to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (String, i32) {
    run(args.iter().map(|s| s.to_string()))
}

const BROKEN: &[(&str, &str)] = &[
    ("antisymmetry.json", "sigma-antisymmetry"),
    ("bad_denominator.json", "sigma-denominator"),
    ("branch_edge_nonzero.json", "branch-edge-zero"),
    ("derivation_mismatch.json", "sigma-derivation-mismatch"),
    ("etale_interior.json", "etale-component-is-tail"),
    ("half_edge.json", "half-edge-involution"),
    ("insep_not_integral.json", "insep-tail-integrality"),
    ("insep_tail_small.json", "insep-tail-lower-bound"),
    ("large_sigma.json", "large-sigma-tail-count"),
    ("misplaced_branch.json", "misplaced-branch-point"),
    ("new_insep_alone.json", "no-new-insep-without-new-etale"),
    ("new_tail_small.json", "new-tail-lower-bound"),
    ("primitive_tail_small.json", "primitive-tail-lower-bound"),
    ("tail_same_inertia.json", "tail-adjoins-higher-inertia"),
    ("too_many_etale.json", "etale-tail-count"),
    ("too_many_insep.json", "insep-tail-count"),
    ("unknown_reference.json", "malformed-reference"),
];

#[test]
fn good_graphs_pass() {
    for name in ["pgl3.json", "wild_primitive.json", "wild_new.json", "monotonic_p3.json"] {
        let (out, code) = cli(&["graph", "check", &file(name)]);
        assert_eq!(code, 0, "{name}:\n{out}");
        assert!(out.contains("PASS vanishing-cycles-global"), "{name}");
        assert!(!out.contains("FAIL"), "{name}");
    }
    let (out, _) = cli(&["graph", "check", &file("pgl3.json")]);
    assert!(out.contains("-2 vs -2"));
}

#[test]
fn rising_inertia_is_flagged() {
    let (out, code) = cli(&["graph", "check", &file("rising_inertia.json"), "--alpha", "1"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL primitive-tail-lower-bound"));
    assert!(out.contains("FAIL generalized-vanishing-cycles"));
}

#[test]
fn each_broken_graph_names_its_rule() {
    let mut seen: Vec<String> = std::fs::read_dir(dir().join("broken"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| !n.starts_with("datum"))
        .collect();
    seen.sort();
    let listed: Vec<String> = BROKEN.iter().map(|(n, _)| n.to_string()).collect();
    assert_eq!(seen, listed, "every broken fixture has an expected rule");
    for (name, rule) in BROKEN {
        let (out, code) = cli(&["graph", "check", &file(&format!("broken/{name}"))]);
        assert_eq!(code, 1, "{name}:\n{out}");
        assert!(out.contains(&format!("FAIL {rule} ")), "{name} should fail {rule}:\n{out}");
    }
}

#[test]
fn datum_files() {
    let (out, code) = cli(&["datum", "check", &file("datum_wild.json")]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS genus-consistency"));
    let (out, code) = cli(&["datum", "check", &file("broken/datum_unbalanced.json")]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL local-vanishing-cycles"));
    assert!(out.contains("FAIL genus-consistency"));
}

#[test]
fn ram_golden() {
    let (out, code) = cli(&["ram", "--p", "5", "--n", "2", "--m", "1", "--lower", "1,21"]);
    assert_eq!(code, 0);
    let want = "\
ram --p 5 --m 1 --lower 1,21
  lower jumps: (1,21)
  upper jumps: (1, 5)
  conductor: 5
  different degree: 128
PASS different-two-ways filtration: lower 128, upper 128
PASS jump-round-trip filtration: upper to lower undoes lower to upper
result: 0 failed of 2 checks
";
    assert_eq!(out, want);
}

#[test]
fn other_subcommands() {
    let (out, code) = cli(&["hensel", "--p", "7", "--n", "2", "--smallest-prime-power"]);
    assert_eq!(code, 0);
    assert!(out.contains("smallest prime power: 67"));

    let (out, code) = cli(&["graph", "enumerate", "--p", "5", "--m", "2", "--wild-branch", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("{prim 1/2, new 3/2}") && out.contains("{prim 1}"));

    let (out, code) = cli(&["graph", "enumerate", "--p", "5", "--m", "2", "--wild-branch", "2", "--at-most"]);
    assert_eq!(code, 1);
    assert!(out.contains("4 configurations"));

    let (out, code) = cli(&["graph", "report", &file("pgl3.json"), "--e-abs", "1", "--center-prime-to-p"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: potentially good"));

    let (out, code) = cli(&["analyze-group", "sl2 q=11", "--p", "5"]);
    assert_eq!(code, 0, "{out}");
    let (_, code) = cli(&["appendix-a", "--r", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cli(&["graph", "check", "/nonexistent.json"]).1, 2);
    assert_eq!(cli(&["ram", "--p", "5", "--lower", "3,1"]).1, 2);
    assert_eq!(cli(&["frobnicate"]).1, 2);
}

#[test]
fn json_mirrors_text() {
    let (out, code) = cli(&["--json", "graph", "check", &file("broken/too_many_etale.json")]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exit_code"], 1);
    let rules: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["rule"].as_str().unwrap()).collect();
    assert!(rules.contains(&"etale-tail-count"));
}

#[test]
fn output_is_deterministic() {
    let runs = [
        vec!["graph".to_string(), "check".into(), file("monotonic_p3.json"), "--alpha".into(), "1".into()],
        vec!["--json".into(), "graph".into(), "enumerate".into(), "--p".into(), "7".into(), "--m".into(), "3".into(), "--wild-branch".into(), "0".into(), "--at-most".into()],
        vec!["appendix-a".into(), "--r".into(), "3".into()],
    ];
    for args in runs {
        let a = run(args.clone());
        let b = run(args.clone());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_wildmono");
    let ok = Command::new(bin).args(["graph", "check", &file("pgl3.json")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["graph", "check", &file("broken/half_edge.json")]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).args(["graph", "check"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());
    let a = Command::new(bin).args(["graph", "check", &file("wild_new.json")]).output().unwrap();
    let b = Command::new(bin).args(["graph", "check", &file("wild_new.json")]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn every_rule_id_is_documented() {
    let docs = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/rules.md")).unwrap();
    let mut outputs = Vec::new();
    for entry in std::fs::read_dir(dir()).unwrap().chain(std::fs::read_dir(dir().join("broken")).unwrap()) {
        let path = entry.unwrap().path();
        if path.extension().map_or(true, |e| e != "json") {
            continue;
        }
        let name = path.to_string_lossy().into_owned();
        let cmd = if name.contains("datum") { "datum" } else { "graph" };
        outputs.push(cli(&[cmd, "check", &name, "--alpha", "1"]).0);
        outputs.push(cli(&[cmd, "check", &name]).0);
    }
    outputs.push(cli(&["ram", "--p", "3", "--upper", "1,2"]).0);
    outputs.push(cli(&["hensel", "--p", "13", "--n", "3", "--smallest-prime-power"]).0);
    outputs.push(cli(&["appendix-a", "--r", "2"]).0);
    outputs.push(cli(&["analyze-group", "semidirect 5 4 action=2", "--p", "5", "--quotient"]).0);
    outputs.push(cli(&["sl2-triple", "--q", "11", "--orders", "11,5,6"]).0);
    outputs.push(cli(&["graph", "enumerate", "--p", "7", "--m", "3", "--wild-branch", "0", "--at-most"]).0);
    let mut count = 0;
    for out in outputs {
        for line in out.lines() {
            if let Some(rest) = line.strip_prefix("PASS ").or_else(|| line.strip_prefix("FAIL ")) {
                let rule = rest.split_whitespace().next().unwrap();
                assert!(docs.contains(&format!("`{rule}`")), "rule {rule} is not documented");
                count += 1;
            }
        }
    }
    assert!(count > 50);
}
