//! End-to-end tests running the compiled binary against the bundled
//! gallery files. JSON envelopes are compared after zeroing `timing_ms`
//! and replacing the absolute fixture path; float columns from the probe
//! are dropped before comparing.

use std::path::Path;
use std::process::Command;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/corpus")
        .join(name)
        .display()
        .to_string()
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn segre(args: &[&str]) -> Run {
    segre_with_env(args, &[])
}

fn segre_with_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_segre"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf8 stderr"),
        code: out.status.code().expect("exit code"),
    }
}

/// Zero out the elapsed-time count so envelopes compare stably.
fn normalize_json(s: &str, input_path: &str) -> String {
    let mut out = String::new();
    for line in s.lines() {
        let line = line.replace(input_path, "<input>");
        match line.find("\"timing_ms\": ") {
            Some(idx) => {
                out.push_str(&line[..idx + "\"timing_ms\": ".len()]);
                out.push('0');
                if line.trim_end().ends_with(',') {
                    out.push(',');
                }
            }
            None => out.push_str(&line),
        }
        out.push('\n');
    }
    out
}

/// Keep only the leading `fields` comma-separated columns of each line.
fn csv_prefix(s: &str, fields: usize) -> String {
    s.lines()
        .map(|line| line.split(',').take(fields).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[test]
fn parse_prints_canonical_form_and_generators() {
    let input = fixture("sphere-cone.var");
    let run = segre(&["parse", "--input", &input]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        run.stdout,
        "vars z w xi\n\
         name sphere-cone\n\
         eq z*conj(z) + w*conj(w) - xi*conj(xi)\n\
         generators: 1\n  \
         1: z*conj(z) + w*conj(w) - xi*conj(xi)  (unit 1)\n"
    );
}

#[test]
fn parse_json_envelope_is_stable() {
    let input = fixture("sphere-cone.var");
    let run = segre(&["--json", "parse", "--input", &input]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let expected = r#"{
  "command": "parse",
  "input": {
    "input": "<input>"
  },
  "result": {
    "canonical": "vars z w xi\nname sphere-cone\neq z*conj(z) + w*conj(w) - xi*conj(xi)\n",
    "generators": [
      {
        "poly": "z*conj(z) + w*conj(w) - xi*conj(xi)",
        "unit": "1"
      }
    ],
    "name": "sphere-cone",
    "vars": [
      "z",
      "w",
      "xi"
    ]
  },
  "timing_ms": 0
}
"#;
    assert_eq!(normalize_json(&run.stdout, &input), expected);
}

#[test]
fn complexify_introduces_zeta_variables() {
    let input = fixture("paraboloid.var");
    let run = segre(&["complexify", "--input", &input]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        run.stdout,
        "variables: z w zeta_z zeta_w\n\
         generators:\n  \
         z*zeta_z - 1/2*w - 1/2*zeta_w\n  \
         w - zeta_w\n"
    );
}

#[test]
fn locus_lists_the_cone_vertex_ideal() {
    let input = fixture("sphere-cone.var");
    let run = segre(&["locus", "--input", &input]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "basis (grevlex):\n  z\n  w\n  xi\ndim: 0\n");
}

#[test]
fn classify_reports_full_degeneracy_at_the_vertex() {
    let input = fixture("sphere-cone.var");
    let run = segre(&["--json", "classify", "--input", &input, "--point", "0,0,0"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let expected = r#"{
  "command": "classify",
  "input": {
    "input": "<input>",
    "point": "0,0,0"
  },
  "result": {
    "basis": [],
    "fully_degenerate": true,
    "k_membership": [
      true,
      true,
      true,
      true
    ],
    "locus_agrees": true,
    "on_variety": true,
    "point": "0,0,0",
    "segre_dim": 3
  },
  "timing_ms": 0
}
"#;
    assert_eq!(normalize_json(&run.stdout, &input), expected);
}

#[test]
fn dim_at_prints_a_bare_integer() {
    let input = fixture("paraboloid.var");
    let run = segre(&["dim-at", "--input", &input, "--point", "1,1"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "0\n");

    let off = segre(&["dim-at", "--input", &input, "--point", "1,2"]);
    assert_eq!(off.code, 0);
    assert_eq!(off.stdout, "-1\n");
}

#[test]
fn segre_slice_at_the_graph_origin() {
    let input = fixture("paraboloid.var");
    let run = segre(&["segre-at", "--input", &input, "--point", "0,0"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "point: 0,0\nbasis (grevlex):\n  w\ndim: 1\n");
}

#[test]
fn segre_at_supports_lex_order() {
    let input = fixture("sphere-cone.var");
    let run = segre(&[
        "segre-at", "--input", &input, "--point", "1,0,1", "--order", "lex",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert!(run.stdout.contains("basis (lex):"), "got: {}", run.stdout);
    assert!(run.stdout.ends_with("dim: 2\n"), "got: {}", run.stdout);
}

#[test]
fn scan_splits_the_axis_into_two_regimes() {
    let input = fixture("half-line-locus.var");
    let run = segre(&[
        "scan",
        "--input",
        &input,
        "--curve",
        "0, 0, t",
        "--t-grid",
        "-2,-1,-1/2,1/2,1,2",
        "--k",
        "3",
        "--candidate",
        "z",
        "--candidate",
        "w",
        "--samples",
        "8",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        csv_prefix(&run.stdout, 3),
        "t,member,verdict\n\
         -2,true,consistent\n\
         -1,true,consistent\n\
         -1/2,true,consistent\n\
         1/2,true,refuted\n\
         1,true,refuted\n\
         2,true,refuted\n"
    );
}

#[test]
fn probe_json_reports_seeded_verdicts() {
    let input = fixture("half-line-locus.var");
    let consistent = segre(&[
        "--json",
        "probe",
        "--input",
        &input,
        "--point",
        "0,0,-1",
        "--candidate",
        "z",
        "--candidate",
        "w",
        "--samples",
        "8",
    ]);
    assert_eq!(consistent.code, 0, "stderr: {}", consistent.stderr);
    let v: serde_json::Value = serde_json::from_str(&consistent.stdout).expect("valid json");
    assert_eq!(v["result"]["verdict"], "consistent");
    assert_eq!(v["result"]["witness"], serde_json::Value::Null);
    assert_eq!(
        v["seed"],
        serde_json::json!(segre_core::probe::ProbeConfig::default().seed)
    );

    let refuted = segre(&[
        "--json",
        "probe",
        "--input",
        &input,
        "--point",
        "0,0,1",
        "--candidate",
        "z",
        "--candidate",
        "w",
        "--samples",
        "8",
    ]);
    assert_eq!(refuted.code, 0);
    let v: serde_json::Value = serde_json::from_str(&refuted.stdout).expect("valid json");
    assert_eq!(v["result"]["verdict"], "refuted");
    assert!(v["result"]["witness"].is_array());
}

#[test]
fn certify_reports_real_factors() {
    let run = segre(&["certify", "--poly", "x^2 - y^2", "--vars", "x,y"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        run.stdout,
        "verdict: reducible-with-witness\nfactors:\n  x + y\n  x - y\n"
    );
}

#[test]
fn certify_reports_its_degree_cap() {
    let run = segre(&[
        "certify",
        "--poly",
        "(x^2 + y^2)^6 - s^8*x^3*(s - x)",
        "--vars",
        "x,y,s",
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        run.stdout,
        "verdict: indeterminate\nreason: degree 12 exceeds the certificate cap 6\n"
    );
}

#[test]
fn certify_rank_two_quadric_is_irreducible() {
    let run = segre(&["certify", "--poly", "x^2 + y^2 - s^2", "--vars", "x,y,s"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "verdict: certified-irreducible\n");
}

#[test]
fn corpus_filter_runs_matching_entries() {
    let run = segre(&["corpus", "--filter", "whitney"]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(
        run.stdout,
        "PASS whitney-umbrella: polynomial is not homogeneous\n\
         PASS whitney-umbrella: certificate requires homogeneity\n\
         2 checks, 2 passed, 0 failed\n"
    );
}

#[test]
fn corpus_unknown_filter_is_a_usage_error() {
    let run = segre(&["corpus", "--filter", "no-such-entry"]);
    assert_eq!(run.code, 2);
    assert!(
        run.stderr.contains("no gallery entry"),
        "got: {}",
        run.stderr
    );
}

#[test]
fn exhausted_budget_exits_three() {
    let input = fixture("quintic-cone.var");
    let run = segre(&["locus", "--input", &input, "--budget", "3"]);
    assert_eq!(run.code, 3, "stdout: {}", run.stdout);
    assert!(run.stderr.contains("budget"), "got: {}", run.stderr);
}

#[test]
fn budget_env_var_is_honored_and_flag_wins() {
    let input = fixture("quintic-cone.var");
    let env_only = segre_with_env(&["locus", "--input", &input], &[("SEGRE_BUDGET", "3")]);
    assert_eq!(env_only.code, 3, "stdout: {}", env_only.stdout);

    let flag_wins = segre_with_env(
        &[
            "dim-at", "--input", &input, "--point", "0,0,5", "--budget", "200000",
        ],
        &[("SEGRE_BUDGET", "3")],
    );
    assert_eq!(flag_wins.code, 0, "stderr: {}", flag_wins.stderr);
    assert_eq!(flag_wins.stdout, "3\n");
}

#[test]
fn usage_errors_exit_two() {
    let input = fixture("paraboloid.var");

    let arity = segre(&["dim-at", "--input", &input, "--point", "1"]);
    assert_eq!(arity.code, 2);
    assert!(arity.stderr.contains("expected 2 coordinates"));

    let missing = segre(&["parse", "--input", "/no/such/file.var"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("cannot read"));

    let unknown = segre(&["frobnicate"]);
    assert_eq!(unknown.code, 2);

    let bad_candidate = segre(&[
        "probe",
        "--input",
        &input,
        "--point",
        "0,0",
        "--candidate",
        "conj(z)",
    ]);
    assert_eq!(bad_candidate.code, 2);
    assert!(
        bad_candidate.stderr.contains("candidate"),
        "got: {}",
        bad_candidate.stderr
    );
}
