use std::path::PathBuf;
use std::process::{Command, Output};

use dicirc_cli::report::{ReportBody, ReportDocument, CSV_HEADER};
use dicirc_cli::{run, run_with_classifier, EXIT_CROSS_CHECK, EXIT_OK, EXIT_USAGE};
use dicirc_core::classifier::{classify, Classification, ClassifierError};
use dicirc_core::{canonicalize, ClassTag, ConnectionSpec};

fn dicirc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicirc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("dicirc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("dicirc-test-{}-{name}", std::process::id()))
}

#[test]
fn check_complete_multipartite_example() {
    let o = dicirc(&["check", "n=2; R=1,3; T=0,1,2,3"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let text = stdout(&o);
    assert!(text.contains("distance-regular: yes"), "{text}");
    assert!(text.contains("{6,1;1,6}"), "{text}");
    assert!(text.contains("CompleteMultipartite(4,2)"), "{text}");
}

#[test]
fn complete_graph_antipodality_is_flagged_as_convention() {
    let (code, out, _) = in_process(&["check", "n=1; R=1; T=0,1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: ReportDocument = serde_json::from_str(&out).unwrap();
    let ReportBody::Check(r) = doc.body else { panic!("not a check report") };
    assert_eq!(r.antipodal, Some(true));
    assert!(r.antipodal_single_fibre);
    let (_, text, _) = in_process(&["check", "n=1; R=1; T=0,1"]);
    assert!(text.contains("diameter-1 convention"));
    let (_, text, _) = in_process(&["check", "n=2; R=1,3; T=0,1,2,3"]);
    assert!(!text.contains("convention"));
}

#[test]
fn check_accepts_spec_flag() {
    let (code, text, _) = in_process(&["check", "--spec", "n=3; R=1,2,3,4,5; T=0,1,2,3,4,5"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("{11;1}") && text.contains("CompleteGraph"), "{text}");
}

#[test]
fn check_rejects_asymmetric_r() {
    let o = dicirc(&["check", "n=2; R=1; T=0,2"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(stderr(&o).contains("RNotSymmetric"), "{}", stderr(&o));
}

#[test]
fn parse_errors_echo_position() {
    let (code, _, err) = in_process(&["check", "n=2; R=1,x; T=0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("byte 9"), "{err}");
    assert!(err.contains("         ^"), "{err}");
}

#[test]
fn disconnected_spec_is_a_usage_error() {
    let (code, _, err) = in_process(&["check", "n=2; R=2; T=0,2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("NotGenerating"), "{err}");
}

#[test]
fn usage_errors_name_the_flag() {
    for (args, flag) in [
        (vec!["survey", "--n", "3", "--workers", "0"], "--workers"),
        (vec!["survey", "--n", "0"], "--n"),
        (vec!["survey", "--n-range", "4..2"], "--n-range"),
        (vec!["survey", "--n", "2", "--tolerance", "-1"], "--tolerance"),
        (vec!["search-ds", "--group", "quat:2"], "--group"),
        (vec!["search-ds", "--group", "cyclic:7", "--k", "3", "--lambda", "2"], "--k/--lambda"),
        (vec!["check", "n=1; R=; T=0,1", "--spec", "n=1; R=; T=0,1"], "--spec"),
        (vec!["survey", "--bogus"], "--bogus"),
    ] {
        let (code, _, err) = in_process(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(err.contains(flag), "{args:?}: {err}");
    }
}

#[test]
fn survey_n3_json_contains_only_theorem_classes() {
    let o = dicirc(&["survey", "--n", "3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let doc: ReportDocument = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.schema_version, 1);
    let ReportBody::Survey(s) = doc.body else { panic!("not a survey") };
    assert_eq!(s.surveys.len(), 1);
    let report = &s.surveys[0];
    assert!(report.cross_check_failures.is_empty());
    assert!(!report.drgs.is_empty());
    for d in &report.drgs {
        assert!(
            matches!(d.class, ClassTag::CompleteGraph | ClassTag::CompleteMultipartite { .. }),
            "{:?}",
            d.class
        );
    }
    let raw: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(raw["schema_version"], 1);
    assert_eq!(raw["command"], "survey");
    assert_eq!(raw["surveys"][0]["drgs"][0]["spec"]["R"], serde_json::json!([]));
}

#[test]
fn json_round_trips_byte_identically() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["survey", "--n-range", "1..4", "--format", "json"],
        vec!["check", "n=4; R=1,7; T=1,5", "--format", "json"],
        vec!["check", "n=2; R=1,3; T=0,1,2,3", "--format", "json"],
        vec!["classify", "n=4; R=1,7; T=1,5", "--format", "json"],
        vec!["fourier", "n=3; R=1,2,4,5; T=0,1,3,4", "--format", "json"],
        vec!["fourier", "n=4; R=1,7; T=1,5", "--format", "json"],
        vec!["search-ds", "--group", "cyclic:7", "--format", "json"],
        vec!["search-ds", "--group", "dic:4", "--k", "6", "--lambda", "2", "--format", "json"],
    ];
    for args in commands {
        let (code, text, err) = in_process(&args);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        let doc: ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_json(), text, "{args:?}");
    }
}

#[test]
fn complex_values_are_pairs() {
    let (_, text, _) = in_process(&["fourier", "n=3; R=1,2,4,5; T=0,1,3,4", "--format", "json"]);
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    let hat = &raw["shells"][1]["r_hat"];
    assert_eq!(hat.as_array().unwrap().len(), 6);
    assert_eq!(hat[0], serde_json::json!([4.0, 0.0]));
    assert_eq!(hat[3], serde_json::json!([0.0, 0.0]));
    assert_eq!(raw["lemma"]["holds"], true);
}

#[test]
fn survey_output_is_deterministic() {
    let a = in_process(&["survey", "--n-range", "2..5", "--format", "json", "--workers", "1"]);
    let b = in_process(&["survey", "--n-range", "2..5", "--format", "json", "--workers", "4"]);
    let c = in_process(&["survey", "--n-range", "2..5", "--format", "json"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
    assert_eq!(a.1, c.1);
}

#[test]
fn csv_summary_has_contract_columns() {
    let (code, text, _) = in_process(&["survey", "--n", "3", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_HEADER);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let (_, json, _) = in_process(&["survey", "--n", "3", "--format", "json"]);
    let doc: ReportDocument = serde_json::from_str(&json).unwrap();
    let ReportBody::Survey(s) = doc.body else { panic!() };
    assert_eq!(rows.len(), s.surveys[0].evaluated_specs);
    let drg_rows = rows.iter().filter(|r| &r[4] == "true").count();
    assert_eq!(drg_rows, s.surveys[0].drgs.len());
    assert!(rows.iter().any(|r| &r[5] == "{11;1}" && &r[6] == "CompleteGraph"));
}

#[test]
fn out_and_summary_files() {
    let json = temp_path("report.json");
    let csv_path = temp_path("summary.csv");
    let (code, text, _) = in_process(&[
        "survey",
        "--n",
        "2",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
        "--summary",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(text.is_empty());
    let written = std::fs::read_to_string(&json).unwrap();
    let doc: ReportDocument = serde_json::from_str(&written).unwrap();
    assert_eq!(doc.to_json(), written);
    let summary = std::fs::read_to_string(&csv_path).unwrap();
    assert!(summary.starts_with("n,R,T,connected,drg,array,class,bipartite,antipodal,primitive,fourier_ok\n"));
    let _ = std::fs::remove_file(json);
    let _ = std::fs::remove_file(csv_path);
}

#[test]
fn no_dedup_agrees_with_canonical_run() {
    let parse = |args: &[&str]| {
        let (code, text, _) = in_process(args);
        assert_eq!(code, EXIT_OK);
        let doc: ReportDocument = serde_json::from_str(&text).unwrap();
        let ReportBody::Survey(mut s) = doc.body else { panic!() };
        s.surveys.remove(0)
    };
    for n in ["3", "4"] {
        let canonical = parse(&["survey", "--n", n, "--format", "json"]);
        let all = parse(&["survey", "--n", n, "--format", "json", "--no-dedup"]);
        assert!(all.cross_check_failures.is_empty());
        assert_eq!(all.evaluated_specs, all.total_specs);
        let reps: std::collections::BTreeSet<ConnectionSpec> =
            canonical.drgs.iter().map(|d| d.spec.to_spec().unwrap()).collect();
        for d in &all.drgs {
            let spec = d.spec.to_spec().unwrap();
            assert!(reps.contains(&canonicalize(&spec)), "{spec}");
        }
        for rec in &all.records {
            let spec = rec.spec.to_spec().unwrap();
            if rec.connected {
                assert_eq!(rec.drg, reps.contains(&canonicalize(&spec)), "{spec}");
            }
        }
    }
}

#[test]
fn faulty_classifier_trips_the_alarm() {
    let faulty = |spec: &ConnectionSpec| -> Result<Classification, ClassifierError> {
        let mut c = classify(spec)?;
        if matches!(c.tag, ClassTag::CompleteMultipartite { t: 2, .. }) {
            c.tag = ClassTag::NotDistanceRegular {
                reason: "injected fault".into(),
            };
        }
        Ok(c)
    };
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_classifier(["dicirc", "survey", "--n", "3"], &faulty, &mut out, &mut err);
    assert_eq!(code, EXIT_CROSS_CHECK);
    assert!(String::from_utf8(out).unwrap().contains("CROSS-CHECK FAILURE"));

    let mut out = Vec::new();
    let code = run_with_classifier(["dicirc", "check", "n=1; R=; T=0,1"], &faulty, &mut out, &mut err);
    assert_eq!(code, EXIT_CROSS_CHECK);

    let mut out = Vec::new();
    let code = run_with_classifier(["dicirc", "survey", "--n", "3"], &classify, &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn classify_prints_evidence() {
    let (code, text, _) = in_process(&["classify", "n=4; R=1,7; T=1,5"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.contains("NotDistanceRegular"), "{text}");
    assert!(text.contains("i = 2"), "{text}");
}

#[test]
fn search_ds_reports_outcomes() {
    let (code, text, _) = in_process(&["search-ds", "--group", "cyclic:7", "--k", "3", "--lambda", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let doc: ReportDocument = serde_json::from_str(&text).unwrap();
    let ReportBody::SearchDs(s) = doc.body else { panic!() };
    assert_eq!(s.runs[0].solutions, vec![vec![0, 1, 3], vec![0, 1, 5]]);
    assert!(s.runs[0].verified);

    let (_, text, _) = in_process(&["search-ds", "--group", "dic:2"]);
    assert!(text.contains("no admissible non-trivial"), "{text}");

    let (_, text, _) = in_process(&["search-ds", "--group", "dic:4", "--k", "6", "--lambda", "2"]);
    assert!(text.contains("n=8"), "{text}");
    assert!(!text.contains("inconsistent"), "{text}");
}

#[test]
fn help_exits_zero() {
    let o = dicirc(&["--help"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert!(stdout(&o).contains("survey"));
}
