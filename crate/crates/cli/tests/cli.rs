use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn shi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shi")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = shi(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn coeffs(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect()
}

fn poset_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn roots_listing() {
    let b2 = json(&["roots", "--type", "B2"]);
    assert_eq!(b2["command"], "roots");
    assert_eq!(b2["cartan_type"], "B2");
    let p = &b2["payload"];
    assert_eq!(p["roots"].as_array().unwrap().len(), 4);
    assert_eq!(p["roots"][3]["coords"], serde_json::json!([2, 1]));
    assert_eq!(p["coxeter_number"], 4);
    assert_eq!(p["parking"], 25);
    assert_eq!(p["catalan"], 6);
    let a1 = json(&["roots", "--type", "A1"]);
    assert_eq!(a1["payload"]["roots"].as_array().unwrap().len(), 1);
}

#[test]
fn unsupported_types_are_usage_errors() {
    let out = shi(&["roots", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size bound"));
    assert_eq!(shi(&["roots", "--type", "Q3"]).status.code(), Some(2));
    assert_eq!(shi(&["verify", "--type", "A5"]).status.code(), Some(2));
    assert_eq!(shi(&["cone", "--type", "B2", "--word", "sx"]).status.code(), Some(2));
    assert_eq!(shi(&["roots"]).status.code(), Some(2));
    assert_eq!(shi(&["verify", "--type", "B4", "--m", "2"]).status.code(), Some(2));
}

#[test]
fn cone_records() {
    let st = json(&["cone", "--type", "B2", "--word", "st"]);
    let p = &st["payload"];
    assert_eq!(coeffs(&p["poincare"]), [1, 2]);
    assert_eq!(p["regions"].as_array().unwrap().len(), 3);
    assert_eq!(p["word"], "st");

    let e = json(&["cone", "--type", "B2", "--word", ""]);
    assert_eq!(coeffs(&e["payload"]["poincare"]), [1, 4, 1]);
    assert_eq!(e["payload"]["flats"].as_array().unwrap().len(), 6);

    let a3 = json(&["cone", "--type", "A3", "--word", "121"]);
    let p = &a3["payload"];
    assert_eq!(p["regions"].as_array().unwrap().len(), p["flats"].as_array().unwrap().len());
    for r in p["regions"].as_array().unwrap() {
        assert_eq!(r["witness"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn explicit_root_subsets() {
    // E = {alpha, 2alpha+beta} in B2: three regions, as for the cone st.
    let sub = json(&["cone", "--type", "B2", "--e", "0,3"]);
    let p = &sub["payload"];
    assert_eq!(p["e"], serde_json::json!([0, 3]));
    assert_eq!(p["regions"].as_array().unwrap().len(), 3);
    assert_eq!(coeffs(&p["poincare"]), [1, 2]);
    let out = shi(&["cone", "--type", "B2", "--e", "0,9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verification_reports() {
    let b2 = json(&["verify", "--type", "B2", "--theorem", "all"]);
    let p = &b2["payload"];
    assert_eq!(p["passed"], true);
    assert_eq!(coeffs(&p["total_poincare"]), [8, 16, 1]);
    assert_eq!(p["cones"].as_array().unwrap().len(), 8);

    let out = shi(&["verify", "--type", "B2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8 + 16t + t^2"));
    assert!(text.contains(" ms)"));

    for theorem in ["1", "2", "3"] {
        let r = json(&["verify", "--type", "G2", "--theorem", theorem]);
        assert_eq!(r["payload"]["passed"], true, "{theorem}");
    }
    assert_eq!(json(&["verify", "--type", "A1"])["payload"]["passed"], true);

    let fuss = json(&["verify", "--type", "A2", "--m", "2"]);
    let f = &fuss["payload"]["fuss"];
    assert_eq!((f["flats"].as_u64(), f["regions"].as_u64()), (Some(11), Some(12)));
    assert_eq!(f["max_abs_mobius"], 2);
}

#[test]
fn order_ring_outputs() {
    let example = poset_file(r#"{"elements": [1, 2, 3, 4, 5], "covers": [[0, 2], [1, 2], [2, 3], [2, 4]]}"#);
    let r = json(&["orderring", example.path().to_str().unwrap()]);
    let p = &r["payload"];
    assert_eq!(coeffs(&p["hilbert"]), [1, 5, 2]);
    assert_eq!(p["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(p["generators"][0], "z_1*(1-z_1)");
    assert!(p["generators"].as_array().unwrap().contains(&Value::from("z_1*(1-z_3)")));
    assert_eq!(p["standard_monomials"][2], serde_json::json!(["z_1*z_2", "z_4*z_5"]));

    let b2 = json(&["orderring", "--type", "B2"]);
    assert_eq!(coeffs(&b2["payload"]["hilbert"]), [1, 4, 1]);

    let empty = poset_file(r#"{"elements": [], "covers": []}"#);
    let r = json(&["orderring", empty.path().to_str().unwrap()]);
    assert_eq!(coeffs(&r["payload"]["hilbert"]), [1]);

    for bad in [r#"{"elements": [1, 2]"#, r#"{"elements": [1, 2], "covers": [[0, 1], [1, 0]]}"#] {
        let f = poset_file(bad);
        assert_eq!(shi(&["orderring", f.path().to_str().unwrap()]).status.code(), Some(2));
    }
}

#[test]
fn json_is_deterministic_and_written_to_files() {
    let args = ["cone", "--type", "A3", "--word", "12", "--format", "json"];
    assert_eq!(shi(&args).stdout, shi(&args).stdout);
    let verify = ["verify", "--type", "A2", "--format", "json"];
    assert_eq!(shi(&verify).stdout, shi(&verify).stdout);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let out = shi(&with_out);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), shi(&args).stdout);
}

#[test]
fn csv_flattens_polynomials() {
    let out = shi(&["cone", "--type", "B2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let records: Vec<(String, String)> = rows
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].to_string(), r[1].to_string())
        })
        .collect();
    assert!(records.contains(&("payload.poincare".into(), "1;4;1".into())));
    assert!(records.contains(&("format".into(), "csv".into())));
    assert!(records.iter().any(|(k, _)| k == "payload.regions.5.witness"));
}
