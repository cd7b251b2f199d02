use serde_json::Value;
use std::process::{Command, Output};

fn circle_hall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circle-hall"))
        .args(args)
        .env_remove("CIRCLE_HALL_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = circle_hall(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn stdout(args: &[&str]) -> String {
    let out = circle_hall(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    circle_hall(args).status.code().expect("exit code")
}

#[test]
fn verify_join_example() {
    let v = json(&["verify", "--family", "join", "--j1", "0,1/3", "--j2", "1/3,2/3", "--n", "3", "--q", "2"]);
    assert_eq!(v["holds"], Value::Bool(true));
    assert_eq!(v["certificates"].as_array().unwrap().len(), 2);
}

#[test]
fn invariants_identity_case() {
    let v = json(&["invariants", "--n", "2", "--g", "0", "--class", "rank=1,dim=0"]);
    assert_eq!(v["deg_n"], "0");
    assert_eq!(v["slope"], "0");
    // chi(O) at level 2 and genus 0 is (4 + 2) / 2.
    assert_eq!(v["chi_n"], "3");
    assert_eq!(v["virtual_genus"], "-1/2");
    let torsion = json(&["invariants", "--n", "2", "--class", "rank=0,dim=1:0"]);
    assert_eq!(torsion["deg_n"], "1/2");
    assert_eq!(torsion["slope"], Value::Null);
}

#[test]
fn mirror_commands() {
    let cmp = json(&["mirror-compare", "--n", "3", "--q", "2"]);
    assert_eq!(cmp["passed"], Value::Bool(true));
    assert_eq!(cmp["generator_pairs"], 36);
    let dims = json(&["mirror-homext", "--a", "0,1/2", "--b", "1/2,1"]);
    assert_eq!((dims["hom"].as_u64(), dims["ext1"].as_u64()), (Some(0), Some(1)));
    let table = json(&["dtype", "--case", "Y", "--a", "2/3", "--b", "1/3"]);
    assert_eq!(table["homs"][0]["dims"]["0"], 1);
}

#[test]
fn zeta_and_shuffle() {
    let xi = json(&["zeta", "--g", "1", "--numerator", "1,-1,2", "--series", "xi", "--order", "5"]);
    assert_eq!(xi["coefficients"].as_array().unwrap().len(), 6);
    let line = json(&["zeta", "--q", "3", "--series", "xi", "--order", "1"]);
    // xi_1 = q - 1/q.
    assert_eq!(line["coefficients"][1]["c"][0], "8/3");
    let product = stdout(&["shuffle", "--g", "0", "--q", "2", "--order", "3", "--left", "x^0 v:1/2", "--right", "x^1 v:0"]);
    let v: Value = serde_json::from_str(&product).unwrap();
    assert_eq!(v["rank"], 2);
    let elliptic = json(&["shuffle", "--g", "1", "--trace", "1", "--n", "2", "--left", "x^0 v:1", "--right", "x^0 v:0"]);
    assert_eq!(elliptic["mode"]["kind"], "cyclic");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["verify", "--family", "bogus", "--n", "2"]), 1);
    assert_eq!(code(&["hall-product", "--n", "2", "--left", "0,1/2", "--right", "{not json"]), 1);
    assert_eq!(code(&["no-such-command"]), 1);
    assert_eq!(code(&["hall-product", "--q", "6", "--n", "2", "--left", "1", "--right", "1"]), 2);
    assert_eq!(code(&["hubery", "--r", "0", "--n", "2"]), 2);
    assert_eq!(code(&["mirror-compare", "--n", "9"]), 3);
    let out = circle_hall(&["hall-product", "--n", "2", "--bound", "2", "--left", "0,1", "--right", "0,1/2"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn emitted_elements_are_accepted_back() {
    let product = stdout(&["hall-product", "--n", "2", "--left", "0,1/2", "--right", "1/2,1"]);
    let again = stdout(&["hall-product", "--n", "2", "--left", product.trim(), "--right", "1"]);
    assert_eq!(product, again);

    let coproduct = stdout(&["coproduct", "--n", "2", "--element", product.trim()]);
    let tensor_pairing = json(&["pairing", "--left", coproduct.trim(), "--right", coproduct.trim()]);
    assert!(tensor_pairing["pairing"].is_object());
    let pairing = json(&["pairing", "--left", product.trim(), "--right", product.trim()]);
    assert!(pairing["pairing"].is_object());

    let normal = stdout(&["straighten", "--n", "2", "--word", "F[0,1/2) E[0,1/2)"]);
    assert_eq!(stdout(&["straighten", "--n", "2", "--word", normal.trim()]), normal);

    let shuffle = stdout(&["shuffle", "--left", "x^0 v:1/2", "--right", "x^1 v:0"]);
    let chained = json(&["shuffle", "--left", shuffle.trim(), "--right", "x^0 v:0"]);
    assert_eq!(chained["rank"], 3);

    let vector = stdout(&["fundrep", "--word", "E[0,1/2)", "--y", "1/2"]);
    let back = stdout(&["fundrep", "--word", "K[0,1/2)", "--vector", vector.trim()]);
    assert!(serde_json::from_str::<Value>(&back).unwrap().is_array());

    let z = stdout(&["hubery", "--kind", "z", "--r", "1", "--n", "2"]);
    let central = json(&["central", "--element", z.trim(), "--dims", "1,1"]);
    assert_eq!(central["central"], Value::Bool(true));
}

#[test]
fn output_is_identical_across_thread_counts() {
    let args = ["verify", "--family", "serre", "--n", "3", "--q", "3"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_circle-hall"))
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("CIRCLE_HALL_CACHE_DIR")
            .output()
            .unwrap()
            .stdout
    };
    let single = run("1");
    assert_eq!(single, run("4"));
    assert_eq!(single, run("1"));
}

#[test]
fn seeded_samples_are_reproducible() {
    let args = ["verify", "--family", "join", "--n", "4", "--sample", "3", "--seed", "11"];
    let first = json(&args);
    assert_eq!(first["certificates"].as_array().unwrap().len(), 3);
    assert_eq!(first, json(&args));
    assert_eq!(first["holds"], Value::Bool(true));
}

#[test]
fn cache_directory_reuses_results() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("out.json");
    let run = |extra: &[&str]| {
        let mut args = vec!["embed", "--kind", "plus-infinity", "--n", "2"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_circle-hall"))
            .args(&args)
            .env("CIRCLE_HALL_CACHE_DIR", dir.path().join("cache"))
            .output()
            .unwrap()
    };
    let first = run(&[]);
    assert!(first.status.success());
    let entries: Vec<_> = std::fs::read_dir(dir.path().join("cache")).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run(&["--output", out_file.to_str().unwrap()]);
    assert!(second.status.success());
    assert_eq!(std::fs::read(&out_file).unwrap(), first.stdout);
    assert_eq!(std::fs::read_dir(dir.path().join("cache")).unwrap().count(), 1);
}

#[test]
fn embed_reports_the_cartan_check() {
    let v = json(&["embed", "--kind", "subdivision", "--factor", "2", "--n", "2"]);
    assert_eq!(v["target_denominator"], 4);
    assert_eq!(v["affine_cartan"], Value::Bool(true));
}

#[test]
fn suite_passes_every_row() {
    let table = stdout(&["suite", "--q", "2", "--table"]);
    let rows: Vec<&str> = table.lines().collect();
    assert_eq!(rows.len(), 10);
    for row in rows {
        assert!(row.contains("PASS"), "{row}");
    }
}
