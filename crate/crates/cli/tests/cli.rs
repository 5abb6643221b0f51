//! End-to-end tests of the command-line surface: argument handling, exit
//! codes, all three output formats, and byte-level determinism.

use n2char_cli::run;
use n2char_core::embeddings::central_charge;
use n2char_core::nsmodules::character_c;
use n2char_core::qseries::QSeries;
use n2char_core::rational::{int, rat};
use n2char_core::shapovalov::gram_block;

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["n2char"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is utf-8"),
        String::from_utf8(err).expect("stderr is utf-8"),
    )
}

#[test]
fn chi_json_round_trips_through_the_library() {
    let (code, out, err) = run_cli(&["chi", "--d", "12", "--r", "7", "--order", "4", "--format", "json"]);
    assert_eq!(code, 0, "stderr: {err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let parsed = QSeries::from_json(&v).unwrap();
    assert_eq!(parsed, character_c(12, 7, &int(4)).unwrap());
}

#[test]
fn chi_table_lists_half_integer_exponents() {
    let (code, out, _) = run_cli(&["chi", "--d", "3", "--r", "1", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("character of C[d=3,p=0,r=1] below order 2"));
    assert!(out.contains("3/2"));
    let rows: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(rows.len(), 3); // exponents 0, 1, 3/2
}

#[test]
fn chi_csv_has_header_and_rows() {
    let (code, out, _) = run_cli(&["chi", "--d", "3", "--r", "1", "--order", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "exponent,coefficient");
    assert_eq!(lines[1], "0,1");
    assert_eq!(lines[2], "1,1");
    assert_eq!(lines[3], "3/2,2");
}

#[test]
fn chi_order_zero_is_empty_and_succeeds() {
    let (code, out, _) = run_cli(&["chi", "--d", "3", "--r", "1", "--order", "0", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1); // header only
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["chi", "--d", "3", "--r", "1", "--order", "x/y"] as &[&str],
        &["chi", "--d", "3", "--r", "1"],
        &["chi", "--d", "3", "--r", "1", "--order", "2", "--format", "yaml"],
        &["nonsense"],
        &[],
    ] {
        let (code, _, err) = run_cli(args);
        assert_eq!(code, 2, "args {args:?} gave stderr: {err}");
        assert!(!err.is_empty(), "usage error for {args:?} must explain itself");
    }
}

#[test]
fn validation_errors_exit_two() {
    // even r is outside the fermionic half-integer sector
    let (code, _, err) = run_cli(&["chi", "--d", "4", "--r", "2", "--order", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("Neveu-Schwarz"));
    // r out of range
    let (code, _, _) = run_cli(&["chi", "--d", "4", "--r", "9", "--order", "2"]);
    assert_eq!(code, 2);
    // d too small
    let (code, _, _) = run_cli(&["chi", "--d", "1", "--r", "1", "--order", "2"]);
    assert_eq!(code, 2);
    // Gram level beyond the cap
    let (code, _, err) = run_cli(&["gram", "--d", "3", "--level", "7", "--charge", "0"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"));
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    let (code, out, _) = run_cli(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains("n2char"));
    let (code, out, _) = run_cli(&["verify", "--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("--with-gram"));
}

#[test]
fn product_matches_component_characters() {
    let (code, out, _) = run_cli(&["product", "--factors", "3,4", "--order", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let parsed = QSeries::from_json(&v).unwrap();
    let by_hand = character_c(3, 1, &int(3))
        .unwrap()
        .mul(&character_c(4, 1, &int(3)).unwrap())
        .unwrap();
    assert_eq!(parsed, by_hand);
}

#[test]
fn decompose_json_shape() {
    let (code, out, _) = run_cli(&[
        "decompose", "--target", "12", "--factors", "3,4", "--order", "8", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["target_d"], 12);
    assert_eq!(v["factors"], serde_json::json!([3, 4]));
    assert_eq!(v["order"], "8/1");
    assert_eq!(
        v["multiplicities"],
        serde_json::json!([{"r": 1, "m": 1}, {"r": 7, "m": 1}])
    );
    assert_eq!(v["verified"], true);
}

#[test]
fn decompose_csv_rows() {
    let (code, out, _) = run_cli(&[
        "decompose", "--target", "30", "--factors", "3,5", "--order", "8", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["r,multiplicity", "1,1", "11,1", "19,1", "29,1"]);
}

#[test]
fn central_charge_mismatch_exits_one() {
    let (code, out, err) = run_cli(&["decompose", "--target", "11", "--factors", "3,4", "--order", "4"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("central charge mismatch"));
}

#[test]
fn embeddings_formats() {
    let (code, out, _) = run_cli(&["embeddings", "--max", "100", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["d1,d2,d3", "6,3,3", "12,3,4", "30,3,5"]);

    let (code, out, _) = run_cli(&["embeddings", "--max", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1); // nothing fits below 6

    let (code, out, _) = run_cli(&["embeddings", "--max", "12", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v,
        serde_json::json!([{"d1": 6, "d2": 3, "d3": 3}, {"d1": 12, "d2": 3, "d3": 4}])
    );
}

#[test]
fn gram_json_matches_library() {
    let (code, out, _) = run_cli(&[
        "gram", "--d", "12", "--level", "2", "--charge", "0", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let c = central_charge(12).unwrap();
    let block = gram_block(&int(2), 0, &c).unwrap();
    assert_eq!(v, block.to_json());
}

#[test]
fn gram_handles_negative_charge() {
    let (code, out, _) = run_cli(&[
        "gram", "--d", "3", "--level", "3/2", "--charge", "-1", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, vec!["basis,G--3/2", "G--3/2,2/3"]);
}

#[test]
fn dims_json_matches_library() {
    use n2char_core::shapovalov::quotient_graded_dim;
    let (code, out, _) = run_cli(&["dims", "--d", "4", "--max-level", "5/2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 4);
    let dims = v["dims"].as_array().unwrap();
    assert_eq!(dims.len(), 6);
    for (i, entry) in dims.iter().enumerate() {
        let level = rat(i as i64, 2);
        let expected = quotient_graded_dim(4, &level).unwrap();
        assert_eq!(entry["dim"], expected as i64, "level {level}");
    }
}

#[test]
fn verify_passes_and_is_deterministic() {
    let (code, first, err) = run_cli(&["verify", "--case", "all", "--format", "json"]);
    assert_eq!(code, 0, "stderr: {err}");
    let (code2, second, _) = run_cli(&["verify", "--case", "all", "--format", "json"]);
    assert_eq!(code2, 0);
    assert_eq!(first, second, "verify output must be byte-identical across runs");
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["cases"].as_array().unwrap().len(), 2);
    assert_eq!(v["enumeration"]["pass"], true);
    assert!(v["gram"].is_null());
}

#[test]
fn verify_table_output_reports_each_row() {
    let (code, out, _) = run_cli(&["verify", "--case", "e8"]);
    assert_eq!(code, 0);
    for needle in [
        "e8: M30 into M3 (x) M5",
        "  weight            0  1   3    7",
        "  M3 (x) M5         1  2  18  496",
        "  C[d=30,p=0,r=1]   1  1   6  107",
        "  C[d=30,p=0,r=11]  0  1  11  319",
        "  C[d=30,p=0,r=19]  0  0   1   69",
        "  C[d=30,p=0,r=29]  0  0   0    1",
        "e8: row M3 (x) M5",
        "e8: row C[d=30,p=0,r=29]",
        "module rows sum",
        "multiplicities all equal one",
        "enumeration",
        "overall: VERIFIED",
    ] {
        assert!(out.contains(needle), "missing {needle:?} in:\n{out}");
    }
    assert!(!out.contains("[FAIL]"));
}

#[test]
fn verify_with_gram_adds_cross_checks() {
    let (code, out, _) = run_cli(&["verify", "--case", "e6", "--with-gram"]);
    assert_eq!(code, 0);
    assert!(out.contains("match Gram ranks"));
    assert!(out.contains("isometric up to level 5/2"));
}

#[test]
fn tampered_expectation_fails_verification() {
    use n2char_cli::run_with_expected;
    use n2char_core::embeddings::ExpectedTable;
    let mut table = ExpectedTable::standard();
    table.cases[0].product_row[1] += 1;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_expected(
        ["n2char", "verify", "--case", "e6"],
        &table,
        &mut out,
        &mut err,
    );
    assert_eq!(code, 1);
    let rendered = String::from_utf8(out).unwrap();
    assert!(rendered.contains("[FAIL] e6: row M3 (x) M4"));
    assert!(rendered.contains("overall: FAIL"));
}

#[test]
fn installed_binary_agrees_with_library_runner() {
    let exe = env!("CARGO_BIN_EXE_n2char");
    let output = std::process::Command::new(exe)
        .args(["chi", "--d", "3", "--r", "1", "--order", "2", "--format", "csv"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let (lib_code, lib_out, _) = run_cli(&["chi", "--d", "3", "--r", "1", "--order", "2", "--format", "csv"]);
    assert_eq!(lib_code, 0);
    assert_eq!(String::from_utf8(output.stdout).unwrap(), lib_out);

    let status = std::process::Command::new(exe)
        .args(["decompose", "--target", "11", "--factors", "3,4", "--order", "2"])
        .output()
        .expect("binary runs");
    assert_eq!(status.status.code(), Some(1));
}
