use trichord::cli::{run, Table, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["trichord"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn chord_cdf_table_ends_at_one() {
    let (code, out, _) = call(&["table", "--fn", "chord_cdf", "--a", "3", "--b", "4", "--grid", "0:5:6"]);
    assert_eq!(code, EXIT_OK);
    let r = rows(&out);
    assert_eq!(r.len(), 6);
    assert_eq!(r[5][0], "5.0");
    assert_eq!(r[5][1], "1.0");
    assert!(out.lines().next().unwrap().starts_with('#'));
    assert!(out.contains("# c=5.0"));
}

#[test]
fn csv_is_bit_stable() {
    let args = ["table", "--fn", "cross_pdf", "--a", "1", "--b", "5", "--grid", "0:5.2:41"];
    let (_, first, _) = call(&args);
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
}

#[test]
fn csv_values_round_trip() {
    let (_, out, _) = call(&["table", "--fn", "distance_pdf", "--a", "1", "--b", "2", "--grid", "0.3,0.7,1.1"]);
    let tri = trichord::RightTriangle::new(1.0, 2.0).unwrap();
    for (row, t) in rows(&out).iter().zip([0.3, 0.7, 1.1]) {
        let v: f64 = row[1].parse().unwrap();
        assert_eq!(v, trichord::distance_pdf(&tri, t).value);
    }
}

#[test]
fn json_round_trips() {
    let (code, out, _) = call(&["table", "--fn", "distance_cdf", "--a", "1", "--b", "5", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let table: Table = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(table.t.len(), 20);
    let again = serde_json::to_string(&table).unwrap();
    assert_eq!(again, out.trim());
}

#[test]
fn normalize_c_rescales_densities_only() {
    let (_, pdf, _) = call(&["table", "--fn", "distance_pdf", "--a", "1", "--b", "5", "--normalize-c", "--grid", "0:5.0990195135927845:20"]);
    let (_, raw, _) = call(&["table", "--fn", "distance_pdf", "--a", "1", "--b", "5", "--grid", "0:5.0990195135927845:20"]);
    let c = 26f64.sqrt();
    for (n, r) in rows(&pdf).iter().zip(rows(&raw)) {
        let (tn, vn): (f64, f64) = (n[0].parse().unwrap(), n[1].parse().unwrap());
        let (tr, vr): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        assert!((tn - tr / c).abs() < 1e-15);
        assert!((vn - c * vr).abs() < 1e-12);
    }
    assert_eq!(rows(&pdf).last().unwrap()[0], "1.0");
    let (_, cdf, _) = call(&["table", "--fn", "distance_cdf", "--a", "1", "--b", "5", "--normalize-c"]);
    assert_eq!(rows(&cdf).last().unwrap()[1], "1.0");
}

#[test]
fn cross_cdf_column_is_monotone() {
    let (_, out, _) = call(&["table", "--fn", "cross_cdf", "--a", "1", "--b", "5"]);
    let vals: Vec<f64> = rows(&out).iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(vals.len(), 20);
    assert!(vals.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = call(&["verify", "all", "--a", "-1", "--b", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("positive"));
    assert_eq!(call(&["table", "--fn", "chord_cdf", "--a", "0", "--b", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["table", "--fn", "chord_cdf", "--a", "1", "--b", "1", "--grid", "1:1:5"]).0, EXIT_USAGE);
    assert_eq!(call(&["table", "--fn", "chord_cdf", "--a", "1", "--b", "1", "--grid", "0:1:1"]).0, EXIT_USAGE);
    assert_eq!(call(&["table", "--fn", "nope", "--a", "1", "--b", "1"]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_one_line_per_check() {
    let (code, out, _) = call(&["verify", "proof", "--a", "3", "--b", "4"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["pass"], true);
    assert!(lines[0]["statistic"].as_f64().unwrap() < 1e-7);
}

#[test]
fn verify_mc_records_seed() {
    let (code, out, _) = call(&["verify", "--suite", "mc", "--seed", "42", "--n", "100000"]);
    assert_eq!(code, EXIT_OK);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["seed"], 42);
        assert_eq!(v["n"], 100000);
        assert_eq!(v["pass"], true);
    }
}
