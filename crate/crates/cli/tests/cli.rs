use std::fs;
use std::process::Command;

use descent_cli::cache::{Lookup, SCHEMA_VERSION};
use descent_cli::verify::{self, Options, Status, Suite};
use descent_cli::{expr, table, Cache, CacheEntry, CacheStatus, CliError, Format, Loader, TableRow};
use descent_core::subset::power_set;
use descent_core::{Basis, CoxeterSystem, DescentAlgebra};

fn system(label: &str) -> CoxeterSystem {
    CoxeterSystem::from_label(label).unwrap()
}

#[test]
fn cache_round_trip_preserves_constants() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (fresh, status) = cache.algebra(system("E6")).unwrap();
    assert_eq!(status, CacheStatus::Stored);
    let (loaded, status) = cache.algebra(system("E6")).unwrap();
    assert_eq!(status, CacheStatus::Hit);
    assert!(fresh.constants().triples().eq(loaded.constants().triples()));
    assert_eq!(loaded.loewy_profile().dims, vec![64, 47, 28, 12, 3]);
    let Lookup::Found(entry) = cache.load("E6") else { panic!("entry missing") };
    assert_eq!(entry.group_order, 51840);
    assert_eq!(entry.shapes.len(), 17);
    assert!(entry.checksum_ok());
}

#[test]
fn truncated_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (a, _) = cache.algebra(system("B3")).unwrap();
    let path = cache.path_for("B3").unwrap();
    let bytes = fs::read(&path).unwrap();
    fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
    assert!(matches!(cache.load("B3"), Lookup::Corrupt(_)));
    let (b, status) = cache.algebra(system("B3")).unwrap();
    assert!(matches!(status, CacheStatus::Corrupt(_)), "{status:?}");
    assert!(a.constants().triples().eq(b.constants().triples()));
    assert_eq!(cache.algebra(system("B3")).unwrap().1, CacheStatus::Hit);
}

#[test]
fn tampered_entry_fails_its_checksum() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (a, _) = cache.algebra(system("A3")).unwrap();
    let mut entry = CacheEntry::from_algebra(&a);
    entry.triples[0].3 += 1;
    cache.store(&entry).unwrap();
    assert!(matches!(cache.load("A3"), Lookup::Corrupt(ref why) if why.contains("checksum")));
    let (b, status) = cache.algebra(system("A3")).unwrap();
    assert!(matches!(status, CacheStatus::Corrupt(_)));
    assert!(a.constants().triples().eq(b.constants().triples()));
}

#[test]
fn version_bump_forces_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (a, _) = cache.algebra(system("H3")).unwrap();
    let mut entry = CacheEntry::from_algebra(&a);
    entry.schema_version = SCHEMA_VERSION + 1;
    entry.checksum = entry.compute_checksum();
    cache.store(&entry).unwrap();
    let (_, status) = cache.algebra(system("H3")).unwrap();
    assert_eq!(status, CacheStatus::VersionMismatch { found: SCHEMA_VERSION + 1 });
    assert!(matches!(cache.load("H3"), Lookup::Found(e) if e.schema_version == SCHEMA_VERSION));
}

#[test]
fn entry_for_another_group_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let (b3, _) = cache.algebra(system("B3")).unwrap();
    let mut entry = CacheEntry::from_algebra(&b3);
    entry.type_label = "A3".into();
    entry.checksum = entry.compute_checksum();
    cache.store(&entry).unwrap();
    let (a3, status) = cache.algebra(system("A3")).unwrap();
    assert!(matches!(status, CacheStatus::Corrupt(_)), "{status:?}");
    assert_eq!(a3.shapes().len(), 5);
}

#[test]
fn disabled_cache_writes_nothing() {
    let (_, status) = Cache::disabled().algebra(system("A2")).unwrap();
    assert_eq!(status, CacheStatus::Disabled);
    assert!(Cache::disabled().path_for("A2").is_none());
}

#[test]
fn loader_canonicalises_and_memoises() {
    let dir = tempfile::tempdir().unwrap();
    let loader = Loader::new(Cache::new(dir.path()), false);
    let a = loader.algebra("B3").unwrap();
    let b = loader.algebra(" B3 ").unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
    assert_eq!(loader.statuses().len(), 1);
    assert!(matches!(loader.algebra("E7"), Err(CliError::Rank7Disabled { .. })));
    assert!(loader.algebra("E8").is_err());
    assert!(loader.algebra("Q3").is_err());
}

fn alg(label: &str) -> std::sync::Arc<DescentAlgebra> {
    DescentAlgebra::from_label(label).unwrap()
}

fn show(label: &str, l: &str, r: &str, basis: Basis) -> String {
    expr::multiply(&alg(label), l, r, basis).unwrap().to_string()
}

#[test]
fn products_from_expressions() {
    assert_eq!(show("A2", "x[1]", "x[1]", Basis::X), "x[1] + x[]");
    assert_eq!(show("A2", "xS", "xS", Basis::X), "xS");
    assert_eq!(show("B3", "xS", "xS", Basis::X), "xS");
    assert_eq!(show("B2", "y[]", "y[1]", Basis::Y), "y[2]");
    assert_eq!(show("A2", "1/2*x[1] - x[2]", "2", Basis::X), "x[1] - 2*x[2]");
    assert_eq!(show("A2", "x[1] - x[2]", "x[1] - x[2]", Basis::X), "0");
    assert_eq!(show("A2", "(x[1] + x[2]) 3", "xS", Basis::X), "3*x[1] + 3*x[2]");
    assert_eq!(show("D4", "x[1p]", "xS", Basis::X), "x[1p]");
    assert_eq!(show("A2", "-x[]", "x[]", Basis::X), "-6*x[]");
}

#[test]
fn w0_complements_y_subsets() {
    for label in ["B2", "B3", "H3", "D4"] {
        let a = alg(label);
        let w = a.system();
        for j in power_set(a.rank()) {
            let right = format!("y{}", w.format_subset(j));
            let got = expr::multiply(&a, "y[]", &right, Basis::Y).unwrap();
            assert_eq!(got, a.basis_y(w.full_set().difference(j)), "{label} {j}");
        }
    }
}

#[test]
fn parse_errors_carry_positions() {
    let a = alg("A3");
    let cases = [("x[1,4]", 4), ("x[1", 3), ("2 +", 3), ("x[1] $", 5), ("z", 0), ("1/0", 2), ("x[1,1]", 4), ("xq", 0)];
    for (input, position) in cases {
        match expr::parse(&a, input) {
            Err(CliError::Parse { position: p, .. }) => assert_eq!(p, position, "{input}"),
            other => panic!("{input}: {other:?}"),
        }
    }
}

#[test]
fn printed_vectors_parse_back() {
    let a = alg("B3");
    for basis in [Basis::X, Basis::Y, Basis::XPrime] {
        let v = expr::parse(&a, "3*x[1,2] - 1/2*x[3] + x[] + xS").unwrap().to_basis(basis);
        let back = expr::parse(&a, &v.to_string()).unwrap();
        assert_eq!(back, v, "{basis}");
    }
}

#[test]
fn table_rows_and_formats() {
    let rows = table::rows(&alg("H3"), None).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0].lambda_orbits, rows[0].loewy_length, rows[0].radical_dims.clone()), (6, 2, vec![8, 2]));
    let i25 = table::rows(&alg("I2(5)"), Some(2)).unwrap();
    assert_eq!((i25[0].lambda_orbits, i25[0].loewy_length, i25[0].radical_dims.clone()), (3, 1, vec![3]));
    assert!(matches!(table::rows(&alg("B3"), Some(2)), Err(CliError::Core(_))));

    let d4 = table::rows(&alg("D4"), None).unwrap();
    assert_eq!(d4.iter().map(|r| r.sigma_order).collect::<Vec<_>>(), vec![1, 2, 3]);
    assert!(d4.iter().all(TableRow::is_consistent));

    let json = table::render(&d4, Format::Json).unwrap();
    let parsed: Vec<TableRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed, d4);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let keys: Vec<&String> = value[0].as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 6);
    for k in ["type", "sigma_order", "dim", "lambda_orbits", "loewy_length", "radical_dims"] {
        assert!(value[0].get(k).is_some(), "{k}");
    }

    let csv = table::render(&d4, Format::Csv).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "type,sigma_order,dim,lambda_orbits,loewy_length,radical_dims");
    assert_eq!(lines[3], "D4,3,8,7,2,8;1");
    assert!(table::render(&d4, Format::Text).unwrap().contains("12, 3"));
    assert!(matches!("xml".parse::<Format>(), Err(CliError::UnknownFormat(_))));
}

#[test]
fn rows_are_reproducible() {
    for label in ["A4", "B4", "D5", "F4", "I2(8)"] {
        let first = table::rows(&alg(label), None).unwrap();
        let second = table::rows(&alg(label), None).unwrap();
        assert_eq!(first, second, "{label}");
    }
}

#[test]
fn suites_by_name() {
    for (name, suite) in Suite::NAMES.iter().zip(Suite::ALL) {
        assert_eq!(name.parse::<Suite>().unwrap(), suite);
        assert_eq!(suite.name(), *name);
    }
    assert!(matches!("loewy".parse::<Suite>(), Err(CliError::UnknownSuite(_))));
}

#[test]
fn oracle_report_counts_pairs() {
    let report = verify::run(Suite::SolomonOracle, &alg("A3"), Options::default()).unwrap();
    assert!(report.passed);
    assert_eq!(report.checks[0].cases, 64);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["checks"][0]["status"], "pass");
    assert_eq!(json["type"], "A3");
}

#[test]
fn reports_are_seed_stable() {
    let opts = Options { seed: 7, samples: 10 };
    let a = serde_json::to_string(&verify::run(Suite::Positivity, &alg("B3"), opts).unwrap()).unwrap();
    let b = serde_json::to_string(&verify::run(Suite::Positivity, &alg("B3"), opts).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn report_only_checks_never_fail() {
    let rep = verify::run(Suite::LoewyBounds, &alg("A3"), Options::default()).unwrap();
    assert!(rep.passed);
    let shape = rep.checks.iter().find(|c| c.name == "type_a_shape_count").unwrap();
    assert_eq!(shape.status, Status::Report);
    assert_eq!(shape.detail.as_ref().unwrap()["computed"], 5);

    let d5 = verify::run(Suite::LoewyBounds, &alg("D5"), Options::default()).unwrap();
    let bound = d5.checks.iter().find(|c| c.name == "type_d_odd_lower_bound").unwrap();
    assert_eq!(bound.status, Status::Pass);
    assert_eq!(bound.detail.as_ref().unwrap()["loewy_length"], 4);

    let tau = verify::run(Suite::BTauQuestion, &alg("B5"), Options::default()).unwrap();
    assert_eq!(tau.checks[0].status, Status::Report);
    assert!(verify::run(Suite::BTauQuestion, &alg("B4"), Options::default()).is_err());
}

#[test]
fn failing_checks_carry_counterexamples() {
    let c = verify::Check::run("even", [2, 4, 5, 6], |&n| (n % 2 != 0).then(|| serde_json::json!({"n": n})));
    assert!(c.failed());
    assert_eq!(c.cases, 3);
    assert_eq!(c.counterexample.unwrap()["n"], 5);
}

#[test]
fn partition_numbers() {
    let p: Vec<u64> = (0..10).map(verify::partitions).collect();
    assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
}

fn descent(args: &[&str], cache: &std::path::Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_descent"))
        .args(args)
        .env("DESCENT_CACHE_DIR", cache)
        .output()
        .unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn binary_commands_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = descent(&["mult", "--type", "A2", "--left", "x[1]", "--right", "x[1]"], dir.path());
    assert_eq!((code, out.trim()), (0, "x[1] + x[]"));
    let (code, out, _) = descent(&["table", "--type", "F4", "--format", "csv"], dir.path());
    assert_eq!(code, 0);
    assert_eq!(out.lines().nth(2), Some("F4,2,10,8,2,10;2"));
    assert!(dir.path().join("F4.json").exists());

    let (code, out, _) = descent(&["verify", "--suite", "bhs-symmetry", "--type", "B3"], dir.path());
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], true);

    let (code, _, err) = descent(&["verify", "--suite", "nope", "--type", "B3"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("unknown suite"));
    let (code, _, err) = descent(&["mult", "--type", "A2", "--left", "x[3]", "--right", "xS"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("position 2"), "{err}");
    let (code, _, err) = descent(&["table", "--type", "E7"], dir.path());
    assert_eq!(code, 2);
    assert!(err.contains("--allow-rank7"));

    let (code, _, _) = descent(&["--no-cache", "table", "--type", "G2"], dir.path());
    assert_eq!(code, 0);
    assert!(!dir.path().join("G2.json").exists());

    fs::write(dir.path().join("F4.json"), "{\"schema_version\": 1, \"type_lab").unwrap();
    let (code, out, err) = descent(&["table", "--type", "F4", "--sigma", "1"], dir.path());
    assert_eq!(code, 0);
    assert!(err.contains("corrupt"), "{err}");
    assert!(out.contains("16, 4"));
}
