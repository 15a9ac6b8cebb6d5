use qkt::bethe::{solve_bethe, BetheRoot, Side};
use qkt::combinatorics::BoxPartition;
use qkt::json::Json;
use qkt::module::ModuleElement;
use qkt::products::{Q, YQ};
use qkt::scalar::{QKValue, QRing, QSeries, RatScalar, Ring};
use qkt_cli::cache::{write_atomic, Cache};
use qkt_cli::{parse_partition, run_with_env, Outcome, EXIT_CONSISTENCY, EXIT_OK, EXIT_USAGE};
use serde_json::Value;
use std::process::Command;

fn qkt(args: &[&str]) -> Outcome {
    let argv = std::iter::once("qkt").chain(args.iter().copied());
    run_with_env(argv, None)
}

fn ok_json(args: &[&str]) -> Value {
    let out = qkt(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn part(k: usize, n: usize, parts: &[usize]) -> BoxPartition {
    BoxPartition::new(k, n, parts).unwrap()
}

#[test]
fn product_of_boxes_on_gr12() {
    let v = ok_json(&["product", "--n", "2", "--k", "1", "--a", "1", "--b", "1"]);
    let got = ModuleElement::<Q>::from_json(&v).unwrap();
    let n = 2;
    let a = RatScalar::var(n, 2).mul(&RatScalar::var_pow(n, 1, -1));
    let want = ModuleElement::term(part(1, 2, &[]), Q::q(n).scale(&a))
        .add(&ModuleElement::term(part(1, 2, &[1]), Q::constant(RatScalar::one(n).sub(&a))));
    assert_eq!(got, want);
}

#[test]
fn bethe_root_on_gr12_to_first_order() {
    let v = ok_json(&["bethe", "--n", "2", "--k", "1", "--lambda", "", "--order", "1"]);
    let root = BetheRoot::from_json(&v).unwrap();
    let n = 2;
    let (e1, e2) = (RatScalar::var(n, 1), RatScalar::var(n, 2));
    let c1 = e1.mul(&e2).div(&e1.sub(&e2)).unwrap();
    assert_eq!(root.roots, vec![QSeries::new(n, 1, vec![e1, c1])]);
    assert_eq!(root.roots[0].order(), 1);
}

#[test]
fn verify_all_reports_no_failures() {
    let v = ok_json(&["verify", "--suite", "all", "--n-max", "3", "--q-order", "2"]);
    assert_eq!(v["failures"], 0);
    assert!(v["checks"].as_u64().unwrap() > 100);
    let names: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["vertex", "weyl", "products", "localization", "bethe"]);
}

#[test]
fn every_verb_emits_round_tripping_json() {
    let v = ok_json(&["transfer", "--n", "3", "--k", "1", "--lambda", "1"]);
    let t = ModuleElement::<YQ>::from_json(&v).unwrap();
    assert_eq!(t.to_json(), v);
    let v = ok_json(&["transfer", "--n", "3", "--k", "2", "--lambda", "1,1", "--dual"]);
    assert_eq!(ModuleElement::<YQ>::from_json(&v).unwrap().to_json(), v);

    let v = ok_json(&["act", "--n", "2", "--k", "1", "--lambda", "", "--word", "rho"]);
    assert_eq!(ModuleElement::<Q>::from_json(&v).unwrap(), ModuleElement::basis(&part(1, 2, &[1])));
    let v = ok_json(&["act", "--n", "2", "--k", "1", "--lambda", "1", "--word", "rho"]);
    assert_eq!(ModuleElement::<Q>::from_json(&v).unwrap(), ModuleElement::term(part(1, 2, &[]), Q::q(2)));

    let v = ok_json(&["pair", "--n", "2", "--k", "1", "--a", "", "--b", ""]);
    let p = QKValue::from_json(&v).unwrap();
    assert_eq!(p, QKValue::new(Q::one(2), 1));
    assert_eq!(v["den_pow"], 1);
    let v = ok_json(&["pair", "--n", "2", "--k", "1", "--a", "1", "--b", "", "--dual-b"]);
    assert_eq!(QKValue::from_json(&v).unwrap(), QKValue::new(Q::q(2), 1));

    let v = ok_json(&["localize", "--n", "3", "--k", "1", "--a", "1"]);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    for p in v["points"].as_array().unwrap() {
        RatScalar::from_json(&p["value"]).unwrap();
    }
    let v = ok_json(&["localize", "--n", "2", "--k", "1", "--a", "", "--order", "2"]);
    for p in v["points"].as_array().unwrap() {
        assert_eq!(QSeries::from_json(&p["value"]).unwrap(), QSeries::one(2).truncate(2));
    }

    let v = ok_json(&["bethe", "--n", "3", "--k", "2", "--lambda", "1", "--order", "1", "--dual"]);
    assert_eq!(BetheRoot::from_json(&v).unwrap().side, Side::Dual);
}

#[test]
fn output_is_deterministic_and_rendered_in_each_format() {
    let args = ["product", "--n", "3", "--k", "1", "--a", "1", "--b", "2"];
    assert_eq!(qkt(&args), qkt(&args));
    let text = qkt(&[&args[..], &["--format", "text"]].concat());
    assert!(text.stdout.contains("*O"), "{}", text.stdout);
    let latex = qkt(&[&args[..], &["--format", "latex"]].concat());
    assert!(latex.stdout.contains("\\mathcal{O}"), "{}", latex.stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["product", "--n", "2", "--k", "1", "--a", "2", "--b", "1"],
        vec!["product", "--n", "2", "--k", "3", "--a", "", "--b", ""],
        vec!["product", "--n", "0", "--k", "0", "--a", "", "--b", ""],
        vec!["product", "--n", "3", "--k", "2", "--a", "1,2", "--b", ""],
        vec!["product", "--n", "3", "--k", "2", "--a", "x", "--b", ""],
        vec!["act", "--n", "2", "--k", "1", "--lambda", "", "--word", "s5"],
        vec!["act", "--n", "2", "--k", "1", "--lambda", "", "--word", "u1"],
        vec!["verify", "--suite", "nonsense"],
        vec!["localize", "--n", "2", "--k", "0", "--a", "", "--order", "1"],
        vec!["frobnicate"],
        vec!["product", "--n", "2"],
        vec!["cache", "--n", "2", "--k", "1"],
    ] {
        let out = qkt(&args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    assert_eq!(qkt(&["--help"]).code, EXIT_OK);
}

#[test]
fn partitions_parse_from_commas_or_spaces() {
    assert_eq!(parse_partition(2, 4, "2,1").unwrap(), part(2, 4, &[2, 1]));
    assert_eq!(parse_partition(2, 4, "2 1").unwrap(), part(2, 4, &[2, 1]));
    assert_eq!(parse_partition(2, 4, "").unwrap(), part(2, 4, &[]));
    assert_eq!(parse_partition(2, 4, "1,0").unwrap(), part(2, 4, &[1]));
    assert!(parse_partition(2, 4, "3").is_err());
}

#[test]
fn cache_round_trip_matches_fresh_roots() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let v = ok_json(&["cache", "--n", "3", "--k", "1", "--order", "2", "--cache-dir", d]);
    assert_eq!(v["roots"], 3);
    let cache = Cache::new(dir.path());
    let bethe = cache.bethe_path(1, 3, 2);
    assert_eq!(bethe, dir.path().join("3_1").join("bethe_N2.json"));
    assert!(bethe.exists());
    assert!(cache.structure_path(1, 3).exists());

    let stored = cache.load_bethe(1, 3, 2).unwrap().unwrap();
    for r in &stored {
        let fresh = solve_bethe(&r.lambda, Side::Primal, 2).unwrap();
        assert_eq!(&fresh, r);
        for (a, b) in fresh.roots.iter().zip(&r.roots) {
            assert_eq!(a.order(), b.order());
        }
    }
    assert_eq!(ok_json(&["cache", "--n", "3", "--k", "1", "--order", "2", "--check", "--cache-dir", d])["checked"], true);

    let cached = ok_json(&["bethe", "--n", "3", "--k", "1", "--lambda", "1", "--order", "2", "--cache-dir", d]);
    let direct = ok_json(&["bethe", "--n", "3", "--k", "1", "--lambda", "1", "--order", "2"]);
    assert_eq!(cached, direct);
    let cached = ok_json(&["product", "--n", "3", "--k", "1", "--a", "1", "--b", "2", "--cache-dir", d]);
    let direct = ok_json(&["product", "--n", "3", "--k", "1", "--a", "1", "--b", "2"]);
    assert_eq!(cached, direct);

    let leftovers: Vec<_> = std::fs::read_dir(dir.path().join("3_1"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|name| !name.ends_with(".json"))
        .collect();
    assert!(leftovers.is_empty(), "temporary files left behind: {leftovers:?}");
}

#[test]
fn tampered_cache_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    ok_json(&["cache", "--n", "2", "--k", "1", "--order", "4", "--cache-dir", d]);
    let cache = Cache::new(dir.path());
    let mut roots = cache.load_bethe(1, 2, 4).unwrap().unwrap();
    roots[0].roots[0] = QSeries::new(2, 4, vec![RatScalar::var(2, 2)]);
    cache.store_bethe(1, 2, 4, &roots).unwrap();
    let out = qkt(&["cache", "--n", "2", "--k", "1", "--order", "4", "--check", "--cache-dir", d]);
    assert_eq!(out.code, EXIT_CONSISTENCY);
    assert!(out.stderr.contains("differ"));
    assert!(!out.stdout.is_empty(), "a witness is printed");

    write_atomic(&cache.bethe_path(1, 2, 4), "{ not json").unwrap();
    let out = qkt(&["cache", "--n", "2", "--k", "1", "--order", "4", "--cache-dir", d]);
    assert_eq!(out.code, EXIT_CONSISTENCY);
    assert!(out.stderr.contains("corrupt"));
}

#[test]
fn concurrent_cache_writers_leave_a_valid_document() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let roots: Vec<BetheRoot> =
        BoxPartition::all(1, 2).iter().map(|l| solve_bethe(l, Side::Primal, 1).unwrap()).collect();
    std::thread::scope(|s| {
        for _ in 0..8 {
            s.spawn(|| {
                for _ in 0..10 {
                    cache.store_bethe(1, 2, 1, &roots).unwrap();
                }
            });
        }
        s.spawn(|| {
            for _ in 0..50 {
                if let Some(r) = cache.load_bethe(1, 2, 1).unwrap() {
                    assert_eq!(r, roots);
                }
            }
        });
    });
    assert_eq!(cache.load_bethe(1, 2, 1).unwrap().unwrap(), roots);
}

#[test]
fn config_file_supplies_defaults_and_env_names_it() {
    let dir = tempfile::tempdir().unwrap();
    let cache_dir = dir.path().join("cache");
    let cfg = dir.path().join("qkt.toml");
    std::fs::write(&cfg, format!("n-max = 2\nq-order = 1\ncache-dir = {:?}\n", cache_dir.to_str().unwrap())).unwrap();
    let argv = ["qkt", "verify", "--suite", "vertex,localization"];
    let out = run_with_env(argv, Some(cfg.to_str().unwrap()));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((v["n_max"].as_u64(), v["q_order"].as_u64()), (Some(2), Some(1)));

    let out = run_with_env(["qkt", "bethe", "--n", "2", "--k", "1", "--lambda", ""], Some(cfg.to_str().unwrap()));
    assert_eq!(out.code, EXIT_OK);
    assert!(Cache::new(&cache_dir).bethe_path(1, 2, 1).exists());

    let other = dir.path().join("other.toml");
    std::fs::write(&other, "q-order = 3\n").unwrap();
    let out = run_with_env(
        ["qkt", "--config", other.to_str().unwrap(), "verify", "--suite", "vertex"],
        Some(cfg.to_str().unwrap()),
    );
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["q_order"], 3);

    let missing = dir.path().join("missing.toml");
    assert_eq!(run_with_env(["qkt", "verify"], Some(missing.to_str().unwrap())).code, EXIT_USAGE);
    std::fs::write(&other, "bogus = 1\n").unwrap();
    assert_eq!(run_with_env(["qkt", "--config", other.to_str().unwrap(), "verify"], None).code, EXIT_USAGE);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qkt");
    let out = Command::new(bin)
        .env_remove("QKT_CONFIG")
        .args(["product", "--n", "2", "--k", "1", "--a", "1", "--b", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ring"], "rat[q]");
    let out = Command::new(bin).env_remove("QKT_CONFIG").args(["pair", "--n", "2", "--k", "1", "--a", "5", "--b", ""]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
