//! `--json` output of every subcommand against checked-in golden files, plus the schema
//! rule that numbers only ever appear as strings.

use std::path::PathBuf;

use formhasse::cli::run;
use serde_json::Value;

const CASES: &[(&str, i32, &[&str])] = &[
    (
        "equiv_q",
        0,
        &[
            "equiv",
            "--field",
            "Q",
            "--lhs",
            "7,1,1,1,-7",
            "--rhs",
            "1,1,1,1,-1",
        ],
    ),
    (
        "equiv_k5_signature",
        1,
        &["equiv", "--field", "K5", "--lhs", "1,1", "--rhs", "phi,phi"],
    ),
    (
        "hasse_swd",
        0,
        &["hasse", "--field", "K5", "--form", "1,1,1,-1-2*s5"],
    ),
    (
        "hasse_q",
        0,
        &["hasse", "--field", "Q", "--form", "-1,-1,3"],
    ),
    (
        "hilbert_q",
        0,
        &["hilbert", "--field", "Q", "--a", "-1", "--b", "-1"],
    ),
    (
        "hilbert_k5",
        0,
        &["hilbert", "--field", "K5", "--a", "phi", "--b", "3-2*s5"],
    ),
    ("classify_p7", 0, &["classify", "--form", "1,-7,1,1"]),
    ("primes_20", 0, &["primes", "--limit", "20"]),
    (
        "witness_2_2",
        0,
        &["witness", "--lhs", "1,1", "--rhs", "2,2"],
    ),
    (
        "witness_not_found",
        3,
        &["witness", "--lhs", "1,1", "--rhs", "1,-1"],
    ),
    ("verify_cox11", 0, &["verify-paper", "--section", "cox-11"]),
];

fn json_run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["formhasse", "--json"]
        .into_iter()
        .chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    (code, String::from_utf8(out).unwrap())
}

fn no_json_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(a) => a.iter().all(no_json_numbers),
        Value::Object(o) => o.values().all(no_json_numbers),
        _ => true,
    }
}

#[test]
fn outputs_match_golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, code, args) in CASES {
        let (got_code, got) = json_run(args);
        assert_eq!(got_code, *code, "{name}");
        let want = std::fs::read_to_string(dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(got, want, "{name}");
        let v: Value = serde_json::from_str(&got).unwrap();
        assert!(no_json_numbers(&v), "{name} contains a JSON number");
    }
}

#[test]
fn exact_rationals_survive_round_trip() {
    let (_, out) = json_run(&["witness", "--lhs", "2,2", "--rhs", "1,1"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let entries: Vec<num_rational::BigRational> = v["p"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_str().unwrap().parse().unwrap())
        })
        .collect();
    // p^t diag(2,2) p = I, recomputed from the serialized strings alone
    let r = |n: i64| num_rational::BigRational::from_integer(n.into());
    let two = r(2);
    let (a, b, c, d) = (&entries[0], &entries[1], &entries[2], &entries[3]);
    assert_eq!(&two * (a * a + c * c), r(1));
    assert_eq!(&two * (b * b + d * d), r(1));
    assert_eq!(&two * (a * b + c * d), r(0));
}
