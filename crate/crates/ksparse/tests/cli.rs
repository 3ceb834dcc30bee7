//! End-to-end CLI tests: exit codes, golden output bytes, and the error
//! surface.

use std::io::Write as _;

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut input = stdin.as_bytes();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ksparse::cli::run(&args, &mut input, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8 stdout"),
        String::from_utf8(err).expect("utf8 stderr"),
    )
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write temp");
    f
}

const TRIANGLE_10: &str = "3 1 0\n0 1\n1 2\n0 2\n";

#[test]
fn decide_triangle_prints_tight() {
    let (code, out, err) = run(&["decide"], TRIANGLE_10);
    assert_eq!(out, "tight\n");
    assert_eq!(err, "");
    assert_eq!(code, 0);
}

#[test]
fn decide_machine_output_is_pinned() {
    let (code, out, _) = run(&["decide", "--machine"], TRIANGLE_10);
    assert_eq!(out, "verdict=tight\naccepted=0,1,2\nrejected=\npebbles=0\n");
    assert_eq!(code, 0);
}

#[test]
fn decide_dependent_exits_one() {
    let (code, out, _) = run(&["decide"], "2 1 1\n0 1\n0 1\n");
    assert_eq!(out, "dependent\n");
    assert_eq!(code, 1);
}

#[test]
fn flags_override_header_params() {
    // Header says (1,0); flags force (2,2), under which a triangle is
    // sparse but short of the tight count 4.
    let (code, out, _) = run(&["decide", "--k", "2", "--l", "2"], TRIANGLE_10);
    assert_eq!(out, "sparse\n");
    assert_eq!(code, 0);
}

#[test]
fn unknown_flag_exits_two() {
    let (code, _, err) = run(&["decide", "--frobnicate"], TRIANGLE_10);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: unknown flag --frobnicate"));
}

#[test]
fn unknown_command_exits_two() {
    let (code, _, err) = run(&["solve"], "");
    assert_eq!(code, 2);
    assert!(err.contains("unknown command"));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let (code, _, err) = run(&["decide"], "3 1 0\n0 9\n");
    assert_eq!(code, 2);
    assert!(err.starts_with("error: line 2:"), "{err}");
}

#[test]
fn zero_k_is_a_usage_error() {
    let (code, _, err) = run(&["decide"], "2 0 0\n0 1\n");
    assert_eq!(code, 2);
    assert!(err.contains("k must be at least 1"));
}

#[test]
fn decide_trace_lists_moves() {
    let (code, out, _) = run(&["decide", "--trace"], "2 1 0\n0 1\n");
    assert_eq!(out, "add e=0,1 t=0\nsparse\n");
    assert_eq!(code, 0);
}

#[test]
fn extract_drops_the_dependent_copy() {
    let (code, out, _) = run(&["extract"], "3 1 0\n0 1\n1 2\n0 2\n0 1\n");
    assert_eq!(out, TRIANGLE_10);
    assert_eq!(code, 0);
}

#[test]
fn optimize_uses_file_weights() {
    let input = "2 1 1\n0 1 w=2\n0 1 w=1\n";
    let (code, out, _) = run(&["optimize"], input);
    assert_eq!(out, "2 1 1\n0 1 w=1\n");
    assert_eq!(code, 0);

    let (code, out, _) = run(&["optimize", "--maximize"], input);
    assert_eq!(out, "2 1 1\n0 1 w=2\n");
    assert_eq!(code, 0);
}

#[test]
fn components_output_format() {
    let (code, out, _) = run(&["components", "--k", "2", "--l", "3"], TRIANGLE_10);
    assert_eq!(out, "0 1 2 |E|=3\n");
    assert_eq!(code, 0);

    let (_, out, _) = run(
        &["components", "--k", "2", "--l", "3", "--machine"],
        TRIANGLE_10,
    );
    assert_eq!(out, "verdict=tight\ncomponent=0,1,2 edges=3\n");
}

#[test]
fn represent_emits_provenance_comments() {
    let input = "4 1 1\n0 1 2\n0 2 3\n0 1 3\n";
    let (code, out, _) = run(&["represent"], input);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("4 1 1"));
    assert_eq!(lines.next(), Some("# represents -"));
    let rest: Vec<&str> = lines.collect();
    assert_eq!(rest.len(), 6, "{out}");
    assert!(rest[0].starts_with("# e0 0 1 2 -> "));
    // The emitted edges parse back to a sparse 2-dimensional graph.
    let (code2, out2, _) = run(&["decide"], &out);
    assert_eq!(out2, "tight\n");
    assert_eq!(code2, 0);
}

#[test]
fn represent_rejects_dependent_input() {
    let (code, _, err) = run(&["represent"], "2 1 1\n0 1\n0 1\n");
    assert_eq!(code, 1);
    assert!(err.starts_with("error: graph is dependent"));
}

#[test]
fn critical_classifies_both_ways() {
    let laman = "4 2 3\n0 1\n1 2\n0 2\n2 3\n1 3\n";
    let (code, out, _) = run(&["critical"], laman);
    assert_eq!(out, "critical\n");
    assert_eq!(code, 0);

    let tree = "4 1 1\n0 1 2\n0 2 3\n0 1 3\n";
    let (code, out, _) = run(&["critical", "--machine"], tree);
    assert_eq!(out, "critical=false\n");
    assert_eq!(code, 0);
}

#[test]
fn decompose_triangle_into_one_map() {
    let (code, out, _) = run(&["decompose", "--maps", "1"], TRIANGLE_10);
    assert_eq!(out, "map 0: e0(t=0) e1(t=1) e2(t=2)\n");
    assert_eq!(code, 0);
}

#[test]
fn decompose_rejects_sparse_input() {
    let (code, _, err) = run(&["decompose", "--maps", "1"], "3 1 0\n0 1\n");
    assert_eq!(code, 1);
    assert!(err.contains("not (1,0)-tight"));
}

#[test]
fn verify_mt_round_trip() {
    let graph = write_temp("4 1 1\n0 1\n1 2\n2 3\n");
    let decomp = write_temp("tree: 0 1 2\n");
    let (code, out, _) = run(
        &[
            "verify-mt",
            graph.path().to_str().unwrap(),
            decomp.path().to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out, "valid\n");
    assert_eq!(code, 0);

    let bad = write_temp("map: 0 1 2\n");
    let (code, out, _) = run(
        &[
            "verify-mt",
            graph.path().to_str().unwrap(),
            bad.path().to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out, "invalid\n");
    assert_eq!(code, 1);
}

#[test]
fn check_lovasz_recski_on_laman() {
    let laman = "4 2 3\n0 1\n1 2\n0 2\n2 3\n1 3\n";
    let (code, out, _) = run(&["check", "--theorem", "lovasz-recski"], laman);
    assert!(out.contains("theorem=lovasz-recski\n"), "{out}");
    assert!(out.contains("counterexamples=0\n"), "{out}");
    assert_eq!(code, 0);
}

#[test]
fn check_sampled_is_deterministic() {
    let laman = "4 2 3\n0 1\n1 2\n0 2\n2 3\n1 3\n";
    let args = [
        "check",
        "--theorem",
        "maps-adding",
        "--mode",
        "sampled",
        "--trials",
        "25",
        "--seed",
        "11",
    ];
    let a = run(&args, laman);
    let b = run(&args, laman);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn generate_families() {
    let (code, out, _) = run(
        &[
            "generate", "--family", "complete", "--n", "3", "--k", "1", "--l", "0", "--dims", "1,2",
        ],
        "",
    );
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1 + 9);

    let (code, out, _) = run(
        &[
            "generate", "--family", "tight", "--n", "6", "--s", "2", "--k", "2", "--l", "3",
            "--seed", "5",
        ],
        "",
    );
    assert_eq!(code, 0);
    let (code2, verdict, _) = run(&["decide"], &out);
    assert_eq!(verdict, "tight\n");
    assert_eq!(code2, 0);

    let a = run(
        &[
            "generate", "--family", "random", "--n", "5", "--m", "7", "--dims", "2,3", "--seed",
            "9",
        ],
        "",
    );
    let b = run(
        &[
            "generate", "--family", "random", "--n", "5", "--m", "7", "--dims", "2,3", "--seed",
            "9",
        ],
        "",
    );
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn oracle_checks() {
    let (code, out, _) = run(&["oracle", "--check", "sparse"], TRIANGLE_10);
    assert_eq!(out, "sparse\n");
    assert_eq!(code, 0);

    let (code, out, _) = run(&["oracle", "--check", "tight"], TRIANGLE_10);
    assert_eq!(out, "tight\n");
    assert_eq!(code, 0);

    let (code, out, _) = run(&["oracle", "--check", "tight", "--machine"], "3 1 0\n0 1\n");
    assert_eq!(out, "tight=false\n");
    assert_eq!(code, 1);

    let (code, out, _) = run(&["oracle", "--check", "partconn"], "3 1 0\n0 1 2\n");
    assert_eq!(out, "not-partition-connected\n");
    assert_eq!(code, 1);

    let (code, out, _) = run(
        &["oracle", "--check", "maxsubgraph"],
        "3 1 0\n0 1\n1 2\n0 2\n0 1\n",
    );
    assert_eq!(out, "0 1 2 size=3\n");
    assert_eq!(code, 0);

    let (code, out, _) = run(
        &["oracle", "--check", "components", "--k", "2", "--l", "3"],
        TRIANGLE_10,
    );
    assert_eq!(out, "0 1 2 |E|=3\n");
    assert_eq!(code, 0);
}

#[test]
fn oracle_exchange_between_trees() {
    let t1 = write_temp("4 1 1\n0 1\n1 2\n2 3\n");
    let t2 = write_temp("4 1 1\n0 2\n1 3\n0 3\n");
    let (code, out, _) = run(
        &[
            "oracle",
            "--check",
            "exchange",
            t1.path().to_str().unwrap(),
            t2.path().to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out, "exchange-ok\n");
    assert_eq!(code, 0);
}

#[test]
fn oracle_cap_refusal_is_an_op_error() {
    let mut big = String::from("20 1 0\n");
    for v in 0..19 {
        big.push_str(&format!("{} {}\n", v, v + 1));
    }
    let (code, _, err) = run(&["oracle", "--check", "sparse", "--cap", "8"], &big);
    assert_eq!(code, 1);
    assert!(err.contains("exceeds cap"), "{err}");
}

#[test]
fn missing_file_is_a_usage_error() {
    let (code, _, err) = run(&["decide", "/nonexistent/path.graph"], "");
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
}
