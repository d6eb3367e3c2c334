use std::process::{Command, Output};

fn hopfpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfpi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = hopfpi(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("valid json"))
}

#[test]
fn taft_identity_verifies_symbolically() {
    let o = hopfpi(&["verify", "--object", "taft:3;a=sym;c=sym", "taft_pc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "identity verified (symbolic a, c)");
}

#[test]
fn distinct_c_parameters_are_distinguished() {
    let (code, v) = json(&["distinguish", "taft:2;a=1;c=0", "taft:2;a=1;c=1"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["isomorphic"], false);
    assert_eq!(v["witness"]["identity"], "taft_pc");
    // (c - c')(1 - q)^2 t_1^2 t_x^2 with c = 0, c' = 1, q = -1.
    assert_eq!(v["witness"]["image"], "-4*t[1,1]^2*t[1,x]^2");
}

#[test]
fn symbolic_witness_is_the_full_image() {
    let o = hopfpi(&["distinguish", "taft:3;a=1;c=sym", "taft:3;a=1;c=sym"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let witness = out.lines().find_map(|l| l.strip_prefix("witness: ")).unwrap();
    // (c - c')(1 - z)^3 with (1 - z)^3 = -3 - 6z over Q(ζ_3).
    assert_eq!(
        witness,
        "(-3 - 6*z)*c*t[1,1]^3*t[1,x]^3 + (3 + 6*z)*c'*t[1,1]^3*t[1,x]^3"
    );
}

#[test]
fn a_parameters_up_to_nth_powers_agree() {
    let (code, v) = json(&["distinguish", "taft:3;a=1;c=2", "taft:3;a=8;c=2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["isomorphic"], true);
    assert_eq!(v["result"]["a_class"]["kind"], "equivalent");
    assert_eq!(v["result"]["a_class"]["v"], "2");
}

#[test]
fn selfcheck_passes_on_shipped_algebras() {
    for h in ["en:2", "taft:2", "trivial"] {
        let o = hopfpi(&["selfcheck", h, "--samples", "8"]);
        assert_eq!(o.status.code(), Some(0), "{h}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    }
}

#[test]
fn expression_grammar() {
    let nf = |alg: &str, e: &str| stdout(&hopfpi(&["normal-form", alg, e])).trim().to_string();
    assert_eq!(nf("free:taft:2", "X[1,x*y]"), "X[1,x*y]");
    assert_eq!(nf("free:taft:2", "E^2*X^2"), "X[1,1]^2*X[1,x]^2");
    assert_eq!(
        nf("free:taft:2", "(Y*X - q*X*Y)^2"),
        "X[1,x]*X[1,y]*X[1,x]*X[1,y] + X[1,x]*X[1,y]^2*X[1,x] + X[1,y]*X[1,x]^2*X[1,y] + X[1,y]*X[1,x]*X[1,y]*X[1,x]"
    );
    assert_eq!(nf("taft:3", "y*x"), "z*x*y");
    assert_eq!(nf("taft:3;a=2;c=sym", "y^3*x^3"), "2*c");
    assert_eq!(nf("A:en:2", "u1*u1"), "c[1]");
}

#[test]
fn coproduct_and_mu() {
    let o = hopfpi(&["coproduct", "taft:3", "y^2"]);
    assert_eq!(stdout(&o).trim(), "1 ⊗ y^2 + (1 + z)*(y ⊗ x*y) + y^2 ⊗ x^2");
    let (code, v) = json(&["mu", "taft:2", "taft:2", "Y^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["image"], "a*t[1,y]^2 + c*t[1,1]^2");
    let o = hopfpi(&["mu", "taft:2", "en:1", "Y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn falsified_expression_reports_witness() {
    let (code, v) = json(&["verify", "--object", "taft:2", "X*Y"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["verified"], false);
    assert_eq!(v["witness"]["image"], "a*t[1,x]*t[1,y] + t[1,1]*t[1,x]*x*y");
}

#[test]
fn catalog_identity_families() {
    let (code, v) = json(&["verify", "--object", "taft:2", "coinv_Q:x,y"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["members"].as_array().unwrap().len(), 4);
    let (_, v) = json(&["catalog", "en:3"]);
    assert_eq!(v["result"]["identities"].as_array().unwrap().len(), 9);
    let o = hopfpi(&["verify", "--object", "en:2;a=1;c1=0;c2=1;d12=sym", "en_dij:1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "identity verified (symbolic d[1,2])");
}

#[test]
fn standard_polynomials_on_matrices() {
    assert_eq!(hopfpi(&["verify", "standard:4", "--matrix-size", "2"]).status.code(), Some(0));
    let (code, v) = json(&["verify", "standard:3", "--matrix-size", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["substitution"], serde_json::json!(["E[1,1]", "E[1,2]", "E[2,1]"]));
    assert_eq!(v["witness"]["value"], "2*E[1,1] + E[2,2]");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    for args in [
        &["normal-form", "taft:2", "x*"][..],
        &["normal-form", "free:taft:2", "X[0,x]"],
        &["normal-form", "taft:0", "x"],
        &["verify", "taft_pc"],
        &["verify", "--object", "taft:2;a=0", "taft_pc"],
        &["bogus"],
    ] {
        let o = hopfpi(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = hopfpi(&["normal-form", "taft:2", "x*"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("offset 2") && err.contains("expected"), "{err}");
}

#[test]
fn max_degree_guards_expansion() {
    let o = hopfpi(&["--max-degree", "4", "normal-form", "free:taft:2", "(X*Y)^3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "catalog", "en:2"];
    let first = hopfpi(&args).stdout;
    assert_eq!(first, hopfpi(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["command"], "catalog");
    assert!(v["timings"].is_null());
    assert!(v.get("witness").is_none());
}
