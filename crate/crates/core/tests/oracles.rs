use h2contract::oracles::run_all;

#[test]
fn every_fixture_row_agrees_with_its_reference() {
    let checks = run_all().unwrap();
    let mut worst: std::collections::BTreeMap<&str, f64> = Default::default();
    let mut failures = Vec::new();
    for c in &checks {
        let w = worst.entry(c.case.suite).or_insert(0.0);
        *w = w.max(c.rel_err.unwrap_or(f64::INFINITY));
        if !c.passed {
            failures.push(format!("{} {:?}: got {:?} want {} (rel err {:?}, tol {:e}) {:?}", c.case.suite, c.case.inputs, c.got, c.case.expected, c.rel_err, c.case.rel_tol, c.error));
        }
    }
    for (k, v) in &worst {
        eprintln!("{k}: worst relative error {v:.2e}");
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
