use peakalg::verify::{run_suite, Suite, VerifyOptions};

#[test]
fn every_suite_passes() {
    let opts = VerifyOptions::default();
    for suite in Suite::ALL {
        let report = run_suite(suite, &opts);
        assert!(!report.checks.is_empty(), "{suite} ran no checks");
        let failures: Vec<_> = report.failures().map(|c| format!("{}: {:?}", c.name, c.detail)).collect();
        assert!(failures.is_empty(), "{suite}: {failures:#?}");
    }
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("all".parse::<Suite>().is_err());
}
