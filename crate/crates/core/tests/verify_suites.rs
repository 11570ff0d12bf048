use ncfree_core::verify::{self, Suite};

fn assert_suite(suite: Suite, order: usize) {
    let reports = verify::run(suite, order).unwrap();
    assert!(!reports.is_empty());
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.to_string())
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn nc_and_kreweras() {
    assert_suite(Suite::Nc, 4);
    assert_suite(Suite::Kreweras, 4);
}

#[test]
fn series_and_hd() {
    assert_suite(Suite::Series, 5);
    assert_suite(Suite::Hd, 5);
}

#[test]
fn moments() {
    assert_suite(Suite::Moments, 5);
}

#[test]
fn rcyclic() {
    assert_suite(Suite::Rcyclic, 4);
}

#[test]
fn opvalued() {
    assert_suite(Suite::Opvalued, 4);
}
