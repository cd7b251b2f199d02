//! One pass/fail line per acceptance criterion. A row passes when every exact check
//! holds and every timed part stays within its runtime budget.

use circle_hall::suite::{run_suite, CriterionReport};

fn line(c: &CriterionReport) -> (bool, String) {
    let ok = c.passed && c.within_budget();
    let mut text = format!(
        "criterion {:>2}: {}  {} ({} checks, {:.1} s)",
        c.id,
        if ok { "PASS" } else { "FAIL" },
        c.title,
        c.checks,
        c.elapsed().as_secs_f64()
    );
    for t in &c.timings {
        let budget = t.budget.map(|b| format!(" of {} s", b.as_secs())).unwrap_or_default();
        text.push_str(&format!("\n      {}: {:.2} s{budget}", t.label, t.elapsed.as_secs_f64()));
    }
    for f in c.failures.iter().take(10) {
        text.push_str(&format!("\n      failure: {f}"));
    }
    (ok, text)
}

#[test]
fn acceptance_suite() {
    let report = run_suite(2).expect("suite runs at q = 2");
    let mut failed = Vec::new();
    for c in &report.criteria {
        let (ok, text) = line(c);
        println!("{text}");
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
