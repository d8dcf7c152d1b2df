//! End-to-end acceptance run: executes all ten named criteria over the
//! canonical corpus and prints one verdict line per criterion.

use fscheme::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let reports = run_all();
    assert_eq!(reports.len(), 10);
    let mut failures = 0;
    for report in &reports {
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2}  {:<32} {}  {}",
            report.number, report.name, verdict, report.detail
        );
        if !report.passed {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
