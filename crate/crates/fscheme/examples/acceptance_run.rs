//! Run the complete acceptance suite — ten criteria over the canonical
//! corpus — and print one verdict per line, exactly as `fscheme corpus run`
//! reports in JSON.
//!
//! Run with: `cargo run --example acceptance_run`

use fscheme::acceptance::run_all;
use fscheme::corpus::standard_corpus;

fn main() {
    println!("corpus: {} rings", standard_corpus().len());
    for entry in standard_corpus() {
        print!("{} ", entry.key);
    }
    println!("\n");

    let mut all = true;
    for report in run_all() {
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        println!("{:>2}. {:<32} {verdict}  {}", report.number, report.name, report.detail);
        all &= report.passed;
    }
    assert!(all, "acceptance suite failed");
    println!("\nall criteria hold");
}
