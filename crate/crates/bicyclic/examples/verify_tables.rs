//! Enumerate the class number 4, 6 and 7 fields and verify them against the
//! embedded tables and the factorization-family classification.

use bicyclic::enumerate::{
    concluding_checks, enumerate_fields, verify_against_embedded, verify_propositions,
    EnumerateOptions,
};

fn main() {
    let mut failed = false;
    for n in [4, 6, 7] {
        let report = enumerate_fields(n, &EnumerateOptions::default()).unwrap();
        let diffs = verify_against_embedded(&report).unwrap();
        let diags = verify_propositions(&report);
        let concluding = if n == 4 {
            concluding_checks(&report)
        } else {
            Vec::new()
        };
        for line in diffs.iter().chain(&diags).chain(&concluding) {
            eprintln!("h = {n}: {line}");
        }
        let ok = diffs.is_empty() && diags.is_empty() && concluding.is_empty();
        failed |= !ok;
        println!(
            "h = {n}: {} fields, tables and propositions {}",
            report.fields.len(),
            if ok { "verified" } else { "FAILED" }
        );
    }
    if failed {
        std::process::exit(1);
    }
}
