//! Run the full enumerations for class numbers 4, 6 and 7 and print the
//! field counts with their omega partitions.

use bicyclic::enumerate::{enumerate_fields, EnumerateOptions};

fn main() {
    for n in [4, 6, 7] {
        let start = std::time::Instant::now();
        let report = enumerate_fields(n, &EnumerateOptions::default()).unwrap();
        println!(
            "h = {n}: {} fields, omega partition {:?}, complete = {}, {:.1?}",
            report.fields.len(),
            report.omega_partition,
            report.complete,
            start.elapsed()
        );
    }
}
