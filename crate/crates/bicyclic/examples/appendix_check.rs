//! Rebuild the imaginary quadratic class-number lists from scratch and
//! compare them against the embedded data.

use bicyclic::enumerate::build_class_number_table;
use bicyclic::tables::appendix_lists;

fn main() {
    for (&m, expected) in appendix_lists().unwrap() {
        let bound = *expected.last().unwrap();
        let table = build_class_number_table(m, bound).unwrap();
        let status = if &table.entries == expected { "ok" } else { "MISMATCH" };
        println!(
            "h = {m:2}: {:3} radicands up to {bound:5} ... {status}",
            table.entries.len()
        );
        assert_eq!(&table.entries, expected);
    }
}
