//! Class numbers and class group structures of imaginary quadratic fields
//! via reduced binary quadratic forms and Gauss composition.

use bicyclic::imagquad::{class_group_imag, class_number_imag, reduced_forms};

fn main() {
    for z in [23, 14, 89, 93, 231, 3235] {
        let h = class_number_imag(z).unwrap();
        let group = class_group_imag(z).unwrap();
        println!("Q(sqrt(-{z})): h = {h}, class group {group}");
    }

    // The forms behind the numbers: discriminant -23 has three reduced
    // classes, generating a cyclic group of order 3.
    println!("\nreduced forms of discriminant -23:");
    for f in reduced_forms(-23).unwrap() {
        println!("  ({}, {}, {})", f.a, f.b, f.c);
    }
}
